//! JSON documents: arrangements with monodromy, and certificates.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice::{Arrangement, Hyperplane};
use crate::linalg::{format_rational, parse_rational};
use crate::local_system::MonodromyMap;

/// On-disk arrangement schema. All numbers are rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub hyperplanes: Vec<Vec<String>>,
    pub monodromy_exponents: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// How a derived arrangement was built; ignored when parsing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<serde_json::Value>,
}

/// A validated arrangement together with its local system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub arrangement: Arrangement,
    pub monodromy: MonodromyMap,
}

fn at(pos: String) -> impl Fn(Error) -> Error {
    move |e| Error::Document(format!("{pos}: {e}"))
}

impl ArrangementDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn validate(&self) -> Result<Instance> {
        if self.ambient_dim == 0 {
            return Err(Error::Document("ambient_dim: must be at least 1".into()));
        }
        if self.hyperplanes.is_empty() {
            return Err(Error::Document("hyperplanes: arrangement must be nonempty".into()));
        }
        let mut hs = Vec::with_capacity(self.hyperplanes.len());
        for (i, row) in self.hyperplanes.iter().enumerate() {
            if row.len() != self.ambient_dim + 1 {
                return Err(Error::Document(format!(
                    "hyperplanes[{i}]: {} coefficients, expected {}",
                    row.len(),
                    self.ambient_dim + 1
                )));
            }
            let coeffs = row
                .iter()
                .enumerate()
                .map(|(j, s)| parse_rational(s).map_err(at(format!("hyperplanes[{i}][{j}]"))))
                .collect::<Result<Vec<_>>>()?;
            hs.push(Hyperplane::new(coeffs).map_err(at(format!("hyperplanes[{i}]")))?);
        }
        let arrangement =
            Arrangement::new(self.ambient_dim, hs, self.labels.clone()).map_err(at("hyperplanes".into()))?;
        if self.monodromy_exponents.len() != arrangement.len() {
            return Err(Error::Document(format!(
                "monodromy_exponents: {} values for {} hyperplanes",
                self.monodromy_exponents.len(),
                arrangement.len()
            )));
        }
        let exps = self
            .monodromy_exponents
            .iter()
            .enumerate()
            .map(|(i, s)| parse_rational(s).map_err(at(format!("monodromy_exponents[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        let monodromy = MonodromyMap::new(exps).map_err(at("monodromy_exponents".into()))?;
        Ok(Instance {
            name: self.name.clone().unwrap_or_default(),
            arrangement,
            monodromy,
        })
    }
}

pub fn parse_arrangement(text: &str) -> Result<Instance> {
    ArrangementDoc::from_json(text)?.validate()
}

impl Instance {
    pub fn new(name: &str, arrangement: Arrangement, monodromy: MonodromyMap) -> Result<Self> {
        monodromy.check_against(&arrangement)?;
        Ok(Instance {
            name: name.to_string(),
            arrangement,
            monodromy,
        })
    }

    /// Canonical document: normalized forms, exponents in [0, 1), explicit labels.
    pub fn to_doc(&self) -> ArrangementDoc {
        let a = &self.arrangement;
        ArrangementDoc {
            name: (!self.name.is_empty()).then(|| self.name.clone()),
            ambient_dim: a.ambient_dim(),
            hyperplanes: a
                .hyperplanes()
                .iter()
                .map(|h| h.coeffs().iter().map(format_rational).collect())
                .collect(),
            monodromy_exponents: self.monodromy.exponents().iter().map(format_rational).collect(),
            labels: Some(a.labels().to_vec()),
            origin: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("document serializes")
    }

    /// Hex SHA-256 of the compact canonical document without its name.
    pub fn content_hash(&self) -> String {
        let mut doc = self.to_doc();
        doc.name = None;
        let bytes = serde_json::to_vec(&doc).expect("document serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Delta,
    Lambda,
}

/// A delta certificate (values per hyperplane) or a lambda witness (values per resonant flat).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    #[serde(rename = "type")]
    pub kind: CertificateKind,
    pub values: Vec<String>,
    pub resonant_flats: Vec<Vec<String>>,
    pub arrangement_hash: String,
}

impl CertificateDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}
