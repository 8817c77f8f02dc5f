//! Arrangements, flats and the intersection lattice.

mod decomposition;
mod flats;
mod induced;
mod poincare;

pub use decomposition::{irreducible_decomposition, is_irreducible};
pub use flats::{closure, enumerate_lattice, rank_of, Flat, IntersectionLattice};
pub use induced::{localization, restriction, Restriction};
pub use poincare::{euler_characteristic, poincare_polynomial};

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Linear form on C^{n+1}, normalized so that its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Hyperplane("zero form".into()));
        };
        let coeffs = if lead.is_one() {
            coeffs
        } else {
            coeffs.into_iter().map(|c| c / &lead).collect()
        };
        Ok(Hyperplane { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value of the form at a point of C^{n+1}.
    pub fn eval(&self, v: &[Rational]) -> Rational {
        crate::linalg::matrix::dot(&self.coeffs, v)
    }
}

/// Finite set of distinct hyperplanes in P^n, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
    labels: Vec<String>,
}

impl Arrangement {
    /// `labels` defaults to `H1, H2, ...`.
    pub fn new(ambient_dim: usize, hyperplanes: Vec<Hyperplane>, labels: Option<Vec<String>>) -> Result<Self> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.len() != ambient_dim + 1 {
                return Err(Error::Arrangement(format!(
                    "hyperplane {} has {} coefficients, expected {}",
                    i + 1,
                    h.len(),
                    ambient_dim + 1
                )));
            }
        }
        for i in 0..hyperplanes.len() {
            for j in 0..i {
                if hyperplanes[i] == hyperplanes[j] {
                    return Err(Error::Arrangement(format!(
                        "hyperplanes {} and {} coincide",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != hyperplanes.len() {
                    return Err(Error::Arrangement(format!(
                        "{} labels for {} hyperplanes",
                        l.len(),
                        hyperplanes.len()
                    )));
                }
                let distinct: HashSet<&String> = l.iter().collect();
                if distinct.len() != l.len() {
                    return Err(Error::Arrangement("labels must be distinct".into()));
                }
                l
            }
            None => (1..=hyperplanes.len()).map(|i| format!("H{i}")).collect(),
        };
        Ok(Arrangement {
            ambient_dim,
            hyperplanes,
            labels,
        })
    }

    /// Convenience constructor from integer forms with default labels.
    pub fn from_i64(ambient_dim: usize, forms: &[&[i64]]) -> Result<Self> {
        let hs = forms
            .iter()
            .map(|f| Hyperplane::from_i64(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, hs, None)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    /// Coefficient rows of the given members.
    pub fn forms(&self, members: &[usize]) -> Vec<Vec<Rational>> {
        members.iter().map(|&i| self.hyperplanes[i].coeffs().to_vec()).collect()
    }

    pub fn label_list(&self, members: &[usize]) -> Vec<String> {
        members.iter().map(|&i| self.labels[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, rat};

    #[test]
    fn normalization_makes_leading_coefficient_one() {
        let h = Hyperplane::new(vec![int(0), int(-2), int(4)]).unwrap();
        assert_eq!(h.coeffs(), &[int(0), int(1), int(-2)]);
        let h = Hyperplane::new(vec![rat(1, 2), int(1)]).unwrap();
        assert_eq!(h.coeffs(), &[int(1), int(2)]);
        assert!(Hyperplane::from_i64(&[0, 0, 0]).is_err());
    }

    #[test]
    fn duplicates_rejected_after_normalization() {
        let err = Arrangement::from_i64(2, &[&[1, 0, 0], &[2, 0, 0]]).unwrap_err();
        assert!(err.to_string().contains("coincide"));
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(Arrangement::from_i64(2, &[&[1, 0]]).is_err());
    }
}
