//! Command-line verbs, reports and exit codes.

pub mod doc;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::constructions::{generic_section, lift_bipartition, seed_from_hash};
use crate::corpus;
use crate::criteria::{Bipartition, Context, Criterion, Outcome, RunOptions};
use crate::error::{Error, Result};
use crate::lattice::{closure, Arrangement, Flat};
use crate::linalg::{parse_rational, Rational};
use crate::local_system::{MonodromyMap, ResonantFlatSet};
use crate::lp::{
    decide_constant_combination, is_primitive, verify_delta, verify_lambda, Decision, DeltaCertificate,
    IncidenceMatrix, Verdict,
};
use crate::oracle::twisted_cohomology;
pub use doc::{parse_arrangement, ArrangementDoc, CertificateDoc, CertificateKind, Instance};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_RESONANT: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nonres",
    version,
    about = "Nonresonance criteria and certificates for rank-one local systems"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Intersection lattice, Poincare polynomial and Euler characteristic.
    Lattice { arrangement: String },
    /// Resonant flats, and resonant points for line arrangements.
    Resonant { arrangement: String },
    /// Run one criterion or all of them.
    Check {
        arrangement: String,
        #[arg(long, default_value = "all", value_parser = ["all", "cdo", "lambda", "point", "bipartition", "bipartition-general", "shelter"])]
        criterion: String,
        /// Two comma-separated lists of labels or 1-based indices joined by `|`.
        #[arg(long)]
        partition: Option<String>,
        /// Comma-separated labels or 1-based indices of a flat.
        #[arg(long)]
        flat: Option<String>,
        /// With `all`, also try every bipartition for the general criterion.
        #[arg(long)]
        brute_force: bool,
    },
    /// Emit a delta certificate, or a lambda witness when none exists.
    Certify { arrangement: String },
    /// Check a certificate document against an arrangement.
    VerifyCert { arrangement: String, certificate: PathBuf },
    /// Twisted cohomology of a real line arrangement.
    Cohomology {
        arrangement: String,
        /// Label of the hyperplane sent to infinity.
        #[arg(long)]
        decone: Option<String>,
    },
    /// Lift along a bipartition into one dimension higher.
    Lift {
        arrangement: String,
        #[arg(long)]
        partition: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// A generic hyperplane through an irreducible flat.
    Section {
        arrangement: String,
        #[arg(long)]
        flat: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// A report in both renderings plus its exit code.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

/// Parses arguments (program name first), runs the verb, and returns output and exit code.
pub fn run_command<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT_ERROR,
            };
            return (e.render().to_string(), code);
        }
    };
    let format = cli.format;
    match run_verb(cli.verb) {
        Ok(r) => match format {
            Format::Text => (r.text, r.code),
            Format::Json => (
                format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json")),
                r.code,
            ),
        },
        Err(e) => match format {
            Format::Text => (format!("error: {e}\n"), EXIT_INPUT_ERROR),
            Format::Json => (format!("{}\n", json!({ "error": e.to_string() })), EXIT_INPUT_ERROR),
        },
    }
}

/// A corpus name or a path to an arrangement document.
pub fn load_instance(source: &str) -> Result<Instance> {
    if let Some(inst) = corpus::by_name(source) {
        return Ok(inst);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::Document(format!("{source}: not a corpus name and unreadable ({e})")))?;
    parse_arrangement(&text).map_err(|e| Error::Document(format!("{source}: {e}")))
}

fn parse_member(a: &Arrangement, token: &str) -> Result<usize> {
    let t = token.trim();
    if let Some(i) = a.index_of_label(t) {
        return Ok(i);
    }
    match t.parse::<usize>() {
        Ok(k) if (1..=a.len()).contains(&k) => Ok(k - 1),
        _ => Err(Error::Partition(format!("unknown hyperplane {t:?}"))),
    }
}

fn parse_members(a: &Arrangement, text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut v = text
        .split(',')
        .map(|t| parse_member(a, t))
        .collect::<Result<Vec<_>>>()?;
    v.sort_unstable();
    Ok(v)
}

/// `1,2,3|4,5,6`; labels and 1-based indices may be mixed.
pub fn parse_partition(a: &Arrangement, text: &str) -> Result<Bipartition> {
    let (p1, p2) = text
        .split_once('|')
        .ok_or_else(|| Error::Partition("expected two parts separated by '|'".into()))?;
    Bipartition::new(a.len(), parse_members(a, p1)?, parse_members(a, p2)?)
}

pub fn parse_flat(a: &Arrangement, text: &str) -> Result<Flat> {
    let members = parse_members(a, text)?;
    if members.is_empty() {
        return Err(Error::Flat("empty".into()));
    }
    let f = closure(a, &members);
    if f.members != members {
        return Err(Error::Flat(format!(
            "{:?} is not a flat (closure is {:?})",
            a.label_list(&members),
            a.label_list(&f.members)
        )));
    }
    Ok(f)
}

fn flat_labels(a: &Arrangement, rf: &ResonantFlatSet) -> Vec<Vec<String>> {
    rf.iter().map(|f| a.label_list(&f.members)).collect()
}

/// The lambda-criterion outcome as a document: a delta certificate or a lambda witness.
pub fn certify(inst: &Instance) -> Result<CertificateDoc> {
    let ctx = Context::new(&inst.arrangement, &inst.monodromy)?;
    let m = IncidenceMatrix::from_resonant(&inst.arrangement, &ctx.resonant)?;
    let (kind, values) = match decide_constant_combination(&m)? {
        Decision::Infeasible(d) => (CertificateKind::Delta, d.to_strings()),
        Decision::Feasible(w) => (
            CertificateKind::Lambda,
            w.values.iter().map(|v| v.to_string()).collect(),
        ),
    };
    Ok(CertificateDoc {
        kind,
        values,
        resonant_flats: flat_labels(&inst.arrangement, &ctx.resonant),
        arrangement_hash: inst.content_hash(),
    })
}

/// Re-derives the resonant flats and checks the document against them.
///
/// Lambda witnesses must be coprime nonnegative integers so that each witness has one encoding.
pub fn verify_certificate(inst: &Instance, cert: &CertificateDoc) -> Result<Verdict> {
    if cert.arrangement_hash != inst.content_hash() {
        return Ok(Verdict::Reject("arrangement hash does not match".into()));
    }
    let ctx = Context::new(&inst.arrangement, &inst.monodromy)?;
    if cert.resonant_flats != flat_labels(&inst.arrangement, &ctx.resonant) {
        return Ok(Verdict::Reject("resonant flat list does not match".into()));
    }
    let values = cert
        .values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| Error::Document(format!("values[{i}]: {e}"))))
        .collect::<Result<Vec<Rational>>>()?;
    match cert.kind {
        CertificateKind::Delta => verify_delta(&inst.arrangement, &ctx.resonant, &DeltaCertificate { values }),
        CertificateKind::Lambda => {
            let m = IncidenceMatrix::from_resonant(&inst.arrangement, &ctx.resonant)?;
            if values.len() != m.rows() {
                return Err(Error::IndexMismatch {
                    expected: m.rows(),
                    got: values.len(),
                });
            }
            if values.iter().any(|v| !v.is_integer() || v.is_negative()) {
                return Ok(Verdict::Reject("lambda values must be nonnegative integers".into()));
            }
            let ints: Vec<_> = values.iter().map(|v| v.to_integer()).collect();
            if !ints.iter().all(Zero::is_zero) && !is_primitive(&ints) {
                return Ok(Verdict::Reject("lambda values are not coprime".into()));
            }
            verify_lambda(&m, &values)
        }
    }
}

fn exit_for_outcomes<'a>(n: usize, outcomes: impl IntoIterator<Item = &'a Outcome>) -> i32 {
    let certified = outcomes
        .into_iter()
        .filter_map(Outcome::conclusion)
        .any(|c| c.level == n);
    if certified {
        EXIT_CERTIFIED
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn run_verb(verb: Verb) -> Result<Report> {
    match verb {
        Verb::Lattice { arrangement } => render::lattice(&load_instance(&arrangement)?),
        Verb::Resonant { arrangement } => render::resonant(&load_instance(&arrangement)?),
        Verb::Check {
            arrangement,
            criterion,
            partition,
            flat,
            brute_force,
        } => {
            let inst = load_instance(&arrangement)?;
            let a = &inst.arrangement;
            let ctx = Context::new(a, &inst.monodromy)?;
            let n = a.ambient_dim();
            if criterion == "all" {
                let report = ctx.run_all(&RunOptions {
                    search_general_partitions: brute_force,
                });
                let code = if report.nonresonant {
                    EXIT_CERTIFIED
                } else {
                    EXIT_INCONCLUSIVE
                };
                return Ok(render::criteria_report(a, &report, code));
            }
            let c = Criterion::from_name(&criterion).expect("validated by clap");
            let partition = partition.map(|p| parse_partition(a, &p)).transpose()?;
            let outcome = match c {
                Criterion::Cdo => ctx.cdo()?,
                Criterion::Lambda => ctx.lambda()?,
                Criterion::UniquePoint => ctx.unique_point()?,
                Criterion::BipartitionLines => match partition {
                    Some(b) => ctx.bipartition_lines(&b)?,
                    None => match ctx.search_bipartition_lines()? {
                        Some(b) => ctx.bipartition_lines(&b)?,
                        None => Outcome::Inconclusive(crate::criteria::Witness::Violation(
                            "lines with nontrivial monodromy lie in one component of the resonance graph".into(),
                        )),
                    },
                },
                Criterion::BipartitionGeneral => match partition {
                    Some(b) => ctx.bipartition_general(&b)?,
                    None => match ctx.search_bipartition_general()? {
                        Some((_, out)) => out,
                        None => Outcome::Inconclusive(crate::criteria::Witness::Violation(
                            "no bipartition satisfies both conditions".into(),
                        )),
                    },
                },
                Criterion::Shelter => match flat {
                    Some(f) => ctx.shelter(&parse_flat(a, &f)?)?,
                    None => ctx.search_shelter()?,
                },
            };
            let code = exit_for_outcomes(n, [&outcome]);
            Ok(render::single_outcome(a, c, &outcome, code))
        }
        Verb::Certify { arrangement } => {
            let cert = certify(&load_instance(&arrangement)?)?;
            let code = match cert.kind {
                CertificateKind::Delta => EXIT_CERTIFIED,
                CertificateKind::Lambda => EXIT_INCONCLUSIVE,
            };
            Ok(Report {
                text: format!("{}\n", cert.to_json()),
                json: serde_json::to_value(&cert).expect("json"),
                code,
            })
        }
        Verb::VerifyCert {
            arrangement,
            certificate,
        } => {
            let inst = load_instance(&arrangement)?;
            let text = std::fs::read_to_string(&certificate)
                .map_err(|e| Error::Document(format!("{}: {e}", certificate.display())))?;
            let cert = CertificateDoc::from_json(&text)?;
            let verdict = verify_certificate(&inst, &cert)?;
            let code = match (&verdict, cert.kind) {
                (Verdict::Reject(_), _) => EXIT_INPUT_ERROR,
                (Verdict::Accept, CertificateKind::Delta) => EXIT_CERTIFIED,
                (Verdict::Accept, CertificateKind::Lambda) => EXIT_INCONCLUSIVE,
            };
            Ok(render::verdict(&verdict, cert.kind, code))
        }
        Verb::Cohomology { arrangement, decone } => {
            let inst = load_instance(&arrangement)?;
            let a = &inst.arrangement;
            let at = match decone {
                Some(l) => parse_member(a, &l)?,
                None => 0,
            };
            let r = twisted_cohomology(a, &inst.monodromy, at)?;
            let code = if r.dims.h1 != 0 {
                EXIT_RESONANT
            } else if r.dims.h0 == 0 {
                EXIT_CERTIFIED
            } else {
                EXIT_INCONCLUSIVE
            };
            Ok(render::cohomology(&r, code))
        }
        Verb::Lift {
            arrangement,
            partition,
            seed,
        } => {
            let inst = load_instance(&arrangement)?;
            let b = parse_partition(&inst.arrangement, &partition)?;
            let seed = seed.unwrap_or_else(|| seed_from_hash(&inst.content_hash()));
            let l = lift_bipartition(&inst.arrangement, &b, seed)?;
            let lifted = Instance::new(&format!("{}-lift", inst.name), l.lifted.clone(), inst.monodromy.clone())?;
            let mut d = lifted.to_doc();
            d.origin = Some(json!({
                "partition": [inst.arrangement.label_list(&l.partition.part1), inst.arrangement.label_list(&l.partition.part2)],
                "direction": l.direction.iter().map(crate::linalg::format_rational).collect::<Vec<_>>(),
                "seed": seed,
            }));
            Ok(render::document(&d))
        }
        Verb::Section {
            arrangement,
            flat,
            seed,
        } => {
            let inst = load_instance(&arrangement)?;
            let a = &inst.arrangement;
            let f = parse_flat(a, &flat)?;
            let seed = seed.unwrap_or_else(|| seed_from_hash(&inst.content_hash()));
            let h0 = generic_section(a, &f, seed)?;
            let mut label = "S0".to_string();
            while a.index_of_label(&label).is_some() {
                label.push('\'');
            }
            let mut hs = a.hyperplanes().to_vec();
            hs.push(h0);
            let mut labels = a.labels().to_vec();
            labels.push(label.clone());
            let ext = Arrangement::new(a.ambient_dim(), hs, Some(labels))?;
            let mut exps = inst.monodromy.exponents().to_vec();
            exps.push(Rational::zero());
            let with = Instance::new(&format!("{}-section", inst.name), ext, MonodromyMap::new(exps)?)?;
            let mut d = with.to_doc();
            d.origin = Some(json!({
                "section": label,
                "through": a.label_list(&f.members),
                "seed": seed,
            }));
            Ok(render::document(&d))
        }
    }
}
