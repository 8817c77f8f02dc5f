use std::fmt::Write;

use serde_json::{json, Value};

use crate::criteria::{Certificate, Criterion, CriterionReport, Outcome, Witness};
use crate::lattice::{enumerate_lattice, euler_characteristic, poincare_polynomial, Arrangement};
use crate::linalg::format_rational;
use crate::local_system::{resonant_flats_in, resonant_points};
use crate::lp::Verdict;
use crate::oracle::OracleReport;
use crate::Result;

use super::doc::{ArrangementDoc, CertificateKind, Instance};
use super::Report;

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

pub(super) fn lattice(inst: &Instance) -> Result<Report> {
    let a = &inst.arrangement;
    let l = enumerate_lattice(a);
    let poincare = poincare_polynomial(a)?;
    let chi = euler_characteristic(a)?;
    let mut text = String::new();
    let mut flats = Vec::new();
    for (idx, f) in l.flats().iter().enumerate().filter(|(_, f)| !f.is_empty()) {
        let labels = a.label_list(&f.members);
        let irreducible = l.is_irreducible(idx);
        writeln!(
            text,
            "rank {} {}{}",
            f.rank,
            braces(&labels),
            if irreducible { "" } else { " (decomposable)" }
        )
        .unwrap();
        flats.push(json!({ "rank": f.rank, "hyperplanes": labels, "irreducible": irreducible }));
    }
    writeln!(text, "poincare {poincare:?}").unwrap();
    writeln!(text, "chi {chi}").unwrap();
    Ok(Report {
        text,
        json: json!({ "flats": flats, "poincare": poincare, "chi": chi }),
        code: 0,
    })
}

pub(super) fn resonant(inst: &Instance) -> Result<Report> {
    let (a, m) = (&inst.arrangement, &inst.monodromy);
    let l = enumerate_lattice(a);
    let rf = resonant_flats_in(a, &l, m);
    let mut text = String::new();
    let mut flats = Vec::new();
    for f in rf.iter() {
        let labels = a.label_list(&f.members);
        let sum = format_rational(&m.of_set(&f.members));
        writeln!(text, "resonant rank {} {} sum {sum}", f.rank, braces(&labels)).unwrap();
        flats.push(json!({ "rank": f.rank, "hyperplanes": labels, "exponent_sum": sum }));
    }
    if rf.is_empty() {
        text.push_str("no resonant flats\n");
    }
    let mut report = json!({ "resonant_flats": flats });
    if a.ambient_dim() == 2 {
        let points = resonant_points(a, m)?;
        let mut list = Vec::new();
        for p in &points {
            let coords: Vec<String> = p.point.iter().map(ToString::to_string).collect();
            let labels = a.label_list(&p.flat.members);
            writeln!(text, "point [{}] on {}", coords.join(":"), braces(&labels)).unwrap();
            list.push(json!({ "point": coords, "hyperplanes": labels }));
        }
        report["resonant_points"] = Value::from(list);
    }
    let uncovered: Vec<String> = (0..a.len())
        .filter(|&h| !rf.covers(h))
        .map(|h| a.label(h).to_string())
        .collect();
    writeln!(text, "uncovered {}", braces(&uncovered)).unwrap();
    report["uncovered"] = json!(uncovered);
    Ok(Report {
        text,
        json: report,
        code: 0,
    })
}

fn certificate(a: &Arrangement, c: &Certificate) -> (String, Value) {
    match c {
        Certificate::Delta(d) => {
            let v = d.to_strings();
            (format!("delta ({})", v.join(", ")), json!({ "delta": v }))
        }
        Certificate::ResonantPoint { flat, h1, h2 } => {
            let labels = a.label_list(&flat.members);
            (
                format!("point {} via {} and {}", braces(&labels), a.label(*h1), a.label(*h2)),
                json!({ "resonant_point": labels, "only_on_point": a.label(*h1), "off_point": a.label(*h2) }),
            )
        }
        Certificate::Bipartition(b) => {
            let (p1, p2) = (a.label_list(&b.part1), a.label_list(&b.part2));
            (
                format!("partition {} | {}", braces(&p1), braces(&p2)),
                json!({ "partition": [p1, p2] }),
            )
        }
        Certificate::Shelter(f) => {
            let labels = a.label_list(&f.members);
            (format!("flat {}", braces(&labels)), json!({ "flat": labels }))
        }
    }
}

fn witness(w: &Witness) -> (String, Value) {
    match w {
        Witness::Lambda(l) => {
            let v: Vec<String> = l.values.iter().map(ToString::to_string).collect();
            (
                format!("lambda ({}) common sum {}", v.join(", "), l.common_sum),
                json!({ "lambda": v, "common_sum": l.common_sum.to_string() }),
            )
        }
        Witness::Violation(s) => (s.clone(), json!({ "violation": s })),
    }
}

fn outcome_line(a: &Arrangement, c: Criterion, o: &Outcome) -> (String, Value) {
    match o {
        Outcome::Fired(v) => {
            let (t, j) = certificate(a, &v.certificate);
            (
                format!("{} fired level {}: {t}", c.name(), v.level),
                json!({ "criterion": c.name(), "status": "fired", "level": v.level, "certificate": j }),
            )
        }
        Outcome::Inconclusive(w) => {
            let (t, j) = witness(w);
            (
                format!("{} inconclusive: {t}", c.name()),
                json!({ "criterion": c.name(), "status": "inconclusive", "level": Value::Null, "witness": j }),
            )
        }
    }
}

pub(super) fn single_outcome(a: &Arrangement, c: Criterion, o: &Outcome, code: i32) -> Report {
    let (text, json) = outcome_line(a, c, o);
    Report {
        text: format!("{text}\n"),
        json,
        code,
    }
}

pub(super) fn criteria_report(a: &Arrangement, r: &CriterionReport, code: i32) -> Report {
    let mut text = String::new();
    let mut list = Vec::new();
    for e in &r.entries {
        let (t, j) = match &e.result {
            Ok(o) => outcome_line(a, e.criterion, o),
            Err(err) => (
                format!("{} error: {err}", e.criterion.name()),
                json!({ "criterion": e.criterion.name(), "status": "error", "level": Value::Null, "error": err.to_string() }),
            ),
        };
        writeln!(text, "{t}").unwrap();
        list.push(j);
    }
    writeln!(
        text,
        "best level {} of {}: {}",
        r.best_level,
        a.ambient_dim(),
        if r.nonresonant { "nonresonant" } else { "inconclusive" }
    )
    .unwrap();
    Report {
        text,
        json: json!({ "criteria": list, "best_level": r.best_level, "nonresonant": r.nonresonant }),
        code,
    }
}

pub(super) fn verdict(v: &Verdict, kind: CertificateKind, code: i32) -> Report {
    let kind = serde_json::to_value(kind).expect("json");
    match v {
        Verdict::Accept => Report {
            text: "accept\n".into(),
            json: json!({ "verdict": "accept", "type": kind }),
            code,
        },
        Verdict::Reject(why) => Report {
            text: format!("reject: {why}\n"),
            json: json!({ "verdict": "reject", "type": kind, "reason": why }),
            code,
        },
    }
}

pub(super) fn cohomology(r: &OracleReport, code: i32) -> Report {
    let h = r.dims.as_array();
    Report {
        text: format!(
            "h = ({}, {}, {})\nchi {}\ndecone at {}\npresentation {} generators, {} relators\n",
            h[0], h[1], h[2], r.chi, r.decone_at, r.generators, r.relators
        ),
        json: json!({
            "h": h,
            "chi": r.chi,
            "decone_at": r.decone_at,
            "presentation_stats": { "generators": r.generators, "relators": r.relators },
        }),
        code,
    }
}

pub(super) fn document(d: &ArrangementDoc) -> Report {
    let json = serde_json::to_value(d).expect("json");
    Report {
        text: format!("{}\n", serde_json::to_string_pretty(d).expect("json")),
        json,
        code: 0,
    }
}
