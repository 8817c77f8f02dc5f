//! Sufficient conditions for nonresonance, each with a checkable certificate.

use std::fmt;

use num_traits::Zero;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::lattice::{closure, enumerate_lattice, rank_of, Arrangement, Flat, IntersectionLattice};
use crate::local_system::{resonant_flats_in, MonodromyMap, ResonantFlatSet};
use crate::lp::{
    decide_constant_combination, delta_for_hyperplane, Decision, DeltaCertificate, IncidenceMatrix, LambdaWitness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Cdo,
    Lambda,
    UniquePoint,
    BipartitionLines,
    BipartitionGeneral,
    Shelter,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::Cdo,
        Criterion::Lambda,
        Criterion::UniquePoint,
        Criterion::BipartitionLines,
        Criterion::BipartitionGeneral,
        Criterion::Shelter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Cdo => "cdo",
            Criterion::Lambda => "lambda",
            Criterion::UniquePoint => "point",
            Criterion::BipartitionLines => "bipartition",
            Criterion::BipartitionGeneral => "bipartition-general",
            Criterion::Shelter => "shelter",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Disjoint index sets covering the arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
}

impl Bipartition {
    /// Either part may be empty here; criteria demand both nonempty.
    pub fn new(len: usize, mut part1: Vec<usize>, mut part2: Vec<usize>) -> Result<Self> {
        part1.sort_unstable();
        part2.sort_unstable();
        let mut seen = vec![false; len];
        for &i in part1.iter().chain(&part2) {
            if i >= len {
                return Err(Error::Partition(format!("index {} out of range", i + 1)));
            }
            if seen[i] {
                return Err(Error::Partition(format!("index {} appears twice", i + 1)));
            }
            seen[i] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Partition(format!("index {} is in neither part", i + 1)));
        }
        Ok(Bipartition { part1, part2 })
    }

    /// `part1` given, `part2` its complement.
    pub fn from_part1(len: usize, part1: Vec<usize>) -> Result<Self> {
        let part2 = (0..len).filter(|i| !part1.contains(i)).collect();
        Self::new(len, part1, part2)
    }

    fn require_proper(&self) -> Result<()> {
        if self.part1.is_empty() || self.part2.is_empty() {
            return Err(Error::Partition("both parts must be nonempty".into()));
        }
        Ok(())
    }

    pub fn in_part1(&self, h: usize) -> bool {
        self.part1.binary_search(&h).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Delta(DeltaCertificate),
    /// A rank-2 resonant flat, a line lying on no other resonant flat, and a line missing it.
    ResonantPoint {
        flat: Flat,
        h1: usize,
        h2: usize,
    },
    Bipartition(Bipartition),
    /// An irreducible flat contained in no resonant flat.
    Shelter(Flat),
}

/// h^p = 0 for all p < level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingConclusion {
    pub criterion: Criterion,
    pub level: usize,
    pub nonresonant: bool,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Lambda(LambdaWitness),
    Violation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Fired(VanishingConclusion),
    Inconclusive(Witness),
}

impl Outcome {
    pub fn fired(&self) -> bool {
        matches!(self, Outcome::Fired(_))
    }

    pub fn conclusion(&self) -> Option<&VanishingConclusion> {
        match self {
            Outcome::Fired(c) => Some(c),
            Outcome::Inconclusive(_) => None,
        }
    }

    fn violation(msg: impl Into<String>) -> Self {
        Outcome::Inconclusive(Witness::Violation(msg.into()))
    }
}

/// The lattice and resonant flats of a pair, computed once and shared by all criteria.
#[derive(Clone, Debug)]
pub struct Context<'a> {
    pub arrangement: &'a Arrangement,
    pub monodromy: &'a MonodromyMap,
    pub lattice: IntersectionLattice,
    pub resonant: ResonantFlatSet,
}

impl<'a> Context<'a> {
    pub fn new(a: &'a Arrangement, m: &'a MonodromyMap) -> Result<Self> {
        m.check_against(a)?;
        if a.is_empty() {
            return Err(Error::Arrangement("arrangement must be nonempty".into()));
        }
        let lattice = enumerate_lattice(a);
        let resonant = resonant_flats_in(a, &lattice, m);
        Ok(Context {
            arrangement: a,
            monodromy: m,
            lattice,
            resonant,
        })
    }

    fn n(&self) -> usize {
        self.arrangement.ambient_dim()
    }

    fn conclude(&self, criterion: Criterion, level: usize, certificate: Certificate) -> Outcome {
        Outcome::Fired(VanishingConclusion {
            criterion,
            level,
            nonresonant: level == self.n(),
            certificate,
        })
    }

    fn require_lines(&self) -> Result<()> {
        if self.n() != 2 {
            return Err(Error::NotLineArrangement(self.n()));
        }
        Ok(())
    }

    fn resonant_points(&self) -> impl Iterator<Item = &Flat> {
        self.resonant.iter().filter(|f| f.rank == 2)
    }

    pub fn cdo(&self) -> Result<Outcome> {
        let a = self.arrangement;
        match (0..a.len()).find(|&h| !self.resonant.covers(h)) {
            Some(h) if a.len() >= 2 => {
                let d = delta_for_hyperplane(a, h)?;
                Ok(self.conclude(Criterion::Cdo, self.n(), Certificate::Delta(d)))
            }
            _ => Ok(Outcome::violation("every hyperplane lies in a resonant flat")),
        }
    }

    pub fn lambda(&self) -> Result<Outcome> {
        let m = IncidenceMatrix::from_resonant(self.arrangement, &self.resonant)?;
        Ok(match decide_constant_combination(&m)? {
            Decision::Infeasible(d) => self.conclude(Criterion::Lambda, self.n(), Certificate::Delta(d)),
            Decision::Feasible(w) => Outcome::Inconclusive(Witness::Lambda(w)),
        })
    }

    pub fn unique_point(&self) -> Result<Outcome> {
        self.require_lines()?;
        let m = self.monodromy;
        for f in self.resonant_points() {
            let h1 = f
                .members
                .iter()
                .copied()
                .find(|&h| !m.is_trivial_at(h) && self.resonant.iter().filter(|g| g.contains(h)).count() == 1);
            let h2 = (0..self.arrangement.len()).find(|&h| !f.contains(h) && !m.is_trivial_at(h));
            if let (Some(h1), Some(h2)) = (h1, h2) {
                let cert = Certificate::ResonantPoint {
                    flat: f.clone(),
                    h1,
                    h2,
                };
                return Ok(self.conclude(Criterion::UniquePoint, 2, cert));
            }
        }
        Ok(Outcome::violation(
            "no resonant point has a line through no other resonant point together with a line missing it",
        ))
    }

    pub fn bipartition_lines(&self, b: &Bipartition) -> Result<Outcome> {
        self.require_lines()?;
        self.check_partition(b)?;
        let m = self.monodromy;
        for (i, part) in [&b.part1, &b.part2].into_iter().enumerate() {
            if part.iter().all(|&h| m.is_trivial_at(h)) {
                return Ok(Outcome::violation(format!("part {} has only trivial monodromy", i + 1)));
            }
        }
        for f in self.resonant_points() {
            let split = f.members.iter().any(|&h| b.in_part1(h)) && f.members.iter().any(|&h| !b.in_part1(h));
            if split {
                return Ok(Outcome::violation(format!(
                    "resonant point {:?} has lines in both parts",
                    self.arrangement.label_list(&f.members)
                )));
            }
        }
        Ok(self.conclude(Criterion::BipartitionLines, 2, Certificate::Bipartition(b.clone())))
    }

    /// Components of the resonance graph; the one holding the lowest nontrivial line
    /// against the rest.
    pub fn search_bipartition_lines(&self) -> Result<Option<Bipartition>> {
        self.require_lines()?;
        let a = self.arrangement;
        let mut uf = UnionFind::<usize>::new(a.len());
        for f in self.resonant_points() {
            for w in f.members.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let nontrivial: Vec<usize> = (0..a.len()).filter(|&h| !self.monodromy.is_trivial_at(h)).collect();
        let Some(&first) = nontrivial.first() else {
            return Ok(None);
        };
        let root = uf.find(first);
        if nontrivial.iter().all(|&h| uf.find(h) == root) {
            return Ok(None);
        }
        let part1 = (0..a.len()).filter(|&h| uf.find(h) == root).collect();
        Bipartition::from_part1(a.len(), part1).map(Some)
    }

    pub fn bipartition_general(&self, b: &Bipartition) -> Result<Outcome> {
        self.check_partition(b)?;
        if self.monodromy.of_set(&b.part1).is_zero() {
            return Ok(Outcome::violation("monodromy product over part 1 is 1"));
        }
        let a = self.arrangement;
        for s in self
            .lattice
            .flats()
            .iter()
            .filter(|f| !f.is_empty() && f.rank <= self.n())
        {
            let (s1, s2): (Vec<usize>, Vec<usize>) = s.members.iter().partition(|&&h| b.in_part1(h));
            let r = rank_of(a, &s1) + rank_of(a, &s2);
            if r != s.rank {
                return Ok(Outcome::violation(format!(
                    "flat {:?} has rank {} but its parts have ranks summing to {r}",
                    a.label_list(&s.members),
                    s.rank
                )));
            }
        }
        let n = self.n();
        Ok(self.conclude(Criterion::BipartitionGeneral, n, Certificate::Bipartition(b.clone())))
    }

    /// Tries every bipartition with hyperplane 1 in the first part, in mask order.
    pub fn search_bipartition_general(&self) -> Result<Option<(Bipartition, Outcome)>> {
        let len = self.arrangement.len();
        if len > 16 {
            return Err(Error::Partition(format!(
                "exhaustive partition search limited to 16 hyperplanes, got {len}"
            )));
        }
        for mask in 1u32..(1 << (len - 1)) {
            let part2: Vec<usize> = (1..len).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            let part1 = (0..len).filter(|i| !part2.contains(i)).collect();
            let b = Bipartition::new(len, part1, part2)?;
            let out = self.bipartition_general(&b)?;
            if out.fired() {
                return Ok(Some((b, out)));
            }
        }
        Ok(None)
    }

    /// Fires iff no resonant flat contains `i`; the level is n + 1 - r(I).
    pub fn shelter(&self, i: &Flat) -> Result<Outcome> {
        let a = self.arrangement;
        let closed = closure(a, &i.members);
        let idx = self
            .lattice
            .index_of(&i.members)
            .filter(|_| closed == *i && !i.is_empty())
            .ok_or_else(|| Error::Flat(format!("{:?} is not a nonempty flat", a.label_list(&i.members))))?;
        if !self.lattice.is_irreducible(idx) {
            return Err(Error::Flat(format!(
                "{:?} is not irreducible",
                a.label_list(&i.members)
            )));
        }
        if let Some(f) = self.resonant.iter().find(|f| i.is_subset_of(f)) {
            return Ok(Outcome::violation(format!(
                "resonant flat {:?} contains it",
                a.label_list(&f.members)
            )));
        }
        let level = self.n() + 1 - i.rank;
        Ok(self.conclude(Criterion::Shelter, level, Certificate::Shelter(i.clone())))
    }

    /// The sheltering flat of smallest rank (then lowest in lattice order), if any.
    pub fn search_shelter(&self) -> Result<Outcome> {
        for idx in 0..self.lattice.len() {
            let f = self.lattice.flat(idx);
            if f.is_empty() || f.rank > self.n() || !self.lattice.is_irreducible(idx) {
                continue;
            }
            let out = self.shelter(f)?;
            if out.fired() {
                return Ok(out);
            }
        }
        Ok(Outcome::violation(
            "every irreducible flat of rank at most n lies in a resonant flat",
        ))
    }

    fn check_partition(&self, b: &Bipartition) -> Result<()> {
        let len = self.arrangement.len();
        Bipartition::new(len, b.part1.clone(), b.part2.clone())?;
        b.require_proper()
    }

    pub fn run_all(&self, options: &RunOptions) -> CriterionReport {
        let mut entries = vec![
            ReportEntry::new(Criterion::Cdo, self.cdo()),
            ReportEntry::new(Criterion::Lambda, self.lambda()),
        ];
        if self.n() == 2 {
            entries.push(ReportEntry::new(Criterion::UniquePoint, self.unique_point()));
            let bip = self.search_bipartition_lines().and_then(|b| match b {
                Some(b) => self.bipartition_lines(&b),
                None => Ok(Outcome::violation(
                    "lines with nontrivial monodromy lie in one component of the resonance graph",
                )),
            });
            entries.push(ReportEntry::new(Criterion::BipartitionLines, bip));
        }
        if options.search_general_partitions {
            let general = self.search_bipartition_general().map(|found| match found {
                Some((_, out)) => out,
                None => Outcome::violation("no bipartition satisfies both conditions"),
            });
            entries.push(ReportEntry::new(Criterion::BipartitionGeneral, general));
        }
        entries.push(ReportEntry::new(Criterion::Shelter, self.search_shelter()));
        CriterionReport::new(self.n(), entries)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Also try every bipartition for the general partition criterion (at most 16 hyperplanes).
    pub search_general_partitions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub criterion: Criterion,
    pub result: std::result::Result<Outcome, Error>,
}

impl ReportEntry {
    fn new(criterion: Criterion, result: Result<Outcome>) -> Self {
        ReportEntry { criterion, result }
    }
}

/// Every criterion's outcome, in a fixed order, and the strongest level reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub entries: Vec<ReportEntry>,
    pub best_level: usize,
    pub nonresonant: bool,
}

impl CriterionReport {
    fn new(n: usize, entries: Vec<ReportEntry>) -> Self {
        let best_level = entries
            .iter()
            .filter_map(|e| e.result.as_ref().ok()?.conclusion().map(|c| c.level))
            .max()
            .unwrap_or(0);
        CriterionReport {
            entries,
            best_level,
            nonresonant: best_level == n,
        }
    }

    pub fn fired(&self) -> impl Iterator<Item = &VanishingConclusion> {
        self.entries.iter().filter_map(|e| e.result.as_ref().ok()?.conclusion())
    }
}

pub fn check_cdo(a: &Arrangement, m: &MonodromyMap) -> Result<Outcome> {
    Context::new(a, m)?.cdo()
}

pub fn check_lambda_criterion(a: &Arrangement, m: &MonodromyMap) -> Result<Outcome> {
    Context::new(a, m)?.lambda()
}

pub fn check_unique_resonant_point(a: &Arrangement, m: &MonodromyMap) -> Result<Outcome> {
    Context::new(a, m)?.unique_point()
}

pub fn check_bipartition_lines(a: &Arrangement, m: &MonodromyMap, b: &Bipartition) -> Result<Outcome> {
    Context::new(a, m)?.bipartition_lines(b)
}

pub fn search_bipartition_lines(a: &Arrangement, m: &MonodromyMap) -> Result<Option<Bipartition>> {
    Context::new(a, m)?.search_bipartition_lines()
}

pub fn check_bipartition_general(a: &Arrangement, m: &MonodromyMap, b: &Bipartition) -> Result<Outcome> {
    Context::new(a, m)?.bipartition_general(b)
}

pub fn check_irreducible_shelter(a: &Arrangement, m: &MonodromyMap, i: &Flat) -> Result<Outcome> {
    Context::new(a, m)?.shelter(i)
}

pub fn run_all(a: &Arrangement, m: &MonodromyMap) -> Result<CriterionReport> {
    Ok(Context::new(a, m)?.run_all(&RunOptions::default()))
}
