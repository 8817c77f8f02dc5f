use crate::error::Result;
use crate::linalg::{cyclo_rank, CycloElement, CyclotomicField};

use super::wiring::WiringDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn gen(g: usize) -> Word {
    vec![Letter { gen: g, inv: false }]
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Concatenation followed by free reduction.
pub fn product(words: &[&[Letter]]) -> Word {
    let mut out: Word = Vec::new();
    for l in words.iter().flat_map(|w| w.iter()) {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(*l);
        }
    }
    out
}

pub fn commutator(a: &[Letter], b: &[Letter]) -> Word {
    product(&[a, b, &inverse(a), &inverse(b)])
}

/// Generators are the affine lines, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

/// Sweeps the diagram keeping one meridian word per position.
pub fn presentation(w: &WiringDiagram) -> GroupPresentation {
    let mut words: Vec<Word> = w.wires.iter().map(|&l| gen(l)).collect();
    let mut relators = Vec::new();
    for v in &w.vertices {
        let k = v.multiplicity();
        let local: Vec<Word> = words[v.start..v.start + k].to_vec();
        let refs: Vec<&[Letter]> = local.iter().map(Vec::as_slice).collect();
        let total = product(&refs);
        for a in &local[..k - 1] {
            relators.push(commutator(&total, a));
        }
        let mut prefix: Word = Vec::new();
        let mut moved = vec![Vec::new(); k];
        for (j, a) in local.iter().enumerate() {
            moved[k - 1 - j] = product(&[&prefix, a, &inverse(&prefix)]);
            prefix = product(&[&prefix, a]);
        }
        for (j, m) in moved.into_iter().enumerate() {
            words[v.start + j] = m;
        }
    }
    GroupPresentation {
        generators: w.wires.len(),
        relators,
    }
}

/// Fox derivatives of a word at the character x_g -> zeta^{exps[g]}, as counts in Z[Z/N].
fn fox_row(word: &[Letter], exps: &[i64], level: i64, generators: usize) -> Vec<Vec<i64>> {
    let n = level as usize;
    let mut row = vec![vec![0i64; n]; generators];
    let mut prefix = 0i64;
    for l in word {
        let e = exps[l.gen];
        if l.inv {
            prefix = (prefix - e).rem_euclid(level);
            row[l.gen][prefix as usize] -= 1;
        } else {
            row[l.gen][prefix as usize] += 1;
            prefix = (prefix + e).rem_euclid(level);
        }
    }
    row
}

/// Ranks entering h1 = (g - rank d1) - rank J, and whether J d1 = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxRanks {
    pub boundary_rank: usize,
    pub jacobian_rank: usize,
    pub chain_condition: bool,
}

impl FoxRanks {
    pub fn h1(&self, generators: usize) -> usize {
        generators - self.boundary_rank - self.jacobian_rank
    }
}

pub fn fox_ranks(p: &GroupPresentation, exps: &[i64], level: u32) -> Result<FoxRanks> {
    let field = CyclotomicField::new(level)?;
    let lv = i64::from(level);
    let boundary: Vec<CycloElement> = exps
        .iter()
        .map(|&e| field.sub(&field.zeta_pow(e), &field.one()))
        .collect();
    let boundary_rank = usize::from(boundary.iter().any(|b| !b.is_zero()));
    let jacobian: Vec<Vec<CycloElement>> = p
        .relators
        .iter()
        .map(|r| {
            fox_row(r, exps, lv, p.generators)
                .iter()
                .map(|counts| field.from_group_ring(counts))
                .collect()
        })
        .collect();
    let chain_condition = jacobian.iter().all(|row| {
        row.iter()
            .zip(&boundary)
            .fold(field.zero(), |acc, (j, b)| field.add(&acc, &field.mul(j, b)))
            .is_zero()
    });
    let jacobian_rank = if jacobian.is_empty() {
        0
    } else {
        cyclo_rank(&jacobian, level)?
    };
    Ok(FoxRanks {
        boundary_rank,
        jacobian_rank,
        chain_condition,
    })
}
