//! Lifts along a bipartition, generic sections through a flat, and affine charts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criteria::Bipartition;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_lattice, Arrangement, Flat, Hyperplane, IntersectionLattice};
use crate::linalg::matrix::{coordinates_in, in_span, nullspace, rank_of_vectors};
use crate::linalg::{RatMatrix, Rational};

const ATTEMPTS: u32 = 24;

/// Seed taken from the leading bytes of a hex content hash.
pub fn seed_from_hash(hash: &str) -> u64 {
    let bytes = hex::decode(hash.get(..16).unwrap_or(hash)).unwrap_or_default();
    bytes.iter().fold(0u64, |acc, &b| (acc << 8) | u64::from(b))
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<Rational> {
    (0..len)
        .map(|_| Rational::from_integer(BigInt::from(rng.random_range(-bound..=bound))))
        .collect()
}

/// An arrangement in P^{n+1} whose trace on the hyperplane x_{n+1} = 0 is the base.
#[derive(Clone, Debug)]
pub struct LiftedArrangement {
    pub base: Arrangement,
    pub lifted: Arrangement,
    pub partition: Bipartition,
    /// Part-2 cones are V(H) + span(z, 1).
    pub direction: Vec<Rational>,
    pub seed: u64,
}

/// Basis of V(F) for each flat of the subarrangement on `part`.
fn cones_of_part(a: &Arrangement, part: &[usize]) -> Result<Vec<Vec<Vec<Rational>>>> {
    if part.is_empty() {
        return Ok(Vec::new());
    }
    let dim = a.ambient_dim() + 1;
    let sub = Arrangement::new(
        a.ambient_dim(),
        part.iter().map(|&h| a.hyperplane(h).clone()).collect(),
        None,
    )?;
    Ok(enumerate_lattice(&sub)
        .flats()
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| {
            let m = RatMatrix::from_rows(&sub.forms(&f.members), dim).expect("forms have length n+1");
            nullspace(&m)
        })
        .collect())
}

/// Lifts part 1 to (l, 0) and part 2 to (l, -l(z)) for a sampled z avoiding every proper
/// sum V(F1) + V(F2).
pub fn lift_bipartition(a: &Arrangement, b: &Bipartition, seed: u64) -> Result<LiftedArrangement> {
    let b = Bipartition::new(a.len(), b.part1.clone(), b.part2.clone())?;
    let dim = a.ambient_dim() + 1;
    let cones1 = cones_of_part(a, &b.part1)?;
    let cones2 = cones_of_part(a, &b.part2)?;
    let mut sums = Vec::new();
    for v1 in &cones1 {
        for v2 in &cones2 {
            let mut s = v1.clone();
            s.extend(v2.iter().cloned());
            if rank_of_vectors(&s, dim) < dim {
                sums.push(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = 2i64;
    let mut last_bad = None;
    for _ in 0..ATTEMPTS {
        let z = random_vector(&mut rng, dim, bound);
        match sums.iter().position(|s| in_span(s, &z)) {
            None => {
                let hyperplanes = (0..a.len())
                    .map(|h| {
                        let form = a.hyperplane(h);
                        let mut coeffs = form.coeffs().to_vec();
                        coeffs.push(if b.in_part1(h) {
                            Rational::zero()
                        } else {
                            -form.eval(&z)
                        });
                        Hyperplane::new(coeffs)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let lifted = Arrangement::new(a.ambient_dim() + 1, hyperplanes, Some(a.labels().to_vec()))?;
                return Ok(LiftedArrangement {
                    base: a.clone(),
                    lifted,
                    partition: b,
                    direction: z,
                    seed,
                });
            }
            Some(i) => last_bad = Some(i),
        }
        bound = bound.saturating_mul(2);
    }
    Err(Error::Construction(format!(
        "no admissible lifting direction after {ATTEMPTS} attempts (last violated sum #{})",
        last_bad.map_or(0, |i| i + 1)
    )))
}

/// A form through Z(I), outside the arrangement, vanishing on V(F) exactly when F contains I.
pub fn generic_section(a: &Arrangement, i: &Flat, seed: u64) -> Result<Hyperplane> {
    let lattice = enumerate_lattice(a);
    generic_section_in(a, &lattice, i, seed)
}

pub fn generic_section_in(a: &Arrangement, lattice: &IntersectionLattice, i: &Flat, seed: u64) -> Result<Hyperplane> {
    let idx = lattice
        .index_of(&i.members)
        .filter(|&k| lattice.flat(k) == i && !i.is_empty())
        .ok_or_else(|| Error::Flat(format!("{:?} is not a nonempty flat", a.label_list(&i.members))))?;
    if i.rank < 2 {
        return Err(Error::Construction(format!("flat has rank {} < 2", i.rank)));
    }
    if !lattice.is_irreducible(idx) {
        return Err(Error::Flat(format!(
            "{:?} is not irreducible",
            a.label_list(&i.members)
        )));
    }
    let dim = a.ambient_dim() + 1;
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for form in a.forms(&i.members) {
        let mut trial = basis.clone();
        trial.push(form.clone());
        if rank_of_vectors(&trial, dim) > basis.len() {
            basis.push(form);
        }
    }
    let others: Vec<Vec<Vec<Rational>>> = lattice
        .flats()
        .iter()
        .filter(|f| !i.is_subset_of(f))
        .map(|f| a.forms(&f.members))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = 2i64;
    for _ in 0..ATTEMPTS {
        let c = random_vector(&mut rng, basis.len(), bound);
        bound = bound.saturating_mul(2);
        let form: Vec<Rational> = (0..dim)
            .map(|k| basis.iter().zip(&c).map(|(row, ci)| &row[k] * ci).sum())
            .collect();
        if form.iter().all(Zero::is_zero) {
            continue;
        }
        let h0 = Hyperplane::new(form)?;
        if a.hyperplanes().contains(&h0) {
            continue;
        }
        if others.iter().all(|rows| !in_span(rows, h0.coeffs())) {
            return Ok(h0);
        }
    }
    Err(Error::Construction(format!(
        "no generic section found after {ATTEMPTS} attempts"
    )))
}

/// Affine hyperplane sum_k coeffs[k] u_k + constant = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHyperplane {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

/// The chart P^n minus H_inf. The meridian of H_inf is the inverse of the product of the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineArrangement {
    pub dim: usize,
    pub hyperplanes: Vec<AffineHyperplane>,
    pub labels: Vec<String>,
    /// Index in the projective arrangement of each affine hyperplane.
    pub sources: Vec<usize>,
    pub infinity: usize,
}

impl AffineArrangement {
    /// Homogenizes with u_0 as the new first coordinate; H_inf becomes u_0 = 0 and is placed last.
    pub fn recone(&self) -> Result<Arrangement> {
        let mut hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                let mut c = vec![h.constant.clone()];
                c.extend(h.coeffs.iter().cloned());
                Hyperplane::new(c)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut inf = vec![Rational::zero(); self.dim + 1];
        inf[0] = Rational::one();
        hs.push(Hyperplane::new(inf)?);
        Arrangement::new(self.dim, hs, None)
    }
}

/// Coordinates u_0 = l_inf, u_k = x_{j_k} for the first standard vectors completing a basis.
pub fn decone(a: &Arrangement, infinity: usize) -> Result<AffineArrangement> {
    a.check_index(infinity)?;
    let dim = a.ambient_dim() + 1;
    let mut basis = vec![a.hyperplane(infinity).coeffs().to_vec()];
    for j in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[j] = Rational::one();
        let mut trial = basis.clone();
        trial.push(e.clone());
        if rank_of_vectors(&trial, dim) > basis.len() {
            basis.push(e);
        }
    }
    let sources: Vec<usize> = (0..a.len()).filter(|&h| h != infinity).collect();
    let hyperplanes = sources
        .iter()
        .map(|&h| {
            let c = coordinates_in(&basis, a.hyperplane(h).coeffs()).expect("basis spans the dual space");
            AffineHyperplane {
                coeffs: c[1..].to_vec(),
                constant: c[0].clone(),
            }
        })
        .collect();
    Ok(AffineArrangement {
        dim: a.ambient_dim(),
        hyperplanes,
        labels: a.label_list(&sources),
        sources,
        infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lattice::{closure, rank_of, restriction};
    use crate::linalg::rational::int;

    fn subsets(len: usize) -> impl Iterator<Item = Vec<usize>> {
        (0u32..(1 << len)).map(move |mask| (0..len).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub(crate) fn lift_property_holds(a: &Arrangement, l: &LiftedArrangement) -> bool {
        subsets(a.len()).all(|s| {
            let (s1, s2): (Vec<usize>, Vec<usize>) = s.iter().partition(|&&h| l.partition.in_part1(h));
            let r = rank_of(a, &s);
            let additive = rank_of(a, &s1) + rank_of(a, &s2) == r;
            (rank_of(&l.lifted, &s) == r) == additive
        })
    }

    #[test]
    fn pencil_lift_breaks_concurrency() {
        let e2 = corpus::pencil3().arrangement;
        let b = Bipartition::from_part1(3, vec![0, 1]).unwrap();
        let l = lift_bipartition(&e2, &b, 7).unwrap();
        assert_eq!(l.lifted.ambient_dim(), 3);
        assert_eq!(rank_of(&l.lifted, &[0, 1, 2]), 3);
        assert!(lift_property_holds(&e2, &l));
    }

    #[test]
    fn lift_with_empty_part() {
        let e1 = corpus::generic3().arrangement;
        let b = Bipartition::new(3, vec![0, 1, 2], vec![]).unwrap();
        let l = lift_bipartition(&e1, &b, 1).unwrap();
        for s in subsets(3) {
            assert_eq!(rank_of(&l.lifted, &s), rank_of(&e1, &s));
        }
    }

    #[test]
    fn lift_restricts_to_base() {
        let e4 = corpus::disjoint_triples().arrangement;
        let b = Bipartition::from_part1(6, vec![0, 1, 2]).unwrap();
        let l = lift_bipartition(&e4, &b, 3).unwrap();
        assert!(lift_property_holds(&e4, &l));
        for h in 0..6 {
            let c = l.lifted.hyperplane(h).coeffs();
            assert_eq!(Hyperplane::new(c[..3].to_vec()).unwrap(), *e4.hyperplane(h));
        }
        let again = lift_bipartition(&e4, &b, 3).unwrap();
        assert_eq!(again.direction, l.direction);
    }

    #[test]
    fn section_through_triple_point() {
        let e3 = corpus::twin_triples().arrangement;
        let f1 = closure(&e3, &[0, 1]);
        let h0 = generic_section(&e3, &f1, 11).unwrap();
        let lattice = enumerate_lattice(&e3);
        let p = vec![int(0), int(0), int(1)];
        assert!(h0.eval(&p).is_zero());
        for f in lattice.flats() {
            let vanishes = in_span(&e3.forms(&f.members), h0.coeffs());
            assert_eq!(vanishes, f1.is_subset_of(f), "{:?}", f.members);
        }
        let e1 = corpus::generic3().arrangement;
        assert!(generic_section(&e1, &closure(&e1, &[0]), 0).is_err());
    }

    #[test]
    fn section_through_pencil_point() {
        let e2 = corpus::pencil3().arrangement;
        let top = closure(&e2, &[0, 1, 2]);
        let h0 = generic_section(&e2, &top, 5).unwrap();
        assert!(!e2.hyperplanes().contains(&h0));
        assert!(h0.coeffs()[2].is_zero());
    }

    /// Irreducible flats of the section above I map to irreducible flats of A above I,
    /// with rank one higher.
    #[test]
    fn section_shifts_irreducible_ranks() {
        for inst in corpus::all() {
            let a = &inst.arrangement;
            let lattice = enumerate_lattice(a);
            for (idx, i) in lattice.flats().iter().enumerate() {
                if i.rank < 2 || !lattice.is_irreducible(idx) || i.rank > a.ambient_dim() {
                    continue;
                }
                let h0 = generic_section_in(a, &lattice, i, 2).unwrap();
                let mut hs = a.hyperplanes().to_vec();
                hs.push(h0);
                let ext = Arrangement::new(a.ambient_dim(), hs, None).unwrap();
                let section = restriction(&ext, &closure(&ext, &[a.len()])).unwrap();
                let sl = enumerate_lattice(&section.arrangement);
                let lift = |g: &Flat| -> Vec<usize> {
                    let mut m: Vec<usize> = g.members.iter().flat_map(|&k| section.sources[k].clone()).collect();
                    m.sort_unstable();
                    m
                };
                let images: Vec<usize> = (0..section.sources.len())
                    .filter(|&k| section.sources[k].iter().any(|h| i.contains(*h)))
                    .collect();
                let i0 = closure(&section.arrangement, &images);
                for (gidx, g) in sl.flats().iter().enumerate() {
                    if !i0.is_subset_of(g) || !sl.is_irreducible(gidx) {
                        continue;
                    }
                    let tilde = closure(a, &lift(g));
                    assert_eq!(tilde.members, lift(g), "{}", inst.name);
                    assert!(i.is_subset_of(&tilde));
                    assert_eq!(tilde.rank, g.rank + 1);
                    let t = lattice.index_of(&tilde.members).unwrap();
                    assert!(lattice.is_irreducible(t));
                }
            }
        }
    }

    #[test]
    fn decone_examples() {
        let e2 = corpus::pencil3().arrangement;
        let d = decone(&e2, 2).unwrap();
        assert_eq!(d.hyperplanes.len(), 2);
        let slope = |h: &AffineHyperplane| (h.coeffs[0].clone(), h.coeffs[1].clone());
        assert_eq!(slope(&d.hyperplanes[0]), slope(&d.hyperplanes[1]));
        assert_ne!(d.hyperplanes[0].constant, d.hyperplanes[1].constant);
        let e1 = corpus::generic3().arrangement;
        let d = decone(&e1, 2).unwrap();
        assert_eq!(d.hyperplanes[0].constant, int(0));
        assert_eq!(d.hyperplanes[1].constant, int(0));
        assert!(decone(&e1, 7).is_err());
    }

    #[test]
    fn recone_preserves_rank_spectrum() {
        for inst in corpus::all() {
            let a = &inst.arrangement;
            for inf in 0..a.len() {
                let d = decone(a, inf).unwrap();
                let back = d.recone().unwrap();
                let mut order = d.sources.clone();
                order.push(inf);
                for s in subsets(a.len()) {
                    let orig: Vec<usize> = s.iter().map(|&k| order[k]).collect();
                    assert_eq!(rank_of(&back, &s), rank_of(a, &orig));
                }
            }
        }
    }

    #[test]
    fn seed_from_hash_reads_leading_bytes() {
        assert_eq!(seed_from_hash("0000000000000102ff"), 258);
        assert_eq!(seed_from_hash(""), 0);
    }
}
