//! Twisted cohomology of complexified real line arrangements via wiring diagrams and Fox calculus.

pub mod fox;
pub mod wiring;

pub use fox::{fox_ranks, presentation, FoxRanks, GroupPresentation, Letter, Word};
pub use wiring::{wiring_diagram, Vertex, WiringDiagram};

use num_traits::ToPrimitive;

use crate::constructions::decone;
use crate::error::{Error, Result};
use crate::lattice::{euler_characteristic, Arrangement};
use crate::linalg::cyclotomic::MAX_LEVEL;
use crate::linalg::Rational;
use crate::local_system::MonodromyMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

impl CohomologyDims {
    pub fn as_array(&self) -> [usize; 3] {
        [self.h0, self.h1, self.h2]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub dims: CohomologyDims,
    pub chi: i64,
    pub decone_at: String,
    pub generators: usize,
    pub relators: usize,
    pub chain_condition: bool,
}

/// Level N and the exponents of the inverse character x_H -> zeta_N^{-k_H}.
pub fn inverse_character(m: &MonodromyMap) -> Result<(u32, Vec<i64>)> {
    let level = m
        .level()
        .to_u64()
        .filter(|&n| n <= u64::from(MAX_LEVEL))
        .ok_or_else(|| Error::Oracle(format!("exponent denominators need level {} > {MAX_LEVEL}", m.level())))?;
    let ks = m.numerators_over_level();
    let exps = ks
        .iter()
        .map(|k| -k.to_i64().expect("numerator below level"))
        .map(|e| e.rem_euclid(level as i64))
        .collect();
    Ok((level as u32, exps))
}

/// Computes (h0, h1, h2) from the presentation of the complement with `decone_at` at infinity.
pub fn twisted_cohomology(a: &Arrangement, m: &MonodromyMap, decone_at: usize) -> Result<OracleReport> {
    twisted_cohomology_with(a, m, decone_at, None)
}

pub fn twisted_cohomology_with(
    a: &Arrangement,
    m: &MonodromyMap,
    decone_at: usize,
    shear: Option<Rational>,
) -> Result<OracleReport> {
    if a.ambient_dim() != 2 {
        return Err(Error::NotLineArrangement(a.ambient_dim()));
    }
    m.check_against(a)?;
    let aff = decone(a, decone_at)?;
    let diagram = wiring_diagram(&aff.hyperplanes, shear)?;
    let p = presentation(&diagram);
    let (level, all_exps) = inverse_character(m)?;
    let exps: Vec<i64> = aff.sources.iter().map(|&h| all_exps[h]).collect();
    let ranks = fox_ranks(&p, &exps, level)?;
    if !ranks.chain_condition {
        return Err(Error::Oracle(
            "Fox Jacobian does not compose to zero with the boundary".into(),
        ));
    }
    let h0 = usize::from(m.is_trivial());
    let h1 = ranks.h1(p.generators);
    let chi = euler_characteristic(a)?;
    let h2 = chi + h1 as i64 - h0 as i64;
    let h2 = usize::try_from(h2).map_err(|_| Error::Oracle(format!("negative h2 = {h2}")))?;
    Ok(OracleReport {
        dims: CohomologyDims { h0, h1, h2 },
        chi,
        decone_at: a.label(decone_at).to_string(),
        generators: p.generators,
        relators: p.relators.len(),
        chain_condition: ranks.chain_condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lattice::poincare_polynomial;

    fn h(inst: &corpus::Instance) -> [usize; 3] {
        twisted_cohomology(&inst.arrangement, &inst.monodromy, 0)
            .unwrap()
            .dims
            .as_array()
    }

    #[test]
    fn corpus_values() {
        assert_eq!(h(&corpus::generic3()), [0, 0, 0]);
        assert_eq!(h(&corpus::pencil3()), [0, 1, 0]);
        assert_eq!(h(&corpus::twin_triples()), [0, 0, 1]);
        assert_eq!(h(&corpus::disjoint_triples()), [0, 0, 4]);
        let e3 = twisted_cohomology(
            &corpus::twin_triples().arrangement,
            &corpus::twin_triples().monodromy,
            2,
        )
        .unwrap();
        assert_eq!(e3.chi, 1);
    }

    #[test]
    fn trivial_system_matches_betti_numbers() {
        for inst in corpus::all() {
            let a = &inst.arrangement;
            let trivial = MonodromyMap::trivial(a.len());
            let got = twisted_cohomology(a, &trivial, 0).unwrap().dims.as_array();
            let mut want = poincare_polynomial(a).unwrap();
            want.resize(3, 0);
            assert_eq!(got.map(|x| x as i64).to_vec(), want, "{}", inst.name);
        }
    }

    /// A pencil of d lines with nontrivial product-one monodromy has h1 = d - 2.
    #[test]
    fn pencil_law() {
        for d in 3..=6i64 {
            let forms: Vec<Vec<i64>> = (0..d).map(|k| vec![1, k, 0]).collect();
            let refs: Vec<&[i64]> = forms.iter().map(Vec::as_slice).collect();
            let a = Arrangement::from_i64(2, &refs).unwrap();
            let m = MonodromyMap::from_fractions(&vec![(1, d); d as usize]).unwrap();
            for inf in 0..d as usize {
                let r = twisted_cohomology(&a, &m, inf).unwrap();
                assert_eq!(r.dims.as_array(), [0, d as usize - 2, 0]);
            }
        }
    }

    /// The braid arrangement with all exponents 1/3 carries one-dimensional h1.
    #[test]
    fn braid_arrangement_resonance() {
        let a = Arrangement::from_i64(
            2,
            &[
                &[1, -1, 0],
                &[1, 0, -1],
                &[0, 1, -1],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
            ],
        )
        .unwrap();
        let m = MonodromyMap::from_fractions(&[(1, 3); 6]).unwrap();
        for inf in 0..6 {
            assert_eq!(twisted_cohomology(&a, &m, inf).unwrap().dims.h1, 1);
        }
    }

    #[test]
    fn presentation_of_triangle() {
        let aff = decone(&corpus::generic3().arrangement, 2).unwrap();
        let p = presentation(&wiring_diagram(&aff.hyperplanes, None).unwrap());
        assert_eq!((p.generators, p.relators.len()), (2, 1));
        assert_eq!(p.relators[0].len(), 6);
        let aff = decone(&corpus::pencil3().arrangement, 2).unwrap();
        let p = presentation(&wiring_diagram(&aff.hyperplanes, None).unwrap());
        assert_eq!((p.generators, p.relators.len()), (2, 0));
    }

    #[test]
    fn disjoint_triples_relator_count() {
        let aff = decone(&corpus::disjoint_triples().arrangement, 0).unwrap();
        let d = wiring_diagram(&aff.hyperplanes, None).unwrap();
        let p = presentation(&d);
        let expected: usize = d.vertices.iter().map(|v| v.multiplicity() - 1).sum();
        assert_eq!((p.generators, p.relators.len()), (5, expected));
    }

    #[test]
    fn errors() {
        let e1 = corpus::generic3();
        assert!(twisted_cohomology(&e1.arrangement, &e1.monodromy, 7).is_err());
        let a3 = Arrangement::from_i64(3, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        let m = MonodromyMap::from_fractions(&[(1, 2), (1, 2)]).unwrap();
        assert!(matches!(
            twisted_cohomology(&a3, &m, 0),
            Err(Error::NotLineArrangement(3))
        ));
        let big = MonodromyMap::from_fractions(&[(1, 211), (1, 211), (209, 211)]).unwrap();
        assert!(twisted_cohomology(&e1.arrangement, &big, 0).is_err());
    }
}
