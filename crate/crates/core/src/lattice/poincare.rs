use super::flats::enumerate_lattice;
use super::Arrangement;
use crate::error::{Error, Result};

/// Betti numbers of the projective complement M(A), lowest degree first.
///
/// The Möbius function of L(A) gives the characteristic polynomial of the cone; dividing
/// by (1 + t) passes from the central arrangement in C^{n+1} to its projectivization.
pub fn poincare_polynomial(a: &Arrangement) -> Result<Vec<i64>> {
    if a.is_empty() {
        return Err(Error::Arrangement("empty arrangement".into()));
    }
    let lattice = enumerate_lattice(a);
    let flats = lattice.flats();
    let mut mobius = vec![0i64; flats.len()];
    for (i, f) in flats.iter().enumerate() {
        mobius[i] = if f.is_empty() {
            1
        } else {
            -(0..i)
                .filter(|&j| flats[j].rank < f.rank && flats[j].is_subset_of(f))
                .map(|j| mobius[j])
                .sum::<i64>()
        };
    }
    let mut cone = vec![0i64; lattice.max_rank() + 1];
    for (f, mu) in flats.iter().zip(&mobius) {
        cone[f.rank] += mu.abs();
    }
    // synthetic division by (1 + t)
    let mut quotient = vec![0i64; cone.len() - 1];
    let mut carry = 0i64;
    for k in 0..quotient.len() {
        quotient[k] = cone[k] - carry;
        carry = quotient[k];
    }
    debug_assert_eq!(cone[cone.len() - 1], carry, "cone polynomial divisible by 1 + t");
    while quotient.len() > 1 && quotient.last() == Some(&0) {
        quotient.pop();
    }
    Ok(quotient)
}

/// Euler characteristic of M(A): the Poincaré polynomial at t = -1.
pub fn euler_characteristic(a: &Arrangement) -> Result<i64> {
    let p = poincare_polynomial(a)?;
    Ok(p.iter()
        .enumerate()
        .map(|(k, b)| if k % 2 == 0 { *b } else { -*b })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lattice::enumerate_lattice;

    #[test]
    fn corpus_polynomials() {
        assert_eq!(
            poincare_polynomial(&corpus::generic3().arrangement).unwrap(),
            vec![1, 2, 1]
        );
        assert_eq!(poincare_polynomial(&corpus::pencil3().arrangement).unwrap(), vec![1, 2]);
        assert_eq!(
            poincare_polynomial(&corpus::twin_triples().arrangement).unwrap(),
            vec![1, 4, 4]
        );
        assert_eq!(
            poincare_polynomial(&corpus::disjoint_triples().arrangement).unwrap(),
            vec![1, 5, 8]
        );
    }

    #[test]
    fn line_arrangement_betti_formula() {
        for inst in corpus::all() {
            let a = &inst.arrangement;
            let lattice = enumerate_lattice(a);
            let points: i64 = lattice.of_rank(2).map(|f| f.len() as i64 - 1).sum();
            let b2 = points - a.len() as i64 + 1;
            let mut expected = vec![1, a.len() as i64 - 1, b2];
            while expected.last() == Some(&0) {
                expected.pop();
            }
            assert_eq!(poincare_polynomial(a).unwrap(), expected, "{}", inst.name);
            let chi = 1 - (a.len() as i64 - 1) + b2;
            assert_eq!(euler_characteristic(a).unwrap(), chi);
        }
    }
}
