//! Rank-one local systems given by rational monodromy exponents.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_lattice, Arrangement, Flat, IntersectionLattice};
use crate::linalg::rational::{format_rational, frac, is_integer, lcm_of_denominators, primitive_integer_vector};
use crate::linalg::Rational;

/// Monodromy m(H) = exp(2 pi i q_H) with every q_H normalized into [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonodromyMap {
    exponents: Vec<Rational>,
}

impl MonodromyMap {
    /// Rejects exponent vectors whose sum is not an integer.
    pub fn new(exponents: Vec<Rational>) -> Result<Self> {
        let sum: Rational = exponents.iter().sum();
        if !is_integer(&sum) {
            return Err(Error::LocalSystem(format!(
                "exponent sum {} not an integer",
                format_rational(&sum)
            )));
        }
        Ok(MonodromyMap {
            exponents: exponents.iter().map(frac).collect(),
        })
    }

    pub fn from_fractions(exponents: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            exponents
                .iter()
                .map(|&(n, d)| Rational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn trivial(len: usize) -> Self {
        MonodromyMap {
            exponents: vec![Rational::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn exponent(&self, h: usize) -> &Rational {
        &self.exponents[h]
    }

    /// m(H) = 1.
    pub fn is_trivial_at(&self, h: usize) -> bool {
        self.exponents[h].is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// alpha(H) = (-q_H) mod 1, so that exp(-2 pi i alpha(H)) = m(H).
    pub fn alpha(&self, h: usize) -> Rational {
        frac(&-self.exponents[h].clone())
    }

    /// The dual local system, q -> (1 - q) mod 1.
    pub fn inverse(&self) -> Self {
        MonodromyMap {
            exponents: self.exponents.iter().map(|q| frac(&-q.clone())).collect(),
        }
    }

    /// Least common denominator N of the exponents; every m(H) is an N-th root of unity.
    pub fn level(&self) -> BigInt {
        lcm_of_denominators(&self.exponents)
    }

    /// Integers k_H with q_H = k_H / level().
    pub fn numerators_over_level(&self) -> Vec<BigInt> {
        let n = Rational::from_integer(self.level());
        self.exponents.iter().map(|q| (q * &n).to_integer()).collect()
    }

    pub fn check_against(&self, a: &Arrangement) -> Result<()> {
        if self.len() != a.len() {
            return Err(Error::IndexMismatch {
                expected: a.len(),
                got: self.len(),
            });
        }
        Ok(())
    }

    /// Exponent of a product over a set of hyperplanes, mod 1.
    pub fn of_set(&self, members: &[usize]) -> Rational {
        frac(&members.iter().map(|&h| &self.exponents[h]).sum())
    }
}

/// (sum of q_H over F) mod 1; zero means m(F) = 1.
pub fn monodromy_of_flat(m: &MonodromyMap, f: &Flat) -> Rational {
    m.of_set(&f.members)
}

/// Irreducible flats F with 1 <= r(F) <= n and m(F) = 1, in lattice order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonantFlatSet {
    pub flats: Vec<Flat>,
}

impl ResonantFlatSet {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Flat> {
        self.flats.iter()
    }

    /// Whether some resonant flat contains hyperplane `h`.
    pub fn covers(&self, h: usize) -> bool {
        self.flats.iter().any(|f| f.contains(h))
    }
}

pub fn resonant_flats_in(a: &Arrangement, lattice: &IntersectionLattice, m: &MonodromyMap) -> ResonantFlatSet {
    let n = a.ambient_dim();
    let flats = (0..lattice.len())
        .filter(|&i| {
            let f = lattice.flat(i);
            !f.is_empty() && f.rank <= n && lattice.is_irreducible(i) && monodromy_of_flat(m, f).is_zero()
        })
        .map(|i| lattice.flat(i).clone())
        .collect();
    ResonantFlatSet { flats }
}

pub fn resonant_flats(a: &Arrangement, m: &MonodromyMap) -> Result<ResonantFlatSet> {
    m.check_against(a)?;
    Ok(resonant_flats_in(a, &enumerate_lattice(a), m))
}

/// An intersection point of at least three lines with trivial total monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonantPoint {
    pub flat: Flat,
    /// Homogeneous coordinates, scaled to coprime integers.
    pub point: Vec<BigInt>,
}

pub fn resonant_points(a: &Arrangement, m: &MonodromyMap) -> Result<Vec<ResonantPoint>> {
    if a.ambient_dim() != 2 {
        return Err(Error::NotLineArrangement(a.ambient_dim()));
    }
    m.check_against(a)?;
    let lattice = enumerate_lattice(a);
    Ok(lattice
        .of_rank(2)
        .filter(|f| f.len() >= 3 && monodromy_of_flat(m, f).is_zero())
        .map(|f| {
            let m = crate::linalg::RatMatrix::from_rows(&a.forms(&f.members), 3).expect("forms of length 3");
            let v = crate::linalg::nullspace(&m);
            let mut point = primitive_integer_vector(&v[0]);
            if let Some(lead) = point.iter().find(|x| !x.is_zero()) {
                if lead < &BigInt::zero() {
                    point = point.into_iter().map(|x| -x).collect();
                }
            }
            ResonantPoint { flat: f.clone(), point }
        })
        .collect())
}
