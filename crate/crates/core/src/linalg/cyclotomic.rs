//! Exact arithmetic in the cyclotomic field Q(zeta_N) = Q[x]/(Phi_N(x)).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

pub const MAX_LEVEL: u32 = 210;

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic level must be positive");
    let divisors: Vec<u32> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    let mut table: Vec<(u32, Vec<BigInt>)> = Vec::new();
    for &d in &divisors {
        // x^d - 1
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = BigInt::from(-1);
        p[d as usize] = BigInt::one();
        for (e, phi) in &table {
            if d % e == 0 {
                p = divide_monic_int(&p, phi);
            }
        }
        table.push((d, p));
    }
    table.pop().expect("n is its own divisor").1
}

fn divide_monic_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Element of Q(zeta_N) stored as its reduced representative of degree < phi(N).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    pub level: u32,
    pub coeffs: Vec<Rational>,
}

impl CycloElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// The field Q[x]/(Phi_N) together with the reductions of x^k for 0 <= k < N.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    level: u32,
    /// Monic modulus, lowest degree first.
    modulus: Vec<Rational>,
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicField {
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::LevelOutOfRange(level as u64));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(level)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let mut field = CyclotomicField {
            level,
            modulus,
            powers: Vec::new(),
        };
        let deg = field.degree();
        let mut cur = vec![Rational::zero(); deg];
        cur[0] = Rational::one();
        let cur = field.reduce(cur);
        let mut powers = Vec::with_capacity(level as usize);
        let mut p = cur;
        for _ in 0..level {
            powers.push(p.clone());
            let mut shifted = vec![Rational::zero()];
            shifted.extend(p);
            p = field.reduce(shifted);
        }
        field.powers = powers;
        Ok(field)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        while poly.len() > d {
            let c = poly.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for j in 0..d {
                poly[shift + j] -= &c * &self.modulus[j];
            }
        }
        poly.resize(d, Rational::zero());
        poly
    }

    fn element(&self, coeffs: Vec<Rational>) -> CycloElement {
        CycloElement {
            level: self.level,
            coeffs,
        }
    }

    pub fn zero(&self) -> CycloElement {
        self.element(vec![Rational::zero(); self.degree()])
    }

    pub fn one(&self) -> CycloElement {
        self.zeta_pow(0)
    }

    pub fn from_rational(&self, q: Rational) -> CycloElement {
        let mut c = vec![Rational::zero(); self.degree()];
        c[0] = q;
        self.element(c)
    }

    /// zeta_N^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycloElement {
        let e = k.rem_euclid(self.level as i64) as usize;
        self.element(self.powers[e].clone())
    }

    /// Image of the group-ring element sum_k counts[k] * t^k of Z[Z/N] under t -> zeta_N.
    pub fn from_group_ring(&self, counts: &[i64]) -> CycloElement {
        assert_eq!(counts.len(), self.level as usize, "group ring length");
        let mut c = vec![Rational::zero(); self.degree()];
        for (k, &n) in counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let n = Rational::from_integer(BigInt::from(n));
            for (ci, pi) in c.iter_mut().zip(&self.powers[k]) {
                *ci += &n * pi;
            }
        }
        self.element(c)
    }

    fn check(&self, a: &CycloElement) -> Result<()> {
        if a.level != self.level {
            return Err(Error::MixedLevels(self.level, a.level));
        }
        Ok(())
    }

    pub fn add(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        self.element(c)
    }

    pub fn sub(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        let c = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        self.element(c)
    }

    pub fn mul(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        let d = self.degree();
        let mut prod = vec![Rational::zero(); 2 * d.max(1) - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.element(self.reduce(prod))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self, a: &CycloElement) -> Option<CycloElement> {
        if a.is_zero() {
            return None;
        }
        // Invariant: s_i * a == r_i (mod modulus).
        let mut r0 = trim(self.modulus.clone());
        let mut r1 = trim(a.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() != 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, trim(r));
            s0 = std::mem::replace(&mut s1, trim(s2));
            if r1.is_empty() {
                // gcd of degree >= 1: impossible because the modulus is irreducible
                return None;
            }
        }
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        let mut padded = inv;
        padded.resize(self.degree().max(padded.len()), Rational::zero());
        Some(self.element(self.reduce(padded)))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect()
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let lead_inv = den[dd].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Rank of a matrix over Q(zeta_N). Every entry must have level `level`.
pub fn cyclo_rank(m: &[Vec<CycloElement>], level: u32) -> Result<usize> {
    let field = CyclotomicField::new(level)?;
    for row in m {
        for e in row {
            field.check(e)?;
        }
    }
    let mut a: Vec<Vec<CycloElement>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension("ragged cyclotomic matrix".into()));
    }
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(&a[r][c]).expect("nonzero element of a field is invertible");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            let (top, bottom) = a.split_at_mut(i);
            for (x, p) in bottom[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                *x = field.sub(x, &field.mul(&f, p));
            }
        }
        r += 1;
    }
    Ok(r)
}
