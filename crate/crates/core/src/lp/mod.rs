//! Constant-sum combinations of resonant flats and their Farkas-dual certificates.

mod simplex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Arrangement;
use crate::linalg::rational::{format_rational, primitive_integer_vector};
use crate::linalg::Rational;
use crate::local_system::ResonantFlatSet;

/// Rows are resonant flats, columns hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Vec<bool>>,
    cols: usize,
}

impl IncidenceMatrix {
    pub fn new(rows: Vec<Vec<bool>>, cols: usize) -> Result<Self> {
        if cols == 0 {
            return Err(Error::Lp("incidence matrix has no columns".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Lp(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            if !r.iter().any(|&e| e) {
                return Err(Error::Lp(format!("row {i} is empty")));
            }
        }
        Ok(IncidenceMatrix { rows, cols })
    }

    pub fn from_resonant(a: &Arrangement, rf: &ResonantFlatSet) -> Result<Self> {
        let rows = rf
            .iter()
            .map(|f| (0..a.len()).map(|h| f.contains(h)).collect())
            .collect();
        Self::new(rows, a.len())
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c]
    }

    pub fn row(&self, r: usize) -> &[bool] {
        &self.rows[r]
    }

    /// Sum of `values` over the columns of row `r`.
    pub fn row_sum(&self, r: usize, values: &[Rational]) -> Rational {
        self.rows[r]
            .iter()
            .zip(values)
            .filter(|(&e, _)| e)
            .map(|(_, v)| v)
            .sum()
    }

    /// (M^T lambda)_H for every column H.
    pub fn column_sums(&self, lambda: &[Rational]) -> Vec<Rational> {
        (0..self.cols)
            .map(|c| self.rows.iter().zip(lambda).filter(|(r, _)| r[c]).map(|(_, l)| l).sum())
            .collect()
    }
}

/// Nonnegative integer weights on resonant flats with a constant hyperplane sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaWitness {
    pub values: Vec<BigInt>,
    pub common_sum: BigInt,
}

impl LambdaWitness {
    pub fn as_rationals(&self) -> Vec<Rational> {
        self.values.iter().cloned().map(Rational::from_integer).collect()
    }
}

/// Weights on hyperplanes summing to zero and strictly positive on every resonant flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCertificate {
    pub values: Vec<Rational>,
}

impl DeltaCertificate {
    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(format_rational).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Feasible(LambdaWitness),
    Infeasible(DeltaCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(String),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Decides whether some nonzero lambda >= 0 has M^T lambda constant.
///
/// Runs phase one on `{lambda >= 0, c >= 0, sum lambda = 1, M^T lambda - c 1 = 0}`.
/// When infeasible, minus the optimal duals of the hyperplane rows has positive sum on
/// every row, and shifting by a constant makes the total zero.
pub fn decide_constant_combination(m: &IncidenceMatrix) -> Result<Decision> {
    let (r, n) = (m.rows(), m.cols());
    if r == 0 {
        return Ok(Decision::Infeasible(DeltaCertificate {
            values: vec![Rational::zero(); n],
        }));
    }
    let one = Rational::one;
    let mut a = Vec::with_capacity(n + 1);
    let mut normalization: Vec<Rational> = vec![one(); r];
    normalization.push(Rational::zero());
    a.push(normalization);
    for h in 0..n {
        let mut row: Vec<Rational> = (0..r)
            .map(|f| if m.get(f, h) { one() } else { Rational::zero() })
            .collect();
        row.push(-one());
        a.push(row);
    }
    let mut b = vec![Rational::zero(); n + 1];
    b[0] = one();
    let p = simplex::phase_one(&a, &b);
    if p.feasible() {
        let lambda = &p.x[..r];
        let values = primitive_integer_vector(lambda);
        let common_sum = (0..r)
            .filter(|&f| m.get(f, 0))
            .fold(BigInt::zero(), |acc, f| acc + &values[f]);
        let w = LambdaWitness { values, common_sum };
        if !verify_lambda(m, &w.as_rationals())?.is_accept() {
            return Err(Error::Lp("internal: primal solution failed verification".into()));
        }
        return Ok(Decision::Feasible(w));
    }
    let mut delta: Vec<Rational> = p.y[1..].iter().map(|y| -y.clone()).collect();
    let shift = -delta.iter().sum::<Rational>() / Rational::from_integer(BigInt::from(n));
    for d in delta.iter_mut() {
        *d += &shift;
    }
    let values = primitive_integer_vector(&delta)
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    let cert = DeltaCertificate { values };
    match verify_delta_matrix(m, &cert)? {
        Verdict::Accept => Ok(Decision::Infeasible(cert)),
        Verdict::Reject(why) => Err(Error::Lp(format!(
            "internal: dual certificate failed verification: {why}"
        ))),
    }
}

pub fn verify_delta_matrix(m: &IncidenceMatrix, delta: &DeltaCertificate) -> Result<Verdict> {
    if delta.values.len() != m.cols() {
        return Err(Error::IndexMismatch {
            expected: m.cols(),
            got: delta.values.len(),
        });
    }
    let total: Rational = delta.values.iter().sum();
    if !total.is_zero() {
        return Ok(Verdict::Reject(format!(
            "total sum {} is not zero",
            format_rational(&total)
        )));
    }
    for r in 0..m.rows() {
        let s = m.row_sum(r, &delta.values);
        if !s.is_positive() {
            return Ok(Verdict::Reject(format!(
                "resonant flat {} has sum {}",
                r + 1,
                format_rational(&s)
            )));
        }
    }
    Ok(Verdict::Accept)
}

/// Accepts iff the weights sum to zero and every resonant flat has positive sum.
pub fn verify_delta(a: &Arrangement, rf: &ResonantFlatSet, delta: &DeltaCertificate) -> Result<Verdict> {
    verify_delta_matrix(&IncidenceMatrix::from_resonant(a, rf)?, delta)
}

/// Accepts iff lambda is nonnegative, not identically zero, and M^T lambda is constant.
pub fn verify_lambda(m: &IncidenceMatrix, lambda: &[Rational]) -> Result<Verdict> {
    if lambda.len() != m.rows() {
        return Err(Error::IndexMismatch {
            expected: m.rows(),
            got: lambda.len(),
        });
    }
    if let Some(i) = lambda.iter().position(Signed::is_negative) {
        return Ok(Verdict::Reject(format!("entry {} is negative", i + 1)));
    }
    if lambda.iter().all(Zero::is_zero) {
        return Ok(Verdict::Reject("identically zero".into()));
    }
    let sums = m.column_sums(lambda);
    if let Some(h) = sums.iter().position(|s| s != &sums[0]) {
        return Ok(Verdict::Reject(format!(
            "hyperplane sums differ: {} at column 1, {} at column {}",
            format_rational(&sums[0]),
            format_rational(&sums[h]),
            h + 1
        )));
    }
    Ok(Verdict::Accept)
}

/// delta(H) = 1 - |A| and delta(H') = 1 elsewhere.
pub fn delta_for_hyperplane(a: &Arrangement, h: usize) -> Result<DeltaCertificate> {
    a.check_index(h)?;
    if a.len() < 2 {
        return Err(Error::Lp("needs at least two hyperplanes".into()));
    }
    let n = a.len() as i64;
    let values = (0..a.len())
        .map(|i| Rational::from_integer(BigInt::from(if i == h { 1 - n } else { 1 })))
        .collect();
    Ok(DeltaCertificate { values })
}

/// Whether the entries have greatest common divisor one.
pub fn is_primitive(values: &[BigInt]) -> bool {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v)).is_one()
}
