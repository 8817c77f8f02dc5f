//! Phase one of the exact simplex method with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// Outcome of minimizing the sum of artificial variables for `A x = b, x >= 0`.
#[derive(Clone, Debug)]
pub(crate) struct PhaseOne {
    /// Basic solution over the original variables.
    pub x: Vec<Rational>,
    /// Optimal dual values, one per constraint; `y . b` equals the optimal infeasibility.
    pub y: Vec<Rational>,
    pub infeasibility: Rational,
}

impl PhaseOne {
    pub fn feasible(&self) -> bool {
        self.infeasibility.is_zero()
    }
}

/// Requires `b >= 0`. Columns `0..n` are original, `n..n+m` artificial.
pub(crate) fn phase_one(a: &[Vec<Rational>], b: &[Rational]) -> PhaseOne {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert!(b.iter().all(|v| !v.is_negative()), "phase one needs b >= 0");
    let width = n + m;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let cost = |k: usize| if k >= n { Rational::one() } else { Rational::zero() };
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs d_k = c_k - sum_i c_{B_i} t[i][k]; last entry tracks -objective.
    let mut d: Vec<Rational> = (0..=width)
        .map(|k| {
            let base = if k < width { cost(k) } else { Rational::zero() };
            t.iter().fold(base, |acc, row| acc - &row[k])
        })
        .collect();
    while let Some(enter) = (0..width).find(|&k| d[k].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((j, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*j]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave.expect("phase one is bounded below by zero");
        let pivot = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &pivot;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        let f = d[enter].clone();
        for (v, p) in d.iter_mut().zip(&prow) {
            *v -= &f * p;
        }
        basis[r] = enter;
    }
    let mut x = vec![Rational::zero(); n];
    let mut infeasibility = Rational::zero();
    for (i, &k) in basis.iter().enumerate() {
        if k < n {
            x[k] = t[i][width].clone();
        } else {
            infeasibility += &t[i][width];
        }
    }
    let y = (0..m).map(|i| Rational::one() - &d[n + i]).collect();
    PhaseOne { x, y, infeasibility }
}
