use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that zero-row matrices keep their width.
    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned());
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(&rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank over Q by fraction-free (Bareiss) elimination.
///
/// Each row is first cleared of denominators; the pivot in each column is the first
/// nonzero entry at or below the current pivot row.
pub fn rat_rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = lcm_of_denominators(row);
            row.iter()
                .map(|q| (q * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the reduced rows (nonzero ones only) and pivot columns.
pub fn rref(m: &RatMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of `{x : Mx = 0}`, one vector per free column of the reduced echelon form.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    let (reduced, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors of common length `dim`.
pub fn rank_of_vectors(vectors: &[Vec<Rational>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = RatMatrix::from_rows(vectors, dim).expect("vectors share a length");
    rat_rank(&m)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let dim = v.len();
    let mut all = basis.to_vec();
    let before = rank_of_vectors(&all, dim);
    all.push(v.to_vec());
    rank_of_vectors(&all, dim) == before
}

/// Coordinates of `v` with respect to a linearly independent `basis`, if `v` is in their span.
pub fn coordinates_in(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let dim = v.len();
    let k = basis.len();
    // Solve sum_i c_i basis_i = v: the system has `dim` equations in `k` unknowns.
    let mut rows = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut row: Vec<Rational> = basis.iter().map(|b| b[j].clone()).collect();
        row.push(v[j].clone());
        rows.push(row);
    }
    let aug = RatMatrix::from_rows(&rows, k + 1).ok()?;
    let (reduced, pivots) = rref(&aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (row, &pc) in reduced.iter().zip(&pivots) {
        c[pc] = row[k].clone();
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, rat};

    #[test]
    fn rank_examples() {
        assert_eq!(rat_rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rat_rank(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rat_rank(&RatMatrix::zeros(3, 4)), 0);
        assert_eq!(rat_rank(&RatMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn rank_of_twin_triples_forms() {
        // x, x-y, y, x-z, x+y-z
        let m = RatMatrix::from_i64(&[&[1, 0, 0], &[1, -1, 0], &[0, 1, 0], &[1, 0, -1], &[1, 1, -1]]);
        assert_eq!(rat_rank(&m), 3);
    }

    #[test]
    fn rank_handles_fractions_and_skipped_columns() {
        let m = RatMatrix::from_rows(
            &[
                vec![int(0), rat(1, 2), rat(1, 3), int(1)],
                vec![int(0), int(1), rat(2, 3), int(2)],
                vec![int(0), int(0), int(0), int(5)],
            ],
            4,
        )
        .unwrap();
        assert_eq!(rat_rank(&m), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&RatMatrix::from_i64(&[&[1, 0, 0]])).len(), 2);
        assert!(nullspace(&RatMatrix::identity(3)).is_empty());
        let ns = nullspace(&RatMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(ns.len(), 2);
        assert!(in_span(&ns, &[int(1), int(-1), int(0)]));
        for v in &ns {
            assert_eq!(dot(&[int(1), int(1), int(1)], v), int(0));
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        let c = coordinates_in(&basis, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(c, vec![int(2), int(3)]);
        assert!(coordinates_in(&basis, &[int(0), int(0), int(1)]).is_none());
    }
}
