//! Dense matrices over an exact scalar, with fraction-free elimination.
//!
//! Rank and determinant use the Bareiss scheme: every intermediate entry is
//! a minor of the input, so the divisions are exact over any integral domain
//! (`BigInt` for boundary matrices, `BigRational` for the l.s.o.p.
//! specialization) and entry growth stays polynomial. The scalar is generic
//! via the [`Scalar`] alias trait; the crate root fixes the two concrete
//! instantiations [`crate::IntMatrix`] and [`crate::RatMatrix`].

use num_traits::{One, Zero};
use std::ops::{Div, Mul, Neg, Sub};

/// Everything fraction-free elimination needs from a scalar. Division is
/// only ever invoked on exact quotients.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(r, k).clone() * other.get(k, c).clone()
            })
        })
    }

    /// Rank by fraction-free elimination with full pivoting.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<T>> = (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        let mut prev = T::one();
        let steps = self.rows.min(self.cols);
        for step in 0..steps {
            let pivot = (step..self.rows)
                .flat_map(|i| (step..self.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero());
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return step,
            };
            a.swap(step, pi);
            if pj != step {
                for row in &mut a {
                    row.swap(step, pj);
                }
            }
            for i in step + 1..self.rows {
                for j in step + 1..self.cols {
                    let num = a[step][step].clone() * a[i][j].clone()
                        - a[i][step].clone() * a[step][j].clone();
                    a[i][j] = num / prev.clone();
                }
                a[i][step] = T::zero();
            }
            prev = a[step][step].clone();
        }
        steps
    }

    /// Determinant by fraction-free elimination; requires a square matrix.
    /// The empty matrix has determinant one.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a: Vec<Vec<T>> = (0..n)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            let pivot = (k..n).find(|&i| !a[i][k].is_zero());
            let pi = match pivot {
                Some(p) => p,
                None => return T::zero(),
            };
            if pi != k {
                a.swap(k, pi);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = num / prev.clone();
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    pub fn is_singular(&self) -> bool {
        self.determinant().is_zero()
    }
}
