use std::fmt;

use super::PolyMatrix;
use crate::error::{dim_err, Error, Result};
use crate::polyalg::RatFunc;

/// Matrix over the field of rational functions `Q(s)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl RatMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_poly(p: &PolyMatrix) -> Self {
        RatMatrix::from_fn(p.rows(), p.cols(), |i, j| RatFunc::from(p.get(i, j).clone()))
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_fn(n, n, |i, j| if i == j { RatFunc::one() } else { RatFunc::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFunc> {
        self.data.iter()
    }

    pub fn checked_mul(&self, rhs: &RatMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        Ok(RatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(RatFunc::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        }))
    }

    pub fn checked_add(&self, rhs: &RatMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return dim_err("rational matrix sum shapes differ");
        }
        Ok(RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    /// Entries back as polynomials when every denominator is 1.
    pub fn to_poly(&self) -> Option<PolyMatrix> {
        let data = self
            .data
            .iter()
            .map(|f| f.as_poly().cloned())
            .collect::<Option<Vec<_>>>()?;
        PolyMatrix::new(self.rows, self.cols, data).ok()
    }

    pub fn is_proper(&self) -> bool {
        self.data.iter().all(RatFunc::is_proper)
    }

    /// Rank by Gaussian elimination over `Q(s)`.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<RatFunc>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().expect("nonzero pivot");
            let (top, below) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in below.iter_mut().filter(|row| !row[col].is_zero()) {
                let f = &row[col] * &inv;
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = &*x - &(&f * p);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse over `Q(s)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect())
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::NotInvertible)?;
            a.swap(col, p);
            inv.swap(col, p);
            let piv = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &piv;
                inv[col][j] = &inv[col][j] * &piv;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[i][j] = &a[i][j] - &t;
                    let t = &f * &inv[col][j];
                    inv[i][j] = &inv[i][j] - &t;
                }
            }
        }
        Ok(RatMatrix {
            rows: n,
            cols: n,
            data: inv.into_iter().flatten().collect(),
        })
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

/// Exact inverse of a square polynomial matrix over `Q(s)`.
pub fn invert_ratmatrix(p: &PolyMatrix) -> Result<RatMatrix> {
    p.to_ratmatrix().inverse()
}

/// Whether every entry of `P^-1 Q` is a proper rational function.
pub fn is_proper(p: &PolyMatrix, q: &PolyMatrix) -> Result<bool> {
    let inv = invert_ratmatrix(p)?;
    Ok(inv.checked_mul(&q.to_ratmatrix())?.is_proper())
}
