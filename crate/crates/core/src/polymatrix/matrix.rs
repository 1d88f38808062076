use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::RatMatrix;
use crate::error::{dim_err, Error, Result};
use crate::polyalg::{Poly, Rational};

/// Matrix over the polynomial ring `Q[s]`, stored row-major.
///
/// Zero-sized matrices are legal in both directions; a `0 x k` kernel matrix
/// imposes no constraint on its `k` signals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Poly>) -> Result<Self> {
        if data.len() != rows * cols {
            return dim_err(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            ));
        }
        Ok(PolyMatrix { rows, cols, data })
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Poly>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return dim_err(format!("row {i} has {} entries, expected {cols}", row.len()));
            }
            data.extend(row);
        }
        Ok(PolyMatrix { rows: n, cols, data })
    }

    /// Integer-coefficient literal: each entry lists ascending coefficients.
    /// Panics on ragged input; meant for tests and examples.
    pub fn from_int_rows(rows: &[&[&[i64]]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| Poly::from_ints(c)).collect())
            .collect();
        PolyMatrix::from_rows(rows, cols).expect("rectangular literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        PolyMatrix::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    /// Lifts a constant matrix.
    pub fn from_constants(rows: usize, cols: usize, data: &[Rational]) -> Result<Self> {
        PolyMatrix::new(rows, cols, data.iter().cloned().map(Poly::constant).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Largest entry degree; `None` when every entry is zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    pub fn transpose(&self) -> Self {
        PolyMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn checked_add(&self, rhs: &PolyMatrix) -> Result<Self> {
        self.same_shape(rhs, "add")?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &PolyMatrix) -> Result<Self> {
        self.same_shape(rhs, "subtract")?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, rhs: &PolyMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        Ok(PolyMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Poly::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += &(a * rhs.get(k, j));
                }
            }
            acc
        }))
    }

    pub fn scale(&self, p: &Poly) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * p).collect(),
        }
    }

    /// `[self rhs]`
    pub fn hstack(&self, rhs: &PolyMatrix) -> Result<Self> {
        if self.rows != rhs.rows {
            return dim_err(format!("hstack of {} and {} rows", self.rows, rhs.rows));
        }
        Ok(PolyMatrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self; rhs]`
    pub fn vstack(&self, rhs: &PolyMatrix) -> Result<Self> {
        if self.cols != rhs.cols {
            return dim_err(format!("vstack of {} and {} columns", self.cols, rhs.cols));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(PolyMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block matrix from a grid of blocks. Blocks in a block-row must agree
    /// on row count, blocks in a block-column on column count.
    pub fn block(grid: &[Vec<&PolyMatrix>]) -> Result<Self> {
        let mut out: Option<PolyMatrix> = None;
        for block_row in grid {
            let mut iter = block_row.iter();
            let mut acc = match iter.next() {
                Some(first) => (*first).clone(),
                None => return dim_err("empty block row"),
            };
            for b in iter {
                acc = acc.hstack(b)?;
            }
            out = Some(match out {
                None => acc,
                Some(prev) => prev.vstack(&acc)?,
            });
        }
        out.ok_or_else(|| Error::Dimension("empty block grid".into()))
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Self {
        let n = rows.len();
        let start = rows.start;
        PolyMatrix::from_fn(n, self.cols, |i, j| self.get(start + i, j).clone())
    }

    pub fn select_cols(&self, cols: std::ops::Range<usize>) -> Self {
        let n = cols.len();
        let start = cols.start;
        PolyMatrix::from_fn(self.rows, n, |i, j| self.get(i, start + j).clone())
    }

    /// Entrywise evaluation at `s = x`.
    pub fn eval(&self, x: &Rational) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(x)).collect())
            .collect()
    }

    pub fn to_ratmatrix(&self) -> RatMatrix {
        RatMatrix::from_poly(self)
    }

    /// Determinant by fraction-free (Bareiss) elimination; all divisions are
    /// exact in `Q[s]`.
    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t
                        .exact_div(&prev)
                        .ok_or_else(|| Error::Internal("Bareiss division not exact".into()))?;
                }
                m[i][k] = Poly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank over the field of rational functions `Q(s)`.
    pub fn rank_generic(&self) -> usize {
        self.to_ratmatrix().rank()
    }

    /// Square with a nonzero constant determinant.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.is_unit())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * self.get(source, j);
            self.data[target * self.cols + j] += &delta;
        }
    }

    /// `col[target] += factor * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * self.get(i, source);
            self.data[i * self.cols + target] += &delta;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Rational) {
        debug_assert!(!c.is_zero());
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &Rational) {
        debug_assert!(!c.is_zero());
        for i in 0..self.rows {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    fn same_shape(&self, rhs: &PolyMatrix, op: &str) -> Result<()> {
        if self.shape() != rhs.shape() {
            return dim_err(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        Ok(())
    }
}

impl Mul<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    /// Panics on incompatible shapes; use [`PolyMatrix::checked_mul`] for input data.
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(rhs).expect("matrix product shapes")
    }
}

impl Add<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_add(rhs).expect("matrix sum shapes")
    }
}

impl Sub<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_sub(rhs).expect("matrix difference shapes")
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| -p).collect(),
        }
    }
}

impl fmt::Display for PolyMatrix {
    /// Text-format literal, e.g. `[[s^2 + 1, -s], [0, 1]]`. A matrix with
    /// no rows prints as `[]`, a row with no entries as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, p) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}{}", self.rows, self.cols, self)
    }
}
