use super::PolyMatrix;
use crate::polyalg::Poly;

/// Smith canonical form `R = U * [D 0; 0 0] * V`.
///
/// `U` and `V` are unimodular and their polynomial inverses are kept
/// alongside, since the inclusion test needs `V^-1` and `U^-1` directly.
/// `D = diag(invariant_factors)`, each factor monic and dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v: PolyMatrix,
    pub v_inv: PolyMatrix,
    pub invariant_factors: Vec<Poly>,
}

impl SmithDecomposition {
    /// Generic rank of the decomposed matrix.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The middle factor `[D 0; 0 0]` with the shape of the original matrix.
    pub fn diagonal(&self) -> PolyMatrix {
        let (rows, cols) = (self.u.rows(), self.v.rows());
        PolyMatrix::from_fn(rows, cols, |i, j| {
            if i == j && i < self.rank() {
                self.invariant_factors[i].clone()
            } else {
                Poly::zero()
            }
        })
    }

    /// `U * [D 0; 0 0] * V`, which equals the decomposed matrix.
    pub fn reconstruct(&self) -> PolyMatrix {
        &(&self.u * &self.diagonal()) * &self.v
    }
}

/// Tracks a working matrix and the unimodular transforms applied to it, so
/// that `left * original * right == work` holds after every step.
struct Reducer {
    work: PolyMatrix,
    left: PolyMatrix,
    left_inv: PolyMatrix,
    right: PolyMatrix,
    right_inv: PolyMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.work.swap_rows(a, b);
        self.left.swap_rows(a, b);
        self.left_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.work.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.right_inv.swap_rows(a, b);
    }

    /// `row[target] += factor * row[source]`
    fn add_row(&mut self, target: usize, source: usize, factor: &Poly) {
        self.work.add_row_multiple(target, source, factor);
        self.left.add_row_multiple(target, source, factor);
        self.left_inv.add_col_multiple(source, target, &-factor);
    }

    /// `col[target] += factor * col[source]`
    fn add_col(&mut self, target: usize, source: usize, factor: &Poly) {
        self.work.add_col_multiple(target, source, factor);
        self.right.add_col_multiple(target, source, factor);
        self.right_inv.add_row_multiple(source, target, &-factor);
    }

    fn make_monic(&mut self, t: usize) {
        let lc = self.work.get(t, t).leading().expect("nonzero pivot").clone();
        let inv = lc.recip();
        self.work.scale_row(t, &inv);
        self.left.scale_row(t, &inv);
        self.left_inv.scale_col(t, &lc);
    }

    /// Minimal-degree nonzero entry of the trailing submatrix, lowest
    /// (row, col) first on ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.work.rows() {
            for j in t..self.work.cols() {
                if let Some(d) = self.work.get(i, j).degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears row and column `t` beyond the pivot. Returns false when a
    /// nonzero remainder appeared, which means a lower-degree pivot exists.
    fn clear_cross(&mut self, t: usize) -> bool {
        let pivot = self.work.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..self.work.rows() {
            let (q, r) = self.work.get(i, t).div_rem(&pivot).expect("nonzero pivot");
            self.add_row(i, t, &-q);
            clean &= r.is_zero();
        }
        for j in t + 1..self.work.cols() {
            let (q, r) = self.work.get(t, j).div_rem(&pivot).expect("nonzero pivot");
            self.add_col(j, t, &-q);
            clean &= r.is_zero();
        }
        clean
    }

    /// Row of the trailing block holding an entry the pivot does not divide.
    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = self.work.get(t, t);
        (t + 1..self.work.rows()).find(|&i| {
            (t + 1..self.work.cols()).any(|j| !pivot.divides(self.work.get(i, j)))
        })
    }
}

/// Computes the Smith canonical form by elementary row and column operations
/// over `Q[s]`.
///
/// The pivot at each stage is a minimal-degree nonzero entry. Row and column
/// `t` are reduced by Euclidean division until they vanish; if the pivot then
/// fails to divide some remaining entry, that entry's row is added to row `t`
/// and reduction resumes with a strictly smaller pivot degree.
///
/// ```
/// use lincontract::cli::parse_matrix;
/// use lincontract::polymatrix::smith_form;
///
/// let r = parse_matrix("[[s^2, s], [s, 1]]")?;
/// let sd = smith_form(&r);
/// assert_eq!(sd.rank(), 1);
/// assert_eq!(sd.reconstruct(), r);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn smith_form(r: &PolyMatrix) -> SmithDecomposition {
    let (rows, cols) = r.shape();
    let mut red = Reducer {
        work: r.clone(),
        left: PolyMatrix::identity(rows),
        left_inv: PolyMatrix::identity(rows),
        right: PolyMatrix::identity(cols),
        right_inv: PolyMatrix::identity(cols),
    };
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = red.pivot(t) {
            red.swap_rows(t, pi);
            red.swap_cols(t, pj);
            if !red.clear_cross(t) {
                continue;
            }
            match red.non_divisible_row(t) {
                Some(i) => red.add_row(t, i, &Poly::one()),
                None => break,
            }
        }
        if red.work.get(t, t).is_zero() {
            break;
        }
        red.make_monic(t);
        factors.push(red.work.get(t, t).clone());
    }
    SmithDecomposition {
        u: red.left_inv,
        u_inv: red.left,
        v: red.right_inv,
        v_inv: red.right,
        invariant_factors: factors,
    }
}
