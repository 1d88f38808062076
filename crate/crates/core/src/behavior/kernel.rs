use std::fmt;

use num_traits::Zero;

use crate::error::{dim_err, Result};
use crate::polyalg::Rational;
use crate::polymatrix::{smith_form, PolyMatrix};

/// A named block of signals, e.g. `u:2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignalBlock {
    pub name: String,
    pub dim: usize,
}

impl SignalBlock {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        SignalBlock {
            name: name.into(),
            dim,
        }
    }
}

impl fmt::Display for SignalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.dim)
    }
}

pub(crate) fn total_dim(signals: &[SignalBlock]) -> usize {
    signals.iter().map(|b| b.dim).sum()
}

/// Kernel representation `R(d/dt) w = 0`.
///
/// A matrix with zero rows is the full signal space; `R = I` is the zero
/// behavior. Equality compares matrix and signals; the minimality flag is a
/// cached fact and does not take part.
#[derive(Clone, Debug)]
pub struct KernelRep {
    matrix: PolyMatrix,
    signals: Vec<SignalBlock>,
    minimal: bool,
}

impl PartialEq for KernelRep {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.signals == other.signals
    }
}

impl Eq for KernelRep {}

impl KernelRep {
    pub fn new(matrix: PolyMatrix, signals: Vec<SignalBlock>) -> Result<Self> {
        let k = total_dim(&signals);
        if matrix.cols() != k {
            return dim_err(format!(
                "kernel matrix has {} columns but the signals have dimension {k}",
                matrix.cols()
            ));
        }
        Ok(KernelRep {
            matrix,
            signals,
            minimal: false,
        })
    }

    /// Kernel over a single signal block named `name` sized by the matrix.
    pub fn over(name: &str, matrix: PolyMatrix) -> Self {
        let dim = matrix.cols();
        KernelRep {
            matrix,
            signals: vec![SignalBlock::new(name, dim)],
            minimal: false,
        }
    }

    /// The unconstrained behavior on `signals`.
    pub fn full(signals: Vec<SignalBlock>) -> Self {
        let k = total_dim(&signals);
        KernelRep {
            matrix: PolyMatrix::zeros(0, k),
            signals,
            minimal: true,
        }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn signals(&self) -> &[SignalBlock] {
        &self.signals
    }

    pub fn signal_dim(&self) -> usize {
        self.matrix.cols()
    }

    /// Set when the matrix is known to have full generic row rank.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn with_signals(mut self, signals: Vec<SignalBlock>) -> Result<Self> {
        if total_dim(&signals) != self.signal_dim() {
            return dim_err("relabeling must keep the signal dimension");
        }
        self.signals = signals;
        Ok(self)
    }

    /// Same behavior, full generic row rank. See [`minimal_kernel`].
    pub fn minimal(&self) -> KernelRep {
        minimal_kernel(self)
    }
}

/// Full-row-rank representation of the same behavior.
///
/// With `R = U [D 0; 0 0] V` the result is the first `rank` rows of
/// `U^-1 R = [D 0; 0 0] V`; dropping zero rows and a unimodular left factor
/// leaves the kernel unchanged.
pub fn minimal_kernel(k: &KernelRep) -> KernelRep {
    if k.minimal {
        return k.clone();
    }
    let sd = smith_form(&k.matrix);
    let reduced = &sd.u_inv * &k.matrix;
    KernelRep {
        matrix: reduced.select_rows(0..sd.rank()),
        signals: k.signals.clone(),
        minimal: true,
    }
}

/// No free signals: a minimal representation is square (hence has nonzero
/// determinant).
pub fn is_autonomous(k: &KernelRep) -> bool {
    let m = minimal_kernel(k);
    m.matrix.rows() == m.matrix.cols()
}

/// Whether `w(t) = w0 * exp(lambda * t)` lies in the behavior, i.e.
/// `R(lambda) w0 = 0`.
pub fn exp_membership(k: &KernelRep, lambda: &Rational, w0: &[Rational]) -> Result<bool> {
    if w0.len() != k.signal_dim() {
        return dim_err(format!(
            "amplitude has {} entries, signal dimension is {}",
            w0.len(),
            k.signal_dim()
        ));
    }
    let at = k.matrix.eval(lambda);
    Ok(at.iter().all(|row| {
        row.iter()
            .zip(w0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            .is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Poly;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn minimal_drops_dependent_rows() {
        let k = KernelRep::over("w", PolyMatrix::from_int_rows(&[&[&[0, 1], &[]], &[&[0, 0, 1], &[]]]));
        let m = k.minimal();
        assert_eq!(m.matrix().rows(), 1);
        assert_eq!(m.matrix().rank_generic(), 1);
        assert!(m.is_minimal());
        let z = KernelRep::over("w", PolyMatrix::zeros(3, 2)).minimal();
        assert_eq!(z.matrix().shape(), (0, 2));
    }

    #[test]
    fn autonomy() {
        assert!(is_autonomous(&KernelRep::over("w", PolyMatrix::from_int_rows(&[&[&[0, 1]]]))));
        assert!(!is_autonomous(&KernelRep::full(vec![SignalBlock::new("w", 1)])));
        assert!(!is_autonomous(&KernelRep::over(
            "w",
            PolyMatrix::from_int_rows(&[&[&[0, 1], &[-1]]])
        )));
    }

    #[test]
    fn exponential_probe() {
        let ds = KernelRep::over("w", PolyMatrix::from_int_rows(&[&[&[0, 1]]]));
        assert!(exp_membership(&ds, &int(0), &[int(1)]).unwrap());
        assert!(!exp_membership(&ds, &int(1), &[int(1)]).unwrap());
        let shifted = KernelRep::over("w", PolyMatrix::new(1, 1, vec![Poly::from_ints(&[-1, 1])]).unwrap());
        assert!(exp_membership(&shifted, &int(1), &[int(1)]).unwrap());
        assert!(exp_membership(&ds, &int(1), &[int(1), int(2)]).is_err());
    }

    #[test]
    fn construction_checks_dimensions() {
        assert!(KernelRep::new(PolyMatrix::zeros(1, 2), vec![SignalBlock::new("u", 3)]).is_err());
        let k = KernelRep::new(
            PolyMatrix::zeros(1, 3),
            vec![SignalBlock::new("u", 2), SignalBlock::new("y", 1)],
        )
        .unwrap();
        assert_eq!(k.signal_dim(), 3);
    }
}
