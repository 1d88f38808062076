use std::fmt;

use super::kernel::KernelRep;
use crate::error::{Error, Result};
use crate::polyalg::{Poly, RatFunc};
use crate::polymatrix::{smith_form, PolyMatrix};

/// Certificate for `B(R1) ⊂ B(R2)`: a polynomial `M` with `M * R1 = R2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionWitness {
    multiplier: PolyMatrix,
}

impl InclusionWitness {
    /// Checks `m * r1 == r2` before accepting the certificate.
    pub fn new(m: PolyMatrix, r1: &PolyMatrix, r2: &PolyMatrix) -> Result<Self> {
        let w = InclusionWitness { multiplier: m };
        if w.validates(r1, r2) {
            Ok(w)
        } else {
            Err(Error::Internal("multiplier does not satisfy M * R1 = R2".into()))
        }
    }

    pub fn multiplier(&self) -> &PolyMatrix {
        &self.multiplier
    }

    /// Independent re-check of the certificate by multiplication.
    pub fn validates(&self, r1: &PolyMatrix, r2: &PolyMatrix) -> bool {
        self.multiplier.checked_mul(r1).is_ok_and(|p| &p == r2)
    }

    /// Witness of a chain `B1 ⊂ B2 ⊂ B3` from witnesses of each step.
    pub fn compose(&self, next: &InclusionWitness) -> InclusionWitness {
        InclusionWitness {
            multiplier: &next.multiplier * &self.multiplier,
        }
    }
}

/// Which condition of the Smith-form test failed. Positions refer to
/// `X = R2 * V^-1` where `R1 = U [D 0] V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InclusionFailure {
    /// `X` is nonzero in a column beyond the rank of `R1`.
    NonzeroTrailingBlock { row: usize, col: usize, entry: Poly },
    /// `X[row, col] / d_col` is not a polynomial.
    NotPolynomial { row: usize, col: usize, entry: RatFunc },
}

impl fmt::Display for InclusionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InclusionFailure::NonzeroTrailingBlock { row, col, entry } => write!(
                f,
                "condition 1 fails: R2*V1^-1*[0; I] is nonzero at ({row}, {col}), entry {entry}"
            ),
            InclusionFailure::NotPolynomial { row, col, entry } => write!(
                f,
                "condition 2 fails: R2*V1^-1*[D1^-1; 0] is not polynomial at ({row}, {col}), entry {entry}"
            ),
        }
    }
}

/// Outcome of [`behavior_included`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Included(InclusionWitness),
    NotIncluded(InclusionFailure),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Included(_))
    }

    pub fn witness(&self) -> Option<&InclusionWitness> {
        match self {
            Inclusion::Included(w) => Some(w),
            Inclusion::NotIncluded(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&InclusionFailure> {
        match self {
            Inclusion::Included(_) => None,
            Inclusion::NotIncluded(f) => Some(f),
        }
    }
}

/// Decides `B(r1) ⊂ B(r2)`.
///
/// The Smith form `R1 = U [D 0; 0 0] V` gives the minimal representation
/// `R1' = [D 0] V` (the leading rows of `U^-1 R1`). Inclusion holds iff
/// `X = R2 V^-1` vanishes beyond the rank and `X[:, j] / d_j` is polynomial
/// for each invariant factor `d_j`. The returned multiplier refers to the
/// caller's `r1`, not to the minimized matrix.
///
/// ```
/// use lincontract::behavior::{behavior_included, KernelRep};
/// use lincontract::cli::parse_matrix;
///
/// let r1 = KernelRep::over("w", parse_matrix("[[s, 0], [0, s - 1]]")?);
/// let r2 = KernelRep::over("w", parse_matrix("[[s^2, 0]]")?);
/// let w = behavior_included(&r1, &r2)?.witness().cloned().unwrap();
/// assert_eq!(&(w.multiplier() * r1.matrix()), r2.matrix());
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn behavior_included(r1: &KernelRep, r2: &KernelRep) -> Result<Inclusion> {
    if r1.signal_dim() != r2.signal_dim() {
        return Err(Error::SignalMismatch {
            left: r1.signal_dim(),
            right: r2.signal_dim(),
        });
    }
    let (a, b) = (r1.matrix(), r2.matrix());
    let sd = smith_form(a);
    let rank = sd.rank();
    let x = b * &sd.v_inv;

    for i in 0..x.rows() {
        for j in rank..x.cols() {
            if !x.get(i, j).is_zero() {
                return Ok(Inclusion::NotIncluded(InclusionFailure::NonzeroTrailingBlock {
                    row: i,
                    col: j,
                    entry: x.get(i, j).clone(),
                }));
            }
        }
    }

    let mut scaled = PolyMatrix::zeros(x.rows(), rank);
    for i in 0..x.rows() {
        for (j, d) in sd.invariant_factors.iter().enumerate() {
            match x.get(i, j).exact_div(d) {
                Some(q) => scaled.set(i, j, q),
                None => {
                    let entry = RatFunc::new(x.get(i, j).clone(), d.clone())?;
                    return Ok(Inclusion::NotIncluded(InclusionFailure::NotPolynomial {
                        row: i,
                        col: j,
                        entry,
                    }));
                }
            }
        }
    }

    let leading = sd.u_inv.select_rows(0..rank);
    let m = &scaled * &leading;
    Ok(Inclusion::Included(InclusionWitness::new(m, a, b)?))
}

/// Mutual inclusion; both directions are reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equality {
    pub forward: Inclusion,
    pub backward: Inclusion,
}

impl Equality {
    pub fn holds(&self) -> bool {
        self.forward.holds() && self.backward.holds()
    }
}

pub fn behavior_equal(r1: &KernelRep, r2: &KernelRep) -> Result<Equality> {
    Ok(Equality {
        forward: behavior_included(r1, r2)?,
        backward: behavior_included(r2, r1)?,
    })
}
