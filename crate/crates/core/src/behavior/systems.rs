use super::kernel::{KernelRep, SignalBlock};
use super::latent::{eliminate_latent, LatentRep};
use crate::error::{dim_err, Error, Result};
use crate::polyalg::Poly;
use crate::polymatrix::{invert_ratmatrix, is_proper, PolyMatrix, RatMatrix};

/// `x' = A x + B u`, `y = C x + D u` with constant rational matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    a: PolyMatrix,
    b: PolyMatrix,
    c: PolyMatrix,
    d: PolyMatrix,
    input: SignalBlock,
    output: SignalBlock,
}

impl StateSpace {
    /// Validates shapes (`A` n×n, `B` n×m, `C` p×n, `D` p×m) and that every
    /// entry is constant. Signals default to `u` and `y`.
    pub fn new(a: PolyMatrix, b: PolyMatrix, c: PolyMatrix, d: PolyMatrix) -> Result<Self> {
        let n = a.rows();
        let (m, p) = (d.cols(), d.rows());
        if a.cols() != n {
            return dim_err(format!("A must be square, got {}x{}", a.rows(), a.cols()));
        }
        if b.shape() != (n, m) {
            return dim_err(format!("B must be {n}x{m}, got {}x{}", b.rows(), b.cols()));
        }
        if c.shape() != (p, n) {
            return dim_err(format!("C must be {p}x{n}, got {}x{}", c.rows(), c.cols()));
        }
        for (name, mat) in [("A", &a), ("B", &b), ("C", &c), ("D", &d)] {
            if mat.entries().any(|e| !e.is_constant()) {
                return dim_err(format!("state-space matrix {name} must have constant entries"));
            }
        }
        Ok(StateSpace {
            a,
            b,
            c,
            d,
            input: SignalBlock::new("u", m),
            output: SignalBlock::new("y", p),
        })
    }

    pub fn with_signal_names(mut self, input: &str, output: &str) -> Self {
        self.input.name = input.into();
        self.output.name = output.into();
        self
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }
    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }
    pub fn c(&self) -> &PolyMatrix {
        &self.c
    }
    pub fn d(&self) -> &PolyMatrix {
        &self.d
    }

    pub fn states(&self) -> usize {
        self.a.rows()
    }
    pub fn inputs(&self) -> usize {
        self.input.dim
    }
    pub fn outputs(&self) -> usize {
        self.output.dim
    }
    pub fn input(&self) -> &SignalBlock {
        &self.input
    }
    pub fn output(&self) -> &SignalBlock {
        &self.output
    }

    /// The state as latent variable:
    /// `[B 0; -D I] (u, y) = [sI - A; C] x`.
    pub fn to_latent(&self) -> LatentRep {
        let (n, m, p) = (self.states(), self.inputs(), self.outputs());
        let si_minus_a = &PolyMatrix::identity(n).scale(&Poly::s()) - &self.a;
        let manifest = PolyMatrix::block(&[
            vec![&self.b, &PolyMatrix::zeros(n, p)],
            vec![&-&self.d, &PolyMatrix::identity(p)],
        ])
        .expect("block shapes follow from validated dimensions");
        let latent = si_minus_a.vstack(&self.c).expect("same column count");
        debug_assert_eq!(manifest.cols(), m + p);
        LatentRep::new(manifest, latent, vec![self.input.clone(), self.output.clone()])
            .expect("validated dimensions")
    }

    /// Transfer matrix `C (sI - A)^-1 B + D`.
    pub fn transfer_matrix(&self) -> RatMatrix {
        let n = self.states();
        let si_minus_a = &PolyMatrix::identity(n).scale(&Poly::s()) - &self.a;
        let resolvent = invert_ratmatrix(&si_minus_a).expect("sI - A has monic determinant");
        let cb = self
            .c
            .to_ratmatrix()
            .checked_mul(&resolvent)
            .and_then(|x| x.checked_mul(&self.b.to_ratmatrix()))
            .expect("validated dimensions");
        cb.checked_add(&self.d.to_ratmatrix()).expect("validated dimensions")
    }
}

/// `P(d/dt) y = Q(d/dt) u` with `P` square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IoSystem {
    p: PolyMatrix,
    q: PolyMatrix,
    input: SignalBlock,
    output: SignalBlock,
}

impl IoSystem {
    pub fn new(p: PolyMatrix, q: PolyMatrix) -> Result<Self> {
        if !p.is_square() {
            return Err(Error::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        if q.rows() != p.rows() {
            return dim_err(format!("Q has {} rows, P has {}", q.rows(), p.rows()));
        }
        let (m, rows) = (q.cols(), p.rows());
        Ok(IoSystem {
            p,
            q,
            input: SignalBlock::new("u", m),
            output: SignalBlock::new("y", rows),
        })
    }

    pub fn with_signal_names(mut self, input: &str, output: &str) -> Self {
        self.input.name = input.into();
        self.output.name = output.into();
        self
    }

    pub fn p(&self) -> &PolyMatrix {
        &self.p
    }
    pub fn q(&self) -> &PolyMatrix {
        &self.q
    }
    pub fn inputs(&self) -> usize {
        self.input.dim
    }
    pub fn outputs(&self) -> usize {
        self.output.dim
    }
    pub fn input(&self) -> &SignalBlock {
        &self.input
    }
    pub fn output(&self) -> &SignalBlock {
        &self.output
    }

    /// `[-Q P]` over `(u, y)`.
    pub fn to_kernel(&self) -> KernelRep {
        let r = (-&self.q).hstack(&self.p).expect("same row count");
        KernelRep::new(r, vec![self.input.clone(), self.output.clone()]).expect("validated")
    }

    /// `P^-1 Q`.
    pub fn transfer_matrix(&self) -> Result<RatMatrix> {
        invert_ratmatrix(&self.p)?.checked_mul(&self.q.to_ratmatrix())
    }
}

/// `det P != 0` and `P^-1 Q` proper.
pub fn check_io_form(s: &IoSystem) -> bool {
    is_proper(&s.p, &s.q).unwrap_or(false)
}

/// Eliminates the state; the result is a minimal kernel over `(u, y)`.
pub fn statespace_to_kernel(s: &StateSpace) -> KernelRep {
    eliminate_latent(&s.to_latent())
}

/// Eliminates the state and splits the kernel as `P y = Q u`.
pub fn statespace_to_io(s: &StateSpace) -> Result<IoSystem> {
    let k = statespace_to_kernel(s);
    let (m, p) = (s.inputs(), s.outputs());
    let r = k.matrix();
    if r.rows() != p {
        return Err(Error::Internal(format!(
            "eliminated state-space kernel has {} rows, expected {p}",
            r.rows()
        )));
    }
    let io = IoSystem::new(r.select_cols(m..m + p), -&r.select_cols(0..m))?;
    if !check_io_form(&io) {
        return Err(Error::Internal("eliminated state-space system is not in input-output form".into()));
    }
    Ok(io.with_signal_names(&s.input.name, &s.output.name))
}

/// Output behavior of `env ∧ sys`: eliminates `u` from
/// `[P; 0] y = [Q; E] u`.
pub fn interconnect(env: &KernelRep, sys: &IoSystem) -> Result<KernelRep> {
    if env.signal_dim() != sys.inputs() {
        return Err(Error::SignalMismatch {
            left: env.signal_dim(),
            right: sys.inputs(),
        });
    }
    let e = env.matrix();
    let manifest = sys.p.vstack(&PolyMatrix::zeros(e.rows(), sys.outputs()))?;
    let latent = sys.q.vstack(e)?;
    let l = LatentRep::new(manifest, latent, vec![sys.output.clone()])?;
    Ok(eliminate_latent(&l))
}
