//! Assume-guarantee contracts over input-output systems.
//!
//! A [`Contract`] pairs assumptions on the input `u` with guarantees on the
//! output `y`, both as kernel representations. Every question about
//! contracts (compatibility, implementation, refinement) reduces to one or
//! two behavior inclusions, and the resulting [`Verdict`] keeps the
//! certificate of each.

use std::fmt;

use crate::behavior::{
    behavior_included, check_io_form, eliminate_latent, interconnect, minimal_kernel, statespace_to_io,
    Inclusion, InclusionWitness, IoSystem, KernelRep, LatentRep, StateSpace,
};
use crate::error::{Error, Result};
use crate::polymatrix::PolyMatrix;

/// Pair `(assumptions, guarantees)`, stored with minimal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contract {
    assumptions: KernelRep,
    guarantees: KernelRep,
}

impl Contract {
    pub fn new(assumptions: &KernelRep, guarantees: &KernelRep) -> Self {
        Contract {
            assumptions: minimal_kernel(assumptions),
            guarantees: minimal_kernel(guarantees),
        }
    }

    pub fn assumptions(&self) -> &KernelRep {
        &self.assumptions
    }

    pub fn guarantees(&self) -> &KernelRep {
        &self.guarantees
    }

    pub fn inputs(&self) -> usize {
        self.assumptions.signal_dim()
    }

    pub fn outputs(&self) -> usize {
        self.guarantees.signal_dim()
    }
}

/// One inclusion `B(lhs) ⊂ B(rhs)` that a verdict depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: &'static str,
    pub lhs: PolyMatrix,
    pub rhs: PolyMatrix,
    pub outcome: Inclusion,
}

impl Check {
    fn run(label: &'static str, lhs: &KernelRep, rhs: &KernelRep) -> Result<Check> {
        Ok(Check {
            label,
            lhs: lhs.matrix().clone(),
            rhs: rhs.matrix().clone(),
            outcome: behavior_included(lhs, rhs)?,
        })
    }
}

/// Result of a contract check with one certificate per inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.holds())
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (&'static str, &InclusionWitness)> {
        self.checks
            .iter()
            .filter_map(|c| c.outcome.witness().map(|w| (c.label, w)))
    }

    /// Explanation for each failed inclusion.
    pub fn diagnostics(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter_map(|c| c.outcome.failure().map(|f| format!("{} inclusion fails: {f}", c.label)))
            .collect()
    }

    /// Re-checks every witness by multiplication.
    pub fn validate(&self) -> bool {
        self.checks.iter().all(|c| match &c.outcome {
            Inclusion::Included(w) => w.validates(&c.lhs, &c.rhs),
            Inclusion::NotIncluded(_) => true,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.holds() { "holds" } else { "fails" })
    }
}

/// A system offered as an implementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum System {
    Io(IoSystem),
    StateSpace(StateSpace),
}

impl From<IoSystem> for System {
    fn from(s: IoSystem) -> Self {
        System::Io(s)
    }
}

impl From<StateSpace> for System {
    fn from(s: StateSpace) -> Self {
        System::StateSpace(s)
    }
}

impl System {
    /// Input-output form of the system, rejecting anything that is not.
    pub fn to_io(&self) -> Result<IoSystem> {
        match self {
            System::Io(io) => {
                if check_io_form(io) {
                    Ok(io.clone())
                } else {
                    Err(Error::NotIoForm(
                        "P must be invertible and P^-1 Q proper".into(),
                    ))
                }
            }
            System::StateSpace(ss) => statespace_to_io(ss),
        }
    }
}

fn check_dims(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Dimension(format!("{what}: {got} signals, contract expects {want}")));
    }
    Ok(())
}

/// `B(env) ⊂ B(assumptions)`.
pub fn env_compatible(env: &KernelRep, c: &Contract) -> Result<Verdict> {
    check_dims("environment", env.signal_dim(), c.inputs())?;
    Ok(Verdict {
        checks: vec![Check::run("assumptions", env, &c.assumptions)?],
    })
}

/// Output behavior of the assumptions driving `sys`.
pub fn assumed_output(sys: &System, c: &Contract) -> Result<KernelRep> {
    let io = sys.to_io()?;
    check_dims("system inputs", io.inputs(), c.inputs())?;
    check_dims("system outputs", io.outputs(), c.outputs())?;
    interconnect(&c.assumptions, &io)
}

/// `sys` implements `c` iff the output behavior of `assumptions ∧ sys` lies
/// in the guarantees.
pub fn implements(sys: &System, c: &Contract) -> Result<Verdict> {
    let out = assumed_output(sys, c)?;
    Ok(Verdict {
        checks: vec![Check::run("guarantees", &out, &c.guarantees)?],
    })
}

/// `c1` refines `c2` iff `B(A2) ⊂ B(A1)` and `B(G1) ⊂ B(G2)`.
pub fn refines(c1: &Contract, c2: &Contract) -> Result<Verdict> {
    check_dims("refining contract inputs", c1.inputs(), c2.inputs())?;
    check_dims("refining contract outputs", c1.outputs(), c2.outputs())?;
    Ok(Verdict {
        checks: vec![
            Check::run("assumptions", &c2.assumptions, &c1.assumptions)?,
            Check::run("guarantees", &c1.guarantees, &c2.guarantees)?,
        ],
    })
}

/// Kernel of `B(a1) + B(a2)`, by eliminating `(l1, l2)` from
/// `[I I; A1 0; 0 A2] (l1, l2) = [I; 0; 0] u`.
pub fn join_assumptions(a1: &KernelRep, a2: &KernelRep) -> Result<KernelRep> {
    let m = a1.signal_dim();
    if a2.signal_dim() != m {
        return Err(Error::SignalMismatch {
            left: m,
            right: a2.signal_dim(),
        });
    }
    let (r1, r2) = (a1.matrix(), a2.matrix());
    let eye = PolyMatrix::identity(m);
    let latent = PolyMatrix::block(&[
        vec![&eye, &eye],
        vec![r1, &PolyMatrix::zeros(r1.rows(), m)],
        vec![&PolyMatrix::zeros(r2.rows(), m), r2],
    ])?;
    let manifest = eye.vstack(&PolyMatrix::zeros(r1.rows() + r2.rows(), m))?;
    let l = LatentRep::new(manifest, latent, a1.signals().to_vec())?;
    Ok(eliminate_latent(&l))
}

/// Kernel of `B(g1) ∩ B(g2)`: the stacked matrix, minimized.
pub fn meet_guarantees(g1: &KernelRep, g2: &KernelRep) -> Result<KernelRep> {
    if g1.signal_dim() != g2.signal_dim() {
        return Err(Error::SignalMismatch {
            left: g1.signal_dim(),
            right: g2.signal_dim(),
        });
    }
    let stacked = KernelRep::new(g1.matrix().vstack(g2.matrix())?, g1.signals().to_vec())?;
    Ok(minimal_kernel(&stacked))
}

/// Largest contract refining both: joined assumptions, met guarantees.
pub fn conjunction(c1: &Contract, c2: &Contract) -> Result<Contract> {
    check_dims("conjunction inputs", c2.inputs(), c1.inputs())?;
    check_dims("conjunction outputs", c2.outputs(), c1.outputs())?;
    let a = join_assumptions(&c1.assumptions, &c2.assumptions)?;
    let g = meet_guarantees(&c1.guarantees, &c2.guarantees)?;
    Ok(Contract::new(&a, &g))
}
