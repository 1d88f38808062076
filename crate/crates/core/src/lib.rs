//! Exact verification of assume-guarantee contracts for linear systems.
//!
//! Systems are described in the behavioral framework: a behavior is the set
//! of smooth trajectories `w` solving `R(d/dt) w = 0` for a polynomial matrix
//! `R(s)`. Inclusion of behaviors is decided through the Smith canonical form
//! of `R`, and every positive answer carries a polynomial multiplier `M(s)`
//! with `R2 = M * R1` that can be re-checked by plain multiplication.
//!
//! The crate is layered bottom-up:
//!
//! * [`polyalg`]: rationals, polynomials and rational functions;
//! * [`polymatrix`]: polynomial matrices and the Smith form;
//! * [`behavior`]: kernel, latent, state-space and input-output
//!   representations, elimination and inclusion;
//! * [`contracts`]: compatibility, implementation, refinement and
//!   conjunction;
//! * [`cli`]: the text format and the command runner behind the
//!   `lincontract` binary.
//!
//! ```
//! use lincontract::behavior::{IoSystem, KernelRep};
//! use lincontract::cli::parse_matrix;
//! use lincontract::contracts::{implements, Contract, System};
//!
//! // assume constant inputs, guarantee outputs with zero acceleration
//! let a = KernelRep::over("u", parse_matrix("[[s]]")?);
//! let g = KernelRep::over("y", parse_matrix("[[s^2]]")?);
//! let contract = Contract::new(&a, &g);
//!
//! // the integrator y' = u
//! let sys = System::from(IoSystem::new(parse_matrix("[[s]]")?, parse_matrix("[[1]]")?)?);
//! let verdict = implements(&sys, &contract)?;
//! assert!(verdict.holds() && verdict.validate());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod behavior;
pub mod cli;
pub mod contracts;
mod error;
pub mod polyalg;
pub mod polymatrix;

pub use error::{Error, Result};
