//! System representations and behavior inclusion.
//!
//! Every representation here reduces to a [`KernelRep`]. Latent variables
//! (including the state of a [`StateSpace`] system) are removed by
//! [`eliminate_latent`], and [`behavior_included`] returns a checkable
//! [`InclusionWitness`] whenever one behavior lies inside another.

mod inclusion;
mod kernel;
mod latent;
mod systems;

pub use inclusion::{behavior_equal, behavior_included, Equality, Inclusion, InclusionFailure, InclusionWitness};
pub use kernel::{exp_membership, is_autonomous, minimal_kernel, KernelRep, SignalBlock};
pub use latent::{eliminate_latent, LatentRep};
pub use systems::{check_io_form, interconnect, statespace_to_io, statespace_to_kernel, IoSystem, StateSpace};
