//! The guide in `book/`, compiled so that `cargo test --doc` runs every
//! snippet. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/smith.md")]
pub mod smith {}
#[doc = include_str!("../../../book/src/behaviors.md")]
pub mod behaviors {}
#[doc = include_str!("../../../book/src/systems.md")]
pub mod systems {}
#[doc = include_str!("../../../book/src/contracts.md")]
pub mod contracts {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/quarter-car.md")]
pub mod quarter_car {}
