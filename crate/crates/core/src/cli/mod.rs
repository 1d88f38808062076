//! Text format and command runner behind the `lincontract` binary.
//!
//! A document is a sequence of named definitions:
//!
//! ```text
//! kernel G { vars y:1  R [[s^2]] }
//! statespace S { A [[0, 1], [0, 0]] B [[1, -1], [1, -1]] C [[1, 0]] D [[1, 0]] }
//! contract C { assumptions A guarantees G }
//! ```
//!
//! Polynomials are sums of terms `c*s^k`, `c` or `s^k` with integer or
//! `p/q` coefficients; matrices are bracketed rows. Reports print matrices in
//! the same syntax so certificates can be fed back to the parser.

mod document;
mod error;
mod lexer;
mod report;
mod run;

pub use document::{load_paths, parse, parse_matrix, parse_named, parse_poly, ContractDef, Definition, Document, Entry};
pub use error::{DocError, Location};
pub use report::{CheckReport, MatrixReport, NamedMatrix, Report};
pub use run::{run, Command};
