//! Tooling for classical (Z-type) stabilizer codes.
//!
//! The crate builds codes and their canonical isometries from Z-only
//! stabilizers, extracts logical actions of physical circuits, tracks how
//! single-qubit Z operators spread through layered circuits, and searches
//! small circuit spaces for logical gates that leave the algebra of logical
//! Z products.
//!
//! ```
//! use cgate_core::code::StabilizerCode;
//!
//! let rep3 = StabilizerCode::from_stabilizers(&["ZZI", "IZZ"]).unwrap();
//! assert_eq!((rep3.n(), rep3.k(), rep3.d()), (3, 1, 3));
//! assert_eq!(rep3.logical_x_physical(0).unwrap().to_string(), "XXX");
//! ```

pub mod circuit;
pub mod code;
pub mod dense;
pub mod error;
pub mod f2linalg;
pub mod logical;
pub mod pauli;
pub mod verifier;

pub use circuit::{Circuit, CodeblockLayout, Gate, GateKind, SpreadResult};
pub use code::StabilizerCode;
pub use dense::DenseOperator;
pub use error::{Error, Result};
pub use f2linalg::{BitVector, F2Matrix};
pub use logical::{LogicalAction, TheoremVerdict};
pub use pauli::{Pauli, PauliString, PauliSum};
pub use verifier::{EnumerationSpec, SearchSummary};

/// Tolerance used wherever a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-9;
