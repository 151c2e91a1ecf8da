//! Numerical toolkit for constructing, classifying, and quantifying
//! entangled states of small qubit registers.
//!
//! The crate covers, for dense state vectors and density operators on up to
//! ~10 qubits:
//!
//! - state representations and linear-algebra primitives ([`states`], [`linalg`]),
//! - bipartite Schmidt and three-qubit generalized Schmidt normal forms
//!   plus parameter-counting bounds ([`normal_form`]),
//! - SLOCC classification of three-qubit pure states, tensor-rank bounds,
//!   and separability reports for mixed states ([`classify`]),
//! - entanglement monotones: Schmidt measure, global entanglement, geometric
//!   measure, concurrence/tangle, relative entropy of entanglement,
//!   localizable entanglement ([`measures`]),
//! - entanglement witnesses with local Pauli decompositions ([`witness`]),
//! - symplectic Pauli arithmetic, stabilizer groups, and graph states
//!   ([`stabilizer`]),
//! - Ramsey frequency-estimation limits via quantum Fisher information
//!   ([`metrology`]).
//!
//! The core is `no_std` (with `alloc`); file formats and the command-line
//! front end live in the companion `qent-cli` crate.
//!
//! # Bit-ordering convention
//!
//! Parties are labeled `1..=N`. The computational basis label `b1 b2 .. bN`
//! maps to amplitude index `sum_a b_a * 2^(N-a)`, so party 1 is the most
//! significant bit. All reshaping, tracing, and measurement code goes
//! through [`bits`], which is the single authority for this convention.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bits;
pub mod classify;
pub mod linalg;
pub mod measures;
pub mod metrology;
pub mod normal_form;
pub mod rng;
pub mod stabilizer;
pub mod states;
pub mod tol;
pub mod witness;

mod error;

pub use error::Error;
pub use linalg::{CMatrix, C64};
pub use states::{DensityOperator, MeasurementRecord, PureState, Split};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
