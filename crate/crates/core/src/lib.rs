//! `qdirac-core` — a small state-vector quantum simulation library built
//! on dense complex matrices.
//!
//! The crate covers qubit states and gates with their algebra (dagger,
//! Kronecker products, unitarity), single-qubit projective measurement,
//! quantum teleportation, the no-cloning check for quantum machines, the
//! Deutsch and Deutsch-Jozsa oracle algorithms, and the entangled
//! Prisoner's Dilemma with Nash/Pareto certification.
//!
//! Everything is immutable and pure: states and gates are values, and
//! even sampling takes its seed as an argument.

pub mod error;
pub mod game;
pub mod gate;
pub mod linalg;
pub mod measurement;
pub mod oracle;
pub mod protocols;
pub mod state;

pub use error::{Error, Result};
pub use gate::Gate;
pub use linalg::{Complex64, ComplexMatrix, Tolerance};
pub use state::{bell, BasisLabel, QuantumState};
