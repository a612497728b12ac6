//! Null-point solver for closed one-dimensional nanocircuits: a tunneling
//! barrier shunted by a field-free wire, closed into a loop.
//!
//! Units are eV and nm throughout; angles are radians.

pub mod airy;
pub mod determinant;
pub mod error;
pub mod kinematics;
pub mod repro;
pub mod solver;

pub use error::{Error, Result};
pub use kinematics::{BarrierModel, CircuitSpec, Kinematics};
pub use solver::{scan_roots, solve_for_length, CoefficientSet, RootSolution, ScanOptions};
