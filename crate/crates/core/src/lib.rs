//! Simulation of the Rydberg-blockade CZ/CNOT gate between two Rb-87
//! hyperfine clock qubits.
//!
//! The coherent protocol is propagated in momentum space; incoherent
//! scattering and Rydberg decay enter as first-order density-matrix
//! increments integrated along the coherent trajectory.

// index loops mirror the tensor indices of the physics; negated float
// comparisons also reject NaN
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod angular_momentum;
pub mod atomic_physics;
pub mod beam_optics;
pub mod decoherence;
pub mod dynamics;
pub mod error;
pub mod runner;

pub use error::{Error, Result};
