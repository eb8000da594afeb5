//! Simulation and compilation core for small cloud-style quantum experiments.
//!
//! Everything here is `no_std` + `alloc`: the crate holds the circuit IR, the
//! dense state-vector engine, Pauli/stabilizer algebra, graph-state local
//! complementation, a router for directional star-topology devices, Pauli
//! frame tracking, and the four experiment protocols built on top of them.
//! File formats, reports and the command line live in the `cloudqc` crate.
//!
//! Conventions used throughout:
//!
//! - Qubits are labelled `1..=n` ([`QubitId`]).
//! - Bitstrings print qubit 1 leftmost; in amplitude indices qubit 1 is the
//!   most significant bit.
//! - Equivalence checks between unitaries ignore a global phase.

#![no_std]

extern crate alloc;

pub mod circuit;
pub mod error;
pub mod experiments;
pub mod frame;
pub mod graph;
mod math;
pub mod pauli;
pub mod rng;
pub mod routing;
pub mod sampling;
pub mod statevector;
pub mod syndrome;
pub mod unitary;

pub use circuit::{Basis, Circuit, DeviceModel, Gate, QubitId, SingleQubitGate, ValidationReport};
pub use error::{Error, Result};
pub use frame::{MeasurementPattern, PauliFrame, PauliLabel};
pub use graph::GraphAdjacency;
pub use pauli::{Pauli, PauliString, Phase};
pub use routing::QubitPermutation;
pub use sampling::{Bitstring, NoiseModel, RngSeed, ShotHistogram};
pub use statevector::StateVector;
pub use syndrome::{Parity, SyndromeCheck};
pub use unitary::UnitaryMatrix;

pub use num_complex::Complex64;
