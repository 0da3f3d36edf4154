//! Simulation of CNOT + single-qubit circuits by signed local operations.
//!
//! Every CNOT is replaced by one of three local operations carrying
//! quasi-probabilities +1, +1 and −1. Trajectories therefore stay product
//! states, and quantum output statistics are recovered either by exact
//! signed enumeration of all `3^N` operation sequences or by signed Monte
//! Carlo sampling with amplification `3^N`. A dense state-vector oracle
//! checks both.
//!
//! The numeric code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix it to `f64`.

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod quasi;
pub mod real;
pub mod verify;

pub use circuit::{parse_circuit, parse_pauli, NamedGate, Observable, Parity, Pauli, PauliString};
pub use error::{Error, Result};
pub use real::Real;

pub type Circuit = circuit::Circuit<f64>;
pub type Gate = circuit::Gate<f64>;
pub type Mat2 = linalg::Mat2<f64>;
pub type CMatrix = linalg::CMatrix<f64>;
pub type StateVector = exact::StateVector<f64>;
pub type DensityMatrix = exact::DensityMatrix<f64>;
pub type Channel = exact::Channel<f64>;
pub type ChiMatrix = exact::ChiMatrix<f64>;
pub type ProductState = quasi::ProductState<f64>;
pub type LocalOperation = quasi::LocalOperation<f64>;
pub type Enumeration = quasi::Enumeration<f64>;
pub type GhzReport = analysis::GhzReport<f64>;

pub type CircuitF32 = circuit::Circuit<f32>;
pub type StateVectorF32 = exact::StateVector<f32>;
pub type ProductStateF32 = quasi::ProductState<f32>;
