//! Reversible-logic toolkit: a gate catalog with quantum costs, a netlist
//! IR and text format, boolean and unitary simulation, and generators for
//! three reversible ripple adder/subtractor designs.
//!
//! The matrix layer is generic over [`Scalar`]; the aliases below fix the
//! common choices. Controlled-V products have dyadic rational entries, so
//! [`ExactUnitary`] checks decompositions with no tolerance at all.

pub mod cli;
pub mod designs;
pub mod error;
pub mod gate;
pub mod netlist;
pub mod quantum;
pub mod report;
pub mod scalar;
pub mod sim;
pub mod verify;

pub use designs::{build_full, build_half, build_ripple, mode_to_ctrl, DesignId, Mode, UnitKind};
pub use error::{Error, Result};
pub use gate::{apply_gate, gate_permutation, gate_spec, GateKind, GateSpec, Permutation};
pub use netlist::{compute_metrics, Circuit, GateInstance, InputRole, Line, Metrics, OutputRole};
pub use scalar::Scalar;

pub type Unitary64 = quantum::Unitary<f64>;
pub type Unitary32 = quantum::Unitary<f32>;
pub type ExactUnitary = quantum::Unitary<num_rational::Rational64>;
pub type Complex64 = num_complex::Complex<f64>;
pub type ExactComplex = num_complex::Complex<num_rational::Rational64>;
