//! Discrete-time quantum walk on the 2^n-cycle as quantum circuits.
//!
//! [`walks`] builds the circuits, [`statevec`] simulates them, [`oracle`]
//! evolves the walk directly on amplitude arrays for cross-checking, and
//! [`metrics`] and [`noise`] supply the figures of merit and the noisy
//! sampling used to compare schemes.

pub mod circuit;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod noise;
pub mod oracle;
pub mod statevec;
pub mod walks;

pub use circuit::{Circuit, Control, Gate, MetricsReport};
pub use error::{Error, Result};
pub use metrics::{closed_form_metrics, hellinger, renyi2, EntropyReport, ProbDist};
pub use noise::{run_noisy, NoiseModel};
pub use statevec::{PurityReport, StateVector};
pub use walks::{build_walk, Scheme, WalkConfig};
