use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("gate matrix is not unitary (‖U†U − I‖∞ = {defect:.3e})")]
    NonUnitary { defect: f64 },

    #[error("gate {index} has repeated qubit {qubit}")]
    RepeatedQubit { index: usize, qubit: usize },

    #[error("gate {index} is a multi-controlled X with {controls} controls; lower it or use a cost model")]
    UnloweredMultiControl { index: usize, controls: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
