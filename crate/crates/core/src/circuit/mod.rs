//! Gate IR and circuits.
//!
//! Qubit `k` of an `n`-qubit circuit is bit `k` of the basis-state index, so
//! qubit 0 is the least significant. Walk circuits put the position register
//! on qubits `0..n` and the coin on qubit `n`.

mod json;
mod layout;
mod native;
mod schedule;

pub use json::{CircuitDocument, GateRecord};
pub use layout::{validate_layout, CouplingMap, LayoutViolation};
pub use native::{lower_multi_controlled, rewrite_to_native};
pub use schedule::{depth, gate_counts, MetricsReport};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};

/// A control line of a (multi-)controlled X. `on_one == false` is the
/// open-circle control that fires on |0⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub on_one: bool,
}

impl Control {
    pub fn on_one(qubit: usize) -> Self {
        Control { qubit, on_one: true }
    }

    pub fn on_zero(qubit: usize) -> Self {
        Control { qubit, on_one: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    SqrtX(usize),
    Rz { target: usize, angle: f64 },
    /// diag(1, e^{iφ}).
    Phase { target: usize, angle: f64 },
    Unitary { target: usize, matrix: Mat2 },
    CX { control: usize, target: usize },
    ControlledPhase { control: usize, target: usize, angle: f64 },
    Mcx { controls: Vec<Control>, target: usize },
    /// Scheduling fence: nothing after it on these qubits starts before
    /// everything before it on these qubits has finished. No-op on the state.
    Barrier(Vec<usize>),
}

impl Gate {
    /// All qubits the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X(q) | Gate::H(q) | Gate::SqrtX(q) => vec![*q],
            Gate::Rz { target, .. } | Gate::Phase { target, .. } | Gate::Unitary { target, .. } => {
                vec![*target]
            }
            Gate::CX { control, target } | Gate::ControlledPhase { control, target, .. } => {
                vec![*control, *target]
            }
            Gate::Mcx { controls, target } => {
                let mut qs: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                qs.push(*target);
                qs
            }
            Gate::Barrier(qs) => qs.clone(),
        }
    }

    pub fn is_barrier(&self) -> bool {
        matches!(self, Gate::Barrier(_))
    }

    /// The 2×2 matrix of a single-qubit gate.
    pub fn matrix_1q(&self) -> Option<Mat2> {
        match self {
            Gate::X(_) => Some(linalg::pauli_x()),
            Gate::H(_) => Some(linalg::hadamard()),
            Gate::SqrtX(_) => Some(linalg::sqrt_x()),
            Gate::Rz { angle, .. } => Some(linalg::rz(*angle)),
            Gate::Phase { angle, .. } => Some(linalg::phase(*angle)),
            Gate::Unitary { matrix, .. } => Some(*matrix),
            Gate::Mcx { controls, .. } if controls.is_empty() => Some(linalg::pauli_x()),
            _ => None,
        }
    }

    pub fn adjoint(&self) -> Gate {
        match self {
            Gate::SqrtX(q) => Gate::Unitary { target: *q, matrix: linalg::adjoint(&linalg::sqrt_x()) },
            Gate::Rz { target, angle } => Gate::Rz { target: *target, angle: -angle },
            Gate::Phase { target, angle } => Gate::Phase { target: *target, angle: -angle },
            Gate::Unitary { target, matrix } => Gate::Unitary { target: *target, matrix: linalg::adjoint(matrix) },
            Gate::ControlledPhase { control, target, angle } => Gate::ControlledPhase {
                control: *control,
                target: *target,
                angle: -angle,
            },
            other => other.clone(),
        }
    }

    /// Short lowercase name, also the JSON `kind`.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::H(_) => "h",
            Gate::SqrtX(_) => "sx",
            Gate::Rz { .. } => "rz",
            Gate::Phase { .. } => "p",
            Gate::Unitary { .. } => "u",
            Gate::CX { .. } => "cx",
            Gate::ControlledPhase { .. } => "cp",
            Gate::Mcx { .. } => "mcx",
            Gate::Barrier(_) => "barrier",
        }
    }

    fn check(&self, index: usize, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
            if qs[..i].contains(&q) {
                return Err(Error::RepeatedQubit { index, qubit: q });
            }
        }
        if let Gate::Unitary { matrix, .. } = self {
            let defect = linalg::unitarity_defect(matrix);
            if defect > linalg::UNITARY_TOL {
                return Err(Error::NonUnitary { defect });
            }
        }
        Ok(())
    }
}

/// Ordered gate list on a fixed number of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    pub label: String,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new(), label: String::new() }
    }

    pub fn with_label(n_qubits: usize, label: impl Into<String>) -> Self {
        Circuit { n_qubits, gates: Vec::new(), label: label.into() }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking qubit indices and unitarity.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.check(self.gates.len(), self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Infallible push for builders whose indices are correct by construction.
    pub(crate) fn emit(&mut self, gate: Gate) -> &mut Self {
        debug_assert!(gate.check(self.gates.len(), self.n_qubits).is_ok(), "{gate:?}");
        self.gates.push(gate);
        self
    }

    /// Appends `other` with its qubit `i` mapped to `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<&mut Self> {
        if map.len() != other.n_qubits {
            return Err(Error::DimensionMismatch { left: map.len(), right: other.n_qubits });
        }
        for g in &other.gates {
            self.push(remap(g, map))?;
        }
        Ok(self)
    }

    /// Appends `other` on the same qubit indices.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        let map: Vec<usize> = (0..other.n_qubits).collect();
        self.append_mapped(other, &map)
    }

    /// Reversed gate order with every gate replaced by its adjoint.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
            label: if self.label.is_empty() { String::new() } else { format!("{}†", self.label) },
        }
    }

    /// Fence over every qubit.
    pub fn barrier_all(&mut self) -> &mut Self {
        let all = (0..self.n_qubits).collect();
        self.emit(Gate::Barrier(all))
    }
}

pub(crate) fn remap(gate: &Gate, map: &[usize]) -> Gate {
    let m = |q: &usize| map[*q];
    match gate {
        Gate::X(q) => Gate::X(m(q)),
        Gate::H(q) => Gate::H(m(q)),
        Gate::SqrtX(q) => Gate::SqrtX(m(q)),
        Gate::Rz { target, angle } => Gate::Rz { target: m(target), angle: *angle },
        Gate::Phase { target, angle } => Gate::Phase { target: m(target), angle: *angle },
        Gate::Unitary { target, matrix } => Gate::Unitary { target: m(target), matrix: *matrix },
        Gate::CX { control, target } => Gate::CX { control: m(control), target: m(target) },
        Gate::ControlledPhase { control, target, angle } => Gate::ControlledPhase {
            control: m(control),
            target: m(target),
            angle: *angle,
        },
        Gate::Mcx { controls, target } => Gate::Mcx {
            controls: controls.iter().map(|c| Control { qubit: m(&c.qubit), on_one: c.on_one }).collect(),
            target: m(target),
        },
        Gate::Barrier(qs) => Gate::Barrier(qs.iter().map(m).collect()),
    }
}
