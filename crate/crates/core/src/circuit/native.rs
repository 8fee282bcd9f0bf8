//! Lowering to the {CX, Rz, √X, X} basis of superconducting backends.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{Circuit, Gate};
use crate::linalg::{self, Mat2};

const ANGLE_EPS: f64 = 1e-12;

/// Replaces every multi-controlled X (any number of controls, either
/// polarity) by CX and single-qubit gates. Other gates pass through.
///
/// Uses the ancilla-free recursive construction C^k(U) =
/// C(V)·C^{k−1}X·C(V†)·C^{k−1}X·C^{k−1}(V) with V² = U; gate count grows
/// exponentially in k, which is fine for registers of a few qubits.
pub fn lower_multi_controlled(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::with_label(circuit.n_qubits(), circuit.label.clone());
    for g in circuit.gates() {
        match g {
            Gate::Mcx { controls, target } => {
                for c in controls.iter().filter(|c| !c.on_one) {
                    out.emit(Gate::X(c.qubit));
                }
                let qs: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                multi_controlled_u(&mut out, &qs, *target, &linalg::pauli_x());
                for c in controls.iter().filter(|c| !c.on_one) {
                    out.emit(Gate::X(c.qubit));
                }
            }
            other => {
                out.emit(other.clone());
            }
        }
    }
    out
}

fn multi_controlled_u(out: &mut Circuit, controls: &[usize], target: usize, u: &Mat2) {
    let is_x = linalg::max_abs_diff(u, &linalg::pauli_x()) < 1e-14;
    match controls {
        [] => {
            out.emit(if is_x { Gate::X(target) } else { Gate::Unitary { target, matrix: *u } });
        }
        [c] if is_x => {
            out.emit(Gate::CX { control: *c, target });
        }
        [c] => controlled_u(out, *c, target, u),
        [rest @ .., last] => {
            let v = linalg::sqrt_unitary(u);
            let v_dag = linalg::adjoint(&v);
            controlled_u(out, *last, target, &v);
            multi_controlled_u(out, rest, *last, &linalg::pauli_x());
            controlled_u(out, *last, target, &v_dag);
            multi_controlled_u(out, rest, *last, &linalg::pauli_x());
            multi_controlled_u(out, rest, target, &v);
        }
    }
}

/// Singly controlled U as A·X·B·X·C with ABC = I plus a phase on the control.
fn controlled_u(out: &mut Circuit, control: usize, target: usize, u: &Mat2) {
    let z = linalg::zyz_decompose(u);
    let a = linalg::mul(&linalg::rz(z.beta), &linalg::ry(z.gamma / 2.0));
    let b = linalg::mul(&linalg::ry(-z.gamma / 2.0), &linalg::rz(-(z.delta + z.beta) / 2.0));
    let cm = linalg::rz((z.delta - z.beta) / 2.0);
    out.emit(Gate::Unitary { target, matrix: cm });
    out.emit(Gate::CX { control, target });
    out.emit(Gate::Unitary { target, matrix: b });
    out.emit(Gate::CX { control, target });
    out.emit(Gate::Unitary { target, matrix: a });
    if z.alpha.abs() > ANGLE_EPS {
        out.emit(Gate::Phase { target: control, angle: z.alpha });
    }
}

/// Rewrites into {CX, Rz, √X, X}. The result equals the input up to a
/// global phase.
pub fn rewrite_to_native(circuit: &Circuit) -> Circuit {
    let lowered = lower_multi_controlled(circuit);
    let mut out = Circuit::with_label(circuit.n_qubits(), circuit.label.clone());
    for g in lowered.gates() {
        match g {
            Gate::X(_) | Gate::SqrtX(_) | Gate::Rz { .. } | Gate::CX { .. } | Gate::Barrier(_) => {
                out.emit(g.clone());
            }
            Gate::H(q) => {
                out.emit(Gate::Rz { target: *q, angle: FRAC_PI_2 });
                out.emit(Gate::SqrtX(*q));
                out.emit(Gate::Rz { target: *q, angle: FRAC_PI_2 });
            }
            // diag(1, e^{iφ}) = e^{iφ/2} Rz(φ)
            Gate::Phase { target, angle } => {
                out.emit(Gate::Rz { target: *target, angle: *angle });
            }
            Gate::Unitary { target, matrix } => native_1q(&mut out, *target, matrix),
            Gate::ControlledPhase { control, target, angle } => {
                let (c, t, h) = (*control, *target, angle / 2.0);
                out.emit(Gate::Rz { target: c, angle: h });
                out.emit(Gate::Rz { target: t, angle: h });
                out.emit(Gate::CX { control: c, target: t });
                out.emit(Gate::Rz { target: t, angle: -h });
                out.emit(Gate::CX { control: c, target: t });
            }
            Gate::Mcx { .. } => unreachable!("lowered above"),
        }
    }
    out
}

/// Rz(φ+π)·√X·Rz(θ+π)·√X·Rz(λ) for U ∝ Rz(φ)·Ry(θ)·Rz(λ), time-ordered.
fn native_1q(out: &mut Circuit, target: usize, u: &Mat2) {
    let z = linalg::zyz_decompose(u);
    if z.gamma.abs() < ANGLE_EPS {
        out.emit(Gate::Rz { target, angle: z.beta + z.delta });
        return;
    }
    out.emit(Gate::Rz { target, angle: z.delta });
    out.emit(Gate::SqrtX(target));
    out.emit(Gate::Rz { target, angle: z.gamma + PI });
    out.emit(Gate::SqrtX(target));
    out.emit(Gate::Rz { target, angle: z.beta + PI });
}
