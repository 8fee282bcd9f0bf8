use serde::{Deserialize, Serialize};

use super::{Circuit, Gate};
use crate::error::{Error, Result};

/// Gate counts and depth of a circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n1: u64,
    pub n2: u64,
    pub depth: u64,
    pub ancillae: u64,
}

enum Arity {
    Fence,
    One,
    Two,
}

fn arity(index: usize, gate: &Gate) -> Result<Arity> {
    Ok(match gate {
        Gate::Barrier(_) => Arity::Fence,
        Gate::CX { .. } | Gate::ControlledPhase { .. } => Arity::Two,
        Gate::Mcx { controls, .. } => match controls.len() {
            0 => Arity::One,
            1 => Arity::Two,
            k => return Err(Error::UnloweredMultiControl { index, controls: k }),
        },
        _ => Arity::One,
    })
}

/// One- and two-qubit gate counts, with `depth` filled in.
///
/// Open-circle controls count like ordinary controls. Barriers count as
/// nothing. Multi-controlled X with two or more controls is rejected.
pub fn gate_counts(circuit: &Circuit) -> Result<MetricsReport> {
    let mut report = MetricsReport::default();
    for (i, g) in circuit.gates().iter().enumerate() {
        match arity(i, g)? {
            Arity::Fence => {}
            Arity::One => report.n1 += 1,
            Arity::Two => report.n2 += 1,
        }
    }
    report.depth = depth(circuit)?;
    Ok(report)
}

/// ASAP depth: a gate starts one layer after the latest gate that shares a
/// qubit with it. Gates sharing a control therefore serialize. A barrier
/// lifts all of its qubits to their common maximum without adding a layer.
pub fn depth(circuit: &Circuit) -> Result<u64> {
    let mut level = vec![0u64; circuit.n_qubits()];
    for (i, g) in circuit.gates().iter().enumerate() {
        let qs = g.qubits();
        let start = qs.iter().map(|&q| level[q]).max().unwrap_or(0);
        let end = match arity(i, g)? {
            Arity::Fence => start,
            _ => start + 1,
        };
        for q in qs {
            level[q] = end;
        }
    }
    Ok(level.into_iter().max().unwrap_or(0))
}
