//! JSON form of a circuit: `{n_qubits, label, gates: [{kind, qubits, params}]}`.
//!
//! Angles are radians. `u` carries its matrix row-major as
//! `[re00, im00, re01, im01, re10, im10, re11, im11]`. `mcx` lists its
//! controls then its target in `qubits` and one polarity per control in
//! `params` (1 fires on |1⟩, 0 on |0⟩).

use serde::{Deserialize, Serialize};

use super::{Circuit, Control, Gate};
use crate::error::{Error, Result};
use crate::linalg::c;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub qubits: Vec<usize>,
    #[serde(default)]
    pub params: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitDocument {
    pub n_qubits: usize,
    #[serde(default)]
    pub label: String,
    pub gates: Vec<GateRecord>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        let params = match g {
            Gate::Rz { angle, .. } | Gate::Phase { angle, .. } | Gate::ControlledPhase { angle, .. } => vec![*angle],
            Gate::Unitary { matrix, .. } => matrix.iter().flatten().flat_map(|z| [z.re, z.im]).collect(),
            Gate::Mcx { controls, .. } => controls.iter().map(|c| if c.on_one { 1.0 } else { 0.0 }).collect(),
            _ => Vec::new(),
        };
        GateRecord { kind: g.name().to_string(), qubits: g.qubits(), params }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Gate> {
        let bad = |why: &str| Error::InvalidArgument(format!("gate `{}`: {why}", r.kind));
        let want = |nq: usize, np: usize| -> Result<()> {
            if r.qubits.len() != nq || r.params.len() != np {
                return Err(bad(&format!("expected {nq} qubits and {np} params")));
            }
            Ok(())
        };
        let q = &r.qubits;
        let p = &r.params;
        Ok(match r.kind.as_str() {
            "x" => {
                want(1, 0)?;
                Gate::X(q[0])
            }
            "h" => {
                want(1, 0)?;
                Gate::H(q[0])
            }
            "sx" => {
                want(1, 0)?;
                Gate::SqrtX(q[0])
            }
            "rz" => {
                want(1, 1)?;
                Gate::Rz { target: q[0], angle: p[0] }
            }
            "p" => {
                want(1, 1)?;
                Gate::Phase { target: q[0], angle: p[0] }
            }
            "u" => {
                want(1, 8)?;
                let m = [[c(p[0], p[1]), c(p[2], p[3])], [c(p[4], p[5]), c(p[6], p[7])]];
                Gate::Unitary { target: q[0], matrix: m }
            }
            "cx" => {
                want(2, 0)?;
                Gate::CX { control: q[0], target: q[1] }
            }
            "cp" => {
                want(2, 1)?;
                Gate::ControlledPhase { control: q[0], target: q[1], angle: p[0] }
            }
            "mcx" => {
                if q.is_empty() || p.len() + 1 != q.len() {
                    return Err(bad("needs one polarity per control"));
                }
                let mut controls = Vec::with_capacity(p.len());
                for (&qubit, &pol) in q.iter().zip(p) {
                    let on_one = match pol {
                        1.0 => true,
                        0.0 => false,
                        _ => return Err(bad("polarity must be 0 or 1")),
                    };
                    controls.push(Control { qubit, on_one });
                }
                Gate::Mcx { controls, target: *q.last().unwrap() }
            }
            "barrier" => Gate::Barrier(q.clone()),
            other => return Err(Error::InvalidArgument(format!("unknown gate kind `{other}`"))),
        })
    }
}

impl From<&Circuit> for CircuitDocument {
    fn from(circ: &Circuit) -> Self {
        CircuitDocument {
            n_qubits: circ.n_qubits(),
            label: circ.label.clone(),
            gates: circ.gates().iter().map(GateRecord::from).collect(),
        }
    }
}

impl TryFrom<&CircuitDocument> for Circuit {
    type Error = Error;

    fn try_from(doc: &CircuitDocument) -> Result<Circuit> {
        let mut circ = Circuit::with_label(doc.n_qubits, doc.label.clone());
        for r in &doc.gates {
            circ.push(Gate::try_from(r)?)?;
        }
        Ok(circ)
    }
}

impl Circuit {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&CircuitDocument::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Circuit> {
        let doc: CircuitDocument = serde_json::from_str(s)?;
        Circuit::try_from(&doc)
    }
}
