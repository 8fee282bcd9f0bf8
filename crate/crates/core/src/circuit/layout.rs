use std::collections::BTreeSet;

use super::Circuit;
use crate::error::{Error, Result};

/// Undirected physical qubit adjacency of a device.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingMap {
    n_physical: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Edges of the 27-qubit heavy-hex Falcon r5.11 layout (ibm_cairo).
const IBM_CAIRO_EDGES: [(usize, usize); 28] = [
    (0, 1),
    (1, 2),
    (1, 4),
    (2, 3),
    (3, 5),
    (4, 7),
    (5, 8),
    (6, 7),
    (7, 10),
    (8, 9),
    (8, 11),
    (10, 12),
    (11, 14),
    (12, 13),
    (12, 15),
    (13, 14),
    (14, 16),
    (15, 18),
    (16, 19),
    (17, 18),
    (18, 21),
    (19, 20),
    (19, 22),
    (21, 23),
    (22, 25),
    (23, 24),
    (24, 25),
    (25, 26),
];

impl CouplingMap {
    pub fn new(n_physical: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for q in [a, b] {
                if q >= n_physical {
                    return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n_physical });
                }
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop on physical qubit {a}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(CouplingMap { n_physical, edges: set })
    }

    pub fn ibm_cairo() -> Self {
        CouplingMap::new(27, IBM_CAIRO_EDGES).expect("static map is valid")
    }

    pub fn n_physical(&self) -> usize {
        self.n_physical
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }
}

/// A multi-qubit gate whose physical qubits are not directly coupled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutViolation {
    pub gate_index: usize,
    pub logical: Vec<usize>,
    pub physical: Vec<usize>,
}

/// Checks every two-qubit gate against the coupling map under
/// `placement[logical] = physical`. Gates on three or more qubits are
/// always reported, since no single coupler can host them.
pub fn validate_layout(circuit: &Circuit, map: &CouplingMap, placement: &[usize]) -> Result<Vec<LayoutViolation>> {
    if placement.len() != circuit.n_qubits() {
        return Err(Error::DimensionMismatch { left: placement.len(), right: circuit.n_qubits() });
    }
    let mut seen = BTreeSet::new();
    for &p in placement {
        if p >= map.n_physical() {
            return Err(Error::QubitOutOfRange { qubit: p, n_qubits: map.n_physical() });
        }
        if !seen.insert(p) {
            return Err(Error::InvalidArgument(format!("placement maps two logical qubits to {p}")));
        }
    }
    let mut out = Vec::new();
    for (i, g) in circuit.gates().iter().enumerate() {
        if g.is_barrier() {
            continue;
        }
        let logical = g.qubits();
        let physical: Vec<usize> = logical.iter().map(|&q| placement[q]).collect();
        let ok = match physical.as_slice() {
            [_] => true,
            [a, b] => map.adjacent(*a, *b),
            _ => false,
        };
        if !ok {
            out.push(LayoutViolation { gate_index: i, logical, physical });
        }
    }
    Ok(out)
}
