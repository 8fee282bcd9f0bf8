//! Stochastic Pauli noise by Monte-Carlo trajectories.
//!
//! After every gate each touched qubit independently suffers X, Y or Z
//! (uniformly) with probability `p1` for single-qubit gates and `p2` for
//! gates on two or more qubits. Measured bits then flip with probability
//! `p_readout`. Barriers are noiseless.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};
use crate::statevec::{cumulative, sample_cdf, StateVector};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseModel {
    #[serde(default)]
    pub p1: f64,
    #[serde(default)]
    pub p2: f64,
    #[serde(default)]
    pub p_readout: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, p_readout: f64) -> Result<Self> {
        let m = NoiseModel { p1, p2, p_readout };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p1", self.p1), ("p2", self.p2), ("p_readout", self.p_readout)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(format!("{name} = {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.p_readout == 0.0
    }

    fn gate_rate(&self, gate: &Gate) -> f64 {
        match gate {
            Gate::Barrier(_) => 0.0,
            g if g.qubits().len() == 1 => self.p1,
            _ => self.p2,
        }
    }
}

#[derive(Clone, Copy)]
struct Fault {
    after_gate: usize,
    qubit: usize,
    pauli: u8,
}

fn pauli(k: u8) -> Mat2 {
    match k {
        0 => linalg::pauli_x(),
        1 => linalg::pauli_y(),
        _ => linalg::pauli_z(),
    }
}

/// Histogram of `shots` noisy runs of `circuit` from |0…0⟩.
///
/// Trajectory `i` draws from stream `i` of a ChaCha8 generator seeded with
/// `seed`, so the result is independent of thread count.
pub fn run_noisy(circuit: &Circuit, model: &NoiseModel, shots: u64, seed: u64) -> Result<Vec<u64>> {
    model.validate()?;
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be ≥ 1".into()));
    }
    let mut ideal = StateVector::zero(circuit.n_qubits());
    ideal.run_circuit(circuit)?;
    let ideal_cdf = cumulative(&ideal.probabilities());
    let dim = ideal.dim();
    let rates: Vec<f64> = circuit.gates().iter().map(|g| model.gate_rate(g)).collect();

    let outcomes: Vec<usize> = (0..shots)
        .into_par_iter()
        .map(|i| -> Result<usize> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut faults = Vec::new();
            for (g, (gate, &p)) in circuit.gates().iter().zip(&rates).enumerate() {
                if p == 0.0 {
                    continue;
                }
                for q in gate.qubits() {
                    if rng.random::<f64>() < p {
                        faults.push(Fault { after_gate: g, qubit: q, pauli: rng.random_range(0..3) });
                    }
                }
            }
            let mut outcome = if faults.is_empty() {
                sample_cdf(&ideal_cdf, rng.random())
            } else {
                let mut sv = StateVector::zero(circuit.n_qubits());
                let mut next = faults.iter().peekable();
                for (g, gate) in circuit.gates().iter().enumerate() {
                    sv.apply_gate(gate)?;
                    while let Some(f) = next.next_if(|f| f.after_gate == g) {
                        sv.apply_matrix(f.qubit, &pauli(f.pauli))?;
                    }
                }
                sample_cdf(&cumulative(&sv.probabilities()), rng.random())
            };
            if model.p_readout > 0.0 {
                for q in 0..circuit.n_qubits() {
                    if rng.random::<f64>() < model.p_readout {
                        outcome ^= 1 << q;
                    }
                }
            }
            Ok(outcome)
        })
        .collect::<Result<_>>()?;

    let mut counts = vec![0u64; dim];
    for o in outcomes {
        counts[o] += 1;
    }
    Ok(counts)
}

/// Seed for sub-run `index` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.random()
}

/// Measurement runner for randomized purity estimation under noise: appends
/// the local unitaries to `circuit` and runs it through [`run_noisy`] with
/// a seed drawn from the round's generator.
pub fn noisy_runner<'a>(
    circuit: &'a Circuit,
    model: &'a NoiseModel,
) -> impl Fn(&[Mat2], u64, &mut ChaCha8Rng) -> Result<Vec<u64>> + Sync + 'a {
    move |us, shots, rng| {
        let mut c = circuit.clone();
        for (q, u) in us.iter().enumerate() {
            c.push(Gate::Unitary { target: q, matrix: *u })?;
        }
        run_noisy(&c, model, shots, rng.random())
    }
}
