//! Dense state vectors and gate application.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};
use crate::metrics::ProbDist;

pub const NORM_TOL: f64 = 1e-10;

/// Amplitudes over `n_qubits` qubits, qubit `k` being bit `k` of the index.
///
/// For a walk with `n` position qubits the index is `s·2^n + j`: coin `s`
/// on the most significant qubit, position `j` below it.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Exact purities Tr ρ² of the coin part, the position part and the whole.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PurityReport {
    pub purity_coin: f64,
    pub purity_position: f64,
    pub purity_total: f64,
}

impl StateVector {
    /// |0…0⟩.
    pub fn zero(n_qubits: usize) -> Self {
        StateVector::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(n_qubits >= 1 && index < 1 << n_qubits);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    /// Wraps raw amplitudes; the length must be a power of two and the
    /// vector normalized within [`NORM_TOL`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("state dimension {dim} is not a power of two ≥ 2")));
        }
        let sv = StateVector { n_qubits: dim.trailing_zeros() as usize, amps };
        let norm = sv.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!("state not normalized (Σ|a|² = {norm})")));
        }
        Ok(sv)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    /// U on `target` for every index whose bits under `mask` equal `value`.
    fn apply_1q_masked(&mut self, target: usize, m: &Mat2, mask: usize, value: usize) {
        let bit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & bit != 0 || i & mask != value {
                continue;
            }
            let j = i | bit;
            let (a, b) = (self.amps[i], self.amps[j]);
            self.amps[i] = m[0][0] * a + m[0][1] * b;
            self.amps[j] = m[1][0] * a + m[1][1] * b;
        }
    }

    fn flip_masked(&mut self, target: usize, mask: usize, value: usize) {
        let bit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & bit == 0 && i & mask == value {
                self.amps.swap(i, i | bit);
            }
        }
    }

    fn phase_masked(&mut self, mask: usize, phase: Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
    }

    /// Single-qubit unitary on `target`.
    pub fn apply_matrix(&mut self, target: usize, m: &Mat2) -> Result<()> {
        self.check_qubit(target)?;
        let defect = linalg::unitarity_defect(m);
        if defect > linalg::UNITARY_TOL {
            return Err(Error::NonUnitary { defect });
        }
        self.apply_1q_masked(target, m, 0, 0);
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let qs = gate.qubits();
        for (i, &q) in qs.iter().enumerate() {
            self.check_qubit(q)?;
            if qs[..i].contains(&q) {
                return Err(Error::RepeatedQubit { index: 0, qubit: q });
            }
        }
        match gate {
            Gate::X(q) => self.flip_masked(*q, 0, 0),
            Gate::Phase { target, angle } => self.phase_masked(1 << target, linalg::cis(*angle)),
            Gate::CX { control, target } => self.flip_masked(*target, 1 << control, 1 << control),
            Gate::ControlledPhase { control, target, angle } => {
                self.phase_masked((1 << control) | (1 << target), linalg::cis(*angle))
            }
            Gate::Mcx { controls, target } => {
                let mut mask = 0;
                let mut value = 0;
                for c in controls {
                    mask |= 1 << c.qubit;
                    if c.on_one {
                        value |= 1 << c.qubit;
                    }
                }
                self.flip_masked(*target, mask, value);
            }
            Gate::Barrier(_) => {}
            g => {
                let m = g.matrix_1q().expect("remaining kinds are single-qubit");
                return self.apply_matrix(qs[0], &m);
            }
        }
        Ok(())
    }

    /// Applies the gates in list order.
    pub fn run_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { left: circuit.n_qubits(), right: self.n_qubits });
        }
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// p_k = Σ_s |ψ_{s,k}|² over the low `n_position` qubits.
    pub fn position_distribution(&self, n_position: usize) -> Result<ProbDist> {
        if n_position == 0 || n_position >= self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "{n_position} position qubits in a {}-qubit state",
                self.n_qubits
            )));
        }
        let n = 1usize << n_position;
        let mut p = vec![0.0; n];
        for (i, a) in self.amps.iter().enumerate() {
            p[i & (n - 1)] += a.norm_sqr();
        }
        ProbDist::new(p)
    }

    /// Marginal outcome distribution of `qubits`; outcome bit `b` is qubit `qubits[b]`.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let mut p = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            p[gather_bits(i, qubits)] += a.norm_sqr();
        }
        Ok(p)
    }

    /// Tr ρ_A² for the subsystem `qubits`, by exact partial trace.
    pub fn reduced_purity(&self, qubits: &[usize]) -> Result<f64> {
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let rest: Vec<usize> = (0..self.n_qubits).filter(|q| !qubits.contains(q)).collect();
        let da = 1usize << qubits.len();
        let db = 1usize << rest.len();
        // M[a][b] with ρ_A = M M†
        let mut m = vec![Complex64::new(0.0, 0.0); da * db];
        for (i, amp) in self.amps.iter().enumerate() {
            m[gather_bits(i, qubits) * db + gather_bits(i, &rest)] = *amp;
        }
        let mut purity = 0.0;
        for a in 0..da {
            for a2 in 0..da {
                let rho: Complex64 = (0..db).map(|b| m[a * db + b] * m[a2 * db + b].conj()).sum();
                purity += rho.norm_sqr();
            }
        }
        Ok(purity)
    }

    /// Purities of coin (qubits ≥ `n_position`), position (qubits below)
    /// and the whole state.
    pub fn purities(&self, n_position: usize) -> Result<PurityReport> {
        if n_position == 0 || n_position >= self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "{n_position} position qubits in a {}-qubit state",
                self.n_qubits
            )));
        }
        let position: Vec<usize> = (0..n_position).collect();
        let coin: Vec<usize> = (n_position..self.n_qubits).collect();
        let norm = self.norm_sqr();
        Ok(PurityReport {
            purity_coin: self.reduced_purity(&coin)?,
            purity_position: self.reduced_purity(&position)?,
            purity_total: norm * norm,
        })
    }

    /// Histogram over basis indices of `shots` computational-basis measurements.
    pub fn sample_counts(&self, shots: u64, seed: u64) -> Result<Vec<u64>> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be ≥ 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cdf = cumulative(&self.probabilities());
        let mut counts = vec![0u64; self.dim()];
        for _ in 0..shots {
            counts[sample_cdf(&cdf, rng.random())] += 1;
        }
        Ok(counts)
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// |⟨self|other⟩|, insensitive to global phase.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }
}

/// Packs bit `qubits[k]` of `index` into bit `k` of the result.
pub fn gather_bits(index: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (k, &q)| acc | (((index >> q) & 1) << k))
}

pub(crate) fn cumulative(p: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = p
        .iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect();
    // rounding must not leave u ∈ [Σp, 1) unassigned
    if let Some(last) = p.iter().rposition(|&x| x > 0.0) {
        cdf[last..].iter_mut().for_each(|c| *c = f64::INFINITY);
    }
    cdf
}

pub(crate) fn sample_cdf(cdf: &[f64], u: f64) -> usize {
    cdf.partition_point(|&c| c <= u)
}

/// Dense unitary of a circuit, column `k` being the image of basis state `k`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    let dim = 1usize << circuit.n_qubits();
    let mut u = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let mut sv = StateVector::basis(circuit.n_qubits(), k);
        sv.run_circuit(circuit)?;
        for (r, a) in sv.amps.iter().enumerate() {
            u[(r, k)] = *a;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;
    use crate::linalg::c;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn x_flips_bit_zero() {
        let mut s = StateVector::zero(2);
        s.apply_gate(&Gate::X(0)).unwrap();
        assert_eq!(s, StateVector::basis(2, 1));
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::zero(1);
        s.apply_gate(&Gate::H(0)).unwrap();
        assert!(close(s.amplitudes()[0], c(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amplitudes()[1], c(FRAC_1_SQRT_2, 0.0)));
    }

    #[test]
    fn controlled_r1_on_11_flips_sign() {
        let mut s = StateVector::basis(2, 3);
        s.apply_gate(&Gate::ControlledPhase { control: 1, target: 0, angle: 2.0 * PI / 2.0 }).unwrap();
        assert!(close(s.amplitudes()[3], c(-1.0, 0.0)));
    }

    #[test]
    fn open_control_fires_on_zero() {
        let mut s = StateVector::zero(3);
        let g = Gate::Mcx { controls: vec![Control::on_zero(0), Control::on_zero(1)], target: 2 };
        s.apply_gate(&g).unwrap();
        assert_eq!(s, StateVector::basis(3, 4));
        let mut s = StateVector::basis(3, 1);
        s.apply_gate(&g).unwrap();
        assert_eq!(s, StateVector::basis(3, 1));
    }

    #[test]
    fn gate_errors() {
        let mut s = StateVector::zero(2);
        assert!(matches!(s.apply_gate(&Gate::H(2)), Err(Error::QubitOutOfRange { .. })));
        let m = [[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(s.apply_gate(&Gate::Unitary { target: 0, matrix: m }), Err(Error::NonUnitary { .. })));
        let circ = Circuit::new(3);
        assert!(s.run_circuit(&circ).is_err());
    }

    #[test]
    fn empty_and_involution() {
        let mut s = StateVector::zero(1);
        s.run_circuit(&Circuit::new(1)).unwrap();
        assert_eq!(s, StateVector::zero(1));
        let circ = Circuit::from_gates(1, vec![Gate::H(0), Gate::H(0)]).unwrap();
        s.run_circuit(&circ).unwrap();
        assert!(s.overlap(&StateVector::zero(1)).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn position_marginals() {
        // |0_c⟩|3_p⟩, N = 4
        let s = StateVector::basis(3, 3);
        assert_eq!(s.position_distribution(2).unwrap().as_slice(), &[0.0, 0.0, 0.0, 1.0]);
        let h = c(FRAC_1_SQRT_2, 0.0);
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = h;
        amps[4] = h;
        let s = StateVector::from_amplitudes(amps).unwrap();
        let p = s.position_distribution(2).unwrap();
        assert!((p.as_slice()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_pair_purity() {
        let h = c(FRAC_1_SQRT_2, 0.0);
        let s = StateVector::from_amplitudes(vec![h, c(0.0, 0.0), c(0.0, 0.0), h]).unwrap();
        let r = s.purities(1).unwrap();
        assert!((r.purity_coin - 0.5).abs() < 1e-12);
        assert!((r.purity_position - 0.5).abs() < 1e-12);
        assert!((r.purity_total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_basics() {
        let a = StateVector::basis(2, 1);
        let b = StateVector::basis(2, 2);
        assert_eq!(a.overlap(&b).unwrap(), 0.0);
        let phased: Vec<Complex64> = a.amplitudes().iter().map(|z| z * linalg::cis(0.7)).collect();
        let p = StateVector::from_amplitudes(phased).unwrap();
        assert!((a.overlap(&p).unwrap() - 1.0).abs() < 1e-12);
        assert!(a.overlap(&StateVector::zero(3)).is_err());
    }

    #[test]
    fn sampling_basis_and_errors() {
        let s = StateVector::basis(2, 2);
        let counts = s.sample_counts(1000, 1).unwrap();
        assert_eq!(counts, vec![0, 0, 1000, 0]);
        assert!(s.sample_counts(0, 1).is_err());
        assert_eq!(s.sample_counts(50, 9).unwrap(), s.sample_counts(50, 9).unwrap());
    }

    #[test]
    fn uniform_sampling_concentrates() {
        let mut s = StateVector::zero(2);
        s.apply_gate(&Gate::H(0)).unwrap();
        s.apply_gate(&Gate::H(1)).unwrap();
        let shots = 1_000_000;
        let counts = s.sample_counts(shots, 42).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), shots);
        for k in counts {
            assert!((k as f64 / shots as f64 - 0.25).abs() < 0.005);
        }
    }

    #[test]
    fn unitary_of_cx() {
        let circ = Circuit::from_gates(2, vec![Gate::CX { control: 0, target: 1 }]).unwrap();
        let u = circuit_unitary(&circ).unwrap();
        // |01⟩ (index 1, control set) → |11⟩
        assert!(close(u[(3, 1)], c(1.0, 0.0)));
        assert!(close(u[(0, 0)], c(1.0, 0.0)));
        assert!(close(u[(2, 2)], c(1.0, 0.0)));
    }
}
