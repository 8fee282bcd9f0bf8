//! Reference walk built from amplitude arrays and modular index shifts, plus
//! dense-matrix forms of the shift, the DFT and circulant diagonalization.
//! Nothing here goes through the circuit representation.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, c, cis, Mat2};
use crate::walks::WalkConfig;

/// ψ_{s,j} for s ∈ {0,1}, j ∈ 0..N.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkAmplitudes {
    pub psi0: Vec<Complex64>,
    pub psi1: Vec<Complex64>,
}

impl WalkAmplitudes {
    /// [cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩] ⊗ |0⟩ on the N-cycle.
    pub fn initial(n_sites: usize, theta: f64, phi: f64) -> Self {
        let mut psi0 = vec![c(0.0, 0.0); n_sites];
        let mut psi1 = psi0.clone();
        psi0[0] = c((theta / 2.0).cos(), 0.0);
        psi1[0] = cis(phi) * (theta / 2.0).sin();
        WalkAmplitudes { psi0, psi1 }
    }

    pub fn from_flat(amps: &[Complex64]) -> Result<Self> {
        if amps.len() < 2 || !amps.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("{} amplitudes do not split into coin blocks", amps.len())));
        }
        let (a, b) = amps.split_at(amps.len() / 2);
        Ok(WalkAmplitudes { psi0: a.to_vec(), psi1: b.to_vec() })
    }

    pub fn n_sites(&self) -> usize {
        self.psi0.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi0.iter().chain(&self.psi1).map(|z| z.norm_sqr()).sum()
    }

    /// Coin on every (ψ_{0,j}, ψ_{1,j}) pair, then coin 0 moves to j − 1 and
    /// coin 1 to j + 1 (mod N).
    pub fn step(&self, coin: &Mat2) -> Result<Self> {
        let defect = linalg::unitarity_defect(coin);
        if defect > linalg::UNITARY_TOL {
            return Err(Error::NonUnitary { defect });
        }
        let n = self.n_sites();
        let mut psi0 = vec![c(0.0, 0.0); n];
        let mut psi1 = psi0.clone();
        for j in 0..n {
            let (a, b) = (self.psi0[j], self.psi1[j]);
            psi0[(j + n - 1) % n] = coin[0][0] * a + coin[0][1] * b;
            psi1[(j + 1) % n] = coin[1][0] * a + coin[1][1] * b;
        }
        Ok(WalkAmplitudes { psi0, psi1 })
    }

    /// Coin-major flattening, index s·N + j; matches the simulator's
    /// basis index with the coin on the top qubit.
    pub fn flatten(&self) -> Vec<Complex64> {
        self.psi0.iter().chain(&self.psi1).copied().collect()
    }

    pub fn position_probabilities(&self) -> Vec<f64> {
        self.psi0.iter().zip(&self.psi1).map(|(a, b)| a.norm_sqr() + b.norm_sqr()).collect()
    }

    /// |⟨self|other⟩|².
    pub fn overlap(&self, other: &WalkAmplitudes) -> Result<f64> {
        if self.n_sites() != other.n_sites() {
            return Err(Error::DimensionMismatch { left: self.n_sites(), right: other.n_sites() });
        }
        let ip: Complex64 = self.flatten().iter().zip(other.flatten()).map(|(a, b)| a.conj() * b).sum();
        Ok(ip.norm_sqr())
    }
}

/// `config.steps` steps of the walk from the configured initial state.
pub fn evolve(config: &WalkConfig) -> Result<WalkAmplitudes> {
    config.validate()?;
    let mut w = WalkAmplitudes::initial(1 << config.n, config.theta, config.phi);
    for _ in 0..config.steps {
        w = w.step(&config.coin)?;
    }
    Ok(w)
}

fn zeros(n: usize) -> DMatrix<Complex64> {
    DMatrix::zeros(n, n)
}

/// Decrement P₀|j⟩ = |j − 1⟩ and increment P₁ = P₀ᵀ.
pub fn shift_matrices(n_sites: usize) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    if n_sites < 2 {
        return Err(Error::InvalidArgument(format!("cycle needs N ≥ 2 (got {n_sites})")));
    }
    let mut p0 = zeros(n_sites);
    for j in 0..n_sites {
        p0[((j + n_sites - 1) % n_sites, j)] = c(1.0, 0.0);
    }
    let p1 = p0.transpose();
    Ok((p0, p1))
}

/// F_{jk} = ω^{jk}/√N with ω = e^{2πi/N}.
pub fn dft_matrix(n_sites: usize) -> DMatrix<Complex64> {
    let scale = 1.0 / (n_sites as f64).sqrt();
    DMatrix::from_fn(n_sites, n_sites, |j, k| {
        cis(2.0 * std::f64::consts::PI * ((j * k) % n_sites) as f64 / n_sites as f64) * scale
    })
}

/// Ω = diag(ω^j).
pub fn omega_matrix(n_sites: usize) -> DMatrix<Complex64> {
    let d: Vec<Complex64> =
        (0..n_sites).map(|j| cis(2.0 * std::f64::consts::PI * j as f64 / n_sites as f64)).collect();
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d))
}

/// Block matrix [[a, 0], [0, b]].
pub fn block_diag(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = zeros(n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

/// S = |0⟩⟨0| ⊗ P₀ + |1⟩⟨1| ⊗ P₁.
pub fn conditional_shift(n_sites: usize) -> Result<DMatrix<Complex64>> {
    let (p0, p1) = shift_matrices(n_sites)?;
    Ok(block_diag(&p0, &p1))
}

/// C ⊗ I_N in coin-major ordering.
pub fn coin_on_register(coin: &Mat2, n_sites: usize) -> DMatrix<Complex64> {
    let mut out = zeros(2 * n_sites);
    for s in 0..2 {
        for r in 0..2 {
            for j in 0..n_sites {
                out[(s * n_sites + j, r * n_sites + j)] = coin[s][r];
            }
        }
    }
    out
}

/// U = S (C ⊗ I).
pub fn step_matrix(n_sites: usize, coin: &Mat2) -> Result<DMatrix<Complex64>> {
    Ok(conditional_shift(n_sites)? * coin_on_register(coin, n_sites))
}

/// First row of a circulant matrix; row j is the row 0 shifted right by j.
#[derive(Clone, Debug, PartialEq)]
pub struct CirculantSpec {
    pub c: Vec<Complex64>,
}

impl CirculantSpec {
    pub fn new(c: Vec<Complex64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidArgument("circulant needs at least one entry".into()));
        }
        Ok(CirculantSpec { c })
    }

    /// C_{jk} = c_{(k − j) mod N}.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let n = self.c.len();
        DMatrix::from_fn(n, n, |j, k| self.c[(k + n - j) % n])
    }
}

/// Induced ∞-norm (largest absolute row sum).
pub fn inf_norm(m: &DMatrix<Complex64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// λ_m = Σ_k c_k ω^{−mk} together with ‖C − F†ΛF‖∞.
pub fn circulant_eig(spec: &CirculantSpec) -> (Vec<Complex64>, f64) {
    let n = spec.c.len();
    let lambda: Vec<Complex64> = (0..n)
        .map(|m| {
            spec.c
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * cis(-2.0 * std::f64::consts::PI * ((m * k) % n) as f64 / n as f64))
                .sum()
        })
        .collect();
    let f = dft_matrix(n);
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(lambda.clone()));
    let residual = inf_norm(&(spec.matrix() - f.adjoint() * diag * f));
    (lambda, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn basis(n: usize, s: usize, j: usize) -> WalkAmplitudes {
        let mut w = WalkAmplitudes { psi0: vec![c(0.0, 0.0); n], psi1: vec![c(0.0, 0.0); n] };
        if s == 0 {
            w.psi0[j] = c(1.0, 0.0);
        } else {
            w.psi1[j] = c(1.0, 0.0);
        }
        w
    }

    #[test]
    fn identity_coin_moves_by_coin() {
        let id = linalg::identity();
        assert_eq!(basis(4, 0, 0).step(&id).unwrap(), basis(4, 0, 3));
        assert_eq!(basis(4, 1, 0).step(&id).unwrap(), basis(4, 1, 1));
    }

    #[test]
    fn first_hadamard_step() {
        let w = WalkAmplitudes::initial(4, PI / 6.0, PI / 2.0).step(&linalg::hadamard()).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w.psi0[3] - cis(PI / 12.0) * r).norm() < 1e-12);
        assert!((w.psi1[1] - cis(-PI / 12.0) * r).norm() < 1e-12);
        assert!((w.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary_coin() {
        let m = [[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(WalkAmplitudes::initial(4, 0.0, 0.0).step(&m).is_err());
    }

    #[test]
    fn evolve_zero_steps() {
        let cfg = WalkConfig::new(2, 0);
        assert_eq!(evolve(&cfg).unwrap(), WalkAmplitudes::initial(4, PI / 6.0, PI / 2.0));
    }

    #[test]
    fn shift_matrix_patterns() {
        let (p0, p1) = shift_matrices(2).unwrap();
        assert_eq!(p0, p1);
        let (p0, p1) = shift_matrices(4).unwrap();
        assert_eq!(&p1 * &p0, DMatrix::identity(4, 4));
        for j in 0..4 {
            for k in 0..4 {
                let want = if k == j + 1 || (j == 3 && k == 0) { 1.0 } else { 0.0 };
                assert_eq!(p0[(j, k)], c(want, 0.0));
            }
        }
        assert!(shift_matrices(1).is_err());
    }

    #[test]
    fn circulant_examples() {
        let n = 8;
        let delta = |m: usize| CirculantSpec::new((0..n).map(|k| c((k == m) as u8 as f64, 0.0)).collect()).unwrap();
        let (l, r) = circulant_eig(&delta(0));
        assert!(l.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-12) && r < 1e-12);
        let (l, r) = circulant_eig(&delta(1));
        assert_eq!(delta(1).matrix(), shift_matrices(n).unwrap().0);
        for (m, z) in l.iter().enumerate() {
            assert!((z - cis(-2.0 * PI * m as f64 / n as f64)).norm() < 1e-12);
        }
        assert!(r < 1e-12);
        let (l, _) = circulant_eig(&delta(n - 1));
        for (m, z) in l.iter().enumerate() {
            assert!((z - cis(2.0 * PI * m as f64 / n as f64)).norm() < 1e-12);
        }
    }

    #[test]
    fn dense_step_matches_amplitude_step() {
        let coin = linalg::mul(&linalg::ry(0.7), &linalg::rz(1.9));
        for n in [2usize, 4, 8, 16] {
            let mut w = WalkAmplitudes::initial(n, 1.1, 0.4);
            w.psi0[n / 2] = c(0.3, -0.2);
            let u = step_matrix(n, &coin).unwrap();
            let v = nalgebra::DVector::from_vec(w.flatten());
            let dense = u * v;
            let direct = w.step(&coin).unwrap().flatten();
            for (a, b) in dense.iter().zip(&direct) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
