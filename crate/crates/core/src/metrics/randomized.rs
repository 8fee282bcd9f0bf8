//! Purity from randomized local measurements.
//!
//! Each round rotates every qubit by an independent Haar-random U(2),
//! measures in the computational basis, and for a part A of n_A qubits
//! evaluates
//!
//! ```text
//! X = 2^{n_A} Σ_{s,s'} (−2)^{−H(s,s')} P̂₂(s, s')
//! ```
//!
//! where H is the Hamming distance on A's bits and P̂₂ is the unbiased
//! pair-frequency estimate n_s(n_{s'} − δ_{ss'}) / (M(M − 1)) from M shots.
//! The purity estimate is the mean of X over rounds.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};
use crate::statevec::StateVector;

/// Which side of the coin ⊗ position split to estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Coin,
    Position,
    Total,
}

impl Part {
    /// Qubit indices of the part in a register with `n_position` position qubits and one coin.
    pub fn qubits(self, n_position: usize) -> Vec<usize> {
        match self {
            Part::Coin => vec![n_position],
            Part::Position => (0..n_position).collect(),
            Part::Total => (0..=n_position).collect(),
        }
    }
}

/// Haar-random element of U(2) as Rz(φ)·Ry(θ)·Rz(λ) with cos θ uniform on
/// [−1, 1]; the global phase is irrelevant for measurements.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let theta = (1.0 - 2.0 * rng.random::<f64>()).acos();
    let phi = 2.0 * PI * rng.random::<f64>();
    let lambda = 2.0 * PI * rng.random::<f64>();
    linalg::mul(&linalg::mul(&linalg::rz(phi), &linalg::ry(theta)), &linalg::rz(lambda))
}

/// Estimates Tr ρ_A² for several parts from the same measurement rounds.
///
/// `run(unitaries, shots, rng)` must rotate qubit `k` by `unitaries[k]`,
/// measure `shots` times and return a histogram over all `2^n_qubits`
/// outcomes. Rounds use independent RNG streams derived from `seed`, so
/// the result does not depend on thread scheduling.
pub fn randomized_purities<F>(
    run: F,
    n_qubits: usize,
    parts: &[Vec<usize>],
    n_unitaries: usize,
    shots: u64,
    seed: u64,
) -> Result<Vec<f64>>
where
    F: Fn(&[Mat2], u64, &mut ChaCha8Rng) -> Result<Vec<u64>> + Sync,
{
    if n_unitaries < 2 {
        return Err(Error::InvalidArgument("need at least 2 random unitaries".into()));
    }
    if shots < 2 {
        return Err(Error::InvalidArgument("need at least 2 shots per unitary".into()));
    }
    for part in parts {
        if part.is_empty() || part.iter().any(|&q| q >= n_qubits) {
            return Err(Error::InvalidArgument(format!("bad part {part:?} for {n_qubits} qubits")));
        }
    }
    let rounds: Vec<Vec<f64>> = (0..n_unitaries)
        .into_par_iter()
        .map(|round| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(round as u64);
            let us: Vec<Mat2> = (0..n_qubits).map(|_| haar_unitary(&mut rng)).collect();
            let counts = run(&us, shots, &mut rng)?;
            if counts.len() != 1 << n_qubits {
                return Err(Error::DimensionMismatch { left: counts.len(), right: 1 << n_qubits });
            }
            Ok(parts.iter().map(|part| round_estimate(&counts, part)).collect())
        })
        .collect::<Result<_>>()?;
    let mut means = vec![0.0; parts.len()];
    for r in &rounds {
        for (m, x) in means.iter_mut().zip(r) {
            *m += x;
        }
    }
    Ok(means.into_iter().map(|m| m / n_unitaries as f64).collect())
}

/// Single-part convenience wrapper over [`randomized_purities`].
pub fn randomized_purity<F>(
    run: F,
    n_qubits: usize,
    part: &[usize],
    n_unitaries: usize,
    shots: u64,
    seed: u64,
) -> Result<f64>
where
    F: Fn(&[Mat2], u64, &mut ChaCha8Rng) -> Result<Vec<u64>> + Sync,
{
    Ok(randomized_purities(run, n_qubits, &[part.to_vec()], n_unitaries, shots, seed)?[0])
}

fn round_estimate(counts: &[u64], part: &[usize]) -> f64 {
    let marg = super::marginal_counts(counts, part);
    let m: u64 = marg.iter().sum();
    let norm = (m as f64) * (m as f64 - 1.0);
    let mut x = 0.0;
    for (s, &ns) in marg.iter().enumerate() {
        if ns == 0 {
            continue;
        }
        for (s2, &ns2) in marg.iter().enumerate() {
            let pair = if s == s2 { ns * (ns - 1) } else { ns * ns2 };
            if pair == 0 {
                continue;
            }
            let hamming = (s ^ s2).count_ones() as i32;
            x += (-2.0f64).powi(-hamming) * pair as f64 / norm;
        }
    }
    x * (1u64 << part.len()) as f64
}

/// Runner that rotates a copy of `state` and samples the exact outcome
/// distribution.
pub fn exact_runner(state: &StateVector) -> impl Fn(&[Mat2], u64, &mut ChaCha8Rng) -> Result<Vec<u64>> + Sync + '_ {
    move |us, shots, rng| {
        let mut sv = state.clone();
        for (q, u) in us.iter().enumerate() {
            sv.apply_matrix(q, u)?;
        }
        Ok(multinomial(&sv.probabilities(), shots, rng))
    }
}

/// Multinomial draw via sequential conditional binomials.
pub(crate) fn multinomial<R: Rng + ?Sized>(p: &[f64], shots: u64, rng: &mut R) -> Vec<u64> {
    let mut out = vec![0u64; p.len()];
    let mut left = shots;
    let mut mass = 1.0f64;
    for (k, &pk) in p.iter().enumerate() {
        if left == 0 {
            break;
        }
        if k + 1 == p.len() || mass <= 0.0 {
            out[k] = left;
            break;
        }
        let prob = (pk / mass).clamp(0.0, 1.0);
        let draw = Binomial::new(left, prob).expect("probability clamped to [0,1]").sample(rng);
        out[k] = draw;
        left -= draw;
        mass -= pk;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::linalg::c;

    #[test]
    fn haar_moments() {
        // |U₀₀|² is uniform on [0,1] for Haar U(2): mean ½, second moment ⅓
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 200_000;
        let (mut m1, mut m2) = (0.0, 0.0);
        for _ in 0..n {
            let u = haar_unitary(&mut rng);
            assert!(linalg::is_unitary(&u));
            let x = u[0][0].norm_sqr();
            m1 += x;
            m2 += x * x;
        }
        assert!((m1 / n as f64 - 0.5).abs() < 0.005);
        assert!((m2 / n as f64 - 1.0 / 3.0).abs() < 0.005);
    }

    #[test]
    fn multinomial_sums_to_shots() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = multinomial(&[0.1, 0.0, 0.6, 0.3], 10_000, &mut rng);
        assert_eq!(c.iter().sum::<u64>(), 10_000);
        assert_eq!(c[1], 0);
        assert!((c[2] as f64 / 1e4 - 0.6).abs() < 0.03);
    }

    #[test]
    fn degenerate_inputs() {
        let s = StateVector::zero(1);
        assert!(randomized_purity(exact_runner(&s), 1, &[0], 1, 100, 0).is_err());
        assert!(randomized_purity(exact_runner(&s), 1, &[0], 10, 1, 0).is_err());
        assert!(randomized_purity(exact_runner(&s), 1, &[1], 10, 100, 0).is_err());
    }

    #[test]
    fn pure_product_part() {
        let s = StateVector::zero(2);
        let est = randomized_purity(exact_runner(&s), 2, &[0], 300, 100_000, 11).unwrap();
        assert!((est - 1.0).abs() < 0.05, "{est}");
    }

    #[test]
    fn bell_half_is_maximally_mixed() {
        let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = c(0.0, 0.0);
        let s = StateVector::from_amplitudes(vec![h, z, z, h]).unwrap();
        let est = randomized_purities(exact_runner(&s), 2, &[vec![0], vec![1], vec![0, 1]], 300, 100_000, 5).unwrap();
        assert!((est[0] - 0.5).abs() < 0.05, "{est:?}");
        assert!((est[1] - 0.5).abs() < 0.05, "{est:?}");
        assert!((est[2] - 1.0).abs() < 0.1, "{est:?}");
    }

    #[test]
    fn deterministic_for_seed() {
        let mut s = StateVector::zero(2);
        s.apply_gate(&Gate::H(0)).unwrap();
        let a = randomized_purity(exact_runner(&s), 2, &[0, 1], 20, 1000, 9).unwrap();
        let b = randomized_purity(exact_runner(&s), 2, &[0, 1], 20, 1000, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn consistent_over_seeds() {
        // mean of 20 independent estimates within 2 standard errors of the truth
        let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = c(0.0, 0.0);
        let s = StateVector::from_amplitudes(vec![h, z, z, h]).unwrap();
        let exact = s.reduced_purity(&[0]).unwrap();
        let ests: Vec<f64> =
            (0..20).map(|seed| randomized_purity(exact_runner(&s), 2, &[0], 100, 10_000, seed).unwrap()).collect();
        let mean = ests.iter().sum::<f64>() / ests.len() as f64;
        let var = ests.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (ests.len() - 1) as f64;
        let se = (var / ests.len() as f64).sqrt();
        assert!((mean - exact).abs() < 2.0 * se, "mean {mean} exact {exact} se {se}");
    }
}
