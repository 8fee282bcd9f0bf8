//! Figures of merit: Hellinger distance/fidelity, Rényi-2 entropy, the
//! closed-form circuit cost of each scheme, and randomized-measurement
//! purity estimation.

mod randomized;

pub use randomized::{exact_runner, haar_unitary, randomized_purities, randomized_purity, Part};

use serde::{Deserialize, Serialize};

use crate::circuit::MetricsReport;
use crate::error::{Error, Result};
use crate::statevec::{gather_bits, PurityReport};
use crate::walks::{id_cost_model, IdVariant, Scheme};

pub const PROB_SUM_TOL: f64 = 1e-9;

/// Nonnegative probabilities summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbDist(Vec<f64>);

impl ProbDist {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidArgument("empty distribution".into()));
        }
        if let Some(x) = p.iter().find(|x| x.is_nan() || **x < 0.0) {
            return Err(Error::InvalidArgument(format!("negative or NaN probability {x}")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidArgument(format!("probabilities sum to {sum}")));
        }
        Ok(ProbDist(p))
    }

    /// Empirical frequencies `counts / Σ counts`.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidArgument("histogram has no shots".into()));
        }
        Ok(ProbDist(counts.iter().map(|&k| k as f64 / total as f64).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Histogram over the bits `qubits` of a histogram over full basis indices.
pub fn marginal_counts(counts: &[u64], qubits: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; 1 << qubits.len()];
    for (i, &k) in counts.iter().enumerate() {
        out[gather_bits(i, qubits)] += k;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hellinger {
    pub distance: f64,
    pub fidelity: f64,
}

/// h(P,Q) = √(Σ(√p − √q)²/2) and fidelity (1 − h²)².
pub fn hellinger(p: &ProbDist, q: &ProbDist) -> Result<Hellinger> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch { left: p.len(), right: q.len() });
    }
    let sum: f64 = p.0.iter().zip(&q.0).map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2)).sum();
    let h2 = (sum / 2.0).min(1.0);
    Ok(Hellinger { distance: h2.sqrt(), fidelity: (1.0 - h2).powi(2) })
}

/// S⁽²⁾ = −log₂ purity, in bits.
pub fn renyi2(purity: f64) -> Result<f64> {
    if !(purity > 0.0 && purity <= 1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!("purity {purity} outside (0, 1]")));
    }
    Ok(-purity.min(1.0).log2() + 0.0)
}

/// Rényi-2 entropies in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub s2_coin: f64,
    pub s2_position: f64,
    pub s2_total: f64,
}

impl EntropyReport {
    pub fn from_purities(p: &PurityReport) -> Result<Self> {
        Ok(EntropyReport {
            s2_coin: renyi2(p.purity_coin)?,
            s2_position: renyi2(p.purity_position)?,
            s2_total: renyi2(p.purity_total)?,
        })
    }

    /// A part more mixed than the whole witnesses coin–position entanglement.
    pub fn witnesses_entanglement(&self) -> bool {
        self.s2_coin > self.s2_total || self.s2_position > self.s2_total
    }
}

/// Table-exact gate counts, depth and ancillae of `t` steps on the
/// `2^n`-cycle, excluding coin-state preparation.
pub fn closed_form_metrics(scheme: Scheme, n: u64, t: u64) -> Result<MetricsReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be ≥ 1".into()));
    }
    Ok(match scheme {
        Scheme::Present => MetricsReport {
            n1: t * (n + 1) + 2 * n,
            n2: t * (n - 1) + n * (n - 1),
            depth: t * n + 2 * (2 * n - 1),
            ancillae: 0,
        },
        Scheme::QftScheme => MetricsReport { n1: t * (3 * n + 1), n2: t * n * (n + 1), depth: 6 * t * n, ancillae: 0 },
        Scheme::IdLinearDepth => id_cost_model(n, t, IdVariant::LinearDepth)?,
        Scheme::IdAncilla => id_cost_model(n, t, IdVariant::Ancilla)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pd(v: &[f64]) -> ProbDist {
        ProbDist::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hellinger_identical() {
        let p = pd(&[0.2, 0.3, 0.5]);
        let h = hellinger(&p, &p).unwrap();
        assert_eq!((h.distance, h.fidelity), (0.0, 1.0));
    }

    #[test]
    fn hellinger_disjoint() {
        let h = hellinger(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0])).unwrap();
        assert_eq!((h.distance, h.fidelity), (1.0, 0.0));
    }

    #[test]
    fn hellinger_delta_vs_uniform() {
        // (1 − √½)² + ½ = 2 − √2, so h² = 1 − √2/2 and fidelity = ½
        let h = hellinger(&pd(&[1.0, 0.0]), &pd(&[0.5, 0.5])).unwrap();
        assert!((h.distance.powi(2) - (1.0 - 2f64.sqrt() / 2.0)).abs() < 1e-15);
        assert!((h.fidelity - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hellinger_errors() {
        assert!(hellinger(&pd(&[1.0]), &pd(&[0.5, 0.5])).is_err());
        assert!(ProbDist::new(vec![1.5, -0.5]).is_err());
        assert!(ProbDist::new(vec![0.5, 0.4]).is_err());
        assert!(ProbDist::from_counts(&[0, 0]).is_err());
    }

    #[test]
    fn renyi_values() {
        assert_eq!(renyi2(1.0).unwrap(), 0.0);
        assert_eq!(renyi2(0.5).unwrap(), 1.0);
        assert_eq!(renyi2(0.25).unwrap(), 2.0);
        assert!(renyi2(0.0).is_err());
        assert!(renyi2(1.1).is_err());
        assert!(renyi2(f64::NAN).is_err());
    }

    #[test]
    fn closed_forms_table_examples() {
        let r = closed_form_metrics(Scheme::Present, 2, 1).unwrap();
        assert_eq!((r.n1, r.n2, r.depth), (7, 3, 8));
        let r = closed_form_metrics(Scheme::QftScheme, 2, 1).unwrap();
        assert_eq!((r.n1, r.n2, r.depth), (7, 6, 12));
        let r = closed_form_metrics(Scheme::Present, 5, 0).unwrap();
        assert_eq!((r.n1, r.n2, r.depth), (10, 20, 18));
        assert!(closed_form_metrics(Scheme::IdAncilla, 3, 1).is_err());
    }

    fn normalize(v: Vec<f64>) -> ProbDist {
        let s: f64 = v.iter().sum();
        ProbDist(v.into_iter().map(|x| x / s).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn hellinger_symmetric_and_bounded(
            (a, b) in (1usize..9).prop_flat_map(|n| (
                proptest::collection::vec(0.001f64..1.0, n),
                proptest::collection::vec(0.001f64..1.0, n),
            ))
        ) {
            let (p, q) = (normalize(a), normalize(b));
            let pq = hellinger(&p, &q).unwrap();
            let qp = hellinger(&q, &p).unwrap();
            prop_assert_eq!(pq.distance, qp.distance);
            prop_assert!((0.0..=1.0).contains(&pq.distance));
            prop_assert!((0.0..=1.0).contains(&pq.fidelity));
        }
    }
}
