//! Circuit builders for the discrete-time quantum walk on the 2^n-cycle.
//!
//! Register layout: position qubits `0..n` (qubit 0 least significant),
//! coin on qubit `n`. Every scheme realizes the shift
//! S|s, j⟩ = |s, (j + 2s − 1) mod 2^n⟩, i.e. coin 0 steps down and coin 1
//! steps up.
//!
//! The Fourier-frame schemes use the QFT without its terminal swap layer,
//! F̃ = τF, so the phase layers come qubit-reversed: Ω̃ puts R_{k+1} on
//! position qubit k.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Control, Gate, MetricsReport};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};

/// Angle of R_k = diag(1, e^{2πi/2^k}).
pub fn r_angle(k: usize) -> f64 {
    2.0 * PI / (1u64 << k) as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// One QFT, t diagonal steps, one IQFT.
    Present,
    /// Increment diagonalized by a QFT/IQFT pair inside every step.
    #[serde(rename = "qft")]
    QftScheme,
    /// Generalized-CNOT increment, linear-depth Toffoli cost model.
    #[serde(rename = "id-linear")]
    IdLinearDepth,
    /// Generalized-CNOT increment, ancilla-based Toffoli cost model.
    #[serde(rename = "id-ancilla")]
    IdAncilla,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Present, Scheme::QftScheme, Scheme::IdLinearDepth, Scheme::IdAncilla];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Present => "present",
            Scheme::QftScheme => "qft",
            Scheme::IdLinearDepth => "id-linear",
            Scheme::IdAncilla => "id-ancilla",
        }
    }

    /// Smallest n the scheme's cost model covers. Circuits of every scheme
    /// can be built and simulated for any n ≥ 1.
    pub fn min_n(self) -> usize {
        match self {
            Scheme::Present | Scheme::QftScheme => 1,
            Scheme::IdLinearDepth => 3,
            Scheme::IdAncilla => 4,
        }
    }

    /// Whether built circuits can be gate-counted directly.
    pub fn is_countable(self) -> bool {
        matches!(self, Scheme::Present | Scheme::QftScheme)
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scheme `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdVariant {
    LinearDepth,
    Ancilla,
}

/// A walk of `steps` steps on the `2^n`-cycle from
/// [cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩] ⊗ |0_p⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    pub n: usize,
    pub steps: usize,
    pub theta: f64,
    pub phi: f64,
    pub coin: Mat2,
    pub scheme: Scheme,
    /// Replace the opening QFT of the present scheme by a Hadamard layer.
    pub localized_init: bool,
}

impl WalkConfig {
    /// Hadamard walk with coin state θ = π/6, φ = π/2, present scheme.
    pub fn new(n: usize, steps: usize) -> Self {
        WalkConfig {
            n,
            steps,
            theta: PI / 6.0,
            phi: PI / 2.0,
            coin: linalg::hadamard(),
            scheme: Scheme::Present,
            localized_init: true,
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_coin_state(mut self, theta: f64, phi: f64) -> Self {
        self.theta = theta;
        self.phi = phi;
        self
    }

    pub fn with_coin(mut self, coin: Mat2) -> Self {
        self.coin = coin;
        self
    }

    pub fn with_localized_init(mut self, on: bool) -> Self {
        self.localized_init = on;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("need at least one position qubit".into()));
        }
        if self.n + 1 > 24 {
            return Err(Error::InvalidArgument(format!("n = {} is too large for dense simulation", self.n)));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::InvalidArgument(format!("θ = {} outside [0, π]", self.theta)));
        }
        if !(0.0..2.0 * PI).contains(&self.phi) {
            return Err(Error::InvalidArgument(format!("φ = {} outside [0, 2π)", self.phi)));
        }
        let defect = linalg::unitarity_defect(&self.coin);
        if defect > linalg::UNITARY_TOL {
            return Err(Error::NonUnitary { defect });
        }
        Ok(())
    }
}

/// QFT on `n` qubits. Without swaps this is F̃ with F = τF̃.
pub fn qft(n: usize, with_swaps: bool) -> Circuit {
    let mut c = Circuit::with_label(n, if with_swaps { "qft" } else { "qft-noswap" });
    for target in (0..n).rev() {
        c.emit(Gate::H(target));
        for control in (0..target).rev() {
            c.emit(Gate::ControlledPhase { control, target, angle: r_angle(target - control + 1) });
        }
    }
    if with_swaps {
        for k in 0..n / 2 {
            let (a, b) = (k, n - 1 - k);
            c.emit(Gate::CX { control: a, target: b });
            c.emit(Gate::CX { control: b, target: a });
            c.emit(Gate::CX { control: a, target: b });
        }
    }
    c
}

/// n parallel phase gates: Ω = diag(ω^j) puts R_{n−k} on qubit k, the
/// qubit-reversed Ω̃ puts R_{k+1} on qubit k; `dagger` conjugates.
pub fn omega_layer(n: usize, dagger: bool, tilde: bool) -> Circuit {
    let mut c = Circuit::with_label(n, "omega");
    let sign = if dagger { -1.0 } else { 1.0 };
    for q in (0..n).rev() {
        let k = if tilde { q + 1 } else { n - q };
        c.emit(Gate::Phase { target: q, angle: sign * r_angle(k) });
    }
    c
}

/// One-qubit circuit taking |0⟩ to cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
pub fn prepare_coin_state(theta: f64, phi: f64) -> Circuit {
    let (s, co) = (theta / 2.0).sin_cos();
    let e = linalg::cis(phi);
    let m = [[linalg::c(co, 0.0), linalg::c(-s, 0.0)], [e * s, e * co]];
    let mut c = Circuit::with_label(1, "coin-prep");
    c.emit(Gate::Unitary { target: 0, matrix: m });
    c
}

/// The repeated block of the present scheme in the Fourier frame:
/// coin ⊗ Ω̃† as one parallel layer, then coin-controlled R_k on position
/// qubit k for k = n−1 … 1 (the factor on qubit 0 is the identity).
pub fn build_present_step(n: usize, coin: &Mat2) -> Circuit {
    let mut c = Circuit::with_label(n + 1, "present-step");
    c.emit(Gate::Unitary { target: n, matrix: *coin });
    let layer = omega_layer(n, true, true);
    c.append(&layer).expect("position register fits");
    for q in (1..n).rev() {
        c.emit(Gate::ControlledPhase { control: n, target: q, angle: r_angle(q) });
    }
    c
}

/// Cyclic increment |j⟩ → |j + 1 mod 2^n⟩: generalized CNOT cascade from
/// the most significant qubit down, then X on qubit 0.
pub fn increment_circuit(n: usize) -> Circuit {
    let mut c = Circuit::with_label(n, "increment");
    for target in (1..n).rev() {
        if target == 1 {
            c.emit(Gate::CX { control: 0, target: 1 });
        } else {
            let controls = (0..target).map(Control::on_one).collect();
            c.emit(Gate::Mcx { controls, target });
        }
    }
    c.emit(Gate::X(0));
    c
}

/// Open-circle CNOTs from the coin: X^{⊗n} on the position register when
/// the coin is |0⟩, which turns the increment into a decrement.
fn coin_zero_flips(c: &mut Circuit, n: usize, ascending: bool) {
    let order: Vec<usize> = if ascending { (0..n).collect() } else { (0..n).rev().collect() };
    for q in order {
        c.emit(Gate::Mcx { controls: vec![Control::on_zero(n)], target: q });
    }
}

/// One step of a scheme built around a (non-controlled) increment.
fn increment_based_step(n: usize, coin: &Mat2, increment: &Circuit, label: &str) -> Circuit {
    let mut c = Circuit::with_label(n + 1, label);
    c.emit(Gate::Unitary { target: n, matrix: *coin });
    // the last flip must land on qubit n−1, where F̃ starts
    coin_zero_flips(&mut c, n, true);
    c.append(increment).expect("position register fits");
    coin_zero_flips(&mut c, n, false);
    c
}

/// One step of the QFT scheme: increment as F̃† Ω̃ F̃.
pub fn qft_scheme_step(n: usize, coin: &Mat2) -> Circuit {
    let mut inc = qft(n, false);
    inc.append(&omega_layer(n, false, true)).expect("same register");
    inc.append(&qft(n, false).inverse()).expect("same register");
    increment_based_step(n, coin, &inc, "qft-step")
}

/// One step of the increment/decrement scheme with generalized CNOTs.
pub fn id_scheme_step(n: usize, coin: &Mat2) -> Circuit {
    increment_based_step(n, coin, &increment_circuit(n), "id-step")
}

/// Full walk circuit starting from |0…0⟩, coin-state preparation included.
pub fn build_walk(config: &WalkConfig) -> Result<Circuit> {
    config.validate()?;
    let n = config.n;
    let mut c = Circuit::with_label(n + 1, format!("{}-walk-n{}-t{}", config.scheme.name(), n, config.steps));
    c.append_mapped(&prepare_coin_state(config.theta, config.phi), &[n])?;
    c.append(&walk_body(config)?)?;
    Ok(c)
}

/// The walk without the coin-state preparation; the object the cost
/// models describe.
pub fn walk_body(config: &WalkConfig) -> Result<Circuit> {
    config.validate()?;
    let n = config.n;
    let mut c = Circuit::with_label(n + 1, format!("{}-body-n{}-t{}", config.scheme.name(), n, config.steps));
    match config.scheme {
        Scheme::Present => {
            if config.localized_init {
                for q in (0..n).rev() {
                    c.emit(Gate::H(q));
                }
            } else {
                c.append(&qft(n, false))?;
            }
            c.barrier_all();
            let step = build_present_step(n, &config.coin);
            for _ in 0..config.steps {
                c.append(&step)?;
            }
            c.barrier_all();
            c.append(&qft(n, false).inverse())?;
        }
        Scheme::QftScheme => {
            let step = qft_scheme_step(n, &config.coin);
            for _ in 0..config.steps {
                c.append(&step)?;
            }
        }
        Scheme::IdLinearDepth | Scheme::IdAncilla => {
            let step = id_scheme_step(n, &config.coin);
            for _ in 0..config.steps {
                c.append(&step)?;
            }
        }
    }
    Ok(c)
}

/// Cost of `t` steps of the increment-based scheme when each k-Toffoli of
/// the increment is realized by a linear-depth circuit or with ancillae.
pub fn id_cost_model(n: u64, t: u64, variant: IdVariant) -> Result<MetricsReport> {
    Ok(match variant {
        IdVariant::LinearDepth => {
            if n < 3 {
                return Err(Error::InvalidArgument(format!("linear-depth cost model needs n ≥ 3 (got {n})")));
            }
            MetricsReport {
                n1: 2 * t,
                n2: t * (2 * n.pow(3) + 13 * n - 6 * n.pow(2) - 3) / 3,
                depth: t * (4 * n * n + 19 - 14 * n),
                ancillae: 0,
            }
        }
        IdVariant::Ancilla => {
            if n < 4 {
                return Err(Error::InvalidArgument(format!("ancilla cost model needs n ≥ 4 (got {n})")));
            }
            MetricsReport {
                n1: 2 * t,
                n2: t * (10 * n * n + 66 - 48 * n),
                depth: t * (8 * n * n + 55 - 38 * n),
                ancillae: n - 3,
            }
        }
    })
}
