//! Experiment configuration files.
//!
//! ```json
//! {
//!   "walk": {"n": 2, "steps": 19, "theta": "pi/6", "phi": "pi/2",
//!            "coin": "hadamard", "scheme": "present", "localized_init": true},
//!   "noise": {"p1": 0.0, "p2": 0.01, "p_readout": 0.0},
//!   "shots": 100000,
//!   "seed": 7,
//!   "outputs": ["distribution", "fidelity", "entropy"],
//!   "entropy_mode": {"randomized": {"n_unitaries": 300, "shots": 100000}},
//!   "schemes": ["present", "qft"]
//! }
//! ```
//!
//! Angles are radians, given as numbers or as literals such as `"pi/6"`,
//! `"-3*pi/4"`, `"2pi/3"`. The coin is `"hadamard"`, `"x"`, `"identity"`
//! or a 2×2 matrix of `[re, im]` pairs.

use std::f64::consts::PI;

use dtqw_core::linalg::{self, Mat2};
use dtqw_core::noise::NoiseModel;
use dtqw_core::walks::{Scheme, WalkConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Angle {
    Number(f64),
    Literal(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum CoinSpec {
    Named(String),
    Matrix([[[f64; 2]; 2]; 2]),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct WalkSection {
    pub n: usize,
    pub steps: usize,
    #[serde(default = "default_theta")]
    pub theta: Angle,
    #[serde(default = "default_phi")]
    pub phi: Angle,
    #[serde(default = "default_coin")]
    pub coin: CoinSpec,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    #[serde(default = "default_true")]
    pub localized_init: bool,
}

fn default_theta() -> Angle {
    Angle::Literal("pi/6".into())
}

fn default_phi() -> Angle {
    Angle::Literal("pi/2".into())
}

fn default_coin() -> CoinSpec {
    CoinSpec::Named("hadamard".into())
}

fn default_scheme() -> Scheme {
    Scheme::Present
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Distribution,
    Fidelity,
    Entropy,
    Metrics,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EntropyMode {
    Exact,
    Randomized { n_unitaries: usize, shots: u64 },
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub walk: WalkSection,
    #[serde(default)]
    pub noise: Option<NoiseModel>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default = "default_entropy_mode")]
    pub entropy_mode: EntropyMode,
    #[serde(default = "default_schemes")]
    pub schemes: Vec<Scheme>,
}

fn default_shots() -> u64 {
    100_000
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Distribution, OutputKind::Fidelity, OutputKind::Entropy]
}

fn default_entropy_mode() -> EntropyMode {
    EntropyMode::Exact
}

fn default_schemes() -> Vec<Scheme> {
    vec![Scheme::Present, Scheme::QftScheme]
}

/// A checked experiment with angles and coin resolved.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub raw: ExperimentConfig,
    pub walk: WalkConfig,
}

impl Experiment {
    pub fn wants(&self, kind: OutputKind) -> bool {
        self.raw.outputs.contains(&kind)
    }
}

/// Parses an angle literal: optional sign, optional coefficient, optional
/// `pi` (with or without `*`), optional `/denominator`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let bad = || format!("cannot read angle `{s}` (expected e.g. 0.5, pi, pi/6, -3*pi/4)");
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = match compact.split_once('/') {
        Some((a, b)) => (a.to_string(), Some(b.parse::<f64>().map_err(|_| bad())?)),
        None => (compact.clone(), None),
    };
    let (sign, body) = match num.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, num.strip_prefix('+').unwrap_or(&num)),
    };
    let value = match body.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let k = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| bad())? };
            k * PI
        }
        None => body.parse::<f64>().map_err(|_| bad())?,
    };
    let value = sign * value;
    match den {
        Some(0.0) => Err(bad()),
        Some(d) => Ok(value / d),
        None if value.is_finite() => Ok(value),
        None => Err(bad()),
    }
}

fn resolve_angle(a: &Angle) -> Result<f64, String> {
    match a {
        Angle::Number(x) => Ok(*x),
        Angle::Literal(s) => parse_angle(s),
    }
}

fn resolve_coin(c: &CoinSpec) -> Result<Mat2, String> {
    match c {
        CoinSpec::Named(name) => match name.as_str() {
            "hadamard" => Ok(linalg::hadamard()),
            "x" => Ok(linalg::pauli_x()),
            "identity" => Ok(linalg::identity()),
            other => Err(format!("unknown coin `{other}` (hadamard, x, identity or a 2×2 matrix)")),
        },
        CoinSpec::Matrix(m) => {
            let z = |e: [f64; 2]| linalg::c(e[0], e[1]);
            Ok([[z(m[0][0]), z(m[0][1])], [z(m[1][0]), z(m[1][1])]])
        }
    }
}

/// 1-based line of the first occurrence of `"key"` in the source, if any.
fn line_of(text: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

fn anchored(path: &str, text: &str, key: &str, msg: impl std::fmt::Display) -> ConfigError {
    match line_of(text, key) {
        Some(line) => ConfigError(format!("{path}:{line}: {key}: {msg}")),
        None => ConfigError(format!("{path}: {key}: {msg}")),
    }
}

/// Parses and validates a config; errors name the file and line.
pub fn parse_config(path: &str, text: &str) -> Result<Experiment, ConfigError> {
    let raw: ExperimentConfig = serde_json::from_str(text)
        .map_err(|e| {
            let msg = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
            ConfigError(format!("{path}:{}:{}: {msg}", e.line(), e.column()))
        })?;
    let w = &raw.walk;
    let theta = resolve_angle(&w.theta).map_err(|m| anchored(path, text, "theta", m))?;
    let phi = resolve_angle(&w.phi).map_err(|m| anchored(path, text, "phi", m))?;
    let coin = resolve_coin(&w.coin).map_err(|m| anchored(path, text, "coin", m))?;
    let walk = WalkConfig {
        n: w.n,
        steps: w.steps,
        theta,
        phi,
        coin,
        scheme: w.scheme,
        localized_init: w.localized_init,
    };
    if let Err(e) = walk.validate() {
        let key = match e.to_string() {
            m if m.contains('θ') => "theta",
            m if m.contains('φ') => "phi",
            m if m.contains("unitary") => "coin",
            _ => "n",
        };
        return Err(anchored(path, text, key, e));
    }
    if let Some(noise) = &raw.noise {
        noise.validate().map_err(|e| anchored(path, text, "noise", e))?;
    }
    let sampling = raw.noise.is_some() || matches!(raw.entropy_mode, EntropyMode::Randomized { .. });
    if sampling && raw.shots == 0 {
        return Err(anchored(path, text, "shots", "must be ≥ 1 when sampling"));
    }
    if let EntropyMode::Randomized { n_unitaries, shots } = raw.entropy_mode {
        if n_unitaries < 2 || shots < 2 {
            return Err(anchored(path, text, "entropy_mode", "randomized mode needs n_unitaries ≥ 2 and shots ≥ 2"));
        }
    }
    if raw.schemes.is_empty() {
        return Err(anchored(path, text, "schemes", "list at least one scheme"));
    }
    Ok(Experiment { raw, walk })
}
