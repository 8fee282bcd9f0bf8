use std::fs;
use std::path::{Path, PathBuf};

use dtqw_core::circuit::gate_counts;
use dtqw_core::metrics::{
    closed_form_metrics, exact_runner, hellinger, marginal_counts, randomized_purities, EntropyReport, Part, ProbDist,
};
use dtqw_core::noise::{derive_seed, noisy_runner, run_noisy};
use dtqw_core::statevec::{PurityReport, StateVector};
use dtqw_core::walks::{build_walk, walk_body, Scheme, WalkConfig};
use serde::Serialize;
use serde_json::json;

use crate::config::{EntropyMode, Experiment, OutputKind};
use crate::Format;

pub const WALK_SCHEMA: &str = "walk-v1";
pub const METRICS_SCHEMA: &str = "metrics-v1";
pub const COMPARE_SCHEMA: &str = "compare-v1";
pub const ENTROPY_SCHEMA: &str = "entropy-v1";

pub struct Sink {
    pub dir: PathBuf,
    pub format: Format,
}

#[derive(Debug)]
pub struct RuntimeError(pub String);

impl<E: std::fmt::Display> From<E> for RuntimeError {
    fn from(e: E) -> Self {
        RuntimeError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, RuntimeError>;

/// Cell contents; `None` stays empty in CSV and is null in JSON.
type Cell = Option<String>;

fn num(x: f64) -> Cell {
    Some(format!("{x}"))
}

struct Table {
    schema: &'static str,
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Sink {
    fn write_table(&self, stem: &str, table: &Table) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        match self.format {
            Format::Csv => {
                let path = self.dir.join(format!("{stem}.csv"));
                let mut w = csv::Writer::from_path(&path)?;
                w.write_record(&table.header)?;
                for row in &table.rows {
                    w.write_record(row.iter().map(|c| c.as_deref().unwrap_or("")))?;
                }
                w.flush()?;
                Ok(path)
            }
            Format::Json => {
                let path = self.dir.join(format!("{stem}.json"));
                let rows: Vec<serde_json::Map<String, serde_json::Value>> = table
                    .rows
                    .iter()
                    .map(|row| {
                        table
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, c)| {
                                let v = match c {
                                    None => serde_json::Value::Null,
                                    Some(s) => serde_json::from_str(s).unwrap_or_else(|_| json!(s)),
                                };
                                (h.clone(), v)
                            })
                            .collect()
                    })
                    .collect();
                let doc = json!({"schema": table.schema, "columns": table.header, "rows": rows});
                fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
                Ok(path)
            }
        }
    }

    fn write_meta(&self, command: &str, exp: Option<&Experiment>, schemas: &[&str], seed: Option<u64>) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut meta = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "schemas": schemas,
        });
        if let Some(s) = seed {
            meta["seed"] = json!(s);
        }
        if let Some(e) = exp {
            meta["config"] = serde_json::to_value(&e.raw)?;
            meta["resolved"] = json!({"theta": e.walk.theta, "phi": e.walk.phi, "n_sites": 1u64 << e.walk.n});
        }
        fs::write(self.dir.join(format!("{command}.meta.json")), serde_json::to_string_pretty(&meta)? + "\n")?;
        Ok(())
    }
}

pub fn walk_header(n_sites: usize) -> Vec<String> {
    let mut h = vec!["t".to_string()];
    h.extend((0..n_sites).map(|k| format!("p_{k}")));
    h.extend((0..n_sites).map(|k| format!("phat_{k}")));
    h.extend(["hellinger_fidelity", "s2_coin", "s2_position", "s2_total"].map(String::from));
    h
}

pub const METRICS_HEADER: [&str; 10] =
    ["scheme", "n", "t", "n1", "n2", "depth", "ancillae", "counted_n1", "counted_n2", "counted_depth"];
pub const COMPARE_HEADER: [&str; 3] = ["t", "scheme", "hellinger_fidelity"];
pub const ENTROPY_HEADER: [&str; 5] = ["t", "s2_coin", "s2_position", "s2_total", "witness"];

struct Step {
    ideal: ProbDist,
    measured: ProbDist,
    entropy: Option<EntropyReport>,
}

fn simulate(cfg: &WalkConfig) -> Result<(dtqw_core::Circuit, StateVector)> {
    let circ = build_walk(cfg)?;
    let mut state = StateVector::zero(circ.n_qubits());
    state.run_circuit(&circ)?;
    Ok((circ, state))
}

/// Purity estimates can stray outside [1/d, 1] from shot noise.
fn entropy_from_estimates(p: &[f64], n: usize) -> Result<EntropyReport> {
    let clamp = |x: f64, qubits: usize| x.clamp(0.5f64.powi(qubits as i32), 1.0);
    Ok(EntropyReport::from_purities(&PurityReport {
        purity_coin: clamp(p[0], 1),
        purity_position: clamp(p[1], n),
        purity_total: clamp(p[2], n + 1),
    })?)
}

fn run_step(exp: &Experiment, scheme: Scheme, t: usize, entropy: bool) -> Result<Step> {
    let n = exp.walk.n;
    let cfg = WalkConfig { steps: t, scheme, ..exp.walk.clone() };
    let (circ, state) = simulate(&cfg)?;
    let ideal = state.position_distribution(n)?;
    let seed = derive_seed(exp.raw.seed, t as u64);
    let measured = match &exp.raw.noise {
        None => ideal.clone(),
        Some(model) => {
            let counts = run_noisy(&circ, model, exp.raw.shots, seed)?;
            ProbDist::from_counts(&marginal_counts(&counts, &Part::Position.qubits(n)))?
        }
    };
    let entropy = if !entropy {
        None
    } else {
        Some(match exp.raw.entropy_mode {
            EntropyMode::Exact => EntropyReport::from_purities(&state.purities(n)?)?,
            EntropyMode::Randomized { n_unitaries, shots } => {
                let parts = [Part::Coin, Part::Position, Part::Total].map(|p| p.qubits(n));
                let est_seed = derive_seed(seed, 1);
                let est = match &exp.raw.noise {
                    None => randomized_purities(exact_runner(&state), n + 1, &parts, n_unitaries, shots, est_seed)?,
                    Some(model) => {
                        randomized_purities(noisy_runner(&circ, model), n + 1, &parts, n_unitaries, shots, est_seed)?
                    }
                };
                entropy_from_estimates(&est, n)?
            }
        })
    };
    Ok(Step { ideal, measured, entropy })
}

pub fn cmd_run(exp: &Experiment, sink: &Sink) -> Result<Vec<PathBuf>> {
    let n_sites = 1usize << exp.walk.n;
    let want_dist = exp.wants(OutputKind::Distribution);
    let want_fid = exp.wants(OutputKind::Fidelity);
    let want_ent = exp.wants(OutputKind::Entropy);
    let mut rows = Vec::new();
    for t in 0..=exp.walk.steps {
        let s = run_step(exp, exp.walk.scheme, t, want_ent)?;
        let mut row = vec![Some(t.to_string())];
        let dist_cells = |p: &ProbDist| -> Vec<Cell> {
            if want_dist {
                p.as_slice().iter().map(|&x| num(x)).collect()
            } else {
                vec![None; n_sites]
            }
        };
        row.extend(dist_cells(&s.ideal));
        row.extend(dist_cells(&s.measured));
        row.push(if want_fid { num(hellinger(&s.ideal, &s.measured)?.fidelity) } else { None });
        match s.entropy {
            Some(e) => row.extend([num(e.s2_coin), num(e.s2_position), num(e.s2_total)]),
            None => row.extend([None, None, None]),
        }
        rows.push(row);
    }
    let mut written = vec![sink.write_table("walk", &Table { schema: WALK_SCHEMA, header: walk_header(n_sites), rows })?];
    let mut schemas = vec![WALK_SCHEMA];
    if exp.wants(OutputKind::Metrics) {
        let n = exp.walk.n as u64;
        let schemes: Vec<Scheme> = Scheme::ALL.into_iter().filter(|s| n >= s.min_n() as u64).collect();
        written.push(sink.write_table("metrics", &metrics_table(&schemes, n..=n, 0..=exp.walk.steps as u64)?)?);
        schemas.push(METRICS_SCHEMA);
    }
    sink.write_meta("run", Some(exp), &schemas, Some(exp.raw.seed))?;
    Ok(written)
}

fn metrics_table(
    schemes: &[Scheme],
    ns: std::ops::RangeInclusive<u64>,
    ts: std::ops::RangeInclusive<u64>,
) -> Result<Table> {
    let mut rows = Vec::new();
    for &scheme in schemes {
        for n in ns.clone() {
            for t in ts.clone() {
                let closed = closed_form_metrics(scheme, n, t)?;
                let counted = if scheme.is_countable() {
                    let cfg = WalkConfig::new(n as usize, t as usize).with_scheme(scheme).with_localized_init(false);
                    let c = gate_counts(&walk_body(&cfg)?)?;
                    if (c.n1, c.n2, c.depth) != (closed.n1, closed.n2, closed.depth) {
                        return Err(RuntimeError(format!(
                            "{} n={n} t={t}: counted {c:?} differs from closed form {closed:?}",
                            scheme.name()
                        )));
                    }
                    Some(c)
                } else {
                    None
                };
                let mut row = vec![
                    Some(scheme.name().to_string()),
                    Some(n.to_string()),
                    Some(t.to_string()),
                    Some(closed.n1.to_string()),
                    Some(closed.n2.to_string()),
                    Some(closed.depth.to_string()),
                    Some(closed.ancillae.to_string()),
                ];
                match counted {
                    Some(c) => row.extend([c.n1, c.n2, c.depth].map(|v| Some(v.to_string()))),
                    None => row.extend([None, None, None]),
                }
                rows.push(row);
            }
        }
    }
    Ok(Table { schema: METRICS_SCHEMA, header: METRICS_HEADER.map(String::from).to_vec(), rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricsRequest {
    pub schemes: Vec<Scheme>,
    pub n: (u64, u64),
    pub t: (u64, u64),
}

pub fn cmd_metrics(req: &MetricsRequest, sink: &Sink) -> Result<Vec<PathBuf>> {
    let table = metrics_table(&req.schemes, req.n.0..=req.n.1, req.t.0..=req.t.1)?;
    let path = sink.write_table("metrics", &table)?;
    sink.write_meta("metrics", None, &[METRICS_SCHEMA], None)?;
    Ok(vec![path])
}

pub fn cmd_compare(exp: &Experiment, sink: &Sink) -> Result<Vec<PathBuf>> {
    let mut rows = Vec::new();
    for &scheme in &exp.raw.schemes {
        for t in 0..=exp.walk.steps {
            let s = run_step(exp, scheme, t, false)?;
            let f = hellinger(&s.ideal, &s.measured)?.fidelity;
            rows.push(vec![Some(t.to_string()), Some(scheme.name().to_string()), num(f)]);
        }
    }
    let header = COMPARE_HEADER.map(String::from).to_vec();
    let path = sink.write_table("compare", &Table { schema: COMPARE_SCHEMA, header, rows })?;
    sink.write_meta("compare-schemes", Some(exp), &[COMPARE_SCHEMA], Some(exp.raw.seed))?;
    Ok(vec![path])
}

pub fn cmd_entropy(exp: &Experiment, sink: &Sink) -> Result<Vec<PathBuf>> {
    let mut rows = Vec::new();
    for t in 0..=exp.walk.steps {
        let e = run_step(exp, exp.walk.scheme, t, true)?.entropy.expect("entropy requested");
        rows.push(vec![
            Some(t.to_string()),
            num(e.s2_coin),
            num(e.s2_position),
            num(e.s2_total),
            Some(e.witnesses_entanglement().to_string()),
        ]);
    }
    let header = ENTROPY_HEADER.map(String::from).to_vec();
    let path = sink.write_table("entropy", &Table { schema: ENTROPY_SCHEMA, header, rows })?;
    sink.write_meta("entropy", Some(exp), &[ENTROPY_SCHEMA], Some(exp.raw.seed))?;
    Ok(vec![path])
}

pub fn read_config(path: &Path) -> std::result::Result<Experiment, crate::config::ConfigError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path)
        .map_err(|e| crate::config::ConfigError(format!("{shown}: cannot read config: {e}")))?;
    crate::config::parse_config(&shown, &text)
}
