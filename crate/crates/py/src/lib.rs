//! Python bindings for `dtqw-core`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dtqw_core::circuit::{depth, gate_counts};
use dtqw_core::metrics::{self, exact_runner, randomized_purities as core_randomized, ProbDist};
use dtqw_core::noise::{self, noisy_runner};
use dtqw_core::{oracle, walks, NoiseModel, Scheme};

fn err(e: dtqw_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scheme(name: &str) -> PyResult<Scheme> {
    name.parse::<Scheme>().map_err(|e| PyValueError::new_err(e.to_string()))
}

fn coin_matrix(m: Vec<Vec<Complex64>>) -> PyResult<dtqw_core::linalg::Mat2> {
    if m.len() != 2 || m.iter().any(|r| r.len() != 2) {
        return Err(PyValueError::new_err("coin must be a 2x2 nested list"));
    }
    Ok([[m[0][0], m[0][1]], [m[1][0], m[1][1]]])
}

/// Walk parameters. `coin` is a 2x2 nested list of complex numbers; the
/// default is the Hadamard coin.
#[pyclass(name = "WalkConfig", skip_from_py_object)]
#[derive(Clone)]
pub struct PyWalkConfig {
    pub inner: walks::WalkConfig,
}

#[pymethods]
impl PyWalkConfig {
    #[new]
    #[pyo3(signature = (n, steps, theta=std::f64::consts::FRAC_PI_6, phi=std::f64::consts::FRAC_PI_2, coin=None, scheme="present", localized_init=true))]
    fn new(
        n: usize,
        steps: usize,
        theta: f64,
        phi: f64,
        coin: Option<Vec<Vec<Complex64>>>,
        scheme: &str,
        localized_init: bool,
    ) -> PyResult<Self> {
        let mut c = walks::WalkConfig::new(n, steps)
            .with_coin_state(theta, phi)
            .with_scheme(self::scheme(scheme)?)
            .with_localized_init(localized_init);
        if let Some(m) = coin {
            c = c.with_coin(coin_matrix(m)?);
        }
        c.validate().map_err(err)?;
        Ok(PyWalkConfig { inner: c })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn steps(&self) -> usize {
        self.inner.steps
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi
    }

    #[getter]
    fn scheme(&self) -> &'static str {
        self.inner.scheme.name()
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    fn __repr__(&self) -> String {
        format!(
            "WalkConfig(n={}, steps={}, theta={}, phi={}, scheme='{}')",
            self.inner.n,
            self.inner.steps,
            self.inner.theta,
            self.inner.phi,
            self.inner.scheme.name()
        )
    }
}

#[pyclass(name = "Circuit", skip_from_py_object)]
#[derive(Clone)]
pub struct PyCircuit {
    pub inner: dtqw_core::Circuit,
}

#[pymethods]
impl PyCircuit {
    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn depth(&self) -> PyResult<u64> {
        depth(&self.inner).map_err(err)
    }

    /// `{"n1", "n2", "depth", "ancillae"}`; circuits with unlowered
    /// multi-controlled gates raise.
    fn gate_counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = gate_counts(&self.inner).map_err(err)?;
        metrics_dict(py, &r)
    }

    fn inverse(&self) -> PyCircuit {
        PyCircuit { inner: self.inner.inverse() }
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<PyCircuit> {
        Ok(PyCircuit { inner: dtqw_core::Circuit::from_json(s).map_err(err)? })
    }

    /// Gate names in order.
    fn gate_names(&self) -> Vec<&'static str> {
        self.inner.gates().iter().map(|g| g.name()).collect()
    }
}

#[pyclass(name = "StateVector", skip_from_py_object)]
#[derive(Clone)]
pub struct PyStateVector {
    pub inner: dtqw_core::StateVector,
}

#[pymethods]
impl PyStateVector {
    #[new]
    fn new(n_qubits: usize) -> PyResult<Self> {
        if n_qubits == 0 || n_qubits > 30 {
            return Err(PyValueError::new_err("n_qubits must be in 1..=30"));
        }
        Ok(PyStateVector { inner: dtqw_core::StateVector::zero(n_qubits) })
    }

    #[staticmethod]
    fn from_amplitudes(amps: Vec<Complex64>) -> PyResult<Self> {
        Ok(PyStateVector { inner: dtqw_core::StateVector::from_amplitudes(amps).map_err(err)? })
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    fn run(&mut self, circuit: PyRef<'_, PyCircuit>) -> PyResult<()> {
        self.inner.run_circuit(&circuit.inner).map_err(err)
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    fn probabilities(&self) -> Vec<f64> {
        self.inner.probabilities()
    }

    fn position_distribution(&self, n_position: usize) -> PyResult<Vec<f64>> {
        Ok(self.inner.position_distribution(n_position).map_err(err)?.into_vec())
    }

    fn reduced_purity(&self, qubits: Vec<usize>) -> PyResult<f64> {
        self.inner.reduced_purity(&qubits).map_err(err)
    }

    /// `(coin, position, total)` purities for a walk register with
    /// `n_position` position qubits.
    fn purities(&self, n_position: usize) -> PyResult<(f64, f64, f64)> {
        let p = self.inner.purities(n_position).map_err(err)?;
        Ok((p.purity_coin, p.purity_position, p.purity_total))
    }

    /// `(coin, position, total)` Rényi-2 entropies in bits.
    fn entropies(&self, n_position: usize) -> PyResult<(f64, f64, f64)> {
        let p = self.inner.purities(n_position).map_err(err)?;
        let e = metrics::EntropyReport::from_purities(&p).map_err(err)?;
        Ok((e.s2_coin, e.s2_position, e.s2_total))
    }

    fn sample_counts(&self, shots: u64, seed: u64) -> PyResult<Vec<u64>> {
        self.inner.sample_counts(shots, seed).map_err(err)
    }

    fn overlap(&self, other: PyRef<'_, PyStateVector>) -> PyResult<f64> {
        self.inner.overlap(&other.inner).map_err(err)
    }
}

fn metrics_dict<'py>(py: Python<'py>, r: &dtqw_core::MetricsReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n1", r.n1)?;
    d.set_item("n2", r.n2)?;
    d.set_item("depth", r.depth)?;
    d.set_item("ancillae", r.ancillae)?;
    Ok(d)
}

#[pyfunction]
fn build_walk(config: PyRef<'_, PyWalkConfig>) -> PyResult<PyCircuit> {
    Ok(PyCircuit { inner: walks::build_walk(&config.inner).map_err(err)? })
}

/// Final state of the walk circuit.
#[pyfunction]
fn simulate(config: PyRef<'_, PyWalkConfig>) -> PyResult<PyStateVector> {
    let c = walks::build_walk(&config.inner).map_err(err)?;
    let mut sv = dtqw_core::StateVector::zero(c.n_qubits());
    sv.run_circuit(&c).map_err(err)?;
    Ok(PyStateVector { inner: sv })
}

/// Reference evolution without circuits: `(psi0, psi1)` per site.
#[pyfunction]
fn evolve(config: PyRef<'_, PyWalkConfig>) -> PyResult<(Vec<Complex64>, Vec<Complex64>)> {
    let w = oracle::evolve(&config.inner).map_err(err)?;
    Ok((w.psi0, w.psi1))
}

#[pyfunction]
fn position_probabilities(config: PyRef<'_, PyWalkConfig>) -> PyResult<Vec<f64>> {
    Ok(oracle::evolve(&config.inner).map_err(err)?.position_probabilities())
}

#[pyfunction]
fn closed_form_metrics<'py>(py: Python<'py>, scheme: &str, n: u64, t: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = metrics::closed_form_metrics(self::scheme(scheme)?, n, t).map_err(err)?;
    metrics_dict(py, &r)
}

/// `(distance, fidelity)`.
#[pyfunction]
fn hellinger(p: Vec<f64>, q: Vec<f64>) -> PyResult<(f64, f64)> {
    let h = metrics::hellinger(&ProbDist::new(p).map_err(err)?, &ProbDist::new(q).map_err(err)?).map_err(err)?;
    Ok((h.distance, h.fidelity))
}

#[pyfunction]
fn renyi2(purity: f64) -> PyResult<f64> {
    metrics::renyi2(purity).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (circuit, shots, seed, p1=0.0, p2=0.0, p_readout=0.0))]
fn run_noisy(circuit: PyRef<'_, PyCircuit>, shots: u64, seed: u64, p1: f64, p2: f64, p_readout: f64) -> PyResult<Vec<u64>> {
    let m = NoiseModel::new(p1, p2, p_readout).map_err(err)?;
    let inner = &circuit.inner;
    circuit.py().detach(|| noise::run_noisy(inner, &m, shots, seed)).map_err(err)
}

/// Randomized-measurement purity estimates of each qubit subset in
/// `parts`. Without noise arguments the walk state is sampled exactly;
/// otherwise each measurement goes through the trajectory sampler.
#[pyfunction]
#[pyo3(signature = (config, parts, n_unitaries, shots, seed, p1=0.0, p2=0.0, p_readout=0.0))]
#[allow(clippy::too_many_arguments)]
fn randomized_purities(
    py: Python<'_>,
    config: PyRef<'_, PyWalkConfig>,
    parts: Vec<Vec<usize>>,
    n_unitaries: usize,
    shots: u64,
    seed: u64,
    p1: f64,
    p2: f64,
    p_readout: f64,
) -> PyResult<Vec<f64>> {
    let m = NoiseModel::new(p1, p2, p_readout).map_err(err)?;
    let c = walks::build_walk(&config.inner).map_err(err)?;
    let nq = c.n_qubits();
    py.detach(|| {
        if m.is_ideal() {
            let mut sv = dtqw_core::StateVector::zero(nq);
            sv.run_circuit(&c)?;
            core_randomized(exact_runner(&sv), nq, &parts, n_unitaries, shots, seed)
        } else {
            core_randomized(noisy_runner(&c, &m), nq, &parts, n_unitaries, shots, seed)
        }
    })
    .map_err(err)
}

#[pymodule]
pub fn dtqw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWalkConfig>()?;
    m.add_class::<PyCircuit>()?;
    m.add_class::<PyStateVector>()?;
    m.add_function(wrap_pyfunction!(build_walk, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(position_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(hellinger, m)?)?;
    m.add_function(wrap_pyfunction!(renyi2, m)?)?;
    m.add_function(wrap_pyfunction!(run_noisy, m)?)?;
    m.add_function(wrap_pyfunction!(randomized_purities, m)?)?;
    m.add("SCHEMES", Scheme::ALL.iter().map(|s| s.name()).collect::<Vec<_>>())?;
    Ok(())
}
