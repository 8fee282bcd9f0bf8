use pyo3::prelude::*;
use pyo3::types::PyDict;

use dtqw::dtqw as module;

fn run(code: &str) {
    pyo3::append_to_inittab!(module);
    Python::initialize();
    Python::attach(|py| {
        let globals = PyDict::new(py);
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.display(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn python_surface() {
    run(r#"
import math, json
import dtqw

cfg = dtqw.WalkConfig(2, 8)
assert cfg.n_qubits == 3 and cfg.scheme == "present"
sv = dtqw.simulate(cfg)
p = sv.position_distribution(2)
ref = dtqw.position_probabilities(cfg)
assert max(abs(a - b) for a, b in zip(p, ref)) < 1e-12
assert abs(p[0] - 1.0) < 1e-12

d, f = dtqw.hellinger(p, ref)
assert d < 1e-6 and abs(f - 1.0) < 1e-12

m = dtqw.closed_form_metrics("present", 2, 1)
assert (m["n1"], m["n2"], m["depth"], m["ancillae"]) == (7, 3, 8, 0), m

body = dtqw.build_walk(dtqw.WalkConfig(3, 2, scheme="qft"))
c2 = dtqw.Circuit.from_json(body.to_json())
assert len(c2) == len(body)

sv = dtqw.simulate(dtqw.WalkConfig(2, 3))
coin, pos, tot = sv.purities(2)
assert abs(coin - pos) < 1e-12 and abs(tot - 1.0) < 1e-12
est = dtqw.randomized_purities(dtqw.WalkConfig(2, 3), [[2], [0, 1]], 50, 2000, 5)
assert abs(est[0] - coin) < 0.1 and abs(est[1] - pos) < 0.1, (est, coin)

counts = dtqw.run_noisy(dtqw.build_walk(dtqw.WalkConfig(2, 2)), 1000, 1, p2=0.01)
assert sum(counts) == 1000 and len(counts) == 8

try:
    dtqw.WalkConfig(2, 1, theta=5.0)
    raise AssertionError("expected ValueError")
except ValueError:
    pass
assert set(dtqw.SCHEMES) == {"present", "qft", "id-linear", "id-ancilla"}
"#);
}
