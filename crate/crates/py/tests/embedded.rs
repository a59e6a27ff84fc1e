use pyo3::prelude::*;
use pyo3::wrap_pymodule;

fn with_module(code: &std::ffi::CStr) -> PyResult<()> {
    Python::initialize();
    Python::attach(|py| {
        let module = wrap_pymodule!(dimer_exciton_py::dimer_exciton_py)(py);
        py.import("sys")?
            .getattr("modules")?
            .set_item("dimer_exciton_py", module)?;
        py.run(code, None, None)
    })
}

#[test]
fn table_values_through_python() {
    with_module(
        c"
import math
import dimer_exciton_py as dx
p = dx.DimerParams(120.0, 0.0, -96.0, 35.0, 1.0)
eta, inv = dx.find_alpha_minimum(p, math.pi)
assert abs(eta - 2.24) <= 0.01 and abs(inv - 1.33) <= 0.0067, (eta, inv)
e = dx.estimate_eta(p, 0.0, 22.0)
assert abs(e['eta_abs'] - 0.71) <= 0.01 and abs(e['lambda2'] - 102) <= 1, e
assert repr(p).startswith('DimerParams(')
",
    )
    .unwrap();
}

#[test]
fn errors_map_to_python_exceptions() {
    with_module(
        c"
import dimer_exciton_py as dx
p = dx.DimerParams(120.0, 0.0, -96.0, 35.0, 1.0)
for call, exc in [
    (lambda: dx.estimate_eta(p, 0.0, 10.0), RuntimeError),
    (lambda: dx.bose_occupation(-1.0, 300.0), ValueError),
    (lambda: dx.evolve([[1]], [1.0], 0.001, 0.1, 80.0, -200.0, 0.3), ValueError),
    (lambda: dx.evolve([[0,0,0],[0,1,0],[0,0,0]], [1.0], 0.001, 0.1, 80.0, -200.0, 0.3, method='euler'), ValueError),
]:
    try:
        call()
    except exc:
        pass
    else:
        raise AssertionError(call)
",
    )
    .unwrap();
}

#[test]
fn frozen_evolution_without_decay() {
    with_module(
        c"
import dimer_exciton_py as dx
rho = [[0,0,0],[0,0.5,0.5],[0,0.5,0.5]]
out = dx.evolve(rho, [0.0, 250.0], 0.0, 0.3, 80.0, -200.0, 0.4, basis='exciton')
assert abs(out[1][1][1] - 0.5) < 1e-14 and abs(out[1][2][2] - 0.5) < 1e-14
assert abs(abs(out[1][1][2]) - 0.5) < 1e-14
",
    )
    .unwrap();
}
