//! Python bindings for the tenspec spectral calculus.
//!
//! Matrices cross the boundary as lists of rows of Python complex numbers;
//! descriptors and reports as plain dicts mirroring the CLI's JSON wire
//! format. All heavy lifting stays in the core crate.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyInt, PyList, PyNone, PyString};
use tenspec::matrix::{ComplexMatrix, Tolerance};
use tenspec::spectral::SpectralClassification;

fn value_err(msg: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

fn runtime_err(msg: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(msg.to_string())
}

fn to_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    if n == 0 {
        return Err(value_err("matrix must have at least one row"));
    }
    let m = rows[0].len();
    if rows.iter().any(|r| r.len() != m) {
        return Err(value_err("all rows must have the same length"));
    }
    let data: Vec<Complex64> = rows.into_iter().flatten().collect();
    ComplexMatrix::new(n, m, data).map_err(value_err)
}

fn matrix_to_py(py: Python<'_>, a: &ComplexMatrix) -> PyResult<PyObject> {
    let outer = PyList::empty_bound(py);
    for i in 0..a.rows() {
        let row = PyList::empty_bound(py);
        for j in 0..a.cols() {
            row.append(a[(i, j)])?;
        }
        outer.append(row)?;
    }
    Ok(outer.into())
}

/// Recursively converts a JSON value into the matching Python object.
fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => PyBool::new_bound(py, *b).to_object(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.to_object(py)
            } else {
                n.as_f64()
                    .ok_or_else(|| value_err("number out of range"))?
                    .to_object(py)
            }
        }
        serde_json::Value::String(s) => s.to_object(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into()
        }
    })
}

/// Recursively converts a Python object (dicts, lists, scalars) into JSON.
fn py_to_json(obj: &Bound<'_, PyAny>) -> PyResult<serde_json::Value> {
    if obj.is_instance_of::<PyNone>() {
        return Ok(serde_json::Value::Null);
    }
    if obj.is_instance_of::<PyBool>() {
        return Ok(serde_json::Value::Bool(obj.extract::<bool>()?));
    }
    if obj.is_instance_of::<PyInt>() {
        return Ok(serde_json::Value::from(obj.extract::<i64>()?));
    }
    if obj.is_instance_of::<PyFloat>() {
        let f = obj.extract::<f64>()?;
        return serde_json::Number::from_f64(f)
            .map(serde_json::Value::Number)
            .ok_or_else(|| value_err("non-finite float in descriptor"));
    }
    if obj.is_instance_of::<PyString>() {
        return Ok(serde_json::Value::String(obj.extract::<String>()?));
    }
    if let Ok(list) = obj.downcast::<PyList>() {
        let mut items = Vec::with_capacity(list.len());
        for item in list.iter() {
            items.push(py_to_json(&item)?);
        }
        return Ok(serde_json::Value::Array(items));
    }
    if let Ok(tuple) = obj.downcast::<pyo3::types::PyTuple>() {
        let mut items = Vec::with_capacity(tuple.len());
        for item in tuple.iter() {
            items.push(py_to_json(&item)?);
        }
        return Ok(serde_json::Value::Array(items));
    }
    if let Ok(dict) = obj.downcast::<PyDict>() {
        let mut map = serde_json::Map::new();
        for (k, v) in dict.iter() {
            map.insert(k.extract::<String>()?, py_to_json(&v)?);
        }
        return Ok(serde_json::Value::Object(map));
    }
    Err(value_err(format!(
        "unsupported value of type {} in descriptor",
        obj.get_type().name()?
    )))
}

fn to_descriptor(obj: &Bound<'_, PyAny>) -> PyResult<SpectralClassification> {
    let json = py_to_json(obj)?;
    serde_json::from_value(json).map_err(|e| value_err(format!("invalid descriptor: {e}")))
}

fn serialize_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let json = serde_json::to_value(value).map_err(runtime_err)?;
    json_to_py(py, &json)
}

/// Drazin inverse and core-nilpotent decomposition of a square matrix.
///
/// Returns a dict with `index`, `core_rank`, `drazin` (list of rows of
/// complex numbers), and the three axiom residuals.
#[pyfunction]
fn drazin(py: Python<'_>, matrix: Vec<Vec<Complex64>>) -> PyResult<PyObject> {
    let a = to_matrix(matrix)?;
    let tol = Tolerance::for_matrix(&a);
    let dec = tenspec::drazin_inverse(&a, &tol).map_err(runtime_err)?;
    let out = PyDict::new_bound(py);
    out.set_item("index", dec.index)?;
    out.set_item("core_rank", dec.core_rank)?;
    out.set_item("drazin", matrix_to_py(py, &dec.drazin)?)?;
    let residuals = PyDict::new_bound(py);
    residuals.set_item("power", dec.residual_power)?;
    residuals.set_item("idempotent", dec.residual_idempotent)?;
    residuals.set_item("commute", dec.residual_commute)?;
    out.set_item("residuals", residuals)?;
    Ok(out.into())
}

/// Drazin index (the least power at which ranks stabilize).
#[pyfunction]
fn index(matrix: Vec<Vec<Complex64>>) -> PyResult<usize> {
    let a = to_matrix(matrix)?;
    let tol = Tolerance::for_matrix(&a);
    tenspec::index_of(&a, &tol).map_err(runtime_err)
}

/// Pole order of `value` as an eigenvalue of the matrix.
#[pyfunction]
fn pole_order(matrix: Vec<Vec<Complex64>>, value: Complex64) -> PyResult<usize> {
    let a = to_matrix(matrix)?;
    let tol = Tolerance::for_matrix(&a);
    tenspec::pole_order(&a, value, &tol).map_err(runtime_err)
}

/// Spectral classification of a matrix, as a descriptor dict
/// `{"points": [{"value": [re, im], "tag": ..., "order": ...}, ...]}`.
#[pyfunction]
fn classify(py: Python<'_>, matrix: Vec<Vec<Complex64>>) -> PyResult<PyObject> {
    let a = to_matrix(matrix)?;
    let tol = Tolerance::for_matrix(&a);
    let cls = tenspec::classify_matrix(&a, &tol).map_err(runtime_err)?;
    serialize_to_py(py, &cls)
}

/// Product-spectrum calculus for a tensor product of two descriptors;
/// returns the full report dict (result classification, zero decision,
/// cross-term sets, equality predicates).
#[pyfunction]
fn tensor(py: Python<'_>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    let da = to_descriptor(a)?;
    let db = to_descriptor(b)?;
    let report = tenspec::tensor_classify(&da, &db, 0.0).map_err(value_err)?;
    serialize_to_py(py, &report)
}

/// Elementary operator A ↦ S·A·T: builds the matrix form, checks the
/// spectrum product law, and returns the symbolic classification report.
#[pyfunction]
fn elementary(
    py: Python<'_>,
    s: Vec<Vec<Complex64>>,
    t: Vec<Vec<Complex64>>,
) -> PyResult<PyObject> {
    let s = to_matrix(s)?;
    let t = to_matrix(t)?;
    let tol = Tolerance::for_matrix(&s);
    let op = tenspec::build_elementary(&s, &t, &tol).map_err(runtime_err)?;
    let chk = tenspec::spectrum_check(&op, 1e-7).map_err(runtime_err)?;
    let cls_s = tenspec::classify_matrix(&s, &Tolerance::for_matrix(&s)).map_err(runtime_err)?;
    let cls_t = tenspec::classify_matrix(&t, &Tolerance::for_matrix(&t)).map_err(runtime_err)?;
    let prediction = tenspec::elementary_classify(
        &cls_s,
        &cls_t,
        Tolerance::for_matrix(&op.matrix_form).eig_cluster,
    )
    .map_err(runtime_err)?;

    let out = PyDict::new_bound(py);
    out.set_item("matrix_form", matrix_to_py(py, &op.matrix_form)?)?;
    out.set_item("probe_residual", op.probe_residual)?;
    out.set_item("spectrum_matched", chk.matched)?;
    out.set_item("max_distance", chk.max_distance)?;
    let spectrum = PyList::empty_bound(py);
    for &(z, count) in &chk.operator_spectrum {
        let entry = PyDict::new_bound(py);
        entry.set_item("value", z)?;
        entry.set_item("multiplicity", count)?;
        spectrum.append(entry)?;
    }
    out.set_item("operator_spectrum", spectrum)?;
    out.set_item("prediction", serialize_to_py(py, &prediction)?)?;
    Ok(out.into())
}

/// Runs one verification suite (`"drazin"`, `"matrix-tensor"`,
/// `"elementary"`, or `"symbolic"`) and returns a summary dict with the
/// failing reports, if any.
#[pyfunction]
#[pyo3(signature = (suite, trials = 50, seed = 0))]
fn verify(py: Python<'_>, suite: &str, trials: usize, seed: u64) -> PyResult<PyObject> {
    let reports = tenspec::run_suite(suite, trials, seed, tenspec::TolOverrides::default())
        .ok_or_else(|| value_err(format!("unknown suite {suite:?}")))?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    let out = PyDict::new_bound(py);
    out.set_item("suite", suite)?;
    out.set_item("trials", reports.len())?;
    out.set_item("passed", reports.len() - failed.len())?;
    out.set_item("failed", failed.len())?;
    let failures = PyList::empty_bound(py);
    for r in failed {
        failures.append(serialize_to_py(py, r)?)?;
    }
    out.set_item("failures", failures)?;
    Ok(out.into())
}

#[pymodule]
fn tenspec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(drazin, m)?)?;
    m.add_function(wrap_pyfunction!(index, m)?)?;
    m.add_function(wrap_pyfunction!(pole_order, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(tensor, m)?)?;
    m.add_function(wrap_pyfunction!(elementary, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
