//! Python bindings: `import pyconjcount`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use conjcount::counting::{
    build_conjugate_ideal, conjecture_check as core_conjecture, family_count as core_family, harmonic_bound as core_bound,
    ConjSystem, CountOptions, HarmonicInstance,
};
use conjcount::forms::{hermitian_killing_form, signature as core_signature, HermitianMatrix};
use conjcount::oracle::OracleConfig;
use conjcount::parse::{parse_constant, parse_sources, parse_system};
use conjcount::report::{count_document, matrix_strings, monomial_name};
use conjcount::{buchberger, Error, GaussianRational, GenPoly, Matrix, QuotientAlgebra};

create_exception!(pyconjcount, ConjCountError, PyException);

fn to_py(e: Error) -> PyErr {
    ConjCountError::new_err(format!("{}: {e}", e.kind()))
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(f)) => f.into_pyobject(py)?.into_any(),
            _ => py.None().into_bound(py),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(json_to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, json_to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| ConjCountError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

/// A polynomial in `z` and `conj(z)` with exact Gaussian-rational
/// coefficients.
#[pyclass(name = "Poly", module = "pyconjcount", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: GenPoly,
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        let mut polys = parse_system(expr).map_err(to_py)?;
        if polys.len() != 1 {
            return Err(ConjCountError::new_err("expected a single polynomial"));
        }
        Ok(Self { inner: polys.remove(0) })
    }

    #[getter]
    fn num_pairs(&self) -> usize {
        self.inner.num_pairs()
    }

    /// Conjugate coefficients and swap `z` with `conj(z)`.
    fn star(&self) -> Self {
        Self { inner: self.inner.star() }
    }

    fn is_star_symmetric(&self) -> bool {
        self.inner.is_star_symmetric()
    }

    /// Evaluate at independent values for `z_1..z_r` and `w_1..w_r`.
    fn evaluate(&self, z: Vec<Complex64>, w: Vec<Complex64>) -> PyResult<Complex64> {
        let r = self.inner.num_pairs();
        if z.len() != r || w.len() != r {
            return Err(ConjCountError::new_err(format!("expected {r} values for z and for w")));
        }
        let point: Vec<Complex64> = z.into_iter().chain(w).collect();
        Ok(self.inner.evaluate(&point))
    }

    /// Evaluate on the conjugation locus `w = conj(z)`.
    fn evaluate_conj(&self, z: Vec<Complex64>) -> PyResult<Complex64> {
        let w = z.iter().map(|c| c.conj()).collect();
        self.evaluate(z, w)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn system_from(py_system: &Bound<'_, PyAny>, xi: Option<&str>) -> PyResult<(ConjSystem, Option<GenPoly>)> {
    let mut sources: Vec<String> = if let Ok(s) = py_system.extract::<String>() {
        vec![s]
    } else {
        py_system.extract::<Vec<String>>()?
    };
    let n = sources.len();
    if let Some(x) = xi {
        sources.push(x.to_string());
    }
    let refs: Vec<&str> = sources.iter().map(String::as_str).collect();
    let mut parsed = parse_sources(&refs, None).map_err(to_py)?;
    let weight = if xi.is_some() {
        let mut v = parsed.pop().unwrap_or_default();
        if v.len() != 1 {
            return Err(ConjCountError::new_err("weight must be a single polynomial"));
        }
        Some(v.remove(0))
    } else {
        None
    };
    let polys: Vec<GenPoly> = parsed.into_iter().take(n).flatten().collect();
    Ok((ConjSystem::new(polys).map_err(to_py)?, weight))
}

/// Count solutions; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (system, xi=None, oracle=false, minors=false))]
fn count_roots<'py>(
    py: Python<'py>,
    system: &Bound<'py, PyAny>,
    xi: Option<&str>,
    oracle: bool,
    minors: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let (sys, xi) = system_from(system, xi)?;
    let cfg = OracleConfig::from_env();
    let doc = count_document(&sys, &CountOptions { xi, minors }, oracle.then_some(&cfg)).map_err(to_py)?;
    to_dict(py, &doc)
}

/// Matrix of the Hermitian trace form with its basis and signature.
#[pyfunction]
#[pyo3(signature = (system, xi=None))]
fn hermitian_form<'py>(py: Python<'py>, system: &Bound<'py, PyAny>, xi: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let (sys, xi) = system_from(system, xi)?;
    let xi = xi.unwrap_or_else(|| GenPoly::one(sys.num_pairs()));
    let qa = QuotientAlgebra::new(buchberger(&build_conjugate_ideal(&sys)).map_err(to_py)?).map_err(to_py)?;
    let form = hermitian_killing_form(&qa, &xi).map_err(to_py)?;
    let sig = core_signature(&form).map_err(to_py)?;
    let doc = serde_json::json!({
        "basis": form.basis_labels.iter().map(monomial_name).collect::<Vec<_>>(),
        "form_matrix": matrix_strings(&form.entries),
        "signature": sig,
    });
    json_to_py(py, &doc)
}

/// Exact signature of a Hermitian matrix given as rows of number strings
/// such as `"1/2-3i"`.
#[pyfunction]
fn signature<'py>(py: Python<'py>, rows: Vec<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let parsed: Vec<Vec<GaussianRational>> = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_constant(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(to_py)?;
    let n = parsed.len();
    if parsed.iter().any(|r| r.len() != n) {
        return Err(ConjCountError::new_err("matrix must be square"));
    }
    let h = HermitianMatrix::new(Matrix::from_rows(parsed), Vec::new()).map_err(to_py)?;
    to_dict(py, &core_signature(&h).map_err(to_py)?)
}

/// Classification of `z^n + a conj(z)^n + b = 0`.
#[pyfunction]
fn family_count<'py>(py: Python<'py>, n: u32, a: &str, b: &str) -> PyResult<Bound<'py, PyAny>> {
    let a = parse_constant(a).map_err(to_py)?;
    let b = parse_constant(b).map_err(to_py)?;
    to_dict(py, &core_family(n, &a, &b).map_err(to_py)?)
}

/// Conjectured characteristic polynomial check for the family.
#[pyfunction]
fn conjecture_check<'py>(py: Python<'py>, n: u32, a: &str, b: &str) -> PyResult<Bound<'py, PyAny>> {
    let a = parse_constant(a).map_err(to_py)?;
    let b = parse_constant(b).map_err(to_py)?;
    to_dict(py, &core_conjecture(n, &a, &b).map_err(to_py)?)
}

/// Closed-form bound for a harmonic polynomial `q(z) + p(conj z)`.
#[pyfunction]
fn harmonic_bound<'py>(py: Python<'py>, expr: &str) -> PyResult<Bound<'py, PyAny>> {
    let p = PyPoly::new(expr)?.inner;
    let inst = HarmonicInstance::from_poly(&p).map_err(to_py)?;
    to_dict(py, &core_bound(&inst).map_err(to_py)?)
}

#[pymodule]
fn pyconjcount(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ConjCountError", m.py().get_type::<ConjCountError>())?;
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(count_roots, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_form, m)?)?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(family_count, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_check, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_bound, m)?)?;
    Ok(())
}
