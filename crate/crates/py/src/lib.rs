//! Python bindings: a `Matrix` class over the three exact domains plus
//! module-level helpers for the dimension formula and PI-degree.
//!
//! Reports that have nested structure come back as JSON strings; the
//! simple queries return native Python values.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use cenalg::centralizer::{
    brute_commutant, centralizer_dimension, containment_test, dimension_formula,
    polynomial_membership, spans_equal, structured_basis, Containment, Membership,
};
use cenalg::error::Error;
use cenalg::identities::{check_product_identity, check_standard_identity};
use cenalg::jordan::{is_indecomposable, jordan_base, nilpotency_index, JordanType};
use cenalg::matrix::Matrix as CoreMatrix;
use cenalg::report::{parse_matrix_file, render_matrix, render_poly, to_json_string};
use cenalg::scalar::Domain;
use cenalg::structure::{pi_degree as core_pi_degree, StructureReport};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_domain(field: &str, p: Option<u64>) -> PyResult<Domain> {
    match field {
        "q" => Ok(Domain::Rationals),
        "fp" => {
            let p = p.ok_or_else(|| PyValueError::new_err("field \"fp\" requires p"))?;
            Domain::prime_field(p).map_err(to_py_err)
        }
        "hq" => Ok(Domain::RationalQuaternions),
        other => Err(PyValueError::new_err(format!("unknown field {other:?}"))),
    }
}

/// An exact matrix over "q" (rationals), "fp" (prime field) or "hq"
/// (rational quaternions).
#[pyclass]
#[derive(Clone)]
struct Matrix {
    inner: CoreMatrix,
}

#[pymethods]
impl Matrix {
    /// Matrix(field, rows, p=None)
    ///
    /// Rows hold integers or "a/b" strings over "q"; integers over "fp";
    /// 4-element [a, b, c, d] lists over "hq". The same literals as the
    /// CLI matrix files.
    #[new]
    #[pyo3(signature = (field, rows, p=None))]
    fn new(field: &str, rows: Bound<'_, PyAny>, p: Option<u64>) -> PyResult<Self> {
        parse_domain(field, p)?;
        // reuse the file-format parser: wrap the rows in the JSON envelope
        let rows_json: serde_json::Value = pythonize_rows(&rows)?;
        let envelope = match p {
            Some(p) => serde_json::json!({"field": field, "p": p, "rows": rows_json}),
            None => serde_json::json!({"field": field, "rows": rows_json}),
        };
        let inner = parse_matrix_file(&envelope.to_string())
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Matrix { inner })
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn field(&self) -> String {
        match self.inner.domain() {
            Domain::Rationals => "q".into(),
            Domain::PrimeField(p) => format!("fp({})", p.get()),
            Domain::RationalQuaternions => "hq".into(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}, {}x{})", self.field(), self.inner.rows(), self.inner.cols())
    }

    /// Entries as JSON-style literals (list of lists).
    fn entries(&self, py: Python<'_>) -> PyResult<PyObject> {
        let vals = render_matrix(&self.inner);
        json_to_py(
            py,
            &serde_json::Value::Array(vals.into_iter().map(serde_json::Value::Array).collect()),
        )
    }

    fn is_nilpotent(&self) -> bool {
        nilpotency_index(&self.inner).is_some()
    }

    fn nilpotency_index(&self) -> Option<usize> {
        nilpotency_index(&self.inner)
    }

    /// Jordan block sizes, largest first; raises for non-nilpotent input.
    fn jordan_sizes(&self) -> PyResult<Vec<usize>> {
        Ok(jordan_base(&self.inner).map_err(to_py_err)?.jtype().sizes().to_vec())
    }

    fn is_indecomposable(&self) -> PyResult<bool> {
        is_indecomposable(&self.inner).map_err(to_py_err)
    }

    /// Centralizer dimension over the center of the domain; non-nilpotent
    /// matrices over a field go through the split-spectrum reduction.
    fn centralizer_dimension(&self) -> PyResult<u64> {
        centralizer_dimension(&self.inner).map_err(to_py_err)
    }

    /// Size of the structured centralizer basis (equals the formula).
    fn structured_basis_size(&self) -> PyResult<usize> {
        Ok(structured_basis(&self.inner).map_err(to_py_err)?.len())
    }

    /// Cross-check of the three dimension routes; returns a dict with
    /// brute/structured/formula dimensions and the span-equality flag.
    fn centralizer_check(&self, py: Python<'_>) -> PyResult<PyObject> {
        let cb = structured_basis(&self.inner).map_err(to_py_err)?;
        let brute = brute_commutant(&self.inner);
        let formula = dimension_formula(cb.jtype(), self.inner.domain());
        let spans = spans_equal(&brute, cb.realized());
        let dict = pyo3::types::PyDict::new_bound(py);
        dict.set_item("brute", brute.len())?;
        dict.set_item("structured", cb.len())?;
        dict.set_item("formula", formula)?;
        dict.set_item("spans_equal", spans)?;
        Ok(dict.into())
    }

    /// Structure report (radical, multiplicities, PI data) as JSON.
    fn structure_report_json(&self) -> PyResult<String> {
        let jt = jordan_base(&self.inner).map_err(to_py_err)?.jtype().clone();
        Ok(to_json_string(&StructureReport::compute(&jt)))
    }

    /// Standard identity S_2m on random centralizer elements, as JSON.
    #[pyo3(signature = (trials=100, seed=0))]
    fn standard_identity_json(&self, trials: u64, seed: u64) -> PyResult<String> {
        let report = check_standard_identity(&self.inner, trials, seed).map_err(to_py_err)?;
        Ok(to_json_string(&report))
    }

    /// Product identity (n*v copies of S_2p), as JSON.
    #[pyo3(signature = (trials=100, seed=0))]
    fn product_identity_json(&self, trials: u64, seed: u64) -> PyResult<String> {
        let report = check_product_identity(&self.inner, trials, seed).map_err(to_py_err)?;
        Ok(to_json_string(&report))
    }

    /// Decides Cen(self) subset of Cen(other). Returns (contained,
    /// payload): the certifying polynomial coefficients when contained
    /// over a field, or the witness matrix entries when not contained.
    fn centralizer_subset_of(&self, py: Python<'_>, other: &Matrix) -> PyResult<(bool, PyObject)> {
        if self.inner.domain() != other.inner.domain() {
            return Err(PyValueError::new_err("domain mismatch"));
        }
        match containment_test(&self.inner, &other.inner).map_err(to_py_err)? {
            Containment::Contained { witness_poly } => {
                let payload = match witness_poly {
                    Some(h) => json_to_py(py, &serde_json::Value::Array(render_poly(&h)))?,
                    None => py.None(),
                };
                Ok((true, payload))
            }
            Containment::NotContained { witness } => {
                let vals = render_matrix(&witness);
                let payload = json_to_py(
                    py,
                    &serde_json::Value::Array(
                        vals.into_iter().map(serde_json::Value::Array).collect(),
                    ),
                )?;
                Ok((false, payload))
            }
        }
    }

    /// For an indecomposable nilpotent matrix over a commutative domain:
    /// the coefficients of f with f(self) = other, or None when the two
    /// do not commute.
    fn polynomial_membership(&self, py: Python<'_>, other: &Matrix) -> PyResult<Option<PyObject>> {
        match polynomial_membership(&self.inner, &other.inner).map_err(to_py_err)? {
            Membership::Polynomial(f) => {
                Ok(Some(json_to_py(py, &serde_json::Value::Array(render_poly(&f)))?))
            }
            Membership::NotInCentralizer => Ok(None),
        }
    }
}

fn pythonize_rows(rows: &Bound<'_, PyAny>) -> PyResult<serde_json::Value> {
    // rows: list of lists of (int | str | [4 components])
    let outer: &Bound<'_, PyList> = rows.downcast()?;
    let mut out_rows = Vec::new();
    for row in outer.iter() {
        let inner: &Bound<'_, PyList> = row.downcast()?;
        let mut out_row = Vec::new();
        for cell in inner.iter() {
            out_row.push(py_to_json(&cell)?);
        }
        out_rows.push(serde_json::Value::Array(out_row));
    }
    Ok(serde_json::Value::Array(out_rows))
}

fn py_to_json(v: &Bound<'_, PyAny>) -> PyResult<serde_json::Value> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(serde_json::json!(i));
    }
    if let Ok(s) = v.extract::<String>() {
        return Ok(serde_json::json!(s));
    }
    if let Ok(list) = v.downcast::<PyList>() {
        let mut parts = Vec::new();
        for item in list.iter() {
            parts.push(py_to_json(&item)?);
        }
        return Ok(serde_json::Value::Array(parts));
    }
    Err(PyValueError::new_err(format!("unsupported entry {v:?}")))
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_py(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py(py)
            } else {
                return Err(PyRuntimeError::new_err("unexpected float in report"));
            }
        }
        serde_json::Value::String(s) => s.into_py(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into()
        }
        serde_json::Value::Object(map) => {
            let dict = pyo3::types::PyDict::new_bound(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into()
        }
    })
}

/// center_degree * (k_1 + 3 k_2 + ... + (2m-1) k_m) for the given sizes.
#[pyfunction]
#[pyo3(signature = (sizes, field="q", p=None))]
fn dimension_formula_for(sizes: Vec<usize>, field: &str, p: Option<u64>) -> PyResult<u64> {
    if sizes.is_empty() || sizes.iter().any(|&k| k == 0) {
        return Err(PyValueError::new_err("sizes must be positive integers"));
    }
    let domain = parse_domain(field, p)?;
    Ok(dimension_formula(&JordanType::new(sizes), domain))
}

/// Maximal number of equal block sizes: the PI-degree of the centralizer.
#[pyfunction]
fn pi_degree_for(sizes: Vec<usize>) -> PyResult<usize> {
    if sizes.is_empty() || sizes.iter().any(|&k| k == 0) {
        return Err(PyValueError::new_err("sizes must be positive integers"));
    }
    Ok(core_pi_degree(&JordanType::new(sizes)))
}

#[pymodule]
fn cenalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matrix>()?;
    m.add_function(wrap_pyfunction!(dimension_formula_for, m)?)?;
    m.add_function(wrap_pyfunction!(pi_degree_for, m)?)?;
    Ok(())
}
