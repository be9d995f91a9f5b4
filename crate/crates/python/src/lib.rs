use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use fockkl::verify::{run_suite, Suite};

fn err(e: fockkl::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A partition, given as a list of parts or a string like "6,2,1".
#[pyclass(name = "Partition", module = "pyfockkl", frozen, eq, hash, ord, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyPartition(fockkl::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: &Bound<'_, PyAny>) -> PyResult<Self> {
        let p = if let Ok(s) = parts.extract::<String>() {
            s.parse()
        } else {
            fockkl::Partition::new(parts.extract::<Vec<usize>>()?)
        };
        p.map(PyPartition).map_err(err)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn hat(&self, n: usize, r: usize) -> PyResult<Self> {
        self.0.hat(n, r).map(PyPartition).map_err(err)
    }

    fn tilde(&self, n: usize, r: usize) -> PyResult<Self> {
        self.0.tilde(n, r).map(PyPartition).map_err(err)
    }

    fn n_core(&self, n: usize) -> PyResult<Self> {
        self.0.n_core(n).map(PyPartition).map_err(err)
    }

    fn is_n_regular(&self, n: usize) -> bool {
        self.0.is_n_regular(n)
    }

    fn dominated_by(&self, other: &Self) -> PyResult<bool> {
        self.0.dominance_leq(&other.0).map_err(err)
    }

    /// The pair `(mu0, mu1)` with `mu + rho = mu0 + n mu1`, as coordinate lists.
    fn restricted_decomp(&self, n: usize, r: usize) -> PyResult<(Vec<i64>, Vec<i64>)> {
        let (a, b) = self.0.restricted_decomp(n, r).map_err(err)?;
        Ok((a.coords().to_vec(), b.coords().to_vec()))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }
}

/// A Laurent polynomial in `q` with integer coefficients.
#[pyclass(name = "Poly", module = "pyfockkl", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPoly(fockkl::LaurentPoly);

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text = "0"))]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPoly).map_err(err)
    }

    /// Coefficients keyed by exponent.
    fn coeffs(&self) -> BTreeMap<i32, BigInt> {
        self.0.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    fn degree(&self) -> Option<i32> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn bar(&self) -> Self {
        PyPoly(self.0.bar())
    }

    /// The polynomial at `-q`.
    fn substitute_neg_q(&self) -> Self {
        PyPoly(self.0.substitute_neg_q())
    }

    fn eval(&self, x: i64) -> PyResult<BigInt> {
        self.0.eval_at(x).map_err(err)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPoly(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// An element of the extended affine symmetric group, by its window.
#[pyclass(name = "AffinePerm", module = "pyfockkl", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyAffinePerm(fockkl::AffinePerm);

#[pymethods]
impl PyAffinePerm {
    #[new]
    fn new(window: Vec<i64>) -> PyResult<Self> {
        fockkl::AffinePerm::from_window(window).map(PyAffinePerm).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (word, r, tau_power = 0))]
    fn from_word(word: Vec<usize>, r: usize, tau_power: i64) -> PyResult<Self> {
        fockkl::AffinePerm::from_word(&word, tau_power, r).map(PyAffinePerm).map_err(err)
    }

    #[getter]
    fn window(&self) -> Vec<i64> {
        self.0.window().to_vec()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn inverse(&self) -> Self {
        PyAffinePerm(self.0.inverse())
    }

    fn sharp(&self) -> Self {
        PyAffinePerm(self.0.sharp())
    }

    fn reduced_word(&self) -> (Vec<usize>, i64) {
        self.0.reduced_word()
    }

    fn bruhat_leq(&self, other: &Self) -> bool {
        self.0.bruhat_leq(&other.0)
    }

    /// Action at level `k` on a point of `Z^r`.
    fn act(&self, k: i64, point: Vec<i64>) -> PyResult<Vec<i64>> {
        let p = self.0.act(k, &fockkl::PointR::new(point)).map_err(err)?;
        Ok(p.coords().to_vec())
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(PyAffinePerm).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AffinePerm({:?})", self.0.window())
    }
}

/// Kazhdan-Lusztig polynomials of one rank.
#[pyclass(name = "KlTable", module = "pyfockkl", frozen)]
struct PyKlTable(fockkl::KlTable);

#[pymethods]
impl PyKlTable {
    #[new]
    fn new(r: usize) -> PyResult<Self> {
        fockkl::KlTable::new(r).map(PyKlTable).map_err(err)
    }

    /// The classical polynomial `P_{x,w}`.
    fn p(&self, py: Python<'_>, x: &PyAffinePerm, w: &PyAffinePerm) -> PyResult<PyPoly> {
        py.detach(|| self.0.kl_p(&x.0, &w.0)).map(PyPoly).map_err(err)
    }

    /// The parabolic polynomial `P^-_{mu,lam}` at level `-n`.
    fn p_minus(&self, py: Python<'_>, mu: Vec<i64>, lam: Vec<i64>, n: i64) -> PyResult<PyPoly> {
        let (mu, lam) = (fockkl::PointR::new(mu), fockkl::PointR::new(lam));
        py.detach(|| self.0.p_minus(&mu, &lam, n)).map(PyPoly).map_err(err)
    }
}

/// A square matrix of polynomials indexed by partitions.
#[pyclass(name = "Matrix", module = "pyfockkl", frozen)]
struct PyMatrix(fockkl::FockMatrix);

#[pymethods]
impl PyMatrix {
    fn labels(&self) -> Vec<PyPartition> {
        self.0.labels().iter().cloned().map(PyPartition).collect()
    }

    fn get(&self, row: &PyPartition, col: &PyPartition) -> PyPoly {
        PyPoly(self.0.get(&row.0, &col.0))
    }

    fn column(&self, col: &PyPartition) -> Vec<(PyPartition, PyPoly)> {
        vector(&self.0.column(&col.0))
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.0.to_json())
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __len__(&self) -> usize {
        self.0.labels().len()
    }
}

fn vector(v: &fockkl::FockVector) -> Vec<(PyPartition, PyPoly)> {
    v.iter().map(|(p, c)| (PyPartition(p.clone()), PyPoly(c.clone()))).collect()
}

/// Shared caches for all Fock-space computations.
#[pyclass(name = "Engine", module = "pyfockkl", frozen)]
struct PyEngine(fockkl::Engine);

#[pymethods]
impl PyEngine {
    #[new]
    fn new() -> Self {
        PyEngine(fockkl::Engine::new())
    }

    /// `d_{lam,mu}(q)` at level `n`; `r` defaults to the size.
    #[pyo3(signature = (lam, mu, n, r = None))]
    fn d_poly(&self, py: Python<'_>, lam: &PyPartition, mu: &PyPartition, n: usize, r: Option<usize>) -> PyResult<PyPoly> {
        let r = r.unwrap_or(mu.0.size());
        py.detach(|| self.0.d_poly(&lam.0, &mu.0, n, r)).map(PyPoly).map_err(err)
    }

    /// `d_{lam',mu'}(q)` computed at level `-n`.
    fn d_poly_via_r(&self, py: Python<'_>, lam: &PyPartition, mu: &PyPartition, n: usize, r: usize) -> PyResult<PyPoly> {
        py.detach(|| self.0.d_poly_via_r(&lam.0, &mu.0, n, r)).map(PyPoly).map_err(err)
    }

    #[pyo3(signature = (m, n, r = None))]
    fn d_matrix(&self, py: Python<'_>, m: usize, n: usize, r: Option<usize>) -> PyResult<PyMatrix> {
        py.detach(|| self.0.d_matrix(m, n, r.unwrap_or(m))).map(PyMatrix).map_err(err)
    }

    #[pyo3(signature = (m, n, r = None))]
    fn e_matrix(&self, py: Python<'_>, m: usize, n: usize, r: Option<usize>) -> PyResult<PyMatrix> {
        py.detach(|| self.0.e_matrix(m, n, r.unwrap_or(m))).map(PyMatrix).map_err(err)
    }

    /// The canonical basis vector indexed by the conjugate of `mu`.
    #[pyo3(signature = (mu, n, r = None))]
    fn gplus(&self, py: Python<'_>, mu: &PyPartition, n: usize, r: Option<usize>) -> PyResult<Vec<(PyPartition, PyPoly)>> {
        let r = r.unwrap_or(mu.0.len().max(2));
        let v = py.detach(|| self.0.gplus_vector(&mu.0, n, r)).map_err(err)?;
        Ok(vector(&v))
    }

    /// Both sides of the hat/tilde identity: `(holds, lhs, rhs, shift)`.
    fn check_theorem2<'py>(
        &self,
        py: Python<'py>,
        lam: &PyPartition,
        mu: &PyPartition,
        n: usize,
        r: usize,
    ) -> PyResult<Bound<'py, PyTuple>> {
        let rep = py.detach(|| self.0.check_theorem2(&lam.0, &mu.0, n, r)).map_err(err)?;
        (rep.holds, PyPoly(rep.lhs), PyPoly(rep.rhs), rep.shift).into_pyobject(py)
    }

    /// Runs a property suite and returns the report as a dict.
    #[pyo3(signature = (suite, m, n, r = None))]
    fn verify<'py>(&self, py: Python<'py>, suite: &str, m: usize, n: usize, r: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let suite: Suite = suite.parse().map_err(err)?;
        let rep = py
            .detach(|| run_suite(&self.0, suite, m, n, r.unwrap_or(m), &|_: &str| {}))
            .map_err(err)?;
        from_json(py, &rep)
    }
}

#[pyfunction]
fn ell_mu(mu: &PyPartition, n: usize, r: usize) -> PyResult<usize> {
    fockkl::fock::ell_mu(&mu.0, n, r).map_err(err)
}

/// All partitions of `m` with at most `r` parts, in reverse lexicographic order.
#[pyfunction]
#[pyo3(signature = (m, r = None))]
fn partitions(m: usize, r: Option<usize>) -> Vec<PyPartition> {
    fockkl::partition::partitions_with_max_len(m, r.unwrap_or(m))
        .into_iter()
        .map(PyPartition)
        .collect()
}

/// The canonical basis vector of an n-regular partition by the ladder algorithm.
#[pyfunction]
fn llt_gplus(py: Python<'_>, mu: &PyPartition, n: usize) -> PyResult<Vec<(PyPartition, PyPoly)>> {
    let v = py.detach(|| fockkl::llt::llt_gplus_oracle(&mu.0, n)).map_err(err)?;
    Ok(vector(&v))
}

#[pymodule]
fn pyfockkl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyAffinePerm>()?;
    m.add_class::<PyKlTable>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyEngine>()?;
    m.add_function(wrap_pyfunction!(ell_mu, m)?)?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(llt_gplus, m)?)?;
    Ok(())
}
