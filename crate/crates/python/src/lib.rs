//! Python bindings: `import quadsg_py`.

use pyo3::exceptions::{PyOSError, PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use quadsg::search::CertificateTable;
use quadsg::semigroup::MuAbOracle;
use quadsg::{Error, Membership, MuTable, QuadraticSemigroup};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPyResult<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for quadsg::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// Memoized μ(0..=n_max); grows on demand.
#[pyclass(name = "MuTable", module = "quadsg_py")]
struct PyMuTable {
    inner: MuTable,
}

#[pymethods]
impl PyMuTable {
    #[new]
    fn new(n_max: u64) -> PyResult<Self> {
        Ok(PyMuTable {
            inner: MuTable::build(n_max).py()?,
        })
    }

    #[getter]
    fn n_max(&self) -> u64 {
        self.inner.n_max()
    }

    fn extend_to(&mut self, n_max: u64) -> PyResult<()> {
        self.inner.extend_to(n_max).py()
    }

    /// μ(n), growing the table if needed.
    fn mu(&mut self, n: u64) -> PyResult<u64> {
        self.inner.extend_to(n).py()?;
        self.inner.mu(n).py()
    }

    fn values(&self) -> Vec<u64> {
        self.inner.values().to_vec()
    }

    fn lift_contains(&mut self, m: u64, n: u64) -> PyResult<bool> {
        self.inner.extend_to(n).py()?;
        self.inner.lift_contains(m, n).py()
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }
}

/// The semigroup generated by `n*a + C(n,2)*b`, `n >= 0`; needs `gcd(a,b) = 1`.
#[pyclass(name = "Semigroup", module = "quadsg_py")]
struct PySemigroup {
    s: QuadraticSemigroup,
    table: MuTable,
    membership: Membership,
}

impl PySemigroup {
    fn table(&mut self) -> PyResult<&MuTable> {
        self.table.extend_to(self.s.a()).py()?;
        Ok(&self.table)
    }
}

#[pymethods]
impl PySemigroup {
    #[new]
    fn new(a: u64, b: u64) -> PyResult<Self> {
        let s = QuadraticSemigroup::new(a, b).py()?;
        Ok(PySemigroup {
            s,
            table: MuTable::build(0).py()?,
            membership: Membership::new(s),
        })
    }

    #[getter]
    fn a(&self) -> u64 {
        self.s.a()
    }

    #[getter]
    fn b(&self) -> u64 {
        self.s.b()
    }

    fn is_trivial(&self) -> bool {
        self.s.is_trivial()
    }

    fn is_exceptional(&self) -> bool {
        self.s.exception().is_some()
    }

    fn generator(&self, n: u64) -> PyResult<u64> {
        self.s.generator(n).py()
    }

    /// `[y_0, ..., y_last]`.
    fn generators(&self, last: u64) -> PyResult<Vec<u64>> {
        Ok(self.s.describe(last).py()?.generators)
    }

    fn __contains__(&mut self, x: u64) -> PyResult<bool> {
        self.membership.contains(x).py()
    }

    /// Apéry set indexed by residue mod `a`.
    #[pyo3(signature = (oracle = false))]
    fn apery(&mut self, oracle: bool) -> PyResult<Vec<u64>> {
        let ap = if oracle || self.s.is_trivial() {
            quadsg::apery_oracle(&self.s).py()?
        } else {
            let s = self.s;
            quadsg::apery_closed(&s, self.table()?).py()?
        };
        Ok(ap.elements().to_vec())
    }

    #[pyo3(signature = (oracle = false))]
    fn frobenius(&mut self, oracle: bool) -> PyResult<i64> {
        let s = self.s;
        if oracle {
            quadsg::frobenius_oracle(&s).py()
        } else {
            quadsg::frobenius(&s, self.table()?).py()
        }
    }

    #[pyo3(signature = (oracle = false))]
    fn genus(&mut self, oracle: bool) -> PyResult<u64> {
        let s = self.s;
        if oracle {
            quadsg::genus_oracle(&s).py()
        } else {
            quadsg::genus(&s, self.table()?).py()
        }
    }

    /// `(lower, upper)` for the Frobenius number.
    fn frobenius_bounds(&self) -> PyResult<(f64, f64)> {
        let b = quadsg::frobenius_bounds(self.s.a(), self.s.b()).py()?;
        Ok((b.lower, b.upper))
    }

    fn genus_bounds(&self) -> PyResult<(f64, f64)> {
        let b = quadsg::genus_bounds(self.s.a(), self.s.b()).py()?;
        Ok((b.lower, b.upper))
    }

    /// Least `m` with `m*a + n*b` in the semigroup, for any integer `n`.
    #[pyo3(signature = (n, oracle = false))]
    fn mu_ab(&mut self, n: i64, oracle: bool) -> PyResult<i64> {
        let s = self.s;
        if oracle {
            MuAbOracle::new(s).py()?.mu_ab(n).py()
        } else {
            quadsg::mu_ab_shift(&s, n, self.table()?).py()
        }
    }

    fn embedding_dimension(&self) -> PyResult<u64> {
        quadsg::embedding_dimension(self.s.a(), self.s.b()).py()
    }

    /// Indices `n` with `y_n` a minimal generator.
    #[pyo3(signature = (oracle = false))]
    fn minimal_generators(&self, oracle: bool) -> PyResult<Vec<u64>> {
        let set = if oracle || self.s.is_trivial() {
            quadsg::minimal_generators_oracle(&self.s).py()?
        } else {
            quadsg::minimal_generators_closed(&self.s).py()?
        };
        Ok(set.indices)
    }

    fn __repr__(&self) -> String {
        format!("Semigroup(a={}, b={})", self.s.a(), self.s.b())
    }
}

#[pyfunction]
fn triangular(i: u64) -> PyResult<u64> {
    quadsg::triangular(i).py()
}

#[pyfunction]
fn f_of(x: f64) -> PyResult<f64> {
    quadsg::f_of(x).py()
}

#[pyfunction]
fn mu(n: u64) -> PyResult<u64> {
    MuTable::build(n).py()?.mu(n).py()
}

#[pyfunction]
fn mu_oracle(n: u64) -> PyResult<u64> {
    quadsg::mu_oracle(n).py()
}

/// `(lower, gauss, combined)` bounds on μ(n), `n >= 1`.
#[pyfunction]
fn mu_bounds(n: u64) -> PyResult<(f64, f64, f64)> {
    Ok((
        quadsg::lower_bound(n).py()?,
        quadsg::gauss_bound(n),
        quadsg::combined_bound(n).py()?,
    ))
}

/// `(a, n)` pairs with `2 <= μ(n) - μ(n+a) <= 4`.
#[pyfunction]
#[pyo3(signature = (a_max = 485, threads = None))]
fn search_mu_drop(py: Python<'_>, a_max: u64, threads: Option<usize>) -> PyResult<Vec<(u64, u64)>> {
    py.detach(|| {
        let mut table = MuTable::build(0)?;
        Ok(quadsg::search_mu_drop(a_max, &mut table, threads)?.pairs())
    })
    .py()
}

#[pyfunction]
#[pyo3(signature = (a_max = 655, raw = false, threads = None))]
fn search_embedding_eq(
    py: Python<'_>,
    a_max: u64,
    raw: bool,
    threads: Option<usize>,
) -> PyResult<Vec<(u64, u64)>> {
    py.detach(|| {
        let mut table = MuTable::build(0)?;
        Ok(quadsg::search_embedding_eq(a_max, raw, &mut table, threads)?.pairs())
    })
    .py()
}

#[pyfunction]
fn g_of(a: f64) -> PyResult<f64> {
    quadsg::g_of(a).py()
}

#[pyfunction]
fn g_analysis(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let g = quadsg::g_analysis().py()?;
    let d = PyDict::new(py);
    d.set_item("local_max_location", g.local_max_location)?;
    d.set_item("local_max_value", g.local_max_value)?;
    d.set_item("root_at_2", g.root_at_2)?;
    d.set_item("root_at_1", g.root_at_1)?;
    Ok(d)
}

/// `(table, a, n, claim, passed)`.
type CertificateRow = (&'static str, u64, u64, String, bool);

/// One row per tabulated exception.
#[pyfunction]
fn exception_certificates() -> PyResult<Vec<CertificateRow>> {
    let mut table = MuTable::build(0).py()?;
    Ok(quadsg::exception_certificates(&mut table)
        .py()?
        .into_iter()
        .map(|c| {
            let name = match c.table {
                CertificateTable::MuExceptions => "mu-exceptions",
                CertificateTable::EmbeddingEq => "embedding-eq",
                CertificateTable::ExceptionalGenerators => "exceptional-generators",
            };
            (name, c.a, c.n, c.claim, c.passed)
        })
        .collect())
}

#[pymodule]
fn quadsg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMuTable>()?;
    m.add_class::<PySemigroup>()?;
    m.add_function(wrap_pyfunction!(triangular, m)?)?;
    m.add_function(wrap_pyfunction!(f_of, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(mu_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(mu_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(search_mu_drop, m)?)?;
    m.add_function(wrap_pyfunction!(search_embedding_eq, m)?)?;
    m.add_function(wrap_pyfunction!(g_of, m)?)?;
    m.add_function(wrap_pyfunction!(g_analysis, m)?)?;
    m.add_function(wrap_pyfunction!(exception_certificates, m)?)?;
    Ok(())
}
