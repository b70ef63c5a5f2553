use std::path::PathBuf;

use asmt_core::checker::{
    check_mod2_modularity_hypotheses, check_modularity_hypotheses, compare_mod3_frobenius,
    density_remark, CheckOptions,
};
use asmt_core::curve::{count_points, frobenius_charpoly, reduce_mod, GenusTwoModel, ModelOverFp};
use asmt_core::ffpoly::{FpPoly, IntPoly};
use asmt_core::gsp4f3::{closure, gsp4f3_generators, is_forbidden_frob2_charpoly};
use asmt_core::lmfdb::{ingest, report, run_pipeline, Cache};
use asmt_core::mod2image::weierstrass_poly;
use asmt_core::weyl::{
    figure1_data, hodge_tate_weights, kappa_w, kostant_representatives, slope_bound, w_lambda,
    Character, WeylElement,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(asmt, AsmtError, PyValueError);

fn err(e: asmt_core::Error) -> PyErr {
    AsmtError::new_err(format!("{}: {e}", e.kind()))
}

/// Converts any serializable value to plain Python objects.
fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| AsmtError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_word(w: &str) -> PyResult<WeylElement> {
    w.parse().map_err(err)
}

/// A genus-2 model `y^2 + h(x) y = f(x)` over the integers.
#[pyclass(name = "GenusTwoModel", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyModel(GenusTwoModel);

#[pymethods]
impl PyModel {
    #[new]
    #[pyo3(signature = (f, h = Vec::new()))]
    fn new(f: Vec<i64>, h: Vec<i64>) -> PyResult<Self> {
        GenusTwoModel::from_coeffs(&f, &h).map(PyModel).map_err(err)
    }

    /// Parses `f=[c0,..];h=[d0,..]`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyModel).map_err(err)
    }

    #[getter]
    fn f(&self) -> Vec<i64> {
        self.0.f().coeffs().to_vec()
    }

    #[getter]
    fn h(&self) -> Vec<i64> {
        self.0.h().coeffs().to_vec()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GenusTwoModel('{}')", self.0)
    }

    /// Point counts and Frobenius characteristic polynomial at p.
    fn frobenius<'py>(&self, py: Python<'py>, p: u32) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &frobenius_charpoly(&reduce_mod(&self.0, p)))
    }

    fn weierstrass_poly(&self) -> PyResult<Vec<i64>> {
        Ok(weierstrass_poly(&self.0).map_err(err)?.poly.coeffs().to_vec())
    }

    fn quadratic_twist(&self, d: i64) -> PyResult<Self> {
        self.0.quadratic_twist(d).map(PyModel).map_err(err)
    }

    /// Mod-3 modularity hypotheses as a report dictionary.
    #[pyo3(signature = (prime_bound = 200))]
    fn check<'py>(&self, py: Python<'py>, prime_bound: u32) -> PyResult<Bound<'py, PyAny>> {
        let opts = CheckOptions {
            prime_bound,
            ..CheckOptions::default()
        };
        to_py(py, &check_modularity_hypotheses(&self.0, &opts).map_err(err)?)
    }

    /// Mod-2 route hypotheses as a report dictionary.
    fn check_mod2<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = check_mod2_modularity_hypotheses(&self.0, &CheckOptions::default()).map_err(err)?;
        to_py(py, &r)
    }
}

/// A weight `(k1, k2; w)` of the diagonal torus.
#[pyclass(name = "Character", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyCharacter(Character);

#[pymethods]
impl PyCharacter {
    #[new]
    fn new(k1: i64, k2: i64, w: i64) -> PyResult<Self> {
        Character::new(k1, k2, w).map(PyCharacter).map_err(err)
    }

    #[getter]
    fn k1(&self) -> i64 {
        self.0.k1
    }

    #[getter]
    fn k2(&self) -> i64 {
        self.0.k2
    }

    #[getter]
    fn w(&self) -> i64 {
        self.0.w
    }

    fn astuple(&self) -> (i64, i64, i64) {
        (self.0.k1, self.0.k2, self.0.w)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Character{}", self.0)
    }
}

/// Kostant representatives as words, e.g. `s_b s_a`.
#[pyfunction]
fn kostant_representatives_words() -> Vec<String> {
    kostant_representatives().iter().map(|w| w.to_string()).collect()
}

/// `κ_w` for each Kostant representative, as `(k1, k2, w)` tuples.
#[pyfunction]
fn kappa(lambda: PyCharacter) -> Vec<(i64, i64, i64)> {
    kostant_representatives()
        .iter()
        .map(|w| {
            let k = kappa_w(lambda.0, w);
            (k.k1, k.k2, k.w)
        })
        .collect()
}

/// Stabilizer of `λ + ρ` as words.
#[pyfunction]
fn stabilizer(lambda: PyCharacter) -> Vec<String> {
    w_lambda(lambda.0).iter().map(|w| w.to_string()).collect()
}

/// Slope lower bound for weight `nu` on the stratum of word `w`.
#[pyfunction]
fn slope_lower_bound(nu: (i64, i64, i64), w: &str) -> PyResult<(i64, i64, i64)> {
    let b = slope_bound(Character::raw(nu.0, nu.1, nu.2), &parse_word(w)?);
    Ok((b.k1, b.k2, b.w))
}

/// Hodge-Tate weights of a weight-k Siegel eigenform and their regularity.
#[pyfunction]
fn hodge_tate(k: i64) -> PyResult<(Vec<i64>, bool)> {
    let h = hodge_tate_weights(k).map_err(err)?;
    Ok((h.weights.to_vec(), h.regular))
}

#[pyfunction]
fn figure1<'py>(py: Python<'py>, lambda: PyCharacter) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &figure1_data(lambda.0))
}

/// Exact local density as `(numerator, denominator)`.
#[pyfunction]
#[pyo3(signature = (jobs = 1))]
fn density(py: Python<'_>, jobs: usize) -> (u64, u64) {
    let r = py.detach(|| density_remark(jobs));
    (r.numerator, r.denominator)
}

/// `#C(F_{p^k})` for `y^2 + h y = f` over F_p.
#[pyfunction]
#[pyo3(signature = (p, f, h = Vec::new(), k = 1))]
fn points(p: u32, f: Vec<i64>, h: Vec<i64>, k: u32) -> PyResult<u64> {
    let m = ModelOverFp::new(p, &FpPoly::from_ints(p, &f), &FpPoly::from_ints(p, &h))
        .map_err(err)?;
    count_points(&m, k).map_err(err)
}

/// Whether a Frobenius-at-2 polynomial reduces mod 3 to `(x^2 ± x + 2)^2`.
#[pyfunction]
fn is_forbidden_at_2(charpoly: Vec<i64>) -> PyResult<bool> {
    is_forbidden_frob2_charpoly(&IntPoly::new(charpoly)).map_err(err)
}

/// Order of the group generated by the bundled GSp4(F3) generators.
#[pyfunction]
fn gsp4f3_closure_order() -> PyResult<usize> {
    Ok(closure(&gsp4f3_generators()).map_err(err)?.order())
}

#[pyfunction]
#[pyo3(signature = (a, b, bound = 100))]
fn compare<'py>(
    py: Python<'py>,
    a: PyModel,
    b: PyModel,
    bound: u32,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &compare_mod3_frobenius(&a.0, &b.0, bound).map_err(err)?)
}

/// Ingests a JSON-lines export into the cache and returns the aggregate.
#[pyfunction]
#[pyo3(signature = (input, cache, prime_bound = 200, jobs = 1))]
fn lmfdb_ingest<'py>(
    py: Python<'py>,
    input: PathBuf,
    cache: PathBuf,
    prime_bound: u32,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let agg = py.detach(|| -> asmt_core::Result<_> {
        let ing = ingest(&input)?;
        let (entries, _) = run_pipeline(&ing.records, prime_bound, &ing.snapshot, Some(&cache), jobs)?;
        Ok(report(&entries))
    });
    to_py(py, &agg.map_err(err)?)
}

/// Aggregate verdict counts over a cache file.
#[pyfunction]
fn lmfdb_report<'py>(py: Python<'py>, cache: PathBuf) -> PyResult<Bound<'py, PyAny>> {
    let c = Cache::load(&cache).map_err(err)?;
    to_py(py, &report(c.entries()))
}

#[pymodule]
fn asmt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AsmtError", m.py().get_type::<AsmtError>())?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyCharacter>()?;
    m.add_function(wrap_pyfunction!(kostant_representatives_words, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(slope_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hodge_tate, m)?)?;
    m.add_function(wrap_pyfunction!(figure1, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(points, m)?)?;
    m.add_function(wrap_pyfunction!(is_forbidden_at_2, m)?)?;
    m.add_function(wrap_pyfunction!(gsp4f3_closure_order, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(lmfdb_ingest, m)?)?;
    m.add_function(wrap_pyfunction!(lmfdb_report, m)?)?;
    Ok(())
}
