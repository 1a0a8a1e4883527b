//! Python bindings. Ring elements cross the boundary as strings such as
//! `"x^2 u y + y^3"`; reports cross as JSON text.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use c2rp::charclasses::{self, Bundle};
use c2rp::cli::{self, Suite};
use c2rp::wcalg::{self, RawWMonomial};
use c2rp::{f2core, grassmann, tcomplexity, Error, GContext, GMonomial, WClass, WContext};

create_exception!(c2rp, BudgetExceededError, PyRuntimeError, "Search larger than the exhaustive budget.");
create_exception!(c2rp, RouteMismatchError, PyRuntimeError, "Two computations of the same class disagree.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        Error::RouteMismatch(_) => RouteMismatchError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types serialize")
}

/// `C(a, b) mod 2`, for any integer `a`.
#[pyfunction]
fn binom_parity(a: i64, b: i64) -> bool {
    f2core::binom_parity(a, b)
}

/// `det A_m` over GF(2).
#[pyfunction]
fn matlem_det(m: usize) -> u8 {
    f2core::matlem_det(m) as u8
}

/// Indices `j` with `x^a y^b = sum b_j` in `H*(G_(n+1,2))`.
#[pyfunction]
fn power_sum_normal_form(n: usize, a: u32, b: u32) -> PyResult<Vec<usize>> {
    let v = grassmann::hg_normal_form(n, GMonomial::new(a, b)).map_err(py_err)?;
    Ok(v.ones().map(|j| j + 1).collect())
}

/// Parity of the top class `w_(2n-1)` of the normal bundle of `C(RP^n,2)`.
#[pyfunction]
fn top_sw_parity(n: usize) -> bool {
    charclasses::top_sw_parity(n)
}

#[pyfunction]
fn zcl_formula(n: usize) -> PyResult<usize> {
    tcomplexity::zcl_formula(n).map_err(py_err)
}

/// `(lower, upper, gap)` for `TC(C(RP^n,2))`.
#[pyfunction]
fn tc_bounds(n: usize) -> PyResult<(usize, usize, usize)> {
    let b = tcomplexity::tc_bounds(n).map_err(py_err)?;
    Ok((b.lower, b.upper, b.gap))
}

/// JSON list of search records for `2 <= n <= n_max`.
#[pyfunction]
fn sw_search(py: Python<'_>, n_max: usize) -> String {
    py.detach(|| to_json(&charclasses::sw_search(n_max)))
}

/// Runs a verification suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, max=None))]
fn verify(py: Python<'_>, suite: &str, max: Option<usize>) -> PyResult<(bool, String)> {
    let suite = Suite::ALL
        .into_iter()
        .find(|s| s.name() == suite)
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite {suite:?}")))?;
    let r = py.detach(|| cli::run_suite(suite, max, |n| WContext::new(n).map(Arc::new)));
    Ok((r.ok(), to_json(&r)))
}

/// `H*(G_(n+1,2); Z2)`.
#[pyclass(frozen, module = "c2rp")]
struct Grassmannian {
    ctx: Arc<GContext>,
}

#[pymethods]
impl Grassmannian {
    #[new]
    fn new(py: Python<'_>, n: usize) -> PyResult<Self> {
        let ctx = py.detach(|| GContext::new(n)).map_err(py_err)?;
        Ok(Grassmannian { ctx: Arc::new(ctx) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.ctx.n()
    }

    fn dim(&self, degree: usize) -> usize {
        self.ctx.dim(degree)
    }

    fn total_dim(&self) -> usize {
        self.ctx.total_dim()
    }

    fn basis(&self, degree: usize) -> Vec<String> {
        self.ctx.basis(degree).iter().map(|m| m.to_string()).collect()
    }

    /// Coordinates of `x^a y^b` in the basis of its degree.
    fn coordinates(&self, a: u32, b: u32) -> Vec<u8> {
        let v = self.ctx.reduce_monomial(GMonomial::new(a, b));
        (0..v.len()).map(|i| v.get(i) as u8).collect()
    }

    fn __repr__(&self) -> String {
        format!("Grassmannian(n={})", self.ctx.n())
    }
}

/// `H*(C(RP^n,2); Z2) = H*(W_n; Z2)`.
#[pyclass(frozen, module = "c2rp")]
struct ConfigurationSpace {
    ctx: Arc<WContext>,
}

impl ConfigurationSpace {
    /// Reduces a sum of monomials; all terms must have the same degree.
    fn parse(&self, expr: &str) -> PyResult<WClass> {
        let mut acc: Option<WClass> = None;
        for term in expr.split('+') {
            let raw: RawWMonomial = term.trim().parse().map_err(py_err)?;
            let c = self.ctx.reduce_raw(raw);
            acc = Some(match acc {
                None => c,
                Some(a) if a.degree == c.degree => a.add(&c),
                Some(a) => {
                    return Err(PyValueError::new_err(format!(
                        "mixed degrees {} and {} in {expr:?}",
                        a.degree, c.degree
                    )))
                }
            });
        }
        acc.ok_or_else(|| PyValueError::new_err("empty expression"))
    }

    fn show(&self, c: &WClass) -> Vec<String> {
        self.ctx.terms(c).iter().map(|m| m.to_string()).collect()
    }
}

#[pymethods]
impl ConfigurationSpace {
    #[new]
    fn new(py: Python<'_>, n: usize) -> PyResult<Self> {
        let ctx = py.detach(|| WContext::new(n)).map_err(py_err)?;
        Ok(ConfigurationSpace { ctx: Arc::new(ctx) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.ctx.n()
    }

    fn top_degree(&self) -> usize {
        self.ctx.top_degree()
    }

    fn dim(&self, degree: usize) -> usize {
        self.ctx.dim(degree)
    }

    fn basis(&self, degree: usize) -> Vec<String> {
        self.ctx.basis(degree).iter().map(|m| m.to_string()).collect()
    }

    /// Basis monomials summing to `expr`; empty for zero.
    fn reduce(&self, expr: &str) -> PyResult<Vec<String>> {
        Ok(self.show(&self.parse(expr)?))
    }

    fn multiply(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        let p = self.ctx.multiply(&self.parse(a)?, &self.parse(b)?);
        Ok(self.show(&p))
    }

    /// `Sq^k` of `expr`.
    fn sq(&self, k: usize, expr: &str) -> PyResult<Vec<String>> {
        Ok(self.show(&self.ctx.sq(k, &self.parse(expr)?)))
    }

    /// JSON normal form of a monomial, with the normalization step shown.
    fn normal_form(&self, monomial: &str) -> PyResult<String> {
        let raw: RawWMonomial = monomial.parse().map_err(py_err)?;
        Ok(to_json(&wcalg::normal_form(&self.ctx, raw)))
    }

    /// `w_k` of `bundle` (tau-g, tau-w, eta-w, tau-c, eta-c).
    fn sw(&self, py: Python<'_>, bundle: &str, k: usize) -> PyResult<Vec<String>> {
        let bundle: Bundle = bundle.parse().map_err(py_err)?;
        let report = py.detach(|| cli::sw_report(&self.ctx, bundle, Some(k))).map_err(py_err)?;
        Ok(report.classes.into_iter().next().map(|c| c.terms).unwrap_or_default())
    }

    fn immersion_report(&self) -> PyResult<String> {
        charclasses::immersion_report(&self.ctx).map(|r| to_json(&r)).map_err(py_err)
    }

    #[pyo3(signature = (witness=true, exhaustive=false))]
    fn zcl(&self, py: Python<'_>, witness: bool, exhaustive: bool) -> PyResult<String> {
        py.detach(|| tcomplexity::zcl_report(&self.ctx, witness, exhaustive))
            .map(|r| to_json(&r))
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("ConfigurationSpace(n={})", self.ctx.n())
    }
}

/// Mod-2 cohomology of `C(RP^n, 2)` and `G_(n+1,2)`.
#[pymodule(name = "c2rp")]
mod c2rp_module {
    #[pymodule_export]
    use super::{
        binom_parity, matlem_det, power_sum_normal_form, sw_search, tc_bounds, top_sw_parity, verify, zcl_formula,
        BudgetExceededError, ConfigurationSpace, Grassmannian, RouteMismatchError,
    };
}
