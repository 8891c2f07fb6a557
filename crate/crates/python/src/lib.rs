//! Python module `ctrace`.

use std::collections::{BTreeMap, BTreeSet};

use ctrace_core::determinantal::{
    mu_in_quotient, specializes_condition, teter_formula, teter_verify, verify_mu_multiplicativity,
    verify_pq_identity, GenericMatrixContext, SegreContext,
};
use ctrace_core::hilbert_burch::{hb_ideal, hb_trace, parse_matrix_file, semigroup_hb_trace, Assertions};
use ctrace_core::linalg::RankOptions;
use ctrace_core::poly::{parse_polynomial, parse_polynomials};
use ctrace_core::tree::{alias_map, analyze_tree, tree_verify_monloc, Tree as CoreTree, TreeReport};
use ctrace_core::{Error, MonomialIdeal, Polynomial as CorePolynomial, Ring, Var};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(ctrace, ResourceError, PyRuntimeError, "A computation exceeded the term cap.");
create_exception!(ctrace, InternalError, PyRuntimeError, "An internal consistency check failed.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Resource { .. } => ResourceError::new_err(e.to_string()),
        Error::Internal(_) => InternalError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn or_py(self) -> PyResult<T>;
}

impl<T, E: Into<Error>> OrPy<T> for std::result::Result<T, E> {
    fn or_py(self) -> PyResult<T> {
        self.map_err(|e| to_py(e.into()))
    }
}

/// A polynomial with rational coefficients.
#[pyclass(module = "ctrace", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Polynomial(CorePolynomial);

impl Polynomial {
    /// Both operands in the ring of all their variables.
    fn common(&self, other: &Polynomial) -> PyResult<(CorePolynomial, CorePolynomial)> {
        let (a, b) = (&self.0, &other.0);
        if a.ring().same(b.ring()) {
            return Ok((a.clone(), b.clone()));
        }
        let mut weights = BTreeMap::new();
        for p in [a, b] {
            for (i, v) in p.ring().vars().iter().enumerate() {
                let w = p.ring().weight(i);
                if *weights.entry(v.clone()).or_insert(w) != w {
                    return Err(PyValueError::new_err(format!("variable {v} has two different weights")));
                }
            }
        }
        let vars: BTreeSet<Var> = weights.keys().cloned().collect();
        let ring = Ring::with_weights(vars, &weights).or_py()?;
        Ok((a.embed(&ring).or_py()?, b.embed(&ring).or_py()?))
    }
}

#[pymethods]
impl Polynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Polynomial(parse_polynomial(text, None).or_py()?))
    }

    /// The total degree if homogeneous, else `None`.
    #[getter]
    fn degree(&self) -> Option<u64> {
        self.0.homogeneous_degree()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.0
            .variables_used()
            .into_iter()
            .map(|i| self.0.ring().var(i).to_string())
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &Polynomial) -> PyResult<Self> {
        let (a, b) = self.common(other)?;
        Ok(Polynomial(a.add(&b).or_py()?))
    }

    fn __sub__(&self, other: &Polynomial) -> PyResult<Self> {
        let (a, b) = self.common(other)?;
        Ok(Polynomial(a.sub(&b).or_py()?))
    }

    fn __mul__(&self, other: &Polynomial) -> PyResult<Self> {
        let (a, b) = self.common(other)?;
        Ok(Polynomial(a.mul(&b).or_py()?))
    }

    fn __neg__(&self) -> Self {
        Polynomial(self.0.neg())
    }

    fn __pow__(&self, k: u32, modulo: Option<Py<PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not supported"));
        }
        Ok(Polynomial(self.0.pow(k)))
    }

    fn __eq__(&self, other: &Polynomial) -> PyResult<bool> {
        let (a, b) = self.common(other)?;
        Ok(a == b)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }
}

/// Parses several polynomials into one common ring.
#[pyfunction]
fn parse(texts: Vec<String>) -> PyResult<Vec<Polynomial>> {
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    Ok(parse_polynomials(&refs, None).or_py()?.into_iter().map(Polynomial).collect())
}

fn options(max_terms: Option<usize>) -> RankOptions {
    match max_terms {
        Some(cap) => RankOptions::with_max_entries(cap),
        None => RankOptions::default(),
    }
}

/// The generic `m x n` matrix with minor size `r`, i.e. the ring
/// `K[X]/I_{r+1}(X)`.
#[pyclass(module = "ctrace", frozen)]
struct GenericMatrix {
    ctx: GenericMatrixContext,
    seg: SegreContext,
    opts: RankOptions,
}

#[pymethods]
impl GenericMatrix {
    #[new]
    #[pyo3(signature = (m, n, r, max_terms=None))]
    fn new(m: usize, n: usize, r: usize, max_terms: Option<usize>) -> PyResult<Self> {
        let ctx = GenericMatrixContext::new(m, n, r).or_py()?;
        let seg = SegreContext::new(&ctx);
        Ok(GenericMatrix {
            ctx,
            seg,
            opts: options(max_terms),
        })
    }

    #[getter]
    fn shape(&self) -> (usize, usize, usize) {
        (self.ctx.m(), self.ctx.n(), self.ctx.r())
    }

    fn is_gorenstein(&self) -> bool {
        self.ctx.is_gorenstein()
    }

    /// Generators of `I_r(X)^power`; the default power `n - m` gives the
    /// canonical trace.
    #[pyo3(signature = (power=None))]
    fn trace(&self, power: Option<u32>) -> Vec<String> {
        self.ctx.trace(power).to_strings()
    }

    /// Minimal number of generators of `I_r(X)^power` in the quotient ring.
    #[pyo3(signature = (power=None))]
    fn mu(&self, py: Python<'_>, power: Option<u32>) -> PyResult<usize> {
        let ideal = self.ctx.trace(power);
        py.detach(|| mu_in_quotient(&ideal, &self.seg, &self.opts)).or_py()
    }

    fn teter(&self) -> PyResult<BigInt> {
        teter_formula(self.ctx.m(), self.ctx.n(), self.ctx.r()).or_py()
    }

    fn verify_teter<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = py.detach(|| teter_verify(&self.ctx, &self.seg, &self.opts)).or_py()?;
        let d = PyDict::new(py);
        d.set_item("formula", report.formula)?;
        d.set_item("oracle", report.oracle)?;
        d.set_item("agree", report.agree)?;
        Ok(d)
    }

    fn verify_pq<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = py.detach(|| verify_pq_identity(&self.ctx, &self.seg, &self.opts)).or_py()?;
        let d = PyDict::new(py);
        d.set_item("holds", report.holds)?;
        d.set_item("pq_generators", report.pq_generators)?;
        d.set_item("delta_ir_generators", report.delta_ir_generators)?;
        d.set_item("span_dim", report.span_dim)?;
        Ok(d)
    }

    #[pyo3(signature = (l=1))]
    fn verify_lasagna<'py>(&self, py: Python<'py>, l: u32) -> PyResult<Bound<'py, PyDict>> {
        let report = py
            .detach(|| verify_mu_multiplicativity(&self.ctx, &self.seg, l, &self.opts))
            .or_py()?;
        let d = PyDict::new(py);
        d.set_item("l", report.l)?;
        d.set_item("mu_pq", report.mu_pq)?;
        d.set_item("mu_p", report.mu_p)?;
        d.set_item("mu_q", report.mu_q)?;
        d.set_item("holds", report.holds)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("GenericMatrix({}, {}, {})", self.ctx.m(), self.ctx.n(), self.ctx.r())
    }
}

#[pyfunction]
fn teter(m: usize, n: usize, r: usize) -> PyResult<BigInt> {
    teter_formula(m, n, r).or_py()
}

#[pyfunction]
fn specializes(m: usize, n: usize, r: usize) -> bool {
    specializes_condition(m, n, r)
}

/// A tree on vertices `1..n`, with the monomial ideal of its matrix.
#[pyclass(module = "ctrace", frozen)]
struct Tree {
    report: TreeReport,
    alias: BTreeMap<Var, String>,
}

impl Tree {
    fn names(&self, ideal: &MonomialIdeal, alias: bool) -> Vec<String> {
        if !alias {
            return ideal.to_strings();
        }
        ideal
            .to_strings_with(&|v: &Var| self.alias[v].clone())
            .into_iter()
            .map(|s| {
                let mut f: Vec<&str> = s.split('*').collect();
                f.sort_unstable();
                f.join("*")
            })
            .collect()
    }
}

#[pymethods]
impl Tree {
    #[new]
    #[pyo3(signature = (edges, n=None, canonical=false))]
    fn new(edges: &str, n: Option<usize>, canonical: bool) -> PyResult<Self> {
        let mut t = CoreTree::parse(edges, n).or_py()?;
        if canonical {
            t = t.canonical();
        }
        let report = analyze_tree(&t).or_py()?;
        Ok(Tree {
            alias: alias_map(&t),
            report,
        })
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.report.tree.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.report.tree.edges().to_vec()
    }

    #[pyo3(signature = (alias=false))]
    fn matrix(&self, alias: bool) -> Vec<Vec<String>> {
        if alias {
            self.report.matrix.to_strings_with(&|v: &Var| self.alias[v].clone())
        } else {
            self.report.matrix.to_strings()
        }
    }

    #[pyo3(signature = (alias=false))]
    fn ideal(&self, alias: bool) -> Vec<String> {
        self.names(&self.report.ideal, alias)
    }

    /// The canonical trace: the `(n-2)`-minors of the tree matrix.
    #[pyo3(signature = (alias=false))]
    fn trace(&self, alias: bool) -> Vec<String> {
        self.names(&self.report.trace_minors, alias)
    }

    /// Sum of the monomial localizations of the ideal.
    #[pyo3(signature = (alias=false))]
    fn trace_localized(&self, alias: bool) -> Vec<String> {
        self.names(&self.report.trace_localized, alias)
    }

    /// Whether the trace plus the ideal equals the localization sum.
    fn verify_monloc(&self) -> PyResult<bool> {
        tree_verify_monloc(&self.report.tree).or_py()
    }

    fn __str__(&self) -> String {
        self.report.tree.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tree('{}')", self.report.tree)
    }
}

/// Gaps, critical binomials, Hilbert-Burch matrix and trace of `<n1, n2, n3>`.
#[pyfunction]
fn semigroup<'py>(py: Python<'py>, n1: u64, n2: u64, n3: u64) -> PyResult<Bound<'py, PyDict>> {
    let tr = semigroup_hb_trace(n1, n2, n3).or_py()?;
    let d = PyDict::new(py);
    d.set_item("generators", tr.data.generators.to_vec())?;
    d.set_item("gaps", tr.data.gaps.clone())?;
    d.set_item("frobenius", tr.data.frobenius)?;
    d.set_item("symmetric", tr.data.symmetric)?;
    d.set_item("critical", tr.data.critical.to_vec())?;
    d.set_item(
        "binomials",
        tr.binomials.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    )?;
    d.set_item("matrix", tr.matrix.as_ref().map(|m| m.to_strings()))?;
    d.set_item("trace", tr.trace.to_strings())?;
    d.set_item("gorenstein", tr.gorenstein)?;
    d.set_item("nearly_gorenstein", tr.nearly_gorenstein)?;
    Ok(d)
}

/// The ideal of maximal minors of a Hilbert-Burch matrix given as text.
#[pyfunction]
fn hb_ideal_of(text: &str) -> PyResult<Vec<String>> {
    let input = parse_matrix_file(text).or_py()?;
    Ok(hb_ideal(&input).or_py()?.ideal.to_strings())
}

/// The canonical trace of a Hilbert-Burch matrix given as text. The ring
/// must be asserted generically Gorenstein.
#[pyfunction]
#[pyo3(signature = (text, assert_gg=false))]
fn hb_trace_of(text: &str, assert_gg: bool) -> PyResult<Vec<String>> {
    let input = parse_matrix_file(text).or_py()?;
    let assertions = Assertions {
        generically_gorenstein: assert_gg,
        generic_height: false,
    };
    Ok(hb_trace(&input, &assertions).or_py()?.ideal.to_strings())
}

#[pymodule]
fn ctrace(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polynomial>()?;
    m.add_class::<GenericMatrix>()?;
    m.add_class::<Tree>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(teter, m)?)?;
    m.add_function(wrap_pyfunction!(specializes, m)?)?;
    m.add_function(wrap_pyfunction!(semigroup, m)?)?;
    m.add_function(wrap_pyfunction!(hb_ideal_of, m)?)?;
    m.add_function(wrap_pyfunction!(hb_trace_of, m)?)?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    m.add("InternalError", m.py().get_type::<InternalError>())?;
    Ok(())
}
