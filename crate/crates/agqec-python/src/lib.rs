//! Python bindings: curve construction, evaluation codes, CSS assembly,
//! distance certification, reference-table checks, tower schedules, and
//! prime-field expansion, all backed by the exact-arithmetic core.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use agqec_core::agcode::{evaluation_code, tail_divisor, tail_evaluation_places};
use agqec_core::asymptotics::{expansion_schedule, gs_tower_level, t_point_schedule, Q};
use agqec_core::css::{hyperelliptic_build, t_point_build};
use agqec_core::curve::Place;
use agqec_core::expand;
use agqec_core::minweight::{min_weight_bound, DEFAULT_BUDGET, INFINITE_WEIGHT};
use agqec_core::riemann_roch::rr_space;
use agqec_core::tables;

fn to_py(e: agqec_core::Error) -> PyErr {
    match e {
        agqec_core::Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_ratio(s: &str) -> PyResult<Q> {
    let parse = |v: &str| {
        v.trim()
            .parse::<i128>()
            .map_err(|_| PyValueError::new_err(format!("not an integer: {v}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse(d)?;
            if den == 0 {
                return Err(PyValueError::new_err("zero denominator"));
            }
            Ok(Q::new(parse(n)?, den))
        }
        None => Ok(Q::from_integer(parse(s)?)),
    }
}

fn place_str(p: &Place) -> String {
    match p {
        Place::Infinity => "inf".into(),
        Place::Affine { x, y } => format!("({x},{y})"),
        Place::Degree2 { x, y } => format!("deg2({x},{y})"),
    }
}

/// A member of the curve family, fixed by the prime power q and the
/// exponent m dividing q + 1.
#[pyclass(frozen)]
struct Curve {
    inner: agqec_core::Curve,
}

#[pymethods]
impl Curve {
    #[new]
    fn new(q: u64, m: u64) -> PyResult<Self> {
        Ok(Curve { inner: agqec_core::Curve::new(q, m).map_err(to_py)? })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.m()
    }

    #[getter]
    fn genus(&self) -> u64 {
        self.inner.genus()
    }

    #[getter]
    fn n_places(&self) -> u64 {
        self.inner.n_rational_places()
    }

    /// All rational places in canonical order; coordinates are the integer
    /// encodings of field elements (base-p digits, low degree first).
    fn places(&self) -> Vec<String> {
        self.inner.rational_places().iter().map(place_str).collect()
    }

    /// Whether the function field has a place of degree two.
    fn has_degree2_place(&self) -> bool {
        self.inner.find_degree2_place().is_ok()
    }

    /// Dimension of the function space for the divisor with the given
    /// coefficients on the last rational places (the final one being the
    /// place at infinity).
    fn function_space_dim(&self, coeffs: Vec<i64>) -> PyResult<usize> {
        let d = tail_divisor(&self.inner, &coeffs).map_err(to_py)?;
        Ok(rr_space(&self.inner, &d).map_err(to_py)?.len())
    }

    fn __repr__(&self) -> String {
        format!(
            "Curve(q={}, m={}, genus={}, places={})",
            self.inner.q(),
            self.inner.m(),
            self.inner.genus(),
            self.inner.n_rational_places()
        )
    }
}

/// A linear code over an extension field, held as an exact generator matrix.
#[pyclass]
struct LinearCode {
    inner: agqec_core::LinearCode,
}

#[pymethods]
impl LinearCode {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn field_order(&self) -> u64 {
        self.inner.field().order()
    }

    /// Generator matrix rows as integer element encodings.
    fn generator(&self) -> Vec<Vec<u64>> {
        self.inner.generator().row_vecs()
    }

    fn parity_check(&self) -> Vec<Vec<u64>> {
        self.inner.parity_check().row_vecs()
    }

    fn dual(&self) -> LinearCode {
        LinearCode { inner: self.inner.dual() }
    }

    /// Certified (lower, upper) bracket on the minimum weight; equal values
    /// mean the distance is exact.  An end the enumeration could not resolve
    /// (zero code, or a budget too small to find any codeword) is None.
    #[pyo3(signature = (budget=None))]
    fn min_weight(&self, budget: Option<u64>) -> (Option<u64>, Option<u64>) {
        let b = min_weight_bound(&self.inner, budget.unwrap_or(DEFAULT_BUDGET));
        let cap = |v: u64| (v != INFINITE_WEIGHT).then_some(v);
        (cap(b.lower), cap(b.upper))
    }

    fn __repr__(&self) -> String {
        format!("LinearCode(n={}, k={}, q={})", self.inner.n(), self.inner.k(), self.inner.field().order())
    }
}

/// A CSS quantum code assembled from a nested pair of classical codes.
#[pyclass]
struct CssCode {
    inner: agqec_core::css::CssCode,
}

#[pymethods]
impl CssCode {
    #[getter]
    fn n(&self) -> usize {
        self.inner.params.n
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.params.k
    }

    #[getter]
    fn d_lb(&self) -> Option<u64> {
        self.inner.params.d_lb
    }

    #[getter]
    fn d_exact(&self) -> Option<u64> {
        self.inner.params.d_exact
    }

    #[getter]
    fn alphabet(&self) -> u64 {
        self.inner.params.alphabet
    }

    /// Singleton-defect upper bound n + 2 - k - 2 d, from the best distance
    /// knowledge available.
    #[getter]
    fn singleton_defect(&self) -> Option<i64> {
        self.inner.params.sd
    }

    #[getter]
    fn inner_code(&self) -> LinearCode {
        LinearCode { inner: self.inner.c1.clone() }
    }

    #[getter]
    fn outer_code(&self) -> LinearCode {
        LinearCode { inner: self.inner.c2.clone() }
    }

    /// X-type stabilizer generators (rows spanning the inner code).
    fn x_stabilizers(&self) -> Vec<Vec<u64>> {
        self.inner.stabilizers().h_x.row_vecs()
    }

    /// Z-type stabilizer generators (rows spanning the dual of the outer code).
    fn z_stabilizers(&self) -> Vec<Vec<u64>> {
        self.inner.stabilizers().h_z.row_vecs()
    }

    /// The commutation identity H_X H_Z^T = 0.
    fn commutes(&self) -> PyResult<bool> {
        self.inner.stabilizers().commutes().map_err(to_py)
    }

    /// Certify the distance by bounding both coset minima; returns a dict
    /// with the per-side and overall (lower, upper) brackets and updates the
    /// stored parameters.  Equal bracket ends mean the value is exact; an
    /// unresolved or empty end of a bracket is reported as None.
    #[pyo3(signature = (budget=None))]
    fn certify<'py>(&mut self, py: Python<'py>, budget: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
        let dist = self
            .inner
            .certify_distance(budget.unwrap_or(DEFAULT_BUDGET))
            .map_err(to_py)?;
        let pair = |b: agqec_core::minweight::WeightBound| {
            let cap = |v: u64| (v != INFINITE_WEIGHT).then_some(v);
            (cap(b.lower), cap(b.upper))
        };
        let d = PyDict::new(py);
        d.set_item("x_side", pair(dist.x_side))?;
        d.set_item("z_side", pair(dist.z_side))?;
        d.set_item("overall", pair(dist.overall))?;
        d.set_item("exact", dist.overall.is_exact())?;
        Ok(d)
    }

    fn __str__(&self) -> String {
        format!("{}", self.inner.params)
    }

    fn __repr__(&self) -> String {
        format!("CssCode({})", self.inner.params)
    }
}

/// Evaluation code from the divisor with the given coefficients on the last
/// rational places, evaluated at all remaining rational places.
#[pyfunction]
fn make_code(curve: &Curve, coeffs: Vec<i64>) -> PyResult<LinearCode> {
    let div = tail_divisor(&curve.inner, &coeffs).map_err(to_py)?;
    let places = tail_evaluation_places(&curve.inner, coeffs.len());
    Ok(LinearCode { inner: evaluation_code(&curve.inner, &div, &places).map_err(to_py)? })
}

/// CSS code from the nested pair of multi-point codes with inner
/// coefficients `a` and outer coefficients `b` (componentwise a <= b).
#[pyfunction]
fn css_pair(curve: &Curve, a: Vec<i64>, b: Vec<i64>) -> PyResult<CssCode> {
    Ok(CssCode { inner: t_point_build(&curve.inner, &a, &b).map_err(to_py)? })
}

/// CSS code supported on a degree-2 place, with inner coefficient t1 and
/// outer coefficient t2.
#[pyfunction]
fn css_degree2(curve: &Curve, t1: i64, t2: i64) -> PyResult<CssCode> {
    Ok(CssCode { inner: hyperelliptic_build(&curve.inner, t1, t2).map_err(to_py)? })
}

/// Expand a CSS pair built from `a`, `b` on the curve down to the prime
/// field p using dual bases on the two sides.
#[pyfunction]
fn css_expanded(curve: &Curve, a: Vec<i64>, b: Vec<i64>, p: u64) -> PyResult<CssCode> {
    let css = t_point_build(&curve.inner, &a, &b).map_err(to_py)?;
    Ok(CssCode { inner: expand::expanded_css(&css.c1, &css.c2, p).map_err(to_py)? })
}

/// Recompute one reference table (1, 2, or 3): a list of
/// (label, published, computed, matches) tuples.
#[pyfunction]
fn table_report(which: u8) -> PyResult<Vec<(String, String, String, bool)>> {
    Ok(tables::report_table(which)
        .map_err(to_py)?
        .into_iter()
        .map(|r| {
            let ok = r.matches();
            (r.label, r.published.to_string(), r.computed.to_string(), ok)
        })
        .collect())
}

/// Tower data at one level: genus, rational-place count, and their ratio.
#[pyfunction]
fn tower_level(py: Python<'_>, q2: u64, index: u32) -> PyResult<Bound<'_, PyDict>> {
    let q = int_sqrt(q2)?;
    let l = gs_tower_level(q, index).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("index", l.index)?;
    d.set_item("genus", l.genus)?;
    d.set_item("places", l.n_places)?;
    d.set_item("ratio", l.ratio.map(|r| r.to_string()))?;
    Ok(d)
}

/// Rate/distance schedule at one tower level for target rate `c` (an exact
/// fraction such as "1/10"), divisors on `t` places, optionally expanded to
/// the prime field `prime`.
#[pyfunction]
#[pyo3(signature = (q2, index, c, t=2, prime=None))]
fn tower_schedule<'py>(
    py: Python<'py>,
    q2: u64,
    index: u32,
    c: &str,
    t: i64,
    prime: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let q = int_sqrt(q2)?;
    let level = gs_tower_level(q, index).map_err(to_py)?;
    let rate = parse_ratio(c)?;
    let s = match prime {
        None => t_point_schedule(&level, rate, i128::from(t)).map_err(to_py)?,
        Some(p) => {
            let r = (1..=63)
                .find(|&r| p.checked_pow(r).is_some_and(|v| v == q))
                .ok_or_else(|| PyValueError::new_err(format!("{q} is not a power of {p}")))?;
            expansion_schedule(&level, rate, p, r).map_err(to_py)?
        }
    };
    let d = PyDict::new(py);
    d.set_item("level", s.level)?;
    d.set_item("n", s.n)?;
    d.set_item("k", s.k)?;
    d.set_item("sum_b", s.sum_b)?;
    d.set_item("b_split", s.b_split.clone())?;
    d.set_item("sum_a", s.sum_a)?;
    d.set_item("d_lb", s.d_lb)?;
    d.set_item("rate", s.rate.to_string())?;
    d.set_item("rel_d", s.rel_d.to_string())?;
    d.set_item("rel_d_limit", s.rel_d_limit.to_string())?;
    d.set_item("note", s.note)?;
    Ok(d)
}

fn int_sqrt(q2: u64) -> PyResult<u64> {
    (1..=q2)
        .take_while(|v| v * v <= q2)
        .find(|v| v * v == q2)
        .ok_or_else(|| PyValueError::new_err(format!("{q2} is not a perfect square")))
}

#[pymodule]
fn agqec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add_class::<LinearCode>()?;
    m.add_class::<CssCode>()?;
    m.add_function(wrap_pyfunction!(make_code, m)?)?;
    m.add_function(wrap_pyfunction!(css_pair, m)?)?;
    m.add_function(wrap_pyfunction!(css_degree2, m)?)?;
    m.add_function(wrap_pyfunction!(css_expanded, m)?)?;
    m.add_function(wrap_pyfunction!(table_report, m)?)?;
    m.add_function(wrap_pyfunction!(tower_level, m)?)?;
    m.add_function(wrap_pyfunction!(tower_schedule, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
