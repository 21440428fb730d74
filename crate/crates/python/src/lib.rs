//! Python bindings: charts and coactions as JSON/text, characteristic-number tools on classes.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sections_core::chern;
use sections_core::cobar::{differential_candidates, e2_chart as chart_of, CobarComplex};
use sections_core::comodules::{CoactionMode, Comodule, ComoduleSpec, Family};
use sections_core::exactlin::Partition;
use sections_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::WindowViolation(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn spec(family: &str, d: Option<u32>, r: Option<u32>, p: u64, bound: u32) -> PyResult<ComoduleSpec> {
    let family = Family::from_parts(family, d, r).map_err(to_py)?;
    ComoduleSpec::new(family, p, bound + bound % 2).map_err(to_py)
}

fn cobar(family: &str, d: Option<u32>, r: Option<u32>, p: u64, bound: u32, mode: &str) -> PyResult<CobarComplex> {
    let mode: CoactionMode = mode.parse().map_err(to_py)?;
    CobarComplex::for_spec(spec(family, d, r, p, bound)?, mode).map_err(to_py)
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(to_py)
}

/// E2 chart over `0 <= s <= s_max`, `t <= t_max`, as JSON.
#[pyfunction]
#[pyo3(signature = (family="mtubar", d=None, r=None, p=2, s_max=3, t_max=16, mode="derived"))]
fn e2_chart(
    py: Python<'_>,
    family: &str,
    d: Option<u32>,
    r: Option<u32>,
    p: u64,
    s_max: u32,
    t_max: u32,
    mode: &str,
) -> PyResult<String> {
    let c = cobar(family, d, r, p, t_max, mode)?;
    py.detach(|| chart_of(&c, s_max, t_max).map(|ch| ch.to_json()))
        .map_err(to_py)
}

/// The text grid of the same chart.
#[pyfunction]
#[pyo3(signature = (family="mtubar", d=None, r=None, p=2, s_max=3, t_max=16, mode="derived"))]
fn e2_chart_text(
    py: Python<'_>,
    family: &str,
    d: Option<u32>,
    r: Option<u32>,
    p: u64,
    s_max: u32,
    t_max: u32,
    mode: &str,
) -> PyResult<String> {
    let c = cobar(family, d, r, p, t_max, mode)?;
    py.detach(|| chart_of(&c, s_max, t_max).map(|ch| ch.to_text()))
        .map_err(to_py)
}

/// `E2^{s,t}` as `(free_rank, invariant_factors)`.
#[pyfunction]
#[pyo3(signature = (s, t, family="mtubar", d=None, r=None, p=2, mode="derived"))]
fn e2_group(
    s: u32,
    t: u32,
    family: &str,
    d: Option<u32>,
    r: Option<u32>,
    p: u64,
    mode: &str,
) -> PyResult<(usize, Vec<BigInt>)> {
    let g = cobar(family, d, r, p, t.max(2), mode)?.e2_group(s, t).map_err(to_py)?;
    Ok((g.free_rank, g.invariant_factors))
}

/// Possible Adams-Novikov differentials out of the zero line, as `(r, s, t, group)`.
#[pyfunction]
#[pyo3(signature = (family="mtubar", d=None, r=None, p=2, s_max=4, t_max=20, mode="derived"))]
fn candidates(
    family: &str,
    d: Option<u32>,
    r: Option<u32>,
    p: u64,
    s_max: u32,
    t_max: u32,
    mode: &str,
) -> PyResult<Vec<(u32, u32, u32, String)>> {
    let chart = chart_of(&cobar(family, d, r, p, t_max, mode)?, s_max, t_max).map_err(to_py)?;
    Ok((0..=t_max)
        .step_by(2)
        .flat_map(|t| differential_candidates(&chart, t))
        .map(|c| (c.r, c.s, c.t, c.group))
        .collect())
}

/// The coaction on a basis monomial such as `"v1 B1^7"`.
#[pyfunction]
#[pyo3(signature = (element, family="mtubar", d=None, r=None, p=2, mode="derived"))]
fn coaction(element: &str, family: &str, d: Option<u32>, r: Option<u32>, p: u64, mode: &str) -> PyResult<String> {
    let x = sections_core::bpalgebra::Monomial::parse(element).map_err(to_py)?;
    let spec = spec(family, d, r, p, x.degree(p).max(2))?;
    if !spec.contains(&x) {
        return Err(PyValueError::new_err(format!("{x} is not a basis element of {}", spec.family)));
    }
    let c = Comodule::new(spec, mode.parse().map_err(to_py)?).map_err(to_py)?;
    Ok(c.format_coaction(&c.coaction(&x).map_err(to_py)?))
}

/// `a_d` as an exact fraction string.
#[pyfunction]
fn a_d(d: u32) -> PyResult<String> {
    Ok(chern::a_d(d).map_err(to_py)?.value.to_string())
}

/// `lcm(a_J)` over all refinements `J` of the partition.
#[pyfunction]
#[pyo3(signature = (parts, r=1))]
fn lcm_bound(parts: Vec<u32>, r: u32) -> PyResult<BigInt> {
    Ok(chern::lcm_bound(&partition(parts)?, r).map_err(to_py)?.multiplier)
}

/// An integer combination of products of complex projective spaces.
#[pyclass(name = "CobordismClass", module = "sections_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCobordismClass(chern::CobordismClass);

#[pymethods]
impl PyCobordismClass {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        chern::CobordismClass::parse(text).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn product(dims: Vec<u32>) -> PyResult<Self> {
        chern::CobordismClass::product(&dims).map(Self).map_err(to_py)
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.0.dim()
    }

    fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.0.terms().iter().map(|(k, v)| (k.parts().to_vec(), v.clone())).collect()
    }

    fn s_number(&self, parts: Vec<u32>) -> PyResult<BigInt> {
        Ok(chern::s_number(&self.0, &partition(parts)?))
    }

    fn euler_char(&self) -> BigInt {
        chern::euler_char(&self.0)
    }

    /// `(vanishes, witnesses)` for the rational obstruction at `r`.
    fn rational_obstruction(&self, r: u32) -> PyResult<(bool, Vec<Vec<u32>>)> {
        let o = chern::rational_obstruction(&self.0, r).map_err(to_py)?;
        Ok((o.vanishes, o.witnesses.iter().map(|w| w.parts().to_vec()).collect()))
    }

    /// The full report as JSON.
    fn section_report(&self) -> String {
        serde_json::to_string_pretty(&chern::section_report(&self.0).to_json_value()).expect("serializes")
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(to_py)
    }

    fn __mul__(&self, k: BigInt) -> Self {
        Self(self.0.scale(&k))
    }

    fn __rmul__(&self, k: BigInt) -> Self {
        self.__mul__(k)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CobordismClass('{}')", self.0)
    }
}

#[pymodule]
fn sections_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCobordismClass>()?;
    m.add_function(wrap_pyfunction!(e2_chart, m)?)?;
    m.add_function(wrap_pyfunction!(e2_chart_text, m)?)?;
    m.add_function(wrap_pyfunction!(e2_group, m)?)?;
    m.add_function(wrap_pyfunction!(candidates, m)?)?;
    m.add_function(wrap_pyfunction!(coaction, m)?)?;
    m.add_function(wrap_pyfunction!(a_d, m)?)?;
    m.add_function(wrap_pyfunction!(lcm_bound, m)?)?;
    Ok(())
}
