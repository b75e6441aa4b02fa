//! Python module `gelfand`: thin wrappers over `gelfand_core`.
//!
//! Rationals cross the boundary as `fractions.Fraction`; inputs accept
//! anything whose `str()` parses as `p/q`.

use std::str::FromStr;

use gelfand_core::charring::{self, GroupDatum};
use gelfand_core::cli::{self, Config, Format};
use gelfand_core::dirlim::{self, Backend, DegreeLadder, Scalar, SphereConstants};
use gelfand_core::fock::{self, HeisenbergPoint};
use gelfand_core::nilpf::{self, TwoStepAlgebra};
use gelfand_core::numerics::Tolerances;
use gelfand_core::rootsys::{self, DominantWeight, Family};
use gelfand_core::symmpair;
use num_complex::Complex64;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

pub fn to_py_err(e: gelfand_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|_| format!("not a rational number: `{s}`"))
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn scalar<'py>(py: Python<'py>, s: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    match s {
        Scalar::Exact(r) => fraction(py, r),
        Scalar::Float(x) => Ok(x.into_pyobject(py)?.into_any()),
    }
}

fn rationals(values: &[Bound<'_, PyAny>]) -> PyResult<Vec<BigRational>> {
    values.iter().map(|v| parse_rational(&v.str()?.to_cow()?).map_err(PyValueError::new_err)).collect()
}

fn family(letter: &str) -> PyResult<Family> {
    let c = letter.chars().next().ok_or_else(|| PyValueError::new_err("empty family"))?;
    Family::from_letter(c.to_ascii_uppercase()).map_err(to_py_err)
}

/// Dimension of the irreducible representation with highest weight `coeffs`
/// (fundamental coordinates) by the Weyl dimension formula.
#[pyfunction]
fn weyl_dimension(family_letter: &str, coeffs: Vec<i64>) -> PyResult<u128> {
    let f = family(family_letter)?;
    let rs = rootsys::build_root_system(f, coeffs.len()).map_err(to_py_err)?;
    let w = DominantWeight::new(f, coeffs).map_err(to_py_err)?;
    rootsys::weyl_dimension(&rs, &w).map_err(to_py_err)
}

/// Same dimension summed from Freudenthal weight multiplicities.
#[pyfunction]
fn freudenthal_dimension(family_letter: &str, coeffs: Vec<i64>) -> PyResult<u128> {
    let f = family(family_letter)?;
    let rs = rootsys::build_root_system(f, coeffs.len()).map_err(to_py_err)?;
    let w = DominantWeight::new(f, coeffs).map_err(to_py_err)?;
    rootsys::freudenthal_dimension(&rs, &w).map_err(to_py_err)
}

/// `(quadrature, exact)` for `∫_R e^{-2|t|} |t|^k dt`.
#[pyfunction]
fn gamma_moment(k: u32) -> (f64, f64) {
    let g = gelfand_core::numerics::gamma_moment(k);
    (2.0 * g.quadrature, g.exact_full_line)
}

#[pyfunction]
fn regular_norm_sq<'py>(py: Python<'py>, n: u32, k: u32) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &fock::regular_norm_sq(n, k))
}

#[pyfunction]
fn matrix_coefficient(t: f64, l: Vec<usize>, m: Vec<usize>, z: f64, w: Vec<Complex64>, cutoff: usize) -> PyResult<Complex64> {
    fock::matrix_coefficient(t, &l, &m, &HeisenbergPoint::new(z, w), cutoff).map_err(to_py_err)
}

/// Squared zonal projection constant `c(m, n, d)^2`, exact.
#[pyfunction]
fn zonal_constant_sq<'py>(py: Python<'py>, m: usize, n: usize, d: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &symmpair::zonal_projection_constant_sq(m, n, d).map_err(to_py_err)?)
}

/// `c(m, n, d)` by sphere quadrature or from Gegenbauer values.
#[pyfunction]
#[pyo3(signature = (m, n, d, method = "quadrature"))]
fn zonal_constant(m: usize, n: usize, d: usize, method: &str) -> PyResult<f64> {
    match method {
        "quadrature" => symmpair::zonal_constant_quadrature(m, n, d),
        "gegenbauer" => symmpair::zonal_constant_gegenbauer(m, n, d),
        "exact" => symmpair::zonal_projection_constant(m, n, d),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
    .map_err(to_py_err)
}

/// A compact group acting linearly, from a table row id such as `kac:2`.
#[pyclass(name = "GroupAction", frozen)]
pub struct PyGroupAction {
    inner: GroupDatum,
}

#[pymethods]
impl PyGroupAction {
    #[staticmethod]
    fn from_row(row: &str, value: i64) -> PyResult<Self> {
        let r = charring::lookup_row(row).map_err(to_py_err)?;
        Ok(PyGroupAction { inner: r.instantiate(value).map_err(to_py_err)? })
    }

    #[staticmethod]
    fn smallest_admissible(row: &str) -> PyResult<Option<i64>> {
        Ok(charring::lookup_row(row).map_err(to_py_err)?.smallest_admissible())
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    fn space_dim(&self) -> PyResult<usize> {
        self.inner.space_dim().map_err(to_py_err)
    }

    /// `[(highest, multiplicity)]` for the degree-`d` polynomials.
    fn sym_power(&self, d: usize) -> PyResult<Vec<(Vec<Vec<i64>>, u64)>> {
        let dec = charring::sym_power_decompose(&self.inner, d).map_err(to_py_err)?;
        Ok(dec.entries.into_iter().map(|e| (e.highest, e.mult)).collect())
    }

    fn is_multiplicity_free(&self, degree_bound: usize) -> PyResult<bool> {
        let r = charring::is_multiplicity_free_polynomial_action(&self.inner, degree_bound).map_err(to_py_err)?;
        Ok(r.multiplicity_free)
    }

    fn is_stable_into(&self, larger: &PyGroupAction, d: usize) -> PyResult<bool> {
        Ok(charring::check_stability(&self.inner, &larger.inner, d).map_err(to_py_err)?.stable)
    }

    fn __repr__(&self) -> String {
        format!("GroupAction({})", self.inner.name())
    }
}

/// A 2-step nilpotent Lie algebra `v + z`.
#[pyclass(name = "Algebra", frozen)]
pub struct PyAlgebra {
    inner: TwoStepAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// `heis:n`, `quat:n`, `free:n` or `un:n`, joined by `+`.
    #[staticmethod]
    fn from_id(id: &str) -> PyResult<Self> {
        Ok(PyAlgebra { inner: nilpf::algebra_from_id(id).map_err(to_py_err)? })
    }

    /// Structure constants as `(i, j, k, c)` with `[v_i, v_j] = c z_k`.
    #[staticmethod]
    fn from_brackets(name: &str, dim_v: usize, dim_z: usize, brackets: Vec<(usize, usize, usize, Bound<'_, PyAny>)>) -> PyResult<Self> {
        let mut entries = Vec::with_capacity(brackets.len());
        for (i, j, k, c) in brackets {
            let c = parse_rational(&c.str()?.to_cow()?).map_err(PyValueError::new_err)?;
            entries.push((i, j, k, c));
        }
        Ok(PyAlgebra { inner: nilpf::build_two_step(name, dim_v, dim_z, &entries).map_err(to_py_err)? })
    }

    #[getter]
    fn dim_v(&self) -> usize {
        self.inner.dim_v
    }

    #[getter]
    fn dim_z(&self) -> usize {
        self.inner.dim_z
    }

    /// The Pfaffian polynomial `P(t)` in `z1, z2, …`.
    fn pfaffian_polynomial(&self) -> String {
        nilpf::pfaffian_polynomial(&self.inner).poly.to_string()
    }

    /// `Pf(b_t)` at a rational point.
    fn pfaffian_at<'py>(&self, py: Python<'py>, t: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let b = nilpf::b_form(&self.inner, &rationals(&t)?).map_err(to_py_err)?;
        fraction(py, &nilpf::pfaffian(&b).map_err(to_py_err)?)
    }

    fn is_square_integrable(&self) -> bool {
        nilpf::is_generically_square_integrable(&self.inner)
    }

    fn plancherel_density(&self, t: Vec<f64>) -> PyResult<f64> {
        nilpf::plancherel_density(&self.inner, &t).map_err(to_py_err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, dim_v={}, dim_z={})", self.inner.name, self.inner.dim_v, self.inner.dim_z)
    }
}

/// The truncated Fock-model operator `π_t(z, w)`.
#[pyclass(name = "FockOperator", frozen)]
pub struct PyFockOperator {
    inner: fock::FockOperator,
}

#[pymethods]
impl PyFockOperator {
    #[new]
    fn new(t: f64, z: f64, w: Vec<Complex64>, cutoff: usize) -> PyResult<Self> {
        let g = HeisenbergPoint::new(z, w);
        Ok(PyFockOperator { inner: fock::fock_operator(g.dim(), t, &g, cutoff).map_err(to_py_err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.basis.len()
    }

    #[getter]
    fn truncation_estimate(&self) -> f64 {
        self.inner.truncation_estimate
    }

    fn entry(&self, l: Vec<usize>, m: Vec<usize>) -> PyResult<Complex64> {
        self.inner.entry(&l, &m).map_err(to_py_err)
    }

    /// Row-major matrix in the graded-lex monomial order.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let m = &self.inner.matrix;
        (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
    }

    fn unitarity_defect(&self, degree: usize) -> f64 {
        self.inner.unitarity_defect(degree)
    }
}

/// Protected-block group-law defect for `n = 1`.
#[pyfunction]
#[pyo3(signature = (t, g, h, cutoff = 20, degree = 10))]
fn representation_defect(t: f64, g: (f64, Vec<Complex64>), h: (f64, Vec<Complex64>), cutoff: usize, degree: usize) -> PyResult<f64> {
    let (g, h) = (HeisenbergPoint::new(g.0, g.1), HeisenbergPoint::new(h.0, h.1));
    Ok(fock::representation_defect(g.dim(), t, &g, &h, cutoff, degree).map_err(to_py_err)?.protected)
}

/// A ladder of formal degrees and projection constants over nested levels.
#[pyclass(name = "Ladder", frozen)]
pub struct PyLadder {
    inner: DegreeLadder,
}

#[pymethods]
impl PyLadder {
    /// Harmonic polynomials of degree `d` on the spheres `S^{n}`.
    #[staticmethod]
    #[pyo3(signature = (levels, d, source = "exact"))]
    fn sphere(levels: Vec<usize>, d: usize, source: &str) -> PyResult<Self> {
        let source = match source {
            "exact" => SphereConstants::Exact,
            "quadrature" => SphereConstants::Quadrature,
            "gegenbauer" => SphereConstants::Gegenbauer,
            other => return Err(PyValueError::new_err(format!("unknown source `{other}`"))),
        };
        Ok(PyLadder { inner: dirlim::sphere_ladder(&levels, d, source).map_err(to_py_err)? })
    }

    /// Degree-`d` polynomials on `C^n` under `U(n)`.
    #[staticmethod]
    fn unitary(levels: Vec<usize>, d: usize) -> PyResult<Self> {
        Ok(PyLadder { inner: dirlim::un_polynomial_ladder(&levels, d).map_err(to_py_err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (levels, t, measured = true))]
    fn heisenberg(levels: Vec<usize>, t: f64, measured: bool) -> PyResult<Self> {
        let l = dirlim::heisenberg_ladder(&levels, t, measured, &Tolerances::default()).map_err(to_py_err)?;
        Ok(PyLadder { inner: l })
    }

    #[getter]
    fn backend(&self) -> &'static str {
        match self.inner.backend {
            Backend::Sphere => "sphere",
            Backend::Unitary => "unitary",
            Backend::Heisenberg => "heisenberg",
        }
    }

    #[getter]
    fn levels(&self) -> Vec<usize> {
        self.inner.levels.clone()
    }

    fn is_exact(&self) -> bool {
        self.inner.is_exact()
    }

    fn deg<'py>(&self, py: Python<'py>, level: usize) -> PyResult<Bound<'py, PyAny>> {
        scalar(py, &self.inner.deg_of(level).map_err(to_py_err)?)
    }

    fn c_sq<'py>(&self, py: Python<'py>, m: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
        scalar(py, &self.inner.c_sq_of(m, n).map_err(to_py_err)?)
    }

    fn cocycle_residual<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        scalar(py, &self.inner.cocycle_residual())
    }

    /// `(plain, tilde)` residuals of the commuting square at `n <= m`.
    fn commuting_square<'py>(&self, py: Python<'py>, m: usize, n: usize) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let sq = self.inner.verify_commuting_square(m, n).map_err(to_py_err)?;
        Ok((scalar(py, &sq.plain)?, scalar(py, &sq.tilde)?))
    }
}

/// Runs a verification suite and returns its JSON report(s) as text.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, max_k = None, rank = None, degree = None, algebra = None, row = None, t = None, cutoff = None))]
#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    seed: u64,
    max_k: Option<u32>,
    rank: Option<usize>,
    degree: Option<usize>,
    algebra: Option<String>,
    row: Option<String>,
    t: Option<Vec<f64>>,
    cutoff: Option<usize>,
) -> PyResult<Vec<String>> {
    let config = Config { suite: suite.to_string(), seed, max_k, rank, degree, algebra, row, t, cutoff, ..Config::default() };
    let reports = cli::run_suite(&config).map_err(to_py_err)?;
    Ok(reports.iter().map(|r| cli::emit_report(r, Format::Json)).collect())
}

#[pymodule]
pub fn gelfand(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(freudenthal_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_moment, m)?)?;
    m.add_function(wrap_pyfunction!(regular_norm_sq, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(representation_defect, m)?)?;
    m.add_function(wrap_pyfunction!(zonal_constant_sq, m)?)?;
    m.add_function(wrap_pyfunction!(zonal_constant, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_class::<PyGroupAction>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyFockOperator>()?;
    m.add_class::<PyLadder>()?;
    Ok(())
}
