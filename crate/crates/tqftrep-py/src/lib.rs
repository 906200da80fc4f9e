//! Python bindings: exposes the evaluation context, exact scalars, path
//! bases, representation matrices and the image-analysis entry points.

use num::Complex;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tqftrep::analysis::{self, BfsOutcome, IrredVerdict, OrderVerdict};
use tqftrep::braid::{self, BraidWord, PathVector, RepVariant};
use tqftrep::cyclo::CycloScalar;
use tqftrep::error::TqftError;
use tqftrep::matrix::CycloMatrix;
use tqftrep::recoupling::{self, ColorTriple};
use tqftrep::rt::{self, RtContext};
use tqftrep::theory::TheoryCtx;

fn err(e: TqftError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An exact element of the cyclotomic field attached to some conductor.
#[pyclass(name = "Scalar", from_py_object)]
#[derive(Clone)]
struct PyScalar {
    inner: CycloScalar,
}

#[pymethods]
impl PyScalar {
    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }

    fn __add__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __neg__(&self) -> PyScalar {
        PyScalar {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &PyScalar) -> bool {
        self.inner == other.inner
    }

    fn inv(&self) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.inv().map_err(err)?,
        })
    }

    fn pow(&self, k: i64) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.pow(k).map_err(err)?,
        })
    }

    fn conj(&self) -> PyScalar {
        PyScalar {
            inner: self.inner.conj(),
        }
    }

    fn galois(&self, t: u64) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.galois(t).map_err(err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    /// Multiplicative order, or None when not a root of unity.
    fn root_of_unity_order(&self) -> PyResult<Option<u64>> {
        self.inner.root_of_unity_order().map_err(err)
    }

    /// Numerical value at zeta_m -> exp(2 pi i k / m).
    fn embed(&self, k: u64) -> PyResult<Complex<f64>> {
        self.inner.embed(k).map_err(err)
    }

    /// Exact coordinates as strings, lowest power first.
    fn coeffs(&self) -> Vec<String> {
        self.inner
            .coords()
            .iter()
            .map(tqftrep::cyclo::rational_to_string)
            .collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable")
    }
}

/// An exact represented braid element with its ordered path basis.
#[pyclass(name = "RepMatrix", from_py_object)]
#[derive(Clone)]
struct PyRepMatrix {
    ctx_m: u64,
    ctx_s: u64,
    n: usize,
    m_color: i64,
    variant: RepVariant,
    basis: Vec<PathVector>,
    mat: CycloMatrix,
}

impl PyRepMatrix {
    fn from_rep(rm: braid::RepMatrix) -> PyRepMatrix {
        PyRepMatrix {
            ctx_m: rm.ctx_m,
            ctx_s: rm.ctx_s,
            n: rm.n,
            m_color: rm.m_color,
            variant: rm.variant,
            basis: rm.basis,
            mat: rm.mat,
        }
    }

    fn to_rep(&self) -> braid::RepMatrix {
        braid::RepMatrix {
            ctx_m: self.ctx_m,
            ctx_s: self.ctx_s,
            n: self.n,
            m_color: self.m_color,
            variant: self.variant,
            basis: self.basis.clone(),
            mat: self.mat.clone(),
        }
    }
}

#[pymethods]
impl PyRepMatrix {
    #[getter]
    fn dim(&self) -> usize {
        self.mat.dim()
    }

    #[getter]
    fn basis(&self) -> Vec<Vec<i64>> {
        self.basis.iter().map(|p| p.0.clone()).collect()
    }

    fn entry(&self, i: usize, j: usize) -> PyResult<PyScalar> {
        if i >= self.mat.dim() || j >= self.mat.dim() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(PyScalar {
            inner: self.mat.get(i, j).clone(),
        })
    }

    fn trace(&self) -> PyScalar {
        PyScalar {
            inner: self.mat.trace(),
        }
    }

    fn det(&self) -> PyScalar {
        PyScalar {
            inner: self.mat.det(),
        }
    }

    fn mul(&self, other: &PyRepMatrix) -> PyResult<PyRepMatrix> {
        if self.mat.dim() != other.mat.dim() || self.ctx_m != other.ctx_m {
            return Err(PyValueError::new_err("incompatible matrices"));
        }
        let mut out = self.clone();
        out.mat = self.mat.mul(&other.mat);
        Ok(out)
    }

    fn inverse(&self) -> PyResult<PyRepMatrix> {
        let mut out = self.clone();
        out.mat = self.mat.inverse().map_err(err)?;
        Ok(out)
    }

    /// The scalar lambda with M = lambda I, when M is scalar.
    fn as_scalar(&self) -> Option<PyScalar> {
        self.mat.as_scalar().map(|s| PyScalar { inner: s })
    }

    /// Least n with M^n scalar, or None when certified infinite.
    fn projective_order(&self) -> PyResult<Option<u64>> {
        match analysis::projective_order(&self.mat).map_err(err)?.verdict {
            OrderVerdict::Finite(n) => Ok(Some(n)),
            OrderVerdict::InfiniteCertified { .. } => Ok(None),
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.to_rep()).expect("serializable")
    }

    fn __repr__(&self) -> String {
        format!(
            "RepMatrix(m={}, s={}, n={}, m_color={}, dim={})",
            self.ctx_m,
            self.ctx_s,
            self.n,
            self.m_color,
            self.mat.dim()
        )
    }
}

/// The evaluation context: A = zeta_m^s, q = A^-4 and the color bound.
#[pyclass(name = "Theory")]
struct PyTheory {
    ctx: TheoryCtx,
}

#[pymethods]
impl PyTheory {
    #[new]
    #[pyo3(signature = (m, s = 1))]
    fn new(m: u64, s: u64) -> PyResult<Self> {
        Ok(PyTheory {
            ctx: TheoryCtx::new(m, s).map_err(err)?,
        })
    }

    /// A of order 4r, so the effective level is r.
    #[staticmethod]
    fn su2_level(r: u64) -> PyResult<Self> {
        Ok(PyTheory {
            ctx: TheoryCtx::su2_level(r).map_err(err)?,
        })
    }

    /// A of order 2r for odd r.
    #[staticmethod]
    fn so3_level(r: u64) -> PyResult<Self> {
        Ok(PyTheory {
            ctx: TheoryCtx::so3_level(r).map_err(err)?,
        })
    }

    #[getter]
    fn m(&self) -> u64 {
        self.ctx.m()
    }

    #[getter]
    fn s(&self) -> u64 {
        self.ctx.s()
    }

    #[getter]
    fn r_eff(&self) -> u64 {
        self.ctx.r_eff()
    }

    #[getter]
    fn color_max(&self) -> i64 {
        self.ctx.color_max()
    }

    fn a(&self) -> PyScalar {
        PyScalar {
            inner: self.ctx.a().clone(),
        }
    }

    fn q(&self) -> PyScalar {
        PyScalar {
            inner: self.ctx.q().clone(),
        }
    }

    fn a_pow(&self, k: i64) -> PyScalar {
        PyScalar {
            inner: self.ctx.a_pow(k),
        }
    }

    fn qnum(&self, n: i64) -> PyScalar {
        PyScalar {
            inner: self.ctx.qint(n),
        }
    }

    fn bracket(&self, k: i64) -> PyScalar {
        PyScalar {
            inner: recoupling::bracket(&self.ctx, k),
        }
    }

    fn admissible(&self, i: i64, j: i64, k: i64) -> bool {
        recoupling::admissible(&self.ctx, ColorTriple(i, j, k))
    }

    fn twist_coeff(&self, c: i64, a: i64, b: i64) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: recoupling::twist_coeff(&self.ctx, c, a, b).map_err(err)?,
        })
    }

    fn theta(&self, a: i64, b: i64, c: i64) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: recoupling::theta(&self.ctx, a, b, c).map_err(err)?,
        })
    }

    #[pyo3(signature = (ea, eb, ec, ed, ee, ef))]
    fn tet(&self, ea: i64, eb: i64, ec: i64, ed: i64, ee: i64, ef: i64) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: recoupling::tet(&self.ctx, ea, eb, ec, ed, ee, ef).map_err(err)?,
        })
    }

    #[pyo3(signature = (a, b, i, c, d, j))]
    fn sixj(&self, a: i64, b: i64, i: i64, c: i64, d: i64, j: i64) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: recoupling::sixj(&self.ctx, a, b, i, c, d, j).map_err(err)?,
        })
    }

    fn dehn_twist_scalar(&self, j: i64) -> PyScalar {
        PyScalar {
            inner: braid::dehn_twist_scalar(&self.ctx, j),
        }
    }

    fn path_basis(&self, n: usize, m_color: i64) -> PyResult<Vec<Vec<i64>>> {
        Ok(braid::path_basis(&self.ctx, n, m_color)
            .map_err(err)?
            .into_iter()
            .map(|p| p.0)
            .collect())
    }

    #[pyo3(signature = (n, m_color, gen = None, word = None, variant = "rhoTilde"))]
    fn rep_matrix(
        &self,
        n: usize,
        m_color: i64,
        gen: Option<usize>,
        word: Option<&str>,
        variant: &str,
    ) -> PyResult<PyRepMatrix> {
        let variant = match variant {
            "rho" => RepVariant::Rho,
            "rhoTilde" => RepVariant::RhoTilde,
            other => {
                return Err(PyValueError::new_err(format!(
                    "variant must be rho or rhoTilde, got {other}"
                )))
            }
        };
        let rm = match (gen, word) {
            (Some(i), None) => braid::rho_gen(&self.ctx, n, m_color, i, variant).map_err(err)?,
            (None, Some(w)) => {
                let word = BraidWord::parse(n, w).map_err(err)?;
                braid::rho_word(&self.ctx, n, m_color, &word, variant).map_err(err)?
            }
            _ => {
                return Err(PyValueError::new_err(
                    "give exactly one of gen or word",
                ))
            }
        };
        Ok(PyRepMatrix::from_rep(rm))
    }

    /// (all_pass, JSON report) for the exact relation suite.
    fn verify_relations(&self, n: usize, m_color: i64) -> PyResult<(bool, String)> {
        let report = braid::verify_relations(&self.ctx, n, m_color).map_err(err)?;
        Ok((
            report.all_pass(),
            serde_json::to_string(&report).expect("serializable"),
        ))
    }

    fn generator_orders(&self, n: usize, m_color: i64) -> PyResult<Vec<u64>> {
        analysis::generator_order_row(&self.ctx, n, m_color).map_err(err)
    }

    #[pyo3(signature = (n, m_color, max_word_len = 6, bfs_cap = 100_000))]
    fn analyze_image(
        &self,
        n: usize,
        m_color: i64,
        max_word_len: usize,
        bfs_cap: u64,
    ) -> PyResult<String> {
        let report = analysis::analyze_image(&self.ctx, n, m_color, max_word_len, bfs_cap)
            .map_err(err)?;
        Ok(serde_json::to_string(&report).expect("serializable"))
    }

    /// Projective group order when the closure fits in the cap, else None.
    fn bfs_closure(&self, n: usize, m_color: i64, cap: u64) -> PyResult<Option<u64>> {
        match analysis::bfs_closure(&self.ctx, n, m_color, cap).map_err(err)? {
            BfsOutcome::Closed { order } => Ok(Some(order)),
            BfsOutcome::Exceeded { .. } => Ok(None),
        }
    }

    fn irreducible(&self, n: usize, m_color: i64) -> PyResult<String> {
        let v = analysis::irreducibility(&self.ctx, n, m_color).map_err(err)?;
        Ok(match v {
            IrredVerdict::Irreducible => "irreducible".into(),
            IrredVerdict::Reducible => "reducible".into(),
            IrredVerdict::CriterionIncomplete => "criterion incomplete".into(),
        })
    }

    /// (pass, max trace deviation) of the balanced-word comparison with
    /// the numeric braiding-matrix side.
    #[pyo3(signature = (n, m_color, trials = 100, max_len = 12, seed = 7))]
    fn rt_compare(
        &self,
        n: usize,
        m_color: i64,
        trials: usize,
        max_len: usize,
        seed: u64,
    ) -> PyResult<(bool, f64)> {
        let rctx = RtContext::new(self.ctx.r_eff()).map_err(err)?;
        let report = rt::check_equivalence(
            &self.ctx, &rctx, n, m_color, trials, max_len, seed, 1e-9,
        )
        .map_err(err)?;
        Ok((report.pass, report.max_trace_dev))
    }

    fn __repr__(&self) -> String {
        format!(
            "Theory(m={}, s={}, r_eff={}, color_max={})",
            self.ctx.m(),
            self.ctx.s(),
            self.ctx.r_eff(),
            self.ctx.color_max()
        )
    }
}

#[pymodule]
fn tqftrep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTheory>()?;
    m.add_class::<PyScalar>()?;
    m.add_class::<PyRepMatrix>()?;
    Ok(())
}
