//! Python bindings. Points cross the boundary as numpy arrays: one point is
//! a 1-d array of ambient coordinates, a point set is an (n, ambient) array.
//! Estimator results come back as dicts mirroring the CLI JSON output.

use manistat::manifold::Manifold;
use manistat::{envelope, mean, median, sampling, stats};
use nalgebra::DVector;
use numpy::{IntoPyArray, PyArray1, PyArray2, PyReadonlyArray1, PyReadonlyArray2};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn err(e: manistat::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_vector(a: &PyReadonlyArray1<f64>) -> DVector<f64> {
    let v = a.as_array();
    DVector::from_iterator(v.len(), v.iter().cloned())
}

fn to_points(a: &PyReadonlyArray2<f64>) -> Vec<DVector<f64>> {
    let view = a.as_array();
    view.rows()
        .into_iter()
        .map(|r| DVector::from_iterator(r.len(), r.iter().cloned()))
        .collect()
}

fn vector_out<'py>(py: Python<'py>, v: &DVector<f64>) -> Bound<'py, PyArray1<f64>> {
    v.iter().cloned().collect::<Vec<f64>>().into_pyarray(py)
}

fn points_out<'py>(py: Python<'py>, pts: &[DVector<f64>]) -> PyResult<Bound<'py, PyArray2<f64>>> {
    let rows: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().cloned().collect()).collect();
    PyArray2::from_vec2(py, &rows).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn make_rng(seed: Option<u64>) -> StdRng {
    match seed {
        Some(s) => StdRng::seed_from_u64(s),
        None => StdRng::from_os_rng(),
    }
}

/// Unit sphere S^{n-1} in ambient dimension n.
#[pyclass(name = "Sphere", frozen)]
struct SpherePy {
    inner: manistat::Sphere,
}

/// Flat torus with one period per coordinate.
#[pyclass(name = "FlatTorus", frozen)]
struct TorusPy {
    inner: manistat::FlatTorus,
}

/// Either manifold, extracted from a Python argument.
enum AnyManifold<'py> {
    Sphere(PyRef<'py, SpherePy>),
    Torus(PyRef<'py, TorusPy>),
}

impl AnyManifold<'_> {
    fn as_dyn(&self) -> &dyn Manifold {
        match self {
            AnyManifold::Sphere(s) => &s.inner,
            AnyManifold::Torus(t) => &t.inner,
        }
    }
}

fn extract_manifold<'py>(obj: &Bound<'py, PyAny>) -> PyResult<AnyManifold<'py>> {
    if let Ok(s) = obj.extract::<PyRef<'py, SpherePy>>() {
        return Ok(AnyManifold::Sphere(s));
    }
    if let Ok(t) = obj.extract::<PyRef<'py, TorusPy>>() {
        return Ok(AnyManifold::Torus(t));
    }
    Err(PyTypeError::new_err("expected a Sphere or FlatTorus"))
}

// One `#[pymethods]` block per type; the macro takes the type-specific
// methods and appends the shared manifold surface.
macro_rules! manifold_pymethods {
    ($ty:ident { $($extra:tt)* }) => {
        #[pymethods]
        impl $ty {
            $($extra)*

        fn ambient_dim(&self) -> usize {
            self.inner.ambient_dim()
        }

        fn dim(&self) -> usize {
            self.inner.dim()
        }

        fn injectivity_radius(&self) -> f64 {
            self.inner.injectivity_radius()
        }

        fn project<'py>(
            &self,
            py: Python<'py>,
            x: PyReadonlyArray1<f64>,
        ) -> PyResult<Bound<'py, PyArray1<f64>>> {
            let p = self.inner.project(&to_vector(&x)).map_err(err)?;
            Ok(vector_out(py, &p))
        }

        fn exp<'py>(
            &self,
            py: Python<'py>,
            p: PyReadonlyArray1<f64>,
            v: PyReadonlyArray1<f64>,
        ) -> PyResult<Bound<'py, PyArray1<f64>>> {
            let q = self.inner.exp(&to_vector(&p), &to_vector(&v)).map_err(err)?;
            Ok(vector_out(py, &q))
        }

        fn log<'py>(
            &self,
            py: Python<'py>,
            p: PyReadonlyArray1<f64>,
            q: PyReadonlyArray1<f64>,
        ) -> PyResult<Bound<'py, PyArray1<f64>>> {
            let v = self.inner.log(&to_vector(&p), &to_vector(&q)).map_err(err)?;
            Ok(vector_out(py, &v))
        }

        fn dist(&self, p: PyReadonlyArray1<f64>, q: PyReadonlyArray1<f64>) -> PyResult<f64> {
            self.inner.dist(&to_vector(&p), &to_vector(&q)).map_err(err)
        }

        fn geodesic<'py>(
            &self,
            py: Python<'py>,
            p: PyReadonlyArray1<f64>,
            q: PyReadonlyArray1<f64>,
            t: f64,
        ) -> PyResult<Bound<'py, PyArray1<f64>>> {
            let g = self
                .inner
                .geodesic(&to_vector(&p), &to_vector(&q), t)
                .map_err(err)?;
            Ok(vector_out(py, &g))
        }

        fn parallel_transport<'py>(
            &self,
            py: Python<'py>,
            p: PyReadonlyArray1<f64>,
            q: PyReadonlyArray1<f64>,
            v: PyReadonlyArray1<f64>,
        ) -> PyResult<Bound<'py, PyArray1<f64>>> {
            let w = self
                .inner
                .parallel_transport(&to_vector(&p), &to_vector(&q), &to_vector(&v))
                .map_err(err)?;
            Ok(vector_out(py, &w))
        }

        /// Orthonormal tangent basis at p, one basis vector per row.
        fn tangent_basis<'py>(
            &self,
            py: Python<'py>,
            p: PyReadonlyArray1<f64>,
        ) -> PyResult<Bound<'py, PyArray2<f64>>> {
            let basis = self.inner.tangent_basis(&to_vector(&p)).map_err(err)?;
            points_out(py, &basis)
        }

        #[pyo3(signature = (n, seed=None))]
        fn random_points<'py>(
            &self,
            py: Python<'py>,
            n: usize,
            seed: Option<u64>,
        ) -> PyResult<Bound<'py, PyArray2<f64>>> {
            let mut rng = make_rng(seed);
            let pts = sampling::random_points(&self.inner, n, &mut rng);
            points_out(py, &pts)
        }
        }
    };
}

manifold_pymethods!(SpherePy {
    #[new]
    fn new(ambient_dim: usize) -> PyResult<Self> {
        Ok(Self {
            inner: manistat::Sphere::new(ambient_dim).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Sphere(ambient_dim={})", self.inner.ambient_dim())
    }
});

manifold_pymethods!(TorusPy {
    #[new]
    fn new(periods: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: manistat::FlatTorus::new(periods).map_err(err)?,
        })
    }

    /// Torus with all periods equal to 2 pi.
    #[staticmethod]
    fn standard(dim: usize) -> PyResult<Self> {
        Ok(Self {
            inner: manistat::FlatTorus::standard(dim).map_err(err)?,
        })
    }

    #[getter]
    fn periods<'py>(&self, py: Python<'py>) -> Bound<'py, PyArray1<f64>> {
        self.inner.periods().to_vec().into_pyarray(py)
    }

    fn __repr__(&self) -> String {
        format!("FlatTorus(periods={:?})", self.inner.periods())
    }
});

/// Wrapped normal distribution on a circle of given period.
#[pyclass(name = "WrappedNormal", frozen)]
struct WrappedNormalPy {
    inner: stats::WrappedNormal,
}

#[pymethods]
impl WrappedNormalPy {
    #[new]
    #[pyo3(signature = (mu, sigma, period=std::f64::consts::TAU))]
    fn new(mu: f64, sigma: f64, period: f64) -> PyResult<Self> {
        Ok(Self {
            inner: stats::WrappedNormal::with_period(mu, sigma, period).map_err(err)?,
        })
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.inner.mu()
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.inner.sigma()
    }

    #[getter]
    fn period(&self) -> f64 {
        self.inner.period()
    }

    fn pdf(&self, x: f64) -> f64 {
        self.inner.pdf(x)
    }

    fn mean_resultant_length(&self) -> f64 {
        self.inner.mean_resultant_length()
    }

    #[pyo3(signature = (n, seed=None))]
    fn sample<'py>(
        &self,
        py: Python<'py>,
        n: usize,
        seed: Option<u64>,
    ) -> Bound<'py, PyArray1<f64>> {
        let mut rng = make_rng(seed);
        self.inner.sample_n(n, &mut rng).into_pyarray(py)
    }

    /// Moment fit from observed angles.
    #[staticmethod]
    #[pyo3(signature = (angles, period=std::f64::consts::TAU))]
    fn fit_moments(angles: PyReadonlyArray1<f64>, period: f64) -> PyResult<Self> {
        let v: Vec<f64> = angles.as_array().iter().cloned().collect();
        Ok(Self {
            inner: stats::WrappedNormal::fit_moments(&v, period).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "WrappedNormal(mu={}, sigma={}, period={})",
            self.inner.mu(),
            self.inner.sigma(),
            self.inner.period()
        )
    }
}

/// Weighted Fréchet mean of a point set.
#[pyfunction]
#[pyo3(signature = (manifold, points, weights=None))]
fn frechet_mean<'py>(
    py: Python<'py>,
    manifold: &Bound<'py, PyAny>,
    points: PyReadonlyArray2<f64>,
    weights: Option<PyReadonlyArray1<f64>>,
) -> PyResult<Bound<'py, PyDict>> {
    let m = extract_manifold(manifold)?;
    let pts = to_points(&points);
    let w = match &weights {
        Some(w) => w.as_array().iter().cloned().collect(),
        None => vec![1.0; pts.len()],
    };
    let r = mean::frechet_mean_weighted(m.as_dyn(), &pts, &w, &mean::FrechetMeanConfig::default())
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("mean", vector_out(py, &r.mean))?;
    out.set_item("variance", r.variance)?;
    out.set_item("grad_norm", r.grad_norm)?;
    out.set_item("iterations", r.iterations)?;
    out.set_item("converged", r.converged)?;
    Ok(out)
}

/// Weighted geometric median of a point set.
#[pyfunction]
#[pyo3(signature = (manifold, points, weights=None))]
fn geometric_median<'py>(
    py: Python<'py>,
    manifold: &Bound<'py, PyAny>,
    points: PyReadonlyArray2<f64>,
    weights: Option<PyReadonlyArray1<f64>>,
) -> PyResult<Bound<'py, PyDict>> {
    let m = extract_manifold(manifold)?;
    let pts = to_points(&points);
    let w = match &weights {
        Some(w) => w.as_array().iter().cloned().collect(),
        None => vec![1.0; pts.len()],
    };
    let r =
        median::geometric_median_weighted(m.as_dyn(), &pts, &w, &median::MedianConfig::default())
            .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("median", vector_out(py, &r.median))?;
    out.set_item("objective", r.objective)?;
    out.set_item("iterations", r.iterations)?;
    out.set_item("converged", r.converged)?;
    Ok(out)
}

/// Spherical Fibonacci lattice on S^2, returned as an (n, 3) array.
#[pyfunction]
fn fibonacci_sphere(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyArray2<f64>>> {
    points_out(py, &sampling::fibonacci_sphere(n))
}

/// Kronecker lattice with the generalized golden ratio on a flat torus.
#[pyfunction]
fn golden_lattice<'py>(
    py: Python<'py>,
    torus: PyRef<'py, TorusPy>,
    n: usize,
) -> PyResult<Bound<'py, PyArray2<f64>>> {
    points_out(py, &sampling::golden_lattice(&torus.inner, n))
}

/// Circular summary statistics of angles on a given period.
#[pyfunction]
#[pyo3(signature = (angles, period=std::f64::consts::TAU))]
fn circular_summary<'py>(
    py: Python<'py>,
    angles: PyReadonlyArray1<f64>,
    period: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let v: Vec<f64> = angles.as_array().iter().cloned().collect();
    let s = stats::circular_summary(&v, period).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("n", s.n)?;
    out.set_item("mean_direction", s.mean_direction)?;
    out.set_item("resultant_length", s.resultant_length)?;
    out.set_item("circular_variance", s.circular_variance)?;
    out.set_item("circular_std", s.circular_std)?;
    Ok(out)
}

/// Quadratic envelope of the Fréchet functional around its minimizer.
#[pyfunction]
#[pyo3(signature = (manifold, points, weights=None, radius=None, dirs=32, shells=4))]
fn frechet_envelope<'py>(
    py: Python<'py>,
    manifold: &Bound<'py, PyAny>,
    points: PyReadonlyArray2<f64>,
    weights: Option<PyReadonlyArray1<f64>>,
    radius: Option<f64>,
    dirs: usize,
    shells: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let m = extract_manifold(manifold)?;
    let pts = to_points(&points);
    let w = match &weights {
        Some(w) => w.as_array().iter().cloned().collect(),
        None => vec![1.0; pts.len()],
    };
    let radius = radius.unwrap_or_else(|| 0.5 * m.as_dyn().injectivity_radius());
    let e = envelope::frechet_envelope(m.as_dyn(), &pts, &w, radius, dirs, shells).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("mean", vector_out(py, &e.mean))?;
    out.set_item("value_at_mean", e.value_at_mean)?;
    out.set_item("radius", e.radius)?;
    out.set_item(
        "hessian_eigenvalues",
        e.hessian_eigenvalues.clone().into_pyarray(py),
    )?;
    out.set_item("alpha", e.bounds.alpha)?;
    out.set_item("beta", e.bounds.beta)?;
    out.set_item("fitted_gradient_norm", e.fitted_gradient_norm)?;
    out.set_item("rms_residual", e.fit.rms_residual)?;
    out.set_item("psd_constraint_active", e.fit.constraint_active)?;
    Ok(out)
}

#[pymodule]
fn manistat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SpherePy>()?;
    m.add_class::<TorusPy>()?;
    m.add_class::<WrappedNormalPy>()?;
    m.add_function(wrap_pyfunction!(frechet_mean, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_median, m)?)?;
    m.add_function(wrap_pyfunction!(fibonacci_sphere, m)?)?;
    m.add_function(wrap_pyfunction!(golden_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(circular_summary, m)?)?;
    m.add_function(wrap_pyfunction!(frechet_envelope, m)?)?;
    Ok(())
}
