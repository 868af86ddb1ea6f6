//! Riemannian manifold abstraction and the two concrete geometries used
//! throughout the crate: the round unit sphere S^{n-1} and the flat torus
//! T^d = R^d / (L_1 Z x ... x L_d Z).
//!
//! Points and tangent vectors are plain `DVector<f64>` in the manifold's
//! coordinate representation (ambient coordinates for the sphere, angle
//! coordinates for the torus). Both geometries are complete and homogeneous,
//! so the injectivity radius is a single global constant and the cut locus
//! of a point has a closed form.

mod sphere;
pub(crate) mod torus;

pub use sphere::Sphere;
pub use torus::FlatTorus;

use crate::error::{Error, Result};
use nalgebra::DVector;
use rand::RngCore;

/// A complete Riemannian manifold with closed-form exponential and
/// logarithm maps.
///
/// Implementations must be dyn-compatible so point sets can be processed
/// against a `Box<dyn Manifold>` chosen at runtime.
pub trait Manifold {
    /// Length of the coordinate vectors representing points.
    fn ambient_dim(&self) -> usize;

    /// Intrinsic dimension of the manifold.
    fn dim(&self) -> usize;

    /// Closest point on the manifold to an arbitrary coordinate vector.
    fn project(&self, x: &DVector<f64>) -> Result<DVector<f64>>;

    /// Orthogonal projection of an ambient vector onto the tangent space at `p`.
    fn tangent_project(&self, p: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>>;

    /// Exponential map: follow the geodesic from `p` with initial velocity `v`
    /// for unit time. `v` must lie in the tangent space at `p`.
    fn exp(&self, p: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>>;

    /// Logarithm map: the tangent vector at `p` whose exponential reaches `q`
    /// along a minimizing geodesic.
    ///
    /// Fails with [`Error::CutLocus`] when `q` is on the cut locus of `p` and
    /// the minimizer direction is not unique (for the torus the tie at half
    /// period is broken towards `+L/2`, so only the sphere's antipode fails).
    fn log(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<DVector<f64>>;

    /// Geodesic distance between two points.
    fn dist(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<f64>;

    /// Riemannian inner product of two tangent vectors at `p`.
    ///
    /// Both geometries here carry the metric induced by the Euclidean dot
    /// product in their coordinate representation.
    fn inner(&self, _p: &DVector<f64>, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        u.dot(v)
    }

    /// Norm of a tangent vector at `p`.
    fn norm(&self, p: &DVector<f64>, v: &DVector<f64>) -> f64 {
        self.inner(p, v, v).sqrt()
    }

    /// Point at parameter `t` on the minimizing geodesic from `p` to `q`
    /// (`t = 0` gives `p`, `t = 1` gives `q`).
    fn geodesic(&self, p: &DVector<f64>, q: &DVector<f64>, t: f64) -> Result<DVector<f64>> {
        let v = self.log(p, q)?;
        self.exp(p, &(v * t))
    }

    /// Parallel transport of the tangent vector `v` from `p` to `q` along the
    /// minimizing geodesic.
    fn parallel_transport(
        &self,
        p: &DVector<f64>,
        q: &DVector<f64>,
        v: &DVector<f64>,
    ) -> Result<DVector<f64>>;

    /// Global injectivity radius. Geodesics of length below this bound are
    /// minimizing and `log` is single-valued inside the open ball.
    fn injectivity_radius(&self) -> f64;

    /// Distance from `q` to the cut locus of `p`.
    ///
    /// Zero exactly when `q` lies on the cut locus; values close to zero mean
    /// `log(p, q)` is ill-conditioned.
    fn dist_to_cut(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<f64>;

    /// Orthonormal basis of the tangent space at `p`, expressed in ambient
    /// coordinates. Deterministic in `p`.
    fn tangent_basis(&self, p: &DVector<f64>) -> Result<Vec<DVector<f64>>>;

    /// Sample a point from the uniform (normalized Riemannian volume)
    /// distribution.
    fn random_point(&self, rng: &mut dyn RngCore) -> DVector<f64>;

    /// Cheap chart-based location estimate of a weighted point cloud, used to
    /// initialize iterative estimators. Falls back to the first point when the
    /// configuration is too symmetric for the chart average to be defined.
    fn extrinsic_mean_estimate(
        &self,
        points: &[DVector<f64>],
        weights: &[f64],
    ) -> Result<DVector<f64>>;

    /// True when `p` lies on the manifold up to tolerance `tol`.
    fn is_on_manifold(&self, p: &DVector<f64>, tol: f64) -> bool;

    /// Downcast hook for torus-only algorithms; `None` elsewhere.
    fn as_torus(&self) -> Option<&FlatTorus> {
        None
    }
}

/// Check that a coordinate vector has the expected length.
pub(crate) fn check_dim(expected: usize, v: &DVector<f64>) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// Parse a manifold from a compact spec string.
///
/// Accepted forms:
/// - `sphere:N` — unit sphere S^{N-1} embedded in R^N (N >= 2),
/// - `torus:D` — flat torus T^D with all periods 2*pi (D integer),
/// - `torus:L1,L2,...` — flat torus with explicit periods,
/// - `circle` — shorthand for `torus:1`.
pub fn from_spec(spec: &str) -> Result<Box<dyn Manifold>> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("circle") {
        return Ok(Box::new(FlatTorus::standard(1)?));
    }
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("malformed manifold spec `{spec}`")))?;
    match kind.to_ascii_lowercase().as_str() {
        "sphere" => {
            let n: usize = arg.parse().map_err(|_| {
                Error::InvalidParameter(format!(
                    "sphere spec needs an integer ambient dim, got `{arg}`"
                ))
            })?;
            Ok(Box::new(Sphere::new(n)?))
        }
        "torus" => {
            if arg.contains(',') || arg.contains('.') {
                let periods: Vec<f64> = arg
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::InvalidParameter(format!("bad torus period `{s}`")))
                    })
                    .collect::<Result<_>>()?;
                Ok(Box::new(FlatTorus::new(periods)?))
            } else {
                let d: usize = arg.parse().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "torus spec needs a dimension or period list, got `{arg}`"
                    ))
                })?;
                Ok(Box::new(FlatTorus::standard(d)?))
            }
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown manifold kind `{other}` (expected sphere or torus)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_roundtrip() {
        let m = from_spec("sphere:3").unwrap();
        assert_eq!(m.ambient_dim(), 3);
        assert_eq!(m.dim(), 2);

        let t = from_spec("torus:2").unwrap();
        assert_eq!(t.ambient_dim(), 2);
        assert_eq!(t.dim(), 2);

        let t = from_spec("torus:6.0,4.0").unwrap();
        assert_eq!(t.ambient_dim(), 2);

        let c = from_spec("circle").unwrap();
        assert_eq!(c.ambient_dim(), 1);
    }

    #[test]
    fn spec_rejects_garbage() {
        assert!(from_spec("sphere").is_err());
        assert!(from_spec("sphere:x").is_err());
        assert!(from_spec("klein:2").is_err());
        assert!(from_spec("torus:0").is_err());
    }
}
