//! Fréchet (Karcher) mean of a weighted point set.
//!
//! The mean minimizes F(x) = (1 / 2W) sum_i w_i d(x, p_i)^2 over the
//! manifold, with W the total weight. Its Riemannian gradient is
//! grad F(x) = -(1/W) sum_i w_i log_x(p_i), so the classical fixed-point
//! iteration x <- exp_x(mean of logs) is exactly a unit gradient step;
//! here the step additionally passes through an Armijo line search, which
//! keeps F monotone even for widely spread data on the sphere.

use crate::error::{Error, Result};
use crate::manifold::Manifold;
use crate::optim::{gradient_descent, Cost, GradientDescentConfig, Termination};
use nalgebra::DVector;

/// Options for [`frechet_mean`].
#[derive(Debug, Clone)]
pub struct FrechetMeanConfig {
    /// Stop when the gradient norm (mean log magnitude) drops below this.
    pub grad_tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Optional explicit starting point; defaults to the manifold's chart
    /// average of the data.
    pub initial_point: Option<DVector<f64>>,
}

impl Default for FrechetMeanConfig {
    fn default() -> Self {
        Self {
            grad_tol: 1e-12,
            max_iter: 200,
            initial_point: None,
        }
    }
}

/// Converged Fréchet mean and diagnostics.
#[derive(Debug, Clone)]
pub struct FrechetMeanResult {
    /// Minimizer of the Fréchet functional.
    pub mean: DVector<f64>,
    /// Fréchet variance (1/W) sum w_i d(mean, p_i)^2.
    pub variance: f64,
    /// Gradient norm at the returned point.
    pub grad_norm: f64,
    /// Gradient-descent iterations used.
    pub iterations: usize,
    /// Whether the gradient tolerance was met.
    pub converged: bool,
}

pub(crate) fn validate_weighted_set(
    manifold: &dyn Manifold,
    points: &[DVector<f64>],
    weights: &[f64],
) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if weights.len() != points.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            got: weights.len(),
        });
    }
    let mut total = 0.0;
    for &w in weights {
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weights must be finite and non-negative, got {w}"
            )));
        }
        total += w;
    }
    if total <= 0.0 {
        return Err(Error::InvalidParameter("weights sum to zero".into()));
    }
    for p in points {
        if p.len() != manifold.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: manifold.ambient_dim(),
                got: p.len(),
            });
        }
    }
    Ok(total)
}

struct FrechetCost<'a> {
    manifold: &'a dyn Manifold,
    points: &'a [DVector<f64>],
    weights: &'a [f64],
    total: f64,
}

impl Cost for FrechetCost<'_> {
    fn value(&self, x: &DVector<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (p, &w) in self.points.iter().zip(self.weights) {
            let d = self.manifold.dist(x, p)?;
            acc += w * d * d;
        }
        Ok(acc / (2.0 * self.total))
    }

    fn gradient(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let mut acc = DVector::zeros(self.manifold.ambient_dim());
        for (p, &w) in self.points.iter().zip(self.weights) {
            acc += self.manifold.log(x, p)? * w;
        }
        Ok(acc * (-1.0 / self.total))
    }
}

/// Weighted Fréchet mean.
///
/// Fails on an empty set, invalid weights, or if an iterate lands exactly on
/// the cut locus of a data point (where the functional is not differentiable).
pub fn frechet_mean_weighted(
    manifold: &dyn Manifold,
    points: &[DVector<f64>],
    weights: &[f64],
    cfg: &FrechetMeanConfig,
) -> Result<FrechetMeanResult> {
    let total = validate_weighted_set(manifold, points, weights)?;
    let x0 = match &cfg.initial_point {
        Some(p) => {
            if p.len() != manifold.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: manifold.ambient_dim(),
                    got: p.len(),
                });
            }
            p.clone()
        }
        None => manifold.extrinsic_mean_estimate(points, weights)?,
    };
    let cost = FrechetCost {
        manifold,
        points,
        weights,
        total,
    };
    let gd_cfg = GradientDescentConfig {
        grad_tol: cfg.grad_tol,
        max_iter: cfg.max_iter,
        ..Default::default()
    };
    let res = gradient_descent(manifold, &cost, &x0, &gd_cfg)?;
    // The line search can stall only at the rounding floor of F; the gradient
    // there is still reported honestly below.
    let converged = matches!(res.termination, Termination::Converged)
        || (res.termination == Termination::LineSearchStalled && res.grad_norm < 1e-7);
    Ok(FrechetMeanResult {
        variance: 2.0 * res.value,
        mean: res.point,
        grad_norm: res.grad_norm,
        iterations: res.iterations,
        converged,
    })
}

/// Unweighted Fréchet mean.
pub fn frechet_mean(
    manifold: &dyn Manifold,
    points: &[DVector<f64>],
    cfg: &FrechetMeanConfig,
) -> Result<FrechetMeanResult> {
    let weights = vec![1.0; points.len()];
    frechet_mean_weighted(manifold, points, &weights, cfg)
}

/// Value of the Fréchet functional F(x) = (1/2W) sum w_i d(x, p_i)^2.
pub fn frechet_functional(
    manifold: &dyn Manifold,
    x: &DVector<f64>,
    points: &[DVector<f64>],
    weights: &[f64],
) -> Result<f64> {
    let total = validate_weighted_set(manifold, points, weights)?;
    let mut acc = 0.0;
    for (p, &w) in points.iter().zip(weights) {
        let d = manifold.dist(x, p)?;
        acc += w * d * d;
    }
    Ok(acc / (2.0 * total))
}

/// Riemannian gradient of the Fréchet functional at `x`.
pub fn frechet_gradient(
    manifold: &dyn Manifold,
    x: &DVector<f64>,
    points: &[DVector<f64>],
    weights: &[f64],
) -> Result<DVector<f64>> {
    let total = validate_weighted_set(manifold, points, weights)?;
    let mut acc = DVector::zeros(manifold.ambient_dim());
    for (p, &w) in points.iter().zip(weights) {
        acc += manifold.log(x, p)? * w;
    }
    Ok(acc * (-1.0 / total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{FlatTorus, Sphere};
    use approx::assert_relative_eq;

    fn unit(v: &[f64]) -> DVector<f64> {
        let v = DVector::from_row_slice(v);
        &v / v.norm()
    }

    #[test]
    fn single_point_is_its_own_mean() {
        let s = Sphere::s2();
        let p = unit(&[0.1, -0.3, 0.9]);
        let res =
            frechet_mean(&s, std::slice::from_ref(&p), &FrechetMeanConfig::default()).unwrap();
        assert!(res.converged);
        assert_relative_eq!((res.mean - p).norm(), 0.0, epsilon = 1e-12);
        assert_eq!(res.variance, 0.0);
    }

    #[test]
    fn two_point_mean_is_the_geodesic_midpoint() {
        let s = Sphere::s2();
        let p = unit(&[1.0, 0.0, 0.0]);
        let q = unit(&[0.0, 1.0, 0.0]);
        let res = frechet_mean(&s, &[p.clone(), q.clone()], &FrechetMeanConfig::default()).unwrap();
        let mid = s.geodesic(&p, &q, 0.5).unwrap();
        assert!(res.converged);
        assert!(s.dist(&res.mean, &mid).unwrap() < 1e-10);
    }

    #[test]
    fn weighted_mean_of_two_points_sits_at_the_weighted_point() {
        let t = FlatTorus::standard(1).unwrap();
        let p = DVector::from_row_slice(&[1.0]);
        let q = DVector::from_row_slice(&[2.0]);
        let res =
            frechet_mean_weighted(&t, &[p, q], &[3.0, 1.0], &FrechetMeanConfig::default()).unwrap();
        // Minimizer of 3(x-1)^2 + (x-2)^2 is x = 1.25.
        assert_relative_eq!(res.mean[0], 1.25, epsilon = 1e-9);
    }

    #[test]
    fn symmetric_cap_mean_is_the_axis() {
        let s = Sphere::s2();
        let alpha: f64 = 0.8;
        let points: Vec<DVector<f64>> = (0..4)
            .map(|k| {
                let phi = std::f64::consts::FRAC_PI_2 * k as f64;
                DVector::from_row_slice(&[
                    alpha.sin() * phi.cos(),
                    alpha.sin() * phi.sin(),
                    alpha.cos(),
                ])
            })
            .collect();
        let res = frechet_mean(&s, &points, &FrechetMeanConfig::default()).unwrap();
        let axis = unit(&[0.0, 0.0, 1.0]);
        assert!(res.converged);
        assert!(
            s.dist(&res.mean, &axis).unwrap() < 1e-9,
            "mean {} off axis",
            res.mean
        );
        // Variance equals alpha^2 by construction.
        assert_relative_eq!(res.variance, alpha * alpha, epsilon = 1e-9);
    }

    #[test]
    fn torus_mean_matches_lifted_euclidean_mean() {
        // Data in a ball around (0.2, 6.1) that straddles the seam.
        let t = FlatTorus::standard(2).unwrap();
        let tau = std::f64::consts::TAU;
        let pts = vec![
            DVector::from_row_slice(&[0.1, 6.0]),
            DVector::from_row_slice(&[0.3, 6.2]),
            DVector::from_row_slice(&[tau - 0.1, 0.1]),
        ];
        let res = frechet_mean(&t, &pts, &FrechetMeanConfig::default()).unwrap();
        // Lift all points near (0.1, 6.1): (0.1, 6.0), (0.3, 6.2), (-0.1, 6.383...).
        let expected = DVector::from_row_slice(&[0.1, (6.0 + 6.2 + tau + 0.1) / 3.0]);
        let expected = t.wrap(&expected).unwrap();
        assert!(t.dist(&res.mean, &expected).unwrap() < 1e-9);
    }

    #[test]
    fn input_validation() {
        let s = Sphere::s2();
        assert!(matches!(
            frechet_mean(&s, &[], &FrechetMeanConfig::default()),
            Err(Error::EmptyPointSet)
        ));
        let p = unit(&[1.0, 0.0, 0.0]);
        let one = std::slice::from_ref(&p);
        assert!(frechet_mean_weighted(&s, one, &[], &FrechetMeanConfig::default()).is_err());
        assert!(frechet_mean_weighted(&s, one, &[-1.0], &FrechetMeanConfig::default()).is_err());
        assert!(frechet_mean_weighted(&s, one, &[0.0], &FrechetMeanConfig::default()).is_err());
        let bad = DVector::from_row_slice(&[1.0, 0.0]);
        assert!(frechet_mean(&s, &[bad], &FrechetMeanConfig::default()).is_err());
    }
}
