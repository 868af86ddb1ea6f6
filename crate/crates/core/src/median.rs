//! Geometric median via the Riemannian Weiszfeld iteration.
//!
//! The median minimizes G(x) = (1/W) sum_i w_i d(x, p_i), which is convex on
//! balls of radius below half the injectivity radius and nonsmooth exactly at
//! the data points. The Weiszfeld map
//!
//!   T(x) = exp_x( sum_i (w_i / d_i) log_x(p_i) / sum_i (w_i / d_i) )
//!
//! is iterated with an objective-decrease safeguard (step halving). When an
//! iterate lands on a data point p_j, the first-order optimality test of
//! Vardi and Zhang decides whether p_j is the median; if it is not, the
//! iteration steps off the point along the leftover pull direction.

use crate::error::Result;
use crate::manifold::Manifold;
use crate::mean::validate_weighted_set;
use nalgebra::DVector;

/// Options for [`geometric_median`].
#[derive(Debug, Clone)]
pub struct MedianConfig {
    /// Stop when the Weiszfeld displacement drops below this.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Distance below which an iterate is considered to sit on a data point.
    pub singularity_radius: f64,
    /// Optional explicit starting point.
    pub initial_point: Option<DVector<f64>>,
}

impl Default for MedianConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 500,
            singularity_radius: 1e-12,
            initial_point: None,
        }
    }
}

/// Geometric median and diagnostics.
#[derive(Debug, Clone)]
pub struct MedianResult {
    /// Minimizer of the weighted mean distance.
    pub median: DVector<f64>,
    /// Objective (1/W) sum w_i d(median, p_i).
    pub objective: f64,
    /// Iterations used.
    pub iterations: usize,
    /// Whether the displacement tolerance was met.
    pub converged: bool,
}

fn objective(
    manifold: &dyn Manifold,
    x: &DVector<f64>,
    points: &[DVector<f64>],
    weights: &[f64],
    total: f64,
) -> Result<f64> {
    let mut acc = 0.0;
    for (p, &w) in points.iter().zip(weights) {
        acc += w * manifold.dist(x, p)?;
    }
    Ok(acc / total)
}

/// Weighted geometric median. See the module docs for the algorithm.
pub fn geometric_median_weighted(
    manifold: &dyn Manifold,
    points: &[DVector<f64>],
    weights: &[f64],
    cfg: &MedianConfig,
) -> Result<MedianResult> {
    let total = validate_weighted_set(manifold, points, weights)?;
    let max_hop = 0.9 * manifold.injectivity_radius();
    let mut x = match &cfg.initial_point {
        Some(p) => manifold.project(p)?,
        None => manifold.extrinsic_mean_estimate(points, weights)?,
    };
    let mut fx = objective(manifold, &x, points, weights, total)?;
    for k in 0..cfg.max_iter {
        // Pull of all points that are not underfoot, and the weight of the
        // one that is (at most one can be within the singularity radius
        // provided the data are distinct; coincident data just merge).
        let mut pull = DVector::zeros(manifold.ambient_dim());
        let mut inv_dist_sum = 0.0;
        let mut local_weight = 0.0;
        for (p, &w) in points.iter().zip(weights) {
            let d = manifold.dist(&x, p)?;
            if d <= cfg.singularity_radius {
                local_weight += w;
            } else {
                pull += manifold.log(&x, p)? * (w / d);
                inv_dist_sum += w / d;
            }
        }
        let pull_norm = manifold.norm(&x, &pull);
        let step = if local_weight > 0.0 {
            // Vardi-Zhang test: the point underfoot is optimal when its own
            // weight dominates the leftover pull.
            if pull_norm <= local_weight {
                return Ok(MedianResult {
                    median: x,
                    objective: fx,
                    iterations: k,
                    converged: true,
                });
            }
            &pull * ((1.0 - local_weight / pull_norm) / inv_dist_sum)
        } else {
            if inv_dist_sum == 0.0 {
                // All points coincide with x.
                return Ok(MedianResult {
                    median: x,
                    objective: fx,
                    iterations: k,
                    converged: true,
                });
            }
            &pull / inv_dist_sum
        };
        let mut step_norm = manifold.norm(&x, &step);
        if step_norm < cfg.tol {
            return Ok(MedianResult {
                median: x,
                objective: fx,
                iterations: k,
                converged: true,
            });
        }
        // Clip to the injectivity ball, then halve until the objective drops.
        let mut scale = if step_norm > max_hop {
            max_hop / step_norm
        } else {
            1.0
        };
        let mut accepted = false;
        for _ in 0..60 {
            let trial = manifold.exp(&x, &(&step * scale))?;
            let f_trial = objective(manifold, &trial, points, weights, total)?;
            if f_trial < fx {
                x = trial;
                fx = f_trial;
                accepted = true;
                break;
            }
            scale *= 0.5;
            step_norm *= 0.5;
            if step_norm < cfg.tol {
                break;
            }
        }
        if !accepted {
            // Objective floor reached: no step improves in f64.
            return Ok(MedianResult {
                median: x,
                objective: fx,
                iterations: k,
                converged: true,
            });
        }
    }
    let converged = false;
    Ok(MedianResult {
        median: x,
        objective: fx,
        iterations: cfg.max_iter,
        converged,
    })
}

/// Unweighted geometric median.
pub fn geometric_median(
    manifold: &dyn Manifold,
    points: &[DVector<f64>],
    cfg: &MedianConfig,
) -> Result<MedianResult> {
    let weights = vec![1.0; points.len()];
    geometric_median_weighted(manifold, points, &weights, cfg)
}

/// Value of the median objective G(x) = (1/W) sum w_i d(x, p_i).
pub fn median_objective(
    manifold: &dyn Manifold,
    x: &DVector<f64>,
    points: &[DVector<f64>],
    weights: &[f64],
) -> Result<f64> {
    let total = validate_weighted_set(manifold, points, weights)?;
    objective(manifold, x, points, weights, total)
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
    fn median_of_identical_points_is_that_point() {
        let s = Sphere::s2();
        let p = unit(&[0.2, 0.4, 0.6]);
        let res = geometric_median(
            &s,
            &[p.clone(), p.clone(), p.clone()],
            &MedianConfig::default(),
        )
        .unwrap();
        assert!(res.converged);
        assert!(s.dist(&res.median, &p).unwrap() < 1e-12);
        // The median may differ from p in the last bit after the chart
        // average renormalizes, so the objective is only zero to rounding.
        assert!(res.objective < 1e-14);
    }

    #[test]
    fn circle_median_is_the_middle_point_for_three_points() {
        // On a 1-d manifold the geometric median of three points is the
        // middle one.
        let t = FlatTorus::standard(1).unwrap();
        let pts = vec![
            DVector::from_row_slice(&[1.0]),
            DVector::from_row_slice(&[2.0]),
            DVector::from_row_slice(&[2.5]),
        ];
        let res = geometric_median(&t, &pts, &MedianConfig::default()).unwrap();
        assert!(
            t.dist(&res.median, &pts[1]).unwrap() < 1e-9,
            "median {} not at the middle point",
            res.median
        );
    }

    #[test]
    fn majority_weight_pins_the_median() {
        // One point holds more than half the total weight, so it is the
        // median regardless of the rest (the Vardi-Zhang stop must fire).
        let t = FlatTorus::standard(1).unwrap();
        let pts = vec![
            DVector::from_row_slice(&[1.0]),
            DVector::from_row_slice(&[3.0]),
            DVector::from_row_slice(&[4.5]),
        ];
        let res = geometric_median_weighted(&t, &pts, &[5.0, 2.0, 2.0], &MedianConfig::default())
            .unwrap();
        assert!(
            t.dist(&res.median, &pts[0]).unwrap() < 1e-9,
            "median {} should sit on the heavy point",
            res.median
        );
    }

    #[test]
    fn median_resists_outliers_better_than_the_mean() {
        use crate::mean::{frechet_mean, FrechetMeanConfig};
        let s = Sphere::s2();
        let axis = unit(&[0.0, 0.0, 1.0]);
        // Seven tight inliers around +z, three outliers far away.
        let mut pts: Vec<DVector<f64>> = (0..7)
            .map(|k| {
                let phi = std::f64::consts::TAU * k as f64 / 7.0;
                unit(&[0.05 * phi.cos(), 0.05 * phi.sin(), 1.0])
            })
            .collect();
        for k in 0..3 {
            let phi = 0.5 + k as f64;
            pts.push(unit(&[phi.cos(), phi.sin(), -0.2]));
        }
        let med = geometric_median(&s, &pts, &MedianConfig::default()).unwrap();
        let mean = frechet_mean(&s, &pts, &FrechetMeanConfig::default()).unwrap();
        let med_err = s.dist(&med.median, &axis).unwrap();
        let mean_err = s.dist(&mean.mean, &axis).unwrap();
        assert!(
            med_err < 0.5 * mean_err,
            "median error {med_err} not clearly under mean error {mean_err}"
        );
    }

    #[test]
    fn objective_at_result_beats_every_data_point() {
        let t = FlatTorus::standard(2).unwrap();
        let pts = vec![
            DVector::from_row_slice(&[0.2, 1.0]),
            DVector::from_row_slice(&[1.2, 2.0]),
            DVector::from_row_slice(&[0.7, 0.4]),
            DVector::from_row_slice(&[6.0, 1.4]),
        ];
        let w = vec![1.0; pts.len()];
        let res = geometric_median(&t, &pts, &MedianConfig::default()).unwrap();
        for p in &pts {
            let at_p = median_objective(&t, p, &pts, &w).unwrap();
            assert!(res.objective <= at_p + 1e-12);
        }
    }

    #[test]
    fn two_point_median_objective_is_the_distance() {
        // Any point on the connecting geodesic is optimal; the objective
        // value must equal half the separation (W = 2).
        let s = Sphere::s2();
        let p = unit(&[1.0, 0.0, 0.0]);
        let q = unit(&[0.0, 1.0, 0.0]);
        let res = geometric_median(&s, &[p.clone(), q.clone()], &MedianConfig::default()).unwrap();
        let expected = s.dist(&p, &q).unwrap() / 2.0;
        assert_relative_eq!(res.objective, expected, epsilon = 1e-10);
    }

    #[test]
    fn empty_set_is_rejected() {
        let s = Sphere::s2();
        assert!(geometric_median(&s, &[], &MedianConfig::default()).is_err());
    }
}
