//! Quadratic envelope fitting on geodesic balls.
//!
//! A smooth function f sampled around a center point p is summarized by the
//! quadratic model
//!
//!   q(v) = c + g^T v + (1/2) v^T H v,   v in tangent coordinates,
//!
//! fitted by least squares, optionally under the semidefinite constraint
//! H >= 0. The constrained fit runs projected gradient descent on the
//! coefficients: the objective is a convex quadratic, the PSD cone is convex,
//! and projecting the H block clips negative eigenvalues, so the iteration
//! converges to the constrained optimum.
//!
//! [`convexity_bounds`] extracts the tightest quadratic envelope constants
//! through the center: the largest alpha with
//! f >= f(p) + g^T v + (alpha/2)|v|^2 on the samples and the smallest beta
//! for the matching upper bound. For a C^2 function these bracket the
//! Hessian spectrum over the sampled ball.

use crate::error::{Error, Result};
use crate::manifold::Manifold;
use crate::sampling::unit_directions;
use nalgebra::{DMatrix, DVector};

/// Quadratic model in orthonormal tangent coordinates at a center point.
#[derive(Debug, Clone)]
pub struct QuadraticModel {
    /// Value at the center.
    pub constant: f64,
    /// Linear coefficients (tangent coordinates).
    pub gradient: DVector<f64>,
    /// Symmetric second-order coefficient matrix.
    pub hessian: DMatrix<f64>,
}

impl QuadraticModel {
    /// Evaluate the model at tangent coordinates `v`.
    pub fn eval(&self, v: &DVector<f64>) -> f64 {
        self.constant + self.gradient.dot(v) + 0.5 * (&self.hessian * v).dot(v)
    }

    /// Eigenvalues of the Hessian block, ascending.
    pub fn hessian_eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .hessian
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }
}

/// Function samples expressed in tangent coordinates around a center.
#[derive(Debug, Clone)]
pub struct BallSamples {
    /// Orthonormal tangent basis used for the coordinates (ambient vectors).
    pub basis: Vec<DVector<f64>>,
    /// Tangent coordinates of each sample.
    pub coords: Vec<DVector<f64>>,
    /// Function value at each sample.
    pub values: Vec<f64>,
    /// Function value at the center itself.
    pub center_value: f64,
}

/// Evaluate `f` on a geodesic ball: `n_dirs` directions times `n_radii`
/// shells of spacing `radius / n_radii`, plus the center. Every direction is
/// paired with its antipode, so the design is symmetric under v -> -v and
/// even Taylor terms of f cannot alias into the fitted linear coefficients
/// (2 * n_dirs * n_radii samples in total).
pub fn sample_on_ball(
    manifold: &dyn Manifold,
    f: &dyn Fn(&DVector<f64>) -> f64,
    center: &DVector<f64>,
    radius: f64,
    n_dirs: usize,
    n_radii: usize,
) -> Result<BallSamples> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "ball radius must be positive, got {radius}"
        )));
    }
    if radius >= manifold.injectivity_radius() {
        return Err(Error::InvalidParameter(format!(
            "ball radius {radius} exceeds the injectivity radius {}",
            manifold.injectivity_radius()
        )));
    }
    if n_dirs == 0 || n_radii == 0 {
        return Err(Error::InvalidParameter(
            "need at least one direction and one radius".into(),
        ));
    }
    let basis = manifold.tangent_basis(center)?;
    let d = basis.len();
    let dirs = unit_directions(d, n_dirs);
    let mut coords = Vec::with_capacity(2 * n_dirs * n_radii);
    let mut values = Vec::with_capacity(2 * n_dirs * n_radii);
    for dir in &dirs {
        let mut ambient = DVector::zeros(manifold.ambient_dim());
        for (c, b) in dir.iter().zip(&basis) {
            ambient += b * *c;
        }
        for j in 1..=n_radii {
            let t = radius * j as f64 / n_radii as f64;
            for sign in [1.0, -1.0] {
                let point = manifold.exp(center, &(&ambient * (sign * t)))?;
                coords.push(dir * (sign * t));
                values.push(f(&point));
            }
        }
    }
    Ok(BallSamples {
        basis,
        coords,
        values,
        center_value: f(center),
    })
}

/// Number of free coefficients of a quadratic model in dimension `d`.
fn coefficient_count(d: usize) -> usize {
    1 + d + d * (d + 1) / 2
}

/// Scale of off-diagonal Hessian entries in the packed coefficient vector.
///
/// The svec convention (off-diagonals stored as sqrt(2) * H_ab) makes the
/// packing an isometry between the Frobenius and Euclidean norms, so the
/// eigenvalue-clipping PSD projection is also the exact Euclidean projection
/// of the packed coefficients. A plain vech packing would break the
/// projected gradient iteration: it would project in a distorted metric and
/// settle short of the constrained optimum.
const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Design matrix row layout: [1, v_1..v_d, svec terms]. The svec column for
/// the diagonal coefficient H_aa is 1/2 v_a^2 and for the off-diagonal
/// coefficient sqrt(2) H_ab it is v_a v_b / sqrt(2).
fn design_matrix(coords: &[DVector<f64>], d: usize) -> DMatrix<f64> {
    let m = coefficient_count(d);
    DMatrix::from_fn(coords.len(), m, |row, col| {
        let v = &coords[row];
        if col == 0 {
            1.0
        } else if col <= d {
            v[col - 1]
        } else {
            let mut idx = col - 1 - d;
            for a in 0..d {
                let block = d - a;
                if idx < block {
                    let b = a + idx;
                    return if a == b {
                        0.5 * v[a] * v[a]
                    } else {
                        v[a] * v[b] / SQRT2
                    };
                }
                idx -= block;
            }
            unreachable!("column index out of range")
        }
    })
}

fn pack(model: &QuadraticModel, d: usize) -> DVector<f64> {
    let mut beta = DVector::zeros(coefficient_count(d));
    beta[0] = model.constant;
    for i in 0..d {
        beta[1 + i] = model.gradient[i];
    }
    let mut col = 1 + d;
    for a in 0..d {
        for b in a..d {
            beta[col] = if a == b {
                model.hessian[(a, a)]
            } else {
                SQRT2 * model.hessian[(a, b)]
            };
            col += 1;
        }
    }
    beta
}

fn unpack(beta: &DVector<f64>, d: usize) -> QuadraticModel {
    let constant = beta[0];
    let gradient = DVector::from_fn(d, |i, _| beta[1 + i]);
    let mut hessian = DMatrix::zeros(d, d);
    let mut col = 1 + d;
    for a in 0..d {
        for b in a..d {
            let h = if a == b { beta[col] } else { beta[col] / SQRT2 };
            hessian[(a, b)] = h;
            hessian[(b, a)] = h;
            col += 1;
        }
    }
    QuadraticModel {
        constant,
        gradient,
        hessian,
    }
}

fn check_samples(coords: &[DVector<f64>], values: &[f64]) -> Result<usize> {
    if coords.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if coords.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: coords.len(),
            got: values.len(),
        });
    }
    let d = coords[0].len();
    if d == 0 {
        return Err(Error::InvalidParameter("zero-dimensional samples".into()));
    }
    for v in coords {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.len(),
            });
        }
    }
    if coords.len() < coefficient_count(d) {
        return Err(Error::InvalidParameter(format!(
            "need at least {} samples to identify a quadratic in dimension {d}, got {}",
            coefficient_count(d),
            coords.len()
        )));
    }
    Ok(d)
}

/// Unconstrained least-squares quadratic fit.
pub fn fit_quadratic(coords: &[DVector<f64>], values: &[f64]) -> Result<QuadraticModel> {
    let d = check_samples(coords, values)?;
    let a = design_matrix(coords, d);
    let y = DVector::from_row_slice(values);
    let svd = a.clone().svd(true, true);
    let rank = svd.rank(1e-10 * svd.singular_values.max());
    if rank < coefficient_count(d) {
        return Err(Error::Numerical(format!(
            "sample design is rank deficient ({rank} < {}); spread the directions",
            coefficient_count(d)
        )));
    }
    let beta = svd
        .solve(&y, 0.0)
        .map_err(|e| Error::Numerical(format!("least-squares solve failed: {e}")))?;
    Ok(unpack(&beta, d))
}

/// Projection of a symmetric matrix onto the PSD cone (negative eigenvalues
/// clipped to zero).
pub fn psd_projection(h: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = h.clone().symmetric_eigen();
    let clipped = DVector::from_fn(eig.eigenvalues.len(), |i, _| eig.eigenvalues[i].max(0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&clipped) * eig.eigenvectors.transpose()
}

/// Options for [`fit_quadratic_psd`].
#[derive(Debug, Clone)]
pub struct PsdFitConfig {
    /// Iteration cap for the projected gradient loop.
    pub max_iter: usize,
    /// Relative objective-change tolerance.
    pub tol: f64,
}

impl Default for PsdFitConfig {
    fn default() -> Self {
        Self {
            max_iter: 50_000,
            tol: 1e-14,
        }
    }
}

/// Diagnostics of the PSD-constrained fit.
#[derive(Debug, Clone, Copy)]
pub struct PsdFitReport {
    /// Projected-gradient iterations used.
    pub iterations: usize,
    /// Root-mean-square residual of the constrained fit.
    pub rms_residual: f64,
    /// Whether the PSD constraint was active (the unconstrained optimum had a
    /// negative Hessian eigenvalue).
    pub constraint_active: bool,
}

/// Least-squares quadratic fit with the Hessian block constrained to be
/// positive semidefinite.
pub fn fit_quadratic_psd(
    coords: &[DVector<f64>],
    values: &[f64],
    cfg: &PsdFitConfig,
) -> Result<(QuadraticModel, PsdFitReport)> {
    let d = check_samples(coords, values)?;
    let unconstrained = fit_quadratic(coords, values)?;
    let min_eig = unconstrained
        .hessian_eigenvalues()
        .first()
        .copied()
        .unwrap_or(0.0);
    let a = design_matrix(coords, d);
    let y = DVector::from_row_slice(values);
    let n = coords.len() as f64;
    if min_eig >= 0.0 {
        let resid = (&a * pack(&unconstrained, d) - &y).norm_squared();
        return Ok((
            unconstrained,
            PsdFitReport {
                iterations: 0,
                rms_residual: (resid / n).sqrt(),
                constraint_active: false,
            },
        ));
    }
    // Projected gradient with the exact Lipschitz step 1/sigma_max(A)^2.
    let at = a.transpose();
    let sigma_max = a.clone().svd(false, false).singular_values.max();
    let step = 1.0 / (sigma_max * sigma_max);
    let project = |beta: &DVector<f64>| {
        let mut model = unpack(beta, d);
        model.hessian = psd_projection(&model.hessian);
        pack(&model, d)
    };
    let mut beta = project(&pack(&unconstrained, d));
    let mut obj = (&a * &beta - &y).norm_squared();
    let mut iterations = 0;
    for k in 0..cfg.max_iter {
        let grad = &at * (&a * &beta - &y);
        let next = project(&(&beta - &grad * step));
        let next_obj = (&a * &next - &y).norm_squared();
        let change = (obj - next_obj).abs();
        beta = next;
        obj = next_obj;
        iterations = k + 1;
        if change <= cfg.tol * (1.0 + obj) {
            break;
        }
    }
    let mut model = unpack(&beta, d);
    // Snap tiny negative rounding leftovers.
    model.hessian = psd_projection(&model.hessian);
    let resid = (&a * pack(&model, d) - &y).norm_squared();
    Ok((
        model,
        PsdFitReport {
            iterations,
            rms_residual: (resid / n).sqrt(),
            constraint_active: true,
        },
    ))
}

/// Tightest quadratic envelope constants through the center.
#[derive(Debug, Clone, Copy)]
pub struct ConvexityBounds {
    /// Largest alpha with f(v) >= f(0) + g^T v + (alpha/2)|v|^2 on the samples.
    pub alpha: f64,
    /// Smallest beta with the matching upper bound.
    pub beta: f64,
    /// Number of samples the bounds were taken over.
    pub n_samples: usize,
}

/// Envelope constants of sampled values around a center with value
/// `center_value` and (optional) known gradient; a missing gradient means
/// the center is treated as a critical point.
pub fn convexity_bounds(
    center_value: f64,
    gradient: Option<&DVector<f64>>,
    coords: &[DVector<f64>],
    values: &[f64],
) -> Result<ConvexityBounds> {
    if coords.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if coords.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: coords.len(),
            got: values.len(),
        });
    }
    let mut alpha = f64::INFINITY;
    let mut beta = f64::NEG_INFINITY;
    let mut used = 0;
    for (v, &y) in coords.iter().zip(values) {
        let r2 = v.norm_squared();
        if r2 == 0.0 {
            continue;
        }
        let linear = gradient.map_or(0.0, |g| g.dot(v));
        let ratio = 2.0 * (y - center_value - linear) / r2;
        alpha = alpha.min(ratio);
        beta = beta.max(ratio);
        used += 1;
    }
    if used == 0 {
        return Err(Error::InvalidParameter(
            "all samples coincide with the center".into(),
        ));
    }
    Ok(ConvexityBounds {
        alpha,
        beta,
        n_samples: used,
    })
}

/// Envelope analysis of the Fréchet functional around its minimizer.
#[derive(Debug, Clone)]
pub struct FrechetEnvelope {
    /// The Fréchet mean the ball is centered on.
    pub mean: DVector<f64>,
    /// Functional value at the mean.
    pub value_at_mean: f64,
    /// PSD-constrained quadratic model in tangent coordinates at the mean.
    pub model: QuadraticModel,
    /// Eigenvalues of the fitted Hessian, ascending.
    pub hessian_eigenvalues: Vec<f64>,
    /// Sampled envelope constants (center treated as critical).
    pub bounds: ConvexityBounds,
    /// Norm of the fitted linear term; should be near zero at a minimizer.
    pub fitted_gradient_norm: f64,
    /// Ball radius the fit was taken over.
    pub radius: f64,
    /// Diagnostics of the constrained fit.
    pub fit: PsdFitReport,
}

/// Fit a quadratic envelope to the Fréchet functional of a weighted point
/// set on a ball of the given radius around its mean.
pub fn frechet_envelope(
    manifold: &dyn Manifold,
    points: &[DVector<f64>],
    weights: &[f64],
    radius: f64,
    n_dirs: usize,
    n_radii: usize,
) -> Result<FrechetEnvelope> {
    let result = crate::mean::frechet_mean_weighted(
        manifold,
        points,
        weights,
        &crate::mean::FrechetMeanConfig::default(),
    )?;
    let f = |x: &DVector<f64>| {
        crate::mean::frechet_functional(manifold, x, points, weights)
            .expect("ball stays inside the injectivity radius")
    };
    let samples = sample_on_ball(manifold, &f, &result.mean, radius, n_dirs, n_radii)?;
    let (model, fit) =
        fit_quadratic_psd(&samples.coords, &samples.values, &PsdFitConfig::default())?;
    let bounds = convexity_bounds(samples.center_value, None, &samples.coords, &samples.values)?;
    Ok(FrechetEnvelope {
        mean: result.mean,
        value_at_mean: samples.center_value,
        hessian_eigenvalues: model.hessian_eigenvalues(),
        fitted_gradient_norm: model.gradient.norm(),
        model,
        bounds,
        radius,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::Rng;
    use rand::SeedableRng;

    fn synthetic_samples(
        model: &QuadraticModel,
        n: usize,
        seed: u64,
    ) -> (Vec<DVector<f64>>, Vec<f64>) {
        let d = model.gradient.len();
        let mut rng = StdRng::seed_from_u64(seed);
        let coords: Vec<DVector<f64>> = (0..n)
            .map(|_| DVector::from_fn(d, |_, _| rng.random::<f64>() * 2.0 - 1.0))
            .collect();
        let values = coords.iter().map(|v| model.eval(v)).collect();
        (coords, values)
    }

    #[test]
    fn exact_quadratic_is_recovered() {
        let truth = QuadraticModel {
            constant: 0.7,
            gradient: DVector::from_row_slice(&[1.0, -2.0]),
            hessian: DMatrix::from_row_slice(2, 2, &[3.0, 0.5, 0.5, 2.0]),
        };
        let (coords, values) = synthetic_samples(&truth, 40, 1);
        let fit = fit_quadratic(&coords, &values).unwrap();
        assert_relative_eq!(fit.constant, 0.7, epsilon = 1e-10);
        assert_relative_eq!((fit.gradient - truth.gradient).norm(), 0.0, epsilon = 1e-9);
        assert_relative_eq!((fit.hessian - truth.hessian).norm(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn psd_fit_agrees_when_unconstrained_is_psd() {
        let truth = QuadraticModel {
            constant: -0.5,
            gradient: DVector::from_row_slice(&[0.3]),
            hessian: DMatrix::from_row_slice(1, 1, &[4.0]),
        };
        let (coords, values) = synthetic_samples(&truth, 20, 2);
        let (fit, report) = fit_quadratic_psd(&coords, &values, &PsdFitConfig::default()).unwrap();
        assert!(!report.constraint_active);
        assert_relative_eq!(fit.hessian[(0, 0)], 4.0, epsilon = 1e-9);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn psd_fit_clips_negative_curvature() {
        // Data generated from an indefinite quadratic: the constrained fit
        // must be PSD and can only fit worse than the unconstrained one.
        let truth = QuadraticModel {
            constant: 0.0,
            gradient: DVector::zeros(2),
            hessian: DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -1.5]),
        };
        let (coords, values) = synthetic_samples(&truth, 60, 3);
        let unconstrained = fit_quadratic(&coords, &values).unwrap();
        let (fit, report) = fit_quadratic_psd(&coords, &values, &PsdFitConfig::default()).unwrap();
        assert!(report.constraint_active);
        let eigs = fit.hessian_eigenvalues();
        assert!(
            eigs[0] >= -1e-10,
            "PSD fit has negative eigenvalue {}",
            eigs[0]
        );
        assert!(eigs[1] > 0.5, "positive block collapsed to {}", eigs[1]);
        let a = design_matrix(&coords, 2);
        let y = DVector::from_row_slice(&values);
        let res_unc = (&a * pack(&unconstrained, 2) - &y).norm_squared();
        let beta_star = pack(&fit, 2);
        let res_psd = (&a * &beta_star - &y).norm_squared();
        assert!(res_psd >= res_unc - 1e-12);
        // Convex optimality certificate: the variational inequality
        // grad(obj)(b*) . (b - b*) >= 0 must hold for every feasible b.
        let grad = a.transpose() * (&a * &beta_star - &y) * 2.0;
        let mut rng = StdRng::seed_from_u64(9);
        let mut feasible = vec![{
            let mut m = unconstrained.clone();
            m.hessian = psd_projection(&m.hessian);
            pack(&m, 2)
        }];
        for _ in 0..50 {
            let l = DMatrix::from_fn(2, 2, |_, _| rng.random::<f64>() * 4.0 - 2.0);
            feasible.push(pack(
                &QuadraticModel {
                    constant: rng.random::<f64>() * 4.0 - 2.0,
                    gradient: DVector::from_fn(2, |_, _| rng.random::<f64>() * 4.0 - 2.0),
                    hessian: &l * l.transpose(),
                },
                2,
            ));
        }
        for b in &feasible {
            let slope = grad.dot(&(b - &beta_star));
            assert!(slope >= -1e-6, "feasible descent direction found: {slope}");
        }
    }

    #[test]
    fn convexity_bounds_bracket_quadratic_spectrum() {
        let truth = QuadraticModel {
            constant: 1.0,
            gradient: DVector::zeros(2),
            hessian: DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0]),
        };
        let dirs = unit_directions(2, 64);
        let coords: Vec<DVector<f64>> = dirs.iter().map(|u| u * 0.5).collect();
        let values: Vec<f64> = coords.iter().map(|v| truth.eval(v)).collect();
        let b = convexity_bounds(1.0, None, &coords, &values).unwrap();
        assert!(
            b.alpha >= 1.0 - 1e-9 && b.alpha <= 1.0 + 1e-2,
            "alpha {}",
            b.alpha
        );
        assert!(
            b.beta <= 3.0 + 1e-9 && b.beta >= 3.0 - 1e-2,
            "beta {}",
            b.beta
        );
        assert!(b.alpha <= b.beta);
    }

    #[test]
    fn underdetermined_fit_is_rejected() {
        let coords = vec![DVector::from_row_slice(&[1.0, 0.0])];
        let values = vec![1.0];
        assert!(fit_quadratic(&coords, &values).is_err());
    }

    #[test]
    fn rank_deficient_design_is_rejected() {
        // All samples on one line cannot identify a 2-d quadratic.
        let coords: Vec<DVector<f64>> = (0..10)
            .map(|i| DVector::from_row_slice(&[i as f64 * 0.1, 0.0]))
            .collect();
        let values = vec![0.0; 10];
        assert!(matches!(
            fit_quadratic(&coords, &values),
            Err(Error::Numerical(_))
        ));
    }

    #[test]
    fn ball_sampling_respects_layout() {
        let sphere = crate::manifold::Sphere::new(3).unwrap();
        let center = DVector::from_row_slice(&[0.0, 0.0, 1.0]);
        let f = |p: &DVector<f64>| p[2];
        let s = sample_on_ball(&sphere, &f, &center, 0.4, 12, 3).unwrap();
        assert_eq!(s.coords.len(), 72);
        assert_eq!(s.values.len(), 72);
        assert_relative_eq!(s.center_value, 1.0, epsilon = 1e-14);
        // Shell radii are t = 0.4/3, 0.8/3, 0.4 and f = cos(t) there.
        for (v, &y) in s.coords.iter().zip(&s.values) {
            assert_relative_eq!(y, v.norm().cos(), epsilon = 1e-12);
        }
        // Antithetic pairing: the coordinates sum to zero exactly.
        let total: DVector<f64> = s.coords.iter().sum();
        assert_relative_eq!(total.norm(), 0.0, epsilon = 1e-13);
        assert!(sample_on_ball(&sphere, &f, &center, 4.0, 12, 3).is_err());
    }

    #[test]
    fn frechet_envelope_matches_sphere_curvature() {
        // Four points at angle a around the pole at right-angle azimuths:
        // the Hessian of the Fréchet functional at the pole is isotropic
        // with eigenvalue (1 + a*cot(a)) / 2.
        let sphere = crate::manifold::Sphere::new(3).unwrap();
        let a: f64 = 0.8;
        let points: Vec<DVector<f64>> = (0..4)
            .map(|k| {
                let az = std::f64::consts::FRAC_PI_2 * k as f64;
                DVector::from_row_slice(&[a.sin() * az.cos(), a.sin() * az.sin(), a.cos()])
            })
            .collect();
        let weights = vec![1.0; 4];
        let env = frechet_envelope(&sphere, &points, &weights, 0.2, 16, 3).unwrap();
        let expected = (1.0 + a / a.tan()) / 2.0;
        // The antithetic design keeps even Taylor terms out of the linear
        // coefficients, so only the residual gradient at the mean remains.
        assert!(
            env.fitted_gradient_norm < 1e-9,
            "gradient {}",
            env.fitted_gradient_norm
        );
        for ev in &env.hessian_eigenvalues {
            assert!(
                (ev - expected).abs() < 0.02,
                "eigenvalue {ev} vs {expected}"
            );
        }
        assert!(env.bounds.alpha <= env.bounds.beta);
        assert!((env.bounds.alpha - expected).abs() < 0.05);
        assert!((env.bounds.beta - expected).abs() < 0.05);
        assert!(!env.fit.constraint_active);
    }

    #[test]
    fn psd_projection_is_idempotent_and_clips() {
        let h = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -2.0]);
        let p = psd_projection(&h);
        assert_relative_eq!(p[(0, 0)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(p[(1, 1)], 0.0, epsilon = 1e-12);
        let pp = psd_projection(&p);
        assert_relative_eq!((pp - p).norm(), 0.0, epsilon = 1e-12);
    }
}
