//! Finite-difference differentiation with Richardson extrapolation, lifted to
//! manifolds through the exponential map.
//!
//! Central differences of a smooth one-dimensional function have an error
//! expansion in even powers of the step, so halving the step and combining
//! entries with the classical (4^j D_k,j-1 - D_k-1,j-1)/(4^j - 1) tableau
//! removes one error term per column. The tableau is grown until the
//! estimated error stops improving, which keeps the routine on the right
//! side of the rounding floor.
//!
//! On a manifold, the directional derivative of `f` at `p` along a tangent
//! vector `u` is the ordinary derivative of `t -> f(exp_p(t u))` at zero, and
//! gradients/Hessians are assembled from directional derivatives along an
//! orthonormal tangent basis. These routines are deliberately independent of
//! any analytic gradient in this crate so they can serve as a cross-check.

use crate::error::{Error, Result};
use crate::manifold::Manifold;
use nalgebra::{DMatrix, DVector};

/// Result of a Richardson-extrapolated derivative estimate.
#[derive(Debug, Clone, Copy)]
pub struct Extrapolated {
    /// Best derivative estimate found.
    pub value: f64,
    /// Estimated absolute error of `value` (difference between the last two
    /// tableau diagonals that still improved).
    pub error_estimate: f64,
    /// Number of step halvings actually used.
    pub levels_used: usize,
}

/// Plain central difference (f(x+h) - f(x-h)) / (2h) of a 1-d function
/// around zero; `eval(t)` must return f(t).
pub fn central_difference<F: FnMut(f64) -> f64>(mut eval: F, h: f64) -> f64 {
    (eval(h) - eval(-h)) / (2.0 * h)
}

/// Central second difference (f(h) - 2 f(0) + f(-h)) / h^2 around zero.
pub fn central_second_difference<F: FnMut(f64) -> f64>(mut eval: F, h: f64) -> f64 {
    (eval(h) - 2.0 * eval(0.0) + eval(-h)) / (h * h)
}

fn richardson<D: FnMut(f64) -> f64>(
    mut base: D,
    h0: f64,
    max_levels: usize,
) -> Result<Extrapolated> {
    if !(h0.is_finite() && h0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "initial step must be positive, got {h0}"
        )));
    }
    let levels = max_levels.max(1);
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels);
    let mut best = Extrapolated {
        value: f64::NAN,
        error_estimate: f64::INFINITY,
        levels_used: 0,
    };
    let mut worse_streak = 0usize;
    for k in 0..levels {
        let h = h0 / 2.0_f64.powi(k as i32);
        let mut row = vec![base(h)];
        for j in 1..=k {
            let pow = 4.0_f64.powi(j as i32);
            let extrapolated = (pow * row[j - 1] - table[k - 1][j - 1]) / (pow - 1.0);
            row.push(extrapolated);
        }
        if k > 0 {
            let diag = row[k];
            let err = (diag - table[k - 1][k - 1])
                .abs()
                .max((diag - row[k - 1]).abs());
            if err <= best.error_estimate {
                best = Extrapolated {
                    value: diag,
                    error_estimate: err,
                    levels_used: k + 1,
                };
                worse_streak = 0;
            } else {
                worse_streak += 1;
                // Two consecutive degradations: rounding noise dominates.
                if worse_streak >= 2 {
                    table.push(row);
                    break;
                }
            }
        } else {
            best.value = row[0];
            best.levels_used = 1;
        }
        table.push(row);
    }
    if !best.value.is_finite() {
        return Err(Error::Numerical(
            "Richardson tableau produced no finite estimate".into(),
        ));
    }
    Ok(best)
}

/// First derivative of a 1-d function at zero via extrapolated central
/// differences.
pub fn richardson_derivative<F: FnMut(f64) -> f64>(
    mut eval: F,
    h0: f64,
    max_levels: usize,
) -> Result<Extrapolated> {
    richardson(|h| central_difference(&mut eval, h), h0, max_levels)
}

/// Second derivative of a 1-d function at zero via extrapolated central
/// second differences.
pub fn richardson_second_derivative<F: FnMut(f64) -> f64>(
    mut eval: F,
    h0: f64,
    max_levels: usize,
) -> Result<Extrapolated> {
    let f0 = eval(0.0);
    richardson(
        |h| (eval(h) - 2.0 * f0 + eval(-h)) / (h * h),
        h0,
        max_levels,
    )
}

/// Default initial step for on-manifold differencing: small enough to stay
/// well inside the injectivity radius, large enough to dodge cancellation.
fn default_step(manifold: &dyn Manifold) -> f64 {
    (0.1 * manifold.injectivity_radius()).min(0.1)
}

/// Directional derivative of `f` at `p` along the tangent vector `u`.
pub fn directional_derivative(
    manifold: &dyn Manifold,
    f: &dyn Fn(&DVector<f64>) -> f64,
    p: &DVector<f64>,
    u: &DVector<f64>,
    step: Option<f64>,
) -> Result<Extrapolated> {
    let h0 = match step {
        Some(h) => h,
        None => default_step(manifold),
    };
    let scale = manifold.norm(p, u);
    if scale == 0.0 {
        return Ok(Extrapolated {
            value: 0.0,
            error_estimate: 0.0,
            levels_used: 0,
        });
    }
    // Keep the largest probe inside the injectivity ball.
    let h0 = h0.min(0.45 * manifold.injectivity_radius() / scale);
    richardson_derivative(
        |t| f(&manifold.exp(p, &(u * t)).expect("exp inside ball")),
        h0,
        8,
    )
}

/// Second directional derivative (the Hessian quadratic form Hess f(u, u)).
pub fn second_directional_derivative(
    manifold: &dyn Manifold,
    f: &dyn Fn(&DVector<f64>) -> f64,
    p: &DVector<f64>,
    u: &DVector<f64>,
    step: Option<f64>,
) -> Result<Extrapolated> {
    let h0 = match step {
        Some(h) => h,
        None => default_step(manifold),
    };
    let scale = manifold.norm(p, u);
    if scale == 0.0 {
        return Ok(Extrapolated {
            value: 0.0,
            error_estimate: 0.0,
            levels_used: 0,
        });
    }
    let h0 = h0.min(0.45 * manifold.injectivity_radius() / scale);
    richardson_second_derivative(
        |t| f(&manifold.exp(p, &(u * t)).expect("exp inside ball")),
        h0,
        8,
    )
}

/// Riemannian gradient of `f` at `p` estimated coordinate-wise along an
/// orthonormal tangent basis. Returns the gradient in ambient coordinates.
pub fn numerical_gradient(
    manifold: &dyn Manifold,
    f: &dyn Fn(&DVector<f64>) -> f64,
    p: &DVector<f64>,
    step: Option<f64>,
) -> Result<DVector<f64>> {
    let basis = manifold.tangent_basis(p)?;
    let mut grad = DVector::zeros(manifold.ambient_dim());
    for e in &basis {
        let d = directional_derivative(manifold, f, p, e, step)?;
        grad += e * d.value;
    }
    Ok(grad)
}

/// Riemannian Hessian of `f` at `p` as a symmetric matrix in the coordinates
/// of `manifold.tangent_basis(p)`.
///
/// Off-diagonal entries come from the polarization identity
/// `Hess(u, v) = (Hess(u+v, u+v) - Hess(u-v, u-v)) / 4`.
pub fn numerical_hessian(
    manifold: &dyn Manifold,
    f: &dyn Fn(&DVector<f64>) -> f64,
    p: &DVector<f64>,
    step: Option<f64>,
) -> Result<DMatrix<f64>> {
    let basis = manifold.tangent_basis(p)?;
    let d = basis.len();
    let mut h = DMatrix::zeros(d, d);
    for i in 0..d {
        h[(i, i)] = second_directional_derivative(manifold, f, p, &basis[i], step)?.value;
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let plus = &basis[i] + &basis[j];
            let minus = &basis[i] - &basis[j];
            let dp = second_directional_derivative(manifold, f, p, &plus, step)?.value;
            let dm = second_directional_derivative(manifold, f, p, &minus, step)?.value;
            let hij = (dp - dm) / 4.0;
            h[(i, j)] = hij;
            h[(j, i)] = hij;
        }
    }
    Ok(h)
}
