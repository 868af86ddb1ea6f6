//! Riemannian gradient descent with Armijo backtracking.
//!
//! The iteration is x_{k+1} = exp_{x_k}(-t_k grad f(x_k)) with the step t_k
//! chosen by backtracking until the sufficient-decrease condition
//! f(x_+) <= f(x) - c1 t |grad|^2 holds. Trial steps are clipped so the
//! geodesic hop never exceeds a fraction of the injectivity radius, which
//! keeps every exponential inside the region where it is a diffeomorphism.
//!
//! Cost functions may fail at isolated points (the squared distance loses
//! differentiability on the cut locus); a failing *trial* point is treated
//! as infinitely bad and backtracked past, while failure at the current
//! iterate aborts the solve.

use crate::error::{Error, Result};
use crate::manifold::Manifold;
use nalgebra::DVector;

/// Differentiable cost on a manifold: value and Riemannian gradient in
/// ambient coordinates.
pub trait Cost {
    fn value(&self, x: &DVector<f64>) -> Result<f64>;
    fn gradient(&self, x: &DVector<f64>) -> Result<DVector<f64>>;
}

impl<V, G> Cost for (V, G)
where
    V: Fn(&DVector<f64>) -> Result<f64>,
    G: Fn(&DVector<f64>) -> Result<DVector<f64>>,
{
    fn value(&self, x: &DVector<f64>) -> Result<f64> {
        (self.0)(x)
    }
    fn gradient(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        (self.1)(x)
    }
}

/// Gradient descent configuration.
#[derive(Debug, Clone)]
pub struct GradientDescentConfig {
    /// Stop when the gradient norm drops below this.
    pub grad_tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// First trial step of each line search.
    pub initial_step: f64,
    /// Armijo sufficient-decrease constant.
    pub armijo_c1: f64,
    /// Multiplicative backtracking factor in (0, 1).
    pub backtrack: f64,
    /// Maximum backtracking halvings per iteration.
    pub max_backtracks: usize,
    /// Cap on the geodesic step length as a fraction of the injectivity
    /// radius.
    pub step_radius_fraction: f64,
}

impl Default for GradientDescentConfig {
    fn default() -> Self {
        Self {
            grad_tol: 1e-10,
            max_iter: 200,
            initial_step: 1.0,
            armijo_c1: 1e-4,
            backtrack: 0.5,
            max_backtracks: 40,
            step_radius_fraction: 0.9,
        }
    }
}

/// Why the solver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Gradient norm below tolerance.
    Converged,
    /// Iteration budget exhausted.
    MaxIterations,
    /// No acceptable step found; the iterate is at the line-search floor.
    LineSearchStalled,
}

/// Solution report.
#[derive(Debug, Clone)]
pub struct GradientDescentResult {
    pub point: DVector<f64>,
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub termination: Termination,
}

impl GradientDescentResult {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }
}

/// Minimize `cost` over `manifold` starting from `x0`.
pub fn gradient_descent(
    manifold: &dyn Manifold,
    cost: &dyn Cost,
    x0: &DVector<f64>,
    cfg: &GradientDescentConfig,
) -> Result<GradientDescentResult> {
    if cfg.grad_tol.is_nan() || cfg.grad_tol <= 0.0 {
        return Err(Error::InvalidParameter("grad_tol must be positive".into()));
    }
    if cfg.backtrack.is_nan() || cfg.backtrack <= 0.0 || cfg.backtrack >= 1.0 {
        return Err(Error::InvalidParameter(
            "backtrack factor must lie in (0, 1)".into(),
        ));
    }
    let max_hop = cfg.step_radius_fraction * manifold.injectivity_radius();
    let mut x = x0.clone();
    let mut fx = cost.value(&x)?;
    for k in 0..cfg.max_iter {
        let grad = cost.gradient(&x)?;
        let gnorm = manifold.norm(&x, &grad);
        if gnorm < cfg.grad_tol {
            return Ok(GradientDescentResult {
                point: x,
                value: fx,
                grad_norm: gnorm,
                iterations: k,
                termination: Termination::Converged,
            });
        }
        let mut t = cfg.initial_step.min(max_hop / gnorm);
        let mut accepted = false;
        for _ in 0..cfg.max_backtracks {
            let trial = manifold.exp(&x, &(&grad * (-t)))?;
            match cost.value(&trial) {
                // The strict inequality matters at the rounding floor of the
                // cost: there `c1 t |g|^2` underflows below one ulp of fx, the
                // Armijo bound degenerates to `f_trial <= fx`, and accepting
                // equal values would walk the plateau until max_iter instead
                // of reporting the stall.
                Ok(f_trial)
                    if f_trial < fx && f_trial <= fx - cfg.armijo_c1 * t * gnorm * gnorm =>
                {
                    x = trial;
                    fx = f_trial;
                    accepted = true;
                    break;
                }
                // Insufficient decrease or an undefined trial value: shrink.
                _ => t *= cfg.backtrack,
            }
        }
        if !accepted {
            return Ok(GradientDescentResult {
                point: x,
                value: fx,
                grad_norm: gnorm,
                iterations: k,
                termination: Termination::LineSearchStalled,
            });
        }
    }
    let grad = cost.gradient(&x)?;
    let gnorm = manifold.norm(&x, &grad);
    let termination = if gnorm < cfg.grad_tol {
        Termination::Converged
    } else {
        Termination::MaxIterations
    };
    Ok(GradientDescentResult {
        point: x,
        value: fx,
        grad_norm: gnorm,
        iterations: cfg.max_iter,
        termination,
    })
}
