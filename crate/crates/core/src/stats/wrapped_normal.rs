//! Wrapped normal distributions on the circle and, as a product, on flat tori.
//!
//! Wrapping N(mu, sigma^2) around a circle of circumference L gives the
//! density
//!
//!   f(x) = (1 / (sigma sqrt(2 pi))) sum_k exp(-(d + k L)^2 / (2 sigma^2)),
//!
//! with d the signed wrapped difference x - mu. The same density has the
//! Fourier form
//!
//!   f(x) = (1/L) (1 + 2 sum_{j>=1} exp(-j^2 a^2 / 2) cos(2 pi j d / L)),
//!
//! with a = 2 pi sigma / L. The spatial sum converges fast for small sigma,
//! the Fourier sum for large sigma; evaluation switches between them at
//! a = sqrt(2 pi), where both need the same number of terms.

use crate::error::{Error, Result};
use crate::manifold::torus::{wrap_coordinate, wrap_signed};
use crate::manifold::{FlatTorus, Manifold};
use crate::stats::circular_summary;
use nalgebra::DVector;
use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

/// Wrapped normal distribution on a circle of circumference `period`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrappedNormal {
    mu: f64,
    sigma: f64,
    period: f64,
}

impl WrappedNormal {
    /// Wrapped N(mu, sigma^2) on the standard circle of circumference 2*pi.
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        Self::with_period(mu, sigma, std::f64::consts::TAU)
    }

    /// Wrapped normal on a circle of arbitrary circumference.
    pub fn with_period(mu: f64, sigma: f64, period: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "period must be positive and finite, got {period}"
            )));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mu must be finite, got {mu}"
            )));
        }
        Ok(Self {
            mu: wrap_coordinate(mu, period),
            sigma,
            period,
        })
    }

    /// Location parameter, wrapped into [0, period).
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Scale parameter of the unwrapped normal.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Circle circumference.
    pub fn period(&self) -> f64 {
        self.period
    }

    /// Concentration in Fourier units: 2 pi sigma / period.
    fn fourier_scale(&self) -> f64 {
        std::f64::consts::TAU * self.sigma / self.period
    }

    /// Probability density at `x` (any real number; wrapping is applied).
    pub fn pdf(&self, x: f64) -> f64 {
        if self.fourier_scale() <= (std::f64::consts::TAU).sqrt() {
            self.pdf_spatial(x)
        } else {
            self.pdf_fourier(x)
        }
    }

    /// Density via the wrapped spatial sum. Exposed so the two expansions can
    /// be checked against each other.
    pub fn pdf_spatial(&self, x: f64) -> f64 {
        let d = wrap_signed(x - self.mu, self.period);
        // Terms beyond 9 sigma contribute below 1e-17 relative.
        let k_max = ((9.0 * self.sigma + self.period / 2.0) / self.period).ceil() as i64;
        let norm = 1.0 / (self.sigma * (std::f64::consts::TAU).sqrt());
        let mut acc = 0.0;
        for k in -k_max..=k_max {
            let t = (d + k as f64 * self.period) / self.sigma;
            acc += (-0.5 * t * t).exp();
        }
        norm * acc
    }

    /// Density via the Fourier (theta function) series.
    pub fn pdf_fourier(&self, x: f64) -> f64 {
        let d = wrap_signed(x - self.mu, self.period);
        let a = self.fourier_scale();
        // exp(-j^2 a^2 / 2) < 1e-18 cutoff.
        let j_max = ((2.0 * 41.5f64).sqrt() / a).ceil().max(1.0) as i64;
        let base = std::f64::consts::TAU * d / self.period;
        let mut acc = 1.0;
        for j in 1..=j_max {
            let jf = j as f64;
            acc += 2.0 * (-0.5 * jf * jf * a * a).exp() * (jf * base).cos();
        }
        acc / self.period
    }

    /// Mean resultant length rho = exp(-(2 pi sigma / period)^2 / 2).
    pub fn mean_resultant_length(&self) -> f64 {
        let a = self.fourier_scale();
        (-0.5 * a * a).exp()
    }

    /// Circular variance 1 - rho.
    pub fn circular_variance(&self) -> f64 {
        1.0 - self.mean_resultant_length()
    }

    /// One draw: wrap a normal sample.
    pub fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let z: f64 = StandardNormal.sample(rng);
        wrap_coordinate(self.mu + self.sigma * z, self.period)
    }

    /// `n` independent draws.
    pub fn sample_n(&self, n: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// Moment estimator from data: mean direction for mu and
    /// `sigma = sqrt(-2 ln R) * period / (2 pi)` from the resultant length.
    ///
    /// Fails when the sample resultant is zero (no direction) or when the
    /// sample is empty.
    pub fn fit_moments(angles: &[f64], period: f64) -> Result<Self> {
        let summary = circular_summary(angles, period)?;
        let r = summary.resultant_length;
        if r >= 1.0 {
            return Err(Error::Degenerate(
                "all angles identical; sigma estimate is zero".into(),
            ));
        }
        let sigma = (-2.0 * r.ln()).sqrt() * period / std::f64::consts::TAU;
        Self::with_period(summary.mean_direction, sigma, period)
    }
}

/// Product of independent wrapped normals, one per torus coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct WrappedNormalTorus {
    components: Vec<WrappedNormal>,
}

impl WrappedNormalTorus {
    /// Product distribution on `torus` with per-coordinate locations and scales.
    pub fn new(torus: &FlatTorus, mu: &[f64], sigma: &[f64]) -> Result<Self> {
        let d = torus.dim();
        if mu.len() != d || sigma.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: if mu.len() != d { mu.len() } else { sigma.len() },
            });
        }
        let components = (0..d)
            .map(|i| WrappedNormal::with_period(mu[i], sigma[i], torus.periods()[i]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { components })
    }

    /// Per-coordinate marginals.
    pub fn components(&self) -> &[WrappedNormal] {
        &self.components
    }

    /// Joint density at a torus point.
    pub fn pdf(&self, x: &DVector<f64>) -> Result<f64> {
        if x.len() != self.components.len() {
            return Err(Error::DimensionMismatch {
                expected: self.components.len(),
                got: x.len(),
            });
        }
        Ok(self
            .components
            .iter()
            .zip(x.iter())
            .map(|(c, &xi)| c.pdf(xi))
            .product())
    }

    /// One draw as a torus point.
    pub fn sample(&self, rng: &mut dyn RngCore) -> DVector<f64> {
        DVector::from_fn(self.components.len(), |i, _| self.components[i].sample(rng))
    }

    /// `n` independent draws.
    pub fn sample_n(&self, n: usize, rng: &mut dyn RngCore) -> Vec<DVector<f64>> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// Per-coordinate moment fit.
    pub fn fit_moments(torus: &FlatTorus, points: &[DVector<f64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let d = torus.dim();
        let components = (0..d)
            .map(|i| {
                let angles: Vec<f64> = points.iter().map(|p| p[i]).collect();
                WrappedNormal::fit_moments(&angles, torus.periods()[i])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { components })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    /// Composite Simpson quadrature over one period.
    fn integrate_pdf<F: Fn(f64) -> f64>(f: F, period: f64, n: usize) -> f64 {
        let h = period / n as f64;
        let mut acc = f(0.0) + f(period);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn parameter_validation() {
        assert!(WrappedNormal::new(0.0, 0.0).is_err());
        assert!(WrappedNormal::new(0.0, -1.0).is_err());
        assert!(WrappedNormal::new(f64::NAN, 1.0).is_err());
        assert!(WrappedNormal::with_period(0.0, 1.0, 0.0).is_err());
        assert!(WrappedNormal::new(7.0, 1.0).is_ok());
    }

    #[test]
    fn mu_is_wrapped_into_the_period() {
        let w = WrappedNormal::new(std::f64::consts::TAU + 1.0, 0.5).unwrap();
        assert_relative_eq!(w.mu(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn density_integrates_to_one_across_regimes() {
        for sigma in [0.1, 0.5, 1.0, 2.5, 6.0] {
            let w = WrappedNormal::new(1.3, sigma).unwrap();
            let mass = integrate_pdf(|x| w.pdf(x), w.period(), 4096);
            assert_relative_eq!(mass, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn spatial_and_fourier_series_agree() {
        // Near the switch point both series are far from their truncation
        // limits, so they must agree to near machine precision.
        for sigma in [1.5, 2.0, 2.5, 3.0] {
            let w = WrappedNormal::new(0.7, sigma).unwrap();
            for x in [0.0, 0.5, 1.0, 2.0, 3.1, 5.9] {
                let a = w.pdf_spatial(x);
                let b = w.pdf_fourier(x);
                assert_relative_eq!(a, b, epsilon = 1e-13, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn resultant_length_matches_quadrature() {
        let w = WrappedNormal::new(2.0, 0.8).unwrap();
        let c = integrate_pdf(|x| w.pdf(x) * (x - w.mu()).cos(), w.period(), 4096);
        assert_relative_eq!(c, w.mean_resultant_length(), epsilon = 1e-10);
    }

    #[test]
    fn large_sigma_tends_to_uniform() {
        let w = WrappedNormal::new(0.0, 25.0).unwrap();
        let u = 1.0 / w.period();
        for x in [0.0, 1.0, 3.0, 6.0] {
            assert_relative_eq!(w.pdf(x), u, max_relative = 1e-12);
        }
    }

    #[test]
    fn moment_fit_inverts_the_resultant_map() {
        // Construct angles whose resultant equals the model's, then fit.
        let true_sigma = 0.7;
        let w = WrappedNormal::new(1.0, true_sigma).unwrap();
        let mut rng = StdRng::seed_from_u64(42);
        let angles = w.sample_n(50_000, &mut rng);
        let fit = WrappedNormal::fit_moments(&angles, w.period()).unwrap();
        assert!(
            (fit.mu() - 1.0).abs() < 0.02,
            "mu estimate {} too far",
            fit.mu()
        );
        assert!(
            (fit.sigma() - true_sigma).abs() < 0.02,
            "sigma estimate {} too far",
            fit.sigma()
        );
    }

    #[test]
    fn fit_rejects_degenerate_samples() {
        assert!(WrappedNormal::fit_moments(&[], 1.0).is_err());
        assert!(WrappedNormal::fit_moments(&[0.4, 0.4, 0.4], std::f64::consts::TAU).is_err());
    }

    #[test]
    fn torus_product_density_and_fit() {
        let t = FlatTorus::new(vec![std::f64::consts::TAU, 4.0]).unwrap();
        let d = WrappedNormalTorus::new(&t, &[1.0, 2.0], &[0.4, 0.3]).unwrap();
        let x = DVector::from_row_slice(&[1.1, 2.2]);
        let joint = d.pdf(&x).unwrap();
        let m0 = d.components()[0].pdf(1.1);
        let m1 = d.components()[1].pdf(2.2);
        assert_relative_eq!(joint, m0 * m1, epsilon = 1e-15);

        let mut rng = StdRng::seed_from_u64(3);
        let sample = d.sample_n(40_000, &mut rng);
        let fit = WrappedNormalTorus::fit_moments(&t, &sample).unwrap();
        assert!((fit.components()[0].mu() - 1.0).abs() < 0.02);
        assert!((fit.components()[1].mu() - 2.0).abs() < 0.02);
        assert!((fit.components()[0].sigma() - 0.4).abs() < 0.02);
        assert!((fit.components()[1].sigma() - 0.3).abs() < 0.02);
    }

    #[test]
    fn torus_product_validates_dimensions() {
        let t = FlatTorus::standard(2).unwrap();
        assert!(WrappedNormalTorus::new(&t, &[0.0], &[1.0, 1.0]).is_err());
        let d = WrappedNormalTorus::new(&t, &[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!(d.pdf(&DVector::zeros(3)).is_err());
    }
}
