//! Flat torus T^d = R^d / (L_1 Z x ... x L_d Z) with the quotient metric.
//!
//! Points are angle vectors stored in the fundamental domain [0, L_i) per
//! coordinate. The geometry is flat: geodesics are straight lines modulo
//! wrapping, parallel transport is the identity on coordinates, and the
//! cut locus of `p` is the set of points with some coordinate exactly half
//! a period away. The injectivity radius is min_i L_i / 2.

use super::{check_dim, Manifold};
use crate::error::{Error, Result};
use nalgebra::DVector;
use rand::Rng;
use rand::RngCore;

/// Flat torus with per-coordinate periods.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatTorus {
    periods: Vec<f64>,
}

impl FlatTorus {
    /// Torus with explicit periods, all strictly positive and finite.
    pub fn new(periods: Vec<f64>) -> Result<Self> {
        if periods.is_empty() {
            return Err(Error::InvalidParameter(
                "torus needs at least one period".into(),
            ));
        }
        for &l in &periods {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "torus periods must be positive and finite, got {l}"
                )));
            }
        }
        Ok(Self { periods })
    }

    /// Torus T^d with every period equal to 2*pi.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("torus needs dimension >= 1".into()));
        }
        Ok(Self {
            periods: vec![std::f64::consts::TAU; dim],
        })
    }

    /// Per-coordinate periods.
    pub fn periods(&self) -> &[f64] {
        &self.periods
    }

    /// Wrap a coordinate vector into the fundamental domain [0, L_i).
    pub fn wrap(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.periods.len(), x)?;
        Ok(DVector::from_fn(self.periods.len(), |i, _| {
            wrap_coordinate(x[i], self.periods[i])
        }))
    }

    /// Signed per-coordinate difference `q - p` reduced into (-L/2, L/2],
    /// i.e. the coordinates of `log_p(q)`.
    fn signed_delta(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.periods.len(), p)?;
        check_dim(self.periods.len(), q)?;
        Ok(DVector::from_fn(self.periods.len(), |i, _| {
            wrap_signed(q[i] - p[i], self.periods[i])
        }))
    }
}

/// Reduce `x` into [0, L).
pub(crate) fn wrap_coordinate(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can return `period` itself when x is a tiny negative number.
    if r >= period {
        r - period
    } else {
        r
    }
}

/// Reduce a difference into (-L/2, L/2]; ties at half period resolve to +L/2.
pub(crate) fn wrap_signed(delta: f64, period: f64) -> f64 {
    let r = wrap_coordinate(delta, period);
    if r > period / 2.0 {
        r - period
    } else {
        r
    }
}

impl Manifold for FlatTorus {
    fn ambient_dim(&self) -> usize {
        self.periods.len()
    }

    fn dim(&self) -> usize {
        self.periods.len()
    }

    fn project(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        self.wrap(x)
    }

    fn tangent_project(&self, p: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.periods.len(), p)?;
        check_dim(self.periods.len(), v)?;
        Ok(v.clone())
    }

    fn exp(&self, p: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.periods.len(), p)?;
        check_dim(self.periods.len(), v)?;
        self.wrap(&(p + v))
    }

    fn log(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<DVector<f64>> {
        self.signed_delta(p, q)
    }

    fn dist(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<f64> {
        Ok(self.signed_delta(p, q)?.norm())
    }

    fn parallel_transport(
        &self,
        p: &DVector<f64>,
        q: &DVector<f64>,
        v: &DVector<f64>,
    ) -> Result<DVector<f64>> {
        check_dim(self.periods.len(), p)?;
        check_dim(self.periods.len(), q)?;
        check_dim(self.periods.len(), v)?;
        Ok(v.clone())
    }

    fn injectivity_radius(&self) -> f64 {
        self.periods.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0
    }

    fn dist_to_cut(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<f64> {
        let delta = self.signed_delta(p, q)?;
        Ok(delta
            .iter()
            .zip(&self.periods)
            .map(|(&d, &l)| l / 2.0 - d.abs())
            .fold(f64::INFINITY, f64::min))
    }

    fn tangent_basis(&self, p: &DVector<f64>) -> Result<Vec<DVector<f64>>> {
        check_dim(self.periods.len(), p)?;
        let d = self.periods.len();
        Ok((0..d)
            .map(|i| {
                let mut e = DVector::zeros(d);
                e[i] = 1.0;
                e
            })
            .collect())
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> DVector<f64> {
        DVector::from_fn(self.periods.len(), |i, _| {
            rng.random::<f64>() * self.periods[i]
        })
    }

    fn extrinsic_mean_estimate(
        &self,
        points: &[DVector<f64>],
        weights: &[f64],
    ) -> Result<DVector<f64>> {
        // Weighted circular mean per coordinate via the resultant vector.
        let d = self.periods.len();
        let mut out = DVector::zeros(d);
        for i in 0..d {
            let scale = std::f64::consts::TAU / self.periods[i];
            let (mut c, mut s) = (0.0, 0.0);
            for (p, &w) in points.iter().zip(weights) {
                let a = p[i] * scale;
                c += w * a.cos();
                s += w * a.sin();
            }
            if c.hypot(s) < 1e-12 {
                // Resultant collapses; fall back to the first point's coordinate.
                out[i] = points[0][i];
            } else {
                out[i] = wrap_coordinate(f64::atan2(s, c) / scale, self.periods[i]);
            }
        }
        Ok(out)
    }

    fn is_on_manifold(&self, p: &DVector<f64>, tol: f64) -> bool {
        p.len() == self.periods.len()
            && p.iter()
                .zip(&self.periods)
                .all(|(&x, &l)| x >= -tol && x < l + tol)
    }

    fn as_torus(&self) -> Option<&FlatTorus> {
        Some(self)
    }
}
