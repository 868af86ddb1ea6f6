//! Round unit sphere S^{n-1} embedded in R^n.
//!
//! Points are unit vectors in ambient coordinates; tangent vectors at `p`
//! are ambient vectors orthogonal to `p`. Geodesics are great circles, the
//! injectivity radius is pi and the cut locus of `p` is its antipode `-p`.

use super::{check_dim, Manifold};
use crate::error::{Error, Result};
use nalgebra::DVector;
use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

/// Unit sphere S^{n-1} c R^n with the round metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sphere {
    ambient: usize,
}

/// Below this norm a vector has no meaningful direction in f64.
const DIRECTION_EPS: f64 = 1e-14;

impl Sphere {
    /// Sphere embedded in `ambient_dim`-dimensional space (so S^{n-1} for
    /// `ambient_dim = n`). Needs `ambient_dim >= 2`.
    pub fn new(ambient_dim: usize) -> Result<Self> {
        if ambient_dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "sphere needs ambient dimension >= 2, got {ambient_dim}"
            )));
        }
        Ok(Self {
            ambient: ambient_dim,
        })
    }

    /// The 2-sphere in R^3.
    pub fn s2() -> Self {
        Self { ambient: 3 }
    }

    /// Angle between two unit vectors, computed through `atan2` so it stays
    /// accurate near 0 and near pi where `acos` loses half the digits.
    fn angle(&self, p: &DVector<f64>, q: &DVector<f64>) -> (f64, DVector<f64>, f64) {
        if p == q {
            // Bitwise-equal points must give an exact zero, not the ~1e-16
            // residue of |p|^2 after normalization.
            return (0.0, DVector::zeros(p.len()), 0.0);
        }
        let c = p.dot(q).clamp(-1.0, 1.0);
        // Component of q orthogonal to p; its norm is sin(theta).
        let w = q - p * c;
        let s = w.norm();
        (f64::atan2(s, c), w, s)
    }
}

impl Manifold for Sphere {
    fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn dim(&self) -> usize {
        self.ambient - 1
    }

    fn project(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.ambient, x)?;
        let n = x.norm();
        if n < DIRECTION_EPS {
            return Err(Error::Degenerate(
                "cannot project the zero vector onto the sphere".into(),
            ));
        }
        Ok(x / n)
    }

    fn tangent_project(&self, p: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.ambient, p)?;
        check_dim(self.ambient, v)?;
        Ok(v - p * p.dot(v))
    }

    fn exp(&self, p: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.ambient, p)?;
        check_dim(self.ambient, v)?;
        let theta = v.norm();
        if theta < DIRECTION_EPS {
            // First order step, renormalized to stay on the sphere.
            return self.project(&(p + v));
        }
        let out = p * theta.cos() + v * (theta.sin() / theta);
        // Renormalize to remove rounding drift.
        self.project(&out)
    }

    fn log(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.ambient, p)?;
        check_dim(self.ambient, q)?;
        let (theta, w, s) = self.angle(p, q);
        if s < DIRECTION_EPS {
            if theta < std::f64::consts::FRAC_PI_2 {
                // q == p.
                return Ok(DVector::zeros(self.ambient));
            }
            return Err(Error::CutLocus(format!(
                "log undefined at the antipode (angle = {theta:.6})"
            )));
        }
        Ok(w * (theta / s))
    }

    fn dist(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<f64> {
        check_dim(self.ambient, p)?;
        check_dim(self.ambient, q)?;
        Ok(self.angle(p, q).0)
    }

    fn parallel_transport(
        &self,
        p: &DVector<f64>,
        q: &DVector<f64>,
        v: &DVector<f64>,
    ) -> Result<DVector<f64>> {
        check_dim(self.ambient, v)?;
        let u = self.log(p, q)?;
        let theta = u.norm();
        if theta < DIRECTION_EPS {
            return Ok(v.clone());
        }
        // Decompose v along the geodesic direction e = u/theta; the component
        // along e rotates in the (p, e) plane, the rest is unchanged.
        let e = u / theta;
        let a = e.dot(v);
        Ok(v + &e * (a * (theta.cos() - 1.0)) - p * (a * theta.sin()))
    }

    fn injectivity_radius(&self) -> f64 {
        std::f64::consts::PI
    }

    fn dist_to_cut(&self, p: &DVector<f64>, q: &DVector<f64>) -> Result<f64> {
        Ok(std::f64::consts::PI - self.dist(p, q)?)
    }

    fn tangent_basis(&self, p: &DVector<f64>) -> Result<Vec<DVector<f64>>> {
        check_dim(self.ambient, p)?;
        // Householder reflection H = I - 2 u u^T / |u|^2 with u = p - alpha e_0
        // maps p to alpha e_0 (alpha = -sign(p_0)); its remaining columns
        // H e_1, ..., H e_{n-1} form an orthonormal basis of p^perp.
        let n = self.ambient;
        let alpha = if p[0] >= 0.0 { -1.0 } else { 1.0 };
        let mut u = p.clone();
        u[0] -= alpha;
        let uu = u.norm_squared();
        let mut basis = Vec::with_capacity(n - 1);
        for j in 1..n {
            let mut col = DVector::zeros(n);
            col[j] = 1.0;
            if uu > DIRECTION_EPS {
                let scale = 2.0 * u[j] / uu;
                col -= &u * scale;
            }
            basis.push(col);
        }
        Ok(basis)
    }

    fn random_point(&self, rng: &mut dyn RngCore) -> DVector<f64> {
        loop {
            let x: DVector<f64> = DVector::from_fn(self.ambient, |_, _| StandardNormal.sample(rng));
            let n = x.norm();
            if n > DIRECTION_EPS {
                return x / n;
            }
        }
    }

    fn extrinsic_mean_estimate(
        &self,
        points: &[DVector<f64>],
        weights: &[f64],
    ) -> Result<DVector<f64>> {
        let mut acc = DVector::zeros(self.ambient);
        for (p, &w) in points.iter().zip(weights) {
            acc += p * w;
        }
        match self.project(&acc) {
            Ok(p) => Ok(p),
            // Perfectly balanced cloud: any point is as good a start as another.
            Err(_) => Ok(points[0].clone()),
        }
    }

    fn is_on_manifold(&self, p: &DVector<f64>, tol: f64) -> bool {
        p.len() == self.ambient && (p.norm() - 1.0).abs() <= tol
    }
}
