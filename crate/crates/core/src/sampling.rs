//! Low-discrepancy and uniform random point sets on the supported manifolds.
//!
//! Deterministic designs:
//! - [`fibonacci_sphere`]: the spherical Fibonacci lattice on S^2, with points
//!   at golden-angle increments in azimuth and equal-area steps in height.
//! - [`golden_lattice`]: the Kronecker lattice on a flat torus driven by the
//!   generalized golden ratio (the real root of x^{d+1} = x + 1), which is the
//!   d-dimensional analogue of spacing by 1/phi.
//!
//! Randomized baselines [`random_points`] draw from the uniform distribution
//! of either manifold.

use crate::error::{Error, Result};
use crate::manifold::{FlatTorus, Manifold};
use nalgebra::DVector;
use rand::RngCore;

/// Spherical Fibonacci lattice with `n` points on S^2.
///
/// Point `i` sits at height `z_i = 1 - (2i+1)/n` (equal-area slabs) and
/// azimuth `2*pi * frac(i/phi)` with `phi` the golden ratio. The result is a
/// nearly uniform design: the centroid norm decays like 1/n and the minimum
/// pairwise spacing like c/sqrt(n).
pub fn fibonacci_sphere(n: usize) -> Vec<DVector<f64>> {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let azimuth = std::f64::consts::TAU * ((i as f64 / phi) % 1.0);
            DVector::from_row_slice(&[r * azimuth.cos(), r * azimuth.sin(), z])
        })
        .collect()
}

/// Generalized golden ratio: the unique real root > 1 of x^{d+1} = x + 1.
///
/// d = 1 gives the classical golden ratio, d = 2 the plastic number.
pub fn generalized_golden_ratio(d: usize) -> f64 {
    let mut x = 2.0_f64;
    for _ in 0..64 {
        x = (1.0 + x).powf(1.0 / (d + 1) as f64);
    }
    x
}

/// Kronecker lattice of `n` points on a flat torus.
///
/// Coordinate `j` of point `i` is `frac(0.5 + (i+1) * g^-(j+1)) * L_j` with
/// `g` the generalized golden ratio for the torus dimension. Consecutive
/// points fill the torus with low discrepancy and no axis-aligned clumping.
pub fn golden_lattice(torus: &FlatTorus, n: usize) -> Vec<DVector<f64>> {
    let d = torus.dim();
    let g = generalized_golden_ratio(d);
    let alphas: Vec<f64> = (1..=d).map(|j| g.powi(-(j as i32)).fract()).collect();
    (0..n)
        .map(|i| {
            DVector::from_fn(d, |j, _| {
                let u = (0.5 + (i + 1) as f64 * alphas[j]).fract();
                u * torus.periods()[j]
            })
        })
        .collect()
}

/// `n` independent uniform samples on any supported manifold.
pub fn random_points(
    manifold: &dyn Manifold,
    n: usize,
    rng: &mut dyn RngCore,
) -> Vec<DVector<f64>> {
    (0..n).map(|_| manifold.random_point(rng)).collect()
}

/// Deterministic spread of `count` unit vectors in R^d.
///
/// Alternating signs for d = 1, a golden-angle circle for d = 2, the
/// Fibonacci lattice for d = 3, and seeded normalized Gaussians above that.
pub fn unit_directions(d: usize, count: usize) -> Vec<DVector<f64>> {
    match d {
        0 => Vec::new(),
        1 => (0..count)
            .map(|k| DVector::from_row_slice(&[if k % 2 == 0 { 1.0 } else { -1.0 }]))
            .collect(),
        2 => {
            let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
            (0..count)
                .map(|k| {
                    let a = std::f64::consts::TAU * ((k as f64 + 0.5) / phi % 1.0);
                    DVector::from_row_slice(&[a.cos(), a.sin()])
                })
                .collect()
        }
        3 => fibonacci_sphere(count),
        _ => {
            use rand::rngs::StdRng;
            use rand::SeedableRng;
            use rand_distr::{Distribution, StandardNormal};
            let mut rng = StdRng::seed_from_u64(0x5EED_D135);
            (0..count)
                .map(|_| loop {
                    let x: DVector<f64> =
                        DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng));
                    let n = x.norm();
                    if n > 1e-12 {
                        break x / n;
                    }
                })
                .collect()
        }
    }
}

/// A spread of unit directions in the tangent space at `p`, expressed in
/// ambient coordinates, suitable for probing a function on a geodesic ball.
/// Deterministic in `p`.
pub fn tangent_directions(
    manifold: &dyn Manifold,
    p: &DVector<f64>,
    count: usize,
) -> Result<Vec<DVector<f64>>> {
    let basis = manifold.tangent_basis(p)?;
    if basis.is_empty() {
        return Err(Error::InvalidParameter(
            "manifold has no tangent directions".into(),
        ));
    }
    Ok(unit_directions(basis.len(), count)
        .into_iter()
        .map(|coords| {
            let mut dir = DVector::zeros(manifold.ambient_dim());
            for (c, b) in coords.iter().zip(&basis) {
                dir += b * *c;
            }
            dir
        })
        .collect())
}
