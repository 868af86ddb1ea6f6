//! Statistics on Riemannian manifolds with closed-form geometry.
//!
//! The crate bundles the estimation toolkit we kept rewriting per project:
//! Fréchet means and geometric medians on the unit sphere and the flat
//! torus, wrapped normal densities, circular summaries, low-discrepancy
//! designs, derivative checks via Richardson extrapolation, and quadratic
//! envelope fits of the Fréchet functional around its minimizer.
//!
//! Geometry enters only through the [`manifold::Manifold`] trait, so every
//! estimator works against a `Box<dyn Manifold>` chosen at runtime (see
//! [`manifold::from_spec`]). The estimators are exact-gradient methods:
//! both supported manifolds have closed-form exp/log maps, so no retraction
//! approximations are involved.

pub mod diff;
pub mod envelope;
pub mod error;
pub mod manifold;
pub mod mean;
pub mod median;
pub mod optim;
pub mod sampling;
pub mod stats;

pub use error::{Error, Result};
pub use manifold::{from_spec, FlatTorus, Manifold, Sphere};
pub use mean::{frechet_mean, frechet_mean_weighted, FrechetMeanConfig, FrechetMeanResult};
pub use median::{geometric_median, geometric_median_weighted, MedianConfig, MedianResult};
