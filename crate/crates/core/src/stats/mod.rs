//! Directional statistics on the circle and on flat tori.

mod circular;
mod wrapped_normal;

pub use circular::{circular_summary, CircularSummary};
pub use wrapped_normal::{WrappedNormal, WrappedNormalTorus};
