//! Exact geometry of the flag variety of pointed projective lines, the
//! sl(3) machinery around it, and the dynamics of partially hyperbolic
//! affine automorphisms of Heisenberg nilmanifolds.

pub mod curvature;
pub mod dynamics;
pub mod error;
pub mod flag_space;
pub mod linalg;
pub mod lie_core;
pub mod matrix;
pub mod models;
pub mod oracle;
pub mod sampling;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
