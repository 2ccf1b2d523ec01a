//! Geometric machinery for state spaces: exterior algebra over a real Lie
//! algebra, Clifford products and Hodge duality on its dual, discrete
//! exterior calculus on a periodic 1-D mesh, and the Lie-Jordan geometry of
//! quantum and classical probabilistic states.

pub mod clifford;
pub mod dec;
pub mod error;
pub mod exterior;
pub mod qgeom;
pub mod statgeom;

pub use error::{Error, Result};
