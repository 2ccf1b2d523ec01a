//! Exterior algebra Λ(V) and Λ(V*) over a finite-dimensional real Lie
//! algebra V, with the boundary/coboundary operators the bracket induces.
//!
//! Basis blades are kept as bit masks over the ordered basis e_0..e_{n-1};
//! every stored index tuple is strictly increasing, and non-sorted input is
//! normalized by the permutation sign.

mod algebra;
pub(crate) mod blades;
mod form;
mod multivector;
mod poisson;

pub use algebra::LieAlgebraSpec;
pub use form::{pairing, Form};
pub use multivector::{Endomorphism, Multivector};
pub use poisson::{lie_poisson_bivector, DualPoint};
