//! Homogeneous polynomial spaces, substitution of linear forms, and the
//! exterior algebra of a finite-dimensional dual space.
//!
//! Monomials are enumerated in graded-lexicographic order and blades in
//! colexicographic order; every dense layout in the crate uses these.

mod exterior;
mod poly;

pub use exterior::{blades, Blade, ExteriorForm};
pub use poly::{homogeneous_dim, monomials, HomogeneousPoly, Monomial, MonomialBasis};
