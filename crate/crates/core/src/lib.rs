//! Exact computations for constant webs of type (r, n).
//!
//! A constant web is a finite family of linear foliations of codimension `r`
//! on an `rn`-dimensional space. This crate computes their abelian-relation
//! spaces degree by degree, compares them with the Chern–Griffiths bounds,
//! builds maximal-rank webs from rational normal curves, recovers the adapted
//! Grassmannian normal form of semi-extremal webs, and produces the canonical
//! curve data (Poincaré points and their rational normal curve) at a point.
//!
//! All arithmetic is exact over the rationals.

pub mod error;
pub mod exactalg;
pub mod multilinear;
pub mod webcore;
pub mod abelian;
pub mod grassmann;
pub mod canonical;
pub mod incidence;
pub mod formats;
pub mod gen;

pub use error::{Error, Result};
