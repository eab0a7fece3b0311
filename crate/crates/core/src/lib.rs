//! Exact finite-dimensional algebra for noncommutative quadric hypersurfaces:
//! Koszul duals, Clifford deformations, twisted matrix algebras, twisted direct
//! products, semi-trivial extensions and Zhang twists over K = Q(i, sqrt 2).
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod deform;
pub mod error;
pub mod exactlin;
pub mod knorrer;
pub mod quadratic;
pub mod rewrite;
pub mod twist;

pub use error::{Error, Result};
