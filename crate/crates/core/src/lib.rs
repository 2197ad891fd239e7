//! Exact arithmetic over GF(2^k)(t) and algorithms for quadratic forms in
//! characteristic 2: residue symbols, Artin–Schreier reduction of norm
//! forms, local solvability, and a global search for nontrivial zeros of
//! quaternary forms, with quaternion algebra applications on top.
//!
//! The crate is `no_std` and only needs `alloc`. Randomized procedures take
//! an explicit [`rand::RngCore`] so results are reproducible from a seed.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod artin_schreier;
pub mod binary_norm;
pub mod error;
pub mod factor;
pub mod gf;
pub mod irreducible;
pub mod local;
pub mod place;
pub mod poly;
pub mod quaternary;
pub mod quaternion;
pub mod ratfunc;

pub use error::Error;
pub use gf::{FieldElement, FieldSpec};
pub use place::{Place, Valuation};
pub use poly::{Degree, Poly};
pub use ratfunc::RatFunc;
