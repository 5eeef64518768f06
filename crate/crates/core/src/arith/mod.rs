//! Exact arithmetic: rationals with p-adic valuations, polynomials over Q,
//! finite-field towers and factorization over them.

pub mod factor;
pub mod parse;
pub mod qpoly;
pub mod rational;
pub mod tower;

pub use factor::{fq_factor, is_irreducible};
pub use parse::parse_poly;
pub use qpoly::{phi_expansion, QPoly};
pub use rational::{vp, ValOrInf, Valued};
pub use tower::{Fq, FqPoly, TowerElem, TowerField};
