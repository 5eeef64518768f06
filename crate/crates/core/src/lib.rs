//! Inductive valuations on `Q_p[x]`, higher-order Newton polygons and residual
//! polynomials, types, and the Montes algorithm for factoring over `Z_p`.

pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod json;
pub mod polygon;
pub mod render;
pub mod residual;
pub mod valuation;
pub mod montes;
pub mod types;

pub use arith::{fq_factor, parse_poly, phi_expansion, vp, Fq, FqPoly, QPoly, TowerElem, TowerField, ValOrInf, Valued};
pub use montes::{certify, factorize, CertifyReport, FactorCertificate, Factorization, TraceEvent};
pub use polygon::{apply_affinity, component_of, lower_hull, Component, NewtonPolygon, PolyPoint, Side};
pub use residual::{graded_normalize, left_end, lift_residue, r0, residual_ideal_data, ri, GradedTerm, ResidualResult};
pub use types::{equivalent, ord_type, representative, transport_residual, Classification, EquivFailure, EquivWitness, Type};
pub use valuation::{augment, build_chain, collapse_step, key_check, mu_eval, KeyCheck, Level, LevelNums, MacLaneChain};
