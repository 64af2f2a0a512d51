//! Exact arithmetic for flow polytopes of complete-graph-like multigraphs.
//!
//! The crate computes normalized volumes and lattice-point counts of flow
//! polytopes `F_G(a)` through Kostant partition functions and the generalized
//! Lidskii formulas, evaluates iterated constant terms of Morris-type
//! integrands by counting hook-sum matrices, evaluates the matching
//! Gamma-product closed forms exactly, and enumerates faces of
//! `F_{K_{n+1}}(a)` through Tesler tableaux.
//!
//! Everything is exact: counts are [`BigUint`](num_bigint::BigUint)s,
//! closed forms are [`BigRational`](num_rational::BigRational)s carrying an
//! explicit power of `sqrt(pi)`.
//!
//! With the default `parallel` feature, composition sums, numerator
//! monomials and tableau enumeration fan out over rayon. Every entry point
//! has a `*_with` variant taking an [`Exec`] so the sequential path can be
//! selected (and benchmarked) at runtime.

pub mod closedform;
pub mod combinat;
pub mod ctengine;
mod error;
pub mod exec;
pub mod faces;
pub mod graph;
pub mod lidskii;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{kostant, GraphKind, Multigraph, NetflowVector};
