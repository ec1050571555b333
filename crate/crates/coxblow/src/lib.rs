//! Combinatorics of blow-ups of Coxeter cell complexes.
//!
//! The crate computes nested-set links of blow-ups, mock reflection group
//! presentations, gluing involutions and their curvature and framing
//! conditions, and a linear representation of the resulting groups. On top
//! of that it models associahedral and permutohedral tilings and classifies
//! the associahedral ones up to isomorphism.
//!
//! Modules, bottom up:
//!
//! - [`coxeter`]: Coxeter matrices, finite-type recognition, longest-element
//!   symmetries, finite group enumeration.
//! - [`complexes`]: simplicial complexes, stars, automorphism search, flag tests.
//! - [`blowup`]: admissible collections, nested complexes, `M_#`, gluing
//!   involutions, Condition (F), mock presentations.
//! - [`groups`]: gluing data, derived sequences, holonomy, coset enumeration.
//! - [`linrep`]: the forms `B_t`, the involutions `rho_v`, Minkowski reflections.
//! - [`polytopes`]: associahedron and permutohedron models and classification.
//! - [`cli`]: JSON problem documents, reports, and the command-line front end.

pub mod blowup;
pub mod cli;
pub mod complexes;
pub mod coxeter;
pub mod groups;
pub mod linrep;
pub mod polytopes;

/// Library-wide error type. The CLI maps the variants onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("invalid input: {0}")]
    Input(String),
    /// A configured cap (generators, group order, cosets, scan range) was hit.
    #[error("cap exceeded: {0}")]
    Cap(String),
    /// A computation produced a result that contradicts an established fact.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
