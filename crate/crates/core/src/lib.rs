//! Exact computation of moment cones and moment polytopes for branching
//! problems `K̃ ⊂ K` of compact connected Lie groups.
//!
//! Given an embedding of root data, the crate produces the inequality
//! description of the moment cone `Δ(T*K)` (pairs of dominant weights
//! `(λ̃, λ)` such that `Ṽ_{nλ̃}` eventually appears in `V_{nλ}` restricted
//! to `K̃`) and of the moment polytopes `Δ(O_λ)` of individual coadjoint
//! orbits.  The inequalities are indexed by triples of Weyl group elements
//! selected by a cohomological criterion (relative Schubert calculus on the
//! flag varieties of `K̃` and `K`).
//!
//! Everything is computed in exact rational arithmetic: no floating point
//! is used anywhere, and all outputs are deterministic.
//!
//! Module map:
//!
//! - [`linalg`]: dense rational vectors/matrices, exact Gaussian elimination
//! - [`rootdata`]: root data, Weyl groups, dominance, coset representatives
//! - [`polyhedra`]: rational cones, double description, exact LP (simplex
//!   with Bland's rule), redundancy certificates, vertex enumeration
//! - [`schubert`]: Schubert classes via divided differences and BGG
//!   representatives, Chevalley multiplication, pullback along embeddings
//! - [`embedding`]: embeddings of root data, compatible chambers, cubicles,
//!   the lifted Weyl action `j`, duality
//! - [`momentcone`]: the inequality generators and their provenance
//! - [`oracle`]: Freudenthal weight multiplicities, branching
//!   decompositions, saturation scans (independent ground truth)
//! - [`config`]: JSON problem configuration for the CLI

#![forbid(unsafe_code)]

pub mod config;
pub mod embedding;
pub mod linalg;
pub mod momentcone;
pub mod oracle;
pub mod polyhedra;
pub mod rootdata;
pub mod schubert;

use thiserror::Error;

/// Crate-wide error type.
///
/// The variants map onto the CLI exit codes: configuration errors exit
/// with 2, resource-budget errors with 3, verification failures with 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid input: malformed type strings, non-dominant weights,
    /// inconsistent matrices, unknown configuration keys.
    #[error("configuration error: {0}")]
    Config(String),

    /// A computation exceeded a configured budget (Weyl group enumeration
    /// bound, weight lattice point budget, dualization dimension bound).
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// A cross-check failed: two routes that must agree disagreed, or a
    /// calibration invariant was violated.  These always indicate a bug
    /// and are never silently absorbed.
    #[error("verification failure: {0}")]
    Verification(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
