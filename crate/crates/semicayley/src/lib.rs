//! Semi-Cayley graphs over finite abelian groups.
//!
//! A semi-Cayley graph over a group `G` is a graph whose automorphism group
//! contains a semiregular copy of `G` with exactly two orbits of equal size.
//! This crate builds the one-matching variants `SC(G; R, L, {0})` explicitly,
//! computes their full automorphism groups from scratch (equitable partition
//! refinement plus backtracking), and decides whether the translated copy of
//! `G` is normal in the automorphism group.
//!
//! Modules:
//! - [`abelian`]: finite abelian groups as direct products of cyclic groups,
//!   with element arithmetic and automorphism enumeration;
//! - [`perm`]: permutations and permutation groups backed by a deterministic
//!   stabilizer chain (order, membership, orbits, normality);
//! - [`graph`]: immutable simple graphs and the Cayley / semi-Cayley /
//!   generalized Petersen constructors;
//! - [`autsearch`]: graph automorphism groups and canonical labelings;
//! - [`normality`]: translation subgroups, lifted group automorphisms,
//!   normality verdicts and the exceptional-case classifier;
//! - [`sweep`]: exhaustive instance enumeration, the verification sweep,
//!   the golden regression table, and report formatting.

pub mod abelian;
pub mod autsearch;
pub mod graph;
pub mod normality;
pub mod perm;
pub mod sweep;

use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A group was constructed from invalid cyclic factors.
    InvalidGroup(String),
    /// An element does not belong to the group it was used with.
    InvalidElement(String),
    /// A connection spec violates one of its invariants.
    InvalidSpec(String),
    /// Two permutations of different degrees were combined.
    DegreeMismatch { left: usize, right: usize },
    /// A subgroup-style operation was applied to a non-subgroup.
    NotASubgroup(String),
    /// A point index is outside a permutation domain.
    PointOutOfRange { point: usize, degree: usize },
    /// A configured resource cap was exceeded.
    ResourceLimit(String),
    /// Text input failed to parse; `position` is a byte offset.
    Parse { position: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            Error::InvalidElement(msg) => write!(f, "invalid element: {msg}"),
            Error::InvalidSpec(msg) => write!(f, "invalid connection spec: {msg}"),
            Error::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            Error::NotASubgroup(msg) => write!(f, "not a subgroup: {msg}"),
            Error::PointOutOfRange { point, degree } => {
                write!(f, "point {point} out of range for degree {degree}")
            }
            Error::ResourceLimit(msg) => write!(f, "resource limit exceeded: {msg}"),
            Error::Parse { position, message } => {
                write!(f, "parse error at position {position}: {message}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on the vertex count accepted by the automorphism search.
pub const DEFAULT_VERTEX_CAP: usize = 64;

/// Environment variable that overrides [`DEFAULT_VERTEX_CAP`].
pub const VERTEX_CAP_ENV: &str = "SEMICAYLEY_MAX_VERTICES";

/// The vertex cap currently in effect: `SEMICAYLEY_MAX_VERTICES` if set to a
/// positive integer, otherwise [`DEFAULT_VERTEX_CAP`].
pub fn vertex_cap() -> usize {
    std::env::var(VERTEX_CAP_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_VERTEX_CAP)
}
