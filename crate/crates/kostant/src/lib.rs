//! Combinatorics of blocks of parabolic category O: parabolic Weyl-group
//! quotients with Bruhat order, Kazhdan-Lusztig-Vogan polynomials (regular and
//! singular), rational-smoothness tests, Kostant-module classification, BGG
//! complex incidence data, Hermitian-symmetric singular-block reductions, and
//! minimal-free-resolution Betti tables.
//!
//! All arithmetic is exact (integers and rationals); no operation introduces
//! floating point.

pub mod bgg;
pub mod cache;
pub mod classify;
pub mod diagram;
pub mod hermitian;
pub mod kl;
pub mod poly;
pub mod poset;
pub mod roots;
pub mod weyl;

pub use diagram::{LieType, MarkedDiagram, Node};
pub use poly::IntPolynomial;
pub use roots::{RootSystem, Weight};
pub use weyl::{CosetPoset, WeylGroup};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    BadDiagram(String),
    #[error("unknown diagram type `{0}`")]
    UnknownType(String),
    #[error("poset too large: exceeded cap of {cap} elements")]
    PosetTooLarge { cap: usize },
    #[error("group too large for full Kazhdan-Lusztig computation: |W| = {order} exceeds cap {cap}; use the relative path")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("elements are not comparable: {0}")]
    NotComparable(String),
    #[error("interval is not graded: {0}")]
    NotGraded(String),
    #[error("simply-laced cover undefined for this diagram: {0}")]
    UnsupportedCover(String),
    #[error("not a Hermitian symmetric pair: {0}")]
    NotHermitian(String),
    #[error("weight is not S-dominant: fails on simple root {node}")]
    NotDominant { node: Node },
    #[error("non-integral weight: {0}")]
    NonIntegralWeight(String),
    #[error("Wallach configuration error for pair {pair}: {msg}")]
    WallachConfig { pair: String, msg: String },
    #[error("KL convention violation: {0}")]
    ConventionViolation(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("unknown output format `{0}`")]
    UnknownFormat(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
