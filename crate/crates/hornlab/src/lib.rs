//! Max-plus data of weighted planar networks and the condition systems it satisfies.
//!
//! The crate is organized around one pipeline:
//!
//! * [`network`] builds planar networks over a generic semiring, concatenates and
//!   truncates them, and exposes the correspondence matrix together with
//!   Lindström-style minors.
//! * [`multipath`] enumerates vertex-disjoint multipath families over a
//!   concatenation and evaluates the tropical functions `m_alpha`, including
//!   tropical singular values and the triangular chart on standard networks.
//! * [`horncheck`] checks trace equalities, rhombus inequalities, tetrahedron
//!   equalities and the octahedron recurrence on such data, and fills a
//!   tetrahedron of values from a pair of faces.
//! * [`reconstruct`] inverts the boundary data: from two faces of the value
//!   tetrahedron it produces weight triples on standard networks.
//! * [`minors`] is the exact-rational detropicalized layer: multi-corner minors,
//!   Cauchy–Binet expansions, unipotent invariance, the Plücker recurrence and
//!   the triangular potential/chart machinery.
//! * [`scaling`] is the floating complex layer connecting matrix singular values
//!   with the tropical data as the scaling parameter grows.
//! * [`io`] and [`report`] carry the file formats and deterministic reports used
//!   by the `hornlab` binary.

pub mod horncheck;
pub mod io;
pub mod minors;
pub mod multipath;
pub mod network;
pub mod reconstruct;
pub mod report;
pub mod scaling;
pub mod semiring;
pub mod trop;

use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes: parse and
/// usage problems exit with 2, numeric-domain failures with 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("non-finite tropical value in {0}")]
    NonFinite(String),
    #[error("enumeration cap of {cap} partial states exceeded")]
    EnumerationCap { cap: u64 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("vanishing minor: {0}")]
    SingularMinor(String),
    #[error("matrix is not unipotent upper-triangular")]
    NotUnipotent,
    #[error("numeric domain error: {0}")]
    NumericDomain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// CLI exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::IndexRange(_) | Error::SizeMismatch(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
