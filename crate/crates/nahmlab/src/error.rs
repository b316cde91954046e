//! Error types shared across the crate.

use crate::exponent::Exponent;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(&'static str, &'static str),
    #[error("truncation underflow: result known only to q^({0}) which is at or below its lowest exponent")]
    TruncationUnderflow(Exponent),
    #[error("cannot invert a series that is zero to truncation")]
    ZeroSeries,
    #[error("leading coefficient is not a unit in the coefficient ring")]
    NonUnitLeading,
    #[error("dissection requires integer exponents (found denominator {0})")]
    FractionalExponents(i64),
    #[error("phase e^(2*pi*i*{0}) is not representable in ring {1}")]
    PhaseNotRepresentable(Exponent, &'static str),
    #[error("comparison depth q^({depth}) exceeds truncation q^({trunc})")]
    DepthExceedsTruncation { depth: Exponent, trunc: Exponent },
    #[error("constant-term window [{0}, {1}] excludes z-degree 0")]
    WindowExcludesConstant(i64, i64),
    #[error("exponent arithmetic overflow")]
    ExponentOverflow,
    #[error("divergent product specification: infinite Pochhammer needs a positive leading exponent (got {0})")]
    DivergentProduct(Exponent),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not positive definite (leading principal minor {0} is not positive)")]
    NotPositiveDefinite(usize),
    #[error("depth q^({0}) is at or below the minimal exponent of the sum")]
    DepthBelowMinimal(Exponent),
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("syntax error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Error)]
pub enum NahmlabError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("evaluation point must lie in the upper half-plane (Im tau = {0})")]
    NotUpperHalfPlane(f64),
    #[error("tail bound {bound:e} exceeds requested tolerance {tol:e}; increase depth or lower precision target")]
    TailBoundTooLarge { bound: f64, tol: f64 },
    #[error("fixed-point iteration did not converge within {iters} steps (last residual {residual:e})")]
    NoConvergence { iters: usize, residual: f64 },
    #[error("sample set is ill-conditioned (|det Gram| = {0:e})")]
    IllConditioned(f64),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("{0}")]
    Msg(String),
}

pub type Result<T, E = NahmlabError> = std::result::Result<T, E>;
