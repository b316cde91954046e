//! Exact q-series engine for tadpole Nahm sums, theta/eta products and
//! vector-valued modular objects.
//!
//! The crate is organized around [`series::FracSeries`], a truncated Laurent
//! series in `q` with exponents on a fractional lattice and exact
//! coefficients. On top of it sit:
//!
//! - [`products`]: Pochhammer symbols, eta-type products, Weber and theta
//!   atoms, and a small expression language (`J(4)^5*J(40)/...`) with a parser;
//! - [`nahm`]: lattice-sum evaluation of Nahm sums and shifted tadpole
//!   characters, plus the dual-triple map;
//! - [`theta`]: weight-3/2 partial theta series, residue-class theta series,
//!   minimal-model and affine characters, and their relation battery;
//! - [`modular`]: Eisenstein series, the `q d/dq` and Serre derivations,
//!   Wronskians and the related identity checks;
//! - [`transform`]: high-precision numeric evaluation on the upper half-plane
//!   and S/T transformation checks for vector-valued families;
//! - [`asymptotics`]: the TBA fixed-point system and the exact Q(sqrt5)
//!   modularity obstruction;
//! - [`suites`]: the named verification suites behind the `nahmlab` CLI.

pub mod asymptotics;
pub mod bivariate;
pub mod coeff;
pub mod error;
pub mod exponent;
pub mod modular;
pub mod nahm;
pub mod numeric;
pub mod products;
pub mod report;
pub mod series;
pub mod suites;
pub mod theta;
pub mod transform;

pub use coeff::{Coef, GaussRat, Rat, Root5};
pub use error::{NahmlabError, ParseError, Result, SeriesError};
pub use exponent::{exp, exp_int, Exponent};
pub use series::{CompareOutcome, FracSeries};

/// Tool version reported in machine-readable output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
