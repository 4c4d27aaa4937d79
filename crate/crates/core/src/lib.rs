//! Exact verification of Rogers–Ramanujan type sum-product identities.
//!
//! The crate is layered bottom-up:
//!
//! - [`coeff`]: Gaussian integers, the coefficient ring.
//! - [`series`]: truncated power series in `q^(1/D)` and Pochhammer products.
//! - [`zseries`]: Laurent objects in an auxiliary variable `z`, constant-term
//!   extraction, theta and Euler-type builders.
//! - [`special`]: Gaussian binomials, Rogers–Szegő polynomials, the Jacobi
//!   triple product check and Nahm sums.
//! - [`lang`]: a small language describing identities, with evaluators for
//!   both sides and the verifier.
//! - [`replay`]: constant-term proofs replayed as chains of series equalities.
//! - [`oracle`]: slow independent references used by the test suites.

pub mod coeff;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod lang;
pub mod lattice;
pub mod oracle;
pub mod replay;
pub mod serial;
pub mod series;
pub mod special;
pub mod zseries;

pub use coeff::{i_pow, sign_binom2, GaussianInt, Unit};
pub use error::SeriesError;
pub use exec::Exec;
pub use lang::{parse, parse_file, parse_one, IdentitySpec, LangError, Status, VerifyReport};
pub use series::{poch_finite, poch_infinite, Monomial, QSeries, Rat};
pub use zseries::ZSeries;
