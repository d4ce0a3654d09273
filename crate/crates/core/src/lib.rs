//! Exact q-series engine for MacMahon partition generating functions and
//! theta-type product identities.
//!
//! The crate provides:
//!
//! * [`series`] — truncated Laurent series over arbitrary-precision integers,
//!   with exact truncation-order tracking through every operation;
//! * [`zseries`] — the bivariate extension (Laurent polynomials in `z` with
//!   series coefficients) used to check classical product identities;
//! * [`products`] — q-Pochhammer products, theta functions, Rogers-Ramanujan
//!   products, and bivariate verifiers for the Jacobi triple, quintuple and
//!   septuple product identities;
//! * [`macmahon`] — the MacMahon partition families A_k, C_k and their
//!   shifted / arithmetic-progression relatives, computed from generating
//!   products;
//! * [`oracle`] — independent brute-force enumerators backing every analytic
//!   pipeline;
//! * [`identities`] — one verifier per closed-formula identity, expressing
//!   reciprocals of infinite products through binomial-weighted family sums;
//! * [`qdsl`] — a small expression language over all of the above, used by
//!   the command-line tool.

pub mod identities;
pub mod macmahon;
pub mod num;
pub mod oracle;
pub mod products;
pub mod qdsl;
pub mod report;
pub mod series;
pub mod zseries;

pub use report::{IdentityId, IdentityReport, Outcome};
pub use series::{Series, SeriesError, EXACT};
pub use zseries::ZSeries;
