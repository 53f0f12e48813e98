//! Exact-arithmetic toolkit for two classes of Diophantine problems:
//!
//! * `t^2 = n*x*y*z*F(x,y,z)` where `F(x,y,z) = x^2 + y^2 + a*z^2 + b*x*y + c*y*z + d*x*z`
//!   is a quadratic form with integer coefficients, and
//! * `T^2 = a*X1^5 + b*X2^5 + c*X3^5 + d*X4^5`, sums of fifth powers weighted by
//!   integer (or rational) coefficients.
//!
//! Everything is exact: arbitrary-precision integers, a sparse multivariate
//! polynomial ring over Z, and symbolic identity checks.  The crate provides
//!
//! * [`arith`] - integer square roots, p-adic valuations, digit sums, and Pell
//!   equation solvers on top of `num-bigint`;
//! * [`mpoly`] - the polynomial engine: ring arithmetic, substitution,
//!   content/primitive part, resultants, gcd-based coprimality over Q,
//!   polynomial square roots, and a canonical string form;
//! * [`family`] - the shared `ParametricFamily` container plus the
//!   four-clause verifier (symbolic identity, content bound, coprimality,
//!   randomized spot checks);
//! * [`quadforms`] - case dispatch and polynomial solution families for the
//!   quadratic-form equation, including the Pell-driven and square-`n`
//!   integer branches;
//! * [`quintics`] - polynomial solution families for weighted fifth-power
//!   equations, plus a demonstrator for why non-primitive solutions are cheap;
//! * [`fnseq`] - the odd symmetric power sums `F_n` with their closed-form
//!   coefficients and p-adic content formula;
//! * [`reduction`] - the null-solution pencil reduction that turns a quintic
//!   form into `U^2 * H(U,V)` along a line through a known zero;
//! * [`search`] - deterministic, parallel, budgeted enumeration for primitive
//!   solutions, with checkpointing and a coefficient sweep driver.

pub mod arith;
pub mod error;
pub mod family;
pub mod fnseq;
pub mod mpoly;
pub mod quadforms;
pub mod quintics;
pub mod reduction;
pub mod search;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
