//! Exact arithmetic: rationals, the parameter field ℚ(beta, lambda, u) and
//! univariate polynomials over it.

pub mod gcd;
pub mod identity;
pub mod mpoly;
pub mod param;
pub mod parse;
pub mod rational;
pub mod unipoly;

pub use identity::{identity_check, scalar_identity_check, DegreeBounds, IdentityMode};
pub use mpoly::{MPoly, Monomial, Var};
pub use param::{half_beta, p, param_simplify, ParamScalar};
pub use rational::{frac, int, rational_normalize, rational_to_string};
pub use unipoly::UniPoly;
