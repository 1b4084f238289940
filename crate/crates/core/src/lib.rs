//! Exact analysis of the quadratic form `f_S(x) = Σ_{s_i ≤ s_j} x_i x_j` of a
//! finite poset `S`.
//!
//! All arithmetic is over arbitrary-precision rationals. The crate covers
//! poset enumeration up to isomorphism, the cones `C(f)` and `St(f)`, Dynkin
//! vectors, the minimum of `f_S` on the standard simplex and the derived
//! invariant `P(S)`, recognition of chains and r-wattles, representation type,
//! and the enumeration campaigns that check the structural results.
//!
//! ```
//! use posetform::poset::kleiner_k;
//! use posetform::rational::frac;
//! use posetform::simplex_min::p_value;
//!
//! assert_eq!(p_value(&kleiner_k(), 16).unwrap(), frac(12, 5));
//! ```

pub mod campaign;
pub mod classify;
pub mod cones;
mod error;
pub mod linalg;
pub mod lp;
pub mod one_based;
pub mod poset;
pub mod quadform;
pub mod rational;
pub mod report;
pub mod simplex_min;

pub use error::{Error, EXIT_ALARM, EXIT_CAP, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_PARSE};
pub use linalg::{LinAlgError, RationalMatrix};
pub use poset::{Poset, PosetError};
pub use rational::{Rational, RationalVector};
