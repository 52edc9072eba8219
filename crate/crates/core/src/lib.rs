//! Exact Euler φ and Carmichael λ over large ranges.
//!
//! Values are kept factored, so compositions such as `λ(φ(n))` and
//! `λ(λ(n))` come out as exact prime-exponent vectors and logarithms of
//! their ratios are exact integer combinations of `log q`
//! ([`ExactLog`]). On top of that sit the quantities used to bound
//! `log(λφ(n)/λλ(n))`, a few prime-sum constants, and batch experiments
//! comparing such statistics with their conjectured normal orders.
//!
//! ```
//! use lambdaphi::{log_ratio, SpfTable};
//!
//! let table = SpfTable::build(1000).unwrap();
//! assert_eq!(log_ratio(341, &table).unwrap().to_string(), "log 5");
//! ```
//!
//! See `examples/` for one runnable program per capability.

pub mod arith;
pub mod cli;
pub mod constants;
pub mod decomposition;
pub mod error;
pub mod factorint;
pub mod harness;
pub mod output;
pub mod parallel;

pub use arith::{compose, iterate, log_ratio, ExactLog, FunctionTag, IterateSpec, NumberProfile};
pub use decomposition::{split_sums, ProofParams, PsiChoice};
pub use error::{Error, Result};
pub use factorint::{Factorization, SpfTable};
pub use harness::NormalOrderReport;
