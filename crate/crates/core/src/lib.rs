//! Exact Euler characteristics of moduli spaces of pointed curves.
//!
//! The crate computes, in exact rational arithmetic:
//!
//! * the orbifold Euler characteristic of `M_g^n` and of its stable
//!   compactification, through a stable-graph sum and through formal
//!   Gaussian (Wick) expansions;
//! * the ordinary Euler characteristic of `M_g^{n+1}` by summing over
//!   cyclic quotients, and of the compactification by summing over stable
//!   graphs decorated with cyclic covers, through a direct graph sum and
//!   through a generating function with a matrix-integral style contraction.
//!
//! Both closed-curve routes are computed independently so that every value
//! can be cross-checked.

// Index loops mirror the matrix formulas; memo tables are spelled out.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod arith;
pub mod closed;
pub mod config;
pub mod error;
pub mod graph;
pub mod open;
pub mod orbifold;
pub mod report;
pub mod series;

pub use arith::Rational;
pub use config::Windows;
pub use error::{Error, Result};

/// Version string stamped into reports and cache files.
pub const ENGINE_VERSION: &str = concat!("mgn-euler/", env!("CARGO_PKG_VERSION"), "+e1");
