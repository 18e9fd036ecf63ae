//! One-dimensional discrete-time quantum walks on the integer line.
//!
//! The crate covers the full pipeline from a coin matrix to a measure:
//!
//! - [`coin`]: coin constructors (general 2-state families, N-state Grover)
//!   and the row-to-displacement shift rule.
//! - [`field`]: finitely supported amplitude fields, measures and the map
//!   `phi` taking one to the other, plus their JSON/CSV encodings.
//! - [`evolution`]: exact, never-truncating time evolution, time averages.
//! - [`stationary`]: closed-form eigenstates of the walk operator whose
//!   measure is uniform on Z, with residual verification.
//! - [`uniform`]: truncating a uniform eigenstate to `|x| <= 2M` so that the
//!   measure at time `M` is the uniform probability on `{-M, ..., M}`.
//! - [`limits`]: closed-form limit measures and densities, and comparison of
//!   finite-time simulations against them.

pub mod coin;
pub mod error;
pub mod evolution;
pub mod field;
pub mod limits;
pub mod quadrature;
pub mod stationary;
pub mod uniform;

pub use coin::{Coin, CoinSpec, SquareMatrix};
pub use error::{Result, WalkError};
pub use field::{MeasureWindow, WaveWindow};
pub use num_complex::Complex64;
