//! Parking functions on rooted trees: the parking procedure, prime parking
//! functions and the bijection that counts them, exact generating
//! functions, and exhaustive verification suites.

pub mod bijection;
pub mod parking;
pub mod series;
pub mod tree;
pub mod verify;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational power series.
pub type ExactSeries = series::Series<BigRational>;
/// Double-precision power series, for quick numerical exploration.
pub type FloatSeries = series::Series<f64>;
