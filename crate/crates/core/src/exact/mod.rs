//! Exact scalar substrate: rationals, dense polynomials over Q, truncated
//! power series over Q.

mod poly;
mod rational;
mod series;

pub use poly::DensePoly;
pub use rational::Rational;
pub use series::TruncatedSeries;
