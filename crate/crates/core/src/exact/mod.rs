//! Exact rationals, truncated power series, and bivariate integer polynomials.

pub mod bivariate;
pub mod poly;
pub mod rational;
pub mod series;

pub use bivariate::{delta_apply, BivariatePoly, UrnError, UrnRule};
pub use poly::{Poly, RationalFunction};
pub use rational::{
    format_rational, parse_decimal, parse_rational, ExactInteger, ExactRational, ParseRationalError,
};
pub use series::{PowerSeries, SeriesError};
