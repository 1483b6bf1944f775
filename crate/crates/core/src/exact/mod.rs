//! Exact arithmetic foundation: arbitrary-precision rationals, angles as
//! rational turns, exact `2cos(2π·t)` values with their ordering, open
//! interval sets over those values, and Smith normal form over the integers.

mod cos;
mod snf;
mod turn;

pub use cos::{CosInterval, CosIntervalSet, CosValue};
pub use snf::{cokernel_of_columns, snf, snf_with_transform, IntMatrix, SnfDecomposition};
pub use turn::Turn;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by the underlying representation).
pub type Rational = num_rational::BigRational;
pub type Int = num_bigint::BigInt;

/// Shorthand for a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(Int::from(numer), Int::from(denom))
}

/// Nearest float, for rendering and diagnostics.
pub fn rational_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}
