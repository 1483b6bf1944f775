use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{rat, Int, Rational};

/// An angle measured in full revolutions, kept as the canonical
/// representative in `[0, 1)`. An angle of `x` radians is the turn `x/(2π)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn(Rational);

impl Turn {
    pub fn new(value: Rational) -> Self {
        Turn(value.clone() - value.floor())
    }

    pub fn from_frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "turn denominator must be nonzero");
        Turn::new(rat(numer, denom))
    }

    pub fn zero() -> Self {
        Turn(Rational::zero())
    }

    pub fn half() -> Self {
        Turn(rat(1, 2))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_half(&self) -> bool {
        self.0 == rat(1, 2)
    }

    /// True for the four central angles, i.e. turn in {0, 1/2}.
    pub fn is_half_integral(&self) -> bool {
        self.is_zero() || self.is_half()
    }

    /// `k` times this turn, reduced mod 1.
    pub fn scale(&self, k: i64) -> Turn {
        Turn::new(&self.0 * rat(k, 1))
    }

    pub fn as_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // denominators here never get near f64 range in practice
            self.0.numer().to_f64().unwrap() / self.0.denom().to_f64().unwrap()
        })
    }

    /// 2cos(2π·t) as a float, for rendering and the numerical oracle.
    pub fn two_cos_f64(&self) -> f64 {
        2.0 * (std::f64::consts::TAU * self.as_f64()).cos()
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }
}

impl Add<&Turn> for &Turn {
    type Output = Turn;
    fn add(self, rhs: &Turn) -> Turn {
        Turn::new(&self.0 + &rhs.0)
    }
}

impl Sub<&Turn> for &Turn {
    type Output = Turn;
    fn sub(self, rhs: &Turn) -> Turn {
        Turn::new(&self.0 - &rhs.0)
    }
}

impl Neg for &Turn {
    type Output = Turn;
    fn neg(self) -> Turn {
        Turn::new(-self.0.clone())
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom() == &Int::from(1) {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Turn({})", self)
    }
}

impl Serialize for Turn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Turn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_turn(&s).ok_or_else(|| D::Error::custom(format!("invalid turn fraction: {s}")))
    }
}

fn parse_turn(s: &str) -> Option<Turn> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let numer: Int = n.parse().ok()?;
    let denom: Int = d.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Turn::new(Rational::new(numer, denom)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representative() {
        assert_eq!(Turn::from_frac(5, 4), Turn::from_frac(1, 4));
        assert_eq!(Turn::from_frac(-1, 4), Turn::from_frac(3, 4));
        assert_eq!(Turn::from_frac(7, 1), Turn::zero());
    }

    #[test]
    fn arithmetic_mod_one() {
        let t = Turn::from_frac(2, 3);
        assert_eq!(&t + &t, Turn::from_frac(1, 3));
        assert_eq!(t.scale(3), Turn::zero());
        assert_eq!(-&Turn::from_frac(1, 3), Turn::from_frac(2, 3));
        assert_eq!(
            &Turn::from_frac(1, 6) - &Turn::from_frac(1, 2),
            Turn::from_frac(2, 3)
        );
    }

    #[test]
    fn serde_round_trip() {
        let t = Turn::from_frac(3, 8);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "\"3/8\"");
        let back: Turn = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
