use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::{rat, Turn};

/// An exact representative of the real number `2cos(2π·t)`.
///
/// The stored turn is normalized to `[0, 1/2]` (cosine is even and 1-periodic
/// in turns, so `min(t, 1-t)` is a faithful representative). Two values are
/// equal iff their normalized turns are; the order *reverses* the turn order
/// because cosine is strictly decreasing on `[0, π]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CosValue {
    turn: Turn,
}

impl CosValue {
    pub fn of(t: &Turn) -> CosValue {
        let half = Turn::half();
        if t.value() <= half.value() {
            CosValue { turn: t.clone() }
        } else {
            CosValue { turn: -t }
        }
    }

    pub fn from_frac(numer: i64, denom: i64) -> CosValue {
        CosValue::of(&Turn::from_frac(numer, denom))
    }

    /// The normalized turn in `[0, 1/2]`.
    pub fn turn(&self) -> &Turn {
        &self.turn
    }

    pub fn approx(&self) -> f64 {
        self.turn.two_cos_f64()
    }

    /// 2cos = 2, i.e. turn 0.
    pub fn is_two(&self) -> bool {
        self.turn.is_zero()
    }

    /// 2cos = −2, i.e. turn 1/2.
    pub fn is_minus_two(&self) -> bool {
        self.turn.is_half()
    }
}

impl Ord for CosValue {
    fn cmp(&self, other: &Self) -> Ordering {
        // larger turn = smaller cosine
        other.turn.cmp(&self.turn)
    }
}

impl PartialOrd for CosValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CosValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.turn.is_zero() {
            write!(f, "2")
        } else if self.turn.is_half() {
            write!(f, "-2")
        } else if self.turn.value() == &rat(1, 4) {
            write!(f, "0")
        } else if self.turn.value() == &rat(1, 3) {
            write!(f, "-1")
        } else if self.turn.value() == &rat(1, 6) {
            write!(f, "1")
        } else {
            write!(f, "2cos(2π·{})", self.turn)
        }
    }
}

impl fmt::Debug for CosValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosValue({} ≈ {:.6})", self.turn, self.approx())
    }
}

/// An open interval `(lo, hi)` of cosine values with `lo < hi`. Empty
/// intervals are represented by absence (`Option`), never by `lo >= hi`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CosInterval {
    lo: CosValue,
    hi: CosValue,
}

impl CosInterval {
    /// Open interval between the two values, in either order; `None` if they
    /// coincide (an empty open interval).
    pub fn new(a: CosValue, b: CosValue) -> Option<CosInterval> {
        match a.cmp(&b) {
            Ordering::Less => Some(CosInterval { lo: a, hi: b }),
            Ordering::Greater => Some(CosInterval { lo: b, hi: a }),
            Ordering::Equal => None,
        }
    }

    pub fn lo(&self) -> &CosValue {
        &self.lo
    }

    pub fn hi(&self) -> &CosValue {
        &self.hi
    }

    /// Strict interior membership (endpoints excluded).
    pub fn contains(&self, v: &CosValue) -> bool {
        &self.lo < v && v < &self.hi
    }
}

impl fmt::Display for CosInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A finite union of pairwise-disjoint open `CosInterval`s, sorted by lower
/// endpoint. Two intervals sharing a single endpoint do not merge across it
/// (the shared point stays excluded) unless some other interval covers it.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CosIntervalSet {
    intervals: Vec<CosInterval>,
}

impl CosIntervalSet {
    pub fn empty() -> Self {
        CosIntervalSet::default()
    }

    /// Exact set-theoretic union of the given open intervals.
    pub fn from_intervals<I: IntoIterator<Item = CosInterval>>(intervals: I) -> Self {
        let mut items: Vec<CosInterval> = intervals.into_iter().collect();
        items.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<CosInterval> = Vec::new();
        for iv in items {
            match merged.last_mut() {
                // strict inequality: touching open intervals do not merge
                Some(last) if iv.lo < last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        CosIntervalSet { intervals: merged }
    }

    pub fn union(&self, other: &CosIntervalSet) -> CosIntervalSet {
        CosIntervalSet::from_intervals(self.intervals.iter().chain(other.intervals.iter()).cloned())
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[CosInterval] {
        &self.intervals
    }

    /// The unique component, if the set is a single interval.
    pub fn single(&self) -> Option<&CosInterval> {
        match self.intervals.as_slice() {
            [one] => Some(one),
            _ => None,
        }
    }

    pub fn contains(&self, v: &CosValue) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.lo < *v);
        // candidate: the last interval whose lo < v
        idx > 0 && self.intervals[idx - 1].contains(v)
    }
}

impl fmt::Display for CosIntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(n: i64, d: i64) -> CosValue {
        CosValue::from_frac(n, d)
    }

    #[test]
    fn cos_value_normalizes_and_is_even() {
        assert_eq!(cv(0, 1).approx(), 2.0);
        assert!(cv(1, 2).is_minus_two());
        // cos_value(t) = cos_value(1 - t)
        assert_eq!(cv(2, 3), cv(1, 3));
        assert!((cv(2, 3).approx() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ordering_reverses_turns() {
        // -1 < 0
        assert!(cv(1, 3) < cv(1, 4));
        assert_eq!(cv(1, 6).cmp(&cv(1, 6)), Ordering::Equal);
        // -2 < 2
        assert!(cv(1, 2) < cv(0, 1));
    }

    #[test]
    fn union_keeps_excluded_shared_endpoints() {
        // (−2, 0) ∪ (0, 2): the shared point 0 is excluded, two components
        let a = CosInterval::new(cv(1, 2), cv(1, 4)).unwrap();
        let b = CosInterval::new(cv(1, 4), cv(0, 1)).unwrap();
        let set = CosIntervalSet::from_intervals([a, b]);
        assert_eq!(set.intervals().len(), 2);
        assert!(!set.contains(&cv(1, 4)));

        // (−1, 1) ∪ (0, 2) overlap to a single component (−1, 2)
        let c = CosInterval::new(cv(1, 3), cv(1, 6)).unwrap();
        let d = CosInterval::new(cv(1, 4), cv(0, 1)).unwrap();
        let set = CosIntervalSet::from_intervals([c, d]);
        assert_eq!(set.intervals().len(), 1);
        assert!(set.contains(&cv(1, 4)));

        assert!(CosIntervalSet::from_intervals([]).is_empty());
    }

    #[test]
    fn endpoint_covered_by_third_interval_merges() {
        let a = CosInterval::new(cv(1, 2), cv(1, 4)).unwrap(); // (-2, 0)
        let b = CosInterval::new(cv(1, 4), cv(0, 1)).unwrap(); // (0, 2)
        let c = CosInterval::new(cv(1, 3), cv(1, 6)).unwrap(); // (-1, 1) covers 0
        let set = CosIntervalSet::from_intervals([a, b, c]);
        assert_eq!(set.intervals().len(), 1);
        assert!(set.contains(&cv(1, 4)));
    }
}
