//! Open arcs of turns on the circle, used for the β = 0 fiber-preserving
//! gluings where the candidate set is one-dimensional instead of finite.

use num_traits::Zero;

use crate::exact::{rat, CosIntervalSet, Rational, Turn};

/// An open arc `(lo, hi)` with `0 ≤ lo < hi ≤ 1`.
pub(crate) type Arc = (Rational, Rational);

/// The θ-arcs on which `2cos(2π·θ)` lands inside the given trace set: each
/// trace interval contributes one arc in `(0, 1/2)` and its mirror.
pub(crate) fn trace_arcs(set: &CosIntervalSet) -> Vec<Arc> {
    let one = rat(1, 1);
    let mut arcs = Vec::new();
    for iv in set.intervals() {
        let tl = iv.lo().turn().value().clone(); // larger turn
        let th = iv.hi().turn().value().clone(); // smaller turn
        arcs.push((th.clone(), tl.clone()));
        arcs.push((&one - &tl, &one - &th));
    }
    arcs.retain(|(lo, hi)| lo < hi);
    arcs
}

/// Image of the arcs under `θ ↦ sign·θ + shift (mod 1)`, `sign = ±1`,
/// splitting arcs that wrap past 0.
pub(crate) fn map_affine(arcs: &[Arc], sign: i64, shift: &Turn) -> Vec<Arc> {
    assert!(sign == 1 || sign == -1);
    let one = rat(1, 1);
    let s = shift.value();
    let mut out = Vec::new();
    for (a, b) in arcs {
        let (raw_lo, raw_hi) = if sign == 1 {
            (a + s, b + s)
        } else {
            (s - b, s - a)
        };
        let lo = &raw_lo - raw_lo.floor();
        let hi = &lo + (&raw_hi - &raw_lo);
        if hi <= one {
            out.push((lo, hi));
        } else {
            out.push((lo, one.clone()));
            out.push((Rational::zero(), &hi - &one));
        }
    }
    out.retain(|(lo, hi)| lo < hi);
    out
}

/// A rational point interior to both arc unions, if they intersect.
pub(crate) fn sample_intersection(a: &[Arc], b: &[Arc]) -> Option<Turn> {
    for (alo, ahi) in a {
        for (blo, bhi) in b {
            let lo = alo.max(blo);
            let hi = ahi.min(bhi);
            if lo < hi {
                return Some(Turn::new((lo + hi) / rat(2, 1)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CosValue;
    use crate::intervals::j_pi;

    #[test]
    fn arcs_of_a_symmetric_set() {
        // (−√2, √2): θ ∈ (1/8, 3/8) ∪ (5/8, 7/8)
        let arcs = trace_arcs(&j_pi(2, 4));
        assert_eq!(arcs, vec![(rat(1, 8), rat(3, 8)), (rat(5, 8), rat(7, 8))]);
        for (lo, hi) in &arcs {
            let mid = Turn::new((lo + hi) / rat(2, 1));
            assert!(j_pi(2, 4).contains(&CosValue::of(&mid)));
        }
    }

    #[test]
    fn affine_map_splits_wrapping_arcs() {
        let arcs = vec![(rat(3, 4), rat(7, 8))];
        let moved = map_affine(&arcs, 1, &Turn::from_frac(1, 4));
        assert_eq!(moved, vec![(rat(0, 1), rat(1, 8))]);

        let flipped = map_affine(&arcs, -1, &Turn::zero());
        assert_eq!(flipped, vec![(rat(1, 8), rat(1, 4))]);

        let wrap = map_affine(&[(rat(1, 8), rat(3, 8))], 1, &Turn::from_frac(3, 4));
        assert_eq!(wrap, vec![(rat(7, 8), rat(1, 1)), (rat(0, 1), rat(1, 8))]);
    }

    #[test]
    fn intersection_sampling() {
        let a = vec![(rat(0, 1), rat(1, 2))];
        let b = vec![(rat(1, 2), rat(3, 4))];
        assert!(sample_intersection(&a, &b).is_none());
        let c = vec![(rat(1, 4), rat(3, 4))];
        let t = sample_intersection(&a, &c).unwrap();
        assert!(t.value() > &rat(1, 4) && t.value() < &rat(1, 2));
    }
}
