//! Trace-interval machinery: the open interval of traces `Tr(AB)` realizable
//! by a non-commuting SU(2) pair with prescribed traces, the achievable-trace
//! sets for the fibration meridian when the fiber maps to ±1, and the integer
//! combination set used to compute their endpoints in closed form.

use num_integer::Integer;

use crate::exact::{CosInterval, CosIntervalSet, CosValue, Turn};
use crate::{Error, Result};

/// The open interval of `Tr(AB)` over non-commuting `A, B ∈ SU(2)` with
/// `Tr A = 2cos(2π·t₁)`, `Tr B = 2cos(2π·t₂)`: endpoints are exactly
/// `2cos(2π(t₁+t₂))` and `2cos(2π(t₁−t₂))`. Empty iff either trace is ±2.
pub fn trace_interval(a: &CosValue, b: &CosValue) -> Option<CosInterval> {
    let sum = CosValue::of(&(a.turn() + b.turn()));
    let diff = CosValue::of(&(a.turn() - b.turn()));
    CosInterval::new(sum, diff)
}

fn cos_class(k: i64, n: i64) -> CosValue {
    CosValue::of(&Turn::from_frac(k, n))
}

/// Traces of the fibration meridian over irreducible representations sending
/// the fiber to +1 (q's odd): empty iff `p1 = 2`, otherwise the single
/// interval with extremal endpoints scanned from the combination set.
pub fn j_zero(p1: i64, p2: i64) -> CosIntervalSet {
    let (p1, p2) = sorted(p1, p2);
    assert!(p1 >= 2, "fiber orders must be at least 2");
    if p1 == 2 {
        return CosIntervalSet::empty();
    }
    let period = p1 * p2;
    let mut lo: Option<CosValue> = None;
    let mut hi: Option<CosValue> = None;
    for x in 0..=period {
        if !s_set_contains(x, p1, p2) {
            continue;
        }
        let v = cos_class(x, period);
        if lo.as_ref().is_none_or(|l| v < *l) {
            lo = Some(v.clone());
        }
        if hi.as_ref().is_none_or(|h| v > *h) {
            hi = Some(v);
        }
    }
    let (lo, hi) = (lo.expect("combination set nonempty"), hi.unwrap());
    CosIntervalSet::from_intervals(CosInterval::new(lo, hi))
}

/// Brute-force union over all residue pairs; the independent oracle for
/// `j_zero`.
pub fn j_zero_brute(p1: i64, p2: i64) -> CosIntervalSet {
    let mut parts = Vec::new();
    for k1 in 1..=p1 {
        for k2 in 1..=p2 {
            if let Some(iv) = trace_interval(&cos_class(k1, p1), &cos_class(k2, p2)) {
                parts.push(iv);
            }
        }
    }
    CosIntervalSet::from_intervals(parts)
}

/// Traces of the fibration meridian over irreducible representations sending
/// the fiber to −1 (q's odd): the exact union over odd residues; never empty.
pub fn j_pi(p1: i64, p2: i64) -> CosIntervalSet {
    let (p1, p2) = sorted(p1, p2);
    assert!(p1 >= 2, "fiber orders must be at least 2");
    let mut parts = Vec::new();
    let mut k1 = 1;
    while k1 <= 2 * p1 {
        let mut k2 = 1;
        while k2 <= 2 * p2 {
            if let Some(iv) = trace_interval(&cos_class(k1, 2 * p1), &cos_class(k2, 2 * p2)) {
                parts.push(iv);
            }
            k2 += 2;
        }
        k1 += 2;
    }
    CosIntervalSet::from_intervals(parts)
}

/// The achievable-trace set for the requested fiber sign. Memoized per
/// thread; membership tests hit this in tight enumeration loops.
pub fn j_set(p1: i64, p2: i64, fiber_sign: FiberSign) -> std::rc::Rc<CosIntervalSet> {
    use std::cell::RefCell;
    use std::collections::HashMap;
    use std::rc::Rc;
    thread_local! {
        static CACHE: RefCell<HashMap<(i64, i64, bool), Rc<CosIntervalSet>>> =
            RefCell::new(HashMap::new());
    }
    let (p1, p2) = sorted(p1, p2);
    let key = (p1, p2, matches!(fiber_sign, FiberSign::Minus));
    CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&key) {
            return hit.clone();
        }
        let set = Rc::new(match fiber_sign {
            FiberSign::Plus => j_zero(p1, p2),
            FiberSign::Minus => j_pi(p1, p2),
        });
        cache.borrow_mut().insert(key, set.clone());
        set
    })
}

/// Whether the fiber of a piece maps to +1 (ψ = 0) or −1 (ψ = 1/2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiberSign {
    Plus,
    Minus,
}

/// The smallest `1 ≤ k ≤ n` maximizing `|sin(2πk/n)|`, in closed form.
pub fn s_function(n: i64) -> i64 {
    assert!(n >= 2);
    let x = match n.rem_euclid(4) {
        0 => 0,
        1 => -1,
        2 => -2,
        _ => 1,
    };
    (n + x) / 4
}

/// Membership in `{k1·p2 + k2·p1 : k_i ∉ (p_i/2)Z}`, where `k ∈ (p/2)Z`
/// means `2k ≡ 0 (mod p)` (precisely the residues with vanishing sine).
///
/// Solutions of `k1·p2 + k2·p1 = x` form a single orbit of period
/// `g = gcd(p1, p2)` in `(k1 mod p1, k2 mod p2)`, so membership is an exact
/// scan of that orbit. A simpler per-gcd case split (`gZ` for `g ≥ 3`)
/// over-counts for some even-g shapes: the set for (4,4) is 8Z, not 4Z,
/// because both residues are forced odd there.
pub fn s_set_contains(x: i64, p1: i64, p2: i64) -> bool {
    let (p1, p2) = sorted(p1, p2);
    assert!(p1 >= 3, "combination set defined for fiber orders ≥ 3");
    let g = p1.gcd(&p2);
    if x.rem_euclid(g) != 0 {
        return false;
    }
    let (a, b) = (p1 / g, p2 / g);
    // base solution: k1·b ≡ x/g (mod a)
    let inv = {
        let e = b.extended_gcd(&a);
        e.x.rem_euclid(a.max(1))
    };
    let k1_base = ((x / g).rem_euclid(a.max(1)) * inv).rem_euclid(a.max(1));
    let k2_base = (x - k1_base * p2) / p1;
    let vanishing_sine = |k: i64, p: i64| (2 * k).rem_euclid(p) == 0;
    (0..g).any(|t| {
        let k1 = k1_base + t * a;
        let k2 = k2_base - t * b;
        !vanishing_sine(k1, p1) && !vanishing_sine(k2, p2)
    })
}

/// Brute-force membership over `|k_i| ≤ bound`; the oracle for
/// `s_set_contains`.
pub fn s_set_contains_brute(x: i64, p1: i64, p2: i64, bound: i64) -> bool {
    let bad = |k: i64, p: i64| (2 * k).rem_euclid(p) == 0;
    for k1 in -bound..=bound {
        if bad(k1, p1) {
            continue;
        }
        let rest = x - k1 * p2;
        if rest % p1 != 0 {
            continue;
        }
        let k2 = rest / p1;
        if k2.abs() <= bound && !bad(k2, p2) {
            return true;
        }
    }
    false
}

/// The angle (in turns, so a value in `(0, 1/2]`) subtending a single
/// interval of trace values on the unit circle.
pub fn supporting_angle(s: &CosIntervalSet) -> Result<Turn> {
    let iv = s.single().ok_or_else(|| {
        Error::Unsupported(format!(
            "supporting angle needs a single nonempty interval, got {s}"
        ))
    })?;
    Ok(iv.lo().turn() - iv.hi().turn())
}

fn sorted(p1: i64, p2: i64) -> (i64, i64) {
    if p1 <= p2 {
        (p1, p2)
    } else {
        (p2, p1)
    }
}
