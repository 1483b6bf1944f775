//! The finite trace sets that control `H₁ ∩ H₂` for `|β| ≥ 3`, and the three
//! exhaustive finite-case sweeps backing the range arguments.
//!
//! For a candidate intersection point both meridian traces lie on the
//! `2cos(2π·k / 2β)` grid; each component pair of `H₁ ∩ H₂` therefore reduces
//! to the intersection of two finite subsets of that grid. The sweeps verify,
//! over the stated parameter ranges, that those intersections are never
//! empty, which is what the small-`β` cases of the emptiness classification
//! rely on.

use std::cell::RefCell;
use std::collections::HashMap;

use num_integer::Integer;

use crate::exact::{CosIntervalSet, CosValue};
use crate::gluing::GraphManifold;
use crate::intervals::{j_pi, j_zero};
use crate::{Error, Result};

/// The six finite trace sets: (s1, s2) control `H₁,₀ ∩ H₂,₀`, (s3, s4)
/// control `H₁,₀ ∩ H₂,π`, (s5, s6) control `H₁,π ∩ H₂,π`.
#[derive(Clone, Debug)]
pub struct SSets {
    pub s1: Vec<CosValue>,
    pub s2: Vec<CosValue>,
    pub s3: Vec<CosValue>,
    pub s4: Vec<CosValue>,
    pub s5: Vec<CosValue>,
    pub s6: Vec<CosValue>,
}

impl SSets {
    pub fn s1_meets_s2(&self) -> bool {
        meets(&self.s1, &self.s2)
    }
    pub fn s3_meets_s4(&self) -> bool {
        meets(&self.s3, &self.s4)
    }
    pub fn s5_meets_s6(&self) -> bool {
        meets(&self.s5, &self.s6)
    }
}

fn meets(a: &[CosValue], b: &[CosValue]) -> bool {
    a.iter().any(|x| b.binary_search(x).is_ok())
}

fn sorted_dedup(mut v: Vec<CosValue>) -> Vec<CosValue> {
    v.sort();
    v.dedup();
    v
}

/// The six sets for a gluing with `|β| ≥ 3`, computed on the odd-q
/// presentation of the manifold.
pub fn s_sets(m: &GraphManifold) -> Result<SSets> {
    let mo = m.with_odd_q();
    let beta = mo.phi.beta();
    if beta.abs() < 3 {
        return Err(Error::Unsupported(format!(
            "the finite trace sets require |β| ≥ 3, got {beta}"
        )));
    }
    let (alpha, gamma, delta) = (mo.phi.alpha(), mo.phi.gamma(), mo.phi.delta());
    let b = beta.abs();
    let j0_1 = j_zero(mo.m1.p1(), mo.m1.p2());
    let j0_2 = j_zero(mo.m2.p1(), mo.m2.p2());
    let jpi_1 = j_pi(mo.m1.p1(), mo.m1.p2());
    let jpi_2 = j_pi(mo.m2.p1(), mo.m2.p2());

    let grid = |num: i64, den: i64| CosValue::from_frac(num, den);

    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for k in 1..=b {
        if j0_1.contains(&grid(k, b)) {
            s1.push(grid(k, b));
        }
        if j0_2.contains(&grid(k, b)) {
            s2.push(grid(alpha * k, b));
        }
    }

    let mut s3 = Vec::new();
    let mut k = 1;
    while k < 2 * b {
        if j0_1.contains(&grid(k, 2 * b)) {
            s3.push(grid(k - gamma * b, 2 * b));
        }
        k += 2;
    }
    let mut s4 = Vec::new();
    for k in 1..=b {
        let x = 2 * k - delta;
        if jpi_2.contains(&grid(x, 2 * b)) {
            s4.push(grid(alpha * x, 2 * b));
        }
    }

    let mut s5 = Vec::new();
    let mut s6 = Vec::new();
    for k in 1..=b {
        let x = 2 * k + alpha + 1;
        if jpi_1.contains(&grid(x, 2 * b)) {
            s5.push(grid(x - gamma * b, 2 * b));
        }
        let y = 2 * k + delta + 1;
        if jpi_2.contains(&grid(y, 2 * b)) {
            s6.push(grid(alpha * y, 2 * b));
        }
    }

    Ok(SSets {
        s1: sorted_dedup(s1),
        s2: sorted_dedup(s2),
        s3: sorted_dedup(s3),
        s4: sorted_dedup(s4),
        s5: sorted_dedup(s5),
        s6: sorted_dedup(s6),
    })
}

/// A parameter tuple for which a sweep found an empty intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepCounterexample {
    pub algorithm: u8,
    pub beta: i64,
    pub alpha: i64,
    pub gamma: i64,
    pub delta: i64,
    pub p: [i64; 4],
}

// Bitmask over the cosine classes 0..=n/2 of the n-grid.
fn class_of(x: i64, n: i64) -> u32 {
    let r = x.rem_euclid(n);
    r.min(n - r) as u32
}

thread_local! {
    static MASK_CACHE: RefCell<HashMap<(i64, i64, i64, bool), u64>> = RefCell::new(HashMap::new());
}

fn grid_mask(n: i64, p1: i64, p2: i64, odd_fiber: bool) -> u64 {
    MASK_CACHE.with(|cache| {
        if let Some(&m) = cache.borrow().get(&(n, p1, p2, odd_fiber)) {
            return m;
        }
        let set: CosIntervalSet = if odd_fiber {
            j_pi(p1, p2)
        } else {
            j_zero(p1, p2)
        };
        let mut mask = 0u64;
        for c in 0..=(n / 2) {
            if set.contains(&CosValue::from_frac(c, n)) {
                mask |= 1 << c;
            }
        }
        cache.borrow_mut().insert((n, p1, p2, odd_fiber), mask);
        mask
    })
}

fn coprime_alphas(beta: i64) -> Vec<i64> {
    (1..=beta).filter(|a| a.gcd(&beta) == 1).collect()
}

/// The canonical (γ, δ) for (α, β) plus the parity-shifted variant; together
/// they cover every distinct configuration of the half-grid sets.
fn gamma_delta_variants(alpha: i64, beta: i64) -> [(i64, i64); 2] {
    let mut delta0 = 0;
    for d in 0..beta {
        if (alpha * d + 1).rem_euclid(beta) == 0 {
            delta0 = d;
            break;
        }
    }
    let gamma0 = (alpha * delta0 + 1) / beta;
    [(gamma0, delta0), (gamma0 + alpha, delta0 + beta)]
}

fn fiber_pairs(lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p1 in lo..=hi {
        for p2 in p1..=hi {
            out.push((p1, p2));
        }
    }
    out
}

/// Sweep for `H₁,₀ ∩ H₂,₀`: β ≤ 19, both pieces with small fibers ≥ 3 and
/// all fibers ≤ 2β, excluding the (3,3,3) triple on either side. Expected to
/// report no counterexamples.
pub fn sweep_alg1() -> Vec<SweepCounterexample> {
    let mut bad = Vec::new();
    for beta in 3..=19 {
        let pairs = fiber_pairs(3, 2 * beta);
        let masks: Vec<u64> = pairs
            .iter()
            .map(|&(p1, p2)| grid_mask(beta, p1, p2, false))
            .collect();
        for alpha in coprime_alphas(beta) {
            // value classes of 𝒮₂ are the α-images of the condition classes
            let mut perm = vec![0u32; (beta / 2 + 1) as usize];
            for (c, slot) in perm.iter_mut().enumerate() {
                *slot = class_of(alpha * c as i64, beta);
            }
            let permuted: Vec<u64> = masks
                .iter()
                .map(|&m| {
                    let mut out = 0u64;
                    for (c, &pc) in perm.iter().enumerate() {
                        if m & (1 << c) != 0 {
                            out |= 1 << pc;
                        }
                    }
                    out
                })
                .collect();
            for (i, &(p1, p2)) in pairs.iter().enumerate() {
                if (p1, p2, beta) == (3, 3, 3) {
                    continue;
                }
                for (j, &(p3, p4)) in pairs.iter().enumerate() {
                    if (p3, p4, beta) == (3, 3, 3) {
                        continue;
                    }
                    if masks[i] & permuted[j] == 0 {
                        bad.push(SweepCounterexample {
                            algorithm: 1,
                            beta,
                            alpha,
                            gamma: 0,
                            delta: 0,
                            p: [p1, p2, p3, p4],
                        });
                    }
                }
            }
        }
    }
    bad
}

/// Sweep for `H₁,₀ ∩ H₂,π` with a small fiber of order 2 on side 2:
/// β ≤ 19, p₁ ≤ p₂ ≤ 2β with p₁ ≥ 3, p₄ ≤ β, excluding (3,3,3) on side 1
/// and (2,4,4) on side 2. Expected to report no counterexamples.
pub fn sweep_alg2() -> Vec<SweepCounterexample> {
    let mut bad = Vec::new();
    for beta in 3..=19 {
        let n = 2 * beta;
        let pairs1 = fiber_pairs(3, 2 * beta);
        for alpha in coprime_alphas(beta) {
            for (gamma, delta) in gamma_delta_variants(alpha, beta) {
                for &(p1, p2) in &pairs1 {
                    if (p1, p2, beta) == (3, 3, 3) {
                        continue;
                    }
                    let cond1 = grid_mask(n, p1, p2, false);
                    let mut s3 = 0u64;
                    let mut k = 1;
                    while k < n {
                        if cond1 & (1 << class_of(k, n)) != 0 {
                            s3 |= 1 << class_of(k - gamma * beta, n);
                        }
                        k += 2;
                    }
                    for p4 in 2..=beta {
                        if (p4, beta) == (4, 4) {
                            continue; // (2, 4, 4) on side 2
                        }
                        let cond2 = grid_mask(n, 2, p4, true);
                        let mut s4 = 0u64;
                        for k in 1..=beta {
                            let x = 2 * k - delta;
                            if cond2 & (1 << class_of(x, n)) != 0 {
                                s4 |= 1 << class_of(alpha * x, n);
                            }
                        }
                        if s3 & s4 == 0 {
                            bad.push(SweepCounterexample {
                                algorithm: 2,
                                beta,
                                alpha,
                                gamma,
                                delta,
                                p: [p1, p2, 2, p4],
                            });
                        }
                    }
                }
            }
        }
    }
    bad
}

/// Sweep for `H₁,π ∩ H₂,π` with small fibers of order 2 on both sides:
/// β ≤ 30, p₂, p₄ ≤ β, excluding (2,4,4) on either side. Expected to report
/// no counterexamples.
pub fn sweep_alg3() -> Vec<SweepCounterexample> {
    let mut bad = Vec::new();
    for beta in 3..=30 {
        let n = 2 * beta;
        for alpha in coprime_alphas(beta) {
            for (gamma, delta) in gamma_delta_variants(alpha, beta) {
                for p2 in 2..=beta {
                    if (p2, beta) == (4, 4) {
                        continue;
                    }
                    let cond1 = grid_mask(n, 2, p2, true);
                    let mut s5 = 0u64;
                    for k in 1..=beta {
                        let x = 2 * k + alpha + 1;
                        if cond1 & (1 << class_of(x, n)) != 0 {
                            s5 |= 1 << class_of(x - gamma * beta, n);
                        }
                    }
                    for p4 in 2..=beta {
                        if (p4, beta) == (4, 4) {
                            continue;
                        }
                        let cond2 = grid_mask(n, 2, p4, true);
                        let mut s6 = 0u64;
                        for k in 1..=beta {
                            let y = 2 * k + delta + 1;
                            if cond2 & (1 << class_of(y, n)) != 0 {
                                s6 |= 1 << class_of(alpha * y, n);
                            }
                        }
                        if s5 & s6 == 0 {
                            bad.push(SweepCounterexample {
                                algorithm: 3,
                                beta,
                                alpha,
                                gamma,
                                delta,
                                p: [2, p2, 2, p4],
                            });
                        }
                    }
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::GluingMatrix;
    use crate::intervals::FiberSign;
    use crate::repsets::h1h2_component_witness;
    use crate::seifert::SeifertPiece;

    fn piece(p1: i64, q1: i64, p2: i64, q2: i64) -> SeifertPiece {
        SeifertPiece::new(p1, q1, p2, q2).unwrap()
    }

    fn gm(a: i64, b: i64, c: i64, d: i64) -> GluingMatrix {
        GluingMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn excluded_triple_gives_empty_s1() {
        // p1 = p2 = β = 3: the trace grid misses the (−1, 2) window entirely
        let m = GraphManifold::new(piece(3, 1, 3, 1), piece(5, 1, 5, 1), gm(1, 3, 1, 2));
        let s = s_sets(&m).unwrap();
        assert!(s.s1.is_empty());
    }

    #[test]
    fn beta_four_s1_is_zero_trace() {
        // only the k with 2cos(2πk/4) = 0 survives inside (−1, 2)
        let m = GraphManifold::new(piece(3, 1, 3, 1), piece(5, 1, 5, 1), gm(1, 4, 1, 3));
        let s = s_sets(&m).unwrap();
        assert_eq!(s.s1, vec![CosValue::from_frac(1, 4)]);
    }

    #[test]
    fn rejects_small_beta() {
        let m = GraphManifold::new(piece(3, 1, 3, 1), piece(3, 1, 3, 1), gm(0, 1, 1, 0));
        assert!(s_sets(&m).is_err());
    }

    #[test]
    fn claims_match_enumeration_on_small_grid() {
        // the claim-level equivalences: each 𝒮-pair intersects iff the
        // corresponding component of H₁ ∩ H₂ is nonempty
        let pieces = [
            piece(2, 1, 3, 1),
            piece(3, 1, 3, 2),
            piece(3, 1, 4, 1),
            piece(2, 1, 5, 3),
            piece(4, 1, 5, 2),
        ];
        let mats = [
            gm(1, 3, 1, 2),
            gm(2, 3, 3, 4),
            gm(1, 4, 1, 3),
            gm(-1, 3, -1, 4),
            gm(1, 5, 1, 4),
        ];
        for m1 in &pieces {
            for m2 in &pieces {
                for phi in &mats {
                    let m = GraphManifold::new(*m1, *m2, *phi);
                    let s = s_sets(&m).unwrap();
                    assert_eq!(
                        s.s1_meets_s2(),
                        h1h2_component_witness(&m, FiberSign::Plus, FiberSign::Plus).is_some(),
                        "s1/s2 vs (0,0) on {m:?}"
                    );
                    assert_eq!(
                        s.s3_meets_s4(),
                        h1h2_component_witness(&m, FiberSign::Plus, FiberSign::Minus).is_some(),
                        "s3/s4 vs (0,π) on {m:?}"
                    );
                    assert_eq!(
                        s.s5_meets_s6(),
                        h1h2_component_witness(&m, FiberSign::Minus, FiberSign::Minus).is_some(),
                        "s5/s6 vs (π,π) on {m:?}"
                    );
                }
            }
        }
    }
}
