//! Property tests for the exact foundation and the membership layer.

use proptest::prelude::*;

use su2abel::exact::{rat, CosInterval, CosIntervalSet, CosValue, Turn};
use su2abel::gluing::{delta, GluingMatrix, GraphManifold};
use su2abel::intervals::{j_pi, j_zero, supporting_angle};
use su2abel::repsets::{a_membership, h1a2_empty, h_membership, p_membership, TorusPoint};
use su2abel::seifert::SeifertPiece;

fn turn_strategy() -> impl Strategy<Value = Turn> {
    (0i64..10_000, 1i64..10_000).prop_map(|(n, d)| Turn::from_frac(n, d))
}

fn interval_strategy() -> impl Strategy<Value = Option<CosInterval>> {
    (turn_strategy(), turn_strategy())
        .prop_map(|(a, b)| CosInterval::new(CosValue::of(&a), CosValue::of(&b)))
}

fn set_strategy() -> impl Strategy<Value = CosIntervalSet> {
    proptest::collection::vec(interval_strategy(), 0..8)
        .prop_map(|ivs| CosIntervalSet::from_intervals(ivs.into_iter().flatten()))
}

proptest! {
    #[test]
    fn cos_value_is_reflection_invariant(t in turn_strategy()) {
        let reflected = -&t;
        prop_assert_eq!(CosValue::of(&t), CosValue::of(&reflected));
    }

    #[test]
    fn union_is_idempotent_and_commutative(a in set_strategy(), b in set_strategy()) {
        prop_assert_eq!(a.union(&a), a.clone());
        prop_assert_eq!(a.union(&b), b.union(&a));
    }

    #[test]
    fn union_is_associative(a in set_strategy(), b in set_strategy(), c in set_strategy()) {
        prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
    }

    #[test]
    fn union_membership_is_disjunction(
        a in set_strategy(),
        b in set_strategy(),
        probe in turn_strategy(),
    ) {
        let v = CosValue::of(&probe);
        prop_assert_eq!(a.union(&b).contains(&v), a.contains(&v) || b.contains(&v));
    }

    #[test]
    fn intervals_exclude_their_endpoints(set in set_strategy()) {
        for iv in set.intervals() {
            prop_assert!(!iv.contains(iv.lo()));
            prop_assert!(!iv.contains(iv.hi()));
        }
    }
}

#[test]
fn cos_compare_agrees_with_floats() {
    use rand::rngs::StdRng;
    use rand::{RngExt, SeedableRng};
    let mut rng = StdRng::seed_from_u64(2024);
    let mut compared = 0;
    while compared < 10_000 {
        let a = Turn::from_frac(rng.random_range(0..10_000), rng.random_range(1..=10_000));
        let b = Turn::from_frac(rng.random_range(0..10_000), rng.random_range(1..=10_000));
        let (ca, cb) = (CosValue::of(&a), CosValue::of(&b));
        let (fa, fb) = (ca.approx(), cb.approx());
        if (fa - fb).abs() < 1e-12 {
            continue; // skip float ties; exactness is the point
        }
        assert_eq!(ca < cb, fa < fb, "{a} vs {b}");
        compared += 1;
    }
}

#[test]
fn membership_excludes_central_meridian_traces() {
    // no irreducible extension when the meridian maps to ±1
    for piece in su2abel::decide::grid_pieces(7) {
        for psi in [Turn::zero(), Turn::half()] {
            for theta in [Turn::zero(), Turn::half()] {
                let pt = TorusPoint::new(theta.clone(), psi.clone());
                assert!(!h_membership(&piece, &pt), "{piece:?} at ({theta}, {psi})");
            }
        }
    }
}

#[test]
fn non_central_extension_implies_abelian_extension() {
    for piece in su2abel::decide::grid_pieces(7) {
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let pt = TorusPoint::new(Turn::from_frac(a, 2), Turn::from_frac(b, 2));
            if p_membership(&piece, &pt).unwrap() {
                assert!(a_membership(&piece, &pt), "{piece:?}");
            }
        }
    }
}

#[test]
fn fiber_plus_angle_lower_bound() {
    // the supporting angle of the fiber-plus trace set is at least
    // 1/2 − 2g/(p1·p2) turns
    for p1 in 3..=40i64 {
        for p2 in p1..=40 {
            let set = j_zero(p1, p2);
            let angle = supporting_angle(&set).unwrap();
            let g = gcd(p1, p2);
            let bound = rat(1, 2) - rat(2 * g, p1 * p2);
            assert!(
                angle.value() >= &bound,
                "angle {angle} below bound at ({p1}, {p2})"
            );
        }
    }
}

#[test]
fn line_spacing_forces_intersections() {
    // once the A-line meets a fiber level in 5 or more points, it must hit
    // the H arcs
    for m in su2abel::decide::grid_manifolds(5, 2) {
        let o2 = m.m2.longitude().o;
        let d = m.key_deltas().lambda2_h1;
        if o2 * d >= 5 {
            let e = h1a2_empty(&m).unwrap();
            assert!(!e.empty, "{m:?}");
        }
    }
}

#[test]
fn longitude_pairing_parity_for_unit_beta() {
    // Δ(λ₁,λ₂) ≡ Δ(λ₁,h₂)·Δ(λ₂,h₁) + p₁p₂p₃p₄/(o₁g₁o₂g₂)  (mod 2)
    for m in su2abel::decide::grid_manifolds(5, 2) {
        if m.phi.beta().abs() != 1 {
            continue;
        }
        let kd = m.key_deltas();
        let l1 = m.m1.longitude();
        let l2 = m.m2.longitude();
        let fibers = l1.mu_coef * l2.mu_coef;
        assert_eq!(
            kd.lambda1_lambda2 % 2,
            (kd.lambda1_h2 * kd.lambda2_h1 + fibers) % 2,
            "{m:?}"
        );
    }
}

#[test]
fn deltas_are_determinants() {
    use su2abel::seifert::BoundarySlope;
    let s1 = BoundarySlope { mu: 3, h: -2 };
    let s2 = BoundarySlope { mu: 5, h: 7 };
    assert_eq!(delta(&s1, &s2), (3i64 * 7 - 5 * (-2)).abs());
}

#[test]
fn vanishing_longitude_fiber_pairing_forces_equal_fibers() {
    // with Δ(h₁,h₂) = 1, a longitude parallel to the far fiber pins the
    // near piece's fiber orders to be equal
    for m in su2abel::decide::grid_manifolds(6, 2) {
        let kd = m.key_deltas();
        if kd.h1_h2 != 1 {
            continue;
        }
        if kd.lambda1_h2 == 0 {
            assert_eq!(m.m1.p1(), m.m1.p2(), "{m:?}");
        }
        if kd.lambda2_h1 == 0 {
            assert_eq!(m.m2.p1(), m.m2.p2(), "{m:?}");
        }
    }
}

#[test]
fn built_gluings_realize_their_deltas_everywhere() {
    for m1 in su2abel::decide::grid_pieces(6) {
        for m2 in su2abel::decide::grid_pieces(6) {
            for n in -6..=6i64 {
                for mm in -6..=6i64 {
                    if let Ok(phi) = su2abel::gluing::build_gluing(&m1, &m2, n, mm) {
                        let kd = GraphManifold::new(m1, m2, phi).key_deltas();
                        assert_eq!(
                            (kd.h1_h2, kd.lambda1_h2, kd.lambda2_h1),
                            (1, n.abs(), mm.abs()),
                            "{m1:?} {m2:?} n={n} m={mm}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn fiber_minus_sets_are_never_empty() {
    for p1 in 2..=30i64 {
        for p2 in p1..=30 {
            assert!(!j_pi(p1, p2).is_empty(), "({p1}, {p2})");
        }
    }
}

#[test]
fn odd_q_policy_does_not_change_verdicts() {
    // both ±p shifts for even framings give the same downstream decision
    let piece = SeifertPiece::new(3, 2, 5, 4).unwrap();
    let other = SeifertPiece::new(2, 1, 3, 1).unwrap();
    let phi = GluingMatrix::new(0, 1, 1, 0).unwrap();
    let m = GraphManifold::new(piece, other, phi);
    let base = su2abel::decide::decide(&m).unwrap().su2_abelian;
    for (k1, k2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let (s1, c1) = piece.shift(su2abel::seifert::Slot::First, k1);
        let (s2, c2) = s1.shift(su2abel::seifert::Slot::Second, k2);
        assert!(s2.is_q_odd());
        let moved = m
            .transport(su2abel::gluing::Side::One, s1, &c1)
            .unwrap()
            .transport(su2abel::gluing::Side::One, s2, &c2)
            .unwrap();
        assert_eq!(su2abel::decide::decide(&moved).unwrap().su2_abelian, base);
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
