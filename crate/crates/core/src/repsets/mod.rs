//! Exact membership tests for the boundary representation sets A, H, P of a
//! Seifert piece, and emptiness tests for the four pairwise intersections
//! that govern SU(2)-abelianness of the glued manifold.
//!
//! Every intersection test runs two independent routes, a closed-form
//! predicate in the gluing invariants and an exact enumeration of candidate
//! boundary representations, and insists that they agree.

mod arcs;
mod plot;
mod ssets;

pub use plot::{plot_bundle, plot_data, ALine, HSegment, PlotBundle, PlotData};
pub use ssets::{s_sets, sweep_alg1, sweep_alg2, sweep_alg3, SSets, SweepCounterexample};

use serde::Serialize;

use crate::exact::{CosValue, Turn};
use crate::gluing::GraphManifold;
use crate::intervals::{j_set, FiberSign};
use crate::seifert::SeifertPiece;
use crate::{Error, Result};

/// A U(1)-representation of the JSJ torus, as exact turn coordinates
/// (θ, ψ) with respect to a designated piece's {μ, h} basis:
/// μ ↦ e^(2πi·θ), h ↦ e^(2πi·ψ).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TorusPoint {
    pub theta: Turn,
    pub psi: Turn,
}

impl TorusPoint {
    pub fn new(theta: Turn, psi: Turn) -> Self {
        TorusPoint { theta, psi }
    }

    pub fn is_central(&self) -> bool {
        self.theta.is_half_integral() && self.psi.is_half_integral()
    }
}

/// The six boundary representation sets of the two pieces.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SetTag {
    A1,
    H1,
    P1,
    A2,
    H2,
    P2,
}

/// Whether the representation extends to an *abelian* representation of the
/// piece: η(λ)^o = 1 in exact turn arithmetic.
pub fn a_membership(piece: &SeifertPiece, pt: &TorusPoint) -> bool {
    let l = piece.longitude();
    let total = &pt.theta.scale(l.o * l.mu_coef) + &pt.psi.scale(l.o * l.h_coef);
    total.is_zero()
}

/// Whether the representation extends to an *irreducible* representation of
/// the piece. The fiber must map to ±1 and the meridian trace must land in
/// the achievable-trace set for that sign; the test re-presents the piece
/// with odd q's internally and transports the point along.
pub fn h_membership(piece: &SeifertPiece, pt: &TorusPoint) -> bool {
    let (odd, change) = piece.make_q_odd();
    let (theta, psi) = change.point_to_new(&pt.theta, &pt.psi);
    let sign = if psi.is_zero() {
        FiberSign::Plus
    } else if psi.is_half() {
        FiberSign::Minus
    } else {
        return false;
    };
    j_set_of(&odd, sign).contains(&CosValue::of(&theta))
}

/// Whether a *central* boundary representation extends to a non-central
/// abelian representation of the piece.
pub fn p_membership(piece: &SeifertPiece, pt: &TorusPoint) -> Result<bool> {
    if !pt.is_central() {
        return Err(Error::Unsupported(format!(
            "p-membership is defined for central points only, got ({}, {})",
            pt.theta, pt.psi
        )));
    }
    if !a_membership(piece, pt) {
        return Ok(false);
    }
    let l = piece.longitude();
    Ok(match l.g {
        1 => false,
        2 => l.o == 2 && pt.psi.is_half(),
        _ => true,
    })
}

fn j_set_of(piece: &SeifertPiece, sign: FiberSign) -> std::rc::Rc<crate::exact::CosIntervalSet> {
    j_set(piece.p1(), piece.p2(), sign)
}

fn sign_of(psi: &Turn) -> FiberSign {
    debug_assert!(psi.is_half_integral());
    if psi.is_zero() {
        FiberSign::Plus
    } else {
        FiberSign::Minus
    }
}

fn half_level(sign: FiberSign) -> Turn {
    match sign {
        FiberSign::Plus => Turn::zero(),
        FiberSign::Minus => Turn::half(),
    }
}

/// Result of an intersection-emptiness test. The witness, when present, is a
/// point of the intersection in the side-1 basis of the manifold as given.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Emptiness {
    pub empty: bool,
    pub witness: Option<TorusPoint>,
}

impl Emptiness {
    fn empty() -> Self {
        Emptiness {
            empty: true,
            witness: None,
        }
    }

    fn witnessed(pt: TorusPoint) -> Self {
        Emptiness {
            empty: false,
            witness: Some(pt),
        }
    }
}

const CENTRAL_POINTS: [(bool, bool); 4] =
    [(false, false), (false, true), (true, false), (true, true)];

/// Emptiness of P₁ ∩ P₂: the four-condition closed form cross-checked by
/// enumerating the four central representations of the torus.
pub fn p1p2_empty(m: &GraphManifold) -> Result<Emptiness> {
    // the condition list presupposes g1 ≤ g2
    let (sorted, _) = m.with_g_sorted();
    let l1 = sorted.m1.longitude();
    let l2 = sorted.m2.longitude();
    let d = sorted.key_deltas().lambda2_h1;
    let predicate_empty = l1.g == 1
        || (l1.g == 2 && l1.o == 1)
        || (l2.g == 2 && l2.o == 1)
        || (l1.g == 2 && l2.o % 2 == 1 && d % 2 == 0);

    let mut found = None;
    for (t_half, p_half) in CENTRAL_POINTS {
        let pt = TorusPoint::new(
            if t_half { Turn::half() } else { Turn::zero() },
            if p_half { Turn::half() } else { Turn::zero() },
        );
        let (theta2, psi2) = m.phi.point_to_side2(&pt.theta, &pt.psi);
        let pt2 = TorusPoint::new(theta2, psi2);
        if p_membership(&m.m1, &pt)? && p_membership(&m.m2, &pt2)? {
            found = Some(pt);
            break;
        }
    }

    let enumerated_empty = found.is_none();
    if enumerated_empty != predicate_empty {
        return Err(Error::Internal(format!(
            "P1∩P2 paths disagree on {m:?}: predicate empty = {predicate_empty}, enumeration empty = {enumerated_empty}"
        )));
    }
    Ok(match found {
        Some(pt) => Emptiness::witnessed(pt),
        None => Emptiness::empty(),
    })
}

/// A point of `H_{piece,sign}` in the piece's current basis, if the set is
/// nonempty: the midpoint (in turns) of the first achievable-trace arc.
fn h_point(piece: &SeifertPiece, sign: FiberSign) -> Option<TorusPoint> {
    let (odd, change) = piece.make_q_odd();
    let set = j_set_of(&odd, sign);
    let iv = set.intervals().first()?;
    // turns: hi endpoint has the smaller turn
    let mid =
        Turn::new((iv.lo().turn().value() + iv.hi().turn().value()) / crate::exact::rat(2, 1));
    let psi = half_level(sign);
    let (theta, psi) = change.point_to_old(&mid, &psi);
    Some(TorusPoint::new(theta, psi))
}

/// Emptiness of H₁ ∩ A₂: the six-case closed form cross-checked by
/// enumerating the intersections of the A₂ line with the two ψ₁-levels.
pub fn h1a2_empty(m: &GraphManifold) -> Result<Emptiness> {
    let kd = m.key_deltas();
    let l2 = m.m2.longitude();
    let (p1, p2) = sorted_fibers(&m.m1);
    let d = kd.lambda2_h1;
    let o2 = l2.o;
    let parity_ok = kd.lambda1_lambda2 % 2 == 0;
    let predicate_empty = (d == 0 && p1 == 2 && o2 % 2 == 1)
        || (d == 1 && o2 <= 2)
        || (d == 1 && o2 == 3 && p1 == 3 && p2 == 3 && parity_ok)
        || (d == 2 && p1 == 4 && p2 == 4 && o2 == 1)
        || (d == 3 && p1 == 3 && p2 == 3 && o2 == 1 && parity_ok)
        || (d == 4 && p1 == 2 && p2 == 4 && o2 == 1);

    // λ₂ in side-1 coordinates, signed
    let lam2 = m.phi.slope_to_side1(&m.m2.longitude_slope());
    let found = a_line_meets_h(&m.m1, lam2.mu, lam2.h, o2);

    let enumerated_empty = found.is_none();
    if enumerated_empty != predicate_empty {
        return Err(Error::Internal(format!(
            "H1∩A2 paths disagree on {m:?}: predicate empty = {predicate_empty}, enumeration empty = {enumerated_empty}"
        )));
    }
    Ok(match found {
        Some(pt) => Emptiness::witnessed(pt),
        None => Emptiness::empty(),
    })
}

/// Emptiness of A₁ ∩ H₂ (the symmetric case, computed on the swap).
pub fn a1h2_empty(m: &GraphManifold) -> Result<Emptiness> {
    let swapped = m.swap();
    let e = h1a2_empty(&swapped)?;
    Ok(Emptiness {
        empty: e.empty,
        witness: e.witness.map(|pt| {
            // the swapped side-1 basis is the side-2 basis of `m`
            let (theta, psi) = m.phi.point_to_side1(&pt.theta, &pt.psi);
            TorusPoint::new(theta, psi)
        }),
    })
}

/// Intersections of the line `o·(mu·θ + h·ψ) ≡ 0` with the two H-levels of
/// a piece, in the piece's own basis.
fn a_line_meets_h(piece: &SeifertPiece, mu_coef: i64, h_coef: i64, o: i64) -> Option<TorusPoint> {
    for sign in [FiberSign::Plus, FiberSign::Minus] {
        let psi = half_level(sign);
        if mu_coef == 0 {
            // the whole ψ-level is on the line iff the ψ-term vanishes
            if psi.scale(o * h_coef).is_zero() {
                if let Some(pt) = h_point(piece, sign) {
                    return Some(pt);
                }
            }
            continue;
        }
        let count = (o * mu_coef).unsigned_abs();
        for j in 0..count {
            // θ solves o·mu·θ ≡ −o·h·ψ (mod 1)
            let offset = -&psi.scale(o * h_coef);
            let theta = Turn::new(
                (offset.value() + crate::exact::rat(j as i64, 1))
                    / crate::exact::rat(o * mu_coef, 1),
            );
            let pt = TorusPoint::new(theta, psi.clone());
            if h_membership(piece, &pt) {
                return Some(pt);
            }
        }
    }
    None
}

fn sorted_fibers(piece: &SeifertPiece) -> (i64, i64) {
    let (a, b) = (piece.p1(), piece.p2());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn edge_triple(piece: &SeifertPiece, beta: i64) -> bool {
    let (lo, hi) = sorted_fibers(piece);
    matches!((lo, hi, beta.abs()), (2, 4, 4) | (3, 3, 3))
}

/// A point of `H_{1,s1} ∩ H_{2,s2}` in side-1 coordinates, by exhausting the
/// finitely many torus points with both fiber coordinates at the requested
/// levels. Requires β ≠ 0.
pub fn h1h2_component_witness(
    m: &GraphManifold,
    s1: FiberSign,
    s2: FiberSign,
) -> Option<TorusPoint> {
    let beta = m.phi.beta();
    assert!(beta != 0);
    let psi1_target = half_level(s1);
    let psi2 = half_level(s2);
    for j in 0..beta.unsigned_abs() {
        // θ₂ solves β·θ₂ + δ·ψ₂ ≡ ψ₁ (mod 1)
        let rhs = &psi1_target - &psi2.scale(m.phi.delta());
        let theta2 =
            Turn::new((rhs.value() + crate::exact::rat(j as i64, 1)) / crate::exact::rat(beta, 1));
        let pt2 = TorusPoint::new(theta2.clone(), psi2.clone());
        let (theta1, psi1) = m.phi.point_to_side1(&theta2, &psi2);
        debug_assert_eq!(psi1, psi1_target);
        let pt1 = TorusPoint::new(theta1, psi1);
        if h_membership(&m.m2, &pt2) && h_membership(&m.m1, &pt1) {
            return Some(pt1);
        }
    }
    None
}

/// The case-analysis answer for H₁ ∩ H₂ emptiness: empty iff |β| = 1, or
/// |β| = 2 with both small fibers 2, or |β| = 2 with all fibers 4; `None`
/// where the case analysis does not apply (β = 0 or an exceptional triple).
///
/// For |β| ≥ 3 this closed form claims "nonempty", which the finite-case
/// sweeps show to have isolated exceptions (certain (2,4)-(2,4) gluings with
/// |β| ∈ {5, 10}); the enumeration is always the verdict, and agreement is
/// only *asserted* on the proof-solid range |β| ≤ 2.
pub fn h1h2_closed_form(m: &GraphManifold) -> Option<bool> {
    let beta = m.phi.beta();
    if beta == 0 || edge_triple(&m.m1, beta) || edge_triple(&m.m2, beta) {
        return None;
    }
    let (p1, p2) = sorted_fibers(&m.m1);
    let (p3, p4) = sorted_fibers(&m.m2);
    let all_four = p1 == 4 && p2 == 4 && p3 == 4 && p4 == 4;
    Some(
        beta.abs() == 1 || (beta.abs() == 2 && p1 == 2 && p3 == 2) || (beta.abs() == 2 && all_four),
    )
}

/// Emptiness of H₁ ∩ H₂ for β ≠ 0, by exact enumeration of the finitely
/// many candidate points. Agreement with the closed form is enforced for
/// |β| ≤ 2.
pub fn h1h2_empty(m: &GraphManifold) -> Result<Emptiness> {
    let beta = m.phi.beta();
    if beta == 0 {
        return Err(Error::Unsupported(
            "H1∩H2 line enumeration requires Δ(h1,h2) ≠ 0".into(),
        ));
    }

    let mut found = None;
    'outer: for s1 in [FiberSign::Plus, FiberSign::Minus] {
        for s2 in [FiberSign::Plus, FiberSign::Minus] {
            if let Some(pt) = h1h2_component_witness(m, s1, s2) {
                found = Some(pt);
                break 'outer;
            }
        }
    }
    let enumerated_empty = found.is_none();

    if beta.abs() <= 2 {
        if let Some(predicate_empty) = h1h2_closed_form(m) {
            if enumerated_empty != predicate_empty {
                return Err(Error::Internal(format!(
                    "H1∩H2 paths disagree on {m:?}: predicate empty = {predicate_empty}, enumeration empty = {enumerated_empty}"
                )));
            }
        }
    }

    Ok(match found {
        Some(pt) => Emptiness::witnessed(pt),
        None => Emptiness::empty(),
    })
}

/// Emptiness of H₁ ∩ H₂ when β = 0 (the fibration extends across the torus):
/// each ψ₂-level pins ψ₁, and membership on both sides becomes an exact
/// intersection of achievable-trace arcs in the θ₂ coordinate.
pub fn h1h2_empty_beta_zero(m: &GraphManifold) -> Result<Emptiness> {
    if m.phi.beta() != 0 {
        return Err(Error::Unsupported("expected a gluing with β = 0".into()));
    }
    let (odd1, c1) = m.m1.make_q_odd();
    let (odd2, c2) = m.m2.make_q_odd();
    let mo = m
        .transport(crate::gluing::Side::One, odd1, &c1)?
        .transport(crate::gluing::Side::Two, odd2, &c2)?;
    let alpha = mo.phi.alpha();
    debug_assert!(alpha.abs() == 1);

    for s2 in [FiberSign::Plus, FiberSign::Minus] {
        let psi2 = half_level(s2);
        let psi1 = psi2.scale(mo.phi.delta());
        let s1 = sign_of(&psi1);
        let set1 = j_set_of(&mo.m1, s1);
        let set2 = j_set_of(&mo.m2, s2);
        if set1.is_empty() || set2.is_empty() {
            continue;
        }
        // θ₂ arcs realizing side 2, intersected with the pullback of side 1
        // through θ₁ = α·θ₂ + γ·ψ₂
        let arcs2 = arcs::trace_arcs(&set2);
        let shift = psi2.scale(mo.phi.gamma());
        let arcs1 = arcs::map_affine(&arcs::trace_arcs(&set1), alpha, &-&shift);
        if let Some(theta2) = arcs::sample_intersection(&arcs2, &arcs1) {
            let (theta1, psi1) = mo.phi.point_to_side1(&theta2, &psi2);
            // back to the original side-1 basis
            let (theta, psi) = c1.point_to_old(&theta1, &psi1);
            return Ok(Emptiness::witnessed(TorusPoint::new(theta, psi)));
        }
    }
    Ok(Emptiness::empty())
}
