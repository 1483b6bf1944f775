//! The gluing matrix, the glued graph manifold, geometric intersection
//! numbers between boundary curves, piece swapping, and presentation
//! transport.
//!
//! Convention: the matrix of `φ_* : π₁(∂M₁) → π₁(∂M₂)` has columns the
//! images of the ordered basis (μ₁, h₁) in (μ₂, h₂):
//! `φ(μ₁) = α·μ₂ + γ·h₂`, `φ(h₁) = β·μ₂ + δ·h₂`, with `αδ − βγ = −1`.
//! Slope coordinate vectors push forward by the matrix; representation-point
//! coordinates pull back by the transpose.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::Turn;
use crate::seifert::{BasisChange, BoundarySlope, SeifertPiece};
use crate::{Error, Result};

const MAX_ENTRY: i64 = 1_000_000;

/// Orientation-reversing gluing map between the two boundary tori,
/// determinant −1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct GluingMatrix {
    alpha: i64,
    beta: i64,
    gamma: i64,
    delta: i64,
}

impl TryFrom<[[i64; 2]; 2]> for GluingMatrix {
    type Error = Error;
    fn try_from(m: [[i64; 2]; 2]) -> Result<Self> {
        GluingMatrix::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<GluingMatrix> for [[i64; 2]; 2] {
    fn from(m: GluingMatrix) -> [[i64; 2]; 2] {
        [[m.alpha, m.beta], [m.gamma, m.delta]]
    }
}

impl GluingMatrix {
    pub fn new(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Result<Self> {
        if [alpha, beta, gamma, delta]
            .iter()
            .any(|e| e.abs() > MAX_ENTRY)
        {
            return Err(Error::InvalidGluing(
                "matrix entries out of supported range".into(),
            ));
        }
        let det = alpha * delta - beta * gamma;
        if det != -1 {
            return Err(Error::InvalidGluing(format!(
                "gluing must reverse orientation: det = {det}, expected -1"
            )));
        }
        Ok(GluingMatrix {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }
    pub fn beta(&self) -> i64 {
        self.beta
    }
    pub fn gamma(&self) -> i64 {
        self.gamma
    }
    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// `φ⁻¹`, again of determinant −1.
    pub fn inverse(&self) -> GluingMatrix {
        GluingMatrix {
            alpha: -self.delta,
            beta: self.beta,
            gamma: self.gamma,
            delta: -self.alpha,
        }
    }

    /// Push a side-1 slope forward to side-2 coordinates.
    pub fn slope_to_side2(&self, s: &BoundarySlope) -> BoundarySlope {
        BoundarySlope {
            mu: self.alpha * s.mu + self.beta * s.h,
            h: self.gamma * s.mu + self.delta * s.h,
        }
    }

    /// Pull a side-2 slope back to side-1 coordinates.
    pub fn slope_to_side1(&self, s: &BoundarySlope) -> BoundarySlope {
        self.inverse().slope_to_side2(s)
    }

    /// Point coordinates (θ₁, ψ₁) of a representation given in side-2
    /// coordinates: (θ₁, ψ₁) = Mᵀ(θ₂, ψ₂).
    pub fn point_to_side1(&self, theta2: &Turn, psi2: &Turn) -> (Turn, Turn) {
        (
            &theta2.scale(self.alpha) + &psi2.scale(self.gamma),
            &theta2.scale(self.beta) + &psi2.scale(self.delta),
        )
    }

    /// Inverse of `point_to_side1`.
    pub fn point_to_side2(&self, theta1: &Turn, psi1: &Turn) -> (Turn, Turn) {
        self.inverse().point_to_side1(theta1, psi1)
    }
}

impl fmt::Debug for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.alpha, self.beta, self.gamma, self.delta
        )
    }
}

/// Geometric intersection number of two slopes in a common basis.
pub fn delta(s1: &BoundarySlope, s2: &BoundarySlope) -> i64 {
    (s1.mu * s2.h - s2.mu * s1.h).abs()
}

/// The six intersection numbers the decision procedure consumes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct KeyDeltas {
    pub h1_h2: i64,
    pub lambda1_h2: i64,
    pub lambda2_h1: i64,
    pub lambda1_lambda2: i64,
    pub lambda2_mu1: i64,
    pub lambda1_mu2: i64,
}

/// A graph manifold `M₁ ∪_φ M₂` with a single JSJ torus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphManifold {
    pub m1: SeifertPiece,
    pub m2: SeifertPiece,
    pub phi: GluingMatrix,
}

pub const MU: BoundarySlope = BoundarySlope { mu: 1, h: 0 };
pub const FIBER: BoundarySlope = BoundarySlope { mu: 0, h: 1 };

impl GraphManifold {
    pub fn new(m1: SeifertPiece, m2: SeifertPiece, phi: GluingMatrix) -> Self {
        GraphManifold { m1, m2, phi }
    }

    pub fn key_deltas(&self) -> KeyDeltas {
        let l1 = self.m1.longitude_slope();
        let l2 = self.m2.longitude_slope();
        let l1_side2 = self.phi.slope_to_side2(&l1);
        let h1_side2 = self.phi.slope_to_side2(&FIBER);
        let mu1_side2 = self.phi.slope_to_side2(&MU);
        KeyDeltas {
            h1_h2: self.phi.beta.abs(),
            lambda1_h2: delta(&l1_side2, &FIBER),
            lambda2_h1: delta(&l2, &h1_side2),
            lambda1_lambda2: delta(&l1_side2, &l2),
            lambda2_mu1: delta(&l2, &mu1_side2),
            lambda1_mu2: delta(&l1_side2, &MU),
        }
    }

    /// `M₂ ∪_{φ⁻¹} M₁`: same manifold, pieces swapped.
    pub fn swap(&self) -> GraphManifold {
        GraphManifold {
            m1: self.m2,
            m2: self.m1,
            phi: self.phi.inverse(),
        }
    }

    /// Replace a side's piece by a re-presented copy, composing the basis
    /// change into the gluing matrix so the underlying manifold is unchanged.
    /// `change` must be the matrix returned by the presentation operation
    /// that produced `new_piece`.
    pub fn transport(
        &self,
        side: Side,
        new_piece: SeifertPiece,
        change: &BasisChange,
    ) -> Result<GraphManifold> {
        let m = *self;
        match side {
            Side::One => {
                // φ' = φ ∘ change: columns become images of (μ₁', h₁')
                let [[a, b], [c, d]] = change.entries();
                let phi = GluingMatrix::new(
                    m.phi.alpha * a + m.phi.beta * c,
                    m.phi.alpha * b + m.phi.beta * d,
                    m.phi.gamma * a + m.phi.delta * c,
                    m.phi.gamma * b + m.phi.delta * d,
                )?;
                Ok(GraphManifold {
                    m1: new_piece,
                    m2: m.m2,
                    phi,
                })
            }
            Side::Two => {
                // φ' = change⁻¹ ∘ φ: rewrite images in the new side-2 basis
                let [[ia, ib], [ic, id]] = change.inverse().entries();
                let phi = GluingMatrix::new(
                    ia * m.phi.alpha + ib * m.phi.gamma,
                    ia * m.phi.beta + ib * m.phi.delta,
                    ic * m.phi.alpha + id * m.phi.gamma,
                    ic * m.phi.beta + id * m.phi.delta,
                )?;
                Ok(GraphManifold {
                    m1: m.m1,
                    m2: new_piece,
                    phi,
                })
            }
        }
    }

    /// Both pieces re-presented with odd q's, matrix transported.
    pub fn with_odd_q(&self) -> GraphManifold {
        let (p1, c1) = self.m1.make_q_odd();
        let (p2, c2) = self.m2.make_q_odd();
        self.transport(Side::One, p1, &c1)
            .and_then(|m| m.transport(Side::Two, p2, &c2))
            .expect("odd-q transport preserves unimodularity")
    }

    /// Both pieces re-presented with 0 < q < p, matrix transported.
    pub fn with_normalized_q(&self) -> GraphManifold {
        let (p1, c1) = self.m1.normalize_q();
        let (p2, c2) = self.m2.normalize_q();
        self.transport(Side::One, p1, &c1)
            .and_then(|m| m.transport(Side::Two, p2, &c2))
            .expect("normalization transport preserves unimodularity")
    }

    /// Swap pieces if needed so that `g₁ ≤ g₂`; reports whether it swapped.
    pub fn with_g_sorted(&self) -> (GraphManifold, bool) {
        if self.m1.g() > self.m2.g() {
            (self.swap(), true)
        } else {
            (*self, false)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    One,
    Two,
}

/// Construct a gluing realizing prescribed longitude-fiber intersection
/// numbers: if `o₁g₁·n ≡ p₁q₂+p₂q₁ (mod p₁p₂)` and
/// `o₂g₂·m ≡ p₃q₄+p₄q₃ (mod p₃p₄)` are solvable, the returned matrix has
/// `Δ(h₁,h₂) = 1`, `Δ(λ₁,h₂) = |n|`, `Δ(λ₂,h₁) = |m|`.
pub fn build_gluing(m1: &SeifertPiece, m2: &SeifertPiece, n: i64, m: i64) -> Result<GluingMatrix> {
    let solve = |piece: &SeifertPiece, target: i64, side: &str| -> Result<i64> {
        let l = piece.longitude();
        let og = l.o * l.g;
        let num = og * target - piece.framing_sum();
        let den = piece.fiber_product();
        if num % den != 0 {
            return Err(Error::NoSuchGluing(format!(
                "side {side}: {og}·{target} ≢ {} (mod {den})",
                piece.framing_sum()
            )));
        }
        Ok(num / den)
    };
    let k1 = solve(m1, n, "1")?;
    let k2 = solve(m2, m, "2")?;
    let phi = GluingMatrix::new(-k1, -1, k1 * k2 - 1, k2)?;
    let kd = GraphManifold::new(*m1, *m2, phi).key_deltas();
    debug_assert_eq!(
        (kd.h1_h2, kd.lambda1_h2, kd.lambda2_h1),
        (1, n.abs(), m.abs())
    );
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{torus_knot_exterior, Slot};

    fn piece(p1: i64, q1: i64, p2: i64, q2: i64) -> SeifertPiece {
        SeifertPiece::new(p1, q1, p2, q2).unwrap()
    }

    fn gm(a: i64, b: i64, c: i64, d: i64) -> GluingMatrix {
        GluingMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn determinant_validation() {
        assert!(GluingMatrix::new(1, 0, 0, 1).is_err());
        assert!(GluingMatrix::new(0, 1, 1, 0).is_ok());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&MU, &FIBER), 1);
        let s = BoundarySlope { mu: 3, h: 7 };
        assert_eq!(delta(&s, &s), 0);
        let l = piece(2, 1, 3, 1).longitude_slope();
        assert_eq!(delta(&l, &FIBER), 6);
    }

    #[test]
    fn key_deltas_normalized_trefoils() {
        // normalized presentation: λ = 6μ + 5h on both sides
        let t = piece(2, 1, 3, 1);
        let m = GraphManifold::new(t, t, gm(0, 1, 1, 0));
        let kd = m.key_deltas();
        assert_eq!(kd.h1_h2, 1);
        assert_eq!(kd.lambda1_h2, 5);
        assert_eq!(kd.lambda2_h1, 5);
    }

    #[test]
    fn key_deltas_motegi_trefoils() {
        // knot-meridian presentation: λ = 6μ + h on both sides
        let t = torus_knot_exterior(2, 3).unwrap();
        let m = GraphManifold::new(t, t, gm(0, 1, 1, 0));
        let kd = m.key_deltas();
        assert_eq!(kd.h1_h2, 1);
        assert_eq!(kd.lambda1_h2, 1);
        assert_eq!(kd.lambda2_h1, 1);
        // meridians glued to fibers
        assert_eq!(kd.lambda1_mu2, 6);
        assert_eq!(m.phi.alpha(), 0);
        assert_eq!(m.phi.delta(), 0);
    }

    #[test]
    fn key_deltas_non_unique_diffeomorphism_example() {
        let m1 = piece(4, 1, 5, 4);
        let m2 = piece(2, 1, 2, 1);
        let a = GraphManifold::new(m1, m2, gm(-1, 1, 1, 0));
        let b = GraphManifold::new(m1, m2, gm(-1, 1, -1, 2));
        assert_eq!(a.key_deltas().lambda1_lambda2, 19);
        assert_eq!(b.key_deltas().lambda1_lambda2, 21);
        assert_eq!(a.key_deltas().lambda1_h2, 1);
        assert_eq!(a.key_deltas().lambda2_h1, 1);
    }

    #[test]
    fn swap_is_involutive_and_exchanges_deltas() {
        let m = GraphManifold::new(piece(2, 1, 3, 1), piece(3, 1, 4, 1), gm(1, 1, 0, -1));
        assert_eq!(m.swap().swap(), m);
        let kd = m.key_deltas();
        let ks = m.swap().key_deltas();
        assert_eq!(kd.h1_h2, ks.h1_h2);
        assert_eq!(kd.lambda1_h2, ks.lambda2_h1);
        assert_eq!(kd.lambda2_h1, ks.lambda1_h2);
        assert_eq!(kd.lambda1_lambda2, ks.lambda1_lambda2);
        assert_eq!(kd.lambda2_mu1, ks.lambda1_mu2);

        // the self-inverse matrix swaps to itself
        let motegi = GraphManifold::new(piece(2, 1, 3, 1), piece(2, 1, 3, 1), gm(0, 1, 1, 0));
        assert_eq!(motegi.swap().phi, motegi.phi);
    }

    #[test]
    fn transport_preserves_invariant_deltas() {
        // the fibration meridian depends on the presentation, so only the
        // λ/h pairings are manifold invariants
        let m = GraphManifold::new(piece(2, 1, 3, 1), piece(3, 1, 4, 1), gm(1, 1, 0, -1));
        let kd = m.key_deltas();
        for side in [Side::One, Side::Two] {
            for slot in [Slot::First, Slot::Second] {
                for k in -3..=3 {
                    let piece = match side {
                        Side::One => m.m1,
                        Side::Two => m.m2,
                    };
                    let (shifted, change) = piece.shift(slot, k);
                    let moved = m.transport(side, shifted, &change).unwrap();
                    let md = moved.key_deltas();
                    assert_eq!(
                        (md.h1_h2, md.lambda1_h2, md.lambda2_h1, md.lambda1_lambda2),
                        (kd.h1_h2, kd.lambda1_h2, kd.lambda2_h1, kd.lambda1_lambda2),
                        "side {side:?} slot {slot:?} k {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn transport_composition_is_functorial() {
        let m = GraphManifold::new(piece(2, 1, 3, 1), piece(3, 1, 4, 1), gm(1, 1, 0, -1));
        let (s1, c1) = m.m1.shift(Slot::First, 2);
        let (s2, c2) = s1.shift(Slot::Second, -1);
        let step = m
            .transport(Side::One, s1, &c1)
            .unwrap()
            .transport(Side::One, s2, &c2)
            .unwrap();
        let composite = m.transport(Side::One, s2, &c1.then(&c2)).unwrap();
        assert_eq!(step, composite);

        let identity = m
            .transport(Side::Two, m.m2, &BasisChange::identity())
            .unwrap();
        assert_eq!(identity, m);
    }

    #[test]
    fn build_gluing_examples() {
        let t = piece(2, 1, 3, 1);
        // o·g = 1: need 6k + 5 = n, so n = 0 and n = 1 are unsolvable
        assert!(build_gluing(&t, &t, 0, 0).is_err());
        assert!(build_gluing(&t, &t, 1, 1).is_err());
        let phi = build_gluing(&t, &t, -1, -1).unwrap();
        assert_eq!(<[[i64; 2]; 2]>::from(phi), [[1, -1], [0, -1]]);
        let kd = GraphManifold::new(t, t, phi).key_deltas();
        assert_eq!((kd.h1_h2, kd.lambda1_h2, kd.lambda2_h1), (1, 1, 1));
    }

    #[test]
    fn build_gluing_satisfies_prescribed_deltas() {
        for (m1, m2) in [
            (piece(2, 1, 4, 1), piece(3, 1, 3, 2)),
            (piece(3, 2, 5, 1), piece(2, 1, 2, 1)),
        ] {
            for n in -6..=6 {
                for m in -6..=6 {
                    if let Ok(phi) = build_gluing(&m1, &m2, n, m) {
                        let kd = GraphManifold::new(m1, m2, phi).key_deltas();
                        assert_eq!(
                            (kd.h1_h2, kd.lambda1_h2, kd.lambda2_h1),
                            (1, n.abs(), m.abs())
                        );
                    }
                }
            }
        }
    }
}
