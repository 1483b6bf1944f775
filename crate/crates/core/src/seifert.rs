//! Seifert pieces `D²(p1/q1, p2/q2)`: validation, presentation changes with
//! explicit basis transport, rational longitude, homology, and the
//! torus-knot-exterior constructor.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact::{cokernel_of_columns, IntMatrix, Turn};
use crate::{Error, Result};

const MAX_FIBER_ORDER: i64 = 10_000;
const MAX_Q: i64 = 1_000_000;

/// A Seifert fibred piece over the disk with two exceptional fibers of
/// orders `p1`, `p2` and framing coefficients `q1`, `q2`.
///
/// Boundary slopes are always expressed in the ordered basis
/// {fibration meridian μ, regular fiber h} of the *current* presentation;
/// every presentation change returns the basis-change matrix so callers can
/// transport gluing data.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PieceRepr", into = "PieceRepr")]
pub struct SeifertPiece {
    p1: i64,
    q1: i64,
    p2: i64,
    q2: i64,
}

#[derive(Serialize, Deserialize)]
struct PieceRepr {
    p: [i64; 2],
    q: [i64; 2],
}

impl TryFrom<PieceRepr> for SeifertPiece {
    type Error = Error;
    fn try_from(r: PieceRepr) -> Result<Self> {
        SeifertPiece::new(r.p[0], r.q[0], r.p[1], r.q[1])
    }
}

impl From<SeifertPiece> for PieceRepr {
    fn from(s: SeifertPiece) -> PieceRepr {
        PieceRepr {
            p: [s.p1, s.p2],
            q: [s.q1, s.q2],
        }
    }
}

impl SeifertPiece {
    pub fn new(p1: i64, q1: i64, p2: i64, q2: i64) -> Result<Self> {
        for (p, q) in [(p1, q1), (p2, q2)] {
            if p < 2 {
                return Err(Error::InvalidPiece(format!(
                    "exceptional fiber order {p} < 2 (solid tori are rejected)"
                )));
            }
            if p > MAX_FIBER_ORDER || q.abs() > MAX_Q {
                return Err(Error::InvalidPiece(format!(
                    "coefficients {p}/{q} out of supported range"
                )));
            }
            if p.gcd(&q) != 1 {
                return Err(Error::InvalidPiece(format!("gcd({p}, {q}) != 1")));
            }
        }
        Ok(SeifertPiece { p1, q1, p2, q2 })
    }

    pub fn p1(&self) -> i64 {
        self.p1
    }
    pub fn q1(&self) -> i64 {
        self.q1
    }
    pub fn p2(&self) -> i64 {
        self.p2
    }
    pub fn q2(&self) -> i64 {
        self.q2
    }

    pub fn g(&self) -> i64 {
        self.p1.gcd(&self.p2)
    }

    /// p1·p2, the μ-weight of o·g times the rational longitude.
    pub fn fiber_product(&self) -> i64 {
        self.p1 * self.p2
    }

    /// p1·q2 + p2·q1, the h-weight companion.
    pub fn framing_sum(&self) -> i64 {
        self.p1 * self.q2 + self.p2 * self.q1
    }

    /// Rational longitude data: `λ = mu_coef·μ + h_coef·h` is primitive,
    /// has order `o` in first homology, and `o·g·mu_coef = p1·p2`.
    pub fn longitude(&self) -> LongitudeData {
        let g = self.g();
        let big_p = self.fiber_product();
        let big_l = self.framing_sum();
        let o = (big_p / g).gcd(&(big_l / g));
        LongitudeData {
            g,
            o,
            mu_coef: big_p / (o * g),
            h_coef: big_l / (o * g),
        }
    }

    /// Relators of the standard presentation, as columns over the generators
    /// (a, b, h) of the abelianized group.
    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&[vec![self.p1, 0], vec![0, self.p2], vec![self.q1, self.q2]])
    }

    /// First homology as invariant factors; always `Z ⊕ Z/g`.
    pub fn homology(&self) -> AbelianGroup {
        let (free_rank, torsion) = cokernel_of_columns(&self.relation_matrix());
        AbelianGroup {
            free_rank,
            torsion: torsion
                .iter()
                .map(|t| i64::try_from(t).expect("torsion bounded by fiber orders"))
                .collect(),
        }
    }

    /// Fiber-preserving change `q_slot ↦ q_slot + k·p_slot`. The returned
    /// matrix expresses the new basis (μ', h') in the old one: h' = h,
    /// μ' = μ − k·h, so the rational longitude is unchanged as a curve.
    pub fn shift(&self, slot: Slot, k: i64) -> (SeifertPiece, BasisChange) {
        let mut out = *self;
        match slot {
            Slot::First => out.q1 += k * self.p1,
            Slot::Second => out.q2 += k * self.p2,
        }
        (out, BasisChange::shift(k))
    }

    /// Reduce both q's into `(0, p)`, accumulating the basis change.
    pub fn normalize_q(&self) -> (SeifertPiece, BasisChange) {
        let mut piece = *self;
        let mut change = BasisChange::identity();
        for slot in [Slot::First, Slot::Second] {
            let (p, q) = match slot {
                Slot::First => (piece.p1, piece.q1),
                Slot::Second => (piece.p2, piece.q2),
            };
            let r = q.rem_euclid(p);
            debug_assert!(r != 0, "q ≡ 0 mod p impossible for coprime pairs");
            let k = (r - q) / p;
            let (next, step) = piece.shift(slot, k);
            piece = next;
            change = change.then(&step);
        }
        (piece, change)
    }

    pub fn is_q_normalized(&self) -> bool {
        0 < self.q1 && self.q1 < self.p1 && 0 < self.q2 && self.q2 < self.p2
    }

    /// Shift even q's by ±p (odd, by coprimality) to make them odd,
    /// preferring the shift that keeps `0 < q < 2p`.
    pub fn make_q_odd(&self) -> (SeifertPiece, BasisChange) {
        let mut piece = *self;
        let mut change = BasisChange::identity();
        for slot in [Slot::First, Slot::Second] {
            let (p, q) = match slot {
                Slot::First => (piece.p1, piece.q1),
                Slot::Second => (piece.p2, piece.q2),
            };
            if q % 2 == 0 {
                let k = if 0 < q + p && q + p < 2 * p { 1 } else { -1 };
                let (next, step) = piece.shift(slot, k);
                piece = next;
                change = change.then(&step);
            }
        }
        (piece, change)
    }

    pub fn is_q_odd(&self) -> bool {
        self.q1 % 2 != 0 && self.q2 % 2 != 0
    }

    /// The rational longitude as a primitive boundary slope.
    pub fn longitude_slope(&self) -> BoundarySlope {
        let l = self.longitude();
        BoundarySlope {
            mu: l.mu_coef,
            h: l.h_coef,
        }
    }
}

impl fmt::Debug for SeifertPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D²({}/{}, {}/{})", self.p1, self.q1, self.p2, self.q2)
    }
}

impl fmt::Display for SeifertPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D²({}/{}, {}/{})", self.p1, self.q1, self.p2, self.q2)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    First,
    Second,
}

/// Rational-longitude invariants of a piece. `o` divides `g` and
/// `gcd(mu_coef, h_coef) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LongitudeData {
    pub g: i64,
    pub o: i64,
    pub mu_coef: i64,
    pub h_coef: i64,
}

/// A boundary slope `mu·μ + h·h` in a piece's current basis. Slopes need not
/// be primitive; rational longitudes are.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct BoundarySlope {
    pub mu: i64,
    pub h: i64,
}

/// Finitely generated abelian group as free rank plus torsion factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = (0..self.free_rank).map(|_| "Z".to_string()).collect();
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// A 2×2 unimodular basis change on the boundary torus; columns are the new
/// basis vectors written in the old basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BasisChange {
    // m[row][col]
    m: [[i64; 2]; 2],
}

impl BasisChange {
    pub fn identity() -> Self {
        BasisChange {
            m: [[1, 0], [0, 1]],
        }
    }

    /// μ' = μ − k·h, h' = h.
    pub fn shift(k: i64) -> Self {
        BasisChange {
            m: [[1, 0], [-k, 1]],
        }
    }

    pub fn from_entries(m: [[i64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() != 1 {
            return Err(Error::InvalidGluing(format!(
                "basis change must be unimodular, det = {det}"
            )));
        }
        Ok(BasisChange { m })
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Apply this change first, `next` second.
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        let a = self.m;
        let b = next.m;
        BasisChange {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn inverse(&self) -> BasisChange {
        let [[a, b], [c, d]] = self.m;
        let det = a * d - b * c;
        // det = ±1, so the adjugate divided by det stays integral
        BasisChange {
            m: [[d / det, -b / det], [-c / det, a / det]],
        }
    }

    /// Slope coordinates: new-basis coordinates to old-basis coordinates.
    pub fn slope_to_old(&self, s: &BoundarySlope) -> BoundarySlope {
        BoundarySlope {
            mu: self.m[0][0] * s.mu + self.m[0][1] * s.h,
            h: self.m[1][0] * s.mu + self.m[1][1] * s.h,
        }
    }

    /// Slope coordinates: old-basis coordinates to new-basis coordinates.
    pub fn slope_to_new(&self, s: &BoundarySlope) -> BoundarySlope {
        self.inverse().slope_to_old(s)
    }

    /// Representation-point coordinates transform by the transpose:
    /// (θ', ψ') = Bᵀ(θ, ψ).
    pub fn point_to_new(&self, theta: &Turn, psi: &Turn) -> (Turn, Turn) {
        (
            &theta.scale(self.m[0][0]) + &psi.scale(self.m[1][0]),
            &theta.scale(self.m[0][1]) + &psi.scale(self.m[1][1]),
        )
    }

    /// Inverse of `point_to_new`.
    pub fn point_to_old(&self, theta: &Turn, psi: &Turn) -> (Turn, Turn) {
        self.inverse().point_to_new(theta, psi)
    }
}

/// The exterior of the (p, q) torus knot, presented so that the fibration
/// meridian is the knot meridian: `p·q2 + q·q1 = ±1` exactly (solved by
/// extended gcd, `q1` reduced into `(0, p)`; `q2` is then usually negative).
pub fn torus_knot_exterior(p: i64, q: i64) -> Result<SeifertPiece> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidPiece(format!(
            "torus knot parameters ({p}, {q}) must both be ≥ 2"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidPiece(format!(
            "torus knot parameters ({p}, {q}) must be coprime"
        )));
    }
    let e = q.extended_gcd(&p);
    debug_assert_eq!(e.gcd, 1);
    // q·x + p·y = 1; shift x into (0, p)
    let q1 = e.x.rem_euclid(p);
    let q2 = (1 - q * q1) / p;
    let piece = SeifertPiece::new(p, q1, q, q2)?;
    debug_assert_eq!(piece.framing_sum().abs(), 1);
    Ok(piece)
}
