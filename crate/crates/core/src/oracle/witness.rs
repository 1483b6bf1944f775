//! Explicit SU(2) representation witnesses assembled from a nonempty
//! boundary-set intersection: the irreducible side comes from the two-trace
//! construction, the abelian side from an exact Diophantine solve in turns,
//! and central-central points get one side conjugated off the diagonal
//! circle.

use crate::decide::IntersectionWitness;
use crate::exact::{CosValue, Turn};
use crate::gluing::GraphManifold;
use crate::intervals::{trace_interval, FiberSign};
use crate::oracle::{build_presentation, irreducibility_of, residual_of, Quat, RepWitness};
use crate::repsets::{SetTag, TorusPoint};
use crate::seifert::SeifertPiece;
use crate::{Error, Result};

const RESIDUAL_LIMIT: f64 = 1e-9;
const IRREDUCIBILITY_FLOOR: f64 = 1e-3;

/// Two non-commuting SU(2) elements with traces `a`, `b` whose product has
/// trace `c`; requires `a, b ∈ (−2, 2)` and `c` strictly inside the
/// realizable open interval. The first element is diagonal.
pub fn witness_from_traces(a: f64, b: f64, c: f64) -> Result<(Quat, Quat)> {
    if !(-2.0 < a && a < 2.0 && -2.0 < b && b < 2.0) {
        return Err(Error::Unsupported(format!(
            "traces must lie in (−2, 2), got a = {a}, b = {b}"
        )));
    }
    let spread = ((4.0 - a * a) * (4.0 - b * b)).sqrt();
    let lo = (a * b - spread) / 2.0;
    let hi = (a * b + spread) / 2.0;
    if !(lo < c && c < hi) {
        return Err(Error::Unsupported(format!(
            "product trace {c} outside the open interval ({lo}, {hi})"
        )));
    }
    let t = 0.5 + (2.0 * c - a * b) / (2.0 * spread);
    let alpha_re = b / 2.0;
    let alpha_im = (1.0 - 2.0 * t) * (1.0 - b * b / 4.0).sqrt();
    let off = (1.0 - alpha_re * alpha_re - alpha_im * alpha_im)
        .max(0.0)
        .sqrt();
    let first = Quat::new(a / 2.0, (1.0 - a * a / 4.0).sqrt(), 0.0, 0.0);
    let second = Quat::new(alpha_re, alpha_im, off, 0.0);
    debug_assert!((first.mul(&second).trace() - c).abs() < 1e-10);
    Ok((first, second))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Abelian,
    Irreducible,
    NonCentral,
}

fn classify_tag(tag: SetTag) -> (usize, Kind) {
    match tag {
        SetTag::A1 => (0, Kind::Abelian),
        SetTag::H1 => (0, Kind::Irreducible),
        SetTag::P1 => (0, Kind::NonCentral),
        SetTag::A2 => (1, Kind::Abelian),
        SetTag::H2 => (1, Kind::Irreducible),
        SetTag::P2 => (1, Kind::NonCentral),
    }
}

/// Candidate generator traces for the requested fiber sign, as turns of the
/// half-angle together with the trace value.
fn generator_trace_turns(p: i64, sign: FiberSign) -> Vec<Turn> {
    let mut out = Vec::new();
    match sign {
        FiberSign::Plus => {
            for k in 1..p {
                if (2 * k) % p != 0 {
                    out.push(Turn::from_frac(k, p));
                }
            }
        }
        FiberSign::Minus => {
            let mut k = 1;
            while k < 2 * p {
                if k % p != 0 {
                    out.push(Turn::from_frac(k, 2 * p));
                }
                k += 2;
            }
        }
    }
    out
}

/// Images of (a, b, h) under an irreducible representation of the piece
/// restricting to the given boundary point, with `a·b` exactly diagonal.
fn irreducible_side(piece: &SeifertPiece, pt: &TorusPoint) -> Result<[Quat; 3]> {
    let (odd, change) = piece.make_q_odd();
    let (theta, psi) = change.point_to_new(&pt.theta, &pt.psi);
    let sign = if psi.is_zero() {
        FiberSign::Plus
    } else if psi.is_half() {
        FiberSign::Minus
    } else {
        return Err(Error::Internal(format!(
            "irreducible side requires the fiber at ±1, got ψ = {}",
            pt.psi
        )));
    };
    let target = CosValue::of(&theta);

    // among all realizing trace pairs pick the one keeping the product trace
    // deepest inside the open interval (best-conditioned commutator)
    let mut best: Option<(f64, Turn, Turn)> = None;
    for ta in generator_trace_turns(odd.p1(), sign) {
        for tb in generator_trace_turns(odd.p2(), sign) {
            let Some(iv) = trace_interval(&CosValue::of(&ta), &CosValue::of(&tb)) else {
                continue;
            };
            if !iv.contains(&target) {
                continue;
            }
            let c = target.approx();
            let depth = (c - iv.lo().approx()).min(iv.hi().approx() - c);
            if best.as_ref().is_none_or(|(d, _, _)| depth > *d) {
                best = Some((depth, ta.clone(), tb));
            }
        }
    }
    let Some((_, ta, tb)) = best else {
        return Err(Error::Internal(format!(
            "no realizing trace pair for {piece:?} at ({}, {})",
            pt.theta, pt.psi
        )));
    };

    let (a_img, b_img) =
        witness_from_traces(ta.two_cos_f64(), tb.two_cos_f64(), theta.two_cos_f64())?;
    let product = a_img.mul(&b_img);
    let aligner = product.align_to_diagonal(&Quat::diagonal(theta.as_f64()));
    let a_img = a_img.conj_by(&aligner);
    let b_img = b_img.conj_by(&aligner);
    let h_img = match sign {
        FiberSign::Plus => Quat::identity(),
        FiberSign::Minus => Quat::minus_one(),
    };

    // translate generators back to the requested presentation:
    // a_orig = a_odd · h^k with q_orig + k·p = q_odd
    let k1 = (odd.q1() - piece.q1()) / piece.p1();
    let k2 = (odd.q2() - piece.q2()) / piece.p2();
    Ok([a_img.mul(&h_img.pow(k1)), b_img.mul(&h_img.pow(k2)), h_img])
}

/// All diagonal solutions (x_a, x_b, x_h) in turns of the piece relations
/// restricting to the boundary point.
fn abelian_solutions(piece: &SeifertPiece, pt: &TorusPoint) -> Vec<[Turn; 3]> {
    let mut out = Vec::new();
    let x_h = pt.psi.clone();
    for j in 0..piece.p1() {
        // p1·x_a + q1·x_h ≡ 0
        let base_a = -&x_h.scale(piece.q1());
        let x_a = Turn::new(
            (base_a.value() + crate::exact::rat(j, 1)) / crate::exact::rat(piece.p1(), 1),
        );
        for l in 0..piece.p2() {
            let base_b = -&x_h.scale(piece.q2());
            let x_b = Turn::new(
                (base_b.value() + crate::exact::rat(l, 1)) / crate::exact::rat(piece.p2(), 1),
            );
            if &x_a + &x_b == pt.theta {
                out.push([x_a.clone(), x_b, x_h.clone()]);
            }
        }
    }
    out
}

fn diagonal_images(sol: &[Turn; 3]) -> [Quat; 3] {
    [
        Quat::diagonal(sol[0].as_f64()),
        Quat::diagonal(sol[1].as_f64()),
        Quat::diagonal(sol[2].as_f64()),
    ]
}

fn abelian_side(piece: &SeifertPiece, pt: &TorusPoint) -> Result<[Quat; 3]> {
    abelian_solutions(piece, pt)
        .first()
        .map(diagonal_images)
        .ok_or_else(|| {
            Error::Internal(format!(
                "abelian extension unsolvable for {piece:?} at ({}, {})",
                pt.theta, pt.psi
            ))
        })
}

fn non_central_side(piece: &SeifertPiece, pt: &TorusPoint) -> Result<[Quat; 3]> {
    abelian_solutions(piece, pt)
        .iter()
        .find(|sol| sol.iter().any(|x| !x.is_half_integral()))
        .map(diagonal_images)
        .ok_or_else(|| {
            Error::Internal(format!(
                "no non-central abelian extension for {piece:?} at ({}, {})",
                pt.theta, pt.psi
            ))
        })
}

/// Assemble an explicit representation from a not-abelian verdict's witness
/// point, verify it against the presentation of the manifold as given, and
/// fail hard if the scores miss their thresholds.
pub fn assemble_witness(m: &GraphManifold, w: &IntersectionWitness) -> Result<RepWitness> {
    let pt1 = w.point.clone();
    let (theta2, psi2) = m.phi.point_to_side2(&pt1.theta, &pt1.psi);
    let pt2 = TorusPoint::new(theta2, psi2);

    let (side_a, kind_a) = classify_tag(w.sets.0);
    let (side_b, kind_b) = classify_tag(w.sets.1);
    if side_a == side_b {
        return Err(Error::Internal(
            "intersection witness must pair the two sides".into(),
        ));
    }
    let kind1 = if side_a == 0 { kind_a } else { kind_b };
    let kind2 = if side_a == 1 { kind_a } else { kind_b };

    let build = |kind: Kind, piece: &SeifertPiece, pt: &TorusPoint| match kind {
        Kind::Irreducible => irreducible_side(piece, pt),
        Kind::Abelian => abelian_side(piece, pt),
        Kind::NonCentral => non_central_side(piece, pt),
    };
    let first = build(kind1, &m.m1, &pt1)?;
    let mut second = build(kind2, &m.m2, &pt2)?;

    if kind1 == Kind::NonCentral && kind2 == Kind::NonCentral {
        // both sides are diagonal with central boundary values; moving one
        // side to a different maximal circle makes the result irreducible
        let z = Quat::new(
            std::f64::consts::FRAC_1_SQRT_2,
            0.0,
            std::f64::consts::FRAC_1_SQRT_2,
            0.0,
        );
        for img in &mut second {
            *img = img.conj_by(&z);
        }
    }

    let images = vec![
        first[0], first[1], first[2], second[0], second[1], second[2],
    ];
    let pres = build_presentation(m);
    let residual = residual_of(&pres, &images);
    let irreducibility = irreducibility_of(&images);
    if residual >= RESIDUAL_LIMIT || irreducibility <= IRREDUCIBILITY_FLOOR {
        return Err(Error::Internal(format!(
            "assembled witness fails verification on {m:?}: residual {residual:.3e}, \
             irreducibility {irreducibility:.3e} (sets {:?})",
            w.sets
        )));
    }
    Ok(RepWitness {
        images,
        residual,
        irreducibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::decide;
    use crate::gluing::GluingMatrix;
    use crate::oracle::verify_witness;

    fn piece(p1: i64, q1: i64, p2: i64, q2: i64) -> SeifertPiece {
        SeifertPiece::new(p1, q1, p2, q2).unwrap()
    }

    fn gm(a: i64, b: i64, c: i64, d: i64) -> GluingMatrix {
        GluingMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn trace_pair_construction() {
        let (a, b) = witness_from_traces(1.0, 1.0, 0.0).unwrap();
        assert!((a.trace() - 1.0).abs() < 1e-12);
        assert!((b.trace() - 1.0).abs() < 1e-12);
        assert!((a.mul(&b).trace()).abs() < 1e-12);
        assert!(a.commutator(&b).dist_to_identity() > 1e-2);

        // midpoint: t = 1/2, second element has real diagonal part
        let (_, b) = witness_from_traces(1.0, 1.0, 0.5).unwrap();
        assert!(b.q[1].abs() < 1e-12);

        assert!(witness_from_traces(2.0, 1.0, 0.0).is_err());
        // I(1, 1) = (−1, 2): endpoints and beyond are rejected
        assert!(witness_from_traces(1.0, 1.0, 2.0).is_err());
        assert!(witness_from_traces(1.0, 1.0, -1.0).is_err());
        // just inside the endpoint still works, with a tiny commutator
        let (a, b) = witness_from_traces(1.0, 1.0, 1.999).unwrap();
        assert!(a.commutator(&b).dist_to_identity() < 0.2);
    }

    #[test]
    fn klein_pair_witness() {
        let k = piece(2, 1, 2, 1);
        let m = GraphManifold::new(k, k, gm(0, 1, 1, 0));
        let v = decide(&m).unwrap();
        let w = assemble_witness(&m, v.witness.as_ref().unwrap()).unwrap();
        let pres = build_presentation(&m);
        let (res, irr) = verify_witness(&pres, &w);
        assert!(res < 1e-9);
        assert!(irr > 1e-3);
        // the fiber images are central
        assert!((w.images[2].trace().abs() - 2.0).abs() < 1e-12);
        assert!((w.images[5].trace().abs() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn h_intersection_witness() {
        // |β| = 5 generic gluing: irreducible on both sides
        let m = GraphManifold::new(piece(3, 1, 4, 1), piece(3, 1, 3, 1), gm(1, 5, 1, 4));
        let v = decide(&m).unwrap();
        let iw = v.witness.as_ref().unwrap();
        assert_eq!(iw.sets, (SetTag::H1, SetTag::H2));
        let w = assemble_witness(&m, iw).unwrap();
        assert!(w.residual < 1e-9);
        assert!(w.irreducibility > 1e-3);
    }

    #[test]
    fn mixed_intersection_witness() {
        // normalized trefoils with the fiber↔meridian matrix: H₁ meets A₂
        let t = piece(2, 1, 3, 1);
        let m = GraphManifold::new(t, t, gm(0, 1, 1, 0));
        let v = decide(&m).unwrap();
        let iw = v.witness.as_ref().unwrap();
        assert_eq!(iw.sets, (SetTag::H1, SetTag::A2));
        let w = assemble_witness(&m, iw).unwrap();
        assert!(w.residual < 1e-9);
        assert!(w.irreducibility > 1e-3);
        // at least one fiber image is central
        let central = |q: &Quat| (q.trace().abs() - 2.0).abs() < 1e-6;
        assert!(central(&w.images[2]) || central(&w.images[5]));
    }
}
