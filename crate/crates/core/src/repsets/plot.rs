//! Exact plot data for the boundary representation picture of a piece: the
//! H arcs on the two fiber levels, the A line, and the P points, all as
//! rational turns on the unit square, with an optional second piece overlaid
//! through the gluing.

use serde::{Serialize, Serializer};

use super::{arcs, half_level, p_membership, TorusPoint};
use crate::exact::{Rational, Turn};
use crate::gluing::{GluingMatrix, GraphManifold};
use crate::intervals::{j_set, FiberSign};
use crate::seifert::SeifertPiece;

fn ser_rat<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// An open θ-arc at a fixed ψ-level; `theta_hi` may be 1 for arcs ending at
/// the seam of the unit square.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HSegment {
    pub psi: Turn,
    #[serde(serialize_with = "ser_rat")]
    pub theta_lo: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub theta_hi: Rational,
}

/// The closed curve `theta_coef·θ + psi_coef·ψ ≡ 0 (mod 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ALine {
    pub theta_coef: i64,
    pub psi_coef: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PlotData {
    pub h_segments: Vec<HSegment>,
    pub a_lines: Vec<ALine>,
    pub p_points: Vec<TorusPoint>,
}

/// Plot data for one piece plus, for a glued manifold, the second piece's
/// data to be drawn through the gluing map.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PlotBundle {
    pub main: PlotData,
    pub overlay: Option<(PlotData, GluingMatrix)>,
}

/// Exact plot data of a piece in its own basis.
pub fn plot_data(piece: &SeifertPiece) -> PlotData {
    let (odd, change) = piece.make_q_odd();
    // arcs computed in the odd presentation shift horizontally by k·ψ when
    // mapped back to the requested basis
    let k = -change.entries()[1][0];

    let mut h_segments = Vec::new();
    for sign in [FiberSign::Plus, FiberSign::Minus] {
        let set = j_set(odd.p1(), odd.p2(), sign);
        let psi = half_level(sign);
        let shift = psi.scale(k);
        for (lo, hi) in arcs::map_affine(&arcs::trace_arcs(&set), 1, &shift) {
            h_segments.push(HSegment {
                psi: psi.clone(),
                theta_lo: lo,
                theta_hi: hi,
            });
        }
    }

    let l = piece.longitude();
    let a_lines = vec![ALine {
        theta_coef: l.o * l.mu_coef,
        psi_coef: l.o * l.h_coef,
    }];

    let mut p_points = Vec::new();
    for (t_half, p_half) in super::CENTRAL_POINTS {
        let pt = TorusPoint::new(
            if t_half { Turn::half() } else { Turn::zero() },
            if p_half { Turn::half() } else { Turn::zero() },
        );
        if p_membership(piece, &pt).expect("central by construction") {
            p_points.push(pt);
        }
    }

    PlotData {
        h_segments,
        a_lines,
        p_points,
    }
}

/// Plot data for a piece, overlaying the far side of a gluing when given.
pub fn plot_bundle(piece: &SeifertPiece, gluing: Option<&GraphManifold>) -> PlotBundle {
    PlotBundle {
        main: plot_data(piece),
        overlay: gluing.map(|m| (plot_data(&m.m2), m.phi)),
    }
}
