//! Independent certification of the decision procedure: a fundamental-group
//! presentation builder, explicit representation witnesses constructed from
//! the intersection data, and a seeded numerical representation search.

mod quat;
mod solver;
mod witness;

pub use quat::Quat;
pub use solver::{solve_numeric, SolveOptions};
pub use witness::{assemble_witness, witness_from_traces};

use serde::Serialize;

use crate::exact::IntMatrix;
use crate::gluing::GraphManifold;

/// A finite presentation: generator names plus relator words given as runs
/// of (generator index, exponent).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i64)>>,
}

impl Presentation {
    /// Exponent-sum matrix with one column per relator over the generators;
    /// its cokernel is the abelianization.
    pub fn abelianized_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.generators.len(), self.relators.len());
        for (j, rel) in self.relators.iter().enumerate() {
            for &(g, e) in rel {
                let v = m.get(g, j) + crate::exact::Int::from(e);
                m.set(g, j, v);
            }
        }
        m
    }
}

fn meridian_power(word: &mut Vec<(usize, i64)>, a: usize, b: usize, e: i64) {
    if e >= 0 {
        for _ in 0..e {
            word.push((a, 1));
            word.push((b, 1));
        }
    } else {
        for _ in 0..-e {
            word.push((b, -1));
            word.push((a, -1));
        }
    }
}

/// The ten-relator presentation of the glued manifold on generators
/// a₁, b₁, h₁, a₂, b₂, h₂: the four fiber relators and four fiber
/// commutators per side, plus the two gluing relators
/// `(a₁b₁)⁻¹(a₂b₂)^α h₂^γ` and `h₁⁻¹(a₂b₂)^β h₂^δ`.
pub fn build_presentation(m: &GraphManifold) -> Presentation {
    let (a1, b1, h1, a2, b2, h2) = (0usize, 1, 2, 3, 4, 5);
    let mut relators = vec![
        vec![(a1, m.m1.p1()), (h1, m.m1.q1())],
        vec![(b1, m.m1.p2()), (h1, m.m1.q2())],
        vec![(h1, 1), (a1, 1), (h1, -1), (a1, -1)],
        vec![(h1, 1), (b1, 1), (h1, -1), (b1, -1)],
        vec![(a2, m.m2.p1()), (h2, m.m2.q1())],
        vec![(b2, m.m2.p2()), (h2, m.m2.q2())],
        vec![(h2, 1), (a2, 1), (h2, -1), (a2, -1)],
        vec![(h2, 1), (b2, 1), (h2, -1), (b2, -1)],
    ];
    let mut glue_mu = vec![(b1, -1), (a1, -1)];
    meridian_power(&mut glue_mu, a2, b2, m.phi.alpha());
    glue_mu.push((h2, m.phi.gamma()));
    relators.push(glue_mu);

    let mut glue_h = vec![(h1, -1)];
    meridian_power(&mut glue_h, a2, b2, m.phi.beta());
    glue_h.push((h2, m.phi.delta()));
    relators.push(glue_h);

    for rel in &mut relators {
        rel.retain(|&(_, e)| e != 0);
    }

    Presentation {
        generators: ["a1", "b1", "h1", "a2", "b2", "h2"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        relators,
    }
}

/// A candidate SU(2) representation: one unit quaternion per generator, with
/// its relator residual (root-sum-square of relator deviations from the
/// identity) and irreducibility score (max commutator deviation over
/// generator pairs).
#[derive(Clone, Debug, Serialize)]
pub struct RepWitness {
    pub images: Vec<Quat>,
    pub residual: f64,
    pub irreducibility: f64,
}

pub(crate) fn evaluate_word(images: &[Quat], word: &[(usize, i64)]) -> Quat {
    let mut out = Quat::identity();
    for &(g, e) in word {
        out = out.mul(&images[g].pow(e));
    }
    out
}

pub(crate) fn residual_of(pres: &Presentation, images: &[Quat]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0; // compensated summation
    for rel in &pres.relators {
        let d = evaluate_word(images, rel).dist_to_identity();
        let term = d * d - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    sum.max(0.0).sqrt()
}

pub(crate) fn irreducibility_of(images: &[Quat]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            worst = worst.max(images[i].commutator(&images[j]).dist_to_identity());
        }
    }
    worst
}

/// Recompute both scores of a witness from scratch (independently of any
/// values cached in it).
pub fn verify_witness(pres: &Presentation, w: &RepWitness) -> (f64, f64) {
    (residual_of(pres, &w.images), irreducibility_of(&w.images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cokernel_of_columns;
    use crate::gluing::GluingMatrix;
    use crate::seifert::{torus_knot_exterior, SeifertPiece};

    #[test]
    fn presentation_shape() {
        let t = torus_knot_exterior(2, 3).unwrap();
        let m = GraphManifold::new(t, t, GluingMatrix::new(0, 1, 1, 0).unwrap());
        let p = build_presentation(&m);
        assert_eq!(p.generators.len(), 6);
        assert_eq!(p.relators.len(), 10);

        // abelianization has the size of the first homology of the gluing
        let (free, torsion) = cokernel_of_columns(&p.abelianized_matrix());
        assert_eq!(free, 0);
        let order: i64 = torsion.iter().map(|t| i64::try_from(t).unwrap()).product();
        // |pq·rs − 1| for two trefoils glued meridian-to-fiber
        assert_eq!(order, 35);
    }

    #[test]
    fn beta_zero_presentation_drops_meridian_factor() {
        let t = SeifertPiece::new(2, 1, 3, 1).unwrap();
        let m = GraphManifold::new(t, t, GluingMatrix::new(1, 0, 0, -1).unwrap());
        let p = build_presentation(&m);
        // h₁⁻¹ h₂^δ only
        assert_eq!(p.relators[9], vec![(2, -1), (5, -1)]);
    }

    #[test]
    fn scores_of_the_trivial_assignment() {
        let t = SeifertPiece::new(2, 1, 3, 1).unwrap();
        let m = GraphManifold::new(t, t, GluingMatrix::new(0, 1, 1, 0).unwrap());
        let p = build_presentation(&m);
        let id = vec![Quat::identity(); 6];
        let w = RepWitness {
            images: id,
            residual: f64::NAN,
            irreducibility: f64::NAN,
        };
        let (res, irr) = verify_witness(&p, &w);
        assert_eq!(res, 0.0);
        assert_eq!(irr, 0.0);

        // perturbed images report an honest nonzero residual
        let mut imgs = vec![Quat::identity(); 6];
        imgs[0] = Quat::new(1.0, 1e-3, 0.0, 0.0).normalize();
        let w = RepWitness {
            images: imgs,
            residual: 0.0,
            irreducibility: 0.0,
        };
        let (res, _) = verify_witness(&p, &w);
        assert!(res > 1e-4);
    }
}
