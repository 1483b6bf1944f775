//! The bundled reproduction suite: finite-case sweeps, interval fixtures,
//! the named example gluings, and the class-4 enumeration, each printed as a
//! single pass/fail line.

use std::process::ExitCode;

use su2abel::decide::{classify, decide, det_minus_one_matrices};
use su2abel::exact::{cokernel_of_columns, CosValue};
use su2abel::gluing::{GluingMatrix, GraphManifold};
use su2abel::intervals::{j_pi, j_zero};
use su2abel::oracle::build_presentation;
use su2abel::repsets::{sweep_alg1, sweep_alg2, sweep_alg3};
use su2abel::seifert::{torus_knot_exterior, SeifertPiece};

struct Report {
    failures: u32,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            println!("PASS {name} — {detail}");
        } else {
            println!("FAIL {name} — {detail}");
            self.failures += 1;
        }
    }
}

fn cv(n: i64, d: i64) -> CosValue {
    CosValue::from_frac(n, d)
}

fn piece(p1: i64, q1: i64, p2: i64, q2: i64) -> SeifertPiece {
    SeifertPiece::new(p1, q1, p2, q2).unwrap()
}

fn gm(a: i64, b: i64, c: i64, d: i64) -> GluingMatrix {
    GluingMatrix::new(a, b, c, d).unwrap()
}

pub fn verify_paper() -> anyhow::Result<ExitCode> {
    let mut r = Report { failures: 0 };

    let t0 = std::time::Instant::now();
    let bad1 = sweep_alg1();
    r.check(
        "sweep-1",
        bad1.is_empty(),
        format!(
            "H(+,+) sweep β ≤ 19: {} counterexamples in {:?}",
            bad1.len(),
            t0.elapsed()
        ),
    );
    let t0 = std::time::Instant::now();
    let bad2 = sweep_alg2();
    r.check(
        "sweep-2",
        bad2.is_empty(),
        format!(
            "H(+,−) sweep β ≤ 19: {} counterexamples in {:?}",
            bad2.len(),
            t0.elapsed()
        ),
    );
    let t0 = std::time::Instant::now();
    let bad3 = sweep_alg3();
    r.check(
        "sweep-3",
        bad3.is_empty(),
        format!(
            "H(−,−) sweep β ≤ 30: {} counterexamples in {:?}",
            bad3.len(),
            t0.elapsed()
        ),
    );

    // interval fixtures
    let j33 = j_zero(3, 3);
    r.check(
        "interval-(3,3)",
        j33.single()
            .is_some_and(|iv| (iv.lo(), iv.hi()) == (&cv(1, 3), &cv(0, 1))),
        format!("fiber-plus trace set of (3,3) = {j33}"),
    );
    let empty_all = (2..=40).all(|p2| j_zero(2, p2).is_empty());
    r.check(
        "interval-(2,p)",
        empty_all,
        "fiber-plus trace set of (2, p) empty for p ≤ 40".into(),
    );
    let j24 = j_pi(2, 4);
    r.check(
        "interval-(2,4)",
        j24.single()
            .is_some_and(|iv| (iv.lo(), iv.hi()) == (&cv(3, 8), &cv(1, 8))),
        format!("fiber-minus trace set of (2,4) = {j24}"),
    );
    let j44 = j_pi(4, 4);
    r.check(
        "interval-(4,4)",
        j44.intervals().len() == 2 && !j44.contains(&cv(1, 4)),
        format!("fiber-minus trace set of (4,4) = {j44}"),
    );
    let mut zero_ok = true;
    for p1 in 3..=40 {
        for p2 in p1..=40 {
            let has_zero = j_pi(p1, p2).contains(&cv(1, 4));
            if has_zero == ((p1, p2) == (4, 4)) {
                zero_ok = false;
            }
        }
    }
    r.check(
        "interval-zero-trace",
        zero_ok,
        "0 in the fiber-minus trace set iff (p1,p2) ≠ (4,4), range ≤ 40".into(),
    );

    // named gluings
    let t = torus_knot_exterior(2, 3)?;
    let motegi = GraphManifold::new(t, t, gm(0, 1, 1, 0));
    let v = decide(&motegi)?;
    let class = classify(&motegi)?.map(|c| c.class);
    r.check(
        "two-trefoils",
        v.su2_abelian && class == Some(7),
        format!(
            "meridian↔fiber gluing of two trefoil exteriors: abelian = {}, class = {class:?}",
            v.su2_abelian
        ),
    );

    let k = piece(2, 1, 2, 1);
    let mut klein_ok = true;
    for phi in det_minus_one_matrices(5) {
        if decide(&GraphManifold::new(k, k, phi))?.su2_abelian {
            klein_ok = false;
        }
    }
    r.check(
        "klein-pairs",
        klein_ok,
        "no gluing of two twisted I-bundles over the Klein bottle is abelian (entries ≤ 5)".into(),
    );

    let m1 = piece(4, 1, 5, 4);
    let m2 = piece(2, 1, 2, 1);
    let a = GraphManifold::new(m1, m2, gm(-1, 1, 1, 0));
    let b = GraphManifold::new(m1, m2, gm(-1, 1, -1, 2));
    let va = decide(&a)?;
    let vb = decide(&b)?;
    r.check(
        "non-unique-gluing",
        va.su2_abelian
            && vb.su2_abelian
            && a.key_deltas().lambda1_lambda2 == 19
            && b.key_deltas().lambda1_lambda2 == 21
            && classify(&a)?.map(|c| c.class) == Some(7)
            && classify(&b)?.map(|c| c.class) == Some(7),
        format!(
            "two distinct abelian gluings of the same pieces: Δ(λ₁,λ₂) = {} and {}",
            a.key_deltas().lambda1_lambda2,
            b.key_deltas().lambda1_lambda2
        ),
    );

    // class-4 enumeration with Betti flags
    let mut found: Vec<(i64, i64, [[i64; 2]; 2], usize)> = Vec::new();
    for q2 in [1i64, 3] {
        for q3 in [1i64, 2] {
            let m1 = piece(2, 1, 4, q2);
            let m2 = piece(3, q3, 3, q3);
            for phi in det_minus_one_matrices(6) {
                let m = GraphManifold::new(m1, m2, phi);
                if classify(&m)?.map(|c| c.class) == Some(4) {
                    let (free, _) =
                        cokernel_of_columns(&build_presentation(&m).abelianized_matrix());
                    let arr = <[[i64; 2]; 2]>::from(phi);
                    let neg = [[-arr[0][0], -arr[0][1]], [-arr[1][0], -arr[1][1]]];
                    if !found
                        .iter()
                        .any(|f| f.0 == q2 && f.1 == q3 && (f.2 == arr || f.2 == neg))
                    {
                        found.push((q2, q3, arr, free));
                    }
                }
            }
        }
    }
    let fourth_positive = found
        .iter()
        .any(|f| (f.0, f.1) == (1, 2) && f.2[0][1].abs() == 1 && f.3 >= 1);
    r.check(
        "class-4-list",
        found.len() == 4 && fourth_positive,
        format!(
            "class-4 gluings up to sign: {:?} (q2, q3, matrix, b1)",
            found
        ),
    );

    if r.failures == 0 {
        println!("all checks passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{} check(s) failed", r.failures);
        Ok(ExitCode::from(1))
    }
}
