//! Seeded random-restart minimization of the relator residual over the
//! product of unit quaternions: projected gradient descent to get into a
//! basin, then a damped least-squares polish. Deterministic for a fixed
//! seed; the residual never increases within an accepted step.

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use super::quat::Quat;
use super::{irreducibility_of, residual_of, Presentation, RepWitness};

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub restarts: u32,
    pub tol: f64,
    pub seed: u64,
    pub max_iters: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            restarts: 200,
            tol: 1e-10,
            seed: 0x5eed_0001,
            max_iters: 4000,
        }
    }
}

const IRREDUCIBILITY_FLOOR: f64 = 1e-2;

fn gaussian(rng: &mut StdRng) -> f64 {
    // Box-Muller; the tiny clamp keeps ln finite
    let u1: f64 = rng.random::<f64>().max(1e-12);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn random_unit_quat(rng: &mut StdRng) -> Quat {
    Quat::new(gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)).normalize()
}

struct Objective<'a> {
    pres: &'a Presentation,
    n: usize,
}

impl Objective<'_> {
    fn unpack(&self, x: &[f64]) -> Vec<Quat> {
        (0..self.n)
            .map(|i| Quat::new(x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]).normalize())
            .collect()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let imgs = self.unpack(x);
        let r = residual_of(self.pres, &imgs);
        r * r
    }

    /// Residual vector: 4 components per relator.
    fn residual_vector(&self, x: &[f64], out: &mut [f64]) {
        let imgs = self.unpack(x);
        for (k, rel) in self.pres.relators.iter().enumerate() {
            let w = super::evaluate_word(&imgs, rel);
            out[4 * k] = w.q[0] - 1.0;
            out[4 * k + 1] = w.q[1];
            out[4 * k + 2] = w.q[2];
            out[4 * k + 3] = w.q[3];
        }
    }
}

fn project(x: &mut [f64]) {
    for c in x.chunks_mut(4) {
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]).sqrt();
        if n > 1e-300 {
            for v in c {
                *v /= n;
            }
        } else {
            c.copy_from_slice(&[1.0, 0.0, 0.0, 0.0]);
        }
    }
}

fn solve_linear(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (top, rest) = a.split_at_mut(row);
            for (dst, src) in rest[0].iter_mut().zip(top[col].iter()).skip(col) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = b[col];
        for (k, xk) in x.iter().enumerate().take(n).skip(col + 1) {
            s -= a[col][k] * xk;
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

/// One damped least-squares pass from `x`; returns the improved point.
fn polish(obj: &Objective, x: &mut Vec<f64>, fx: &mut f64, target: f64) {
    let dim = x.len();
    let m = 4 * obj.pres.relators.len();
    let mut r = vec![0.0; m];
    let mut r_pert = vec![0.0; m];
    let mut mu = 1e-6;
    for _ in 0..60 {
        if *fx < target {
            return;
        }
        obj.residual_vector(x, &mut r);
        // numeric Jacobian, forward differences
        let h = 1e-7;
        let mut jt_j = vec![vec![0.0; dim]; dim];
        let mut jt_r = vec![0.0; dim];
        let mut jac = vec![vec![0.0; dim]; m];
        for c in 0..dim {
            let saved = x[c];
            x[c] = saved + h;
            obj.residual_vector(x, &mut r_pert);
            x[c] = saved;
            for k in 0..m {
                jac[k][c] = (r_pert[k] - r[k]) / h;
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let mut s = 0.0;
                for row in jac.iter() {
                    s += row[i] * row[j];
                }
                jt_j[i][j] = s;
                jt_j[j][i] = s;
            }
            let mut s = 0.0;
            for (row, rk) in jac.iter().zip(r.iter()) {
                s += row[i] * rk;
            }
            jt_r[i] = -s;
        }
        let mut stepped = false;
        for _ in 0..25 {
            let mut a = jt_j.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += mu;
            }
            let mut rhs = jt_r.clone();
            if let Some(d) = solve_linear(&mut a, &mut rhs) {
                let mut cand = x.clone();
                for (c, dc) in cand.iter_mut().zip(d.iter()) {
                    *c += dc;
                }
                project(&mut cand);
                let fc = obj.value(&cand);
                if fc < *fx {
                    *x = cand;
                    *fx = fc;
                    mu = (mu / 3.0).max(1e-14);
                    stepped = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if !stepped {
            return;
        }
    }
}

fn descend(obj: &Objective, x: &mut Vec<f64>, max_iters: u32, target: f64) -> f64 {
    let dim = x.len();
    let mut fx = obj.value(x);
    let mut step = 0.1;
    let mut grad = vec![0.0; dim];
    for _ in 0..max_iters {
        if fx < target {
            break;
        }
        // central differences
        let h = 1e-6;
        for c in 0..dim {
            let saved = x[c];
            x[c] = saved + h;
            let fp = obj.value(x);
            x[c] = saved - h;
            let fm = obj.value(x);
            x[c] = saved;
            grad[c] = (fp - fm) / (2.0 * h);
        }
        let gn: f64 = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gn < 1e-14 {
            break;
        }
        let mut accepted = false;
        for _ in 0..40 {
            let mut cand = x.clone();
            for (c, g) in cand.iter_mut().zip(grad.iter()) {
                *c -= step * g / gn;
            }
            project(&mut cand);
            let fc = obj.value(&cand);
            if fc < fx {
                *x = cand;
                fx = fc;
                step *= 1.4;
                accepted = true;
                break;
            }
            step *= 0.5;
            if step < 1e-16 {
                break;
            }
        }
        if !accepted {
            break; // stalled
        }
    }
    fx
}

/// Search for an irreducible representation with residual below `tol`.
/// Returns the first success over the seeded restarts, or `None`. Absence is
/// one-sided evidence only, never a proof of abelianness.
pub fn solve_numeric(pres: &Presentation, opts: &SolveOptions) -> Option<RepWitness> {
    let n = pres.generators.len();
    let obj = Objective { pres, n };
    let mut rng = StdRng::seed_from_u64(opts.seed);
    // all starting points are drawn up front from the single seeded stream
    let starts: Vec<Vec<f64>> = (0..opts.restarts)
        .map(|_| {
            let mut x = Vec::with_capacity(4 * n);
            for _ in 0..n {
                x.extend_from_slice(&random_unit_quat(&mut rng).q);
            }
            x
        })
        .collect();

    let target = opts.tol * opts.tol;
    for mut x in starts {
        let coarse = target.max(1e-8);
        let mut fx = descend(&obj, &mut x, opts.max_iters, coarse);
        if fx >= 1.0 {
            continue; // nowhere near a representation
        }
        polish(&obj, &mut x, &mut fx, target);
        if fx < target {
            let images = obj.unpack(&x);
            let irreducibility = irreducibility_of(&images);
            if irreducibility > IRREDUCIBILITY_FLOOR {
                let residual = residual_of(pres, &images);
                return Some(RepWitness {
                    images,
                    residual,
                    irreducibility,
                });
            }
        }
    }
    None
}
