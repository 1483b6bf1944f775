//! SU(2) elements as unit quaternions `q = (w, x, y, z)`, corresponding to
//! the matrix `[[w + xi, y + zi], [−y + zi, w − xi]]`; `Tr = 2w`.

use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Quat {
    pub q: [f64; 4],
}

impl Quat {
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quat { q: [w, x, y, z] }
    }

    pub fn identity() -> Self {
        Quat::new(1.0, 0.0, 0.0, 0.0)
    }

    pub fn minus_one() -> Self {
        Quat::new(-1.0, 0.0, 0.0, 0.0)
    }

    /// The diagonal element diag(e^(2πi·t), e^(−2πi·t)).
    pub fn diagonal(turn: f64) -> Self {
        let a = std::f64::consts::TAU * turn;
        Quat::new(a.cos(), a.sin(), 0.0, 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.q.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn normalize(&self) -> Quat {
        let n = self.norm();
        if n < 1e-300 {
            return Quat::identity();
        }
        Quat::new(self.q[0] / n, self.q[1] / n, self.q[2] / n, self.q[3] / n)
    }

    pub fn mul(&self, o: &Quat) -> Quat {
        let [a0, a1, a2, a3] = self.q;
        let [b0, b1, b2, b3] = o.q;
        Quat::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }

    /// Conjugate = inverse on the unit sphere.
    pub fn inv(&self) -> Quat {
        Quat::new(self.q[0], -self.q[1], -self.q[2], -self.q[3])
    }

    pub fn pow(&self, e: i64) -> Quat {
        let base = if e < 0 { self.inv() } else { *self };
        let mut out = Quat::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn conj_by(&self, s: &Quat) -> Quat {
        s.mul(self).mul(&s.inv())
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.q[0]
    }

    /// Euclidean distance to the identity in R⁴.
    pub fn dist_to_identity(&self) -> f64 {
        let [w, x, y, z] = self.q;
        ((w - 1.0) * (w - 1.0) + x * x + y * y + z * z).sqrt()
    }

    pub fn commutator(&self, o: &Quat) -> Quat {
        self.mul(o).mul(&self.inv()).mul(&o.inv())
    }

    /// Some unit quaternion conjugating `self` into the prescribed diagonal
    /// element with the same trace (imaginary parts must have equal norms).
    pub fn align_to_diagonal(&self, target: &Quat) -> Quat {
        let v = [self.q[1], self.q[2], self.q[3]];
        let w = [target.q[1], target.q[2], target.q[3]];
        let nv = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let nw = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        debug_assert!((nv - nw).abs() < 1e-9, "traces must agree");
        if nv < 1e-14 {
            return Quat::identity();
        }
        let a = [v[0] / nv, v[1] / nv, v[2] / nv];
        let b = [w[0] / nw, w[1] / nw, w[2] / nw];
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let cn = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        if cn < 1e-14 {
            if dot > 0.0 {
                return Quat::identity();
            }
            // opposite axes: rotate by π about any axis perpendicular to a
            let perp = if a[0].abs() < 0.9 {
                [0.0, -a[2], a[1]]
            } else {
                [-a[2], 0.0, a[0]]
            };
            let pn = (perp[0] * perp[0] + perp[1] * perp[1] + perp[2] * perp[2]).sqrt();
            return Quat::new(0.0, perp[0] / pn, perp[1] / pn, perp[2] / pn);
        }
        // rotation by the angle between a and b about their cross axis:
        // as a quaternion, half-angle forms
        let half_cos = ((1.0 + dot) / 2.0).sqrt();
        let scale = if half_cos > 1e-14 {
            1.0 / (2.0 * half_cos)
        } else {
            0.0
        };
        Quat::new(
            half_cos,
            cross[0] * scale,
            cross[1] * scale,
            cross[2] * scale,
        )
        .normalize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_identities() {
        let a = Quat::new(0.5, 0.5, 0.5, 0.5);
        assert!((a.norm() - 1.0).abs() < 1e-15);
        assert!(a.mul(&a.inv()).dist_to_identity() < 1e-14);
        // (1+i+j+k)/2 has order 6
        assert!((a.pow(3).mul(&Quat::minus_one().inv()).dist_to_identity()) < 1e-14);
        assert!((a.pow(6).dist_to_identity()) < 1e-14);
        assert!(Quat::identity().commutator(&a).dist_to_identity() < 1e-15);
    }

    #[test]
    fn diagonal_traces() {
        let d = Quat::diagonal(1.0 / 6.0);
        assert!((d.trace() - 1.0).abs() < 1e-12);
        assert!(d.pow(6).dist_to_identity() < 1e-12);
        assert!((d.pow(3).trace() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn alignment() {
        let g = Quat::new(0.3, 0.2, -0.8, 0.4).normalize();
        let trace_half = g.q[0];
        let im = (1.0 - trace_half * trace_half).sqrt();
        let target = Quat::new(trace_half, im, 0.0, 0.0);
        let s = g.align_to_diagonal(&target);
        let moved = g.conj_by(&s);
        for (a, b) in moved.q.iter().zip(target.q.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
