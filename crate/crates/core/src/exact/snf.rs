use std::fmt;

use num_traits::{Signed, Zero};

use super::Int;

/// Dense integer matrix, row-major. Only small presentation matrices pass
/// through here, so there is no attempt at sparsity or pivoting heuristics
/// beyond picking the smallest entry.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::from(1));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Int::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: &Int) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + c * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: &Int) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + c * self.get(i, src);
            self.set(i, dst, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` in Smith normal form.
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Invariant factors: nonnegative diagonal, a divisibility chain.
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form with unimodular transforms, by repeated pivoting on the
/// smallest nonzero entry. Small matrices only; no performance tuning.
pub fn snf_with_transform(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !d.get(i, j).is_zero()
                        && best.is_none_or(|(bi, bj)| d.get(i, j).abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // trailing block is zero
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d.get(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }

            let pivot = d.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..rows {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let q = -(d.get(i, k) / &pivot);
                if !q.is_zero() {
                    d.row_axpy(i, k, &q);
                    u.row_axpy(i, k, &q);
                }
                if !d.get(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let q = -(d.get(k, j) / &pivot);
                if !q.is_zero() {
                    d.col_axpy(j, k, &q);
                    v.col_axpy(j, k, &q);
                }
                if !d.get(k, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }

            // Divisibility chain: if the pivot misses an entry of the trailing
            // block, fold that row in and keep reducing.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.get(i, j) % &pivot).is_zero() {
                        let one = Int::from(1);
                        d.row_axpy(k, i, &one);
                        u.row_axpy(k, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    SnfDecomposition { u, d, v }
}

/// Invariant factors `d1 | d2 | …` (nonnegative) of the matrix.
pub fn snf(m: &IntMatrix) -> Vec<Int> {
    snf_with_transform(m).diagonal()
}

/// Cokernel of the column lattice: `Z^rows / span(columns)`, returned as
/// `(free rank, torsion factors > 1)`.
pub fn cokernel_of_columns(m: &IntMatrix) -> (usize, Vec<Int>) {
    let diag = snf(m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .iter()
        .filter(|d| **d > Int::from(1))
        .cloned()
        .collect();
    (m.rows() - rank, torsion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn di(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn diagonal_example() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(snf(&m), di(&[1, 6]));
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(snf(&IntMatrix::identity(3)), di(&[1, 1, 1]));
    }

    #[test]
    fn central_quotient_matrix() {
        // relators p1·a + q1·h, p2·b + q2·h, τ1·h, τ2·(a+b) as columns over
        // generators (a, b, h), with p1 = p2 = 2, τ1 = τ2 = 1:
        let m = IntMatrix::from_rows(&[vec![2, 0, 0, 1], vec![0, 2, 0, 1], vec![1, 1, 1, 0]]);
        let diag = snf(&m);
        assert!(diag
            .iter()
            .all(|d| *d == Int::from(1) || *d == Int::from(2)));
        let (free, torsion) = cokernel_of_columns(&m);
        assert_eq!(free, 0);
        assert!(torsion.len() <= 2);
    }

    #[test]
    fn transforms_are_consistent() {
        let m = IntMatrix::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let dec = snf_with_transform(&m);
        assert_eq!(dec.u.mul(&m).mul(&dec.v), dec.d);
        assert_eq!(dec.diagonal(), di(&[1, 3, 21, 0]));
        // divisibility chain
        let diag = dec.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }
}
