//! Dense matrices over the coefficient field.

use rand::Rng;

use crate::polyring::{Coeff, FieldSpec};

/// Row-major `rows × cols` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Coeff>,
}

impl Mat {
    pub fn zeros(k: &FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![k.zero(); rows * cols],
        }
    }

    pub fn identity(k: &FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(k, n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_columns(k: &FieldSpec, rows: usize, cols: &[Vec<Coeff>]) -> Mat {
        let mut m = Mat::zeros(k, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, k: &FieldSpec, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let v = k.add(out.get(i, j), &k.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, k: &FieldSpec, other: &Mat) -> Mat {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect();
        Mat { data, ..*self }
    }

    pub fn sub(&self, k: &FieldSpec, other: &Mat) -> Mat {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.sub(a, b)).collect();
        Mat { data, ..*self }
    }

    pub fn scale(&self, k: &FieldSpec, c: &Coeff) -> Mat {
        let data = self.data.iter().map(|a| k.mul(a, c)).collect();
        Mat { data, ..*self }
    }

    pub fn pow(&self, k: &FieldSpec, e: u32) -> Mat {
        let mut out = Mat::identity(k, self.rows);
        for _ in 0..e {
            out = out.mul(k, self);
        }
        out
    }

    /// Block `[r0, r1) × [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            for j in c0..c1 {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: r1 - r0,
            cols: c1 - c0,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, k: &FieldSpec) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = k.inv(self.get(r, c));
            for j in c..self.cols {
                let v = k.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = k.sub(self.get(i, j), &k.mul(&f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, k: &FieldSpec) -> usize {
        self.clone().rref(k).len()
    }

    /// Basis of `{ v | self · v = 0 }`.
    pub fn nullspace(&self, k: &FieldSpec) -> Vec<Vec<Coeff>> {
        let mut m = self.clone();
        let pivots = m.rref(k);
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![k.zero(); self.cols];
            v[free] = k.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }

    /// Basis of the column space, taken from the original columns.
    pub fn column_space(&self, k: &FieldSpec) -> Vec<Vec<Coeff>> {
        let pivots = self.clone().rref(k);
        pivots.iter().map(|&j| self.column(j)).collect()
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, k: &FieldSpec, b: &[Coeff]) -> Option<Vec<Coeff>> {
        let mut aug = Mat::zeros(k, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref(k);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![k.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self, k: &FieldSpec) -> Option<Mat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Mat::zeros(k, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, k.one());
        }
        let pivots = aug.rref(k);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self, k: &FieldSpec) -> bool {
        self.rows == self.cols && self.rank(k) == self.rows
    }
}

/// A small random field element; nonzero with high probability.
pub fn random_coeff(k: &FieldSpec, rng: &mut impl Rng) -> Coeff {
    match k {
        FieldSpec::Rationals => k.from_i64(rng.gen_range(-4..=4)),
        FieldSpec::Prime(p) => k.from_u64(rng.gen_range(0..*p as u64)),
    }
}

/// `Σ r_t basis_t` with random `r_t`.
pub fn random_combination(k: &FieldSpec, basis: &[Mat], rows: usize, cols: usize, rng: &mut impl Rng) -> Mat {
    let mut out = Mat::zeros(k, rows, cols);
    for b in basis {
        out = out.add(k, &b.scale(k, &random_coeff(k, rng)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Mat {
        let k = FieldSpec::Rationals;
        let mut m = Mat::zeros(&k, rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, k.from_i64(v));
            }
        }
        m
    }

    #[test]
    fn rank_nullspace_inverse() {
        let k = FieldSpec::Rationals;
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(&k), 2);
        let ns = a.nullspace(&k);
        assert_eq!(ns.len(), 1);
        let v = Mat::from_columns(&k, 3, &ns);
        assert!(a.mul(&k, &v).is_zero());
        let b = q(&[&[2, 1], &[1, 1]]);
        let inv = b.inverse(&k).unwrap();
        assert_eq!(b.mul(&k, &inv), Mat::identity(&k, 2));
        assert!(a.inverse(&k).is_none());
    }

    #[test]
    fn solve_over_prime_field() {
        let k = FieldSpec::Prime(7);
        let mut a = Mat::zeros(&k, 2, 2);
        a.set(0, 0, k.from_i64(3));
        a.set(1, 1, k.from_i64(5));
        let x = a.solve(&k, &[k.one(), k.from_i64(2)]).unwrap();
        assert_eq!(k.mul(&x[0], &k.from_i64(3)), k.one());
        assert_eq!(k.mul(&x[1], &k.from_i64(5)), k.from_i64(2));
    }
}
