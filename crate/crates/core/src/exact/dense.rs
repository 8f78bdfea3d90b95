use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{Field, Rational};
use super::sparse::SparseVec;

/// Dense rectangular matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

pub type RatMat = Mat<Rational>;

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &F) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].add_ref(v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows);
        let mut r = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.add_at(i, j, &a.mul_ref(b));
                    }
                }
            }
        }
        r
    }

    pub fn add(&self, o: &Mat<F>) -> Mat<F> {
        self.axpy(&F::one(), o)
    }

    pub fn sub(&self, o: &Mat<F>) -> Mat<F> {
        self.axpy(&-F::one(), o)
    }

    /// `self + c * o`.
    pub fn axpy(&self, c: &F, o: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(&b.mul_ref(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Mat<F> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn commutator(&self, o: &Mat<F>) -> Mat<F> {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Mat<F> {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    /// Square sub-block on rows/columns `lo..hi`.
    pub fn block(&self, lo: usize, hi: usize) -> Mat<F> {
        let n = hi - lo;
        let mut b = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, self.get(lo + i, lo + j).clone());
            }
        }
        b
    }

    /// Row-major flattening as a sparse vector.
    pub fn to_vec(&self) -> SparseVec<F> {
        SparseVec::from_dense(&self.data)
    }

    pub fn from_vec(rows: usize, cols: usize, v: &SparseVec<F>) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for (k, x) in v.iter() {
            m.data[k] = x.clone();
        }
        m
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<&F> {
        self.data.iter().find(|x| !x.is_zero())
    }

    /// Sparse `(row, col, value)` listing.
    pub fn nonzeros(&self) -> Vec<(usize, usize, F)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.push((i, j, x.clone()));
                }
            }
        }
        out
    }
}

impl<F: Field> Mat<F> {
    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut e = super::linalg::Echelon::new(2 * n);
        for i in 0..n {
            let row = SparseVec::from_pairs(
                self.row(i).iter().enumerate().map(|(j, x)| (j, x.clone())).chain([(n + i, F::one())]),
            );
            e.insert(&row);
        }
        let r = e.into_rref();
        if r.rank() != n || r.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            for (c, x) in row.iter() {
                if c >= n {
                    inv.set(p, c - n, x.clone());
                }
            }
        }
        Some(inv)
    }
}

impl RatMat {
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn commutator_of_elementary_matrices() {
        let mut e12 = RatMat::zeros(2, 2);
        e12.set(0, 1, int(1));
        let mut e21 = RatMat::zeros(2, 2);
        e21.set(1, 0, int(1));
        let h = e12.commutator(&e21);
        assert_eq!(h, RatMat::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(-1)]]));
        assert_eq!(h.trace(), int(0));
    }

    #[test]
    fn inverse_of_2x2() {
        let a = RatMat::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(1)]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(RatMat::zeros(2, 2).inverse().is_none());
    }
}
