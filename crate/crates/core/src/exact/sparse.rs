use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::scalar::{Field, Rational};

/// Sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparseVec<F: Field> {
    entries: Vec<(usize, F)>,
}

pub type RatVector = SparseVec<Rational>;

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut m: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in pairs {
            let e = m.entry(i).or_insert_with(F::zero);
            *e = e.add_ref(&v);
        }
        SparseVec { entries: m.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut d = vec![F::zero(); n];
        for (i, v) in &self.entries {
            d[*i] = v.clone();
        }
        d
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul_ref(c))).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, other.entries[b].1.mul_ref(c)));
                b += 1;
            } else {
                let v = self.entries[a].1.add_ref(&other.entries[b].1.mul_ref(c));
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-F::one(), other)
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc = acc.add_ref(&self.entries[a].1.mul_ref(&other.entries[b].1));
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Shift all indices by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Keep entries with index in `lo..hi`, re-based to start at 0.
    pub fn window(&self, lo: usize, hi: usize) -> Self {
        SparseVec {
            entries: self.entries.iter().filter(|(i, _)| *i >= lo && *i < hi).map(|(i, v)| (i - lo, v.clone())).collect(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (*i, f(v))))
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, F)>) -> Self {
        SparseVec { entries }
    }
}

impl Serialize for SparseVec<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (i, v) in &self.entries {
            seq.serialize_element(&(i, v.to_string()))?;
        }
        seq.end()
    }
}

/// Sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    pub cols: usize,
    pub rows: Vec<SparseVec<F>>,
}

pub type RatMatrix = SparseMatrix<Rational>;

impl<F: Field> SparseMatrix<F> {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec<F>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        SparseMatrix { cols, rows }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        SparseMatrix { cols, rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, r: SparseVec<F>) {
        self.rows.push(r);
    }

    pub fn mul_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        SparseVec::from_pairs(self.rows.iter().enumerate().map(|(i, r)| (i, r.dot(v))))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> SparseMatrix<G> {
        SparseMatrix { cols: self.cols, rows: self.rows.iter().map(|r| r.map(f)).collect() }
    }
}
