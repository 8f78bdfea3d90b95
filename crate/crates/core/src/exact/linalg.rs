use super::scalar::{Field, Fp, Rational, PRIME_A, PRIME_B};
use super::sparse::{RatMatrix, SparseMatrix, SparseVec};

/// Incrementally built row echelon form with normalized pivot rows.
///
/// Pivot rows have leading coefficient 1 at their pivot column; a row's
/// entries all sit at columns ≥ its pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivot_row: vec![None; ncols], rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let Some(start) = v.leading().map(|(i, _)| i) else {
            return SparseVec::new();
        };
        if v.iter().all(|(i, _)| self.pivot_row[i].is_none()) {
            return v.clone();
        }
        let mut work: Vec<F> = vec![F::zero(); self.ncols];
        for (i, x) in v.iter() {
            work[i] = x.clone();
        }
        for c in start..self.ncols {
            if work[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = work[c].clone();
                for (j, y) in self.rows[r].iter() {
                    work[j] = work[j].sub_ref(&f.mul_ref(y));
                }
            }
        }
        SparseVec::from_sorted_unchecked(
            work.into_iter().enumerate().skip(start).filter(|(_, x)| !x.is_zero()).collect(),
        )
    }

    /// Insert a row; returns whether it increased the rank.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let rem = self.reduce(v);
        self.push_reduced(rem)
    }

    fn push_reduced(&mut self, rem: SparseVec<F>) -> bool {
        let Some((c, lead)) = rem.leading() else {
            return false;
        };
        let inv = lead.inverse().expect("nonzero leading entry");
        let row = rem.scale(&inv);
        self.pivot_row[c] = Some(self.rows.len());
        self.pivots.push(c);
        self.rows.push(row);
        true
    }

    pub fn into_rref(self) -> Rref<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut rows: Vec<SparseVec<F>> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&r| self.pivots[r]).collect();
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let pivot_row = rows[k].clone();
            for j in 0..k {
                let f = rows[j].get(c);
                if !f.is_zero() {
                    rows[j] = rows[j].axpy(&-f, &pivot_row);
                }
            }
        }
        Rref { ncols: self.ncols, pivots, rows }
    }
}

/// Reduced row echelon form: pivots strictly increasing, left to right.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec<F>>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel basis, one vector per free column (ascending), with a 1 at
    /// that column and zeros at the other free columns.
    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut parts: Vec<Vec<(usize, F)>> = free.iter().map(|&f| vec![(f, F::one())]).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row.iter() {
                if c != p {
                    parts[slot[c]].push((p, -x.clone()));
                }
            }
        }
        parts.into_iter().map(SparseVec::from_pairs).collect()
    }
}

pub fn rref<F: Field>(m: &SparseMatrix<F>) -> Rref<F> {
    let mut e = Echelon::new(m.cols);
    for r in &m.rows {
        e.insert(r);
    }
    e.into_rref()
}

pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    let mut e = Echelon::new(m.cols);
    for r in &m.rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of the null space of `m`, deterministic (RREF, pivots left to right).
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    rref(m).kernel_basis()
}

/// Some solution `x` of `m x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(m: &SparseMatrix<F>, b: &SparseVec<F>) -> Option<SparseVec<F>> {
    let n = m.cols;
    let mut e = Echelon::new(n + 1);
    for (i, r) in m.rows.iter().enumerate() {
        let bi = b.get(i);
        let mut pairs: Vec<(usize, F)> = r.iter().map(|(c, x)| (c, x.clone())).collect();
        if !bi.is_zero() {
            pairs.push((n, bi));
        }
        e.insert(&SparseVec::from_pairs(pairs));
    }
    let r = e.into_rref();
    if r.pivots.contains(&n) {
        return None;
    }
    Some(SparseVec::from_pairs(r.rows.iter().zip(&r.pivots).map(|(row, &p)| (p, row.get(n)))))
}

/// Expresses vectors as combinations of a fixed list of vectors.
#[derive(Clone, Debug)]
pub struct SpanSolver<F: Field> {
    dim: usize,
    count: usize,
    ech: Echelon<F>,
}

impl<F: Field> SpanSolver<F> {
    pub fn new(dim: usize, vectors: &[SparseVec<F>]) -> Self {
        let count = vectors.len();
        let mut ech = Echelon::new(dim + count);
        for (i, v) in vectors.iter().enumerate() {
            let row = SparseVec::from_pairs(v.iter().map(|(c, x)| (c, x.clone())).chain([(dim + i, F::one())]));
            let rem = ech.reduce(&row);
            if rem.leading().is_some_and(|(c, _)| c < dim) {
                ech.push_reduced(rem);
            }
        }
        SpanSolver { dim, count, ech }
    }

    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.express(v).is_some()
    }

    /// Coefficients `a` with `v = Σ a_i vectors[i]`, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let rem = self.ech.reduce(v);
        if rem.leading().is_some_and(|(c, _)| c < self.dim) {
            return None;
        }
        Some(rem.window(self.dim, self.dim + self.count).scale(&-F::one()))
    }
}

/// Rank of a set of vectors.
pub fn span_rank<F: Field>(dim: usize, vectors: &[SparseVec<F>]) -> usize {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Whether two families span the same subspace.
pub fn same_span<F: Field>(dim: usize, a: &[SparseVec<F>], b: &[SparseVec<F>]) -> bool {
    let ra = span_rank(dim, a);
    let rb = span_rank(dim, b);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && span_rank(dim, &all) == ra
}

fn rank_mod<const P: u64>(m: &RatMatrix) -> Option<usize> {
    let mut rows = Vec::with_capacity(m.rows.len());
    for r in &m.rows {
        let mut pairs = Vec::with_capacity(r.nnz());
        for (c, x) in r.iter() {
            pairs.push((c, Fp::<P>::from_rational(x)?));
        }
        rows.push(SparseVec::from_pairs(pairs));
    }
    Some(rank(&SparseMatrix::from_rows(m.cols, rows)))
}

/// Modular rank over two 62-bit primes; `None` if a denominator vanishes
/// modulo either prime or the two ranks disagree.
pub fn modular_rank(m: &RatMatrix) -> Option<usize> {
    let (a, b) = rayon::join(|| rank_mod::<PRIME_A>(m), || rank_mod::<PRIME_B>(m));
    match (a, b) {
        (Some(a), Some(b)) if a == b => Some(a),
        _ => None,
    }
}

/// Exact rational kernel for rational matrices (alias kept for readability at call sites).
pub fn rat_kernel(m: &RatMatrix) -> Vec<SparseVec<Rational>> {
    kernel_basis(m)
}
