//! Tanaka prolongation, degree-zero derivations, commutants, invariant forms
//! and invariant complex structures.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg::SpanSolver;
use crate::exact::scalar::rational_sqrt;
use crate::exact::{int, rat, Echelon, RatMat, RatVector, Rational, SparseVec};
use crate::nilpotent::GradedNilpotent;

/// A linear space of square matrices, given by an independent basis.
///
/// Matrices follow the convention `M[b][c]` = coefficient of `e_c` in `A(e_b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoSpace {
    pub ambient_dim: usize,
    pub basis: Vec<RatMat>,
}

impl EndoSpace {
    /// Keeps an independent subfamily of `mats`, in order.
    pub fn new(ambient_dim: usize, mats: Vec<RatMat>) -> Self {
        let mut e = Echelon::new(ambient_dim * ambient_dim);
        let basis = mats
            .into_iter()
            .filter(|m| {
                assert_eq!((m.rows, m.cols), (ambient_dim, ambient_dim));
                e.insert(&m.to_vec())
            })
            .collect();
        EndoSpace { ambient_dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vectors(&self) -> Vec<RatVector> {
        self.basis.iter().map(|m| m.to_vec()).collect()
    }

    /// Restrict every basis matrix to the invariant coordinate block `idx`.
    pub fn restrict(&self, idx: &[usize]) -> EndoSpace {
        let mats = self
            .basis
            .iter()
            .map(|m| {
                let mut r = RatMat::zeros(idx.len(), idx.len());
                for (i, &a) in idx.iter().enumerate() {
                    for (j, &b) in idx.iter().enumerate() {
                        r.set(i, j, m.get(a, b).clone());
                    }
                }
                r
            })
            .collect();
        EndoSpace::new(idx.len(), mats)
    }

    pub fn contains(&self, m: &RatMat) -> bool {
        SpanSolver::new(self.ambient_dim * self.ambient_dim, &self.vectors()).contains(&m.to_vec())
    }

    /// Coefficients of `m` in the basis.
    pub fn express(&self, m: &RatMat) -> Option<RatVector> {
        SpanSolver::new(self.ambient_dim * self.ambient_dim, &self.vectors()).express(&m.to_vec())
    }

    pub fn same_span(&self, other: &EndoSpace) -> bool {
        self.ambient_dim == other.ambient_dim
            && crate::exact::linalg::same_span(self.ambient_dim * self.ambient_dim, &self.vectors(), &other.vectors())
    }

    pub fn is_closed_under_commutator(&self) -> bool {
        let s = SpanSolver::new(self.ambient_dim * self.ambient_dim, &self.vectors());
        self.basis
            .iter()
            .enumerate()
            .all(|(i, a)| self.basis[i + 1..].iter().all(|b| s.contains(&a.commutator(b).to_vec())))
    }

    pub fn is_closed_under_product(&self) -> bool {
        let s = SpanSolver::new(self.ambient_dim * self.ambient_dim, &self.vectors());
        self.basis.iter().all(|a| self.basis.iter().all(|b| s.contains(&a.mul(b).to_vec())))
    }
}

/// Degree-zero derivations of `n`: block-diagonal matrices `A` with
/// `A[X, Y] = [AX, Y] + [X, AY]`.
pub fn compute_n0(n: &GradedNilpotent) -> EndoSpace {
    let dim = n.dim();
    let g = n.grading();
    let mut var = BTreeMap::new();
    for b in 0..dim {
        for c in 0..dim {
            if g[b] == g[c] {
                let k = var.len();
                var.insert((b, c), k);
            }
        }
    }
    let nvars = var.len();
    let mut e = Echelon::new(nvars);
    for a in 0..dim {
        for b in a + 1..dim {
            // Σ_D c^D_{ab} A_D^E − Σ_D A_a^D c^E_{Db} − Σ_D A_b^D c^E_{aD} = 0, for each E.
            let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
            for (d, c) in n.bracket(a, b).iter() {
                for f in 0..dim {
                    if let Some(&v) = var.get(&(d, f)) {
                        rows.entry(f).or_default().push((v, c.clone()));
                    }
                }
            }
            for d in 0..dim {
                if let Some(&v) = var.get(&(a, d)) {
                    for (f, c) in n.bracket(d, b).iter() {
                        rows.entry(f).or_default().push((v, -c.clone()));
                    }
                }
                if let Some(&v) = var.get(&(b, d)) {
                    for (f, c) in n.bracket(a, d).iter() {
                        rows.entry(f).or_default().push((v, -c.clone()));
                    }
                }
            }
            for (_, r) in rows {
                e.insert(&SparseVec::from_pairs(r));
            }
        }
    }
    let mats = e
        .into_rref()
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut m = RatMat::zeros(dim, dim);
            for (&(b, c), &k) in &var {
                m.set(b, c, v.get(k));
            }
            m
        })
        .collect();
    EndoSpace::new(dim, mats)
}

/// Graded Lie algebra `n₋ ⊕ n₀ ⊕ n₁ ⊕ …` with an explicit bracket table.
///
/// Global basis: the basis of `n₋` first, then each non-negative layer in turn.
/// A non-negative element is stored by its images of the `n₋` basis vectors.
#[derive(Clone, Debug)]
pub struct Prolongation {
    neg: GradedNilpotent,
    /// `layers[k][i][a]` = image of `e_a` (a in `n₋`) under the `i`-th basis element of `n_k`.
    layers: Vec<Vec<Vec<RatVector>>>,
    grading: Vec<i32>,
    brackets: BTreeMap<(usize, usize), RatVector>,
    terminated: bool,
    max_degree: usize,
}

struct LayerSystem {
    /// Column of the unknown "component v of f(e_a)".
    col: Vec<BTreeMap<usize, usize>>,
    ncols: usize,
    free: Vec<usize>,
}

impl Prolongation {
    pub fn neg_part(&self) -> &GradedNilpotent {
        &self.neg
    }

    pub fn grading(&self) -> &[i32] {
        &self.grading
    }

    pub fn total_dim(&self) -> usize {
        self.grading.len()
    }

    /// Whether the last computed layer vanished.
    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `(degree, dim)` for every degree from `−depth` up to the top nonzero layer.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        let lo = self.grading.iter().copied().min().unwrap_or(0);
        let hi = self.grading.iter().copied().max().unwrap_or(0);
        (lo..=hi).map(|d| (d, self.layer_dim(d))).collect()
    }

    pub fn layer_dim(&self, degree: i32) -> usize {
        self.grading.iter().filter(|&&g| g == degree).count()
    }

    pub fn layer_indices(&self, degree: i32) -> Vec<usize> {
        (0..self.total_dim()).filter(|&i| self.grading[i] == degree).collect()
    }

    /// The dimension string, e.g. `8+16+30+16+8 = 78`.
    pub fn dimension_string(&self) -> String {
        let parts: Vec<String> = self.dims().iter().map(|(_, d)| d.to_string()).collect();
        format!("{} = {}", parts.join("+"), self.total_dim())
    }

    pub fn bracket(&self, a: usize, b: usize) -> RatVector {
        if a == b {
            return SparseVec::new();
        }
        if a < b {
            self.brackets.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            self.brackets.get(&(b, a)).map(|v| v.scale(&int(-1))).unwrap_or_default()
        }
    }

    pub fn bracket_vec(&self, x: &RatVector, y: &RatVector) -> RatVector {
        bracket_with(&self.brackets, x, y)
    }

    /// `n₀` acting on `n₋`, as matrices.
    pub fn n0(&self) -> EndoSpace {
        let dim = self.neg.dim();
        let mats = self.layers.first().map_or(Vec::new(), |l| {
            l.iter()
                .map(|imgs| {
                    let mut m = RatMat::zeros(dim, dim);
                    for (a, v) in imgs.iter().enumerate() {
                        for (c, x) in v.iter() {
                            m.set(a, c, x.clone());
                        }
                    }
                    m
                })
                .collect()
        });
        EndoSpace::new(dim, mats)
    }

    /// Whether `dim g_k = dim g_{−k}` for every `k`.
    pub fn is_graded_symmetric(&self) -> bool {
        self.dims().iter().all(|&(d, n)| self.layer_dim(-d) == n)
    }

    /// Exhaustive Jacobi check over all basis triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.total_dim();
        if !self.terminated {
            return Ok(());
        }
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.bracket(a, b);
                for c in b + 1..n {
                    let j = self
                        .bracket_vec(&ab, &SparseVec::unit(c))
                        .add(&self.bracket_vec(&self.bracket(b, c), &SparseVec::unit(a)))
                        .add(&self.bracket_vec(&self.bracket(c, a), &SparseVec::unit(b)));
                    if !j.is_zero() {
                        return Err(Error::Inconsistent(format!("Jacobi fails on basis triple ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `[g_i, g_j] ⊆ g_{i+j}` holds in the bracket table.
    pub fn respects_grading(&self) -> bool {
        self.brackets.iter().all(|((a, b), v)| v.iter().all(|(e, _)| self.grading[e] == self.grading[*a] + self.grading[*b]))
    }

    /// Matrix of `ad(e_a)`, columns indexed by the input basis vector.
    pub fn ad(&self, a: usize) -> RatMat {
        let n = self.total_dim();
        let mut m = RatMat::zeros(n, n);
        for b in 0..n {
            for (e, x) in self.bracket(a, b).iter() {
                m.set(e, b, x.clone());
            }
        }
        m
    }

    /// Killing form `B(e_a, e_b) = tr(ad e_a ∘ ad e_b)`.
    pub fn killing_form(&self) -> RatMat {
        let n = self.total_dim();
        // sparse ad columns: ad[a][b] = [e_a, e_b]
        let ad: Vec<Vec<RatVector>> = (0..n).map(|a| (0..n).map(|b| self.bracket(a, b)).collect()).collect();
        let mut k = RatMat::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                // tr(ad_a ad_b) = Σ_c coefficient of e_c in [e_a, [e_b, e_c]]
                let mut t = Rational::zero();
                for c in 0..n {
                    for (e, x) in ad[b][c].iter() {
                        let y = ad[a][e].get(c);
                        if !y.is_zero() {
                            t += x * &y;
                        }
                    }
                }
                k.set(a, b, t.clone());
                k.set(b, a, t);
            }
        }
        k
    }

    /// Sylvester signature `(positive, negative, zero)` of the Killing form.
    pub fn killing_signature(&self) -> (usize, usize, usize) {
        signature(&self.killing_form())
    }

    /// Dimension of the centre of `n₀`.
    pub fn n0_center_dim(&self) -> usize {
        let idx = self.layer_indices(0);
        if idx.is_empty() {
            return 0;
        }
        let mut e = Echelon::new(idx.len());
        for &b in &idx {
            // rows: for each output coordinate, Σ_i x_i [e_i, e_b]
            let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
            for (i, &a) in idx.iter().enumerate() {
                for (c, x) in self.bracket(a, b).iter() {
                    rows.entry(c).or_default().push((i, x.clone()));
                }
            }
            for (_, r) in rows {
                e.insert(&SparseVec::from_pairs(r));
            }
        }
        idx.len() - e.rank()
    }

    pub fn to_json(&self) -> ProlongationJson {
        let mut brackets = Vec::new();
        for ((a, b), v) in &self.brackets {
            for (e, c) in v.iter() {
                brackets.push((*a, *b, e, c.to_string()));
            }
        }
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(k, l)| LayerJson {
                degree: k as i32,
                dim: l.len(),
                elements: l
                    .iter()
                    .map(|imgs| {
                        imgs.iter()
                            .enumerate()
                            .flat_map(|(a, v)| v.iter().map(move |(e, c)| (a, e, c.to_string())).collect::<Vec<_>>())
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        ProlongationJson {
            dims: self.dims().into_iter().map(|(d, n)| (d.to_string(), n)).collect(),
            total_dim: self.total_dim(),
            terminated: self.terminated,
            grading: self.grading.clone(),
            layers,
            brackets,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerJson {
    pub degree: i32,
    pub dim: usize,
    /// Each element as `[a, e, "coef"]` triples: coefficient of `e_e` in the image of `e_a`.
    pub elements: Vec<Vec<(usize, usize, String)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProlongationJson {
    pub dims: BTreeMap<String, usize>,
    pub total_dim: usize,
    pub terminated: bool,
    pub grading: Vec<i32>,
    pub layers: Vec<LayerJson>,
    pub brackets: Vec<(usize, usize, usize, String)>,
}

fn bracket_of(table: &BTreeMap<(usize, usize), RatVector>, a: usize, b: usize) -> Option<RatVector> {
    if a == b {
        None
    } else if a < b {
        table.get(&(a, b)).cloned()
    } else {
        table.get(&(b, a)).map(|v| v.scale(&int(-1)))
    }
}

fn bracket_with(table: &BTreeMap<(usize, usize), RatVector>, x: &RatVector, y: &RatVector) -> RatVector {
    let mut acc = SparseVec::new();
    for (a, xa) in x.iter() {
        for (b, yb) in y.iter() {
            if let Some(v) = bracket_of(table, a, b) {
                acc = acc.axpy(&(xa * yb), &v);
            }
        }
    }
    acc
}

/// Tanaka prolongation of `n` up to degree `max_degree`.
pub fn prolong(n: &GradedNilpotent, max_degree: usize) -> Prolongation {
    let nd = n.dim();
    let mut grading: Vec<i32> = n.grading().to_vec();
    let mut table: BTreeMap<(usize, usize), RatVector> = BTreeMap::new();
    for a in 0..nd {
        for b in a + 1..nd {
            let v = n.bracket(a, b);
            if !v.is_zero() {
                table.insert((a, b), v);
            }
        }
    }
    let mut layers: Vec<Vec<Vec<RatVector>>> = Vec::new();
    let mut systems: Vec<LayerSystem> = Vec::new();
    let mut offsets: Vec<usize> = Vec::new();
    let mut terminated = false;
    for k in 0..=max_degree as i32 {
        let indices_of = |d: i32, grading: &[i32]| -> Vec<usize> { (0..grading.len()).filter(|&i| grading[i] == d).collect() };
        // Unknown columns: component v of f(e_a), v in degree k + deg(a).
        let mut col = vec![BTreeMap::new(); nd];
        let mut ncols = 0;
        for (a, c) in col.iter_mut().enumerate() {
            for v in indices_of(k + n.grading()[a], &grading) {
                c.insert(v, ncols);
                ncols += 1;
            }
        }
        // f([e_a, e_b]) − [f e_a, e_b] − [e_a, f e_b] = 0 for a < b.
        let mut e = Echelon::new(ncols);
        for a in 0..nd {
            for b in a + 1..nd {
                let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
                for (d, c) in n.bracket(a, b).iter() {
                    for (&v, &j) in &col[d] {
                        rows.entry(v).or_default().push((j, c.clone()));
                    }
                }
                for (&v, &j) in &col[a] {
                    if let Some(w) = bracket_of(&table, v, b) {
                        for (t, c) in w.iter() {
                            rows.entry(t).or_default().push((j, -c.clone()));
                        }
                    }
                }
                for (&v, &j) in &col[b] {
                    if let Some(w) = bracket_of(&table, a, v) {
                        for (t, c) in w.iter() {
                            rows.entry(t).or_default().push((j, -c.clone()));
                        }
                    }
                }
                for (_, r) in rows {
                    e.insert(&SparseVec::from_pairs(r));
                }
            }
        }
        let rref = e.into_rref();
        let free = rref.free_columns();
        let kernel = rref.kernel_basis();
        let offset = grading.len();
        let mut layer = Vec::with_capacity(kernel.len());
        for kv in &kernel {
            let imgs: Vec<RatVector> =
                col.iter().map(|c| SparseVec::from_pairs(c.iter().map(|(&v, &j)| (v, kv.get(j))))).collect();
            layer.push(imgs);
        }
        for (i, imgs) in layer.iter().enumerate() {
            for (a, v) in imgs.iter().enumerate() {
                if !v.is_zero() {
                    table.insert((a, offset + i), v.scale(&int(-1)));
                }
            }
        }
        grading.extend(std::iter::repeat_n(k, layer.len()));
        offsets.push(offset);
        systems.push(LayerSystem { col, ncols, free });
        let empty = layer.is_empty();
        layers.push(layer);
        // Brackets among non-negative elements of total degree k.
        for i in 0..=k / 2 {
            let j = k - i;
            let (li, lj) = (&layers[i as usize], &layers[j as usize]);
            for p in 0..li.len() {
                let q0 = if i == j { p + 1 } else { 0 };
                for q in q0..lj.len() {
                    let (ga, gb) = (offsets[i as usize] + p, offsets[j as usize] + q);
                    let imgs = nonneg_bracket(&table, nd, ga, gb);
                    let v = express_in_layer(&systems[k as usize], &imgs);
                    debug_assert!(reconstruct(&layers[k as usize], nd, &v) == imgs, "bracket leaves the layer");
                    let global = v.shifted(offsets[k as usize]);
                    if !global.is_zero() {
                        let (x, y, g) = if ga < gb { (ga, gb, global) } else { (gb, ga, global.scale(&int(-1))) };
                        table.insert((x, y), g);
                    }
                }
            }
        }
        if empty {
            terminated = true;
            break;
        }
    }
    Prolongation { neg: n.clone(), layers, grading, brackets: table, terminated, max_degree }
}

/// Images `[[A, B], e_x] = [A, [B, e_x]] − [B, [A, e_x]]` for all `x` in `n₋`.
fn nonneg_bracket(table: &BTreeMap<(usize, usize), RatVector>, nd: usize, a: usize, b: usize) -> Vec<RatVector> {
    (0..nd)
        .map(|x| {
            let ex = SparseVec::unit(x);
            let bx = bracket_with(table, &SparseVec::unit(b), &ex);
            let ax = bracket_with(table, &SparseVec::unit(a), &ex);
            bracket_with(table, &SparseVec::unit(a), &bx).sub(&bracket_with(table, &SparseVec::unit(b), &ax))
        })
        .collect()
}

fn express_in_layer(sys: &LayerSystem, imgs: &[RatVector]) -> RatVector {
    let mut slot = vec![usize::MAX; sys.ncols];
    for (k, &f) in sys.free.iter().enumerate() {
        slot[f] = k;
    }
    let mut out = Vec::new();
    for (a, v) in imgs.iter().enumerate() {
        for (t, c) in v.iter() {
            if let Some(&j) = sys.col[a].get(&t) {
                if slot[j] != usize::MAX {
                    out.push((slot[j], c.clone()));
                }
            }
        }
    }
    SparseVec::from_pairs(out)
}

fn reconstruct(layer: &[Vec<RatVector>], nd: usize, coords: &RatVector) -> Vec<RatVector> {
    let mut out = vec![SparseVec::new(); nd];
    for (i, c) in coords.iter() {
        for (a, v) in layer[i].iter().enumerate() {
            out[a] = out[a].axpy(c, v);
        }
    }
    out
}

/// Matrices commuting with every element of `space`.
pub fn commutant(space: &EndoSpace) -> EndoSpace {
    let n = space.ambient_dim;
    let var = |i: usize, j: usize| i * n + j;
    let mut e = Echelon::new(n * n);
    for a in &space.basis {
        // (T A − A T)[i][j] = Σ_r T[i][r] A[r][j] − A[i][r] T[r][j]
        for i in 0..n {
            for j in 0..n {
                let mut row = Vec::new();
                for r in 0..n {
                    let x = a.get(r, j);
                    if !x.is_zero() {
                        row.push((var(i, r), x.clone()));
                    }
                    let y = a.get(i, r);
                    if !y.is_zero() {
                        row.push((var(r, j), -y.clone()));
                    }
                }
                e.insert(&SparseVec::from_pairs(row));
            }
        }
    }
    let mats = e.into_rref().kernel_basis().iter().map(|v| RatMat::from_vec(n, n, v)).collect();
    EndoSpace::new(n, mats)
}

/// An invariant complex structure found in a commutant.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure {
    pub j: RatMat,
    /// Whether `±J` are the only solutions of `J² = −id` in the space.
    pub unique_up_to_sign: bool,
}

/// Flip the sign so the first nonzero entry in row-major order is positive.
pub fn normalize_sign(m: &RatMat) -> RatMat {
    match m.first_nonzero() {
        Some(x) if x.is_negative() => m.scale(&int(-1)),
        _ => m.clone(),
    }
}

/// Solve `J² = −id` for `J = a·id + b·K` when `K² = p K + q id`.
fn solve_in_plane(k: &RatMat) -> Option<RatMat> {
    let n = k.rows;
    let id = RatMat::identity(n);
    let k2 = k.mul(k);
    let plane = EndoSpace { ambient_dim: n, basis: vec![k.clone(), id.clone()] };
    let pq = plane.express(&k2)?;
    let (p, q) = (pq.get(0), pq.get(1));
    // a = −b p / 2 and b² (p²/4 + q) = −1
    let disc = &p * &p * rat(1, 4) + q;
    if !disc.is_negative() {
        return None;
    }
    let b = rational_sqrt(&(-Rational::one() / disc))?;
    let a = -&b * &p * rat(1, 2);
    let j = id.scale(&a).add(&k.scale(&b));
    (j.mul(&j) == id.scale(&int(-1))).then_some(j)
}

/// Search a commutant for `J` with `J² = −id`, normalized by [`normalize_sign`].
pub fn find_complex_structure(comm: &EndoSpace) -> Option<ComplexStructure> {
    let n = comm.ambient_dim;
    let id = RatMat::identity(n);
    let has_id = comm.contains(&id);
    let r = comm.dim();
    let others: Vec<&RatMat> = comm.basis.iter().filter(|m| !proportional(m, &id)).collect();
    let candidates: Vec<RatMat> = if r <= 2 {
        others.iter().map(|m| (*m).clone()).collect()
    } else {
        let mut c: Vec<RatMat> = others.iter().map(|m| (*m).clone()).collect();
        for (i, a) in others.iter().enumerate() {
            for b in &others[i + 1..] {
                c.push(a.add(b));
                c.push(a.sub(b));
            }
        }
        c
    };
    for k in candidates {
        if let Some(j) = solve_in_plane(&k) {
            if !comm.contains(&j) {
                continue;
            }
            let unique = (r == 2 && has_id) || r == 1;
            return Some(ComplexStructure { j: normalize_sign(&j), unique_up_to_sign: unique });
        }
    }
    None
}

/// Default trace factor `2|s| / Σ_j |j| dim n_j` for the stratum of degree `s`:
/// the grading element then satisfies the equation.
pub fn default_trace_factor(n: &GradedNilpotent, stratum_degree: i32) -> Rational {
    let total: i64 = n.grading().iter().map(|g| g.abs() as i64).sum();
    rat(2 * stratum_degree.abs() as i64, total)
}

/// Symmetric `g` on the coordinate block `stratum` with
/// `A_s g + g A_sᵀ = factor · Tr(A) · g` for every `A` in `n0`.
pub fn invariant_symmetric_form(n0: &EndoSpace, stratum: &[usize], factor: &Rational) -> Vec<RatMat> {
    let s = stratum.len();
    let mut var = BTreeMap::new();
    for i in 0..s {
        for j in i..s {
            let k = var.len();
            var.insert((i, j), k);
        }
    }
    let v = |i: usize, j: usize| var[&(i.min(j), i.max(j))];
    let mut e = Echelon::new(var.len());
    for a in &n0.basis {
        let t = a.trace() * factor;
        let blk = |i: usize, k: usize| a.get(stratum[i], stratum[k]);
        for i in 0..s {
            for j in i..s {
                let mut row = vec![(v(i, j), -t.clone())];
                for k in 0..s {
                    let x = blk(i, k);
                    if !x.is_zero() {
                        row.push((v(k, j), x.clone()));
                    }
                    let y = blk(j, k);
                    if !y.is_zero() {
                        row.push((v(i, k), y.clone()));
                    }
                }
                e.insert(&SparseVec::from_pairs(row));
            }
        }
    }
    e.into_rref()
        .kernel_basis()
        .iter()
        .map(|sol| {
            let mut g = RatMat::zeros(s, s);
            for (&(i, j), &k) in &var {
                g.set(i, j, sol.get(k));
                g.set(j, i, sol.get(k));
            }
            g
        })
        .collect()
}

/// Whether `a = c·b` for some nonzero rational `c`.
pub fn proportional(a: &RatMat, b: &RatMat) -> bool {
    let (Some(x), Some(y)) = (a.first_nonzero(), b.first_nonzero()) else {
        return a.is_zero() && b.is_zero();
    };
    let c = x / y;
    *a == b.scale(&c)
}

/// Sylvester signature `(positive, negative, zero)` of a symmetric matrix.
pub fn signature(m: &RatMat) -> (usize, usize, usize) {
    let n = m.rows;
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !alive.is_empty() {
        let p = match alive.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let found = alive.iter().enumerate().find_map(|(x, &i)| {
                    alive.iter().find(|&&j| j != i && !a[i][j].is_zero()).map(|&j| (x, i, j))
                });
                let Some((x, i, j)) = found else { break };
                // congruence e_i ← e_i + e_j makes the diagonal 2 a_ij ≠ 0
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[i][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += t;
                }
                x
            }
        };
        let i = alive.remove(p);
        let d = a[i][i].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for &r in &alive {
            if a[r][i].is_zero() {
                continue;
            }
            let f = &a[r][i] / &d;
            for &c in &alive {
                if !a[i][c].is_zero() {
                    let t = &f * &a[i][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    (pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::{heisenberg, symbol_algebra, PfaffianSystem};

    fn baby() -> GradedNilpotent {
        let s = PfaffianSystem::from_text(
            &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
            &[1, 1, 1, 1, 2, 2, 2],
            &["d(x5) + x1*d(x4) + x2*d(x3)", "d(x6) + x3*d(x4) + x1*d(x2)", "d(x7) + x3*d(x1) + x2*d(x4)"],
        )
        .unwrap();
        symbol_algebra(&s).unwrap()
    }

    #[test]
    fn n0_of_baby() {
        let n0 = compute_n0(&baby());
        assert_eq!(n0.dim(), 7);
        assert!(n0.is_closed_under_commutator());
    }

    #[test]
    fn prolongation_of_baby() {
        let p = prolong(&baby(), 3);
        assert_eq!(p.dims(), vec![(-2, 3), (-1, 4), (0, 7), (1, 4), (2, 3)]);
        assert!(p.is_terminated());
        assert_eq!(p.total_dim(), 21);
        assert_eq!(p.dimension_string(), "3+4+7+4+3 = 21");
        p.check_jacobi().unwrap();
        assert!(p.respects_grading());
        assert!(p.n0().same_span(&compute_n0(&baby())));
        // sp(1,2): Killing signature (8, 13)
        assert_eq!(p.killing_signature(), (8, 13, 0));
    }

    #[test]
    fn heisenberg_does_not_terminate() {
        let p = prolong(&heisenberg(), 5);
        assert!(!p.is_terminated());
        for k in 0..=5 {
            assert!(p.layer_dim(k) > 0);
        }
        assert_eq!(p.layer_dim(0), 4);
    }

    #[test]
    fn commutants() {
        let id2 = EndoSpace::new(2, vec![RatMat::identity(2)]);
        assert_eq!(commutant(&id2).dim(), 4);
        let n0 = compute_n0(&baby());
        let c = commutant(&n0.restrict(&[3, 4, 5, 6]));
        assert_eq!(c.dim(), 1);
        assert!(find_complex_structure(&c).is_none());
    }

    #[test]
    fn complex_structure_in_plane() {
        let j = RatMat::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        let s = EndoSpace::new(2, vec![RatMat::identity(2), j.clone()]);
        let c = find_complex_structure(&s).unwrap();
        assert!(c.unique_up_to_sign);
        assert_eq!(c.j, normalize_sign(&j));
        assert_eq!(c.j.mul(&c.j), RatMat::identity(2).scale(&int(-1)));
    }

    #[test]
    fn rotation_invariant_form() {
        let j = RatMat::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        let s = EndoSpace::new(2, vec![j]);
        let g = invariant_symmetric_form(&s, &[0, 1], &int(1));
        assert_eq!(g.len(), 1);
        assert!(proportional(&g[0], &RatMat::identity(2)));
    }

    #[test]
    fn signatures() {
        let m = RatMat::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(signature(&m), (1, 1, 0));
        let d = RatMat::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(0)]]);
        assert_eq!(signature(&d), (1, 0, 1));
    }
}
