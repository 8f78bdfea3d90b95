//! Chevalley–Eilenberg cohomology `H²(n₋, g)` of a graded Lie algebra, split by
//! weight, and the rigidity predicate.
//!
//! A cochain `φ: g_{−i} ∧ g_{−j} → g_p` has weight `p + i + j`; the
//! differential preserves weight, so every weight is an independent block.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{modular_rank, rank, RatMatrix, RatVector, SparseMatrix};
use crate::tanaka::Prolongation;

/// How ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    /// Exact rational elimination.
    Exact,
    /// Ranks over two 62-bit primes that must agree.
    Modular,
}

/// Per-weight dimensions of `H²` and the mode actually used.
#[derive(Clone, Debug, Serialize)]
pub struct H2 {
    pub weights: BTreeMap<i32, usize>,
    pub rigid: bool,
    pub mode: RankMode,
}

/// Cochains of one degree and weight: basis `(sorted n₋ indices, g index)`.
struct Block {
    index: BTreeMap<(Vec<usize>, usize), usize>,
}

struct Complex {
    deg: Vec<i32>,
    neg: Vec<usize>,
    /// `ad[x][c] = [e_x, e_c]` for `x ∈ n₋`.
    ad: Vec<Vec<RatVector>>,
}

impl Complex {
    fn new(g: &Prolongation) -> Self {
        let deg = g.grading().to_vec();
        let neg: Vec<usize> = (0..deg.len()).filter(|&i| deg[i] < 0).collect();
        let ad = neg.iter().map(|&x| (0..deg.len()).map(|c| g.bracket(x, c)).collect()).collect();
        Complex { deg, neg, ad }
    }

    fn weight(&self, args: &[usize], c: usize) -> i32 {
        self.deg[c] - args.iter().map(|&a| self.deg[self.neg[a]]).sum::<i32>()
    }

    /// Cochains of degree `q` and weight `w`, or of all weights.
    fn block(&self, q: usize, w: Option<i32>) -> Block {
        let mut index = BTreeMap::new();
        for args in subsets(self.neg.len(), q) {
            for c in 0..self.deg.len() {
                if w.is_none_or(|w| self.weight(&args, c) == w) {
                    let k = index.len();
                    index.insert((args.clone(), c), k);
                }
            }
        }
        Block { index }
    }

    /// `[e_x, v]` for `x` indexing `n₋` and `v ∈ g`.
    fn ad_vec(&self, x: usize, v: &RatVector) -> RatVector {
        let mut out = RatVector::new();
        for (c, a) in v.iter() {
            out = out.axpy(a, &self.ad[x][c]);
        }
        out
    }

    /// Component of `[e_x, e_y]` (both in `n₋`) along `n₋` basis vector `r`.
    fn nbracket(&self, x: usize, y: usize, r: usize) -> crate::exact::Rational {
        self.ad[x][self.neg[y]].get(self.neg[r])
    }

    /// Matrix of `d: C^q_w → C^{q+1}_w` with one row per source basis element.
    fn differential(&self, src: &Block, dst: &Block) -> RatMatrix {
        let rows: Vec<RatVector> = src
            .index
            .par_iter()
            .map(|((args, c), _)| {
                let mut acc: BTreeMap<usize, crate::exact::Rational> = BTreeMap::new();
                let mut emit = |args: Vec<usize>, v: &RatVector, sign: i64| {
                    for (c2, a) in v.iter() {
                        if let Some(&k) = dst.index.get(&(args.clone(), c2)) {
                            let e = acc.entry(k).or_default();
                            *e += a * crate::exact::Rational::from_integer(sign.into());
                        }
                    }
                };
                let ec = RatVector::unit(*c);
                let n = self.neg.len();
                if args.len() == 1 {
                    let a = args[0];
                    // dφ(x, y) = [x, φ(y)] − [y, φ(x)] − φ([x, y])
                    for x in 0..n {
                        if x == a {
                            continue;
                        }
                        let (s, pair) = if x < a { (1, vec![x, a]) } else { (-1, vec![a, x]) };
                        emit(pair, &self.ad[x][*c], s);
                    }
                    for x in 0..n {
                        for y in x + 1..n {
                            let k = self.nbracket(x, y, a);
                            if !k.is_zero() {
                                emit(vec![x, y], &ec.scale(&k), -1);
                            }
                        }
                    }
                } else {
                    let (i, j) = (args[0], args[1]);
                    // φ(e_p, e_q) = ±e_c on {i, j}, extended bilinearly.
                    let phi = |p: usize, q: usize| -> i64 {
                        if (p, q) == (i, j) {
                            1
                        } else if (p, q) == (j, i) {
                            -1
                        } else {
                            0
                        }
                    };
                    let phi_vec = |w: &[(usize, crate::exact::Rational)], q: usize| -> crate::exact::Rational {
                        w.iter().map(|(r, x)| x * crate::exact::Rational::from_integer(phi(*r, q).into())).sum()
                    };
                    let br = |x: usize, y: usize| -> Vec<(usize, crate::exact::Rational)> {
                        (0..n).map(|r| (r, self.nbracket(x, y, r))).filter(|(_, v)| !v.is_zero()).collect()
                    };
                    for x in 0..n {
                        for y in x + 1..n {
                            for z in y + 1..n {
                                let t = [x, y, z];
                                if !t.iter().any(|&u| u == i || u == j) && !involves(&br, &t, i, j) {
                                    continue;
                                }
                                // dφ(x,y,z) = Σ_cyc [x, φ(y,z)] terms − φ([x,y],z) + φ([x,z],y) − φ([y,z],x)
                                let mut v = RatVector::new();
                                let mut add_ad = |u: usize, p: usize, q: usize, s: i64| {
                                    let f = phi(p, q) * s;
                                    if f != 0 {
                                        v = v.axpy(&crate::exact::Rational::from_integer(f.into()), &self.ad_vec(u, &ec));
                                    }
                                };
                                add_ad(x, y, z, 1);
                                add_ad(y, x, z, -1);
                                add_ad(z, x, y, 1);
                                let scal = -phi_vec(&br(x, y), z) + phi_vec(&br(x, z), y) - phi_vec(&br(y, z), x);
                                if !scal.is_zero() {
                                    v = v.axpy(&scal, &ec);
                                }
                                emit(t.to_vec(), &v, 1);
                            }
                        }
                    }
                }
                RatVector::from_pairs(acc.into_iter().filter(|(_, x)| !x.is_zero()))
            })
            .collect();
        SparseMatrix::from_rows(dst.index.len(), rows)
    }
}

/// Whether some bracket among the triple has a component on `i` or `j`.
fn involves(br: &dyn Fn(usize, usize) -> Vec<(usize, crate::exact::Rational)>, t: &[usize; 3], i: usize, j: usize) -> bool {
    [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].iter().any(|&(a, b)| br(a, b).iter().any(|(r, _)| *r == i || *r == j))
}

fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(q).collect()
}

use num_traits::Zero;

fn block_rank(m: &RatMatrix, mode: RankMode) -> Result<usize> {
    match mode {
        RankMode::Exact => Ok(rank(m)),
        RankMode::Modular => {
            modular_rank(m).ok_or_else(|| Error::Inconsistent("modular ranks disagree or a denominator vanishes".into()))
        }
    }
}

/// Weights that can carry 2-cochains.
fn h2_weight_range(c: &Complex) -> (i32, i32) {
    let dmin = *c.deg.iter().min().unwrap_or(&0);
    let dmax = *c.deg.iter().max().unwrap_or(&0);
    (dmin + 2, dmax - 2 * dmin)
}

/// `dim H²_w` for every weight `w ≥ min_weight`.
///
/// Blocks with more columns than the cost guard (default 3000, overridable
/// with `TANAKA_COST_GUARD`) use modular ranks when `mode` is `Modular` and
/// fail with a cost-guard error otherwise.
pub fn h2_weights_from(g: &Prolongation, min_weight: i32, mode: RankMode) -> Result<H2> {
    if !g.neg_part().is_fundamental() {
        return Err(Error::Unsupported("n₋ must be generated by g₋₁".into()));
    }
    let c = Complex::new(g);
    let (lo, hi) = h2_weight_range(&c);
    let guard = crate::cost_guard(3000);
    let mut weights = BTreeMap::new();
    let mut used = RankMode::Exact;
    for w in lo.max(min_weight)..=hi {
        let (c1, c2, c3) = (c.block(1, Some(w)), c.block(2, Some(w)), c.block(3, Some(w)));
        if c2.index.is_empty() {
            continue;
        }
        let largest = c2.index.len().max(c3.index.len());
        let m = if largest > guard {
            if mode == RankMode::Exact {
                return Err(Error::CostGuard(format!("weight {w} block has {largest} columns (guard {guard})")));
            }
            used = RankMode::Modular;
            RankMode::Modular
        } else {
            RankMode::Exact
        };
        let d1 = c.differential(&c1, &c2);
        let d2 = c.differential(&c2, &c3);
        let h = c2.index.len() - block_rank(&d2, m)? - block_rank(&d1, m)?;
        weights.insert(w, h);
    }
    let rigid = weights.iter().all(|(&w, &h)| w < 1 || h == 0);
    Ok(H2 { weights, rigid, mode: used })
}

/// `dim H²_w` for `w ≥ −1`, exact ranks.
pub fn h2_weights(g: &Prolongation) -> Result<BTreeMap<i32, usize>> {
    Ok(h2_weights_from(g, -1, RankMode::Exact)?.weights)
}

/// No cohomology in positive weights.
pub fn is_rigid(g: &Prolongation) -> Result<bool> {
    Ok(h2_weights_from(g, 1, RankMode::Exact)?.rigid)
}

/// `d ∘ d` on the weight-`w` cochains of degree 1, as a matrix (should vanish).
pub fn d_squared(g: &Prolongation, w: i32) -> RatMatrix {
    let c = Complex::new(g);
    let (c1, c2, c3) = (c.block(1, Some(w)), c.block(2, Some(w)), c.block(3, Some(w)));
    let d1 = c.differential(&c1, &c2);
    let d2 = c.differential(&c2, &c3);
    let rows = d1
        .rows
        .iter()
        .map(|r| {
            let mut out = RatVector::new();
            for (k, a) in r.iter() {
                out = out.axpy(a, &d2.rows[k]);
            }
            out
        })
        .collect();
    SparseMatrix::from_rows(c3.index.len(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, Params};
    use crate::nilpotent::{symbol_algebra, GradedNilpotent};
    use crate::tanaka::prolong;

    fn entry_algebra(name: &str, p: &str) -> Prolongation {
        let e = build(name, &Params::parse(p).unwrap()).unwrap();
        prolong(&symbol_algebra(&e.pfaffian).unwrap(), 3)
    }

    #[test]
    fn trivial_line_has_no_h2() {
        let n = GradedNilpotent::new(vec![-1], vec!["e".into()]);
        let g = prolong(&n, 0);
        let h = h2_weights_from(&g, -10, RankMode::Exact).unwrap();
        assert!(h.weights.values().all(|&d| d == 0));
        assert!(h.rigid);
    }

    #[test]
    fn d_squared_vanishes() {
        let g = entry_algebra("example-2.1", "");
        for w in 0..=4 {
            assert!(d_squared(&g, w).rows.iter().all(|r| r.is_zero()), "weight {w}");
        }
    }

    #[test]
    fn su23_and_so35_both_carry_weight_one_classes() {
        let su = h2_weights_from(&entry_algebra("su", "t=0,r=1,s=2"), 0, RankMode::Exact).unwrap();
        assert!(!su.rigid);
        assert_eq!((su.weights[&0], su.weights[&1]), (0, 28));
        let so = h2_weights_from(&entry_algebra("so", "l=4"), 0, RankMode::Exact).unwrap();
        assert!(!so.rigid);
        assert_eq!((so.weights[&0], so.weights[&1]), (10, 12));
        assert!(so.weights.iter().all(|(&w, &d)| w < 2 || d == 0));
    }

    #[test]
    fn g2_has_a_single_quartic() {
        let mut n = GradedNilpotent::new(vec![-1, -1, -2, -3, -3], ["x", "y", "xy", "xxy", "yxy"].map(String::from).to_vec());
        n.set_bracket(0, 1, RatVector::unit(2));
        n.set_bracket(0, 2, RatVector::unit(3));
        n.set_bracket(1, 2, RatVector::unit(4));
        let g = prolong(&n, 4);
        assert_eq!(g.total_dim(), 14);
        let h = h2_weights_from(&g, -1, RankMode::Exact).unwrap();
        let nonzero: Vec<(i32, usize)> = h.weights.iter().filter(|(_, &d)| d > 0).map(|(&w, &d)| (w, d)).collect();
        assert_eq!(nonzero, vec![(4, 5)]);
    }

    #[test]
    fn modular_agrees_with_exact() {
        let g = entry_algebra("su", "t=0,r=1,s=2");
        let c = Complex::new(&g);
        for w in 0..=3 {
            let d = c.differential(&c.block(2, Some(w)), &c.block(3, Some(w)));
            assert_eq!(block_rank(&d, RankMode::Exact).unwrap(), block_rank(&d, RankMode::Modular).unwrap());
        }
    }

    #[test]
    fn blockwise_ranks_sum_to_full_rank() {
        let g = entry_algebra("su", "t=0,r=1,s=2");
        let c = Complex::new(&g);
        let full = rank(&c.differential(&c.block(2, None), &c.block(3, None)));
        let (lo, hi) = h2_weight_range(&c);
        let lo = lo - 4;
        let blocks: usize = (lo..=hi + 4).map(|w| rank(&c.differential(&c.block(2, Some(w)), &c.block(3, Some(w))))).sum();
        assert_eq!(full, blocks);
    }
}
