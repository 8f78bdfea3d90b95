//! Pfaffian systems, growth vectors, symbol algebras and flat models.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::eds::{parse_form_of_degree, print_form, Chart, DiffForm, PolyVectorField};
use crate::error::{Error, Result};
use crate::exact::linalg::span_rank;
use crate::exact::{int, parse_rational, rat, RatMat, RatPoly, RatVector, Rational, SparseVec};

/// Ordered 1-forms annihilating a distribution, with coordinate weights.
#[derive(Clone, Debug, PartialEq)]
pub struct PfaffianSystem {
    chart: Arc<Chart>,
    weights: Vec<u32>,
    forms: Vec<DiffForm>,
}

/// A system rewritten as `λ̃^i = du^i + α^i`, with `α^i` in the weight-1 differentials.
#[derive(Clone, Debug)]
pub struct Adapted {
    /// Chart indices of the weight-2 coordinates, one per form.
    pub u: Vec<usize>,
    /// Chart indices of the weight-1 coordinates.
    pub h: Vec<usize>,
    pub alpha: Vec<DiffForm>,
    pub normalized: Vec<DiffForm>,
}

impl PfaffianSystem {
    pub fn new(chart: &Arc<Chart>, weights: Vec<u32>, forms: Vec<DiffForm>) -> Result<Self> {
        if weights.len() != chart.len() {
            return Err(Error::ChartMismatch(format!("{} weights for {} coordinates", weights.len(), chart.len())));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidParams("weights must be positive".into()));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.chart() != chart {
                return Err(Error::ChartMismatch(format!("form {} is on another chart", i + 1)));
            }
            if f.degree() != 1 {
                return Err(Error::InvalidParams(format!("form {} has degree {}", i + 1, f.degree())));
            }
        }
        let sys = PfaffianSystem { chart: chart.clone(), weights, forms };
        let origin = sys.origin();
        let rows: Vec<RatVector> = sys.forms.iter().map(|f| covector_at(f, &origin)).collect();
        if span_rank(chart.len(), &rows) != sys.forms.len() {
            return Err(Error::Degenerate("forms are not linearly independent at the origin".into()));
        }
        Ok(sys)
    }

    /// Build from coordinate names, weights and forms in the text grammar.
    pub fn from_text<S: AsRef<str>>(names: &[S], weights: &[u32], forms: &[S]) -> Result<Self> {
        let chart = Chart::new(names)?;
        let forms = forms.iter().map(|s| parse_form_of_degree(s.as_ref(), &chart, 1)).collect::<Result<Vec<_>>>()?;
        Self::new(&chart, weights.to_vec(), forms)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn forms(&self) -> &[DiffForm] {
        &self.forms
    }

    pub fn rank(&self) -> usize {
        self.chart.len() - self.forms.len()
    }

    pub fn origin(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.chart.len()]
    }

    pub fn form_strings(&self) -> Vec<String> {
        self.forms.iter().map(print_form).collect()
    }

    /// Rewrite in adapted graded form, or explain why that is impossible.
    pub fn adapted(&self) -> Result<Adapted> {
        let n = self.chart.len();
        if let Some(i) = self.weights.iter().position(|&w| w > 2) {
            return Err(Error::NotAdapted(format!("coordinate {} has weight {} > 2", self.chart.names()[i], self.weights[i])));
        }
        let u: Vec<usize> = (0..n).filter(|&i| self.weights[i] == 2).collect();
        let h: Vec<usize> = (0..n).filter(|&i| self.weights[i] == 1).collect();
        let k = self.forms.len();
        if u.len() != k {
            return Err(Error::NotAdapted(format!("{} forms but {} weight-2 coordinates", k, u.len())));
        }
        let mut c = RatMat::zeros(k, k);
        for (j, f) in self.forms.iter().enumerate() {
            for (idx, p) in f.terms() {
                let i = idx[0] as usize;
                if let Some(pos) = u.iter().position(|&x| x == i) {
                    if !p.is_constant() {
                        return Err(Error::NotAdapted(format!(
                            "form {} has a non-constant coefficient on d({})",
                            j + 1,
                            self.chart.names()[i]
                        )));
                    }
                    c.set(j, pos, p.constant_term());
                } else if let Some((m, _)) = p.terms().find(|(m, _)| u.iter().any(|&x| m.0[x] > 0)) {
                    let _ = m;
                    return Err(Error::NotAdapted(format!(
                        "form {} has a coefficient on d({}) depending on a weight-2 coordinate",
                        j + 1,
                        self.chart.names()[i]
                    )));
                }
            }
        }
        let cinv = c.inverse().ok_or_else(|| Error::NotAdapted("the du-part of the forms is not invertible".into()))?;
        let mut normalized = Vec::with_capacity(k);
        let mut alpha = Vec::with_capacity(k);
        for i in 0..k {
            let mut f = DiffForm::zero(&self.chart, 1);
            for j in 0..k {
                let a = cinv.get(i, j);
                if !a.is_zero() {
                    f = f.add(&self.forms[j].scale(a));
                }
            }
            alpha.push(f.sub(&DiffForm::dx(&self.chart, u[i])));
            normalized.push(f);
        }
        Ok(Adapted { u, h, alpha, normalized })
    }
}

impl Adapted {
    /// Frame `X_μ = ∂_μ − Σ_i α^i(∂_μ) ∂_{u_i}` of the distribution.
    pub fn frame(&self, chart: &Arc<Chart>) -> Vec<PolyVectorField> {
        self.h
            .iter()
            .map(|&mu| {
                let mut x = PolyVectorField::coord(chart, mu);
                for (i, a) in self.alpha.iter().enumerate() {
                    let coef = a.coefficient(&[mu as u8]);
                    if !coef.is_zero() {
                        x = x.sub(&PolyVectorField::single(chart, self.u[i], coef));
                    }
                }
                x
            })
            .collect()
    }

    /// Images of the coordinate differentials modulo the system:
    /// `d(h) ↦ d(h)`, `d(u_i) ↦ −α^i`.
    pub fn reduction_images(&self, chart: &Arc<Chart>) -> Vec<DiffForm> {
        let mut images: Vec<DiffForm> = (0..chart.len()).map(|i| DiffForm::dx(chart, i)).collect();
        for (i, &ui) in self.u.iter().enumerate() {
            images[ui] = self.alpha[i].neg();
        }
        images
    }

    /// The part of `ω` with no factor from the system ideal, written in the
    /// weight-1 differentials: `ω ∧ λ¹∧…∧λ^k = 0` iff this vanishes.
    pub fn reduce(&self, chart: &Arc<Chart>, w: &DiffForm) -> DiffForm {
        w.pull_differentials(&self.reduction_images(chart))
    }
}

fn covector_at(f: &DiffForm, point: &[Rational]) -> RatVector {
    SparseVec::from_pairs(f.terms().map(|(idx, p)| (idx[0] as usize, p.eval(point))))
}

/// Annihilator frame of a system in adapted graded form.
pub fn annihilator_frame(sys: &PfaffianSystem) -> Result<Vec<PolyVectorField>> {
    Ok(sys.adapted()?.frame(sys.chart()))
}

/// Ranks of the bracket filtration `D_{-1} ⊂ D_{-2} ⊂ …` at the origin.
pub fn growth_vector(sys: &PfaffianSystem) -> Result<Vec<usize>> {
    let frame = annihilator_frame(sys)?;
    let chart = sys.chart();
    let origin = sys.origin();
    let at = |v: &PolyVectorField| SparseVec::from_dense(&v.at_point(&origin));
    let mut values: Vec<RatVector> = frame.iter().map(at).collect();
    let mut rank = span_rank(chart.len(), &values);
    let mut out = vec![rank];
    let mut level = frame.clone();
    while rank < chart.len() {
        let mut next = Vec::new();
        for x in &frame {
            for v in &level {
                let b = x.bracket(v);
                if !b.is_zero() && !next.contains(&b) {
                    next.push(b);
                }
            }
        }
        values.extend(next.iter().map(at));
        let r = span_rank(chart.len(), &values);
        if r == rank || next.is_empty() {
            break;
        }
        rank = r;
        out.push(rank);
        level = next;
    }
    Ok(out)
}

/// Graded nilpotent Lie algebra given by structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedNilpotent {
    grading: Vec<i32>,
    labels: Vec<String>,
    /// `[e_a, e_b]` for `a < b`.
    brackets: BTreeMap<(usize, usize), RatVector>,
}

impl GradedNilpotent {
    pub fn new(grading: Vec<i32>, labels: Vec<String>) -> Self {
        assert_eq!(grading.len(), labels.len());
        GradedNilpotent { grading, labels, brackets: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn grading(&self) -> &[i32] {
        &self.grading
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Set `[e_a, e_b] = v` (and `[e_b, e_a] = −v`).
    pub fn set_bracket(&mut self, a: usize, b: usize, v: RatVector) {
        assert_ne!(a, b);
        let (key, v) = if a < b { ((a, b), v) } else { ((b, a), v.scale(&int(-1))) };
        if v.is_zero() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, v);
        }
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
        let mut acc = SparseVec::new();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                if a != b {
                    acc = acc.axpy(&(xa * yb), &self.bracket(a, b));
                }
            }
        }
        acc
    }

    /// Nonzero structure constants `(A, B, E, c^E_{AB})` with `A < B`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for ((a, b), v) in &self.brackets {
            for (e, c) in v.iter() {
                out.push((*a, *b, e, c.clone()));
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        self.grading.iter().map(|g| (-g) as usize).max().unwrap_or(0)
    }

    pub fn layer(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grading[i] == degree).collect()
    }

    /// Check `[n_i, n_j] ⊆ n_{i+j}` and the Jacobi identity.
    pub fn check(&self) -> Result<()> {
        for ((a, b), v) in &self.brackets {
            let d = self.grading[*a] + self.grading[*b];
            if let Some((e, _)) = v.iter().find(|(e, _)| self.grading[*e] != d) {
                return Err(Error::Inconsistent(format!("[e{a}, e{b}] has a component on e{e} of the wrong degree")));
            }
        }
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let ea = SparseVec::unit(a);
                    let eb = SparseVec::unit(b);
                    let ec = SparseVec::unit(c);
                    let j = self
                        .bracket_vec(&self.bracket(a, b), &ec)
                        .add(&self.bracket_vec(&self.bracket(b, c), &ea))
                        .add(&self.bracket_vec(&self.bracket(c, a), &eb));
                    if !j.is_zero() {
                        return Err(Error::Inconsistent(format!("Jacobi fails on (e{a}, e{b}, e{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the degree −1 part generates everything.
    pub fn is_fundamental(&self) -> bool {
        let n = self.dim();
        let gens: Vec<RatVector> = self.layer(-1).into_iter().map(SparseVec::unit).collect();
        let mut span = gens.clone();
        let mut frontier = gens.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &gens {
                for f in &frontier {
                    let b = self.bracket_vec(g, f);
                    if !b.is_zero() {
                        let before = span_rank(n, &span);
                        span.push(b.clone());
                        if span_rank(n, &span) > before {
                            next.push(b);
                        } else {
                            span.pop();
                        }
                    }
                }
            }
            frontier = next;
        }
        span_rank(n, &span) == n
    }

    pub fn to_json(&self) -> GradedNilpotentJson {
        GradedNilpotentJson {
            dim: self.dim(),
            grading: self.grading.clone(),
            labels: self.labels.clone(),
            brackets: self.structure_constants().into_iter().map(|(a, b, e, c)| (a, b, e, c.to_string())).collect(),
        }
    }

    pub fn from_json(j: &GradedNilpotentJson) -> Result<Self> {
        if j.grading.len() != j.dim || (!j.labels.is_empty() && j.labels.len() != j.dim) {
            return Err(Error::InvalidParams("grading/labels length differs from dim".into()));
        }
        if j.grading.iter().any(|&g| g >= 0) {
            return Err(Error::InvalidParams("grading of a negative part must be negative".into()));
        }
        let labels = if j.labels.is_empty() { (1..=j.dim).map(|i| format!("e{i}")).collect() } else { j.labels.clone() };
        let mut n = GradedNilpotent::new(j.grading.clone(), labels);
        let mut acc: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (a, b, e, c) in &j.brackets {
            if *a >= j.dim || *b >= j.dim || *e >= j.dim || a == b {
                return Err(Error::InvalidParams(format!("bad bracket index ({a},{b},{e})")));
            }
            let c = parse_rational(c).ok_or_else(|| Error::InvalidParams(format!("bad rational {c:?}")))?;
            let (key, c) = if a < b { ((*a, *b), c) } else { ((*b, *a), -c) };
            acc.entry(key).or_default().push((*e, c));
        }
        for ((a, b), v) in acc {
            n.set_bracket(a, b, SparseVec::from_pairs(v));
        }
        n.check()?;
        Ok(n)
    }
}

/// JSON form: `{"dim", "grading", "labels", "brackets": [[A, B, E, "coef"], …]}` (0-based indices).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GradedNilpotentJson {
    pub dim: usize,
    pub grading: Vec<i32>,
    #[serde(default)]
    pub labels: Vec<String>,
    pub brackets: Vec<(usize, usize, usize, String)>,
}

/// Symbol algebra read off `dλ^A = −½ c^A_{BD} λ^B∧λ^D`.
///
/// Basis: the weight-2 coordinates' forms first, then the weight-1
/// coordinates, both in chart order.
pub fn symbol_algebra(sys: &PfaffianSystem) -> Result<GradedNilpotent> {
    let ad = sys.adapted()?;
    let chart = sys.chart();
    let names = chart.names();
    let k = ad.u.len();
    let mut pos = vec![usize::MAX; chart.len()];
    for (j, &h) in ad.h.iter().enumerate() {
        pos[h] = k + j;
    }
    let mut grading = vec![-2; k];
    grading.extend(std::iter::repeat_n(-1, ad.h.len()));
    let mut labels: Vec<String> = ad.u.iter().map(|&i| names[i].clone()).collect();
    labels.extend(ad.h.iter().map(|&i| names[i].clone()));
    let mut n = GradedNilpotent::new(grading, labels);
    let mut acc: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for (i, a) in ad.alpha.iter().enumerate() {
        let da = a.d();
        for (idx, p) in da.terms() {
            if !p.is_constant() {
                return Err(Error::NotFlatModel(format!("d of form {} has coefficient {}", i + 1, p.fmt_with(names))));
            }
            let (mu, nu) = (pos[idx[0] as usize], pos[idx[1] as usize]);
            if mu == usize::MAX || nu == usize::MAX {
                return Err(Error::NotAdapted("exterior derivative involves weight-2 differentials".into()));
            }
            acc.entry((mu, nu)).or_default().push((i, -p.constant_term()));
        }
    }
    for ((a, b), v) in acc {
        n.set_bracket(a, b, SparseVec::from_pairs(v));
    }
    n.check()?;
    Ok(n)
}

/// Flat model `λ^i = du^i − ½ Σ c^i_{μν} x^μ dx^ν` of a 2-step symbol.
pub fn flat_model(n: &GradedNilpotent) -> Result<PfaffianSystem> {
    if n.depth() != 2 || n.grading().iter().any(|&g| g != -1 && g != -2) {
        return Err(Error::UnsupportedDepth(n.depth()));
    }
    let top = n.layer(-2);
    let bottom = n.layer(-1);
    let mut names: Vec<String> = (1..=top.len()).map(|i| format!("u{i}")).collect();
    names.extend((1..=bottom.len()).map(|i| format!("x{i}")));
    let chart = Chart::new(&names)?;
    let m = chart.len();
    let k = top.len();
    let mut weights = vec![2u32; k];
    weights.extend(std::iter::repeat_n(1, bottom.len()));
    let mut forms: Vec<DiffForm> = (0..k).map(|i| DiffForm::dx(&chart, i)).collect();
    let half = rat(-1, 2);
    for (p, &mu) in bottom.iter().enumerate() {
        for (q, &nu) in bottom.iter().enumerate() {
            if mu == nu {
                continue;
            }
            for (e, c) in n.bracket(mu, nu).iter() {
                let i = top.iter().position(|&t| t == e).expect("bracket of degree −1 elements lies in degree −2");
                let coef = RatPoly::var(m, k + p).scale(&(c * &half));
                forms[i] = forms[i].add(&DiffForm::monomial(&chart, coef, &[k + q]));
            }
        }
    }
    PfaffianSystem::new(&chart, weights, forms)
}

/// Algebra dual to a coframe with constant structure equations
/// `dλ^A = −½ c^A_{BD} λ^B∧λ^D`, i.e. `[X_B, X_D] = c^E_{BD} X_E`.
///
/// `dforms[A]` is `dλ^A` written on a chart whose coordinate `B` stands for `λ^B`.
pub fn from_structure_equations(grading: Vec<i32>, labels: Vec<String>, dforms: &[DiffForm]) -> Result<GradedNilpotent> {
    if dforms.len() != grading.len() {
        return Err(Error::InvalidParams(format!("{} structure equations for dimension {}", dforms.len(), grading.len())));
    }
    let mut n = GradedNilpotent::new(grading, labels);
    let mut acc: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for (e, f) in dforms.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        if f.degree() != 2 || f.chart().len() != n.dim() {
            return Err(Error::InvalidParams(format!("structure equation {} is not a 2-form on the coframe", e + 1)));
        }
        for (idx, p) in f.terms() {
            if !p.is_constant() {
                return Err(Error::NotFlatModel(format!("structure equation {} has a non-constant coefficient", e + 1)));
            }
            acc.entry((idx[0] as usize, idx[1] as usize)).or_default().push((e, -p.constant_term()));
        }
    }
    for ((a, b), v) in acc {
        n.set_bracket(a, b, SparseVec::from_pairs(v));
    }
    n.check()?;
    Ok(n)
}

/// Heisenberg algebra `[X1, X2] = U` with basis `(U, X1, X2)`.
pub fn heisenberg() -> GradedNilpotent {
    let mut n = GradedNilpotent::new(vec![-2, -1, -1], vec!["u".into(), "x1".into(), "x2".into()]);
    n.set_bracket(1, 2, SparseVec::unit(0));
    n
}

/// Whether two symbols have identical structure constants in the same basis.
pub fn same_constants(a: &GradedNilpotent, b: &GradedNilpotent) -> bool {
    a.grading == b.grading && a.brackets == b.brackets
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baby() -> PfaffianSystem {
        PfaffianSystem::from_text(
            &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
            &[1, 1, 1, 1, 2, 2, 2],
            &["d(x5) + x1*d(x4) + x2*d(x3)", "d(x6) + x3*d(x4) + x1*d(x2)", "d(x7) + x3*d(x1) + x2*d(x4)"],
        )
        .unwrap()
    }

    #[test]
    fn frame_of_baby() {
        let s = baby();
        let f = annihilator_frame(&s).unwrap();
        assert_eq!(f.len(), 4);
        let c = s.chart();
        let x = |i: usize| RatPoly::var(7, i - 1);
        let x1 = PolyVectorField::coord(c, 0).sub(&PolyVectorField::single(c, 6, x(3)));
        assert_eq!(f[0], x1);
        let x4 = PolyVectorField::coord(c, 3)
            .sub(&PolyVectorField::single(c, 4, x(1)))
            .sub(&PolyVectorField::single(c, 5, x(3)))
            .sub(&PolyVectorField::single(c, 6, x(2)));
        assert_eq!(f[3], x4);
        for x in &f {
            for l in s.forms() {
                assert!(l.interior(x).as_function().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn trivial_frame() {
        let s = PfaffianSystem::from_text(&["u1", "x1", "x2"], &[2, 1, 1], &["d(u1)"]).unwrap();
        let f = annihilator_frame(&s).unwrap();
        assert_eq!(f, vec![PolyVectorField::coord(s.chart(), 1), PolyVectorField::coord(s.chart(), 2)]);
        let n = symbol_algebra(&s).unwrap();
        assert!(n.structure_constants().is_empty());
    }

    #[test]
    fn not_adapted() {
        let s = PfaffianSystem::from_text(&["u1", "x1"], &[2, 1], &["x1*d(u1) + d(x1)"]).unwrap();
        assert!(matches!(annihilator_frame(&s), Err(Error::NotAdapted(_))));
    }

    #[test]
    fn growth_of_baby() {
        assert_eq!(growth_vector(&baby()).unwrap(), vec![4, 7]);
    }

    #[test]
    fn symbol_of_baby() {
        let n = symbol_algebra(&baby()).unwrap();
        // basis (x5, x6, x7, x1, x2, x3, x4)
        let x = |i: usize| i + 2;
        assert_eq!(n.bracket(x(3), x(2)), SparseVec::unit(0));
        assert_eq!(n.bracket(x(4), x(1)), SparseVec::unit(0));
        assert_eq!(n.bracket(x(2), x(1)), SparseVec::unit(1));
        assert_eq!(n.bracket(x(4), x(3)), SparseVec::unit(1));
        assert_eq!(n.bracket(x(1), x(3)), SparseVec::unit(2));
        assert_eq!(n.bracket(x(4), x(2)), SparseVec::unit(2));
        assert_eq!(n.structure_constants().len(), 6);
        assert!(n.is_fundamental());
    }

    #[test]
    fn flat_model_roundtrip() {
        let n = symbol_algebra(&baby()).unwrap();
        let f = flat_model(&n).unwrap();
        assert!(same_constants(&symbol_algebra(&f).unwrap(), &n));
        let h = flat_model(&heisenberg()).unwrap();
        assert_eq!(h.form_strings(), vec!["d(u1) + 1/2*x2*d(x1) - 1/2*x1*d(x2)".to_string()]);
    }

    #[test]
    fn json_roundtrip() {
        let n = symbol_algebra(&baby()).unwrap();
        let j = serde_json::to_string(&n.to_json()).unwrap();
        let back: GradedNilpotentJson = serde_json::from_str(&j).unwrap();
        assert_eq!(GradedNilpotent::from_json(&back).unwrap(), n);
    }

    #[test]
    fn non_constant_symbol_rejected() {
        let s = PfaffianSystem::from_text(&["u1", "x1", "x2"], &[2, 1, 1], &["d(u1) + x1^2*d(x2)"]).unwrap();
        assert!(matches!(symbol_algebra(&s), Err(Error::NotFlatModel(_))));
    }
}
