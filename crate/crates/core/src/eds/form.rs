use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Field, RatPoly, Rational};

/// Ordered list of real coordinate names shared by forms and fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Chart>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && n != "d"
                && n != "w";
            if !ok {
                return Err(Error::Parse { pos: 0, msg: format!("invalid coordinate name {n:?}") });
            }
            if names[..i].contains(n) {
                return Err(Error::Parse { pos: 0, msg: format!("duplicate coordinate name {n:?}") });
            }
        }
        if names.len() > 255 {
            return Err(Error::Unsupported("charts are limited to 255 coordinates".into()));
        }
        Ok(Arc::new(Chart { names }))
    }

    /// Chart `prefix1..prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Arc<Chart> {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Chart::new(&names).expect("valid numbered chart")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<RatPoly> {
        Ok(RatPoly::var(self.len(), self.index(name)?))
    }
}

pub(crate) fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Merge two strictly increasing index tuples; `None` on overlap, otherwise
/// the merged tuple and the sign of the sorting permutation.
pub(crate) fn merge_indices(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut swaps = 0usize;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            swaps += a.len() - i;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, swaps % 2 == 1))
}

/// Differential form with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm {
    degree: usize,
    chart: Arc<Chart>,
    terms: BTreeMap<Vec<u8>, RatPoly>,
}

impl DiffForm {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        DiffForm { degree, chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn function(chart: &Arc<Chart>, f: RatPoly) -> Self {
        let mut w = Self::zero(chart, 0);
        w.add_term(Vec::new(), f);
        w
    }

    pub fn constant(chart: &Arc<Chart>, c: Rational) -> Self {
        Self::function(chart, RatPoly::constant(chart.len(), c))
    }

    /// The coordinate differential `d(x_i)`.
    pub fn dx(chart: &Arc<Chart>, i: usize) -> Self {
        let mut w = Self::zero(chart, 1);
        w.add_term(vec![i as u8], RatPoly::one(chart.len()));
        w
    }

    /// `f dx_{i1} ∧ … ∧ dx_{ik}` for any index order.
    pub fn monomial(chart: &Arc<Chart>, f: RatPoly, idx: &[usize]) -> Self {
        let mut w = Self::function(chart, f);
        for &i in idx {
            w = w.wedge(&Self::dx(chart, i));
        }
        w
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &RatPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[u8]) -> RatPoly {
        self.terms.get(idx).cloned().unwrap_or_else(|| RatPoly::zero(self.chart.len()))
    }

    /// The coefficient function of a 0-form.
    pub fn as_function(&self) -> Option<RatPoly> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    pub(crate) fn add_term(&mut self, idx: Vec<u8>, f: RatPoly) {
        debug_assert_eq!(idx.len(), self.degree);
        if f.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&f);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &DiffForm) {
        assert!(same_chart(&self.chart, &other.chart), "forms on different charts");
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        self.check(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut r = self.clone();
        for (k, f) in &other.terms {
            r.add_term(k.clone(), f.clone());
        }
        r
    }

    pub fn sub(&self, other: &DiffForm) -> DiffForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        self.scale(&-Rational::from_i64(1))
    }

    pub fn scale(&self, c: &Rational) -> DiffForm {
        if c.is_zero() {
            return Self::zero(&self.chart, self.degree);
        }
        DiffForm {
            degree: self.degree,
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect(),
        }
    }

    /// Multiply by a function.
    pub fn mul_fn(&self, g: &RatPoly) -> DiffForm {
        let mut r = Self::zero(&self.chart, self.degree);
        for (k, f) in &self.terms {
            r.add_term(k.clone(), f.mul(g));
        }
        r
    }

    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        self.check(other);
        let degree = self.degree + other.degree;
        let mut r = Self::zero(&self.chart, degree);
        if degree > self.chart.len() {
            return r;
        }
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some((idx, neg)) = merge_indices(a, b) {
                    let p = f.mul(g);
                    r.add_term(idx, if neg { p.neg() } else { p });
                }
            }
        }
        r
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let mut r = Self::zero(&self.chart, self.degree + 1);
        for (idx, f) in &self.terms {
            for j in 0..self.chart.len() {
                let df = f.partial_unchecked(j);
                if df.is_zero() {
                    continue;
                }
                if let Some((m, neg)) = merge_indices(&[j as u8], idx) {
                    r.add_term(m, if neg { df.neg() } else { df });
                }
            }
        }
        r
    }

    /// Interior product `X ⌟ ω`.
    pub fn interior(&self, x: &PolyVectorField) -> DiffForm {
        assert!(same_chart(&self.chart, &x.chart), "field and form on different charts");
        if self.degree == 0 {
            return Self::zero(&self.chart, 0);
        }
        let mut r = Self::zero(&self.chart, self.degree - 1);
        for (idx, f) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let xi = &x.components[i as usize];
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let p = f.mul(xi);
                r.add_term(rest, if pos % 2 == 1 { p.neg() } else { p });
            }
        }
        r
    }

    /// Lie derivative via Cartan's formula `i_Y dω + d(i_Y ω)`.
    pub fn lie_derivative(&self, y: &PolyVectorField) -> DiffForm {
        let a = self.d().interior(y);
        let b = self.interior(y).d();
        if self.degree == 0 {
            a
        } else {
            a.add(&b)
        }
    }

    /// Substitute each coordinate differential `dx_i` by a 1-form image
    /// (coefficients are kept), extended multiplicatively.
    pub fn pull_differentials(&self, images: &[DiffForm]) -> DiffForm {
        let mut r = Self::zero(&self.chart, self.degree);
        for (idx, f) in &self.terms {
            let mut t = Self::function(&self.chart, f.clone());
            for &i in idx {
                t = t.wedge(&images[i as usize]);
                if t.is_zero() {
                    break;
                }
            }
            if !t.is_zero() {
                r = r.add(&t);
            }
        }
        r
    }

    /// Evaluate coefficients at a point, keeping the form structure.
    pub fn at_point(&self, point: &[Rational]) -> DiffForm {
        let mut r = Self::zero(&self.chart, self.degree);
        for (idx, f) in &self.terms {
            r.add_term(idx.clone(), RatPoly::constant(self.chart.len(), f.eval(point)));
        }
        r
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|f| f.is_constant())
    }

    /// Coefficient polynomials of all terms, in index order.
    pub fn coefficients(&self) -> impl Iterator<Item = &RatPoly> {
        self.terms.values()
    }

    pub fn map_coefficients(&self, f: impl Fn(&RatPoly) -> RatPoly) -> DiffForm {
        let mut r = Self::zero(&self.chart, self.degree);
        for (idx, p) in &self.terms {
            r.add_term(idx.clone(), f(p));
        }
        r
    }
}

/// Vector field with polynomial components.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField {
    chart: Arc<Chart>,
    components: Vec<RatPoly>,
}

impl PolyVectorField {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        PolyVectorField { chart: chart.clone(), components: vec![RatPoly::zero(chart.len()); chart.len()] }
    }

    pub fn new(chart: &Arc<Chart>, components: Vec<RatPoly>) -> Result<Self> {
        if components.len() != chart.len() || components.iter().any(|c| c.nvars() != chart.len()) {
            return Err(Error::ChartMismatch("vector field component count".into()));
        }
        Ok(PolyVectorField { chart: chart.clone(), components })
    }

    /// Coordinate field `∂_i`.
    pub fn coord(chart: &Arc<Chart>, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.components[i] = RatPoly::one(chart.len());
        v
    }

    /// `f ∂_i`.
    pub fn single(chart: &Arc<Chart>, i: usize, f: RatPoly) -> Self {
        let mut v = Self::zero(chart);
        v.components[i] = f;
        v
    }

    /// Build from `(coordinate name, coefficient)` pairs.
    pub fn from_named(chart: &Arc<Chart>, parts: &[(&str, RatPoly)]) -> Result<Self> {
        let mut v = Self::zero(chart);
        for (n, f) in parts {
            let i = chart.index(n)?;
            v.components[i] = v.components[i].add(f);
        }
        Ok(v)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn components(&self) -> &[RatPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RatPoly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Directional derivative `Y(f)`.
    pub fn apply(&self, f: &RatPoly) -> RatPoly {
        let mut r = RatPoly::zero(self.chart.len());
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.partial_unchecked(i);
            if !df.is_zero() {
                r = r.add(&c.mul(&df));
            }
        }
        r
    }

    pub fn bracket(&self, other: &PolyVectorField) -> PolyVectorField {
        assert!(same_chart(&self.chart, &other.chart));
        let components = (0..self.chart.len())
            .map(|a| self.apply(&other.components[a]).sub(&other.apply(&self.components[a])))
            .collect();
        PolyVectorField { chart: self.chart.clone(), components }
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        self.axpy(&Rational::from_i64(1), other)
    }

    pub fn sub(&self, other: &PolyVectorField) -> PolyVectorField {
        self.axpy(&Rational::from_i64(-1), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rational, other: &PolyVectorField) -> PolyVectorField {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| {
                let mut a = a.clone();
                a.add_scaled(b, c);
                a
            })
            .collect();
        PolyVectorField { chart: self.chart.clone(), components }
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        PolyVectorField { chart: self.chart.clone(), components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_fn(&self, g: &RatPoly) -> PolyVectorField {
        PolyVectorField { chart: self.chart.clone(), components: self.components.iter().map(|p| p.mul(g)).collect() }
    }

    /// Values of the components at a point.
    pub fn at_point(&self, point: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Text form `x3*d/dx1 + ...` is not part of the grammar; this is a readable listing.
    pub fn describe(&self) -> String {
        let names = self.chart.names();
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})*∂{}", c.fmt_with(names), names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Complex form stored as a pair of real forms.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexForm {
    pub re: DiffForm,
    pub im: DiffForm,
}

impl ComplexForm {
    pub fn new(re: DiffForm, im: DiffForm) -> Self {
        assert!(same_chart(re.chart(), im.chart()));
        let degree = if re.is_zero() { im.degree() } else { re.degree() };
        let re = if re.is_zero() { DiffForm::zero(re.chart(), degree) } else { re };
        let im = if im.is_zero() { DiffForm::zero(im.chart(), degree) } else { im };
        ComplexForm { re, im }
    }

    pub fn real(re: DiffForm) -> Self {
        let im = DiffForm::zero(re.chart(), re.degree());
        ComplexForm { re, im }
    }

    pub fn degree(&self) -> usize {
        self.re.degree()
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.re.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexForm { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, o: &ComplexForm) -> Self {
        ComplexForm::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn wedge(&self, o: &ComplexForm) -> Self {
        let re = self.re.wedge(&o.re).sub(&self.im.wedge(&o.im));
        let im = self.re.wedge(&o.im).add(&self.im.wedge(&o.re));
        ComplexForm::new(re, im)
    }

    /// Wedge with a real form on the right.
    pub fn wedge_real(&self, o: &DiffForm) -> Self {
        ComplexForm::new(self.re.wedge(o), self.im.wedge(o))
    }

    pub fn d(&self) -> Self {
        ComplexForm::new(self.re.d(), self.im.d())
    }

    /// Lie derivative along a real field.
    pub fn lie_derivative(&self, y: &PolyVectorField) -> Self {
        ComplexForm::new(self.re.lie_derivative(y), self.im.lie_derivative(y))
    }

    pub fn pull_differentials(&self, images: &[DiffForm]) -> Self {
        ComplexForm::new(self.re.pull_differentials(images), self.im.pull_differentials(images))
    }
}

/// Complex vector field stored as a pair of real fields.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVectorField {
    pub re: PolyVectorField,
    pub im: PolyVectorField,
}

impl ComplexVectorField {
    pub fn conj(&self) -> Self {
        ComplexVectorField { re: self.re.clone(), im: self.im.scale(&Rational::from_i64(-1)) }
    }

    /// `Y + Ȳ`.
    pub fn real_part_doubled(&self) -> PolyVectorField {
        self.re.scale(&Rational::from_i64(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn chart(n: usize) -> Arc<Chart> {
        Chart::numbered("x", n)
    }

    #[test]
    fn d_of_dx_vanishes() {
        let c = chart(3);
        assert!(DiffForm::dx(&c, 0).d().is_zero());
    }

    #[test]
    fn d_of_monomial_coefficient() {
        let c = chart(3);
        let w = DiffForm::monomial(&c, RatPoly::var(3, 1), &[2]);
        assert_eq!(w.d(), DiffForm::dx(&c, 1).wedge(&DiffForm::dx(&c, 2)));
    }

    #[test]
    fn d_of_baby_lambda1() {
        let c = chart(7);
        let x = |i: usize| RatPoly::var(7, i - 1);
        let l1 = DiffForm::dx(&c, 4)
            .add(&DiffForm::monomial(&c, x(1), &[3]))
            .add(&DiffForm::monomial(&c, x(2), &[2]));
        let expect = DiffForm::monomial(&c, RatPoly::one(7), &[0, 3]).add(&DiffForm::monomial(&c, RatPoly::one(7), &[1, 2]));
        assert_eq!(l1.d(), expect);
    }

    #[test]
    fn wedge_basics() {
        let c = chart(4);
        let d1 = DiffForm::dx(&c, 0);
        let d2 = DiffForm::dx(&c, 1);
        assert!(d1.wedge(&d1).is_zero());
        assert!(d1.wedge(&d2).add(&d2.wedge(&d1)).is_zero());
        let a = DiffForm::monomial(&c, RatPoly::var(4, 0), &[1]);
        let b = DiffForm::monomial(&c, RatPoly::one(4), &[2, 3]);
        assert_eq!(a.wedge(&b), DiffForm::monomial(&c, RatPoly::var(4, 0), &[1, 2, 3]));
    }

    #[test]
    fn lie_derivative_examples() {
        let c = chart(5);
        let form = DiffForm::dx(&c, 4).add(&DiffForm::monomial(&c, RatPoly::var(5, 0), &[3]));
        assert!(form.lie_derivative(&PolyVectorField::coord(&c, 3)).is_zero());
        let euler = PolyVectorField::single(&c, 0, RatPoly::var(5, 0));
        assert_eq!(DiffForm::dx(&c, 0).lie_derivative(&euler), DiffForm::dx(&c, 0));
    }

    #[test]
    fn interior_sign() {
        let c = chart(2);
        let w = DiffForm::dx(&c, 0).wedge(&DiffForm::dx(&c, 1));
        let r = w.interior(&PolyVectorField::coord(&c, 1));
        assert_eq!(r, DiffForm::dx(&c, 0).scale(&int(-1)));
    }

    #[test]
    fn complex_wedge() {
        let c = chart(2);
        let mu = ComplexForm::new(DiffForm::dx(&c, 0), DiffForm::dx(&c, 1));
        let w = mu.wedge(&mu.conj());
        // (dx + i dy) ∧ (dx − i dy) = −2i dx∧dy
        assert!(w.re.is_zero());
        assert_eq!(w.im, DiffForm::dx(&c, 0).wedge(&DiffForm::dx(&c, 1)).scale(&int(-2)));
    }
}
