use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::scalar::{Field, Rational};
use crate::error::{Error, Result};

/// Dense exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a field, in `nvars` chart variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

pub type RatPoly = Poly<Rational>;

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, i), F::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly<F>, c: &F) {
        assert_eq!(self.nvars, other.nvars, "polynomial chart mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), &a.mul_ref(c));
        }
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let mut r = self.clone();
        r.add_scaled(other, &F::one());
        r
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        let mut r = self.clone();
        r.add_scaled(other, &-F::one());
        r
    }

    pub fn neg(&self) -> Poly<F> {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        assert_eq!(self.nvars, other.nvars, "polynomial chart mismatch");
        let mut r = Self::zero(self.nvars);
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                r.add_term(m1.mul(m2), &a.mul_ref(b));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly<F> {
        let mut r = Self::one(self.nvars);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Formal partial derivative with respect to variable index `i`.
    pub fn partial(&self, i: usize) -> Result<Poly<F>> {
        if i >= self.nvars {
            return Err(Error::UnknownVariable(format!("#{i}")));
        }
        Ok(self.partial_unchecked(i))
    }

    pub(crate) fn partial_unchecked(&self, i: usize) -> Poly<F> {
        let mut r = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            r.add_term(m2, &a.mul_ref(&F::from_i64(e as i64)));
        }
        r
    }

    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, a) in &self.terms {
            let mut t = a.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitute polynomial images (in a chart of `target_nvars` variables) for every variable.
    pub fn compose(&self, images: &[Poly<F>], target_nvars: usize) -> Poly<F> {
        assert_eq!(images.len(), self.nvars);
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::one(target_nvars), p.clone()]).collect();
        let mut r = Poly::zero(target_nvars);
        for (m, a) in &self.terms {
            let mut t = Poly::constant(target_nvars, a.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            r.add_scaled(&t, &F::one());
        }
        r
    }

    /// Replace variable `i` by the polynomial `q`.
    pub fn substitute(&self, i: usize, q: &Poly<F>) -> Poly<F> {
        let images: Vec<Poly<F>> = (0..self.nvars)
            .map(|j| if j == i { q.clone() } else { Poly::var(self.nvars, j) })
            .collect();
        self.compose(&images, self.nvars)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(m, a)| (m.clone(), f(a))))
    }

    /// Re-index into a chart of `nvars` variables, variable `i` going to `map[i]`.
    pub fn reindex(&self, nvars: usize, map: &[usize]) -> Poly<F> {
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, a)| {
                let mut e = vec![0u8; nvars];
                for (i, &k) in m.0.iter().enumerate() {
                    e[map[i]] += k;
                }
                (Monomial(e), a.clone())
            }),
        )
    }
}

impl RatPoly {
    /// Human-readable form, highest graded-lex term first, e.g. `-1/2*x1^2 + x3`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(m, names);
            match (a.is_one(), mono.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&mono),
                (false, true) => write!(s, "{a}").unwrap(),
                (false, false) => write!(s, "{a}*{mono}").unwrap(),
            }
        }
        s
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, rat};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn partial_of_x2y() {
        let x = RatPoly::var(2, 0);
        let y = RatPoly::var(2, 1);
        let p = x.mul(&x).mul(&y);
        assert_eq!(p.partial(0).unwrap(), x.mul(&y).scale(&int(2)));
        assert!(x.mul(&x).partial(1).unwrap().is_zero());
        assert!(p.partial(2).is_err());
    }

    #[test]
    fn partial_of_e2_defining_function() {
        // chart x1..x4, y1..y4
        let v = |i| RatPoly::var(8, i);
        let phi = v(1).mul(&v(2)).add(&v(0).mul(&v(3))).add(&v(5).mul(&v(6))).add(&v(4).mul(&v(7)));
        assert_eq!(phi.partial(0).unwrap(), v(3));
    }

    #[test]
    fn printing() {
        let x = RatPoly::var(2, 0);
        let y = RatPoly::var(2, 1);
        let p = x.mul(&x).scale(&rat(-1, 2)).add(&y).add(&RatPoly::one(2));
        assert_eq!(p.fmt_with(&names(&["x", "y"])), "-1/2*x^2 + y + 1");
    }

    #[test]
    fn substitution() {
        let x = RatPoly::var(2, 0);
        let y = RatPoly::var(2, 1);
        let p = x.mul(&y);
        let q = p.substitute(1, &x.add(&RatPoly::one(2)));
        assert_eq!(q, x.mul(&x).add(&x));
    }
}
