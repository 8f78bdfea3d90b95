//! Holomorphic vector fields on `ℂ^N` and their tangency to real graphs
//! `coord = rhs` inside it.

use std::sync::Arc;

use crate::eds::{Chart, ComplexVectorField, PolyVectorField};
use crate::error::{Error, Result};
use crate::exact::{rat, ComplexRational, RatPoly, Rational};

/// Complex-valued polynomial `re + i·im` in real coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CPoly {
    pub re: RatPoly,
    pub im: RatPoly,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly { re: RatPoly::zero(nvars), im: RatPoly::zero(nvars) }
    }

    pub fn real(re: RatPoly) -> Self {
        let im = RatPoly::zero(re.nvars());
        CPoly { re, im }
    }

    pub fn constant(nvars: usize, c: &ComplexRational) -> Self {
        CPoly { re: RatPoly::constant(nvars, c.re.clone()), im: RatPoly::constant(nvars, c.im.clone()) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        CPoly { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        CPoly { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> CPoly {
        CPoly { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &CPoly) -> CPoly {
        CPoly { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }

    pub fn scale(&self, c: &Rational) -> CPoly {
        CPoly { re: self.re.scale(c), im: self.im.scale(c) }
    }

    /// `i · self`.
    pub fn times_i(&self) -> CPoly {
        CPoly { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn conj(&self) -> CPoly {
        CPoly { re: self.re.clone(), im: self.im.neg() }
    }
}

/// Real equation `coordinate = rhs`; `rhs` must not involve eliminated coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphEquation {
    pub coord: usize,
    pub rhs: RatPoly,
}

/// Real submanifold of `ℂ^N` given as a graph over some real coordinates.
#[derive(Clone, Debug)]
pub struct EmbeddedModel {
    chart: Arc<Chart>,
    /// `(name, index of real part, index of imaginary part)` per complex coordinate.
    holo: Vec<(String, usize, usize)>,
    equations: Vec<GraphEquation>,
}

impl EmbeddedModel {
    /// Complex coordinates given as `(name, real-part name, imaginary-part name)`.
    pub fn new<S: AsRef<str>>(coords: &[(S, S, S)]) -> Result<Self> {
        let names: Vec<&str> = coords.iter().flat_map(|(_, a, b)| [a.as_ref(), b.as_ref()]).collect();
        let chart = Chart::new(&names)?;
        let holo = coords.iter().enumerate().map(|(k, (n, _, _))| (n.as_ref().to_string(), 2 * k, 2 * k + 1)).collect();
        Ok(EmbeddedModel { chart, holo, equations: Vec::new() })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn nvars(&self) -> usize {
        self.chart.len()
    }

    pub fn equations(&self) -> &[GraphEquation] {
        &self.equations
    }

    /// Add `coord = rhs` where `coord` is a real coordinate name.
    pub fn add_equation(&mut self, coord: &str, rhs: RatPoly) -> Result<()> {
        let coord = self.chart.index(coord)?;
        if rhs.nvars() != self.chart.len() {
            return Err(Error::ChartMismatch("equation rhs is on another chart".into()));
        }
        if self.equations.iter().any(|e| e.coord == coord) {
            return Err(Error::InvalidParams(format!("{} is eliminated twice", self.chart.names()[coord])));
        }
        self.equations.push(GraphEquation { coord, rhs });
        Ok(())
    }

    fn holo_index(&self, name: &str) -> Result<usize> {
        self.holo.iter().position(|h| h.0 == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// The complex coordinate `ζ = re + i·im`.
    pub fn var(&self, name: &str) -> Result<CPoly> {
        let (_, a, b) = &self.holo[self.holo_index(name)?];
        let n = self.nvars();
        Ok(CPoly { re: RatPoly::var(n, *a), im: RatPoly::var(n, *b) })
    }

    /// `Y = Σ F_ζ ∂_ζ` as a complex field on the real chart,
    /// using `∂_ζ = ½(∂_a − i ∂_b)`.
    pub fn holomorphic_field(&self, parts: &[(&str, CPoly)]) -> Result<ComplexVectorField> {
        let n = self.nvars();
        let mut re = vec![RatPoly::zero(n); n];
        let mut im = vec![RatPoly::zero(n); n];
        let half = rat(1, 2);
        for (name, f) in parts {
            let (_, a, b) = self.holo[self.holo_index(name)?].clone();
            re[a] = re[a].add(&f.re.scale(&half));
            re[b] = re[b].add(&f.im.scale(&half));
            im[a] = im[a].add(&f.im.scale(&half));
            im[b] = im[b].sub(&f.re.scale(&half));
        }
        Ok(ComplexVectorField { re: PolyVectorField::new(&self.chart, re)?, im: PolyVectorField::new(&self.chart, im)? })
    }

    /// Residuals `R(coord − rhs)` restricted to the graph, one per equation.
    pub fn tangency_defects(&self, r: &PolyVectorField) -> Result<Vec<RatPoly>> {
        let elim: Vec<usize> = self.equations.iter().map(|e| e.coord).collect();
        for e in &self.equations {
            if e.rhs.terms().any(|(m, _)| elim.iter().any(|&c| m.0[c] > 0)) {
                return Err(Error::Unsupported("equation rhs involves an eliminated coordinate".into()));
            }
        }
        Ok(self
            .equations
            .iter()
            .map(|e| {
                let mut g = r.component(e.coord).sub(&r.apply(&e.rhs));
                for other in &self.equations {
                    g = g.substitute(other.coord, &other.rhs);
                }
                g
            })
            .collect())
    }

    /// Whether the real field `Y + Ȳ` is tangent to the graph.
    pub fn tangency_check(&self, y: &ComplexVectorField) -> Result<bool> {
        Ok(self.tangency_defects(&y.real_part_doubled())?.iter().all(|g| g.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    /// Heisenberg sphere `Im w = |z|²` in `ℂ²`.
    fn sphere() -> EmbeddedModel {
        let mut m = EmbeddedModel::new(&[("z", "x", "y"), ("w", "u", "v")]).unwrap();
        let c = m.chart().clone();
        let rhs = c.var("x").unwrap().pow(2).add(&c.var("y").unwrap().pow(2));
        m.add_equation("v", rhs).unwrap();
        m
    }

    #[test]
    fn sphere_symmetries() {
        let m = sphere();
        let z = m.var("z").unwrap();
        let w = m.var("w").unwrap();
        let n = m.nvars();
        let one = CPoly::real(RatPoly::one(n));
        let tangent = [
            vec![("w", one.clone())],
            vec![("z", one.clone()), ("w", z.scale(&int(2)).times_i())],
            vec![("z", z.clone()), ("w", w.scale(&int(2)))],
            vec![("z", z.times_i())],
            vec![("z", z.mul(&w)), ("w", w.mul(&w))],
        ];
        for parts in &tangent {
            assert!(m.tangency_check(&m.holomorphic_field(parts).unwrap()).unwrap());
        }
        let bad = [vec![("z", one.clone())], vec![("w", one.times_i())], vec![("z", z.clone())]];
        for parts in &bad {
            assert!(!m.tangency_check(&m.holomorphic_field(parts).unwrap()).unwrap());
        }
    }

    #[test]
    fn real_part_of_holomorphic_field() {
        let m = sphere();
        let y = m.holomorphic_field(&[("z", m.var("z").unwrap().times_i())]).unwrap();
        let r = y.real_part_doubled();
        // i z ∂_z + c.c. = −y ∂_x + x ∂_y
        assert_eq!(r.component(0), &m.var("z").unwrap().im.neg());
        assert_eq!(r.component(1), &m.var("z").unwrap().re);
    }
}
