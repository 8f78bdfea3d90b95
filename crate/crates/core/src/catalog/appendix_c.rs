//! Holomorphic generators of the symmetry algebra of `Im w^{ij} = Im(z^i z̄^j)`.

use std::collections::BTreeMap;

use crate::cr::{CPoly, EmbeddedModel};
use crate::eds::{ComplexVectorField, PolyVectorField};
use crate::error::{Error, Result};
use crate::exact::{Monomial, RatPoly, RatVector, Rational, SpanSolver};

/// A generator with its label and degree.
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub degree: i32,
    pub field: ComplexVectorField,
}

/// The embedded quadric for `SO(ℓ−1, ℓ+1)` with the printed generators.
#[derive(Clone, Debug)]
pub struct SoGenerators {
    pub model: EmbeddedModel,
    pub generators: Vec<Generator>,
}

fn wname(i: usize, j: usize) -> String {
    format!("w{i}_{j}")
}

/// The quadric model: `z^i = x_i + i y_i`, `w^{ij} = u_i_j + i v_i_j`, with `v_i_j` eliminated.
pub fn so_model(ell: usize) -> Result<EmbeddedModel> {
    if ell < 4 {
        return Err(Error::InvalidParams("ℓ must be at least 4".into()));
    }
    let n = ell - 1;
    let mut coords: Vec<(String, String, String)> = (1..=n).map(|i| (format!("z{i}"), format!("x{i}"), format!("y{i}"))).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            coords.push((wname(i, j), format!("u{i}_{j}"), format!("v{i}_{j}")));
        }
    }
    let mut m = EmbeddedModel::new(&coords)?;
    for i in 1..=n {
        for j in i + 1..=n {
            let zi = m.var(&format!("z{i}"))?;
            let zj = m.var(&format!("z{j}"))?;
            m.add_equation(&format!("v{i}_{j}"), zi.mul(&zj.conj()).im)?;
        }
    }
    Ok(m)
}

struct Builder<'a> {
    m: &'a EmbeddedModel,
    n: usize,
}

impl Builder<'_> {
    fn z(&self, i: usize) -> CPoly {
        self.m.var(&format!("z{i}")).expect("coordinate")
    }

    fn w(&self, i: usize, j: usize) -> CPoly {
        assert!(i < j);
        self.m.var(&wname(i, j)).expect("coordinate")
    }

    fn one(&self) -> CPoly {
        CPoly::real(RatPoly::one(self.m.nvars()))
    }

    fn field(&self, parts: BTreeMap<String, CPoly>) -> ComplexVectorField {
        let parts: Vec<(&str, CPoly)> = parts.iter().filter(|(_, p)| !p.is_zero()).map(|(k, p)| (k.as_str(), p.clone())).collect();
        self.m.holomorphic_field(&parts).expect("model coordinates")
    }
}

fn push(parts: &mut BTreeMap<String, CPoly>, key: String, p: CPoly) {
    let e = parts.entry(key).or_insert_with(|| CPoly::zero(p.re.nvars()));
    *e = e.add(&p);
}

fn det(a: &CPoly, b: &CPoly, c: &CPoly, d: &CPoly) -> CPoly {
    a.mul(d).sub(&b.mul(c))
}

/// All printed generators of degrees −2, −1, 0, 1, 2 for `ℓ ≥ 4`; degree 0
/// holds the `Y0_ij` and the rotation `R`. The dilation is `Σ Y0_ii`, see [`dilation`].
pub fn appendix_c_generators(ell: usize) -> Result<SoGenerators> {
    let model = so_model(ell)?;
    let n = ell - 1;
    let b = Builder { m: &model, n };
    let mut gens = Vec::new();
    let mut add = |label: String, degree: i32, parts: BTreeMap<String, CPoly>| gens.push(Generator { label, degree, field: b.field(parts) });

    for i in 1..=n {
        for j in i + 1..=n {
            add(format!("Y-2_{i}{j}"), -2, BTreeMap::from([(wname(i, j), b.one())]));
        }
    }
    for imag in [false, true] {
        for i in 1..=n {
            // IY flips the sign of the w-terms before multiplying by i.
            let s = if imag { b.one().neg() } else { b.one() };
            let mut p = BTreeMap::new();
            push(&mut p, format!("z{i}"), b.one());
            for k in 1..i {
                push(&mut p, wname(k, i), b.z(k).mul(&s));
            }
            for k in i + 1..=n {
                push(&mut p, wname(i, k), b.z(k).mul(&s).neg());
            }
            if imag {
                p = p.into_iter().map(|(k, v)| (k, v.times_i())).collect();
            }
            add(format!("{}Y-1_{i}", if imag { "I" } else { "" }), -1, p);
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let mut p = BTreeMap::new();
            push(&mut p, format!("z{j}"), b.z(i));
            if i < j {
                for k in 1..i {
                    push(&mut p, wname(k, j), b.w(k, i));
                }
                for k in i + 1..j {
                    push(&mut p, wname(k, j), b.w(i, k).neg());
                }
                for k in j + 1..=n {
                    push(&mut p, wname(j, k), b.w(i, k));
                }
            } else if i == j {
                for k in 1..i {
                    push(&mut p, wname(k, i), b.w(k, i));
                }
                for k in i + 1..=n {
                    push(&mut p, wname(i, k), b.w(i, k));
                }
            } else {
                for k in 1..j {
                    push(&mut p, wname(k, j), b.w(k, i));
                }
                for k in j + 1..i {
                    push(&mut p, wname(j, k), b.w(k, i).neg());
                }
                for k in i + 1..=n {
                    push(&mut p, wname(j, k), b.w(i, k));
                }
            }
            add(format!("Y0_{i}{j}"), 0, p);
        }
    }
    let mut rot = BTreeMap::new();
    for k in 1..=n {
        push(&mut rot, format!("z{k}"), b.z(k).times_i());
    }
    add("R".into(), 0, rot);

    for imag in [false, true] {
        for i in 1..=n {
            let mut p = BTreeMap::new();
            let zi = b.z(i);
            for k in 1..=n {
                let mut c = zi.mul(&b.z(k));
                if k < i {
                    c = if imag { c.add(&b.w(k, i)) } else { c.sub(&b.w(k, i)) };
                } else if k > i {
                    c = if imag { c.sub(&b.w(i, k)) } else { c.add(&b.w(i, k)) };
                }
                push(&mut p, format!("z{k}"), if imag { c.times_i() } else { c });
            }
            let mut wp = BTreeMap::new();
            for k in 1..i {
                push(&mut wp, wname(k, i), zi.mul(&b.w(k, i)));
            }
            for m in i + 1..=n {
                push(&mut wp, wname(i, m), zi.mul(&b.w(i, m)));
            }
            for k in 1..=n {
                for m in k + 1..=n {
                    if k == i || m == i {
                        continue;
                    }
                    let (zk, zm) = (b.z(k), b.z(m));
                    let d = if m < i {
                        det(&zk, &b.w(k, i).neg(), &zm, &b.w(m, i).neg())
                    } else if k < i {
                        det(&zk, &b.w(k, i).neg(), &zm, &b.w(i, m))
                    } else {
                        det(&zk, &b.w(i, k), &zm, &b.w(i, m))
                    };
                    push(&mut wp, wname(k, m), d);
                }
            }
            for (key, v) in wp {
                push(&mut p, key, if imag { v.times_i() } else { v });
            }
            add(format!("{}Y1_{i}", if imag { "I" } else { "" }), 1, p);
        }
    }

    for i in 1..=n {
        for j in i + 1..=n {
            let mut p = BTreeMap::new();
            let (zi, zj, wij) = (b.z(i), b.z(j), b.w(i, j));
            for k in 1..=n {
                let c = if k < i {
                    det(&zi, &b.w(k, i), &zj, &b.w(k, j))
                } else if k == i {
                    zi.mul(&wij)
                } else if k < j {
                    det(&zi, &b.w(i, k).neg(), &zj, &b.w(k, j))
                } else if k == j {
                    zj.mul(&wij)
                } else {
                    det(&zi, &b.w(i, k).neg(), &zj, &b.w(j, k).neg())
                };
                push(&mut p, format!("z{k}"), c);
            }
            for k in 1..i {
                push(&mut p, wname(k, i), wij.mul(&b.w(k, i)));
                push(&mut p, wname(k, j), wij.mul(&b.w(k, j)));
            }
            for m in i + 1..j {
                push(&mut p, wname(i, m), wij.mul(&b.w(i, m)));
            }
            push(&mut p, wname(i, j), wij.mul(&wij));
            for m in j + 1..=n {
                push(&mut p, wname(i, m), wij.mul(&b.w(i, m)));
                push(&mut p, wname(j, m), wij.mul(&b.w(j, m)));
            }
            for k in i + 1..j {
                push(&mut p, wname(k, j), wij.mul(&b.w(k, j)));
            }
            // Row entries (−w^{ki}, −w^{kj}) for k < i, (w^{ik}, −w^{kj}) for i < k < j,
            // (w^{ik}, w^{jk}) for k > j.
            let row = |k: usize| -> (CPoly, CPoly) {
                if k < i {
                    (b.w(k, i).neg(), b.w(k, j).neg())
                } else if k < j {
                    (b.w(i, k), b.w(k, j).neg())
                } else {
                    (b.w(i, k), b.w(j, k))
                }
            };
            for k in 1..=n {
                for m in k + 1..=n {
                    if [k, m].iter().any(|&x| x == i || x == j) {
                        continue;
                    }
                    let ((a, bb), (c, d)) = (row(k), row(m));
                    push(&mut p, wname(k, m), det(&a, &bb, &c, &d));
                }
            }
            add(format!("Y2_{i}{j}"), 2, p);
        }
    }
    Ok(SoGenerators { model, generators: gens })
}

/// `Σ z^k ∂_{z^k} + c Σ w^{km} ∂_{w^{km}}` on the quadric model.
fn dilation_with(model: &EmbeddedModel, ell: usize, c: i64) -> ComplexVectorField {
    let b = Builder { m: model, n: ell - 1 };
    let mut p = BTreeMap::new();
    for k in 1..=b.n {
        push(&mut p, format!("z{k}"), b.z(k));
        for m in k + 1..=b.n {
            push(&mut p, wname(k, m), b.w(k, m).scale(&Rational::from_integer(c.into())));
        }
    }
    b.field(p)
}

/// The weighted dilation `Σ z^k ∂_{z^k} + 2 Σ w^{km} ∂_{w^{km}}`, equal to `Σ Y0_ii`.
pub fn dilation(model: &EmbeddedModel, ell: usize) -> ComplexVectorField {
    dilation_with(model, ell, 2)
}

/// The printed dilation `Σ z^k ∂_{z^k} + Σ w^{km} ∂_{w^{km}}`, which is not tangent to the quadric.
pub fn printed_dilation(model: &EmbeddedModel, ell: usize) -> ComplexVectorField {
    dilation_with(model, ell, 1)
}

/// Pairs whose bracket leaves the span of the layer of the expected degree.
#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub pairs_checked: usize,
    pub failures: Vec<(String, String)>,
}

/// Check `[g_i, g_j] ⊆ g_{i+j}` for the real fields `Y + Ȳ` of `gens`, with
/// `g_d = 0` outside the degrees present.
pub fn bracket_closure(gens: &[Generator]) -> ClosureReport {
    let real: Vec<PolyVectorField> = gens.iter().map(|g| g.field.real_part_doubled()).collect();
    let mut brackets = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            brackets.push((a, b, real[a].bracket(&real[b])));
        }
    }
    let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut vectorize = |f: &PolyVectorField| -> RatVector {
        let mut pairs = Vec::new();
        for (i, c) in f.components().iter().enumerate() {
            for (m, x) in c.terms() {
                let n = keys.len();
                let k = *keys.entry((i, m.clone())).or_insert(n);
                pairs.push((k, x.clone()));
            }
        }
        RatVector::from_pairs(pairs)
    };
    let gen_vecs: Vec<RatVector> = real.iter().map(&mut vectorize).collect();
    let bracket_vecs: Vec<(usize, usize, RatVector)> = brackets.iter().map(|(a, b, f)| (*a, *b, vectorize(f))).collect();
    let dim = keys.len();
    let mut solvers: BTreeMap<i32, SpanSolver<Rational>> = BTreeMap::new();
    for d in gens.iter().map(|g| g.degree) {
        solvers.entry(d).or_insert_with(|| {
            let layer: Vec<RatVector> = gens.iter().zip(&gen_vecs).filter(|(g, _)| g.degree == d).map(|(_, v)| v.clone()).collect();
            SpanSolver::new(dim, &layer)
        });
    }
    let mut report = ClosureReport::default();
    for (a, b, v) in bracket_vecs {
        report.pairs_checked += 1;
        let ok = match solvers.get(&(gens[a].degree + gens[b].degree)) {
            Some(s) => s.contains(&v),
            None => v.is_zero(),
        };
        if !ok {
            report.failures.push((gens[a].label.clone(), gens[b].label.clone()));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_ell_4() {
        let g = appendix_c_generators(4).unwrap();
        let count = |d: i32| g.generators.iter().filter(|x| x.degree == d).count();
        assert_eq!((count(-2), count(-1), count(0), count(1), count(2)), (3, 6, 10, 6, 3));
    }

    #[test]
    fn generators_are_tangent_and_close() {
        for ell in [4, 5] {
            let g = appendix_c_generators(ell).unwrap();
            assert_eq!(g.generators.len(), ell * (2 * ell - 1));
            for gen in &g.generators {
                assert!(g.model.tangency_check(&gen.field).unwrap(), "{ell}: {}", gen.label);
            }
            let r = bracket_closure(&g.generators);
            assert_eq!(r.pairs_checked, g.generators.len() * (g.generators.len() - 1) / 2);
            assert!(r.failures.is_empty(), "{:?}", r.failures);
        }
    }

    #[test]
    fn dilation_is_the_trace_of_y0() {
        let ell = 4;
        let g = appendix_c_generators(ell).unwrap();
        let sum = g
            .generators
            .iter()
            .filter(|x| (1..ell).any(|i| x.label == format!("Y0_{i}{i}")))
            .fold(PolyVectorField::zero(g.model.chart()), |acc, x| acc.add(&x.field.real_part_doubled()));
        assert_eq!(sum, dilation(&g.model, ell).real_part_doubled());
        assert!(g.model.tangency_check(&dilation(&g.model, ell)).unwrap());
        assert!(!g.model.tangency_check(&printed_dilation(&g.model, ell)).unwrap());
    }
}
