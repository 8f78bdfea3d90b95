//! Symmetry algebras by polynomial ansatz: every vector field whose components
//! have weighted degree at most a bound, filtered by the symmetry equations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::CrFlag;
use crate::eds::{Chart, ComplexForm, DiffForm, PolyVectorField};
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, Monomial, RatPoly, RatVector, Rational, SparseMatrix, SparseVec, SpanSolver};
use crate::nilpotent::PfaffianSystem;

/// What the fields must preserve.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Distribution(&'a PfaffianSystem),
    Cr(&'a CrFlag),
}

impl Target<'_> {
    fn system(&self) -> &PfaffianSystem {
        match self {
            Target::Distribution(s) => s,
            Target::Cr(f) => f.base(),
        }
    }
}

/// Solutions of the symmetry equations inside the ansatz, graded by
/// `weighted degree of the coefficient − weight of the coordinate`.
#[derive(Clone, Debug)]
pub struct SymmetryAlgebra {
    pub bound: u32,
    pub fields: Vec<PolyVectorField>,
    pub degrees: Vec<i32>,
    /// Number of independent constraint rows over all weight blocks.
    pub constraint_rows: usize,
    /// Brackets of basis elements whose degree stays within the ansatz,
    /// expressed in the basis.
    pub structure: BTreeMap<(usize, usize), RatVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryAlgebraJson {
    pub bound: u32,
    pub dimension: usize,
    pub graded_dims: Vec<(i32, usize)>,
    pub certificate_rows: usize,
    pub basis: Vec<String>,
}

impl SymmetryAlgebra {
    pub fn dim(&self) -> usize {
        self.fields.len()
    }

    pub fn graded_dims(&self) -> Vec<(i32, usize)> {
        let mut m: BTreeMap<i32, usize> = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn to_json(&self) -> SymmetryAlgebraJson {
        SymmetryAlgebraJson {
            bound: self.bound,
            dimension: self.dim(),
            graded_dims: self.graded_dims(),
            certificate_rows: self.constraint_rows,
            basis: self.fields.iter().map(|f| f.describe()).collect(),
        }
    }
}

fn monomials_up_to(weights: &[u32], bound: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        let mut e = 0u8;
        loop {
            cur[i] = e;
            rec(weights, i + 1, left - e as u32 * weights[i], cur, out);
            if (e as u32 + 1) * weights[i] > left {
                break;
            }
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(weights, 0, bound, &mut vec![0; weights.len()], &mut out);
    out
}

fn is_homogeneous(f: &DiffForm, weights: &[u32]) -> Option<u32> {
    let mut w = None;
    for (idx, p) in f.terms() {
        let dw: u32 = idx.iter().map(|&i| weights[i as usize]).sum();
        for (m, _) in p.terms() {
            let t = m.weighted_degree(weights) + dw;
            if *w.get_or_insert(t) != t {
                return None;
            }
        }
    }
    Some(w.unwrap_or(0))
}

type RowKey = (u8, usize, Vec<u8>, Monomial, bool);

fn push_form(out: &mut Vec<(RowKey, Rational)>, kind: u8, eq: usize, f: &DiffForm, im: bool) {
    for (idx, p) in f.terms() {
        for (m, c) in p.terms() {
            out.push(((kind, eq, idx.clone(), m.clone(), im), c.clone()));
        }
    }
}

fn conditions(target: &Target, y: &PolyVectorField) -> Vec<(RowKey, Rational)> {
    let sys = target.system();
    let chart = sys.chart();
    let mut out = Vec::new();
    match target {
        Target::Distribution(_) => {
            let ad = sys.adapted().expect("checked by caller");
            for (i, l) in sys.forms().iter().enumerate() {
                push_form(&mut out, 0, i, &ad.reduce(chart, &l.lie_derivative(y)), false);
            }
        }
        Target::Cr(flag) => {
            for (i, l) in sys.forms().iter().enumerate() {
                push_form(&mut out, 0, i, &flag.adapted().reduce(chart, &l.lie_derivative(y)), false);
            }
            for (a, m) in flag.mu().iter().enumerate() {
                let w: ComplexForm = flag.wedge_with_z(&m.lie_derivative(y));
                push_form(&mut out, 1, a, &w.re, false);
                push_form(&mut out, 1, a, &w.im, true);
            }
        }
    }
    out
}

/// Solve the symmetry equations for fields `Σ P_i ∂_i` with every `P_i` of
/// weighted degree at most `bound`.
pub fn brute_force_symmetry_algebra(target: Target, bound: u32) -> Result<SymmetryAlgebra> {
    let sys = target.system();
    let chart: Arc<Chart> = sys.chart().clone();
    let n = chart.len();
    let guard = crate::cost_guard(9);
    if n > guard {
        return Err(Error::CostGuard(format!(
            "chart of size {n} exceeds the brute-force limit {guard} (set TANAKA_COST_GUARD to override)"
        )));
    }
    sys.adapted()?;
    let weights = sys.weights().to_vec();
    let mut homogeneous = sys.forms().iter().all(|f| is_homogeneous(f, &weights).is_some());
    if let Target::Cr(flag) = target {
        homogeneous &= flag.mu().iter().all(|m| {
            let (a, b) = (is_homogeneous(&m.re, &weights), is_homogeneous(&m.im, &weights));
            a.is_some() && b.is_some() && (m.re.is_zero() || m.im.is_zero() || a == b)
        });
    }
    let monos = monomials_up_to(&weights, bound);
    // Ansatz coordinates (component, monomial) grouped into weight blocks.
    let mut blocks: BTreeMap<i32, Vec<(usize, Monomial)>> = BTreeMap::new();
    for i in 0..n {
        for m in &monos {
            let s = if homogeneous { m.weighted_degree(&weights) as i32 - weights[i] as i32 } else { 0 };
            blocks.entry(s).or_default().push((i, m.clone()));
        }
    }
    let mut coord_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for b in blocks.values() {
        for key in b {
            let l = coord_index.len();
            coord_index.insert(key.clone(), l);
        }
    }
    let field_of = |i: usize, m: &Monomial| PolyVectorField::single(&chart, i, RatPoly::term(n, m.clone(), Rational::from_integer(1.into())));

    let mut fields = Vec::new();
    let mut degrees = Vec::new();
    let mut constraint_rows = 0;
    for (&s, block) in &blocks {
        let mut rows: BTreeMap<RowKey, Vec<(usize, Rational)>> = BTreeMap::new();
        for (j, (i, m)) in block.iter().enumerate() {
            for (key, c) in conditions(&target, &field_of(*i, m)) {
                rows.entry(key).or_default().push((j, c));
            }
        }
        let mat = SparseMatrix::from_rows(block.len(), rows.into_values().map(SparseVec::from_pairs).collect());
        let kernel = kernel_basis(&mat);
        constraint_rows += block.len() - kernel.len();
        for v in kernel {
            let mut comps = vec![RatPoly::zero(n); n];
            for (j, c) in v.iter() {
                let (i, m) = &block[j];
                comps[*i].add_term(m.clone(), c);
            }
            fields.push(PolyVectorField::new(&chart, comps)?);
            degrees.push(s);
        }
    }
    let structure = close_under_brackets(&chart, &fields, &degrees, &coord_index, bound, &weights)?;
    let alg = SymmetryAlgebra { bound, fields, degrees, constraint_rows, structure };
    check_jacobi(&alg)?;
    Ok(alg)
}

fn coords_of(f: &PolyVectorField, index: &BTreeMap<(usize, Monomial), usize>) -> Option<RatVector> {
    let mut pairs = Vec::new();
    for (i, p) in f.components().iter().enumerate() {
        for (m, c) in p.terms() {
            pairs.push((*index.get(&(i, m.clone()))?, c.clone()));
        }
    }
    Some(SparseVec::from_pairs(pairs))
}

fn close_under_brackets(
    chart: &Arc<Chart>,
    fields: &[PolyVectorField],
    degrees: &[i32],
    index: &BTreeMap<(usize, Monomial), usize>,
    bound: u32,
    weights: &[u32],
) -> Result<BTreeMap<(usize, usize), RatVector>> {
    let vecs: Vec<RatVector> = fields.iter().map(|f| coords_of(f, index).expect("in ansatz")).collect();
    let solver = SpanSolver::new(index.len(), &vecs);
    let mut out = BTreeMap::new();
    for a in 0..fields.len() {
        for b in a + 1..fields.len() {
            let br = fields[a].bracket(&fields[b]);
            if br.is_zero() {
                out.insert((a, b), SparseVec::new());
                continue;
            }
            let fits = br.components().iter().all(|p| p.weighted_degree(weights).is_none_or(|d| d <= bound));
            if !fits {
                continue;
            }
            let v = coords_of(&br, index).expect("fits in ansatz");
            let coeffs = solver.express(&v).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "bracket of symmetries {} and {} (degrees {}, {}) leaves the solution space on {}",
                    a + 1,
                    b + 1,
                    degrees[a],
                    degrees[b],
                    chart.names().join(",")
                ))
            })?;
            out.insert((a, b), coeffs);
        }
    }
    Ok(out)
}

fn bracket_coeffs(alg: &SymmetryAlgebra, x: &RatVector, y: &RatVector) -> Option<RatVector> {
    let mut acc = SparseVec::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            if a == b {
                continue;
            }
            let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
            let v = alg.structure.get(&key)?;
            let c = ca * cb * Rational::from_integer(sign.into());
            acc = acc.axpy(&c, v);
        }
    }
    Some(acc)
}

/// Jacobi identity on every triple whose nested brackets are all known.
fn check_jacobi(alg: &SymmetryAlgebra) -> Result<()> {
    let d = alg.dim();
    let e = |i: usize| SparseVec::unit(i);
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                let terms = [(a, b, c), (b, c, a), (c, a, b)];
                let mut sum = SparseVec::new();
                let mut known = true;
                for (x, y, z) in terms {
                    match bracket_coeffs(alg, &e(y), &e(z)).and_then(|yz| bracket_coeffs(alg, &e(x), &yz)) {
                        Some(v) => sum = sum.add(&v),
                        None => known = false,
                    }
                }
                if known && !sum.is_zero() {
                    return Err(Error::Inconsistent(format!("Jacobi identity fails on symmetries {}, {}, {}", a + 1, b + 1, c + 1)));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::CrFlag;
    use crate::eds::parse_form;

    fn baby() -> PfaffianSystem {
        PfaffianSystem::from_text(
            &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
            &[1, 1, 1, 1, 2, 2, 2],
            &["d(x5) + x1*d(x4) + x2*d(x3)", "d(x6) + x3*d(x4) + x1*d(x2)", "d(x7) + x3*d(x1) + x2*d(x4)"],
        )
        .unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(&[1, 2], 2).len(), 4);
        assert_eq!(monomials_up_to(&[1, 1, 1], 2).len(), 10);
    }

    #[test]
    fn heisenberg_contact_symmetries() {
        let sys = PfaffianSystem::from_text(&["x", "y", "u"], &[1, 1, 2], &["d(u) + x*d(y) - y*d(x)"]).unwrap();
        // Contact algebra in dimension 3 is infinite; the ansatz count grows with the bound.
        let a2 = brute_force_symmetry_algebra(Target::Distribution(&sys), 2).unwrap();
        let a3 = brute_force_symmetry_algebra(Target::Distribution(&sys), 3).unwrap();
        assert!(a3.dim() > a2.dim());
        assert_eq!(a2.graded_dims().first(), Some(&(-2, 1)));
    }

    #[test]
    fn example_distribution_and_cr_dimensions() {
        let sys = baby();
        let alg = brute_force_symmetry_algebra(Target::Distribution(&sys), 4).unwrap();
        assert_eq!(alg.dim(), 21);
        assert_eq!(alg.graded_dims(), vec![(-2, 3), (-1, 4), (0, 7), (1, 4), (2, 3)]);
        let c = sys.chart().clone();
        let mu = vec![
            ComplexForm::new(parse_form("d(x1)", &c).unwrap(), parse_form("d(x4)", &c).unwrap()),
            ComplexForm::new(parse_form("d(x2)", &c).unwrap(), parse_form("-d(x3)", &c).unwrap()),
        ];
        let flag = CrFlag::new(sys, mu).unwrap();
        let cr = brute_force_symmetry_algebra(Target::Cr(&flag), 4).unwrap();
        assert_eq!(cr.dim(), 12);
        for f in &cr.fields {
            assert!(crate::cr::is_cr_symmetry(f, &flag));
        }
    }
}
