//! CR flags over Pfaffian systems: defining functions, integrability and
//! symmetry checks, brute-force symmetry algebras, and tangency of
//! holomorphic fields to embedded models.

pub mod brute;
pub mod embedded;

use std::sync::Arc;

use num_traits::Zero;

use crate::eds::{parse_poly, Chart, ComplexForm, DiffForm, PolyVectorField};
use crate::error::{Error, Result};
use crate::exact::linalg::span_rank;
use crate::exact::{imag_unit, ComplexRational, Echelon, RatMat, RatPoly, Rational, SparseVec};
use crate::nilpotent::{Adapted, PfaffianSystem};

pub use brute::{brute_force_symmetry_algebra, SymmetryAlgebra, Target};
pub use embedded::{CPoly, EmbeddedModel, GraphEquation};

/// Graph `Im(w_i) = Φ^i(x, y)` over `ℂ^n`, with `z_α = x_α + i y_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningSystem {
    n: usize,
    chart: Arc<Chart>,
    phi: Vec<RatPoly>,
}

impl DefiningSystem {
    /// `phi` lives on the chart `x1..xn, y1..yn`.
    pub fn new(n: usize, phi: Vec<RatPoly>) -> Result<Self> {
        let chart = Self::xy_chart(n);
        if phi.iter().any(|p| p.nvars() != 2 * n) {
            return Err(Error::ChartMismatch("defining functions must use x1..xn, y1..yn".into()));
        }
        if phi.is_empty() {
            return Err(Error::Degenerate("no defining functions".into()));
        }
        let mut keys = std::collections::BTreeMap::new();
        let rows: Vec<SparseVec<Rational>> = phi
            .iter()
            .map(|p| {
                SparseVec::from_pairs(p.terms().map(|(m, c)| {
                    let l = keys.len();
                    (*keys.entry(m.clone()).or_insert(l), c.clone())
                }))
            })
            .collect();
        if span_rank(keys.len(), &rows) != rows.len() {
            return Err(Error::Degenerate("defining functions are linearly dependent".into()));
        }
        Ok(DefiningSystem { n, chart, phi })
    }

    /// Parse the defining functions in the text grammar on `x1..xn, y1..yn`.
    pub fn from_text<S: AsRef<str>>(n: usize, phi: &[S]) -> Result<Self> {
        let chart = Self::xy_chart(n);
        let phi = phi.iter().map(|s| parse_poly(s.as_ref(), &chart)).collect::<Result<Vec<_>>>()?;
        Self::new(n, phi)
    }

    fn xy_chart(n: usize) -> Arc<Chart> {
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.extend((1..=n).map(|i| format!("y{i}")));
        Chart::new(&names).expect("valid chart")
    }

    pub fn cr_dim(&self) -> usize {
        self.n
    }

    pub fn cr_codim(&self) -> usize {
        self.phi.len()
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn phi(&self) -> &[RatPoly] {
        &self.phi
    }
}

/// A Pfaffian system `λ^1..λ^k` extended by complex forms `μ^1..μ^n`,
/// i.e. the flag `(H^⊥)^ℂ ⊂ Z* ⊂ (T*M)^ℂ`.
#[derive(Clone, Debug)]
pub struct CrFlag {
    base: PfaffianSystem,
    mu: Vec<ComplexForm>,
    adapted: Adapted,
    /// `μ^1 ∧ … ∧ μ^n` reduced modulo the system.
    mu_wedge: ComplexForm,
}

impl CrFlag {
    pub fn new(base: PfaffianSystem, mu: Vec<ComplexForm>) -> Result<Self> {
        let chart = base.chart().clone();
        for (i, m) in mu.iter().enumerate() {
            if m.chart() != &chart || m.degree() != 1 {
                return Err(Error::InvalidParams(format!("μ^{} is not a 1-form on the system chart", i + 1)));
            }
        }
        let k = base.forms().len();
        if k + 2 * mu.len() != chart.len() {
            return Err(Error::InvalidParams(format!(
                "{} forms and {} complex forms on a {}-dimensional chart",
                k,
                mu.len(),
                chart.len()
            )));
        }
        let origin = base.origin();
        let covector = |re: &DiffForm, im: &DiffForm| {
            let mut v = vec![ComplexRational::zero(); chart.len()];
            for (idx, p) in re.terms() {
                v[idx[0] as usize].re = p.eval(&origin);
            }
            for (idx, p) in im.terms() {
                v[idx[0] as usize].im = p.eval(&origin);
            }
            SparseVec::from_dense(&v)
        };
        let zero = DiffForm::zero(&chart, 1);
        let mut rows: Vec<SparseVec<ComplexRational>> = base.forms().iter().map(|l| covector(l, &zero)).collect();
        for m in &mu {
            rows.push(covector(&m.re, &m.im));
            rows.push(covector(&m.re, &m.im.neg()));
        }
        if span_rank(chart.len(), &rows) != chart.len() {
            return Err(Error::Degenerate("λ ∧ μ ∧ μ̄ vanishes at the origin".into()));
        }
        let adapted = base.adapted()?;
        let images = adapted.reduction_images(&chart);
        let mut mu_wedge = ComplexForm::real(DiffForm::constant(&chart, Rational::from_integer(1.into())));
        for m in &mu {
            mu_wedge = mu_wedge.wedge(&m.pull_differentials(&images));
        }
        Ok(CrFlag { base, mu, adapted, mu_wedge })
    }

    /// The flag whose `Z*` consists of the forms `θ` with `θ∘J = iθ` on the
    /// distribution, for `J` given on the annihilator frame (see
    /// [`crate::nilpotent::annihilator_frame`]) in the convention
    /// `J[b][c]` = coefficient of `X_c` in `J X_b`.
    pub fn from_complex_structure(base: PfaffianSystem, j: &RatMat) -> Result<Self> {
        let ad = base.adapted()?;
        let h = ad.h.len();
        if j.rows != h || j.cols != h {
            return Err(Error::InvalidParams(format!("J must be {h}×{h}")));
        }
        if !j.mul(j).add(&RatMat::identity(h)).is_zero() {
            return Err(Error::InvalidParams("J² ≠ −id".into()));
        }
        let i = imag_unit();
        let mut e: Echelon<ComplexRational> = Echelon::new(h);
        for b in 0..h {
            let row: Vec<ComplexRational> = (0..h)
                .map(|c| {
                    let x = ComplexRational::new(j.get(b, c).clone(), Rational::zero());
                    if b == c {
                        x - i.clone()
                    } else {
                        x
                    }
                })
                .collect();
            e.insert(&SparseVec::from_dense(&row));
        }
        let kernel = e.into_rref().kernel_basis();
        let chart = base.chart().clone();
        let mu = kernel
            .iter()
            .map(|c| {
                let mut re = DiffForm::zero(&chart, 1);
                let mut im = DiffForm::zero(&chart, 1);
                for (nu, x) in c.iter() {
                    re = re.add(&DiffForm::dx(&chart, ad.h[nu]).scale(&x.re));
                    im = im.add(&DiffForm::dx(&chart, ad.h[nu]).scale(&x.im));
                }
                ComplexForm::new(re, im)
            })
            .collect();
        Self::new(base, mu)
    }

    pub fn base(&self) -> &PfaffianSystem {
        &self.base
    }

    pub fn mu(&self) -> &[ComplexForm] {
        &self.mu
    }

    pub fn cr_dim(&self) -> usize {
        self.mu.len()
    }

    pub fn cr_codim(&self) -> usize {
        self.base.forms().len()
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.base.chart()
    }

    pub(crate) fn adapted(&self) -> &Adapted {
        &self.adapted
    }

    fn reduce(&self, w: &DiffForm) -> DiffForm {
        self.adapted.reduce(self.chart(), w)
    }

    fn reduce_complex(&self, w: &ComplexForm) -> ComplexForm {
        ComplexForm::new(self.reduce(&w.re), self.reduce(&w.im))
    }

    /// `ω ∧ λ^1∧…∧λ^k ∧ μ^1∧…∧μ^n`, represented by its reduction.
    pub(crate) fn wedge_with_z(&self, w: &ComplexForm) -> ComplexForm {
        self.reduce_complex(w).wedge(&self.mu_wedge)
    }

    /// The J matrix at the origin on the annihilator frame determined by the flag.
    pub fn complex_structure(&self) -> Result<RatMat> {
        let h = &self.adapted.h;
        let n = h.len();
        // Rows θ^a(X_b) for θ in {μ, μ̄}: J X_b is fixed by θ(J X_b) = ±i θ(X_b).
        let origin = self.base.origin();
        let coeffs: Vec<Vec<ComplexRational>> = self
            .mu
            .iter()
            .map(|m| {
                let red = self.reduce_complex(m);
                h.iter()
                    .map(|&c| {
                        let re = red.re.coefficient(&[c as u8]).eval(&origin);
                        let im = red.im.coefficient(&[c as u8]).eval(&origin);
                        ComplexRational::new(re, im)
                    })
                    .collect()
            })
            .collect();
        // Covector matrix C (2n×n rows: μ then μ̄); J^T-action: C J^T = diag(i, −i) C.
        let i = imag_unit();
        let mut c = Vec::new();
        let mut d = Vec::new();
        for row in &coeffs {
            c.push(row.clone());
            d.push(row.iter().map(|x| x * &i).collect::<Vec<_>>());
        }
        for row in &coeffs {
            let conj: Vec<ComplexRational> = row.iter().map(|x| x.conj()).collect();
            d.push(conj.iter().map(|x| -(x * &i)).collect());
            c.push(conj);
        }
        let cm = crate::exact::Mat::from_rows(c);
        let dm = crate::exact::Mat::from_rows(d);
        let cinv = cm.inverse().ok_or_else(|| Error::Degenerate("μ, μ̄ do not span the distribution dual".into()))?;
        // θ(J X_b) = Σ_c J[b][c] θ(X_c)  ⇒  C Jᵀ = D  ⇒  Jᵀ = C⁻¹ D.
        let jt = cinv.mul(&dm);
        let mut j = RatMat::zeros(n, n);
        for b in 0..n {
            for cc in 0..n {
                let x = jt.get(cc, b);
                if !x.im.is_zero() {
                    return Err(Error::Inconsistent("complex structure is not real".into()));
                }
                j.set(b, cc, x.re.clone());
            }
        }
        Ok(j)
    }
}

/// `dλ^i ∧ λ ∧ μ = 0` and `dμ^α ∧ λ ∧ μ = 0` for all `i`, `α`.
pub fn integrability_check(flag: &CrFlag) -> bool {
    flag.base.forms().iter().all(|l| flag.wedge_with_z(&ComplexForm::real(l.d())).is_zero())
        && flag.mu.iter().all(|m| flag.wedge_with_z(&m.d()).is_zero())
}

/// `(𝓛_Y λ^i) ∧ λ^1∧…∧λ^k = 0` for all `i`.
pub fn is_distribution_symmetry(y: &PolyVectorField, sys: &PfaffianSystem) -> Result<bool> {
    let ad = sys.adapted()?;
    Ok(sys.forms().iter().all(|l| ad.reduce(sys.chart(), &l.lie_derivative(y)).is_zero()))
}

/// Distribution symmetry that also satisfies `(𝓛_Y μ^α) ∧ μ ∧ λ = 0` for all `α`.
pub fn is_cr_symmetry(y: &PolyVectorField, flag: &CrFlag) -> bool {
    let chart = flag.chart();
    flag.base.forms().iter().all(|l| flag.adapted.reduce(chart, &l.lie_derivative(y)).is_zero())
        && flag.mu.iter().all(|m| flag.wedge_with_z(&m.lie_derivative(y)).is_zero())
}

/// `df ∧ λ ∧ μ = 0` for a complex function `f = re + i·im`.
pub fn is_cr_function(f: &CPoly, flag: &CrFlag) -> bool {
    let chart = flag.chart();
    let df = ComplexForm::new(DiffForm::function(chart, f.re.clone()).d(), DiffForm::function(chart, f.im.clone()).d());
    flag.wedge_with_z(&df).is_zero()
}

/// Realified system of a graph: chart `(u1..uk, x1..xn, y1..yn)`,
/// `λ^i = du^i + Σ_α (∂Φ^i/∂x^α dy^α − ∂Φ^i/∂y^α dx^α)`, `μ^α = dx^α + i dy^α`.
pub fn defining_to_pfaffian(d: &DefiningSystem) -> Result<CrFlag> {
    let (n, k) = (d.n, d.phi.len());
    let mut names: Vec<String> = (1..=k).map(|i| format!("u{i}")).collect();
    names.extend(d.chart.names().iter().cloned());
    let chart = Chart::new(&names)?;
    let m = chart.len();
    let map: Vec<usize> = (k..m).collect();
    let mut weights = vec![2u32; k];
    weights.extend(std::iter::repeat_n(1, 2 * n));
    let forms = d
        .phi
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let mut l = DiffForm::dx(&chart, i);
            for a in 0..n {
                let px = phi.partial(a).expect("in range").reindex(m, &map);
                let py = phi.partial(n + a).expect("in range").reindex(m, &map);
                l = l.add(&DiffForm::monomial(&chart, px, &[k + n + a]));
                l = l.sub(&DiffForm::monomial(&chart, py, &[k + a]));
            }
            l
        })
        .collect();
    let base = PfaffianSystem::new(&chart, weights, forms)?;
    let mu = (0..n).map(|a| ComplexForm::new(DiffForm::dx(&chart, k + a), DiffForm::dx(&chart, k + n + a))).collect();
    CrFlag::new(base, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::parse_form;
    use crate::exact::int;

    fn baby() -> PfaffianSystem {
        PfaffianSystem::from_text(
            &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
            &[1, 1, 1, 1, 2, 2, 2],
            &["d(x5) + x1*d(x4) + x2*d(x3)", "d(x6) + x3*d(x4) + x1*d(x2)", "d(x7) + x3*d(x1) + x2*d(x4)"],
        )
        .unwrap()
    }

    fn cform(s_re: &str, s_im: &str, c: &Arc<Chart>) -> ComplexForm {
        ComplexForm::new(parse_form(s_re, c).unwrap(), parse_form(s_im, c).unwrap())
    }

    fn example_flag() -> CrFlag {
        let b = baby();
        let c = b.chart().clone();
        CrFlag::new(b, vec![cform("d(x1)", "d(x4)", &c), cform("d(x2)", "-d(x3)", &c)]).unwrap()
    }

    #[test]
    fn example_flag_is_integrable() {
        assert!(integrability_check(&example_flag()));
    }

    #[test]
    fn other_complex_structure_is_not_integrable() {
        let b = baby();
        let c = b.chart().clone();
        let f = CrFlag::new(b, vec![cform("d(x1)", "d(x2)", &c), cform("d(x3)", "d(x4)", &c)]).unwrap();
        assert!(!integrability_check(&f));
    }

    #[test]
    fn complex_structure_of_example_flag() {
        let j = example_flag().complex_structure().unwrap();
        // J X1 = X4, J X2 = −X3, J X3 = X2, J X4 = −X1
        let mut expect = RatMat::zeros(4, 4);
        expect.set(0, 3, int(1));
        expect.set(1, 2, int(-1));
        expect.set(2, 1, int(1));
        expect.set(3, 0, int(-1));
        assert_eq!(j, expect);
        let back = CrFlag::from_complex_structure(baby(), &j).unwrap();
        assert!(integrability_check(&back));
        assert_eq!(back.complex_structure().unwrap(), expect);
    }

    #[test]
    fn symmetries_of_example() {
        let b = baby();
        let c = b.chart().clone();
        let p = |s: &str| parse_poly(s, &c).unwrap();
        let y10 = PolyVectorField::from_named(
            &c,
            &[
                ("x1", p("x3")),
                ("x2", p("x4")),
                ("x3", p("-x1")),
                ("x4", p("-x2")),
                ("x5", p("x1*x2 - x3*x4")),
                ("x7", p("1/2*(x1^2 + x2^2 - x3^2 - x4^2)")),
            ],
        )
        .unwrap();
        let y12 = PolyVectorField::coord(&c, 3);
        let flag = example_flag();
        assert!(is_distribution_symmetry(&y10, &b).unwrap());
        assert!(is_distribution_symmetry(&y12, &b).unwrap());
        assert!(!is_cr_symmetry(&y10, &flag));
        assert!(is_cr_symmetry(&y12, &flag));
        let bad = PolyVectorField::single(&c, 4, p("x1"));
        assert!(!is_distribution_symmetry(&bad, &b).unwrap());
    }

    #[test]
    fn graph_to_pfaffian() {
        let d = DefiningSystem::from_text(2, &["1/2*(x1^2 - x2^2)", "-x1*y2", "x1*x2"]).unwrap();
        let f = defining_to_pfaffian(&d).unwrap();
        assert_eq!(
            f.base().form_strings(),
            vec!["d(u1) + x1*d(y1) - x2*d(y2)", "d(u2) + x1*d(x2) - y2*d(y1)", "d(u3) + x2*d(y1) + x1*d(y2)"]
        );
        assert!(integrability_check(&f));
        let c = f.chart().clone();
        let p = |s: &str| parse_poly(s, &c).unwrap();
        let w = CPoly { re: p("u1"), im: p("1/2*(x1^2 - x2^2)") };
        assert!(is_cr_function(&w, &f));
        let z = CPoly { re: p("x1"), im: p("y1") };
        assert!(is_cr_function(&z, &f));
        assert!(!is_cr_function(&CPoly { re: p("x1"), im: p("-y1") }, &f));
    }

    #[test]
    fn degenerate_definitions_rejected() {
        assert!(DefiningSystem::from_text(1, &["x1^2", "2*x1^2"]).is_err());
    }
}
