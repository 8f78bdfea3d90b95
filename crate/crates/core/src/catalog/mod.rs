//! Named structures with their expected invariants, and a verifier that
//! recomputes every expected value.

pub mod appendix_c;
pub mod e6;
pub mod examples;
pub mod families;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cr::{
    brute_force_symmetry_algebra, defining_to_pfaffian, integrability_check, is_cr_function, CPoly, CrFlag, DefiningSystem,
    Target,
};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, RatMat, Rational};
use crate::nilpotent::{growth_vector, same_constants, symbol_algebra, GradedNilpotent, PfaffianSystem};
use crate::tanaka::{commutant, compute_n0, default_trace_factor, find_complex_structure, invariant_symmetric_form, prolong, proportional, EndoSpace};

pub use appendix_c::{appendix_c_generators, bracket_closure, dilation, printed_dilation, so_model, ClosureReport, Generator, SoGenerators};
pub use e6::{appendix_matrices, standard_j, Appendix};
pub use families::SuShape;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Printed in the source material.
    Published,
    /// Computed independently and pinned.
    Computed,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Published => "published",
            Origin::Computed => "computed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Claim<T> {
    pub value: T,
    pub origin: Origin,
}

fn published<T>(value: T) -> Option<Claim<T>> {
    Some(Claim { value, origin: Origin::Published })
}

fn computed<T>(value: T) -> Option<Claim<T>> {
    Some(Claim { value, origin: Origin::Computed })
}

/// Expected values; absent fields are not checked.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub growth: Option<Claim<Vec<usize>>>,
    /// Symbol structure constants in the same basis.
    pub symbol: Option<Claim<GradedNilpotent>>,
    /// Nonzero layer dimensions from the lowest degree up.
    pub layers: Option<Claim<Vec<usize>>>,
    pub total_dim: Option<Claim<usize>>,
    /// `(dim M, n, k)`.
    pub cr_type: Option<Claim<(usize, usize, usize)>>,
    pub n0_dim: Option<Claim<usize>>,
    /// Basis whose span equals `n₀` restricted to `n₋₁`.
    pub n0_span: Option<Claim<Vec<RatMat>>>,
    pub commutant_dim: Option<Claim<usize>>,
    /// Complex structure on `n₋₁`, up to sign.
    pub j: Option<Claim<RatMat>>,
    /// Invariant form on `n₋₂`, up to scale.
    pub g: Option<Claim<RatMat>>,
    pub integrable: Option<Claim<bool>>,
    /// Killing form `(positive, negative)` of the prolongation.
    pub killing: Option<Claim<(usize, usize)>>,
    /// Brute-force symmetry dimension of the distribution at the given bound.
    pub symmetry_dim: Option<Claim<(u32, usize)>>,
    /// Brute-force CR symmetry dimension of the flag at the given bound.
    pub cr_symmetry_dim: Option<Claim<(u32, usize)>>,
}

impl Expected {
    /// Origin of every expected value that is present, keyed by field name.
    pub fn provenance(&self) -> BTreeMap<&'static str, Origin> {
        fn put<T>(m: &mut BTreeMap<&'static str, Origin>, k: &'static str, c: &Option<Claim<T>>) {
            if let Some(c) = c {
                m.insert(k, c.origin);
            }
        }
        let mut m = BTreeMap::new();
        put(&mut m, "growth", &self.growth);
        put(&mut m, "symbol", &self.symbol);
        put(&mut m, "layers", &self.layers);
        put(&mut m, "total_dim", &self.total_dim);
        put(&mut m, "cr_type", &self.cr_type);
        put(&mut m, "n0_dim", &self.n0_dim);
        put(&mut m, "n0_span", &self.n0_span);
        put(&mut m, "commutant_dim", &self.commutant_dim);
        put(&mut m, "j", &self.j);
        put(&mut m, "g", &self.g);
        put(&mut m, "integrable", &self.integrable);
        put(&mut m, "killing", &self.killing);
        put(&mut m, "symmetry_dim", &self.symmetry_dim);
        put(&mut m, "cr_symmetry_dim", &self.cr_symmetry_dim);
        m
    }
}

/// A catalog structure.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub description: String,
    pub pfaffian: PfaffianSystem,
    pub flag: Option<CrFlag>,
    pub defining: Option<DefiningSystem>,
    pub cr_functions: Vec<(String, CPoly)>,
    pub expected: Expected,
    /// Degree up to which the prolongation is computed.
    pub max_degree: usize,
}

/// `key=value` parameters separated by commas.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn parse(s: &str) -> Result<Self> {
        let mut m = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) =
                part.split_once('=').ok_or_else(|| Error::InvalidParams(format!("expected key=value, got `{part}`")))?;
            m.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(m))
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParams(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        self.0.get(key).map_or(Ok(default), |v| v.parse().map_err(|_| Error::InvalidParams(format!("{key} must be a non-negative integer"))))
    }

    fn rational(&self, key: &str, default: i64) -> Result<Rational> {
        self.0.get(key).map_or(Ok(Rational::from_integer(default.into())), |v| parse_rational(v).ok_or_else(|| Error::InvalidParams(format!("{key} must be rational"))))
    }
}

/// Names accepted by [`build`].
pub fn names() -> &'static [&'static str] {
    &[
        "example-2.1",
        "example-2.2",
        "example-2.5",
        "example-2.6",
        "e2",
        "e3",
        "e3-alt",
        "f4-cartan",
        "so",
        "so-star",
        "su",
        "stray-1",
        "stray-2",
    ]
}

fn entry(name: &str, description: String, pfaffian: PfaffianSystem) -> Entry {
    Entry {
        name: name.into(),
        description,
        pfaffian,
        flag: None,
        defining: None,
        cr_functions: Vec::new(),
        expected: Expected::default(),
        max_degree: 3,
    }
}

fn from_defining(name: &str, description: String, d: DefiningSystem) -> Result<Entry> {
    let flag = defining_to_pfaffian(&d)?;
    let mut e = entry(name, description, flag.base().clone());
    e.expected.integrable = published(true);
    e.flag = Some(flag);
    e.defining = Some(d);
    Ok(e)
}

fn e6_entry(name: &str, which: Appendix) -> Result<Entry> {
    let (sys, symbol, defining, metric, killing) = match which {
        Appendix::A => (e6::e2_system(), e6::e2_structure_equations(), e6::e2_defining(), e6::e2_metric(), (40, 38)),
        Appendix::B => (e6::e3_system(), e6::e3_structure_equations(), e6::e3_defining(), e6::e3_metric(), (32, 46)),
    };
    let real_form = if which == Appendix::A { "E_II" } else { "E_III" };
    let mut e = entry(name, format!("24-dimensional CR structure of type (8, 8) with symmetry {real_form}"), sys.clone());
    e.flag = Some(CrFlag::from_complex_structure(sys, &standard_j())?);
    e.defining = Some(defining);
    let x = &mut e.expected;
    x.growth = published(vec![16, 24]);
    x.symbol = published(symbol);
    x.layers = published(vec![8, 16, 30, 16, 8]);
    x.total_dim = published(78);
    x.cr_type = published((24, 8, 8));
    x.n0_dim = published(30);
    x.n0_span = published(appendix_matrices(which));
    x.commutant_dim = computed(2);
    x.j = published(standard_j());
    x.g = published(metric);
    x.integrable = published(true);
    x.killing = computed(killing);
    Ok(e)
}

/// Build a named entry.
pub fn build(name: &str, params: &Params) -> Result<Entry> {
    let allowed: &[&str] = match name {
        "example-2.5" => &["a", "b", "c"],
        "so" => &["l"],
        "so-star" => &["m"],
        "su" => &["t", "r", "s"],
        _ => &[],
    };
    params.check_keys(allowed)?;
    match name {
        "example-2.1" => {
            let mut e = entry(name, "rank-4 distribution on ℝ⁷ with growth (4, 7)".into(), examples::baby_system());
            let x = &mut e.expected;
            x.growth = published(vec![4, 7]);
            x.layers = published(vec![3, 4, 7, 4, 3]);
            x.total_dim = published(21);
            x.n0_dim = computed(7);
            x.killing = computed((8, 13));
            x.symmetry_dim = published((4, 21));
            Ok(e)
        }
        "example-2.2" => {
            let flag = examples::baby_flag();
            let mut e = entry(name, "CR structure of type (2, 3) on the rank-4 distribution of example-2.1".into(), flag.base().clone());
            e.flag = Some(flag);
            e.cr_functions = examples::baby_cr_functions();
            let x = &mut e.expected;
            x.growth = published(vec![4, 7]);
            x.cr_type = published((7, 2, 3));
            x.integrable = published(true);
            x.cr_symmetry_dim = published((4, 12));
            Ok(e)
        }
        "example-2.5" => {
            let (a, b, c) = (params.rational("a", 0)?, params.rational("b", 1)?, params.rational("c", 0)?);
            let flag = examples::abc_flag(&a, &b, &c)?;
            let mut e = entry(name, format!("deformation of example-2.2 at (a, b, c) = ({a}, {b}, {c})"), flag.base().clone());
            e.flag = Some(flag);
            e.expected.cr_type = published((7, 2, 3));
            e.expected.integrable = published(true);
            Ok(e)
        }
        "example-2.6" => {
            let mut e = from_defining(name, "embedded CR structure of type (2, 3) in ℂ⁵".into(), examples::embedded_example())?;
            e.expected.cr_type = published((7, 2, 3));
            e.expected.growth = computed(vec![4, 7]);
            Ok(e)
        }
        "e2" => e6_entry(name, Appendix::A),
        "e3" => e6_entry(name, Appendix::B),
        "e3-alt" => {
            let mut e = from_defining(name, "alternative quadric with symmetry E_III".into(), e6::e3_alt_defining())?;
            let x = &mut e.expected;
            x.growth = published(vec![16, 24]);
            x.layers = published(vec![8, 16, 30, 16, 8]);
            x.total_dim = published(78);
            x.cr_type = published((24, 8, 8));
            x.killing = computed((32, 46));
            Ok(e)
        }
        "f4-cartan" => {
            let mut e = entry(name, "Cartan's rank-8 distribution on ℝ¹⁵ with symmetry F_I".into(), examples::f4_system());
            let x = &mut e.expected;
            x.growth = published(vec![8, 15]);
            x.total_dim = published(52);
            x.layers = computed(vec![7, 8, 22, 8, 7]);
            x.killing = computed((28, 24));
            Ok(e)
        }
        "so" => {
            let l = params.usize("l", 4)?;
            let mut e = from_defining(name, format!("quadric with symmetry so({}, {})", l.saturating_sub(1), l + 1), families::so_defining(l)?)?;
            let (n, k) = (l - 1, (l - 1) * (l - 2) / 2);
            let x = &mut e.expected;
            x.cr_type = published((2 * n + k, n, k));
            x.layers = published(vec![k, 2 * n, n * n + 1, 2 * n, k]);
            x.total_dim = published(l * (2 * l - 1));
            if l == 4 {
                x.killing = computed((15, 13));
            }
            Ok(e)
        }
        "so-star" => {
            let m = params.usize("m", 2)?;
            let mut e = from_defining(name, format!("quadric with symmetry so*({})", 4 * m + 2), families::so_star_defining(m)?)?;
            let x = &mut e.expected;
            x.cr_type = published((m * (2 * m + 3), 2 * m, m * (2 * m - 1)));
            let (total, n, k) = ((4 * m + 2) * (4 * m + 1) / 2, 4 * m, m * (2 * m - 1));
            x.total_dim = published(total);
            x.layers = computed(vec![k, n, total - 2 * (n + k), n, k]);
            if m == 2 {
                x.killing = computed((20, 25));
            }
            Ok(e)
        }
        "su" => {
            let shape = SuShape::new(params.usize("t", 0)?, params.usize("r", 1)?, params.usize("s", 2)?)?;
            let (p, q) = shape.signature();
            let mut e = from_defining(name, format!("quadric with symmetry su({p}, {q})"), families::su_defining(shape)?)?;
            let x = &mut e.expected;
            x.cr_type = published((shape.real_dim(), shape.cr_dim(), shape.cr_codim()));
            // For s = 1 the bare distribution is contact and its prolongation is infinite.
            if shape.s >= 2 {
                x.total_dim = published((p + q) * (p + q) - 1);
            }
            if (p, q) == (2, 3) {
                x.killing = computed((12, 12));
            }
            Ok(e)
        }
        "stray-1" => Ok(entry(name, "unlabeled block of three forms on ℝ⁸ (first)".into(), examples::stray_1())),
        "stray-2" => Ok(entry(name, "unlabeled block of three forms on ℝ⁸ (second)".into(), examples::stray_2())),
        _ => Err(Error::UnknownEntry(name.into())),
    }
}

/// Outcome of one expected-value comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub origin: Origin,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "✓" } else { "✗" };
        if self.passed {
            write!(f, "{}: {} {mark} ({})", self.name, self.computed, self.origin)
        } else {
            write!(f, "{}: expected {}, computed {} {mark} ({})", self.name, self.expected, self.computed, self.origin)
        }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push<T>(&mut self, name: &str, claim: &Claim<T>, computed: String, passed: bool, show: impl Fn(&T) -> String) {
        self.0.push(Check { name: name.into(), expected: show(&claim.value), computed, origin: claim.origin, passed });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: &str, claim: &Option<Claim<T>>, value: T) {
        if let Some(c) = claim {
            let passed = c.value == value;
            self.push(name, c, format!("{value:?}"), passed, |v| format!("{v:?}"));
        }
    }
}

fn sum_string(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
    format!("{} = {}", parts.join("+"), v.iter().sum::<usize>())
}

/// Recompute every expected value of an entry.
pub fn verify(e: &Entry) -> Result<Vec<Check>> {
    let x = &e.expected;
    let mut out = Checks(Vec::new());
    out.eq("growth", &x.growth, growth_vector(&e.pfaffian)?);

    let needs_symbol = x.symbol.is_some()
        || x.layers.is_some()
        || x.total_dim.is_some()
        || x.n0_dim.is_some()
        || x.n0_span.is_some()
        || x.commutant_dim.is_some()
        || x.j.is_some()
        || x.g.is_some()
        || x.killing.is_some();
    if needs_symbol {
        let n = symbol_algebra(&e.pfaffian)?;
        if let Some(c) = &x.symbol {
            let ok = same_constants(&n, &c.value);
            out.push("symbol constants", c, if ok { "equal" } else { "different" }.into(), ok, |_| "equal".into());
        }
        let wants_prolong = x.layers.is_some() || x.total_dim.is_some() || x.killing.is_some();
        if wants_prolong {
            let p = prolong(&n, e.max_degree);
            let layers: Vec<usize> = p.dims().into_iter().map(|(_, d)| d).filter(|&d| d > 0).collect();
            if let Some(c) = &x.layers {
                let ok = c.value == layers && p.is_terminated();
                out.push("layers", c, sum_string(&layers), ok, |v| sum_string(v));
            }
            if let Some(c) = &x.total_dim {
                let ok = c.value == p.total_dim() && p.is_terminated();
                out.push("total dimension", c, p.total_dim().to_string(), ok, |v| v.to_string());
            }
            if let Some(c) = &x.killing {
                let (pos, neg, zero) = p.killing_signature();
                let ok = c.value == (pos, neg) && zero == 0;
                out.push("Killing signature", c, format!("({pos}, {neg}, {zero})"), ok, |v| format!("({}, {}, 0)", v.0, v.1));
            }
        }
        let needs_n0 = x.n0_dim.is_some() || x.n0_span.is_some() || x.commutant_dim.is_some() || x.j.is_some() || x.g.is_some();
        if needs_n0 {
            let n0 = compute_n0(&n);
            out.eq("dim n0", &x.n0_dim, n0.dim());
            let on_h = n0.restrict(&n.layer(-1));
            if let Some(c) = &x.n0_span {
                let printed = EndoSpace::new(on_h.ambient_dim, c.value.clone());
                let ok = printed.dim() == c.value.len() && printed.same_span(&on_h) && printed.is_closed_under_commutator();
                out.push("n0 on n-1", c, format!("span of dimension {}", on_h.dim()), ok, |v| format!("span of {} printed matrices", v.len()));
            }
            if x.commutant_dim.is_some() || x.j.is_some() {
                let comm = commutant(&on_h);
                out.eq("commutant dim", &x.commutant_dim, comm.dim());
                if let Some(c) = &x.j {
                    let found = find_complex_structure(&comm);
                    let ok = found.as_ref().is_some_and(|cs| cs.j == c.value || cs.j == c.value.scale(&Rational::from_integer((-1).into())));
                    let shown = if found.is_some() { "J found" } else { "no J" };
                    out.push("J (up to sign)", c, shown.into(), ok, |_| "printed J".into());
                }
            }
            if let Some(c) = &x.g {
                let gs = invariant_symmetric_form(&n0, &n.layer(-2), &default_trace_factor(&n, -2));
                let ok = gs.len() == 1 && proportional(&gs[0], &c.value);
                out.push("g (up to scale)", c, format!("{} invariant form(s)", gs.len()), ok, |_| "printed g".into());
            }
        }
    }

    if let Some(flag) = &e.flag {
        let dim = flag.chart().len();
        out.eq("CR type", &x.cr_type, (dim, flag.cr_dim(), flag.cr_codim()));
        if x.integrable.is_some() {
            out.eq("integrable", &x.integrable, integrability_check(flag));
        }
        if let Some(c) = &x.cr_symmetry_dim {
            let s = brute_force_symmetry_algebra(Target::Cr(flag), c.value.0)?;
            out.eq("CR symmetry dimension", &Some(c.clone()), (c.value.0, s.dim()));
        }
        for (name, f) in &e.cr_functions {
            let ok = is_cr_function(f, flag);
            out.0.push(Check {
                name: format!("CR function {name}"),
                expected: "solves the CR equation".into(),
                computed: if ok { "solves" } else { "fails" }.into(),
                origin: Origin::Published,
                passed: ok,
            });
        }
    }
    if let Some(c) = &x.symmetry_dim {
        let s = brute_force_symmetry_algebra(Target::Distribution(&e.pfaffian), c.value.0)?;
        out.eq("symmetry dimension", &Some(c.clone()), (c.value.0, s.dim()));
    }
    Ok(out.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        let p = Params::parse("a=3/5, b=0,c=4/5").unwrap();
        assert_eq!(p.rational("a", 0).unwrap(), crate::exact::rat(3, 5));
        assert!(Params::parse("a").is_err());
        assert!(build("so", &Params::parse("m=3").unwrap()).is_err());
    }

    #[test]
    fn every_entry_builds() {
        for name in names() {
            if !matches!(*name, "e2" | "e3" | "e3-alt") {
                build(name, &Params::default()).unwrap();
            }
        }
        assert!(matches!(build("nope", &Params::default()), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn cr_types_satisfy_dimension_count() {
        for name in ["example-2.2", "example-2.6", "so", "so-star", "su"] {
            let e = build(name, &Params::default()).unwrap();
            let (d, n, k) = e.expected.cr_type.unwrap().value;
            assert_eq!(d, 2 * n + k, "{name}");
        }
    }

    #[test]
    fn example_2_1_verifies() {
        let e = build("example-2.1", &Params::default()).unwrap();
        for c in verify(&e).unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn small_families_verify() {
        for (name, p) in [("so", "l=4"), ("su", "t=0,r=1,s=2"), ("example-2.5", "a=1,b=0,c=0"), ("example-2.6", "")] {
            let e = build(name, &Params::parse(p).unwrap()).unwrap();
            for c in verify(&e).unwrap() {
                assert!(c.passed, "{name}: {c}");
            }
        }
    }
}
