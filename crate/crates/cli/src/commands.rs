//! One function per verb; each returns human text, a JSON result and a verdict.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use tanaka_core::catalog::{self, Origin, Params};
use tanaka_core::cohomology::h2_weights_from;
use tanaka_core::cr::{brute_force_symmetry_algebra, integrability_check, is_cr_symmetry, is_distribution_symmetry, Target};
use tanaka_core::eds::{parse_poly, PolyVectorField};
use tanaka_core::exact::RatMat;
use tanaka_core::nilpotent::{growth_vector, symbol_algebra};
use tanaka_core::rootsys::enumerate_depth2;
use tanaka_core::tanaka::{commutant, compute_n0, find_complex_structure, prolong};
use tanaka_core::{Error, Result};

use crate::input::{self, Loaded};
use crate::{CatalogAction, Command, Source};

pub struct Outcome {
    pub text: String,
    pub results: Value,
    pub ok: bool,
}

impl Outcome {
    fn new(text: String, results: Value) -> Self {
        Outcome { text, results, ok: true }
    }
}

/// A finished command with what went into its digest.
pub struct Run {
    pub outcome: Outcome,
    pub input_bytes: Vec<u8>,
    pub provenance: BTreeMap<String, Origin>,
}

struct Ctx {
    input_bytes: Vec<u8>,
    provenance: BTreeMap<String, Origin>,
}

impl Ctx {
    fn load(&mut self, s: &Source) -> Result<Loaded> {
        let loaded = match (&s.entry, &s.file) {
            (Some(name), _) => input::from_entry(name, &s.params)?,
            (None, Some(path)) => {
                let (bytes, file) = input::read_file(path)?;
                self.input_bytes = bytes;
                input::from_file(file)?
            }
            (None, None) => return Err(Error::InvalidParams("give --entry or --file".into())),
        };
        self.provenance = loaded.provenance.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Ok(loaded)
    }

    /// Keep only the provenance tags the command actually reports on.
    fn keep(&mut self, fields: &[&str]) {
        self.provenance.retain(|k, _| fields.contains(&k.as_str()));
    }
}

pub fn run(cmd: &Command) -> Result<Run> {
    let mut ctx = Ctx { input_bytes: Vec::new(), provenance: BTreeMap::new() };
    let outcome = dispatch(cmd, &mut ctx)?;
    Ok(Run { outcome, input_bytes: ctx.input_bytes, provenance: ctx.provenance })
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    match cmd {
        Command::Prolong { source, max_degree } => {
            let l = ctx.load(source)?;
            ctx.keep(&["layers", "total_dim", "killing"]);
            let g = prolong(&symbol_algebra(&l.pfaffian)?, max_degree.unwrap_or(l.max_degree));
            if !g.is_terminated() {
                eprintln!("warning: prolongation not terminated at degree {}", g.max_degree());
            }
            let text = format!("{}\n", g.dimension_string());
            Ok(Outcome::new(text, serde_json::to_value(g.to_json()).expect("serializable")))
        }
        Command::Symbol { source } => {
            let l = ctx.load(source)?;
            ctx.keep(&["symbol"]);
            let n = symbol_algebra(&l.pfaffian)?;
            let labels = n.labels();
            let mut text = String::new();
            for (a, b, c, coef) in n.structure_constants() {
                let _ = writeln!(text, "[{}, {}] ∋ {} {}", labels[a], labels[b], coef, labels[c]);
            }
            Ok(Outcome::new(text, serde_json::to_value(n.to_json()).expect("serializable")))
        }
        Command::Growth { source } => {
            let l = ctx.load(source)?;
            ctx.keep(&["growth"]);
            let g = growth_vector(&l.pfaffian)?;
            Ok(Outcome::new(format!("{g:?}\n"), json!(g)))
        }
        Command::CheckIntegrable { source } => {
            let l = ctx.load(source)?;
            ctx.keep(&["integrable", "cr_type"]);
            let flag = l.flag.ok_or_else(|| Error::InvalidParams("the structure carries no CR flag".into()))?;
            let ok = integrability_check(&flag);
            Ok(Outcome { text: format!("integrable: {ok}\n"), results: json!({ "ok": ok }), ok })
        }
        Command::CheckSymmetry { source, field, cr } => {
            let l = ctx.load(source)?;
            ctx.keep(&[]);
            let comps: Vec<String> = match (field, &l.field) {
                (Some(f), _) => f.split(';').map(str::to_string).collect(),
                (None, Some(f)) => f.clone(),
                (None, None) => return Err(Error::InvalidParams("give --field or a \"field\" in the input file".into())),
            };
            let chart = l.pfaffian.chart();
            let comps = comps.iter().map(|c| parse_poly(c, chart)).collect::<Result<Vec<_>>>()?;
            let y = PolyVectorField::new(chart, comps)?;
            let ok = if *cr {
                let flag = l.flag.as_ref().ok_or_else(|| Error::InvalidParams("the structure carries no CR flag".into()))?;
                is_cr_symmetry(&y, flag)
            } else {
                is_distribution_symmetry(&y, &l.pfaffian)?
            };
            let what = if *cr { "CR symmetry" } else { "symmetry" };
            Ok(Outcome { text: format!("{what}: {ok}\n"), results: json!({ "ok": ok }), ok })
        }
        Command::SolveSymmetries { source, bound, cr } => {
            let l = ctx.load(source)?;
            ctx.keep(&[if *cr { "cr_symmetry_dim" } else { "symmetry_dim" }]);
            let s = if *cr {
                let flag = l.flag.as_ref().ok_or_else(|| Error::InvalidParams("the structure carries no CR flag".into()))?;
                brute_force_symmetry_algebra(Target::Cr(flag), *bound)?
            } else {
                brute_force_symmetry_algebra(Target::Distribution(&l.pfaffian), *bound)?
            };
            let j = s.to_json();
            let text = format!("dimension {} at bound {} ({} constraint rows)\n", j.dimension, j.bound, j.certificate_rows);
            let results = json!({
                "ok": true,
                "dimension": j.dimension,
                "certificate_rows": j.certificate_rows,
                "bound": j.bound,
                "graded_dims": j.graded_dims,
                "basis": j.basis,
            });
            Ok(Outcome::new(text, results))
        }
        Command::FindJ { source } => {
            let l = ctx.load(source)?;
            ctx.keep(&["commutant_dim", "j"]);
            let n = symbol_algebra(&l.pfaffian)?;
            let comm = commutant(&compute_n0(&n).restrict(&n.layer(-1)));
            match find_complex_structure(&comm) {
                Some(cs) => {
                    let text = format!("commutant dimension {}\nJ (unique up to sign: {}):\n{}", comm.dim(), cs.unique_up_to_sign, cs.j);
                    let results = json!({ "ok": true, "commutant_dim": comm.dim(), "j": matrix_json(&cs.j), "unique_up_to_sign": cs.unique_up_to_sign });
                    Ok(Outcome::new(text, results))
                }
                None => Ok(Outcome {
                    text: format!("commutant dimension {}\nno invariant complex structure\n", comm.dim()),
                    results: json!({ "ok": false, "commutant_dim": comm.dim() }),
                    ok: false,
                }),
            }
        }
        Command::Classify { max_rank } => {
            let rows = enumerate_depth2(*max_rank)?;
            let mut text = String::new();
            let _ = writeln!(text, "{:<8} {:<12} {:<10} {:<24} {:>6} {:>4} {:>4}", "family", "algebra", "crossing", "graded dims", "dim M", "n", "k");
            for r in &rows {
                let crossing = format!("{:?}", r.crossing);
                let dims: Vec<String> = r.graded_dims.iter().map(|(_, d)| d.to_string()).collect();
                let _ = writeln!(text, "{:<8} {:<12} {:<10} {:<24} {:>6} {:>4} {:>4}", r.family, r.algebra, crossing, dims.join("+"), r.dim_m, r.n, r.k);
            }
            Ok(Outcome::new(text, serde_json::to_value(&rows).expect("serializable")))
        }
        Command::Rigidity { source, max_degree, mode } => {
            let l = ctx.load(source)?;
            ctx.keep(&[]);
            let g = prolong(&symbol_algebra(&l.pfaffian)?, max_degree.unwrap_or(l.max_degree));
            if !g.is_terminated() {
                return Err(Error::InvalidParams("the prolongation did not terminate; raise --max-degree".into()));
            }
            let h = h2_weights_from(&g, -1, (*mode).into())?;
            let weights: Vec<String> = h.weights.iter().map(|(w, d)| format!("{w}: {d}")).collect();
            let mode = serde_json::to_value(h.mode).expect("serializable");
            let text = format!("H² weights {{{}}}\nrigid: {} ({})\n", weights.join(", "), h.rigid, mode.as_str().unwrap_or_default());
            Ok(Outcome::new(text, json!({ "weights": h.weights, "rigid": h.rigid, "mode": mode })))
        }
        Command::Catalog { action: CatalogAction::List } => {
            let mut text = String::new();
            let mut list = Vec::new();
            for name in catalog::names() {
                let desc = catalog::build(name, &Params::default())?.description;
                let _ = writeln!(text, "{name:<12} {desc}");
                list.push(json!({ "name": name, "description": desc }));
            }
            Ok(Outcome::new(text, Value::Array(list)))
        }
        Command::Catalog { action: CatalogAction::Show { name, params } } => {
            let e = catalog::build(name, &Params::parse(params)?)?;
            ctx.provenance = e.expected.provenance().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            let p = &e.pfaffian;
            let mut text = format!("{}: {}\ncoordinates: {}\nweights: {:?}\n", e.name, e.description, p.chart().names().join(" "), p.weights());
            for f in p.form_strings() {
                let _ = writeln!(text, "  {f}");
            }
            if let Some(flag) = &e.flag {
                let _ = writeln!(text, "CR type ({}, {}, {})", flag.chart().len(), flag.cr_dim(), flag.cr_codim());
            }
            for (k, v) in &ctx.provenance {
                let _ = writeln!(text, "expected {k} ({v})");
            }
            let results = json!({
                "name": e.name,
                "description": e.description,
                "coordinates": p.chart().names(),
                "weights": p.weights(),
                "forms": p.form_strings(),
            });
            Ok(Outcome::new(text, results))
        }
        Command::Verify { entry, params } => {
            let e = catalog::build(entry, &Params::parse(params)?)?;
            let checks = catalog::verify(&e)?;
            ctx.provenance = e.expected.provenance().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            let mut text = String::new();
            for c in &checks {
                let _ = writeln!(text, "{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                eprintln!("{failed} of {} checks failed", checks.len());
            }
            Ok(Outcome { text, results: serde_json::to_value(&checks).expect("serializable"), ok: failed == 0 })
        }
    }
}

fn matrix_json(m: &RatMat) -> Value {
    (0..m.rows).map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect()
}
