//! Structures named by `--entry` or read from a JSON `--file`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use tanaka_core::catalog::{self, Origin, Params};
use tanaka_core::cr::{defining_to_pfaffian, CrFlag, DefiningSystem};
use tanaka_core::eds::{parse_form_of_degree, ComplexForm, DiffForm};
use tanaka_core::nilpotent::PfaffianSystem;
use tanaka_core::{Error, Result};

/// Input file layout. Either `forms` (with `coordinates` and `weights`) or
/// `defining` must be present; `mu` adds a CR flag to a Pfaffian system and
/// `field` supplies vector-field components for `check-symmetry`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    #[serde(default)]
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub weights: Vec<u32>,
    #[serde(default)]
    pub forms: Vec<String>,
    pub defining: Option<DefiningJson>,
    pub mu: Option<Vec<ComplexFormJson>>,
    pub field: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefiningJson {
    pub n: usize,
    pub phi: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFormJson {
    #[serde(default)]
    pub re: String,
    #[serde(default)]
    pub im: String,
}

/// A resolved structure with whatever decorations the source carries.
pub struct Loaded {
    pub pfaffian: PfaffianSystem,
    pub flag: Option<CrFlag>,
    pub field: Option<Vec<String>>,
    pub max_degree: usize,
    pub provenance: BTreeMap<&'static str, Origin>,
}

pub fn from_entry(name: &str, params: &str) -> Result<Loaded> {
    let e = catalog::build(name, &Params::parse(params)?)?;
    Ok(Loaded {
        provenance: e.expected.provenance(),
        pfaffian: e.pfaffian,
        flag: e.flag,
        field: None,
        max_degree: e.max_degree,
    })
}

pub fn read_file(path: &Path) -> Result<(Vec<u8>, InputFile)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Parse { pos: 0, msg: format!("{}: {e}", path.display()) })?;
    let file = serde_json::from_slice(&bytes).map_err(|e| Error::Parse { pos: e.column(), msg: format!("{}: {e}", path.display()) })?;
    Ok((bytes, file))
}

pub fn from_file(f: InputFile) -> Result<Loaded> {
    let (pfaffian, flag) = match (&f.defining, f.forms.is_empty()) {
        (Some(d), true) => {
            let flag = defining_to_pfaffian(&DefiningSystem::from_text(d.n, &d.phi)?)?;
            (flag.base().clone(), Some(flag))
        }
        (None, false) => {
            let p = PfaffianSystem::from_text(&f.coordinates, &f.weights, &f.forms)?;
            (p, None)
        }
        _ => return Err(Error::InvalidParams("give exactly one of \"forms\" and \"defining\"".into())),
    };
    let flag = match (f.mu, flag) {
        (Some(_), Some(_)) => return Err(Error::InvalidParams("\"mu\" cannot be combined with \"defining\"".into())),
        (Some(mu), None) => {
            let chart = pfaffian.chart().clone();
            let parse = |s: &str| if s.trim().is_empty() { Ok(DiffForm::zero(&chart, 1)) } else { parse_form_of_degree(s, &chart, 1) };
            let mu = mu.iter().map(|m| Ok(ComplexForm::new(parse(&m.re)?, parse(&m.im)?))).collect::<Result<Vec<_>>>()?;
            Some(CrFlag::new(pfaffian.clone(), mu)?)
        }
        (None, flag) => flag,
    };
    Ok(Loaded { pfaffian, flag, field: f.field, max_degree: 3, provenance: BTreeMap::new() })
}
