//! Root systems of types A, D and E₆, Satake diagrams, and gradings by crossed
//! simple roots (Bourbaki numbering, 1-based).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    D,
    E,
}

/// All roots in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: RootType,
    pub rank: usize,
    /// Positive roots followed by their negatives.
    pub roots: Vec<Vec<i32>>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

/// Edges of the Dynkin diagram, 0-based.
fn edges(kind: RootType, rank: usize) -> Vec<(usize, usize)> {
    match kind {
        RootType::A => (0..rank - 1).map(|i| (i, i + 1)).collect(),
        RootType::D => {
            let mut e: Vec<_> = (0..rank - 2).map(|i| (i, i + 1)).collect();
            e.push((rank - 3, rank - 1));
            e
        }
        // 1-3-4-5-6 with 2 attached to 4
        RootType::E => vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
    }
}

impl RootSystem {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        let ok = match kind {
            RootType::A => rank >= 1,
            RootType::D => rank >= 4,
            RootType::E => rank == 6,
        };
        if !ok {
            return Err(Error::InvalidParams(format!("no root system {kind:?}{rank}")));
        }
        let mut cartan = vec![vec![0i32; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges(kind, rank) {
            cartan[a][b] = -1;
            cartan[b][a] = -1;
        }
        // Grow positive roots by simple-root strings: β + α_i is a root iff p − ⟨β, α_i⟩ > 0.
        let mut positive: Vec<Vec<i32>> = (0..rank).map(|i| (0..rank).map(|j| i32::from(i == j)).collect()).collect();
        let mut known: BTreeSet<Vec<i32>> = positive.iter().cloned().collect();
        let mut frontier = positive.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..rank {
                    let pairing: i32 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            positive.extend(next.iter().cloned());
            frontier = next;
        }
        positive.sort_by_key(|r| (r.iter().sum::<i32>(), r.clone()));
        let negative: Vec<Vec<i32>> = positive.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        positive.extend(negative);
        Ok(RootSystem { kind, rank, roots: positive })
    }

    /// Dimension of the complex simple Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        self.rank + self.roots.len()
    }
}

/// A Dynkin diagram with black nodes and arrowed pairs of white nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeDiagram {
    #[serde(rename = "type")]
    pub kind: RootType,
    pub rank: usize,
    #[serde(default)]
    pub black: BTreeSet<usize>,
    #[serde(default)]
    pub arrows: BTreeSet<(usize, usize)>,
    /// Name of the real form, if known.
    #[serde(default)]
    pub name: String,
}

impl SatakeDiagram {
    pub fn new(kind: RootType, rank: usize, black: &[usize], arrows: &[(usize, usize)], name: &str) -> Result<Self> {
        let d = SatakeDiagram {
            kind,
            rank,
            black: black.iter().copied().collect(),
            arrows: arrows.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
            name: name.into(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: SatakeDiagram = serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        let d = SatakeDiagram { arrows: d.arrows.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(), ..d };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        RootSystem::new(self.kind, self.rank)?;
        let in_range = |i: usize| (1..=self.rank).contains(&i);
        if !self.black.iter().all(|&i| in_range(i)) {
            return Err(Error::InvalidParams("black node out of range".into()));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.arrows {
            if a == b || !in_range(a) || !in_range(b) {
                return Err(Error::InvalidParams(format!("bad arrow ({a}, {b})")));
            }
            if self.black.contains(&a) || self.black.contains(&b) {
                return Err(Error::InvalidParams(format!("arrow ({a}, {b}) touches a black node")));
            }
            if !seen.insert(a) || !seen.insert(b) {
                return Err(Error::InvalidParams("arrows are not disjoint".into()));
            }
        }
        Ok(())
    }

    pub fn root_system(&self) -> RootSystem {
        RootSystem::new(self.kind, self.rank).expect("validated diagram")
    }

    pub fn is_white(&self, i: usize) -> bool {
        (1..=self.rank).contains(&i) && !self.black.contains(&i)
    }

    /// Image of a node under the arrow involution.
    pub fn partner(&self, i: usize) -> usize {
        self.arrows.iter().find_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None }).unwrap_or(i)
    }

    /// `su(p, q)` with `1 ≤ p ≤ q`, on `A_{p+q−1}`.
    pub fn su(p: usize, q: usize) -> Result<Self> {
        if p < 1 || p > q {
            return Err(Error::InvalidParams("need 1 ≤ p ≤ q".into()));
        }
        let l = p + q - 1;
        let black: Vec<usize> = (p + 1..=l - p).collect();
        let arrows: Vec<(usize, usize)> = (1..=p).map(|i| (i, l + 1 - i)).filter(|(a, b)| a != b).collect();
        Self::new(RootType::A, l, &black, &arrows, &format!("su({p},{q})"))
    }

    /// `so(ℓ−1, ℓ+1)` on `D_ℓ`, `ℓ ≥ 4`.
    pub fn so_quasi_split(l: usize) -> Result<Self> {
        if l < 4 {
            return Err(Error::InvalidParams("need ℓ ≥ 4".into()));
        }
        Self::new(RootType::D, l, &[], &[(l - 1, l)], &format!("so({},{})", l - 1, l + 1))
    }

    /// `so*(2ℓ)` on `D_ℓ` for odd `ℓ ≥ 5`.
    pub fn so_star(l: usize) -> Result<Self> {
        if l < 5 || l.is_multiple_of(2) {
            return Err(Error::InvalidParams("need odd ℓ ≥ 5".into()));
        }
        let black: Vec<usize> = (1..=l - 2).step_by(2).collect();
        Self::new(RootType::D, l, &black, &[(l - 1, l)], &format!("so*({})", 2 * l))
    }

    pub fn e_ii() -> Self {
        Self::new(RootType::E, 6, &[], &[(1, 6), (3, 5)], "E_II").expect("fixed diagram")
    }

    pub fn e_iii() -> Self {
        Self::new(RootType::E, 6, &[3, 4, 5], &[(1, 6)], "E_III").expect("fixed diagram")
    }

    /// Whether this is one of the shipped families.
    fn family(&self) -> Option<Family> {
        let same = |d: Result<SatakeDiagram>| d.is_ok_and(|d| d.black == self.black && d.arrows == self.arrows && d.kind == self.kind && d.rank == self.rank);
        match self.kind {
            RootType::A => (1..=self.rank.div_ceil(2)).map(|p| (p, self.rank + 1 - p)).find(|&(p, q)| same(Self::su(p, q))).map(|(p, q)| Family::Su(p, q)),
            RootType::D if same(Self::so_quasi_split(self.rank)) => Some(Family::So),
            RootType::D if same(Self::so_star(self.rank)) => Some(Family::SoStar),
            RootType::E if same(Ok(Self::e_ii())) => Some(Family::EII),
            RootType::E if same(Ok(Self::e_iii())) => Some(Family::EIII),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Su(usize, usize),
    So,
    SoStar,
    EII,
    EIII,
}

/// A set of crossed simple roots on a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingChoice {
    pub diagram: SatakeDiagram,
    pub crossing: BTreeSet<usize>,
}

impl GradingChoice {
    pub fn new(diagram: SatakeDiagram, crossing: &[usize]) -> Result<Self> {
        let crossing: BTreeSet<usize> = crossing.iter().copied().collect();
        if crossing.is_empty() {
            return Err(Error::InvalidParams("empty crossing".into()));
        }
        for &i in &crossing {
            if !diagram.is_white(i) {
                return Err(Error::InvalidParams(format!("α{i} is not a white node")));
            }
            if !crossing.contains(&diagram.partner(i)) {
                return Err(Error::InvalidParams(format!("crossing is not closed under the arrow at α{i}")));
            }
        }
        Ok(GradingChoice { diagram, crossing })
    }

    fn weight(&self, root: &[i32]) -> i32 {
        self.crossing.iter().map(|&i| root[i - 1]).sum()
    }

    pub fn depth(&self) -> usize {
        self.diagram.root_system().roots.iter().map(|r| self.weight(r)).max().unwrap_or(0) as usize
    }

    /// `(dim M, n, k)` for a depth-2 grading: `dim g₋₁ + dim g₋₂`, `dim g₋₁ / 2`, `dim g₋₂`.
    pub fn cr_type(&self) -> (usize, usize, usize) {
        let g = graded_dims(self);
        let (h, k) = (g.get(&-1).copied().unwrap_or(0), g.get(&-2).copied().unwrap_or(0));
        (h + k, h / 2, k)
    }
}

impl fmt::Display for GradingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{{}}}", self.diagram.name, self.crossing.iter().map(|i| format!("α{i}")).join(", "))
    }
}

/// `dim g_p` for every degree `p`.
pub fn graded_dims(g: &GradingChoice) -> BTreeMap<i32, usize> {
    let rs = g.diagram.root_system();
    let mut out = BTreeMap::new();
    out.insert(0, rs.rank);
    for r in &rs.roots {
        *out.entry(g.weight(r)).or_insert(0) += 1;
    }
    out
}

/// Nonempty unions of arrowed pairs, of any depth, minus the hypersurface
/// crossing `{α₁, α_ℓ}` of `su`.
pub fn accidental_gradings(d: &SatakeDiagram) -> Result<Vec<GradingChoice>> {
    let family = d.family().ok_or_else(|| Error::Unsupported(format!("diagram `{}` is not a shipped family", d.name)))?;
    let pairs: Vec<(usize, usize)> = d.arrows.iter().copied().collect();
    let mut out = Vec::new();
    for subset in pairs.iter().powerset().filter(|s| !s.is_empty()) {
        let crossing: Vec<usize> = subset.iter().flat_map(|&&(a, b)| [a, b]).collect();
        if matches!(family, Family::Su(..)) && crossing.len() == 2 && crossing.contains(&1) && crossing.contains(&d.rank) {
            continue;
        }
        out.push(GradingChoice::new(d.clone(), &crossing)?);
    }
    Ok(out)
}

/// One row of the depth-2 classification.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationRow {
    pub family: String,
    pub algebra: String,
    pub crossing: Vec<usize>,
    pub graded_dims: Vec<(i32, usize)>,
    pub dim_m: usize,
    pub n: usize,
    pub k: usize,
}

/// The accidental depth-2 gradings of `E_II`, `E_III`, `so(ℓ−1,ℓ+1)`,
/// `so*(2ℓ)` and `su(p,q)` with rank up to `max_rank`.
pub fn enumerate_depth2(max_rank: usize) -> Result<Vec<ClassificationRow>> {
    if max_rank < 4 {
        return Err(Error::InvalidParams("max rank must be at least 4".into()));
    }
    let mut rows = Vec::new();
    let mut push = |family: &str, g: GradingChoice| {
        let (dim_m, n, k) = g.cr_type();
        rows.push(ClassificationRow {
            family: family.into(),
            algebra: g.diagram.name.clone(),
            crossing: g.crossing.iter().copied().collect(),
            graded_dims: graded_dims(&g).into_iter().collect(),
            dim_m,
            n,
            k,
        });
    };
    if max_rank >= 6 {
        push("a", GradingChoice::new(SatakeDiagram::e_ii(), &[1, 6])?);
        push("b", GradingChoice::new(SatakeDiagram::e_iii(), &[1, 6])?);
    }
    for l in 4..=max_rank {
        push("c", GradingChoice::new(SatakeDiagram::so_quasi_split(l)?, &[l - 1, l])?);
    }
    for l in (5..=max_rank).step_by(2) {
        push("d", GradingChoice::new(SatakeDiagram::so_star(l)?, &[l - 1, l])?);
    }
    for l in 4..=max_rank {
        for p in 2..=l.div_ceil(2) {
            let q = l + 1 - p;
            let top = if p < q { p } else { p - 1 };
            for s in 2..=top {
                push("e", GradingChoice::new(SatakeDiagram::su(p, q)?, &[s, l + 1 - s])?);
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(g: &GradingChoice) -> Vec<usize> {
        graded_dims(g).values().copied().collect()
    }

    #[test]
    fn root_counts() {
        assert_eq!(RootSystem::new(RootType::A, 4).unwrap().roots.len(), 20);
        assert_eq!(RootSystem::new(RootType::D, 5).unwrap().roots.len(), 40);
        let e6 = RootSystem::new(RootType::E, 6).unwrap();
        assert_eq!(e6.roots.len(), 72);
        assert_eq!(e6.roots[35], vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(e6.algebra_dim(), 78);
    }

    #[test]
    fn e6_grading() {
        let g = GradingChoice::new(SatakeDiagram::e_ii(), &[1, 6]).unwrap();
        assert_eq!(dims(&g), vec![8, 16, 30, 16, 8]);
        assert_eq!(g.depth(), 2);
    }

    #[test]
    fn d4_and_a4_gradings() {
        let g = GradingChoice::new(SatakeDiagram::so_quasi_split(4).unwrap(), &[3, 4]).unwrap();
        assert_eq!(dims(&g), vec![3, 6, 10, 6, 3]);
        let g = GradingChoice::new(SatakeDiagram::su(2, 3).unwrap(), &[2, 3]).unwrap();
        assert_eq!(dims(&g), vec![4, 4, 8, 4, 4]);
    }

    #[test]
    fn invalid_choices_are_rejected() {
        assert!(GradingChoice::new(SatakeDiagram::e_ii(), &[1]).is_err());
        assert!(GradingChoice::new(SatakeDiagram::e_iii(), &[3]).is_err());
        assert!(SatakeDiagram::new(RootType::A, 3, &[2], &[(1, 2)], "").is_err());
        assert!(SatakeDiagram::new(RootType::A, 4, &[], &[(1, 4), (1, 3)], "").is_err());
    }

    #[test]
    fn accidental_lists() {
        let depth2 = |d: SatakeDiagram| -> Vec<Vec<usize>> {
            accidental_gradings(&d).unwrap().into_iter().filter(|g| g.depth() == 2).map(|g| g.crossing.into_iter().collect()).collect()
        };
        assert_eq!(depth2(SatakeDiagram::su(2, 3).unwrap()), vec![vec![2, 3]]);
        assert_eq!(depth2(SatakeDiagram::su(4, 4).unwrap()), vec![vec![2, 6], vec![3, 5]]);
        let e3: Vec<Vec<usize>> = accidental_gradings(&SatakeDiagram::e_iii()).unwrap().into_iter().map(|g| g.crossing.into_iter().collect()).collect();
        assert_eq!(e3, vec![vec![1, 6]]);
        let e2: Vec<usize> = accidental_gradings(&SatakeDiagram::e_ii()).unwrap().iter().map(|g| g.depth()).collect();
        assert_eq!(e2, vec![2, 4, 6]);
        assert!(accidental_gradings(&SatakeDiagram::new(RootType::A, 3, &[], &[], "sl(4,R)").unwrap()).is_err());
    }

    #[test]
    fn json_diagram() {
        let d = SatakeDiagram::from_json(r#"{"type":"A","rank":4,"black":[],"arrows":[[4,1],[2,3]],"name":"su(2,3)"}"#).unwrap();
        assert_eq!(d, SatakeDiagram::su(2, 3).unwrap());
        assert!(SatakeDiagram::from_json(r#"{"type":"A","rank":4,"black":[1],"arrows":[[1,4]]}"#).is_err());
    }

    #[test]
    fn classification_table() {
        let rows = enumerate_depth2(7).unwrap();
        let find = |alg: &str, c: &[usize]| rows.iter().find(|r| r.algebra == alg && r.crossing == c).map(|r| (r.dim_m, r.n, r.k));
        assert_eq!(find("E_II", &[1, 6]), Some((24, 8, 8)));
        assert_eq!(find("E_III", &[1, 6]), Some((24, 8, 8)));
        assert_eq!(find("so(3,5)", &[3, 4]), Some((9, 3, 3)));
        assert_eq!(find("so*(10)", &[4, 5]), Some((14, 4, 6)));
        assert_eq!(find("su(4,4)", &[2, 6]), Some((20, 8, 4)));
        assert_eq!(find("su(4,4)", &[3, 5]), Some((21, 6, 9)));
        assert!(find("su(3,4)", &[2, 5]).is_some() && find("su(3,4)", &[3, 4]).is_some());
        assert!(find("su(4,4)", &[4, 4]).is_none());
        assert_eq!(rows.len(), 2 + 4 + 2 + 11);
    }
}
