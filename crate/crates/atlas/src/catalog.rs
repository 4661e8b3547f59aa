//! Irreducible symmetric spaces of noncompact type with restricted-root
//! multiplicities, boundary components and rank-one recognition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{length_key, Family, Root, RootSystem, RootSystemType};

const BUILTIN: &str = include_str!("../data/catalog.json");

/// Multiplicities keyed by squared root length (`"2"`, `"1"`, `"4"`, `"2/3"`).
pub type MultMap = BTreeMap<String, u64>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(default)]
    pub split: bool,
    #[serde(default)]
    pub complexified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawEntry {
    name: String,
    #[serde(default)]
    aliases: Vec<String>,
    family: String,
    rank: usize,
    mults: MultMap,
    dim: u64,
    #[serde(default)]
    flags: Flags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEntry", into = "RawEntry")]
pub struct SpaceEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub rtype: RootSystemType,
    pub mult: MultMap,
    pub dim: u64,
    pub split: bool,
    pub complexified: bool,
}

impl From<SpaceEntry> for RawEntry {
    fn from(e: SpaceEntry) -> Self {
        RawEntry {
            name: e.name,
            aliases: e.aliases,
            family: e.rtype.family.name().to_string(),
            rank: e.rtype.rank,
            mults: e.mult,
            dim: e.dim,
            flags: Flags {
                split: e.split,
                complexified: e.complexified,
            },
        }
    }
}

impl TryFrom<RawEntry> for SpaceEntry {
    type Error = Error;
    fn try_from(raw: RawEntry) -> Result<Self> {
        let family: Family = raw.family.parse()?;
        let entry = SpaceEntry {
            name: raw.name,
            aliases: raw.aliases,
            rtype: RootSystemType::new(family, raw.rank)?,
            mult: raw.mults,
            dim: raw.dim,
            split: raw.flags.split,
            complexified: raw.flags.complexified,
        };
        entry.validate()?;
        Ok(entry)
    }
}

impl SpaceEntry {
    pub fn root_system(&self) -> RootSystem {
        RootSystem::new(self.rtype)
    }

    pub fn rank(&self) -> usize {
        self.rtype.rank
    }

    /// `rank + Σ_{λ>0} mult(λ)`.
    pub fn computed_dim(&self, sys: &RootSystem) -> u64 {
        sys.rank() as u64 + sys.positives().iter().map(|x| self.mult_of(sys, x)).sum::<u64>()
    }

    pub fn mult_of(&self, sys: &RootSystem, x: &Root) -> u64 {
        self.mult.get(&length_key(sys.length(x))).copied().unwrap_or(0)
    }

    /// `(mult α_i, mult 2α_i)` for each simple root.
    pub fn simple_mults(&self, sys: &RootSystem) -> Vec<(u64, u64)> {
        (1..=sys.rank())
            .map(|i| {
                let a = sys.simple(i);
                let d = a.scale(2);
                let m2 = if sys.is_root(&d) { self.mult_of(sys, &d) } else { 0 };
                (self.mult_of(sys, &a), m2)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let sys = self.root_system();
        let classes: BTreeSet<String> = sys.length_classes().into_iter().map(length_key).collect();
        let keys: BTreeSet<String> = self.mult.keys().cloned().collect();
        if classes != keys {
            return Err(Error::ParseError(format!(
                "{}: multiplicity classes {:?} do not match root lengths {:?} of {}",
                self.name, keys, classes, self.rtype
            )));
        }
        if let Some((k, _)) = self.mult.iter().find(|(_, m)| **m == 0) {
            return Err(Error::ParseError(format!("{}: zero multiplicity for class {k}", self.name)));
        }
        let computed = self.computed_dim(&sys);
        if computed != self.dim {
            return Err(Error::DimensionMismatch {
                name: self.name.clone(),
                declared: self.dim,
                computed,
            });
        }
        if self.split && self.mult.values().any(|m| *m != 1) {
            return Err(Error::ParseError(format!("{}: split but multiplicities are not 1", self.name)));
        }
        if self.complexified && (!self.rtype.is_reduced() || self.mult.values().any(|m| *m != 2)) {
            return Err(Error::ParseError(format!(
                "{}: complexified requires a reduced system with multiplicities 2",
                self.name
            )));
        }
        Ok(())
    }

    pub fn matches_name(&self, name: &str) -> bool {
        let key = normalize_name(name);
        normalize_name(&self.name) == key || self.aliases.iter().any(|a| normalize_name(a) == key)
    }
}

/// Case-, whitespace- and brace-insensitive key for space names.
pub fn normalize_name(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | '×' | '·'))
        .map(|c| match c {
            '²' => '2',
            '³' => '3',
            '⁻' | '−' => '-',
            c => c.to_ascii_lowercase(),
        })
        .collect::<String>()
        .replace('^', "")
}

/// Parses a catalog file: either `{"spaces": [...]}` or a bare array.
pub fn load_catalog(mut source: impl Read) -> Result<Vec<SpaceEntry>> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::ParseError(e.to_string()))?;
    parse_catalog(&text)
}

fn parse_catalog(text: &str) -> Result<Vec<SpaceEntry>> {
    // Route per-entry failures through `validate` so that DimensionMismatch
    // keeps its variant instead of being flattened into a serde message.
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    let items = match value {
        serde_json::Value::Array(a) => a,
        serde_json::Value::Object(mut o) => match o.remove("spaces") {
            Some(serde_json::Value::Array(a)) => a,
            _ => return Err(Error::ParseError("missing \"spaces\" array".into())),
        },
        _ => return Err(Error::ParseError("catalog must be an object or array".into())),
    };
    items
        .into_iter()
        .map(|v| {
            let raw: RawEntry =
                serde_json::from_value(v).map_err(|e| Error::ParseError(e.to_string()))?;
            SpaceEntry::try_from(raw)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<SpaceEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self {
            entries: parse_catalog(BUILTIN).expect("shipped catalog is valid"),
        }
    }

    pub fn from_entries(entries: Vec<SpaceEntry>) -> Self {
        Self { entries }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path)
            .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
        Ok(Self {
            entries: load_catalog(f)?,
        })
    }

    pub fn entries(&self) -> &[SpaceEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&SpaceEntry> {
        self.entries
            .iter()
            .find(|e| e.matches_name(name))
            .ok_or_else(|| Error::UnknownSpace(name.to_string()))
    }

    pub fn list_spaces(&self, filter: impl Fn(&SpaceEntry) -> bool) -> Vec<&SpaceEntry> {
        self.entries.iter().filter(|e| filter(e)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RankOneKind {
    RH,
    CH,
    HH,
    OH2,
}

/// A rank-one space; `n` is the superscript (`CH^n`), 2 for `OH²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankOneType {
    pub kind: RankOneKind,
    pub n: u64,
}

impl fmt::Display for RankOneType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RankOneKind::RH => write!(f, "RH^{}", self.n),
            RankOneKind::CH => write!(f, "CH^{}", self.n),
            RankOneKind::HH => write!(f, "HH^{}", self.n),
            RankOneKind::OH2 => write!(f, "OH^2"),
        }
    }
}

/// Recognizes a rank-one space from `(m_α, m_2α)`.
pub fn rank_one_recognize(m1: u64, m2: u64) -> Option<RankOneType> {
    use RankOneKind::*;
    let (kind, n) = match (m1, m2) {
        (m, 0) if m >= 1 => (RH, m + 1),
        (m, 1) if m >= 2 && m % 2 == 0 => (CH, m / 2 + 1),
        (m, 3) if m >= 4 && m % 4 == 0 => (HH, m / 4 + 1),
        (8, 7) => (OH2, 2),
        _ => return None,
    };
    Some(RankOneType { kind, n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryFactor {
    pub rtype: RootSystemType,
    /// Ambient simple index of each Bourbaki-labelled node of the factor.
    pub nodes: Vec<usize>,
    pub mult: MultMap,
}

impl BoundaryFactor {
    pub fn rank_one(&self) -> Option<RankOneType> {
        match (self.rtype.family, self.rtype.rank) {
            (Family::A, 1) => rank_one_recognize(self.mult.get("2").copied()?, 0),
            (Family::BC, 1) => {
                rank_one_recognize(self.mult.get("1").copied()?, self.mult.get("4").copied()?)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub phi: BTreeSet<usize>,
    pub factors: Vec<BoundaryFactor>,
    pub flat_rank: usize,
}

/// `B_Φ`: one factor per connected component of `Φ`, with multiplicities
/// re-keyed by the factor's own root lengths.
pub fn boundary_component(space: &SpaceEntry, phi: &BTreeSet<usize>) -> Result<BoundaryComponent> {
    let sys = space.root_system();
    if let Some(&bad) = phi.iter().find(|&&i| i == 0 || i > sys.rank()) {
        return Err(Error::BadIndex(bad));
    }
    let mut factors = Vec::new();
    for comp in sys.components(phi) {
        let (rtype, nodes) = sys.identify_subdiagram(&comp)?;
        let sub = RootSystem::new(rtype);
        let mut mult = MultMap::new();
        for x in sub.positives() {
            let mut amb = vec![0; sys.rank()];
            for (k, &node) in nodes.iter().enumerate() {
                amb[node - 1] = x.coefficient(k + 1);
            }
            let m = space.mult_of(&sys, &Root::new(amb));
            let key = length_key(sub.length(x));
            if let Some(prev) = mult.insert(key.clone(), m) {
                assert_eq!(prev, m, "inconsistent multiplicity on class {key} of {rtype}");
            }
        }
        factors.push(BoundaryFactor { rtype, nodes, mult });
    }
    Ok(BoundaryComponent {
        phi: phi.clone(),
        factors,
        flat_rank: sys.rank() - phi.len(),
    })
}

fn singleton_pair(space: &SpaceEntry, i: usize, k: usize) -> Result<(RootSystem, BoundaryFactor, BoundaryFactor)> {
    let sys = space.root_system();
    for idx in [i, k] {
        if idx == 0 || idx > sys.rank() {
            return Err(Error::BadIndex(idx));
        }
    }
    if i == k {
        return Err(Error::InvalidInput(format!("indices must differ, got {i} twice")));
    }
    if sys.dynkin_neighbors(i).contains(&k) {
        return Err(Error::AdjacentRoots(i, k));
    }
    let fi = boundary_component(space, &BTreeSet::from([i]))?.factors.remove(0);
    let fk = boundary_component(space, &BTreeSet::from([k]))?.factors.remove(0);
    Ok((sys, fi, fk))
}

/// The boundary component of `{α_i, α_k}` is a product of two homothetic
/// rank-one spaces (equal type and parameter; radii may differ).
pub fn homothetic_rank_one_pair(space: &SpaceEntry, i: usize, k: usize) -> Result<bool> {
    let (_, fi, fk) = singleton_pair(space, i, k)?;
    Ok(match (fi.rank_one(), fk.rank_one()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    })
}

/// As [`homothetic_rank_one_pair`], and the two factors are isometric in
/// the Killing metric of the ambient space (equal root lengths).
pub fn isometric_rank_one_pair(space: &SpaceEntry, i: usize, k: usize) -> Result<bool> {
    let (sys, _, _) = singleton_pair(space, i, k)?;
    Ok(homothetic_rank_one_pair(space, i, k)? && sys.length(&sys.simple(i)) == sys.length(&sys.simple(k)))
}

/// Optional table of totally geodesic singular-orbit actions per boundary
/// component, keyed by space name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TgTable {
    pub spaces: BTreeMap<String, Vec<TgRow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TgRow {
    pub phi: Vec<usize>,
    pub actions: Vec<String>,
}

impl TgTable {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn lookup(&self, space: &SpaceEntry, phi: &BTreeSet<usize>) -> Option<&[String]> {
        self.spaces
            .iter()
            .find(|(k, _)| space.matches_name(k))
            .and_then(|(_, rows)| {
                rows.iter()
                    .find(|r| r.phi.iter().copied().collect::<BTreeSet<_>>() == *phi)
                    .map(|r| r.actions.as_slice())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry_json(name: &str, fam: &str, rank: usize, mults: &str, dim: u64) -> String {
        format!(r#"[{{"name":"{name}","family":"{fam}","rank":{rank},"mults":{mults},"dim":{dim}}}]"#)
    }

    #[test]
    fn builtin_loads_and_names_resolve() {
        let cat = Catalog::builtin();
        assert!(cat.entries().len() > 50);
        let g2 = cat.get("G2^2/SO(4)").unwrap();
        assert_eq!(g2.dim, 8);
        assert!(g2.split);
        assert_eq!(cat.get("OH²").unwrap().dim, 16);
        assert_eq!(cat.get("E6^{-14}").unwrap().dim, 32);
        assert_eq!(cat.get("Gr*(2, C^6)").unwrap().rtype.to_string(), "BC2");
        assert_eq!(cat.get("SO(5,H)/U(5)").unwrap().name, "SO*(10)/U(5)");
        assert!(matches!(cat.get("nope"), Err(Error::UnknownSpace(_))));
    }

    #[test]
    fn names_are_unique() {
        let cat = Catalog::builtin();
        let mut seen = BTreeSet::new();
        for e in cat.entries() {
            for n in std::iter::once(&e.name).chain(&e.aliases) {
                assert!(seen.insert(normalize_name(n)), "duplicate name {n}");
            }
        }
    }

    #[test]
    fn loader_accepts_and_rejects() {
        let ok = entry_json("G2^2/SO(4)", "G2", 2, r#"{"2":1,"2/3":1}"#, 8);
        assert_eq!(load_catalog(ok.as_bytes()).unwrap().len(), 1);
        let oh = entry_json("OH2", "BC", 1, r#"{"1":8,"4":7}"#, 16);
        assert_eq!(load_catalog(oh.as_bytes()).unwrap()[0].rtype.to_string(), "BC1");
        let bad = entry_json("X", "G2", 2, r#"{"2":1,"2/3":1}"#, 9);
        assert_eq!(
            load_catalog(bad.as_bytes()),
            Err(Error::DimensionMismatch {
                name: "X".into(),
                declared: 9,
                computed: 8
            })
        );
        assert!(matches!(load_catalog("{".as_bytes()), Err(Error::ParseError(_))));
        let missing = entry_json("X", "B", 2, r#"{"2":1}"#, 5);
        assert!(matches!(load_catalog(missing.as_bytes()), Err(Error::ParseError(_))));
    }

    #[test]
    fn round_trip_json() {
        let cat = Catalog::builtin();
        let text = serde_json::to_string(cat.entries()).unwrap();
        let back: Vec<SpaceEntry> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cat.entries());
    }

    #[test]
    fn recognition() {
        use RankOneKind::*;
        assert_eq!(rank_one_recognize(1, 0), Some(RankOneType { kind: RH, n: 2 }));
        assert_eq!(rank_one_recognize(8, 7), Some(RankOneType { kind: OH2, n: 2 }));
        assert_eq!(rank_one_recognize(4, 1), Some(RankOneType { kind: CH, n: 3 }));
        assert_eq!(rank_one_recognize(4, 3), Some(RankOneType { kind: HH, n: 2 }));
        assert_eq!(rank_one_recognize(5, 2), None);
        assert_eq!(rank_one_recognize(3, 1), None);
    }

    #[test]
    fn boundary_components() {
        let cat = Catalog::builtin();
        let e = cat.get("E6^{-14}").unwrap();
        let b = boundary_component(e, &BTreeSet::new()).unwrap();
        assert!(b.factors.is_empty());
        assert_eq!(b.flat_rank, 2);
        let b = boundary_component(e, &BTreeSet::from([2])).unwrap();
        assert_eq!(b.factors.len(), 1);
        assert_eq!(b.factors[0].rtype.to_string(), "BC1");
        assert_eq!(b.factors[0].rank_one(), Some(RankOneType { kind: RankOneKind::CH, n: 5 }));

        let hh = cat.get("Gr*(2,H^7)").unwrap();
        let f = &boundary_component(hh, &BTreeSet::from([2])).unwrap().factors[0];
        assert_eq!(f.mult, MultMap::from([("1".into(), 12), ("4".into(), 3)]));
        assert_eq!(f.rank_one(), Some(RankOneType { kind: RankOneKind::HH, n: 4 }));

        let f4 = cat.get("E7^{-5}").unwrap();
        let full = boundary_component(f4, &BTreeSet::from([1, 2, 3, 4])).unwrap();
        assert_eq!(full.factors.len(), 1);
        assert_eq!(full.factors[0].mult, f4.mult);
        assert_eq!(full.flat_rank, 0);
        // Short A2 inside F4: its own long class carries the short ambient mult.
        let a2 = boundary_component(f4, &BTreeSet::from([3, 4])).unwrap();
        assert_eq!(a2.factors[0].rtype.to_string(), "A2");
        assert_eq!(a2.factors[0].mult, MultMap::from([("2".into(), 4)]));
        let split = boundary_component(f4, &BTreeSet::from([1, 4])).unwrap();
        assert_eq!(split.factors.len(), 2);
    }

    #[test]
    fn homothety() {
        let cat = Catalog::builtin();
        let a3 = cat.get("SL(4,R)/SO(4)").unwrap();
        assert!(homothetic_rank_one_pair(a3, 1, 3).unwrap());
        assert!(isometric_rank_one_pair(a3, 1, 3).unwrap());
        assert_eq!(homothetic_rank_one_pair(a3, 1, 2), Err(Error::AdjacentRoots(1, 2)));
        let b3 = cat.get("SO(3,4)/SO(3)SO(4)").unwrap();
        assert!(!isometric_rank_one_pair(b3, 1, 3).unwrap());
        assert!(homothetic_rank_one_pair(b3, 1, 3).unwrap());
        let b3n = cat.get("SO(3,5)/SO(3)SO(5)").unwrap();
        assert!(!homothetic_rank_one_pair(b3n, 1, 3).unwrap());
    }

    #[test]
    fn list_filters() {
        let cat = Catalog::builtin();
        let g2: Vec<&str> = cat
            .list_spaces(|e| e.rank() >= 2 && e.rtype.family == Family::G2)
            .iter()
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(g2, vec!["G2(C)/G2", "G2^2/SO(4)"]);
        let r1 = cat.list_spaces(|e| e.rtype.family == Family::BC && e.rank() == 1);
        assert!(r1.iter().all(|e| {
            let sys = e.root_system();
            let (m1, m2) = e.simple_mults(&sys)[0];
            matches!(rank_one_recognize(m1, m2), Some(t) if t.kind != RankOneKind::RH)
        }));
        assert_eq!(cat.list_spaces(|_| true).len(), cat.entries().len());
    }

    #[test]
    fn tg_table_lookup() {
        let cat = Catalog::builtin();
        let t = TgTable::from_json(r#"{"spaces":{"G2^2/SO(4)":[{"phi":[1,2],"actions":["SO(4)"]}]}}"#).unwrap();
        let g2 = cat.get("G2^2/SO(4)").unwrap();
        assert_eq!(t.lookup(g2, &BTreeSet::from([1, 2])).unwrap(), ["SO(4)".to_string()]);
        assert!(t.lookup(g2, &BTreeSet::from([1])).is_none());
    }
}
