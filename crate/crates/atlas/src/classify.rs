//! Per-space catalog of cohomogeneity-one action families: horospherical
//! foliations, solvable foliations, canonical extensions of totally geodesic
//! and diagonal actions, and nilpotent-construction families.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    boundary_component, homothetic_rank_one_pair, BoundaryFactor, Catalog, RankOneKind, RankOneType,
    SpaceEntry, TgTable,
};
use crate::error::{Error, Result};
use crate::nilcon::{self, Status, Witness};
use crate::rootsys::{Family, RootSystem};

pub const TG_PLACEHOLDER: &str = "TG(B_Φ): requires external table";
pub const CH_SYMBOLIC: &str = "(0,π/2) × {2,4,…,2⌊n/2⌋} ⊔ {π/2} × {2,…,n}";
pub const OH2_SET: &str = "{2,3,6,7} ⊔ [0,1] × {4}";
pub const HH_SYMBOLIC: &str = "subset of a disjoint union of cubes [0,π/2]^3 of quaternion-Kähler angles";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyKind {
    Horospherical,
    Solvable,
    CeTotallyGeodesic,
    CeDiagonal,
    Nilpotent,
}

impl FamilyKind {
    pub fn label(self) -> &'static str {
        match self {
            FamilyKind::Horospherical => "HOROSPHERICAL",
            FamilyKind::Solvable => "SOLVABLE",
            FamilyKind::CeTotallyGeodesic => "CE_TOTALLY_GEODESIC",
            FamilyKind::CeDiagonal => "CE_DIAGONAL",
            FamilyKind::Nilpotent => "NILPOTENT",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModuliKind {
    ChExplicit,
    HhSymbolic,
    Oh2Explicit,
    G2Singleton,
}

/// A real interval with symbolic endpoints (`"0"`, `"π/2"`, `"1"`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: String,
    pub hi: String,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    fn open(lo: &str, hi: &str) -> Self {
        Interval {
            lo: lo.into(),
            hi: hi.into(),
            lo_closed: false,
            hi_closed: false,
        }
    }

    fn closed(lo: &str, hi: &str) -> Self {
        Interval {
            lo: lo.into(),
            hi: hi.into(),
            lo_closed: true,
            hi_closed: true,
        }
    }

    fn point(x: &str) -> Self {
        Self::closed(x, x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi && self.lo_closed && self.hi_closed {
            return write!(f, "{{{}}}", self.lo);
        }
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

/// `interval × dims`, or just `dims` when there is no continuous parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuliComponent {
    pub interval: Option<Interval>,
    pub dims: Vec<u64>,
}

impl fmt::Display for ModuliComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = self.dims.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match &self.interval {
            Some(i) => write!(f, "{i} × {{{dims}}}"),
            None => write!(f, "{{{dims}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuliDescriptor {
    pub kind: ModuliKind,
    /// `n` of `CH^{n+1}` / `HH^{n+1}`; `j` of `H_{j,0}` for G2.
    pub n: Option<u64>,
    /// Set expression with `n` left symbolic.
    pub data: String,
    /// The same set at this `n`; `"∅"` when empty.
    pub instance: String,
    pub components: Vec<ModuliComponent>,
}

impl ModuliDescriptor {
    pub fn is_empty(&self) -> bool {
        self.instance == "∅"
    }
}

fn render_components(cs: &[ModuliComponent]) -> String {
    if cs.is_empty() {
        return "∅".into();
    }
    cs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ⊔ ")
}

/// Moduli of nilpotent-construction actions on a rank-one space that do not
/// arise from any other method.
pub fn moduli(t: RankOneType) -> Result<ModuliDescriptor> {
    match t.kind {
        RankOneKind::RH => Err(Error::RHHasNoNCModuli),
        RankOneKind::CH => {
            let n = t.n - 1;
            let components = if n < 2 {
                Vec::new()
            } else {
                vec![
                    ModuliComponent {
                        interval: Some(Interval::open("0", "π/2")),
                        dims: (1..=n / 2).map(|k| 2 * k).collect(),
                    },
                    ModuliComponent {
                        interval: Some(Interval::point("π/2")),
                        dims: (2..=n).collect(),
                    },
                ]
            };
            Ok(ModuliDescriptor {
                kind: ModuliKind::ChExplicit,
                n: Some(n),
                data: CH_SYMBOLIC.into(),
                instance: render_components(&components),
                components,
            })
        }
        RankOneKind::HH => Ok(ModuliDescriptor {
            kind: ModuliKind::HhSymbolic,
            n: Some(t.n - 1),
            data: HH_SYMBOLIC.into(),
            instance: format!("M_{{HH^{}}}", t.n),
            components: Vec::new(),
        }),
        RankOneKind::OH2 => {
            let components = vec![
                ModuliComponent {
                    interval: None,
                    dims: vec![2, 3, 6, 7],
                },
                ModuliComponent {
                    interval: Some(Interval::closed("0", "1")),
                    dims: vec![4],
                },
            ];
            Ok(ModuliDescriptor {
                kind: ModuliKind::Oh2Explicit,
                n: None,
                data: OH2_SET.into(),
                instance: render_components(&components),
                components,
            })
        }
    }
}

/// The single `w = 0` action for the short simple root `α_j` of a G2 space.
pub fn g2_singleton(j: usize) -> ModuliDescriptor {
    ModuliDescriptor {
        kind: ModuliKind::G2Singleton,
        n: Some(j as u64),
        data: "{H_{j,0}}".into(),
        instance: format!("{{H_{{{j},0}}}}"),
        components: Vec::new(),
    }
}

/// A simple root of one de Rham factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub factor: usize,
    pub index: usize,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α{}[{}]", self.index, self.factor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Parameters {
    /// Lines `ℓ ⊂ a`, i.e. `RP^{dim}`, modulo a group of the given order.
    Lines { projective_dim: usize, aut_order: usize },
    /// One simple root per `Aut^w(D)`-orbit; `orbit` lists the whole class.
    SimpleRoot { root: Node, orbit: Vec<Node> },
    TotallyGeodesic {
        phi: Vec<usize>,
        boundary: String,
        /// `Φ` is the whole diagram of its factor, so `B_Φ` is that factor.
        whole_factor: bool,
        actions: Vec<String>,
        from_table: bool,
    },
    Diagonal { pair: [Node; 2], boundary: String },
    Nilpotent {
        phi: Vec<usize>,
        boundary: String,
        moduli: ModuliDescriptor,
    },
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[usize]| v.iter().map(|i| format!("α{i}")).collect::<Vec<_>>().join(",");
        match self {
            Parameters::Lines { projective_dim, aut_order } => {
                write!(f, "lines ℓ ⊂ a: RP^{projective_dim} modulo Aut^w(D) (order {aut_order})")
            }
            Parameters::SimpleRoot { root, orbit } => {
                let o = orbit.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ~ ");
                write!(f, "{root}; class {o}")
            }
            Parameters::TotallyGeodesic {
                phi,
                boundary,
                whole_factor,
                actions,
                ..
            } => {
                write!(f, "Φ = {{{}}} B_Φ = {boundary}", set(phi))?;
                if *whole_factor {
                    f.write_str(" [whole factor]")?;
                }
                write!(f, ": {}", actions.join("; "))
            }
            Parameters::Diagonal { pair, boundary } => {
                write!(f, "{{{}, {}}} B_Φ = {boundary}", pair[0], pair[1])
            }
            Parameters::Nilpotent { phi, boundary, moduli } => {
                write!(f, "Φ = {{{}}} B_Φ = {boundary}: {}", set(phi), moduli.instance)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFamily {
    pub kind: FamilyKind,
    /// The factor carrying the family, when it lives on a single factor.
    pub factor: Option<usize>,
    pub parameters: Parameters,
    pub source: String,
    /// For decomposable actions: what acts on the other factors.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub others: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionCatalog {
    pub spaces: Vec<String>,
    pub families: Vec<ActionFamily>,
}

impl ActionCatalog {
    pub fn of_kind(&self, kind: FamilyKind) -> impl Iterator<Item = &ActionFamily> {
        self.families.iter().filter(move |f| f.kind == kind)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("space: {}\n", self.spaces.join(" × "));
        let rows: Vec<[String; 3]> = self
            .families
            .iter()
            .map(|f| {
                let factor = f.factor.map_or("-".to_string(), |i| i.to_string());
                [f.kind.to_string(), factor, f.parameters.to_string()]
            })
            .collect();
        let w0 = rows.iter().map(|r| r[0].chars().count()).max().unwrap_or(0).max(4);
        let w1 = rows.iter().map(|r| r[1].chars().count()).max().unwrap_or(0).max(6);
        out.push_str(&format!("{:<w0$}  {:<w1$}  parameters\n", "kind", "factor"));
        for r in rows {
            out.push_str(&format!("{:<w0$}  {:<w1$}  {}\n", r[0], r[1], r[2]));
        }
        out
    }
}

fn connected_subsets(sys: &RootSystem) -> Vec<BTreeSet<usize>> {
    let r = sys.rank();
    let mut out: Vec<BTreeSet<usize>> = (1u32..1 << r)
        .map(|mask| (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .filter(|s| sys.is_connected_subset(s))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn describe_factor(f: &BoundaryFactor) -> String {
    if let Some(t) = f.rank_one() {
        return t.to_string();
    }
    let mults = f.mult.iter().map(|(k, m)| format!("{k}:{m}")).collect::<Vec<_>>().join(",");
    format!("{} [{mults}]", f.rtype)
}

/// `B_Φ` as a stand-alone space entry (name derived from its structure).
fn factor_space(f: &BoundaryFactor) -> SpaceEntry {
    let sys = RootSystem::new(f.rtype);
    let mut e = SpaceEntry {
        name: describe_factor(f),
        aliases: Vec::new(),
        rtype: f.rtype,
        mult: f.mult.clone(),
        dim: 0,
        split: f.mult.values().all(|&m| m == 1),
        complexified: f.rtype.is_reduced() && f.mult.values().all(|&m| m == 2),
    };
    e.dim = e.computed_dim(&sys);
    e
}

fn is_g2_space(e: &SpaceEntry) -> bool {
    e.rtype.family == Family::G2 && {
        let m: BTreeSet<u64> = e.mult.values().copied().collect();
        m == BTreeSet::from([1]) || m == BTreeSet::from([2])
    }
}

fn short_simple_root(sys: &RootSystem) -> usize {
    (1..=sys.rank())
        .min_by_key(|&i| sys.length(&sys.simple(i)))
        .expect("rank is positive")
}

/// Singleton boundary components of `space` that are `CH^{n+1}` (n ≥ 2),
/// `HH^{n+1}` (n ≥ 1) or `OH²`.
pub fn rank_one_boundaries(space: &SpaceEntry) -> Result<Vec<(BTreeSet<usize>, RankOneType)>> {
    let mut out = Vec::new();
    for i in 1..=space.rank() {
        let phi = BTreeSet::from([i]);
        let bc = boundary_component(space, &phi)?;
        let Some(t) = bc.factors[0].rank_one() else {
            continue;
        };
        if t.kind == RankOneKind::RH || moduli(t)?.is_empty() {
            continue;
        }
        out.push((phi, t));
    }
    Ok(out)
}

/// Every catalog space with a rank-one boundary component carrying
/// nilpotent-construction moduli.
pub fn derive_type_e_spaces(catalog: &Catalog) -> Result<Vec<(&SpaceEntry, BTreeSet<usize>, RankOneType)>> {
    let mut out = Vec::new();
    for e in catalog.entries() {
        for (phi, t) in rank_one_boundaries(e)? {
            out.push((e, phi, t));
        }
    }
    Ok(out)
}

type NilpotentKey = (Vec<usize>, ModuliDescriptor);

/// Structural route: rank-one boundary recognition plus the G2 rule.
fn nilpotent_by_recognition(space: &SpaceEntry) -> Result<BTreeMap<NilpotentKey, String>> {
    let mut out = BTreeMap::new();
    for (phi, t) in rank_one_boundaries(space)? {
        out.insert((phi.into_iter().collect(), moduli(t)?), t.to_string());
    }
    if is_g2_space(space) {
        let sys = space.root_system();
        let phi: Vec<usize> = (1..=sys.rank()).collect();
        out.insert((phi, g2_singleton(short_simple_root(&sys))), space.name.clone());
    }
    Ok(out)
}

/// Elimination route: run the analyzer on every irreducible boundary
/// component and keep what it does not eliminate.
fn nilpotent_by_elimination(space: &SpaceEntry) -> Result<BTreeMap<NilpotentKey, String>> {
    let sys = space.root_system();
    let mut out = BTreeMap::new();
    for phi in connected_subsets(&sys) {
        let bc = boundary_component(space, &phi)?;
        let factor = &bc.factors[0];
        let sub = factor_space(factor);
        let subsys = sub.root_system();
        for j in 1..=sub.rank() {
            let v = nilcon::analyze_with(&sub, &subsys, j)?;
            let m = match (v.status, &v.witness) {
                (Status::RankOneKnown, Witness::RankOne { space: t }) => match moduli(*t) {
                    Ok(m) if !m.is_empty() => m,
                    _ => continue,
                },
                (s, _) if s.is_survivor() => g2_singleton(factor.nodes[j - 1]),
                _ => continue,
            };
            let label = if phi.len() == sys.rank() { space.name.clone() } else { sub.name.clone() };
            out.insert((phi.iter().copied().collect(), m), label);
        }
    }
    Ok(out)
}

struct FactorFamilies {
    tg: Vec<ActionFamily>,
    nilpotent: Vec<ActionFamily>,
}

fn factor_families(idx: usize, space: &SpaceEntry, tg: Option<&TgTable>) -> Result<FactorFamilies> {
    let sys = space.root_system();
    let mut tg_out = Vec::new();
    for phi in connected_subsets(&sys) {
        let bc = boundary_component(space, &phi)?;
        let whole = phi.len() == sys.rank();
        let boundary = if whole { space.name.clone() } else { describe_factor(&bc.factors[0]) };
        let (actions, from_table) = match tg.and_then(|t| t.lookup(space, &phi)) {
            Some(rows) => (rows.to_vec(), true),
            None => (vec![TG_PLACEHOLDER.to_string()], false),
        };
        tg_out.push(ActionFamily {
            kind: FamilyKind::CeTotallyGeodesic,
            factor: Some(idx),
            parameters: Parameters::TotallyGeodesic {
                phi: phi.into_iter().collect(),
                boundary,
                whole_factor: whole,
                actions,
                from_table,
            },
            source: "canonical extension of a totally geodesic singular-orbit action on B_Φ".into(),
            others: Vec::new(),
        });
    }
    let a = nilpotent_by_recognition(space)?;
    let b = nilpotent_by_elimination(space)?;
    let (ka, kb): (BTreeSet<_>, BTreeSet<_>) = (a.keys().collect(), b.keys().collect());
    if ka != kb {
        return Err(Error::CrossCheck(format!(
            "{}: recognition gives {:?}, elimination gives {:?}",
            space.name,
            a.values().collect::<Vec<_>>(),
            b.values().collect::<Vec<_>>()
        )));
    }
    let nilpotent = a
        .into_iter()
        .map(|((phi, moduli), boundary)| {
            let source = if moduli.kind == ModuliKind::G2Singleton {
                "nilpotent construction with w = 0 at the short simple root"
            } else if phi.len() == sys.rank() {
                "nilpotent construction on a rank-one space"
            } else {
                "canonical extension of a nilpotent-construction action on a rank-one boundary component"
            };
            ActionFamily {
                kind: FamilyKind::Nilpotent,
                factor: Some(idx),
                parameters: Parameters::Nilpotent { phi, boundary, moduli },
                source: source.into(),
                others: Vec::new(),
            }
        })
        .collect();
    Ok(FactorFamilies { tg: tg_out, nilpotent })
}

/// Orbits of simple roots of the product under weighted diagram
/// automorphisms, including swaps of identical factors.
fn simple_root_classes(factors: &[SpaceEntry]) -> (Vec<Vec<Node>>, usize) {
    let mut order = 1usize;
    let mut classes: Vec<Vec<Node>> = Vec::new();
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (k, e) in factors.iter().enumerate() {
        groups.entry(e.name.as_str()).or_default().push(k);
    }
    for members in groups.values() {
        let e = &factors[members[0]];
        let sys = e.root_system();
        let auts = sys.weighted_diagram_automorphisms(&e.simple_mults(&sys));
        order *= auts.len() * (1..=members.len()).product::<usize>();
        let mut seen = BTreeSet::new();
        for i in 1..=sys.rank() {
            if seen.contains(&i) {
                continue;
            }
            let orbit: BTreeSet<usize> = auts.iter().map(|p| p[i - 1]).collect();
            seen.extend(orbit.iter().copied());
            classes.push(
                members
                    .iter()
                    .flat_map(|&f| orbit.iter().map(move |&index| Node { factor: f, index }))
                    .collect(),
            );
        }
    }
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    (classes, order)
}

fn diagonal_pairs(factors: &[SpaceEntry]) -> Result<Vec<ActionFamily>> {
    let mut singles: Vec<(Node, Option<RankOneType>)> = Vec::new();
    for (f, e) in factors.iter().enumerate() {
        for i in 1..=e.rank() {
            let bc = boundary_component(e, &BTreeSet::from([i]))?;
            singles.push((Node { factor: f, index: i }, bc.factors[0].rank_one()));
        }
    }
    let mut out = Vec::new();
    for (x, (a, ta)) in singles.iter().enumerate() {
        for (b, tb) in &singles[x + 1..] {
            let hom = if a.factor == b.factor {
                let sys = factors[a.factor].root_system();
                if sys.dynkin_neighbors(a.index).contains(&b.index) {
                    continue;
                }
                homothetic_rank_one_pair(&factors[a.factor], a.index, b.index)?
            } else {
                ta.is_some() && ta == tb
            };
            if !hom {
                continue;
            }
            let t = ta.expect("homothetic pairs are rank one");
            out.push(ActionFamily {
                kind: FamilyKind::CeDiagonal,
                factor: (a.factor == b.factor).then_some(a.factor),
                parameters: Parameters::Diagonal {
                    pair: [*a, *b],
                    boundary: format!("{t} × {t}"),
                },
                source: "canonical extension of a diagonal action on a reducible rank-2 boundary component".into(),
                others: Vec::new(),
            });
        }
    }
    Ok(out)
}

/// The action catalog of `M = Π factors`. Factors are sorted by name first,
/// so the result does not depend on their order.
pub fn classify(factors: &[SpaceEntry], tg: Option<&TgTable>) -> Result<ActionCatalog> {
    if factors.is_empty() {
        return Err(Error::InvalidInput("classify needs at least one factor".into()));
    }
    let mut factors = factors.to_vec();
    factors.sort_by(|a, b| a.name.cmp(&b.name));
    let rank: usize = factors.iter().map(SpaceEntry::rank).sum();
    let (classes, aut_order) = simple_root_classes(&factors);

    let mut families = vec![ActionFamily {
        kind: FamilyKind::Horospherical,
        factor: None,
        parameters: Parameters::Lines {
            projective_dim: rank - 1,
            aut_order,
        },
        source: "horospherical foliation by H_ℓ for a line ℓ ⊂ a".into(),
        others: Vec::new(),
    }];
    families.extend(classes.into_iter().map(|orbit| ActionFamily {
        kind: FamilyKind::Solvable,
        factor: Some(orbit[0].factor),
        parameters: Parameters::SimpleRoot { root: orbit[0], orbit },
        source: "solvable foliation by H_{α_i}".into(),
        others: Vec::new(),
    }));

    let per_factor: Vec<FactorFamilies> = factors
        .par_iter()
        .enumerate()
        .map(|(i, e)| factor_families(i, e, tg))
        .collect::<Result<_>>()?;
    let mut nilpotent = Vec::new();
    for (i, ff) in per_factor.into_iter().enumerate() {
        families.extend(ff.tg);
        for mut f in ff.nilpotent {
            f.others = factors
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != i)
                .map(|(_, e)| format!("full isometry group of {}", e.name))
                .collect();
            nilpotent.push(f);
        }
    }
    families.extend(diagonal_pairs(&factors)?);
    families.extend(nilpotent);
    Ok(ActionCatalog {
        spaces: factors.iter().map(|e| e.name.clone()).collect(),
        families,
    })
}

/// Resolves names against the catalog, then classifies.
pub fn classify_names(catalog: &Catalog, names: &[&str], tg: Option<&TgTable>) -> Result<ActionCatalog> {
    let factors = names
        .iter()
        .map(|n| catalog.get(n).cloned())
        .collect::<Result<Vec<_>>>()?;
    classify(&factors, tg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> Catalog {
        Catalog::builtin()
    }

    fn nilpotent(c: &ActionCatalog) -> Vec<(Vec<usize>, String, String)> {
        c.of_kind(FamilyKind::Nilpotent)
            .map(|f| match &f.parameters {
                Parameters::Nilpotent { phi, boundary, moduli } => {
                    (phi.clone(), boundary.clone(), moduli.instance.clone())
                }
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn moduli_descriptors() {
        let ch = |n| RankOneType {
            kind: RankOneKind::CH,
            n,
        };
        assert!(moduli(ch(2)).unwrap().is_empty());
        let m = moduli(ch(5)).unwrap();
        assert_eq!(m.data, CH_SYMBOLIC);
        assert_eq!(m.n, Some(4));
        assert_eq!(m.instance, "(0,π/2) × {2,4} ⊔ {π/2} × {2,3,4}");
        assert_eq!(moduli(ch(4)).unwrap().instance, "(0,π/2) × {2} ⊔ {π/2} × {2,3}");
        let o = moduli(RankOneType {
            kind: RankOneKind::OH2,
            n: 2,
        })
        .unwrap();
        assert_eq!(o.instance, OH2_SET);
        assert_eq!(o.data, OH2_SET);
        assert_eq!(
            moduli(RankOneType {
                kind: RankOneKind::RH,
                n: 3
            }),
            Err(Error::RHHasNoNCModuli)
        );
        let h = moduli(RankOneType {
            kind: RankOneKind::HH,
            n: 2,
        })
        .unwrap();
        assert_eq!(h.kind, ModuliKind::HhSymbolic);
        assert_eq!(h.n, Some(1));
    }

    #[test]
    fn sl3_catalog() {
        let c = classify_names(&cat(), &["SL(3,R)/SO(3)"], None).unwrap();
        let a: Vec<_> = c.of_kind(FamilyKind::Horospherical).collect();
        assert_eq!(a.len(), 1);
        assert_eq!(
            a[0].parameters,
            Parameters::Lines {
                projective_dim: 1,
                aut_order: 2
            }
        );
        let b: Vec<_> = c.of_kind(FamilyKind::Solvable).collect();
        assert_eq!(b.len(), 1);
        // Φ ∈ {{α1}, {α2}, {α1,α2}}.
        assert_eq!(c.of_kind(FamilyKind::CeTotallyGeodesic).count(), 3);
        assert_eq!(c.of_kind(FamilyKind::CeDiagonal).count(), 0);
        assert!(nilpotent(&c).is_empty());
    }

    #[test]
    fn g2_spaces_have_the_singleton() {
        for name in ["G2^2/SO(4)", "G2(C)/G2"] {
            let c = classify_names(&cat(), &[name], None).unwrap();
            assert_eq!(nilpotent(&c), vec![(vec![1, 2], c.spaces[0].clone(), "{H_{2,0}}".to_string())]);
        }
    }

    #[test]
    fn type_e_spaces_match_the_grassmannian_lists() {
        let catalog = cat();
        let found: BTreeMap<String, RankOneType> = derive_type_e_spaces(&catalog)
            .unwrap()
            .into_iter()
            .map(|(e, _, t)| (e.name.clone(), t))
            .collect();
        // Oracle from the names alone: SU(p,q) with q − p ≥ 2 gives CH^{q−p+1},
        // Sp(p,q) with q > p gives HH^{q−p+1}, SO*(4m+2) gives CH^3.
        let mut expect = BTreeMap::new();
        let parse_pq = |s: &str| -> Option<(u64, u64)> {
            let inner = s.split_once('(')?.1.split_once(')')?.0;
            let (p, q) = inner.split_once(',')?;
            Some((p.parse().ok()?, q.parse().ok()?))
        };
        for e in catalog.entries() {
            let t = if e.name.starts_with("SU(") && !e.name.starts_with("SU*") {
                parse_pq(&e.name)
                    .filter(|(p, q)| q - p >= 2)
                    .map(|(p, q)| (RankOneKind::CH, q - p + 1))
            } else if e.name.starts_with("Sp(") && !e.name.contains(",R)") && !e.name.contains(",C)") {
                parse_pq(&e.name)
                    .filter(|(p, q)| q > p)
                    .map(|(p, q)| (RankOneKind::HH, q - p + 1))
            } else if e.name.starts_with("SO*(") {
                let m: u64 = e.name[4..].split_once(')').unwrap().0.parse().unwrap();
                (m % 4 == 2).then_some((RankOneKind::CH, 3))
            } else if e.name.starts_with("E6^{-14}") {
                Some((RankOneKind::CH, 5))
            } else if e.name.starts_with("CH^") {
                let n: u64 = e.name[3..].parse().unwrap();
                (n >= 3).then_some((RankOneKind::CH, n))
            } else if e.name.starts_with("HH^") {
                Some((RankOneKind::HH, e.name[3..].parse().unwrap()))
            } else if e.name == "OH2" {
                Some((RankOneKind::OH2, 2))
            } else {
                None
            };
            if let Some((kind, n)) = t {
                expect.insert(e.name.clone(), RankOneType { kind, n });
            }
        }
        assert_eq!(found, expect);
        assert_eq!(found["E6^{-14}/Spin(10)U(1)"].to_string(), "CH^5");
        assert_eq!(found["SO*(10)/U(5)"].to_string(), "CH^3");
        // OH² only occurs as a whole space.
        assert!(found
            .iter()
            .filter(|(_, t)| t.kind == RankOneKind::OH2)
            .all(|(n, _)| n == "OH2"));
    }

    #[test]
    fn quaternionic_grassmannian_uses_its_short_end() {
        let c = classify_names(&cat(), &["Gr*(2,H^5)"], None).unwrap();
        let n = nilpotent(&c);
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].0, vec![2]);
        assert_eq!(n[0].1, "HH^2");
    }

    #[test]
    fn diagonal_pairs_need_homothetic_ends() {
        let a3 = classify_names(&cat(), &["SL(4,R)/SO(4)"], None).unwrap();
        assert_eq!(a3.of_kind(FamilyKind::CeDiagonal).count(), 1);
        // B3 split: α1 and α3 give RH² × RH² of different radii.
        let b3 = classify_names(&cat(), &["SO(3,4)/SO(3)SO(4)"], None).unwrap();
        assert_eq!(b3.of_kind(FamilyKind::CeDiagonal).count(), 1);
        // SO(3,5): α3 has multiplicity 2.
        let b3m = classify_names(&cat(), &["SO(3,5)/SO(3)SO(5)"], None).unwrap();
        assert_eq!(b3m.of_kind(FamilyKind::CeDiagonal).count(), 0);
    }

    #[test]
    fn products_are_order_independent_and_decomposable() {
        let x = classify_names(&cat(), &["G2^2/SO(4)", "CH^4"], None).unwrap();
        let y = classify_names(&cat(), &["CH^4", "G2^2/SO(4)"], None).unwrap();
        assert_eq!(x, y);
        let n: Vec<_> = x.of_kind(FamilyKind::Nilpotent).collect();
        assert_eq!(n.len(), 2);
        for f in n {
            assert_eq!(f.others.len(), 1);
            assert!(f.others[0].starts_with("full isometry group of"));
        }
        // Two copies of RH²: swapping them is a diagram symmetry.
        let rr = classify_names(&cat(), &["RH^2", "RH^2"], None).unwrap();
        assert_eq!(rr.of_kind(FamilyKind::Solvable).count(), 1);
        assert_eq!(rr.of_kind(FamilyKind::CeDiagonal).count(), 1);
    }

    #[test]
    fn tg_table_fills_rows() {
        let table = TgTable::from_json(r#"{"spaces":{"SL(3,R)/SO(3)":[{"phi":[1,2],"actions":["SO(3)"]}]}}"#)
            .unwrap();
        let c = classify_names(&cat(), &["SL(3,R)/SO(3)"], Some(&table)).unwrap();
        let filled: Vec<_> = c
            .of_kind(FamilyKind::CeTotallyGeodesic)
            .filter_map(|f| match &f.parameters {
                Parameters::TotallyGeodesic {
                    actions,
                    from_table: true,
                    whole_factor,
                    ..
                } => Some((actions.clone(), *whole_factor)),
                _ => None,
            })
            .collect();
        assert_eq!(filled, vec![(vec!["SO(3)".to_string()], true)]);
    }

    #[test]
    fn whole_catalog_classifies_and_round_trips() {
        let catalog = cat();
        for e in catalog.entries() {
            let c = classify(std::slice::from_ref(e), None).unwrap();
            let json = serde_json::to_string(&c).unwrap();
            let back: ActionCatalog = serde_json::from_str(&json).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn rank_one_spaces() {
        assert!(classify_names(&cat(), &["RH^3"], None)
            .map(|c| nilpotent(&c).is_empty())
            .unwrap());
        assert!(classify_names(&cat(), &["CH^2"], None)
            .map(|c| nilpotent(&c).is_empty())
            .unwrap());
        assert_eq!(
            nilpotent(&classify_names(&cat(), &["OH2"], None).unwrap()),
            vec![(vec![1], "OH^2".to_string(), OH2_SET.to_string())]
        );
    }
}
