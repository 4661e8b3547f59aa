//! Elimination pipeline for the nilpotent construction: given a space and a
//! simple root `α_j`, decide which subspaces `w ⊂ n_j^1` can survive.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, RankOneType, SpaceEntry};
use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootSystem};

/// `λ_1 = α_j, …, λ_m`: the level-one roots for `j`, one per height.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snake {
    pub j: usize,
    pub roots: Vec<Root>,
}

impl Snake {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn top(&self) -> &Root {
        self.roots.last().expect("snakes are nonempty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    EliminatedCorner,
    EliminatedHeightCollision,
    EliminatedCanonicalExtension,
    EliminatedMultiplicity,
    EliminatedShapeTheorem,
    WZeroTotallyGeodesic,
    SurvivesWZeroG2,
    RankOneKnown,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::EliminatedCorner => "ELIMINATED_CORNER",
            Status::EliminatedHeightCollision => "ELIMINATED_HEIGHT_COLLISION",
            Status::EliminatedCanonicalExtension => "ELIMINATED_CANONICAL_EXTENSION",
            Status::EliminatedMultiplicity => "ELIMINATED_MULTIPLICITY",
            Status::EliminatedShapeTheorem => "ELIMINATED_SHAPE_THEOREM",
            Status::WZeroTotallyGeodesic => "W_ZERO_TOTALLY_GEODESIC",
            Status::SurvivesWZeroG2 => "SURVIVES_W_ZERO_G2",
            Status::RankOneKnown => "RANK_ONE_KNOWN",
        }
    }

    pub fn is_survivor(self) -> bool {
        self == Status::SurvivesWZeroG2
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    RankOne { space: RankOneType },
    Neighbors { neighbors: Vec<usize> },
    SameHeight { a: Root, b: Root, height: i32 },
    Gap { height: i32 },
    BadDifference { a: Root, b: Root },
    CanonicalExtension { indices: Vec<usize> },
    /// `mult(α_i)` exceeds half of every snake multiplicity.
    Multiplicity { i: usize, mult_alpha_i: u64, max_snake_mult: u64 },
    /// Snake passes every check; `B_r`/`BC_r` with `j = r`.
    ShapeTheorem { snake: Vec<Root> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::RankOne { space } => write!(f, "{space}"),
            Witness::Neighbors { neighbors } => write!(f, "neighbors {neighbors:?}"),
            Witness::SameHeight { a, b, height } => write!(f, "{{{a}, {b}}} at height {height}"),
            Witness::Gap { height } => write!(f, "no root at height {height}"),
            Witness::BadDifference { a, b } => write!(f, "{a} - ({b}) is not a root"),
            Witness::CanonicalExtension { indices } => write!(f, "absent simple roots {indices:?}"),
            Witness::Multiplicity {
                i,
                mult_alpha_i,
                max_snake_mult,
            } => write!(f, "i = {i}: 2*{mult_alpha_i} > max snake mult {max_snake_mult}"),
            Witness::ShapeTheorem { snake } => write!(f, "snake of length {}", snake.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NCVerdict {
    pub space: String,
    pub j: usize,
    pub status: Status,
    pub witness: Witness,
    pub note: String,
}

/// Passes iff `α_j` has exactly one Dynkin neighbor; otherwise returns them.
pub fn corner_check(sys: &RootSystem, j: usize) -> std::result::Result<(), BTreeSet<usize>> {
    let n = sys.dynkin_neighbors(j);
    if n.len() == 1 {
        Ok(())
    } else {
        Err(n)
    }
}

/// Orders `Δ_j^1` by height, requiring exactly one root per height.
pub fn snake_chain(sys: &RootSystem, j: usize) -> std::result::Result<Snake, Witness> {
    let delta = sys.delta_j1(j);
    let mut roots: Vec<Root> = Vec::with_capacity(delta.len());
    for x in delta {
        let expected = roots.len() as i32 + 1;
        if x.height() < expected {
            let prev = roots.last().expect("height-1 root is unique").clone();
            return Err(Witness::SameHeight {
                a: prev,
                b: x.clone(),
                height: x.height(),
            });
        }
        if x.height() > expected {
            return Err(Witness::Gap { height: expected });
        }
        roots.push(x);
    }
    debug_assert_eq!(roots[0], sys.simple(j));
    for w in roots.windows(2) {
        let d = w[1].sub(&w[0]);
        assert!(d.height() == 1 && sys.is_root(&d), "consecutive snake roots differ by {d}");
    }
    Ok(Snake { j, roots })
}

/// First pair `(λ_k, λ_l)` whose difference is not a level-0 root.
pub fn difference_defect(sys: &RootSystem, snake: &Snake) -> Option<(Root, Root)> {
    for (k, a) in snake.roots.iter().enumerate() {
        for b in &snake.roots[..k] {
            let d = a.sub(b);
            if !(sys.is_root(&d) && d.coefficient(snake.j) == 0) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// Full snake condition: one root per height and pairwise differences in `Σ_j`.
pub fn snake_check(sys: &RootSystem, j: usize) -> std::result::Result<Snake, Witness> {
    let snake = snake_chain(sys, j)?;
    match difference_defect(sys, &snake) {
        None => Ok(snake),
        Some((a, b)) => Err(Witness::BadDifference { a, b }),
    }
}

/// `{i ≠ j : α_i does not occur in any λ_k}`; nonempty means canonical extension.
pub fn ce_reduction_check(sys: &RootSystem, snake: &Snake) -> BTreeSet<usize> {
    (1..=sys.rank())
        .filter(|&i| i != snake.j && snake.roots.iter().all(|x| x.coefficient(i) == 0))
        .collect()
}

/// Passes iff every `α_i`, `i ≠ j`, has some `λ_k` with
/// `mult(λ_k) ≥ 2 mult(α_i)`. The witness is the violating `i` of largest
/// multiplicity (largest index on ties).
pub fn multiplicity_check(
    space: &SpaceEntry,
    sys: &RootSystem,
    snake: &Snake,
) -> std::result::Result<(), Witness> {
    let best = snake
        .roots
        .iter()
        .map(|x| space.mult_of(sys, x))
        .max()
        .unwrap_or(0);
    let worst = (1..=sys.rank())
        .filter(|&i| i != snake.j)
        .map(|i| (space.mult_of(sys, &sys.simple(i)), i))
        .filter(|&(m, _)| best < 2 * m)
        .max();
    match worst {
        None => Ok(()),
        Some((m, i)) => Err(Witness::Multiplicity {
            i,
            mult_alpha_i: m,
            max_snake_mult: best,
        }),
    }
}

fn verdict(space: &SpaceEntry, j: usize, status: Status, witness: Witness, note: &str) -> NCVerdict {
    NCVerdict {
        space: space.name.clone(),
        j,
        status,
        witness,
        note: note.to_string(),
    }
}

pub fn analyze(space: &SpaceEntry, j: usize) -> Result<NCVerdict> {
    let sys = space.root_system();
    analyze_with(space, &sys, j)
}

pub fn analyze_with(space: &SpaceEntry, sys: &RootSystem, j: usize) -> Result<NCVerdict> {
    if j == 0 || j > sys.rank() {
        return Err(Error::BadIndex(j));
    }
    if sys.rank() == 1 {
        let (m1, m2) = space.simple_mults(sys)[0];
        let t = crate::catalog::rank_one_recognize(m1, m2)
            .ok_or_else(|| Error::UnknownConfiguration {
                space: space.name.clone(),
                j,
            })?;
        return Ok(verdict(space, j, Status::RankOneKnown, Witness::RankOne { space: t }, "rank one"));
    }
    if let Err(n) = corner_check(sys, j) {
        return Ok(verdict(
            space,
            j,
            Status::EliminatedCorner,
            Witness::Neighbors {
                neighbors: n.into_iter().collect(),
            },
            "α_j is not an end node",
        ));
    }
    let snake = match snake_chain(sys, j) {
        Ok(s) => s,
        Err(w) => {
            return Ok(verdict(space, j, Status::EliminatedHeightCollision, w, "Δ_j^1 is not a chain"));
        }
    };
    let ce = ce_reduction_check(sys, &snake);
    if !ce.is_empty() {
        return Ok(verdict(
            space,
            j,
            Status::EliminatedCanonicalExtension,
            Witness::CanonicalExtension {
                indices: ce.into_iter().collect(),
            },
            "reduces to a canonical extension",
        ));
    }
    let rt = sys.rtype();
    if matches!(rt.family, Family::B | Family::BC) && j == rt.rank {
        return Ok(verdict(
            space,
            j,
            Status::EliminatedShapeTheorem,
            Witness::ShapeTheorem { snake: snake.roots },
            "excluded by the shape operator argument for B_r / BC_r",
        ));
    }
    if let Err(w) = multiplicity_check(space, sys, &snake) {
        let g2 = rt.family == Family::G2;
        let short_j = sys.length(&sys.simple(j)) < sys.length(&sys.highest_root());
        return Ok(match (g2, short_j) {
            (true, true) => verdict(
                space,
                j,
                Status::SurvivesWZeroG2,
                w,
                "w = 0 forced; singular orbit is not totally geodesic",
            ),
            (true, false) => verdict(
                space,
                j,
                Status::WZeroTotallyGeodesic,
                w,
                "w = 0 forced; singular orbit is totally geodesic",
            ),
            _ => verdict(
                space,
                j,
                Status::EliminatedMultiplicity,
                w,
                "w = 0 forced; totally geodesic if it exists",
            ),
        });
    }
    if let Some((a, b)) = difference_defect(sys, &snake) {
        return Ok(verdict(
            space,
            j,
            Status::EliminatedHeightCollision,
            Witness::BadDifference { a, b },
            "snake differences leave Σ_j",
        ));
    }
    Err(Error::UnknownConfiguration {
        space: space.name.clone(),
        j,
    })
}

/// Every `(space, j)` in the catalog, ordered by catalog position then `j`.
pub fn analyze_all(catalog: &Catalog, min_rank: usize) -> Result<Vec<NCVerdict>> {
    let units: Vec<(&SpaceEntry, usize)> = catalog
        .entries()
        .iter()
        .filter(|e| e.rank() >= min_rank)
        .flat_map(|e| (1..=e.rank()).map(move |j| (e, j)))
        .collect();
    units.par_iter().map(|(e, j)| analyze(e, *j)).collect()
}

/// Aligned text table, one row per verdict.
pub fn render_table(verdicts: &[NCVerdict]) -> String {
    let rows: Vec<[String; 4]> = verdicts
        .iter()
        .map(|v| [v.space.clone(), v.j.to_string(), v.status.to_string(), v.witness.to_string()])
        .collect();
    let header = ["space", "j", "status", "witness"].map(String::from);
    let mut widths = header.clone().map(|h| h.chars().count());
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |r: &[String; 4]| {
        let mut s = String::new();
        for (k, (c, w)) in r.iter().zip(widths).enumerate() {
            if k == 3 {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&" ".repeat(w - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = vec![line(&header)];
    out.extend(rows.iter().map(line));
    out.join("\n") + "\n"
}
