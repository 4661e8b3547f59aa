//! Reduced and non-reduced root systems over a fixed simple system.
//!
//! Simple roots are labelled `1..=rank` in Bourbaki order (for `G2`, α2 is
//! the short root). Roots are integer coefficient vectors over the simple
//! roots; squared lengths are normalised so that long roots have length 2,
//! except in `BC` where `e_i`, `e_i ± e_j`, `2e_i` have lengths 1, 2, 4.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    BC,
}

impl Family {
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
            Family::BC => "BC",
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F4" => Family::F4,
            "G2" => Family::G2,
            "BC" => Family::BC,
            other => return Err(Error::ParseError(format!("unknown family {other:?}"))),
        })
    }
}

/// Family plus rank. Construct through [`RootSystemType::new`], which
/// validates the rank and rewrites `C2` as `B2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bad = || Error::InvalidRank {
            family: family.name().to_string(),
            rank,
        };
        if let Some(r) = family.fixed_rank() {
            return if rank == r { Ok(Self { family, rank }) } else { Err(bad()) };
        }
        let ok = match family {
            Family::A | Family::BC => rank >= 1,
            Family::B => rank >= 2,
            Family::C if rank == 2 => return Ok(Self { family: Family::B, rank: 2 }),
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            _ => unreachable!(),
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(bad())
        }
    }

    /// Parses `"F4"`, `"BC2"`, `"A3"`; a bare family name needs `rank`.
    pub fn parse(s: &str, rank: Option<usize>) -> Result<Self> {
        let s = s.trim();
        if let Ok(f) = s.parse::<Family>() {
            let r = f
                .fixed_rank()
                .or(rank)
                .ok_or_else(|| Error::ParseError(format!("family {s} needs a rank")))?;
            return Self::new(f, r);
        }
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::ParseError(format!("cannot parse root system type {s:?}")))?;
        let family: Family = s[..split].parse()?;
        let r: usize = s[split..]
            .parse()
            .map_err(|_| Error::ParseError(format!("bad rank in {s:?}")))?;
        if let Some(given) = rank {
            if given != r {
                return Err(Error::ParseError(format!("rank {given} conflicts with {s}")));
            }
        }
        Self::new(family, r)
    }

    pub fn is_reduced(&self) -> bool {
        self.family != Family::BC
    }

    pub fn positive_root_count(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
            Family::BC => r * r + r,
            Family::G2 => 6,
            Family::F4 => 24,
            Family::E6 => 36,
            Family::E7 => 63,
            Family::E8 => 120,
        }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.fixed_rank() {
            Some(_) => write!(f, "{}", self.family.name()),
            None => write!(f, "{}{}", self.family.name(), self.rank),
        }
    }
}

/// A root (or zero) as coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i32>", into = "Vec<i32>")]
pub struct Root {
    coeffs: Vec<i32>,
    height: i32,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        let height = coeffs.iter().sum();
        Self { coeffs, height }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i - 1] = 1;
        Self::new(c)
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// `n_i` for the 1-based simple index `i`.
    pub fn coefficient(&self, i: usize) -> i32 {
        self.coeffs[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Root) -> Root {
        Root::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Root {
        Root::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Root {
        self.scale(-1)
    }

    /// Rewrites the coefficient vector through a relabelling `perm`
    /// (`perm[i-1]` is the image of simple root `i`).
    pub fn permute(&self, perm: &[usize]) -> Root {
        let mut c = vec![0; self.coeffs.len()];
        for (i, &v) in self.coeffs.iter().enumerate() {
            c[perm[i] - 1] = v;
        }
        Root::new(c)
    }
}

impl From<Vec<i32>> for Root {
    fn from(v: Vec<i32>) -> Self {
        Root::new(v)
    }
}

impl From<Root> for Vec<i32> {
    fn from(r: Root) -> Self {
        r.coeffs
    }
}

/// Height first; within a height, α1 comes before α2.
impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height
            .cmp(&other.height)
            .then_with(|| other.coeffs.cmp(&self.coeffs))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}α{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}α{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinEdge {
    pub a: usize,
    pub b: usize,
    /// Number of bonds, `cartan[a][b] * cartan[b][a]`.
    pub bonds: i32,
    /// Endpoint carrying the shorter root when the bond is multiple.
    pub short_end: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicGrading {
    pub phi: BTreeSet<usize>,
    /// Level ν ↦ positive roots with `Σ_{j∉Φ} n_j = ν`.
    pub levels: BTreeMap<u32, Vec<Root>>,
    /// All roots (both signs) of level 0.
    pub sigma_phi: Vec<Root>,
}

impl ParabolicGrading {
    pub fn level(&self, nu: u32) -> &[Root] {
        self.levels.get(&nu).map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    rtype: RootSystemType,
    positives: Vec<Root>,
    cartan: Vec<Vec<i32>>,
    gram: Vec<Vec<Rational64>>,
    lengths: Vec<Rational64>,
    index: HashMap<Vec<i32>, usize>,
}

fn r64(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Inner products of simple roots, one row per simple root.
fn simple_gram(t: RootSystemType) -> Vec<Vec<Rational64>> {
    let r = t.rank;
    let mut len = vec![r64(2, 1); r];
    let mut edges: Vec<(usize, usize, Rational64)> = Vec::new();
    let path = |edges: &mut Vec<(usize, usize, Rational64)>, upto: usize, w: Rational64| {
        for i in 1..upto {
            edges.push((i, i + 1, w));
        }
    };
    match t.family {
        Family::A => path(&mut edges, r, r64(-1, 1)),
        Family::B | Family::BC => {
            len[r - 1] = r64(1, 1);
            path(&mut edges, r, r64(-1, 1));
        }
        Family::C => {
            for l in len.iter_mut().take(r - 1) {
                *l = r64(1, 1);
            }
            path(&mut edges, r - 1, r64(-1, 2));
            edges.push((r - 1, r, r64(-1, 1)));
        }
        Family::D => {
            path(&mut edges, r - 1, r64(-1, 1));
            edges.push((r - 2, r, r64(-1, 1)));
        }
        Family::E6 | Family::E7 | Family::E8 => {
            edges.push((1, 3, r64(-1, 1)));
            edges.push((2, 4, r64(-1, 1)));
            for i in 3..r {
                edges.push((i, i + 1, r64(-1, 1)));
            }
        }
        Family::F4 => {
            len[2] = r64(1, 1);
            len[3] = r64(1, 1);
            edges.push((1, 2, r64(-1, 1)));
            edges.push((2, 3, r64(-1, 1)));
            edges.push((3, 4, r64(-1, 2)));
        }
        Family::G2 => {
            len[1] = r64(2, 3);
            edges.push((1, 2, r64(-1, 1)));
        }
    }
    let mut g = vec![vec![Rational64::zero(); r]; r];
    for i in 0..r {
        g[i][i] = len[i];
    }
    for (a, b, w) in edges {
        g[a - 1][b - 1] = w;
        g[b - 1][a - 1] = w;
    }
    g
}

impl RootSystem {
    pub fn new(rtype: RootSystemType) -> Self {
        let r = rtype.rank;
        let gram = simple_gram(rtype);
        let cartan: Vec<Vec<i32>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v = gram[i][j] * r64(2, 1) / gram[j][j];
                        assert!(v.is_integer());
                        *v.numer() as i32
                    })
                    .collect()
            })
            .collect();

        let mut positives: Vec<Root> = (1..=r).map(|i| Root::simple(r, i)).collect();
        let mut known: BTreeSet<Vec<i32>> = positives.iter().map(|x| x.coeffs.clone()).collect();
        let mut frontier = positives.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for lam in &frontier {
                for i in 0..r {
                    if lam.height == 1 && lam.coeffs[i] == 1 {
                        continue;
                    }
                    let mut p = 0;
                    let mut probe = lam.coeffs.clone();
                    loop {
                        probe[i] -= 1;
                        if known.contains(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i32 = (0..r).map(|k| lam.coeffs[k] * cartan[k][i]).sum();
                    if p - pairing > 0 {
                        let mut up = lam.coeffs.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(Root::new(up));
                        }
                    }
                }
            }
            positives.extend(next.iter().cloned());
            frontier = next;
        }

        let mut sys = Self {
            rtype,
            positives,
            cartan,
            gram,
            lengths: Vec::new(),
            index: HashMap::new(),
        };
        if rtype.family == Family::BC {
            let doubled: Vec<Root> = sys
                .positives
                .iter()
                .filter(|x| sys.inner(x, x) == r64(1, 1))
                .map(|x| x.scale(2))
                .collect();
            sys.positives.extend(doubled);
        }
        sys.positives.sort();
        sys.lengths = sys.positives.iter().map(|x| sys.inner(x, x)).collect();
        sys.index = sys
            .positives
            .iter()
            .enumerate()
            .map(|(k, x)| (x.coeffs.clone(), k))
            .collect();
        debug_assert_eq!(sys.positives.len(), rtype.positive_root_count());
        sys
    }

    pub fn build(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::new(RootSystemType::new(family, rank)?))
    }

    pub fn rtype(&self) -> RootSystemType {
        self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rtype.rank
    }

    pub fn is_reduced(&self) -> bool {
        self.rtype.is_reduced()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positives(&self) -> &[Root] {
        &self.positives
    }

    /// Positive roots followed by their negatives, in the same order.
    pub fn roots(&self) -> Vec<Root> {
        self.positives
            .iter()
            .cloned()
            .chain(self.positives.iter().map(Root::neg))
            .collect()
    }

    pub fn simple(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    pub fn simple_indices(&self) -> BTreeSet<usize> {
        (1..=self.rank()).collect()
    }

    /// Position of a positive root in [`Self::positives`].
    pub fn positive_index(&self, x: &Root) -> Option<usize> {
        self.index.get(&x.coeffs).copied()
    }

    pub fn is_root(&self, x: &Root) -> bool {
        if x.coeffs.len() != self.rank() || x.is_zero() {
            return false;
        }
        if x.is_positive() {
            self.index.contains_key(&x.coeffs)
        } else {
            self.index.contains_key(&x.neg().coeffs)
        }
    }

    /// Membership in `Σ ∪ {0}`.
    pub fn is_root_or_zero(&self, x: &Root) -> bool {
        x.is_zero() || self.is_root(x)
    }

    pub fn highest_root(&self) -> Root {
        // Longest root of maximal height; in BC that is 2e_1.
        self.positives.last().cloned().expect("nonempty")
    }

    pub fn inner(&self, a: &Root, b: &Root) -> Rational64 {
        let r = self.rank();
        let mut s = Rational64::zero();
        for i in 0..r {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..r {
                if b.coeffs[j] != 0 {
                    s += self.gram[i][j] * r64((a.coeffs[i] * b.coeffs[j]) as i64, 1);
                }
            }
        }
        s
    }

    pub fn length(&self, x: &Root) -> Rational64 {
        self.inner(x, x)
    }

    /// Squared lengths of the positive roots, aligned with [`Self::positives`].
    pub fn lengths(&self) -> &[Rational64] {
        &self.lengths
    }

    /// Distinct squared lengths occurring in Σ, ascending.
    pub fn length_classes(&self) -> Vec<Rational64> {
        let set: BTreeSet<Rational64> = self.lengths.iter().copied().collect();
        set.into_iter().collect()
    }

    /// `⟨λ, β∨⟩ = 2(λ,β)/(β,β)`.
    pub fn pairing(&self, lam: &Root, beta: &Root) -> i32 {
        let v = self.inner(lam, beta) * r64(2, 1) / self.inner(beta, beta);
        assert!(v.is_integer(), "non-integral pairing {lam} / {beta}");
        *v.numer() as i32
    }

    pub fn coefficient(&self, lam: &Root, i: usize) -> i32 {
        lam.coefficient(i)
    }

    fn check_root(&self, x: &Root) -> Result<()> {
        if self.is_root(x) {
            Ok(())
        } else {
            Err(Error::NotARoot(x.to_string()))
        }
    }

    /// The β-string through λ, ordered by the multiple of β added.
    pub fn root_string(&self, lam: &Root, beta: &Root) -> Result<Vec<Root>> {
        self.check_root(lam)?;
        self.check_root(beta)?;
        let proportional = [1, -1, 2, -2]
            .iter()
            .any(|&k| *lam == beta.scale(k) || *beta == lam.scale(k));
        if proportional {
            return Err(Error::ProportionalRoots(lam.to_string(), beta.to_string()));
        }
        let mut lo = lam.clone();
        loop {
            let next = lo.sub(beta);
            if self.is_root_or_zero(&next) {
                lo = next;
            } else {
                break;
            }
        }
        let mut out = vec![lo.clone()];
        let mut cur = lo;
        loop {
            let next = cur.add(beta);
            if self.is_root_or_zero(&next) {
                out.push(next.clone());
                cur = next;
            } else {
                break;
            }
        }
        Ok(out)
    }

    /// `{λ + Σ_{i∈Φ} n_i α_i} ∩ (Σ ∪ {0})`, sorted.
    pub fn phi_string(&self, lam: &Root, phi: &BTreeSet<usize>) -> Vec<Root> {
        let fixed: Vec<usize> = (1..=self.rank()).filter(|i| !phi.contains(i)).collect();
        let matches = |x: &Root| fixed.iter().all(|&i| x.coefficient(i) == lam.coefficient(i));
        let mut out: Vec<Root> = self.roots().into_iter().filter(|x| matches(x)).collect();
        let zero = Root::zero(self.rank());
        if matches(&zero) {
            out.push(zero);
        }
        out.sort();
        out
    }

    /// Level of a root with respect to `Φ`: `Σ_{j∉Φ} n_j`.
    pub fn level(&self, lam: &Root, phi: &BTreeSet<usize>) -> i32 {
        (1..=self.rank())
            .filter(|i| !phi.contains(i))
            .map(|i| lam.coefficient(i))
            .sum()
    }

    pub fn grading(&self, phi: &BTreeSet<usize>) -> ParabolicGrading {
        let mut levels: BTreeMap<u32, Vec<Root>> = BTreeMap::new();
        for x in &self.positives {
            let nu = self.level(x, phi);
            if nu > 0 {
                levels.entry(nu as u32).or_default().push(x.clone());
            }
        }
        let sigma_phi = self
            .roots()
            .into_iter()
            .filter(|x| self.level(x, phi) == 0)
            .collect();
        ParabolicGrading {
            phi: phi.clone(),
            levels,
            sigma_phi,
        }
    }

    /// `Λ ∖ {j}`.
    pub fn complement(&self, j: usize) -> BTreeSet<usize> {
        (1..=self.rank()).filter(|&i| i != j).collect()
    }

    /// `Δ_j^1`: the level-one roots for `Φ = Λ ∖ {j}`.
    pub fn delta_j1(&self, j: usize) -> Vec<Root> {
        self.grading(&self.complement(j)).level(1).to_vec()
    }

    pub fn dynkin_neighbors(&self, i: usize) -> BTreeSet<usize> {
        (1..=self.rank())
            .filter(|&k| k != i && self.cartan[i - 1][k - 1] != 0)
            .collect()
    }

    pub fn edges(&self) -> Vec<DynkinEdge> {
        let r = self.rank();
        let mut out = Vec::new();
        for a in 1..=r {
            for b in a + 1..=r {
                let (x, y) = (self.cartan[a - 1][b - 1], self.cartan[b - 1][a - 1]);
                if x == 0 {
                    continue;
                }
                let short_end = match x.cmp(&y) {
                    // |⟨α_a, α_b∨⟩| > 1 means α_a is the longer one.
                    Ordering::Less => Some(b),
                    Ordering::Greater => Some(a),
                    Ordering::Equal => None,
                };
                out.push(DynkinEdge {
                    a,
                    b,
                    bonds: x * y,
                    short_end,
                });
            }
        }
        out
    }

    /// Connected components of the subdiagram on `nodes`, each sorted.
    pub fn components(&self, nodes: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in nodes {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.dynkin_neighbors(v) {
                    if nodes.contains(&w) && seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected_subset(&self, nodes: &BTreeSet<usize>) -> bool {
        !nodes.is_empty() && self.components(nodes).len() == 1
    }

    /// Identifies the type of a connected subdiagram. Returns the type and
    /// the ambient simple index of each Bourbaki-labelled node.
    pub fn identify_subdiagram(&self, nodes: &[usize]) -> Result<(RootSystemType, Vec<usize>)> {
        let set: BTreeSet<usize> = nodes.iter().copied().collect();
        if !self.is_connected_subset(&set) {
            return Err(Error::InvalidInput(format!("subdiagram {nodes:?} is not connected")));
        }
        let n = set.len();
        let r = self.rank();
        let nbrs = |v: usize| -> Vec<usize> {
            self.dynkin_neighbors(v)
                .into_iter()
                .filter(|w| set.contains(w))
                .collect()
        };
        let bonds = |a: usize, b: usize| self.cartan[a - 1][b - 1] * self.cartan[b - 1][a - 1];
        let longer = |a: usize, b: usize| self.gram[a - 1][a - 1] > self.gram[b - 1][b - 1];
        let nonreduced_end = self.rtype.family == Family::BC && set.contains(&r);
        let t = |f: Family, k: usize| RootSystemType::new(f, k);

        if n == 1 {
            let f = if nonreduced_end { Family::BC } else { Family::A };
            return Ok((t(f, 1)?, vec![nodes[0]]));
        }
        let walk = |start: usize| -> Vec<usize> {
            let mut order = vec![start];
            let mut prev = 0;
            let mut cur = start;
            loop {
                let next: Vec<usize> = nbrs(cur).into_iter().filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [w] => {
                        prev = cur;
                        cur = *w;
                        order.push(cur);
                    }
                    _ => return order,
                }
            }
        };
        let ends: Vec<usize> = set.iter().copied().filter(|&v| nbrs(v).len() == 1).collect();
        let branch: Vec<usize> = set.iter().copied().filter(|&v| nbrs(v).len() == 3).collect();

        if branch.is_empty() {
            let path = walk(ends[0]);
            let multi: Vec<usize> = (0..n - 1).filter(|&k| bonds(path[k], path[k + 1]) > 1).collect();
            match multi.as_slice() {
                [] => return Ok((t(Family::A, n)?, path)),
                [k] => {
                    let b = bonds(path[*k], path[k + 1]);
                    let mut p = path.clone();
                    if b == 3 {
                        if !longer(p[0], p[1]) {
                            p.reverse();
                        }
                        return Ok((t(Family::G2, 2)?, p));
                    }
                    if n == 4 && *k == 1 {
                        if !longer(p[0], p[3]) {
                            p.reverse();
                        }
                        return Ok((t(Family::F4, 4)?, p));
                    }
                    if *k == 0 {
                        p.reverse();
                    }
                    let last = p[n - 1];
                    let prev = p[n - 2];
                    let fam = if longer(prev, last) {
                        if nonreduced_end {
                            Family::BC
                        } else {
                            Family::B
                        }
                    } else if n == 2 {
                        p.reverse();
                        if nonreduced_end {
                            Family::BC
                        } else {
                            Family::B
                        }
                    } else {
                        Family::C
                    };
                    return Ok((t(fam, n)?, p));
                }
                _ => {}
            }
        } else if branch.len() == 1 {
            let b = branch[0];
            let mut arms: Vec<Vec<usize>> = nbrs(b)
                .into_iter()
                .map(|first| {
                    let mut arm = vec![first];
                    let mut prev = b;
                    let mut cur = first;
                    loop {
                        let next: Vec<usize> = nbrs(cur).into_iter().filter(|&w| w != prev).collect();
                        match next.as_slice() {
                            [w] => {
                                prev = cur;
                                cur = *w;
                                arm.push(cur);
                            }
                            _ => break,
                        }
                    }
                    arm
                })
                .collect();
            arms.sort_by_key(|a| (a.len(), *a.last().unwrap()));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            let outward = |arm: &Vec<usize>| -> Vec<usize> { arm.iter().rev().copied().collect() };
            match lens.as_slice() {
                [1, 1, k] => {
                    if *k == 1 {
                        arms.sort_by_key(|a| a[0]);
                        arms.rotate_left(1);
                    }
                    // D_n: long arm inward, then the two short arms.
                    let mut order = outward(&arms[2]);
                    order.push(b);
                    order.push(arms[0][0]);
                    order.push(arms[1][0]);
                    return Ok((t(Family::D, n)?, order));
                }
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => {
                    let fam = match lens[2] {
                        2 => Family::E6,
                        3 => Family::E7,
                        _ => Family::E8,
                    };
                    let mut order = vec![arms[1][1], arms[0][0], arms[1][0], b];
                    order.extend(arms[2].iter().copied());
                    return Ok((t(fam, n)?, order));
                }
                _ => {}
            }
        }
        Err(Error::InvalidInput(format!("unrecognised subdiagram {nodes:?}")))
    }
}

/// Permutations `σ` (as `σ[i-1] = σ(i)`) with `cartan[σi][σk] = cartan[i][k]`
/// and `weights[σi] = weights[i]`.
pub fn diagram_automorphisms<W: PartialEq>(cartan: &[Vec<i32>], weights: &[W]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut out = Vec::new();
    let mut img: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go<W: PartialEq>(
        cartan: &[Vec<i32>],
        weights: &[W],
        img: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = img.len();
        let n = cartan.len();
        if i == n {
            out.push(img.iter().map(|x| x + 1).collect());
            return;
        }
        for c in 0..n {
            if used[c] || weights[c] != weights[i] || cartan[c][c] != cartan[i][i] {
                continue;
            }
            let ok = (0..i).all(|k| {
                cartan[img[k]][c] == cartan[k][i] && cartan[c][img[k]] == cartan[i][k]
            });
            if ok {
                used[c] = true;
                img.push(c);
                go(cartan, weights, img, used, out);
                img.pop();
                used[c] = false;
            }
        }
    }
    go(cartan, weights, &mut img, &mut used, &mut out);
    out
}

impl RootSystem {
    /// Diagram automorphisms preserving the given per-simple-root weights
    /// (typically multiplicities of `α_i` and `2α_i`).
    pub fn weighted_diagram_automorphisms<W: PartialEq>(&self, weights: &[W]) -> Vec<Vec<usize>> {
        diagram_automorphisms(&self.cartan, weights)
    }
}

/// Renders a squared length as a catalog class key (`"2"`, `"2/3"`).
pub fn length_key(x: Rational64) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
