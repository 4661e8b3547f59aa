//! Split semisimple Lie algebras from integer Chevalley structure constants.
//!
//! The basis is `h_1..h_r` (simple coroots) followed by `e_λ` for every root,
//! positives first. Signs of `N_{λ,μ}` are fixed by declaring
//! `N_{α,β} = p + 1` on every extraspecial pair. With
//! [`Scalars::GaussianRational`] the same constants describe the complex
//! algebra regarded as a real Lie algebra; `θ` is then the split involution
//! composed with complex conjugation, so that `B_θ` is positive definite.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, fmt_q, q, Matrix, Q};
use crate::rootsys::{Root, RootSystem};

pub type C = Complex<Q>;

pub fn c_real(x: Q) -> C {
    C::new(x, Q::zero())
}

pub fn c_int(n: i64) -> C {
    c_real(q(n))
}

pub fn c_i() -> C {
    C::new(Q::zero(), Q::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scalars {
    Rational,
    GaussianRational,
}

/// Sparse vector over the Chevalley basis; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    coeffs: BTreeMap<usize, C>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: usize) -> Self {
        Self::term(idx, c_int(1))
    }

    pub fn term(idx: usize, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(idx, c);
        e
    }

    pub fn add_term(&mut self, idx: usize, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(idx).or_insert_with(C::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn coeff(&self, idx: usize) -> C {
        self.coeffs.get(&idx).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&c_int(-1)))
    }

    pub fn scale(&self, c: &C) -> Element {
        let mut out = Element::zero();
        for (k, v) in self.terms() {
            out.add_term(k, v * c);
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> Element {
        self.scale(&c_real(c.clone()))
    }

    /// Keeps only the coefficients whose basis index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> Element {
        Element {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| c.im.is_zero())
    }
}

fn fmt_c(c: &C) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => fmt_q(&c.re),
        (true, false) => format!("{}i", fmt_q(&c.im)),
        _ => format!("({}{}{}i)", fmt_q(&c.re), if c.im.is_negative() { "" } else { "+" }, fmt_q(&c.im)),
    }
}

/// One integer-coefficient term of a basis bracket.
type IntTerm = (usize, i64);

pub struct ChevalleyAlgebra {
    sys: RootSystem,
    scalars: Scalars,
    roots: Vec<Root>,
    root_pos: HashMap<Vec<i32>, usize>,
    /// `N[a][b]` over signed root positions; 0 when `a + b` is not a root.
    n: Vec<Vec<i64>>,
    /// Coroot `h_λ` in simple coroots, per signed root position.
    coroots: Vec<Vec<i64>>,
    /// `⟨λ, α_i∨⟩` per signed root position and simple index.
    weights: Vec<Vec<i64>>,
    killing: Vec<Vec<i64>>,
}

impl fmt::Debug for ChevalleyAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChevalleyAlgebra({}, {:?})", self.sys.rtype(), self.scalars)
    }
}

fn as_int(x: Rational64) -> i64 {
    assert!(x.is_integer(), "non-integral structure constant {x}");
    *x.numer()
}

impl ChevalleyAlgebra {
    pub fn new(sys: &RootSystem, scalars: Scalars) -> Result<Self> {
        if !sys.is_reduced() {
            return Err(Error::NonReducedSystem(sys.rtype().to_string()));
        }
        let r = sys.rank();
        let roots = sys.roots();
        let root_pos: HashMap<Vec<i32>, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, x)| (x.coeffs().to_vec(), k))
            .collect();
        let coroots = roots
            .iter()
            .map(|x| {
                let len = sys.length(x);
                (1..=r)
                    .map(|i| {
                        let s = sys.length(&sys.simple(i));
                        as_int(Rational64::from_integer(x.coefficient(i) as i64) * s / len)
                    })
                    .collect()
            })
            .collect();
        let weights = roots
            .iter()
            .map(|x| (1..=r).map(|i| sys.pairing(x, &sys.simple(i)) as i64).collect())
            .collect();
        let mut alg = Self {
            sys: sys.clone(),
            scalars,
            roots,
            root_pos,
            n: Vec::new(),
            coroots,
            weights,
            killing: Vec::new(),
        };
        alg.n = alg.structure_constants_table();
        alg.killing = alg.killing_table();
        Ok(alg)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn scalars(&self) -> Scalars {
        self.scalars
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    /// Complex dimension (equal to the real dimension in the split model).
    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    pub fn real_dim(&self) -> usize {
        match self.scalars {
            Scalars::Rational => self.dim(),
            Scalars::GaussianRational => 2 * self.dim(),
        }
    }

    /// Real dimension of a root space.
    pub fn root_multiplicity(&self) -> usize {
        match self.scalars {
            Scalars::Rational => 1,
            Scalars::GaussianRational => 2,
        }
    }

    pub fn h_index(&self, i: usize) -> usize {
        i - 1
    }

    pub fn root_index(&self, x: &Root) -> Option<usize> {
        self.root_pos.get(x.coeffs()).map(|p| self.rank() + p)
    }

    pub fn e_index(&self, x: &Root) -> usize {
        self.root_index(x)
            .unwrap_or_else(|| panic!("{x} is not a root"))
    }

    /// The root of a basis index, `None` for Cartan indices.
    pub fn root_of(&self, idx: usize) -> Option<&Root> {
        idx.checked_sub(self.rank()).map(|p| &self.roots[p])
    }

    pub fn is_cartan(&self, idx: usize) -> bool {
        idx < self.rank()
    }

    pub fn h(&self, i: usize) -> Element {
        Element::basis(self.h_index(i))
    }

    pub fn e(&self, x: &Root) -> Element {
        Element::basis(self.e_index(x))
    }

    pub fn basis_label(&self, idx: usize) -> String {
        match self.root_of(idx) {
            None => format!("h{}", idx + 1),
            Some(x) => format!("e[{x}]"),
        }
    }

    fn p_param(&self, a: &Root, b: &Root) -> i64 {
        let mut p = 0;
        let mut cur = b.sub(a);
        while self.sys.is_root(&cur) {
            p += 1;
            cur = cur.sub(a);
        }
        p
    }

    fn structure_constants_table(&self) -> Vec<Vec<i64>> {
        let sys = &self.sys;
        let pos = sys.positives();
        let mut table: HashMap<(Vec<i32>, Vec<i32>), i64> = HashMap::new();

        fn lookup(
            sys: &RootSystem,
            table: &HashMap<(Vec<i32>, Vec<i32>), i64>,
            a: &Root,
            b: &Root,
        ) -> i64 {
            let s = a.add(b);
            if !sys.is_root(&s) {
                return 0;
            }
            match (a.is_positive(), b.is_positive()) {
                (true, true) => table[&(a.coeffs().to_vec(), b.coeffs().to_vec())],
                (false, false) => -lookup(sys, table, &a.neg(), &b.neg()),
                _ => {
                    // N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b) with a+b+c = 0.
                    let c = s.neg();
                    let cc = sys.length(&c);
                    if b.is_positive() == c.is_positive() {
                        as_int(cc / sys.length(a) * Rational64::from_integer(lookup(sys, table, b, &c)))
                    } else {
                        as_int(cc / sys.length(b) * Rational64::from_integer(lookup(sys, table, &c, a)))
                    }
                }
            }
        }

        for xi in pos {
            let mut pairs: Vec<(Root, Root)> = pos
                .iter()
                .filter_map(|a| {
                    let b = xi.sub(a);
                    (b.is_positive() && sys.is_root(&b) && *a < b).then(|| (a.clone(), b))
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            pairs.sort();
            let (a1, b1) = pairs[0].clone();
            let n1 = self.p_param(&a1, &b1) + 1;
            table.insert((a1.coeffs().to_vec(), b1.coeffs().to_vec()), n1);
            table.insert((b1.coeffs().to_vec(), a1.coeffs().to_vec()), -n1);
            let xx = sys.length(xi);
            for (a, b) in pairs.iter().skip(1) {
                let mut acc = Rational64::zero();
                let (na1, nb1) = (a1.neg(), b1.neg());
                let d1 = b.sub(&a1);
                if sys.is_root(&d1) {
                    let t = lookup(sys, &table, b, &na1) * lookup(sys, &table, a, &nb1);
                    acc += Rational64::from_integer(t) / sys.length(&d1);
                }
                let d2 = a.sub(&a1);
                if sys.is_root(&d2) {
                    let t = lookup(sys, &table, &na1, a) * lookup(sys, &table, b, &nb1);
                    acc += Rational64::from_integer(t) / sys.length(&d2);
                }
                let v = as_int(xx / Rational64::from_integer(n1) * acc);
                table.insert((a.coeffs().to_vec(), b.coeffs().to_vec()), v);
                table.insert((b.coeffs().to_vec(), a.coeffs().to_vec()), -v);
            }
        }

        let m = self.roots.len();
        let mut n = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                n[i][j] = lookup(sys, &table, &self.roots[i], &self.roots[j]);
            }
        }
        n
    }

    /// `[b_a, b_b]` for basis indices, as integer terms.
    pub fn basis_bracket(&self, a: usize, b: usize) -> Vec<IntTerm> {
        let r = self.rank();
        match (a < r, b < r) {
            (true, true) => Vec::new(),
            (true, false) => {
                let w = self.weights[b - r][a];
                if w == 0 { Vec::new() } else { vec![(b, w)] }
            }
            (false, true) => {
                let w = self.weights[a - r][b];
                if w == 0 { Vec::new() } else { vec![(a, -w)] }
            }
            (false, false) => {
                let (x, y) = (&self.roots[a - r], &self.roots[b - r]);
                let s = x.add(y);
                if s.is_zero() {
                    self.coroots[a - r]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, c))
                        .collect()
                } else {
                    let v = self.n[a - r][b - r];
                    if v == 0 {
                        Vec::new()
                    } else {
                        vec![(self.e_index(&s), v)]
                    }
                }
            }
        }
    }

    /// `N_{λ,μ}`; 0 when `λ + μ` is not a root.
    pub fn n_const(&self, lam: &Root, mu: &Root) -> i64 {
        let (a, b) = (self.root_pos[lam.coeffs()], self.root_pos[mu.coeffs()]);
        self.n[a][b]
    }

    /// Every nonzero `N_{λ,μ}` as `(λ, μ, N)`.
    pub fn structure_constants(&self) -> Vec<(Root, Root, i64)> {
        let mut out = Vec::new();
        for (i, x) in self.roots.iter().enumerate() {
            for (j, y) in self.roots.iter().enumerate() {
                if self.n[i][j] != 0 {
                    out.push((x.clone(), y.clone(), self.n[i][j]));
                }
            }
        }
        out
    }

    fn int_bracket_vec(&self, x: &[IntTerm], y: &[IntTerm]) -> BTreeMap<usize, i64> {
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for &(a, ca) in x {
            for &(b, cb) in y {
                for (k, v) in self.basis_bracket(a, b) {
                    *out.entry(k).or_insert(0) += ca * cb * v;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn killing_table(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let ad: Vec<Vec<Vec<IntTerm>>> = (0..d)
            .map(|a| (0..d).map(|c| self.basis_bracket(a, c)).collect())
            .collect();
        let mut k = vec![vec![0i64; d]; d];
        for a in 0..d {
            for b in a..d {
                // trace(ad a ∘ ad b) = Σ_c coefficient of c in [a, [b, c]].
                let mut t = 0;
                for c in 0..d {
                    for &(m, v) in &ad[b][c] {
                        for &(n, w) in &ad[a][m] {
                            if n == c {
                                t += v * w;
                            }
                        }
                    }
                }
                k[a][b] = t;
                k[b][a] = t;
            }
        }
        k
    }

    /// Integer Killing form on basis elements (complex-bilinear).
    pub fn killing_basis(&self, a: usize, b: usize) -> i64 {
        self.killing[a][b]
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let cab = ca * cb;
                for (k, v) in self.basis_bracket(a, b) {
                    out.add_term(k, &cab * c_int(v));
                }
            }
        }
        out
    }

    /// `ad(x)^k (y)`.
    pub fn ad_pow(&self, x: &Element, k: usize, y: &Element) -> Element {
        (0..k).fold(y.clone(), |acc, _| self.bracket(x, &acc))
    }

    fn opposite(&self, idx: usize) -> usize {
        match self.root_of(idx) {
            None => idx,
            Some(x) => self.e_index(&x.neg()),
        }
    }

    pub fn theta(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (a, c) in x.terms() {
            let c = match self.scalars {
                Scalars::Rational => c.clone(),
                Scalars::GaussianRational => c.conj(),
            };
            out.add_term(self.opposite(a), -c);
        }
        out
    }

    /// Killing form of the algebra regarded as a real Lie algebra.
    pub fn killing(&self, x: &Element, y: &Element) -> Q {
        let mut s = C::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let k = self.killing[a][b];
                if k != 0 {
                    s += ca * cb * c_int(k);
                }
            }
        }
        match self.scalars {
            Scalars::Rational => s.re,
            Scalars::GaussianRational => s.re * q(2),
        }
    }

    /// `B_θ(x, y) = −B(x, θy)`.
    pub fn b_theta(&self, x: &Element, y: &Element) -> Q {
        -self.killing(x, &self.theta(y))
    }

    /// Real basis of the root space `g_λ`.
    pub fn root_space_basis(&self, x: &Root) -> Vec<Element> {
        let idx = self.e_index(x);
        match self.scalars {
            Scalars::Rational => vec![Element::basis(idx)],
            Scalars::GaussianRational => vec![Element::basis(idx), Element::term(idx, c_i())],
        }
    }

    /// Real basis of `a`: the simple coroots.
    pub fn cartan_basis(&self) -> Vec<Element> {
        (1..=self.rank()).map(|i| self.h(i)).collect()
    }

    /// Real basis of the whole algebra.
    pub fn real_basis(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for idx in 0..self.dim() {
            out.push(Element::basis(idx));
            if self.scalars == Scalars::GaussianRational {
                out.push(Element::term(idx, c_i()));
            }
        }
        out
    }

    /// Real coordinates against [`Self::real_basis`].
    pub fn real_coords(&self, x: &Element) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.real_dim());
        for idx in 0..self.dim() {
            let c = x.coeff(idx);
            out.push(c.re);
            if self.scalars == Scalars::GaussianRational {
                out.push(c.im);
            }
        }
        out
    }

    /// Gram matrix of `B_θ` restricted to `a`.
    pub fn cartan_gram(&self) -> Matrix {
        let hs = self.cartan_basis();
        hs.iter()
            .map(|x| hs.iter().map(|y| self.b_theta(x, y)).collect())
            .collect()
    }

    /// `H_α ∈ a` with `B_θ(H_α, H) = α(H)` for all `H ∈ a`.
    pub fn dual_vector(&self, x: &Root) -> Element {
        let r = self.rank();
        let rhs: Matrix = (1..=r)
            .map(|i| vec![q(self.sys.pairing(x, &self.sys.simple(i)) as i64)])
            .collect();
        let sol = linalg::solve(&self.cartan_gram(), &rhs).expect("B_θ is nondegenerate on a");
        let mut out = Element::zero();
        for i in 0..r {
            out.add_term(i, c_real(sol[i][0].clone()));
        }
        out
    }

    pub fn display(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.terms()
            .map(|(k, c)| format!("{}·{}", fmt_c(c), self.basis_label(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn in_root_space(&self, x: &Element, lam: &Root) -> bool {
        let idx = self.e_index(lam);
        x.terms().all(|(k, _)| k == idx)
    }

    /// Checks `[θX, X] = B_θ(X,X)·H_α` and that `[θX, Y]` lies in `k_0`
    /// (the imaginary Cartan directions) for orthogonal `X, Y ∈ g_α`.
    pub fn check_theta_bracket_identity(&self, alpha: &Root, x: &Element, y: &Element) -> Result<()> {
        if !self.in_root_space(x, alpha) || !self.in_root_space(y, alpha) {
            return Err(Error::InvalidInput(format!("inputs must lie in g_{alpha}")));
        }
        if !self.b_theta(x, y).is_zero() {
            return Err(Error::InvalidInput("inputs must be B_θ-orthogonal".into()));
        }
        let lhs = self.bracket(&self.theta(x), x);
        let rhs = self.dual_vector(alpha).scale_q(&self.b_theta(x, x));
        if lhs != rhs {
            return Err(Error::IdentityViolation(format!(
                "[θX, X] = {} but B_θ(X,X)·H_α = {}",
                self.display(&lhs),
                self.display(&rhs)
            )));
        }
        let z = self.bracket(&self.theta(x), y);
        let in_k0 = z.terms().all(|(k, c)| self.is_cartan(k) && c.re.is_zero());
        if !in_k0 {
            return Err(Error::IdentityViolation(format!(
                "[θX, Y] = {} is not in k_0",
                self.display(&z)
            )));
        }
        Ok(())
    }

    /// Verifies that `ad(X)^k : g_α → g_{α+kβ}` is injective for every
    /// real basis vector `X` of `g_β`. Requires `α` to start its β-string.
    pub fn check_string_injectivity(&self, alpha: &Root, beta: &Root, k: usize) -> Result<()> {
        let string = self.sys.root_string(alpha, beta)?;
        if string[0] != *alpha {
            return Err(Error::InvalidInput(format!("{alpha} does not start its {beta}-string")));
        }
        let m = string.len() - 1;
        if k == 0 || k > m {
            return Err(Error::InvalidInput(format!("k = {k} outside 1..={m}")));
        }
        let target = alpha.add(&beta.scale(k as i32));
        let tidx = self.e_index(&target);
        let ys = self.root_space_basis(alpha);
        for x in self.root_space_basis(beta) {
            let cols: Vec<Vec<Q>> = ys
                .iter()
                .map(|y| {
                    let z = self.ad_pow(&x, k, y);
                    let c = z.coeff(tidx);
                    assert!(z.terms().all(|(i, _)| i == tidx));
                    match self.scalars {
                        Scalars::Rational => vec![c.re],
                        Scalars::GaussianRational => vec![c.re, c.im],
                    }
                })
                .collect();
            let rk = linalg::rank(&linalg::transpose(&cols));
            if rk != ys.len() {
                return Err(Error::InjectivityViolation(format!(
                    "ad({})^{k} on g_{alpha} has rank {rk} < {}",
                    self.display(&x),
                    ys.len()
                )));
            }
        }
        Ok(())
    }

    /// Exhaustive Jacobi identity over unordered basis triples.
    /// Returns the number of triples checked.
    pub fn verify_jacobi(&self) -> Result<usize> {
        let d = self.dim();
        let mut count = 0;
        for a in 0..d {
            for b in a + 1..d {
                let ab = self.basis_bracket(a, b);
                for c in b + 1..d {
                    let bc = self.basis_bracket(b, c);
                    let ca = self.basis_bracket(c, a);
                    let mut tot = self.int_bracket_vec(&[(a, 1)], &bc);
                    for (k, v) in self.int_bracket_vec(&[(b, 1)], &ca) {
                        *tot.entry(k).or_insert(0) += v;
                    }
                    for (k, v) in self.int_bracket_vec(&[(c, 1)], &ab) {
                        *tot.entry(k).or_insert(0) += v;
                    }
                    if tot.values().any(|v| *v != 0) {
                        return Err(Error::IdentityViolation(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.basis_label(a),
                            self.basis_label(b),
                            self.basis_label(c)
                        )));
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// `|N_{λ,μ}| = p + 1` for all root pairs with `λ + μ` a root.
    pub fn verify_string_constants(&self) -> Result<usize> {
        let mut count = 0;
        for (i, x) in self.roots.iter().enumerate() {
            for (j, y) in self.roots.iter().enumerate() {
                let s = x.add(y);
                let n = self.n[i][j];
                if self.sys.is_root(&s) {
                    let p = self.p_param(x, y);
                    if n.abs() != p + 1 {
                        return Err(Error::IdentityViolation(format!(
                            "N[{x}, {y}] = {n}, expected ±{}",
                            p + 1
                        )));
                    }
                    count += 1;
                } else if n != 0 {
                    return Err(Error::IdentityViolation(format!("N[{x}, {y}] = {n} for a non-root sum")));
                }
            }
        }
        Ok(count)
    }

    /// `θ² = 1`, `θ` is an automorphism, and `B(θa, θb) = B(a, b)`.
    pub fn verify_theta(&self) -> Result<()> {
        let basis = self.real_basis();
        for x in &basis {
            if self.theta(&self.theta(x)) != *x {
                return Err(Error::IdentityViolation(format!("θ² ≠ 1 on {}", self.display(x))));
            }
        }
        for (i, x) in basis.iter().enumerate() {
            let tx = self.theta(x);
            for y in &basis[i..] {
                let ty = self.theta(y);
                if self.killing(&tx, &ty) != self.killing(x, y) {
                    return Err(Error::IdentityViolation(format!(
                        "B(θx, θy) ≠ B(x, y) for {}, {}",
                        self.display(x),
                        self.display(y)
                    )));
                }
                if self.bracket(&tx, &ty) != self.theta(&self.bracket(x, y)) {
                    return Err(Error::IdentityViolation(format!(
                        "θ is not an automorphism on {}, {}",
                        self.display(x),
                        self.display(y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Gram matrix of `B_θ` on [`Self::real_basis`].
    pub fn b_theta_gram(&self) -> Matrix {
        let basis = self.real_basis();
        basis
            .iter()
            .map(|x| basis.iter().map(|y| self.b_theta(x, y)).collect())
            .collect()
    }

    /// Gram matrix of the real Killing form on [`Self::real_basis`].
    pub fn killing_gram(&self) -> Matrix {
        let basis = self.real_basis();
        basis
            .iter()
            .map(|x| basis.iter().map(|y| self.killing(x, y)).collect())
            .collect()
    }
}
