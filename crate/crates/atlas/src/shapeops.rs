//! Extrinsic geometry of orbits `H·o` in the solvable model `AN`, computed
//! exactly from a [`ChevalleyAlgebra`].

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chevalley::{ChevalleyAlgebra, Element, Scalars};
use crate::error::{Error, Result};
use crate::linalg::{self, fmt_q, q, qr, Matrix, Q};
use crate::nilcon;
use crate::rootsys::{Root, RootSystem, RootSystemType};

pub struct SolvableModel {
    alg: ChevalleyAlgebra,
}

impl SolvableModel {
    pub fn new(alg: ChevalleyAlgebra) -> Self {
        Self { alg }
    }

    pub fn build(rtype: RootSystemType, scalars: Scalars) -> Result<Self> {
        Ok(Self::new(ChevalleyAlgebra::new(&RootSystem::new(rtype), scalars)?))
    }

    /// `"G2split"`, `"A2split"`, `"G2complex"` and similar.
    pub fn named(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let (t, sc) = if let Some(t) = lower.strip_suffix("split") {
            (t, Scalars::Rational)
        } else if let Some(t) = lower.strip_suffix("complex") {
            (t, Scalars::GaussianRational)
        } else {
            return Err(Error::UnknownSpace(name.to_string()));
        };
        Self::build(RootSystemType::parse(t, None)?, sc)
    }

    pub fn algebra(&self) -> &ChevalleyAlgebra {
        &self.alg
    }

    pub fn root_system(&self) -> &RootSystem {
        self.alg.root_system()
    }

    pub fn in_an(&self, x: &Element) -> bool {
        x.terms().all(|(k, c)| match self.alg.root_of(k) {
            None => c.im.is_zero(),
            Some(r) => r.is_positive(),
        })
    }

    /// Real basis of `a ⊕ n`.
    pub fn iwasawa_basis(&self) -> Vec<Element> {
        let mut out = self.alg.cartan_basis();
        for x in self.root_system().positives() {
            out.extend(self.alg.root_space_basis(x));
        }
        out
    }

    fn split_an(&self, x: &Element) -> (Element, Element) {
        let a = x.filter(|k| self.alg.is_cartan(k));
        let n = x.filter(|k| !self.alg.is_cartan(k));
        (a, n)
    }

    /// `⟨x_a, y_a⟩_{B_θ} + ½⟨x_n, y_n⟩_{B_θ}`.
    pub fn an_inner(&self, x: &Element, y: &Element) -> Result<Q> {
        for v in [x, y] {
            if !self.in_an(v) {
                return Err(Error::InvalidInput(format!("{} is not in a ⊕ n", self.alg.display(v))));
            }
        }
        Ok(self.an_inner_unchecked(x, y))
    }

    fn an_inner_unchecked(&self, x: &Element, y: &Element) -> Q {
        let (xa, xn) = self.split_an(x);
        let (ya, yn) = self.split_an(y);
        self.alg.b_theta(&xa, &ya) + self.alg.b_theta(&xn, &yn) * qr(1, 2)
    }

    pub fn gram(&self, basis: &[Element]) -> Matrix {
        basis
            .iter()
            .map(|x| basis.iter().map(|y| self.an_inner_unchecked(x, y)).collect())
            .collect()
    }

    /// `⟨∇_X Y, Z⟩_AN = ¼⟨[X,Y] + [θX,Y] − [X,θY], Z⟩_{B_θ}`.
    pub fn levi_civita(&self, x: &Element, y: &Element, z: &Element) -> Q {
        let g = &self.alg;
        let t = g
            .bracket(x, y)
            .add(&g.bracket(&g.theta(x), y))
            .sub(&g.bracket(x, &g.theta(y)));
        g.b_theta(&t, z) * qr(1, 4)
    }
}

/// `h = a ⊕ ⊕_{α∈Σ_j⁺} g_α ⊕ w ⊕ ⊕_{ν≥2} n_j^ν`, with `w` a union of
/// level-one root spaces, and its normal space `v` inside `a ⊕ n`.
pub struct OrbitSubalgebra<'m> {
    model: &'m SolvableModel,
    pub j: Option<usize>,
    pub h_roots: Vec<Root>,
    pub v_roots: Vec<Root>,
    pub h_basis: Vec<Element>,
    pub v_basis: Vec<Element>,
    gram: Matrix,
}

impl<'m> OrbitSubalgebra<'m> {
    pub fn new(model: &'m SolvableModel, j: usize, w: &BTreeSet<Root>) -> Result<Self> {
        let sys = model.root_system();
        if j == 0 || j > sys.rank() {
            return Err(Error::BadIndex(j));
        }
        let level = |x: &Root| x.coefficient(j);
        if let Some(x) = w.iter().find(|x| !sys.is_root(x) || !x.is_positive() || level(x) != 1) {
            return Err(Error::InvalidInput(format!("{x} is not a level-one root for j = {j}")));
        }
        let h_roots = sys
            .positives()
            .iter()
            .filter(|x| level(x) != 1 || w.contains(x))
            .cloned()
            .collect();
        let mut orbit = Self::from_roots(model, h_roots)?;
        orbit.j = Some(j);
        Ok(orbit)
    }

    /// `w = 0`.
    pub fn w_zero(model: &'m SolvableModel, j: usize) -> Result<Self> {
        Self::new(model, j, &BTreeSet::new())
    }

    /// `h = a ⊕ ⊕_{λ∈roots} g_λ`, `v` the remaining positive root spaces.
    pub fn from_roots(model: &'m SolvableModel, h_roots: Vec<Root>) -> Result<Self> {
        let alg = &model.alg;
        let sys = model.root_system();
        let hset: BTreeSet<&Root> = h_roots.iter().collect();
        let v_roots: Vec<Root> = sys.positives().iter().filter(|x| !hset.contains(x)).cloned().collect();
        let mut h_basis = alg.cartan_basis();
        for x in &h_roots {
            h_basis.extend(alg.root_space_basis(x));
        }
        let v_basis: Vec<Element> = v_roots.iter().flat_map(|x| alg.root_space_basis(x)).collect();
        let allowed: BTreeSet<usize> = h_roots.iter().map(|x| alg.e_index(x)).collect();
        for (k, x) in h_basis.iter().enumerate() {
            for y in &h_basis[k + 1..] {
                let z = alg.bracket(x, y);
                let inside = z.terms().all(|(i, c)| {
                    if alg.is_cartan(i) {
                        c.im.is_zero()
                    } else {
                        allowed.contains(&i)
                    }
                });
                if !inside {
                    return Err(Error::NotSubalgebra(format!(
                        "[{}, {}] = {}",
                        alg.display(x),
                        alg.display(y),
                        alg.display(&z)
                    )));
                }
            }
        }
        let gram = model.gram(&h_basis);
        Ok(Self {
            model,
            j: None,
            h_roots,
            v_roots,
            h_basis,
            v_basis,
            gram,
        })
    }

    pub fn model(&self) -> &SolvableModel {
        self.model
    }

    pub fn h_labels(&self) -> Vec<String> {
        self.h_basis.iter().map(|x| self.model.alg.display(x)).collect()
    }

    pub fn in_v(&self, xi: &Element) -> bool {
        let alg = &self.model.alg;
        let allowed: BTreeSet<usize> = self.v_roots.iter().map(|x| alg.e_index(x)).collect();
        xi.terms().all(|(k, _)| allowed.contains(&k))
    }

    /// `B_θ`-orthogonal projection to `h`, in coordinates of `h_basis`.
    pub fn top_coords(&self, z: &Element) -> Vec<Q> {
        self.h_basis
            .iter()
            .map(|b| {
                let (idx, c) = b.terms().next().expect("basis vectors are nonzero");
                let zc = z.coeff(idx);
                if c.im.is_zero() {
                    zc.re
                } else {
                    zc.im
                }
            })
            .collect()
    }

    fn element_from_coords(&self, coords: &[Q]) -> Element {
        coords
            .iter()
            .zip(&self.h_basis)
            .fold(Element::zero(), |acc, (c, b)| acc.add(&b.scale_q(c)))
    }

    /// `R[k][l] = ⟨A_ξ b_l, b_k⟩_AN = ¼⟨[ξ,b_l] − [θξ,b_l], b_k⟩_{B_θ}`.
    fn pairing_matrix(&self, xi: &Element) -> Matrix {
        let alg = &self.model.alg;
        let txi = alg.theta(xi);
        let images: Vec<Element> = self
            .h_basis
            .iter()
            .map(|b| alg.bracket(xi, b).sub(&alg.bracket(&txi, b)))
            .collect();
        self.h_basis
            .iter()
            .map(|bk| images.iter().map(|im| alg.b_theta(im, bk) * qr(1, 4)).collect())
            .collect()
    }

    /// Shape operator in `h_basis` coordinates (column `l` is `A_ξ b_l`),
    /// cross-checked against `−(∇_X ξ)^⊤` from the Koszul formula.
    pub fn shape_operator(&self, xi: &Element) -> Result<ShapeOperatorMatrix> {
        if !self.in_v(xi) {
            return Err(Error::InvalidInput(format!(
                "{} is not in the normal space",
                self.model.alg.display(xi)
            )));
        }
        let r = self.pairing_matrix(xi);
        for (k, bk) in self.h_basis.iter().enumerate() {
            for (l, bl) in self.h_basis.iter().enumerate() {
                let koszul = -self.model.levi_civita(bl, xi, bk);
                if koszul != r[k][l] {
                    return Err(Error::FormulaMismatch(format!(
                        "⟨A_ξ {}, {}⟩: lemma {} vs Koszul {}",
                        self.model.alg.display(bl),
                        self.model.alg.display(bk),
                        fmt_q(&r[k][l]),
                        fmt_q(&koszul)
                    )));
                }
            }
        }
        let matrix = linalg::solve(&self.gram, &r).expect("AN metric is positive definite");
        Ok(ShapeOperatorMatrix {
            xi: xi.clone(),
            pairing: r,
            matrix,
        })
    }

    /// `A_ξ X` as an element of `h`.
    pub fn apply(&self, a: &ShapeOperatorMatrix, x: &Element) -> Element {
        let coords = self.top_coords(x);
        let n = coords.len();
        let out: Vec<Q> = (0..n)
            .map(|k| (0..n).map(|l| &a.matrix[k][l] * &coords[l]).sum())
            .collect();
        self.element_from_coords(&out)
    }

    pub fn is_self_adjoint(&self, a: &ShapeOperatorMatrix) -> bool {
        let n = a.pairing.len();
        (0..n).all(|k| (0..k).all(|l| a.pairing[k][l] == a.pairing[l][k]))
    }

    pub fn is_totally_geodesic(&self) -> Result<bool> {
        for xi in &self.v_basis {
            if !linalg::is_zero(&self.shape_operator(xi)?.matrix) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Verifies (a) `A_ξ H = 0` on `a`; (b) `A_ξ X = ½([ξ,X] − [θξ,X])^⊤`;
    /// (c) `A_ξ X = ½[ξ,X]^⊤` for `X ∈ g_α`, `α ∈ Σ_j⁺`; (d) `A_ξ X = 0` for
    /// those `X` when `ξ` lies over the top snake root.
    pub fn check_shape_identities(&self) -> Result<IdentityReport> {
        let j = self
            .j
            .ok_or_else(|| Error::InvalidInput("identities need an orbit built from j".into()))?;
        let alg = &self.model.alg;
        let sys = self.model.root_system();
        let snake = nilcon::snake_chain(sys, j)
            .map_err(|w| Error::InvalidInput(format!("no snake for j = {j}: {w}")))?;
        let top = snake.top().clone();
        let r = sys.rank();
        let mut report = IdentityReport::default();
        let fail = |id: &str, xi: &Element, x: &Element| {
            Error::IdentityViolation(format!("({id}) at ξ = {}, X = {}", alg.display(xi), alg.display(x)))
        };
        for (vr, xi) in self.v_roots.iter().flat_map(|x| alg.root_space_basis(x).into_iter().map(move |e| (x.clone(), e))) {
            let a = self.shape_operator(&xi)?;
            if !self.is_self_adjoint(&a) {
                return Err(Error::IdentityViolation(format!("A_ξ not self-adjoint at ξ = {}", alg.display(&xi))));
            }
            let txi = alg.theta(&xi);
            for (l, x) in self.h_basis.iter().enumerate() {
                let col: Vec<Q> = a.matrix.iter().map(|row| row[l].clone()).collect();
                if l < r {
                    if col.iter().any(|c| !c.is_zero()) {
                        return Err(fail("a", &xi, x));
                    }
                    report.a += 1;
                }
                let z = alg.bracket(&xi, x).sub(&alg.bracket(&txi, x));
                let expected: Vec<Q> = self.top_coords(&z).into_iter().map(|c| c * qr(1, 2)).collect();
                if col != expected {
                    return Err(fail("b", &xi, x));
                }
                report.b += 1;
                let level0 = x
                    .terms()
                    .next()
                    .and_then(|(k, _)| alg.root_of(k))
                    .is_some_and(|x| x.coefficient(j) == 0);
                if level0 {
                    let half: Vec<Q> = self
                        .top_coords(&alg.bracket(&xi, x))
                        .into_iter()
                        .map(|c| c * qr(1, 2))
                        .collect();
                    if col != half {
                        return Err(fail("c", &xi, x));
                    }
                    report.c += 1;
                    if vr == top {
                        if col.iter().any(|c| !c.is_zero()) {
                            return Err(fail("d", &xi, x));
                        }
                        report.d += 1;
                    }
                }
            }
        }
        Ok(report)
    }

    /// Characteristic polynomials of `A_ξ` must agree across samples of equal
    /// AN norm.
    pub fn cpc_charpoly_constancy(&self, samples: &[Element]) -> Result<Vec<Vec<Q>>> {
        let mut norm: Option<Q> = None;
        let mut polys: Vec<Vec<Q>> = Vec::new();
        for xi in samples {
            let n = self.model.an_inner_unchecked(xi, xi);
            match &norm {
                None => norm = Some(n),
                Some(n0) if *n0 != n => {
                    return Err(Error::InvalidInput(format!(
                        "samples have different norms {} and {}",
                        fmt_q(n0),
                        fmt_q(&n)
                    )))
                }
                _ => {}
            }
            let p = linalg::charpoly(&self.shape_operator(xi)?.matrix);
            if let Some(first) = polys.first() {
                if *first != p {
                    return Err(Error::SpectrumMismatch(format!(
                        "{} vs {} at ξ = {}",
                        fmt_poly(first),
                        fmt_poly(&p),
                        self.model.alg.display(xi)
                    )));
                }
            }
            polys.push(p);
        }
        Ok(polys)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeOperatorMatrix {
    pub xi: Element,
    /// `⟨A_ξ b_l, b_k⟩_AN`.
    pub pairing: Matrix,
    pub matrix: Matrix,
}

impl ShapeOperatorMatrix {
    pub fn trace(&self) -> Q {
        (0..self.matrix.len()).map(|i| self.matrix[i][i].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero(&self.matrix)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// `t^n + … ` with coefficients highest degree first.
pub fn fmt_poly(coeffs: &[Q]) -> String {
    let mut terms = Vec::new();
    for (d, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match d {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{d}"),
        };
        let coef = if d > 0 && *c == q(1) {
            String::new()
        } else if d > 0 && *c == q(-1) {
            "-".to_string()
        } else {
            fmt_q(c)
        };
        terms.push(format!("{coef}{var}"));
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{c_i, c_int};
    use proptest::prelude::*;

    fn r(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn an_inner_examples() {
        let m = SolvableModel::named("A2split").unwrap();
        let g = m.algebra();
        let (h1, h2) = (g.h(1), g.h(2));
        assert_eq!(m.an_inner(&h1, &h2).unwrap(), g.b_theta(&h1, &h2));
        let e = g.e(&r(&[1, 1]));
        assert_eq!(m.an_inner(&e, &e).unwrap(), g.b_theta(&e, &e) * qr(1, 2));
        assert_eq!(m.an_inner(&h1, &e).unwrap(), q(0));
        assert!(m.an_inner(&g.e(&r(&[-1, 0])), &e).is_err());
    }

    #[test]
    fn levi_civita_flat_part() {
        let m = SolvableModel::named("G2split").unwrap();
        let h = m.algebra().h(1);
        assert_eq!(m.levi_civita(&h, &h, &h), q(0));
    }

    #[test]
    fn orbit_closure_is_checked() {
        let m = SolvableModel::named("G2split").unwrap();
        // g_{α1} ⊕ g_{α2} alone generates everything above it.
        assert!(matches!(
            OrbitSubalgebra::from_roots(&m, vec![r(&[1, 0]), r(&[0, 1])]),
            Err(Error::NotSubalgebra(_))
        ));
        let o = OrbitSubalgebra::w_zero(&m, 2).unwrap();
        assert_eq!(o.v_roots, vec![r(&[0, 1]), r(&[1, 1])]);
        assert_eq!(o.h_basis.len(), 6);
    }

    #[test]
    fn g2_dichotomy() {
        let m = SolvableModel::named("G2split").unwrap();
        let long = OrbitSubalgebra::w_zero(&m, 1).unwrap();
        assert!(long.is_totally_geodesic().unwrap());
        let short = OrbitSubalgebra::w_zero(&m, 2).unwrap();
        assert!(!short.is_totally_geodesic().unwrap());
        let g = m.algebra();
        let a = short.shape_operator(&g.e(&r(&[0, 1]))).unwrap();
        assert!(!short.apply(&a, &g.e(&r(&[1, 3]))).is_zero());
        assert_eq!(a.trace(), q(0));
        assert!(short.shape_operator(&Element::zero()).unwrap().is_zero());
    }

    #[test]
    fn identities_hold() {
        for name in ["G2split", "A2split", "G2complex"] {
            let m = SolvableModel::named(name).unwrap();
            for j in 1..=2 {
                let o = OrbitSubalgebra::w_zero(&m, j).unwrap();
                let rep = o.check_shape_identities().unwrap();
                assert!(rep.a > 0 && rep.b > 0);
            }
        }
        let m = SolvableModel::named("G2split").unwrap();
        let rep = OrbitSubalgebra::w_zero(&m, 2).unwrap().check_shape_identities().unwrap();
        assert!(rep.d > 0);
    }

    #[test]
    fn cpc_and_negative_path() {
        let m = SolvableModel::named("G2split").unwrap();
        let g = m.algebra();
        let o = OrbitSubalgebra::w_zero(&m, 2).unwrap();
        let x1 = g.e(&r(&[0, 1]));
        let x2 = g.e(&r(&[0, 1])).scale_q(&qr(3, 5)).add(&g.e(&r(&[1, 1])).scale_q(&qr(4, 5)));
        assert_eq!(o.cpc_charpoly_constancy(&[x1.clone(), x2.clone()]).unwrap().len(), 2);
        assert_eq!(o.cpc_charpoly_constancy(std::slice::from_ref(&x1)).unwrap().len(), 1);
        assert!(matches!(
            o.cpc_charpoly_constancy(&[x1.clone(), x1.scale(&c_int(2))]),
            Err(Error::InvalidInput(_))
        ));
        // Dropping only the level-two space leaves the long-root A2
        // subalgebra: totally geodesic, hence trivially CPC.
        let tg = OrbitSubalgebra::from_roots(&m, vec![r(&[1, 0]), r(&[1, 3]), r(&[2, 3])]).unwrap();
        assert!(tg.is_totally_geodesic().unwrap());
        // Keeping only the level-three part of h breaks CPC.
        let bad = OrbitSubalgebra::from_roots(&m, vec![r(&[1, 3]), r(&[2, 3])]).unwrap();
        let y1 = g.e(&r(&[1, 0])).scale(&c_int(2));
        let y2 = g.e(&r(&[1, 0])).add(&g.e(&r(&[0, 1])));
        assert!(matches!(
            bad.cpc_charpoly_constancy(&[y1, y2]),
            Err(Error::SpectrumMismatch(_))
        ));
    }

    #[test]
    fn complexified_dichotomy() {
        let m = SolvableModel::named("G2complex").unwrap();
        assert!(OrbitSubalgebra::w_zero(&m, 1).unwrap().is_totally_geodesic().unwrap());
        let short = OrbitSubalgebra::w_zero(&m, 2).unwrap();
        assert!(!short.is_totally_geodesic().unwrap());
        let g = m.algebra();
        let xi = g.e(&r(&[0, 1])).scale(&c_i());
        let a = short.shape_operator(&xi).unwrap();
        assert!(!short.apply(&a, &g.e(&r(&[1, 3]))).is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn connection_is_torsion_free_and_metric(
            cx in proptest::collection::vec(-3i64..=3, 8),
            cy in proptest::collection::vec(-3i64..=3, 8),
            cz in proptest::collection::vec(-3i64..=3, 8),
        ) {
            let m = SolvableModel::named("G2split").unwrap();
            let basis = m.iwasawa_basis();
            let mk = |c: &[i64]| c.iter().zip(&basis).fold(Element::zero(), |acc, (k, b)| acc.add(&b.scale_q(&q(*k))));
            let (x, y, z) = (mk(&cx), mk(&cy), mk(&cz));
            let g = m.algebra();
            let lhs = m.levi_civita(&x, &y, &z) - m.levi_civita(&y, &x, &z);
            prop_assert_eq!(lhs, m.an_inner(&g.bracket(&x, &y), &z).unwrap());
            prop_assert_eq!(m.levi_civita(&x, &y, &z) + m.levi_civita(&x, &z, &y), q(0));
        }

        #[test]
        fn shape_operator_is_linear(a in -4i64..=4, b in -4i64..=4) {
            let m = SolvableModel::named("G2split").unwrap();
            let g = m.algebra();
            let o = OrbitSubalgebra::w_zero(&m, 2).unwrap();
            let (u, v) = (g.e(&r(&[0, 1])), g.e(&r(&[1, 1])));
            let xi = u.scale_q(&q(a)).add(&v.scale_q(&q(b)));
            let lhs = o.shape_operator(&xi).unwrap().matrix;
            let (mu, mv) = (o.shape_operator(&u).unwrap().matrix, o.shape_operator(&v).unwrap().matrix);
            for k in 0..lhs.len() {
                for l in 0..lhs.len() {
                    prop_assert_eq!(&lhs[k][l], &(&mu[k][l] * q(a) + &mv[k][l] * q(b)));
                }
            }
        }
    }
}
