//! Invariant suite across all modules, run by `c1-atlas verify`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{boundary_component, BoundaryFactor, Catalog};
use crate::chevalley::{c_i, ChevalleyAlgebra, Scalars};
use crate::classify::classify;
use crate::error::{Error, Result};
use crate::linalg::qr;
use crate::nilcon::{self, Status};
use crate::rootsys::{length_key, Family, Root, RootSystem, RootSystemType};
use crate::shapeops::{OrbitSubalgebra, SolvableModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub module: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn(&Catalog) -> Result<String>;

fn sys(s: &str) -> RootSystem {
    RootSystem::new(RootSystemType::parse(s, None).expect("valid type"))
}

fn fail(msg: String) -> Error {
    Error::IdentityViolation(msg)
}

fn root_counts(_: &Catalog) -> Result<String> {
    let mut n = 0;
    for (fam, ranks) in [
        (Family::A, 1..=8),
        (Family::B, 2..=8),
        (Family::C, 3..=8),
        (Family::D, 4..=8),
        (Family::BC, 1..=8),
    ] {
        for r in ranks {
            let expect = match fam {
                Family::A => r * (r + 1) / 2,
                Family::B | Family::C => r * r,
                Family::D => r * (r - 1),
                _ => r * (r + 1),
            };
            let got = RootSystem::build(fam, r)?.positives().len();
            if got != expect {
                return Err(fail(format!("{fam:?}{r}: {got} positive roots, expected {expect}")));
            }
            n += 1;
        }
    }
    for (s, expect) in [("G2", 6), ("F4", 24), ("E6", 36), ("E7", 63), ("E8", 120)] {
        if sys(s).positives().len() != expect {
            return Err(fail(format!("{s}: wrong root count")));
        }
        n += 1;
    }
    Ok(format!("{n} types"))
}

fn proportional(a: &Root, b: &Root) -> bool {
    let (x, y) = (a.coeffs(), b.coeffs());
    (0..x.len()).all(|i| (0..i).all(|k| x[i] * y[k] == x[k] * y[i]))
}

fn root_strings(_: &Catalog) -> Result<String> {
    let mut n = 0;
    for s in ["A3", "B3", "C3", "G2", "F4", "BC3"] {
        let sy = sys(s);
        let roots = sy.roots();
        for lam in &roots {
            for beta in &roots {
                if proportional(lam, beta) {
                    continue;
                }
                let st = sy.root_string(lam, beta)?;
                if st.iter().any(|x| !sy.is_root(x)) || !st.contains(lam) {
                    return Err(fail(format!("{s}: bad string of {lam} through {beta}")));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} strings"))
}

fn gradings(_: &Catalog) -> Result<String> {
    let mut n = 0;
    for s in ["A4", "B4", "C4", "D5", "BC3", "G2", "F4", "E6", "E7"] {
        let sy = sys(s);
        for j in 1..=sy.rank() {
            let g = sy.grading(&sy.complement(j));
            let graded: usize = g.levels.values().map(Vec::len).sum();
            if graded + g.sigma_phi.len() / 2 != sy.positives().len() {
                return Err(fail(format!("{s}, j = {j}: levels do not partition Σ⁺")));
            }
            n += 1;
        }
    }
    Ok(format!("{n} gradings"))
}

fn catalog_dims(cat: &Catalog) -> Result<String> {
    for e in cat.entries() {
        e.validate()?;
    }
    Ok(format!("{} entries", cat.entries().len()))
}

fn boundary_transitivity(cat: &Catalog) -> Result<String> {
    let mut n = 0;
    for e in cat.entries() {
        let sy = e.root_system();
        let full = boundary_component(e, &sy.simple_indices())?;
        if full.flat_rank != 0 || full.factors.len() != 1 {
            return Err(fail(format!("{}: B_Λ is not the space", e.name)));
        }
        // Boundary of a boundary: the factor of Φ = Λ ∖ {α_1}, restricted to
        // one of its singletons, matches the direct singleton.
        let mut phi = sy.simple_indices();
        phi.remove(&1);
        for comp in boundary_component(e, &phi)?.factors {
            for &node in &comp.nodes {
                let direct = boundary_component(e, &BTreeSet::from([node]))?.factors.remove(0);
                let k = comp.nodes.iter().position(|&x| x == node).expect("node") + 1;
                if simple_pair(&comp, k) != simple_pair(&direct, 1) {
                    return Err(fail(format!("{}: restriction to α{node} is not transitive", e.name)));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} restrictions"))
}

/// `(m_α, m_2α)` of the `k`-th simple root of a boundary factor.
fn simple_pair(f: &BoundaryFactor, k: usize) -> (Option<u64>, Option<u64>) {
    let fsys = RootSystem::new(f.rtype);
    let a = fsys.simple(k);
    let get = |x: &Root| f.mult.get(&length_key(fsys.length(x))).copied();
    let d = a.scale(2);
    (get(&a), if fsys.is_root(&d) { get(&d) } else { None })
}

fn chevalley_suite(_: &Catalog) -> Result<String> {
    let mut triples = 0;
    for s in ["A1", "A2", "B2", "G2", "F4"] {
        let g = ChevalleyAlgebra::new(&sys(s), Scalars::Rational)?;
        triples += g.verify_jacobi()?;
        g.verify_string_constants()?;
        g.verify_theta()?;
    }
    let g = ChevalleyAlgebra::new(&sys("G2"), Scalars::GaussianRational)?;
    g.verify_theta()?;
    Ok(format!("{triples} Jacobi triples"))
}

fn elimination_sweep(cat: &Catalog) -> Result<String> {
    let v = nilcon::analyze_all(cat, 2)?;
    let survivors: BTreeSet<(String, usize)> = v
        .iter()
        .filter(|x| x.status == Status::SurvivesWZeroG2)
        .map(|x| (x.space.clone(), x.j))
        .collect();
    let expect = BTreeSet::from([("G2(C)/G2".to_string(), 2), ("G2^2/SO(4)".to_string(), 2)]);
    if survivors != expect {
        return Err(fail(format!("survivors {survivors:?}")));
    }
    Ok(format!("{} verdicts", v.len()))
}

fn shape_identities(_: &Catalog) -> Result<String> {
    let mut n = 0;
    for name in ["A2split", "G2split", "G2complex"] {
        let m = SolvableModel::named(name)?;
        for j in 1..=2 {
            let o = OrbitSubalgebra::w_zero(&m, j)?;
            for xi in &o.v_basis {
                let a = o.shape_operator(xi)?;
                if !o.is_self_adjoint(&a) {
                    return Err(fail(format!("{name}, j = {j}: A_ξ is not self-adjoint")));
                }
                n += 1;
            }
            o.check_shape_identities()?;
        }
    }
    Ok(format!("{n} shape operators"))
}

fn g2_dichotomy(_: &Catalog) -> Result<String> {
    for name in ["G2split", "G2complex"] {
        let m = SolvableModel::named(name)?;
        if !OrbitSubalgebra::w_zero(&m, 1)?.is_totally_geodesic()? {
            return Err(fail(format!("{name}: long-root orbit is not totally geodesic")));
        }
        let o = OrbitSubalgebra::w_zero(&m, 2)?;
        let g = m.algebra();
        let target = g.e(&Root::new(vec![1, 3]));
        for xi in g.root_space_basis(&Root::new(vec![0, 1])) {
            let a = o.shape_operator(&xi)?;
            if o.apply(&a, &target).is_zero() {
                return Err(fail(format!("{name}: A_ξ(e_{{α1+3α2}}) = 0")));
            }
        }
    }
    Ok("split and complexified".into())
}

fn g2_cpc(_: &Catalog) -> Result<String> {
    let m = SolvableModel::named("G2split")?;
    let g = m.algebra();
    let o = OrbitSubalgebra::w_zero(&m, 2)?;
    let x1 = g.e(&Root::new(vec![0, 1]));
    let x2 = x1
        .scale_q(&qr(3, 5))
        .add(&g.e(&Root::new(vec![1, 1])).scale_q(&qr(4, 5)));
    let p = o.cpc_charpoly_constancy(&[x1, x2])?;
    let mc = SolvableModel::named("G2complex")?;
    let gc = mc.algebra();
    let oc = OrbitSubalgebra::w_zero(&mc, 2)?;
    let e = gc.e(&Root::new(vec![0, 1]));
    oc.cpc_charpoly_constancy(&[e.clone(), e.scale(&c_i())])?;
    Ok(crate::shapeops::fmt_poly(&p[0]))
}

fn classification(cat: &Catalog) -> Result<String> {
    let n: usize = cat
        .entries()
        .par_iter()
        .map(|e| classify(std::slice::from_ref(e), None).map(|c| c.families.len()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(format!("{n} families over {} spaces", cat.entries().len()))
}

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("rootsys", "positive root counts", root_counts),
    ("rootsys", "root strings", root_strings),
    ("rootsys", "gradings partition Σ⁺", gradings),
    ("catalog", "dimension identity", catalog_dims),
    ("catalog", "boundary restriction", boundary_transitivity),
    ("chevalley", "Jacobi, |N| = p+1, θ", chevalley_suite),
    ("nilcon", "elimination sweep", elimination_sweep),
    ("shapeops", "lemma vs Koszul, self-adjointness", shape_identities),
    ("shapeops", "G2 total-geodesy dichotomy", g2_dichotomy),
    ("shapeops", "G2 CPC spot check", g2_cpc),
    ("classify", "recognition vs elimination", classification),
];

/// Runs every check in parallel; results keep the fixed check order.
pub fn run_all(cat: &Catalog) -> Vec<CheckResult> {
    CHECKS
        .par_iter()
        .map(|(module, name, f)| {
            let (passed, detail) = match f(cat) {
                Ok(d) => (true, d),
                Err(e) => (false, e.to_string()),
            };
            CheckResult {
                module: module.to_string(),
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}

pub fn render_text(results: &[CheckResult]) -> String {
    let w = results.iter().map(|r| r.module.len() + r.name.chars().count() + 2).max().unwrap_or(0);
    results
        .iter()
        .map(|r| {
            let label = format!("{}: {}", r.module, r.name);
            let pad = w - label.chars().count();
            format!(
                "{} {label}{}  {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                " ".repeat(pad),
                r.detail
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_builtin_catalog() {
        let results = run_all(&Catalog::builtin());
        assert_eq!(results.len(), CHECKS.len());
        for r in &results {
            assert!(r.passed, "{}: {} failed: {}", r.module, r.name, r.detail);
        }
        assert!(render_text(&results).lines().all(|l| l.starts_with("PASS ")));
    }
}
