//! Acceptance criteria 1–7. Runs without the libtest harness so every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use c1_atlas::catalog::Catalog;
use c1_atlas::chevalley::{ChevalleyAlgebra, Element, Scalars};
use c1_atlas::classify::{self, FamilyKind, ModuliKind, Parameters, CH_SYMBOLIC, OH2_SET};
use c1_atlas::linalg::{self, qr};
use c1_atlas::nilcon::{self, Status, Witness};
use c1_atlas::rootsys::{Family, Root, RootSystem, RootSystemType};
use c1_atlas::shapeops::{OrbitSubalgebra, SolvableModel};

type Outcome = Result<String, String>;
/// `(kind, n, data, instance)` of a moduli descriptor.
type Moduli = (ModuliKind, Option<u64>, String, String);
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn sys(s: &str) -> RootSystem {
    RootSystem::new(RootSystemType::parse(s, None).unwrap())
}

fn r(v: &[i32]) -> Root {
    Root::new(v.to_vec())
}

/// `Σ_{i∈idx} α_i` in rank `n` (1-based indices, repeats allowed).
fn sum(n: usize, idx: &[usize]) -> Root {
    let mut c = vec![0; n];
    for &i in idx {
        c[i - 1] += 1;
    }
    Root::new(c)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(v: Vec<Root>) -> BTreeSet<Root> {
    v.into_iter().collect()
}

// 1. Level-one root sets.
fn figure_oracles() -> Outcome {
    let f4 = sys("F4");
    ensure(f4.delta_j1(1).len() == 14, || "F4 Δ_1^1 does not have 14 roots".into())?;
    ensure(f4.delta_j1(4).len() == 8, || "F4 Δ_4^1 does not have 8 roots".into())?;
    let c5 = sys("C5");
    ensure(c5.delta_j1(1).len() == 8, || "C5 Δ_1^1 does not have 8 roots".into())?;
    // {α_r} ∪ {α_r + Σ_{i=1}^k α_{r−i} (+ Σ_{i=1}^l α_{r−i}) : 1 ≤ l ≤ k ≤ r−1}
    let mut c5r = vec![sum(5, &[5])];
    for k in 1..=4 {
        let base: Vec<usize> = std::iter::once(5).chain((1..=k).map(|i| 5 - i)).collect();
        c5r.push(sum(5, &base));
        for l in 1..=k {
            let mut idx = base.clone();
            idx.extend((1..=l).map(|i| 5 - i));
            c5r.push(sum(5, &idx));
        }
    }
    ensure(c5r.len() == 15 && set(c5.delta_j1(5)) == set(c5r), || "C5 Δ_5^1 differs from the closed form".into())?;
    for name in ["B5", "BC5"] {
        let s = sys(name);
        // {α1} ∪ {α1+…+α_k : 2 ≤ k ≤ r} ∪ {α1+…+α_r + α_r+…+α_{r−l} : 0 ≤ l ≤ r−2}
        let mut j1 = vec![sum(5, &[1])];
        for k in 2..=5 {
            j1.push(sum(5, &(1..=k).collect::<Vec<_>>()));
        }
        for l in 0..=3 {
            let mut idx: Vec<usize> = (1..=5).collect();
            idx.extend((0..=l).map(|i| 5 - i));
            j1.push(sum(5, &idx));
        }
        let got = s.delta_j1(1);
        ensure(got.len() == 9 && set(got) == set(j1), || format!("{name} Δ_1^1 differs from the 9-chain"))?;
        let chain: Vec<Root> = (0..5)
            .map(|k| sum(5, &(0..=k).map(|i| 5 - i).collect::<Vec<_>>()))
            .collect();
        ensure(set(s.delta_j1(5)) == set(chain), || format!("{name} Δ_5^1 is not Σ_{{i≤k}} α_{{5−i}}"))?;
    }
    Ok("F4 14/8, C5 8/15, B5 and BC5 9 and the 5-chain".into())
}

/// Oracle for D and E end nodes: walk from `α_j` to the branch node `β1`;
/// the colliding roots are the path plus either of the other neighbors.
fn branch_pair(s: &RootSystem, j: usize) -> Option<BTreeSet<Root>> {
    let n = s.rank();
    let nbrs = |i: usize| -> Vec<usize> { (1..=n).filter(|&k| k != i && s.cartan()[i - 1][k - 1] != 0).collect() };
    let mut path = vec![j];
    let mut prev = 0;
    let mut cur = j;
    loop {
        let next: Vec<usize> = nbrs(cur).into_iter().filter(|&k| k != prev).collect();
        if next.len() >= 2 {
            let others: Vec<usize> = next;
            return Some(
                others
                    .iter()
                    .map(|&b| {
                        let mut idx = path.clone();
                        idx.push(b);
                        sum(n, &idx)
                    })
                    .collect(),
            );
        }
        let &[nx] = next.as_slice() else { return None };
        prev = cur;
        cur = nx;
        path.push(cur);
    }
}

// 2. Elimination regression over the shipped catalog.
fn elimination_regression() -> Outcome {
    let catalog = Catalog::builtin();
    let verdicts = nilcon::analyze_all(&catalog, 2).map_err(|e| e.to_string())?;
    let mut counts = std::collections::BTreeMap::<&str, usize>::new();
    for v in &verdicts {
        let e = catalog.get(&v.space).unwrap();
        let s = e.root_system();
        let rank = s.rank();
        let j = v.j;
        let end = s.dynkin_neighbors(j).len() == 1;
        let ctx = || format!("{} j = {j}: {} {:?}", v.space, v.status, v.witness);
        let same_height = |w: &Witness| match w {
            Witness::SameHeight { a, b, .. } => Some(BTreeSet::from([a.clone(), b.clone()])),
            _ => None,
        };
        if !end {
            ensure(v.status == Status::EliminatedCorner, ctx)?;
            *counts.entry("corner").or_default() += 1;
            continue;
        }
        match e.rtype.family {
            Family::A => {
                ensure(v.status == Status::EliminatedMultiplicity, ctx)?;
                *counts.entry("A multiplicity").or_default() += 1;
            }
            Family::B | Family::BC if j == 1 => {
                ensure(v.status == Status::EliminatedMultiplicity, ctx)?;
                *counts.entry("B/BC j=1 multiplicity").or_default() += 1;
            }
            Family::B | Family::BC => {
                let chain: BTreeSet<Root> = (0..rank)
                    .map(|k| sum(rank, &(0..=k).map(|i| rank - i).collect::<Vec<_>>()))
                    .collect();
                let ok = matches!(&v.witness, Witness::ShapeTheorem { snake } if set(snake.clone()) == chain);
                ensure(v.status == Status::EliminatedShapeTheorem && ok, ctx)?;
                *counts.entry("B/BC j=r shape theorem").or_default() += 1;
            }
            Family::C if j == 1 => {
                ensure(v.status == Status::EliminatedMultiplicity, ctx)?;
                *counts.entry("C j=1 multiplicity").or_default() += 1;
            }
            Family::C => {
                let want = BTreeSet::from([sum(rank, &[rank, rank - 1, rank - 1]), sum(rank, &[rank, rank - 1, rank - 2])]);
                ensure(v.status == Status::EliminatedHeightCollision && same_height(&v.witness) == Some(want), ctx)?;
                *counts.entry("C j=r collision").or_default() += 1;
            }
            Family::D | Family::E6 | Family::E7 | Family::E8 => {
                let want = branch_pair(&s, j);
                ensure(v.status == Status::EliminatedHeightCollision && same_height(&v.witness) == want, ctx)?;
                *counts.entry("D/E collision").or_default() += 1;
            }
            Family::F4 => {
                let want = if j == 1 {
                    BTreeSet::from([r(&[1, 1, 2, 0]), r(&[1, 1, 1, 1])])
                } else {
                    BTreeSet::from([r(&[0, 1, 2, 1]), r(&[1, 1, 1, 1])])
                };
                ensure(v.status == Status::EliminatedHeightCollision && same_height(&v.witness) == Some(want), ctx)?;
                *counts.entry("F4 collision").or_default() += 1;
            }
            Family::G2 => {
                let short = s.length(&s.simple(j)) < s.length(&s.highest_root());
                let want = if short { Status::SurvivesWZeroG2 } else { Status::WZeroTotallyGeodesic };
                ensure(v.status == want, ctx)?;
            }
        }
    }
    let survivors: BTreeSet<(String, usize)> = verdicts
        .iter()
        .filter(|v| v.status.is_survivor())
        .map(|v| (v.space.clone(), v.j))
        .collect();
    let want = BTreeSet::from([("G2^2/SO(4)".to_string(), 2), ("G2(C)/G2".to_string(), 2)]);
    ensure(survivors == want, || format!("survivors {survivors:?}"))?;
    let short = sys("G2");
    ensure(short.length(&short.simple(2)) < short.length(&short.simple(1)), || "α2 is not the short G2 root".into())?;
    Ok(format!(
        "{} verdicts; {}",
        verdicts.len(),
        counts.iter().map(|(k, n)| format!("{k} {n}")).collect::<Vec<_>>().join(", ")
    ))
}

// 3. Chevalley basis soundness.
fn chevalley_soundness() -> Outcome {
    let mut triples = 0;
    let mut pairs = 0;
    for name in ["A1", "A2", "B2", "G2", "F4"] {
        let s = sys(name);
        let g = ChevalleyAlgebra::new(&s, Scalars::Rational).map_err(|e| e.to_string())?;
        triples += g.verify_jacobi().map_err(|e| format!("{name}: {e}"))?;
        // |N_{λ,μ}| = p + 1 with p read off the λ-string through μ.
        let roots = s.roots();
        for lam in &roots {
            for mu in &roots {
                if s.is_root(&lam.add(mu)) {
                    let string = s.root_string(mu, lam).map_err(|e| e.to_string())?;
                    let p = string.iter().position(|x| x == mu).unwrap() as i64;
                    let n = g.n_const(lam, mu);
                    ensure(n.abs() == p + 1, || format!("{name}: N[{lam},{mu}] = {n}, p = {p}"))?;
                    ensure(g.n_const(mu, lam) == -n, || format!("{name}: N not antisymmetric at {lam},{mu}"))?;
                    ensure(g.n_const(&lam.neg(), &mu.neg()) == -n, || format!("{name}: N[−λ,−μ] ≠ −N[λ,μ]"))?;
                    pairs += 1;
                } else if lam != &mu.neg() {
                    ensure(g.n_const(lam, mu) == 0, || format!("{name}: N[{lam},{mu}] ≠ 0"))?;
                }
            }
        }
        g.verify_theta().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{triples} Jacobi triples, {pairs} structure constants, θ isometric involution"))
}

fn koszul_and_adjointness(name: &str, o: &OrbitSubalgebra, xi: &Element, m: &SolvableModel) -> Result<(), String> {
    let a = o.shape_operator(xi).map_err(|e| format!("{name}: {e}"))?;
    for (k, bk) in o.h_basis.iter().enumerate() {
        for (l, bl) in o.h_basis.iter().enumerate() {
            let koszul = -m.levi_civita(bl, xi, bk);
            ensure(a.pairing[k][l] == koszul, || format!("{name}: lemma and Koszul differ at ({k},{l})"))?;
        }
    }
    let g = m.gram(&o.h_basis);
    let gm = linalg::mul(&g, &a.matrix);
    ensure(gm == linalg::transpose(&gm), || format!("{name}: A_ξ not self-adjoint"))
}

// 4. Lemma vs Koszul, and self-adjointness.
fn shape_consistency() -> Outcome {
    let mut n = 0;
    for name in ["A2split", "G2split"] {
        let m = SolvableModel::named(name).map_err(|e| e.to_string())?;
        let s = m.root_system().clone();
        for j in 1..=2 {
            let level1 = s.delta_j1(j);
            for mask in 0u32..(1 << level1.len()) {
                let w: BTreeSet<Root> = level1
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, x)| x.clone())
                    .collect();
                let Ok(o) = OrbitSubalgebra::new(&m, j, &w) else { continue };
                for xi in &o.v_basis {
                    koszul_and_adjointness(name, &o, xi, &m)?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} shape operators agree exactly"))
}

// 5. G2 total-geodesy dichotomy.
fn g2_dichotomy() -> Outcome {
    for name in ["G2split", "G2complex"] {
        let m = SolvableModel::named(name).map_err(|e| e.to_string())?;
        let long = OrbitSubalgebra::w_zero(&m, 1).map_err(|e| e.to_string())?;
        for xi in &long.v_basis {
            let a = long.shape_operator(xi).map_err(|e| e.to_string())?;
            ensure(a.is_zero(), || format!("{name}: j = 1 has a nonzero shape operator"))?;
        }
        let short = OrbitSubalgebra::w_zero(&m, 2).map_err(|e| e.to_string())?;
        let g = m.algebra();
        let target = g.e(&r(&[1, 3]));
        for xi in g.root_space_basis(&r(&[0, 1])) {
            let a = short.shape_operator(&xi).map_err(|e| e.to_string())?;
            ensure(!short.apply(&a, &target).is_zero(), || format!("{name}: A_ξ(e_{{α1+3α2}}) = 0"))?;
        }
    }
    Ok("long j totally geodesic; short j has A_ξ(e_{α1+3α2}) ≠ 0, split and complexified".into())
}

// 6. CPC spot check.
fn cpc_spot_check() -> Outcome {
    let m = SolvableModel::named("G2split").map_err(|e| e.to_string())?;
    let g = m.algebra();
    let o = OrbitSubalgebra::w_zero(&m, 2).map_err(|e| e.to_string())?;
    let x1 = g.e(&r(&[0, 1]));
    let x2 = g.e(&r(&[0, 1])).scale_q(&qr(3, 5)).add(&g.e(&r(&[1, 1])).scale_q(&qr(4, 5)));
    let n1 = m.an_inner(&x1, &x1).map_err(|e| e.to_string())?;
    let n2 = m.an_inner(&x2, &x2).map_err(|e| e.to_string())?;
    ensure(n1 == n2, || "samples have different norms".into())?;
    let p1 = linalg::charpoly(&o.shape_operator(&x1).map_err(|e| e.to_string())?.matrix);
    let p2 = linalg::charpoly(&o.shape_operator(&x2).map_err(|e| e.to_string())?.matrix);
    ensure(p1 == p2, || "characteristic polynomials differ".into())?;
    Ok(format!("both {}", c1_atlas::shapeops::fmt_poly(&p1)))
}

// 7. Classification assembly.
fn classification() -> Outcome {
    let catalog = Catalog::builtin();
    let ch = |n: u64, inst: &str| (ModuliKind::ChExplicit, Some(n), CH_SYMBOLIC.to_string(), inst.to_string());
    let cases: Vec<(&str, Vec<usize>, &str, Moduli)> = vec![
        ("Gr*(1,C^4)", vec![1], "CH^3", ch(2, "(0,π/2) × {2} ⊔ {π/2} × {2}")),
        ("Gr*(1,C^5)", vec![1], "CH^4", ch(3, "(0,π/2) × {2} ⊔ {π/2} × {2,3}")),
        ("Gr*(2,C^6)", vec![2], "CH^3", ch(2, "(0,π/2) × {2} ⊔ {π/2} × {2}")),
        ("Gr*(2,C^7)", vec![2], "CH^4", ch(3, "(0,π/2) × {2} ⊔ {π/2} × {2,3}")),
        ("SO(5,H)/U(5)", vec![2], "CH^3", ch(2, "(0,π/2) × {2} ⊔ {π/2} × {2}")),
        ("E6^{-14}", vec![2], "CH^5", ch(4, "(0,π/2) × {2,4} ⊔ {π/2} × {2,3,4}")),
        (
            "Gr*(1,H^3)",
            vec![1],
            "HH^2",
            (ModuliKind::HhSymbolic, Some(1), classify::HH_SYMBOLIC.to_string(), "M_{HH^2}".to_string()),
        ),
        ("OH2", vec![1], "OH^2", (ModuliKind::Oh2Explicit, None, OH2_SET.to_string(), OH2_SET.to_string())),
        (
            "G2^2/SO(4)",
            vec![1, 2],
            "G2^2/SO(4)",
            (ModuliKind::G2Singleton, Some(2), "{H_{j,0}}".to_string(), "{H_{2,0}}".to_string()),
        ),
        (
            "G2(C)/G2",
            vec![1, 2],
            "G2(C)/G2",
            (ModuliKind::G2Singleton, Some(2), "{H_{j,0}}".to_string(), "{H_{2,0}}".to_string()),
        ),
    ];
    ensure(CH_SYMBOLIC == "(0,π/2) × {2,4,…,2⌊n/2⌋} ⊔ {π/2} × {2,…,n}", || "CH descriptor text".into())?;
    ensure(OH2_SET == "{2,3,6,7} ⊔ [0,1] × {4}", || "OH² descriptor text".into())?;
    for (space, phi_want, boundary_want, (kind, n, data, inst)) in &cases {
        let c = classify::classify_names(&catalog, &[space], None).map_err(|e| format!("{space}: {e}"))?;
        let fams: Vec<_> = c.of_kind(FamilyKind::Nilpotent).collect();
        ensure(fams.len() == 1, || format!("{space}: {} nilpotent families", fams.len()))?;
        let Parameters::Nilpotent { phi, boundary, moduli } = &fams[0].parameters else {
            return Err(format!("{space}: wrong parameter shape"));
        };
        let got = (moduli.kind, moduli.n, moduli.data.clone(), moduli.instance.clone());
        ensure(
            phi == phi_want && boundary == boundary_want && got == (*kind, *n, data.clone(), inst.clone()),
            || format!("{space}: got Φ {phi:?}, {boundary}, {got:?}"),
        )?;
    }
    Ok(format!("{} spaces reproduce their nilpotent families", cases.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 figure oracles", Duration::from_secs(1), figure_oracles),
        ("2 elimination regression", Duration::from_secs(10), elimination_regression),
        ("3 Chevalley soundness", Duration::from_secs(60), chevalley_soundness),
        ("4 shape-operator consistency", Duration::from_secs(5), shape_consistency),
        ("5 total-geodesy dichotomy", Duration::from_secs(5), g2_dichotomy),
        ("6 CPC spot check", Duration::from_secs(5), cpc_spot_check),
        ("7 classification assembly", Duration::from_secs(5), classification),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let (ok, detail) = match out {
            Ok(d) if dt <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {dt:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {name} ({dt:.2?} / {limit:?}): {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
