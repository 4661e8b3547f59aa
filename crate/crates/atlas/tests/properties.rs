use proptest::prelude::*;

use c1_atlas::catalog::Catalog;
use c1_atlas::classify::classify_names;
use c1_atlas::rootsys::{RootSystem, RootSystemType};

const TYPES: &[&str] = &["A4", "B4", "C4", "D5", "BC3", "G2", "F4", "E6", "E7"];

fn sys(i: usize) -> RootSystem {
    RootSystem::new(RootSystemType::parse(TYPES[i], None).unwrap())
}

fn proportional(x: &[i32], y: &[i32]) -> bool {
    (0..x.len()).all(|i| (0..i).all(|k| x[i] * y[k] == x[k] * y[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn levels_partition_positive_roots(t in 0..TYPES.len(), j in 1usize..8) {
        let s = sys(t);
        let j = (j - 1) % s.rank() + 1;
        let g = s.grading(&s.complement(j));
        let mut seen = 0;
        for (&nu, roots) in &g.levels {
            for x in roots {
                prop_assert_eq!(x.coefficient(j), nu as i32);
                seen += 1;
            }
        }
        prop_assert_eq!(seen + g.sigma_phi.len() / 2, s.positives().len());
    }

    #[test]
    fn strings_are_unbroken(t in 0..TYPES.len(), a in 0usize..200, b in 0usize..200) {
        let s = sys(t);
        let roots = s.roots();
        let (lam, beta) = (&roots[a % roots.len()], &roots[b % roots.len()]);
        prop_assume!(!proportional(lam.coeffs(), beta.coeffs()));
        let st = s.root_string(lam, beta).unwrap();
        prop_assert!(st.contains(lam));
        for w in st.windows(2) {
            prop_assert_eq!(&w[1].sub(&w[0]), beta);
        }
        prop_assert!(!s.is_root(&st[0].sub(beta)));
        prop_assert!(!s.is_root(&st[st.len() - 1].add(beta)));
        prop_assert!(st.len() <= 4);
    }

    #[test]
    fn classification_ignores_factor_order(a in 0usize..106, b in 0usize..106) {
        let cat = Catalog::builtin();
        let n = cat.entries().len();
        let (x, y) = (&cat.entries()[a % n].name, &cat.entries()[b % n].name);
        let xy = classify_names(&cat, &[x, y], None).unwrap();
        let yx = classify_names(&cat, &[y, x], None).unwrap();
        prop_assert_eq!(xy, yx);
    }
}
