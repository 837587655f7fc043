use std::collections::BTreeMap;

use proptest::prelude::*;
use trapezoids::exactalg::{rat, BigInt, Gf};
use trapezoids::operatorform::{self, label_vectors};
use trapezoids::{detform, pathfam, sttree, trapezoid};

fn by_labels(n: usize, l: usize) -> BTreeMap<Vec<i32>, Gf> {
    let mut out: BTreeMap<Vec<i32>, Gf> = BTreeMap::new();
    for tr in trapezoid::enumerate(n, l) {
        let s = tr.stats();
        let slot = out.entry(tr.one_column_positions().unwrap()).or_default();
        *slot = &*slot + &Gf::monomial(s.p, s.q, 0);
    }
    out
}

#[test]
fn prescribed_columns_match_enumeration() {
    for n in 1..=3 {
        for l in 2..=5 {
            let grouped = by_labels(n, l);
            for j in label_vectors(n) {
                let want = grouped.get(&j).cloned().unwrap_or_default();
                let gf = operatorform::gf_ast_prescribed(n, l as i64, &j).unwrap();
                assert_eq!(gf, want, "n={n} l={l} j={j:?}");
                let count = operatorform::count_ast_prescribed(n, l as i64, &j).unwrap();
                assert_eq!(count, want.total(), "n={n} l={l} j={j:?}");
            }
        }
    }
}

#[test]
fn paths_match_determinant() {
    for n in 0..=4 {
        for l in 2..=5 {
            let det = detform::gf_det(n, l);
            for d in 0..l as u32 {
                assert_eq!(
                    pathfam::gf_via_paths(n, l, d).unwrap(),
                    det,
                    "n={n} l={l} d={d}"
                );
            }
        }
    }
}

#[test]
fn path_gf_at_p_one() {
    for n in 1..=3 {
        for l in 2..=4 {
            let p1: Gf = pathfam::enumerate_families(n, l)
                .iter()
                .map(|f| f.weight(pathfam::PathWeight::POne).unwrap())
                .sum();
            assert_eq!(p1, detform::gf_det(n, l).at_p_one());
        }
    }
}

#[test]
fn t_polynomial_counts_trapezoids() {
    for n in 1..=4 {
        let t = operatorform::t_polynomial(n);
        for l in 2..=5 {
            assert_eq!(t.eval_int(l), detform::count(n, l as usize), "n={n} l={l}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mn_is_translation_invariant(
        x in prop::collection::vec(-5i64..=5, 1..=4),
        c in -6i64..=6,
    ) {
        let m = operatorform::compute_mn(x.len());
        let a: Vec<_> = x.iter().map(|&v| rat(v)).collect();
        let b: Vec<_> = x.iter().map(|&v| rat(v + c)).collect();
        prop_assert_eq!(m.eval_at(&a), m.eval_at(&b));
    }

    #[test]
    fn monotone_triangle_counts(mut b in prop::collection::vec(-3i64..=3, 1..=4)) {
        b.sort();
        let n = b.len();
        let brute = sttree::enumerate_sttrees(n, &[], &[], &b).unwrap().len();
        prop_assert_eq!(
            operatorform::count_sttrees_formula(n, &[], &[], &b).unwrap(),
            BigInt::from(brute)
        );
    }

    #[test]
    fn record_json_round_trips(n in 1usize..=3, l in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let all = trapezoid::enumerate(n, l);
        let tr = &all[pick.index(all.len())];
        let text = serde_json::to_string(&tr.record()).unwrap();
        let back: trapezoid::TrapezoidRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back.trapezoid, tr);
    }
}
