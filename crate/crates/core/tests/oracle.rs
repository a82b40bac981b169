use ringgroom::formulas::{binom2, triangle_lower_bound};
use ringgroom::oracle::{solve_min_cost, solve_min_triangles, Budget, OracleResult};
use ringgroom::{verify, Error, Instance, Shape};

fn inst(n: u32, v: u32, c: u32) -> Instance {
    Instance::new(n, v, c).unwrap()
}

fn min_cost(n: u32, v: u32, c: u32) -> OracleResult {
    solve_min_cost(inst(n, v, c), Budget::default()).unwrap()
}

/// Rechecks the witness without the search: cyclic blocks cost their edge
/// count and trees one more.
fn certify(r: &OracleResult) {
    let rep = verify(&r.witness);
    assert!(rep.valid, "{:?}", rep.violations);
    assert_eq!(r.witness.drop_cost(), r.optimum_cost);
    let trees = r.witness.blocks().filter(|b| !b.shape().is_zero_excess()).count();
    assert_eq!(r.optimum_cost, binom2(r.witness.instance.n as u64) as usize + trees);
}

#[test]
fn worked_examples() {
    for (n, v, c, want) in [(7, 4, 2, 21), (7, 4, 1, 21), (7, 5, 2, 22), (7, 5, 1, 26), (4, 0, 4, 7)] {
        let r = min_cost(n, v, c);
        assert!(!r.time_limit_hit);
        assert_eq!(r.optimum_cost, want, "({n},{v},{c})");
        certify(&r);
    }
    for v in 0..5 {
        assert_eq!(min_cost(5, v, 3).optimum_cost, 10);
    }
}

#[test]
fn all_second_period_edges_alone_at_ratio_one() {
    for n in 3..=6u32 {
        let r = min_cost(n, n, 1);
        assert_eq!(r.optimum_cost, 2 * binom2(n as u64) as usize);
        assert!(r.witness.blocks().all(|b| b.shape() == Shape::Edge));
    }
}

#[test]
fn triangle_minima() {
    let b = Budget { max_n: 9, ..Budget::default() };
    for (n, v, want) in [(9, 7, 0), (6, 5, triangle_lower_bound(5, 1).delta_min as usize)] {
        let r = solve_min_triangles(inst(n, v, 3), binom2(n as u64) as usize, b).unwrap();
        assert_eq!(r.optimum_triangles_at_cost, Some(want), "({n},{v})");
        assert_eq!(r.witness.count_triangles(), want);
        certify(&r);
    }
    let r = solve_min_triangles(inst(7, 5, 3), 21, Budget::default()).unwrap();
    assert_eq!(r.optimum_triangles_at_cost, Some(triangle_lower_bound(5, 2).delta_min as usize));
}

#[test]
fn min_cost_reports_triangles_at_the_optimum() {
    let r = min_cost(6, 5, 3);
    assert_eq!(r.optimum_cost, 15);
    assert_eq!(r.optimum_triangles_at_cost, Some(triangle_lower_bound(5, 1).delta_min as usize));
}

#[test]
fn deterministic_node_counts() {
    let a = min_cost(7, 5, 2);
    let b = min_cost(7, 5, 2);
    assert_eq!(a.nodes_explored, b.nodes_explored);
    assert_eq!(a.witness.canonical(), b.witness.canonical());
}

#[test]
fn exhausted_budget_returns_a_valid_upper_bound() {
    let r = solve_min_cost(inst(7, 5, 1), Budget { nodes: 3, max_n: 8 }).unwrap();
    assert!(r.time_limit_hit);
    assert!(r.optimum_cost >= 26);
    assert!(verify(&r.witness).valid);
    assert_eq!(r.optimum_triangles_at_cost, None);
}

#[test]
fn limits_and_domain() {
    assert!(matches!(solve_min_cost(inst(9, 3, 1), Budget::default()), Err(Error::Unsupported(_))));
    assert!(matches!(solve_min_cost(inst(12, 3, 1), Budget { max_n: 20, ..Budget::default() }), Err(Error::Unsupported(_))));
    assert!(matches!(solve_min_triangles(inst(6, 3, 3), 16, Budget::default()), Err(Error::Unsupported(_))));
    // K_4 has no partition into triangles, 4-cycles and kites.
    assert!(matches!(solve_min_triangles(inst(4, 0, 3), 6, Budget::default()), Err(Error::InvalidInstance(_))));
}

mod props {
    use super::*;
    use proptest::prelude::*;
    use ringgroom::construct::{build, BuildRequest};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn oracle_never_beaten_by_a_build((n, v) in (5u32..=7).prop_flat_map(|n| (Just(n), 0..=n)), c in 1u32..=3, seed in any::<u64>()) {
            prop_assume!(!(c == 3 && v == n));
            let r = min_cost(n, v, c);
            certify(&r);
            let d = build(&BuildRequest::new(n, v, c).unwrap().seed(seed)).unwrap();
            prop_assert!(r.optimum_cost <= d.drop_cost());
        }
    }
}
