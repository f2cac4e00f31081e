//! Outside-in runs of the public API, the way a consumer would chain
//! it: parse, build, check, and read the reports.

use cubestar::coxeter::parse_coxeter;
use cubestar::deligne::{formal_property_star, DeligneBall, FreeOracle, FundamentalDomain};
use cubestar::graphprod::{parse_graph_product, DavisBall};
use cubestar::stabposet::{
    check_chains, check_disjoint_star, check_fix_lemma, check_property_star, fixed_set_poset,
    parse_explicit_action, stabiliser_poset, DavisAction, GroupAction,
};

const TRIANGLE_PRODUCT: &str = r#"{
    "vertices": [
        {"name": "a", "group": {"cyclic": 2}},
        {"name": "b", "group": {"cyclic": 2}},
        {"name": "c", "group": {"cyclic": 3}}
    ],
    "edges": [["a", "b"], ["b", "c"]]
}"#;

#[test]
fn a_graph_product_ball_passes_the_whole_check_suite() {
    let product = parse_graph_product(TRIANGLE_PRODUCT).unwrap();
    let ball = DavisBall::build(product, 3, 200_000).unwrap();
    let complex = ball.complex();
    assert_eq!(complex.dim(), 2, "largest clique has two vertices");
    assert!(complex.flag_violations().is_empty());

    let action = DavisAction::new(&ball, 2);
    assert!(!action.interior_cubes().is_empty());

    let star = check_property_star(&action);
    assert!(star.holds(), "{:?}", star.violations.first());

    let disjoint = check_disjoint_star(&action, 1_000_000);
    assert!(disjoint.holds(), "{:?}", disjoint.failures.first());
    assert!(disjoint.pairs_checked > 0);

    let stab = stabiliser_poset(&action);
    let fixed = fixed_set_poset(&action);
    assert!(stab.within_bound && fixed.within_bound);
    assert_eq!(stab.bound, complex.dim() + 1);

    let fix = check_fix_lemma(&action);
    assert!(fix.mismatches.is_empty());

    let chains = check_chains(&action);
    assert!(chains.within_bound);
    assert_eq!(chains.face_monotone_violations, 0);
}

#[test]
fn reports_serialise_with_stable_shape() {
    let product = parse_graph_product(TRIANGLE_PRODUCT).unwrap();
    let ball = DavisBall::build(product, 2, 200_000).unwrap();
    let action = DavisAction::new(&ball, 1);

    let star = check_property_star(&action);
    let first = serde_json::to_string(&star).unwrap();
    let second = serde_json::to_string(&check_property_star(&action)).unwrap();
    assert_eq!(first, second);

    let value: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert!(value["pairs_checked"].as_u64().unwrap() > 0);
    assert_eq!(value["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn an_explicit_action_from_json_is_checked_like_any_other() {
    let strip = parse_explicit_action(
        r#"{
        "complex": {
            "vertices": 8,
            "edges": [[0,1],[0,2],[1,3],[2,3],[2,4],[3,5],[4,5],[4,6],[5,7],[6,7]],
            "maximal_cubes": [[0,1,2,3],[2,3,4,5],[4,5,6,7]]
        },
        "group": {"table": [[0,1],[1,0]], "element_names": ["1","s"]},
        "action": [[0,1,2,3,4,5,6,7],[7,6,5,4,3,2,1,0]]
    }"#,
    )
    .unwrap();

    let report = check_property_star(&strip);
    assert!(!report.holds());
    assert_eq!(report.violations.len(), 14);
    let worst = &report.violations[0];
    assert_eq!(worst.cube, vec![2, 3, 4, 5]);
    assert_eq!(worst.cube_stab_order, 2);
    assert_eq!(worst.needed_order, 1);
}

#[test]
fn the_free_system_pipeline_agrees_between_ball_and_domain() {
    let sys = parse_coxeter(
        r#"{
        "generators": ["x", "y"],
        "labels": []
    }"#,
    )
    .unwrap();

    let domain = FundamentalDomain::build(&sys).unwrap();
    assert_eq!(domain.cubes().len(), 5);

    let ball = DeligneBall::build(&sys, 3, 100_000).unwrap();
    let oracle = FreeOracle::new(&sys).unwrap();

    let concrete = ball.check_star(&oracle).unwrap();
    assert!(concrete.holds());

    let samples = ball.formal_samples();
    assert_eq!(samples.len(), concrete.pairs_checked);
    let formal = formal_property_star(&domain, &oracle, &samples).unwrap();
    assert!(formal.holds());
    assert_eq!(formal.samples_checked, samples.len());
}
