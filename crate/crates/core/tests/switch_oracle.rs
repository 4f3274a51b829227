use casing::arrangement::Arrangement;
use casing::crossing_graph::{zero_switch_casing, CrossingGraph};
use casing::fixtures::{random_graph, random_segments};
use casing::geometry::{degree_one_transform, Drawing};
use casing::objective::{Model, Objective, ObjectiveValue};
use casing::oracle::{enumerate_optimal_casing, OracleCaps};
use casing::switches::{odd_face_polygons, solve_min_total_switches_on};

fn check(d: &Drawing, label: &str) -> bool {
    let arr = Arrangement::build(d).unwrap();
    if arr.num_crossings() > 14 {
        return false;
    }
    let sol = solve_min_total_switches_on(&arr);
    let best = enumerate_optimal_casing(&arr, Model::Weaving, Objective::MinTotalSwitches, OracleCaps::default()).unwrap();
    assert_eq!(ObjectiveValue::Count(sol.report.total_switches), best.value, "{label}");
    assert!(sol.report.switch_lower_bound.unwrap() <= sol.report.total_switches, "{label}");
    let q = odd_face_polygons(&Arrangement::build_unchecked(&degree_one_transform(d))).len();
    let bip = CrossingGraph::build(&arr).is_bipartite();
    assert_eq!(zero_switch_casing(&arr).is_some(), bip, "{label}");
    assert_eq!(bip, q == 0, "{label}");
    true
}

#[test]
fn segments_match_oracle() {
    let mut n = 0;
    for seed in 0..300u64 {
        let d = random_segments(3 + (seed % 6) as usize, seed, 10.0, 3.0, 9.0);
        if check(&d, &format!("segments seed {seed}")) {
            n += 1;
        }
    }
    assert!(n >= 100, "only {n} instances");
}

#[test]
fn graphs_match_oracle() {
    let mut n = 0;
    for seed in 0..300u64 {
        let d = random_graph(5 + (seed % 4) as usize, 5 + (seed % 6) as usize, seed, 10.0);
        if check(&d, &format!("graph seed {seed}")) {
            n += 1;
        }
    }
    assert!(n >= 100, "only {n} instances");
}
