//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_SHORTFALLS` are expected to print FAIL; the run
//! fails if any other criterion fails or if a listed one starts passing.

use std::time::{Duration, Instant};

use casing::arrangement::Arrangement;
use casing::crossing_graph::{casing_metrics, zero_switch_casing, CrossingGraph};
use casing::exact::{int, parse_rational, rat, Point, Rational};
use casing::fixtures::{bundle_square, grid, pentagram, random_graph, random_segments, triangle, two_triangles, weave_grid};
use casing::geometry::{crossing_angle_sin, degree_one_transform, tunnel_length, Drawing};
use casing::objective::{Model, Objective, ObjectiveValue};
use casing::oracle::{enumerate_optimal_casing, OracleCaps};
use casing::solve::{solve, SolveOptions};
use casing::stacking::solve_stacking_on;
use casing::switches::{odd_face_polygons, solve_min_total_switches_on, switch_lower_bound};
use casing::tunnels::{
    candidate_distances, max_min_distance_feasible, min_max_indegree_orientation, solve_max_min_tunnel_distance_weaving,
    solve_min_max_tunnel_length_exact, solve_min_max_tunnels_weaving, TunnelError, TwoSatInstance,
};

/// Wall-clock limit per objective on the large instance.
const LARGE_LIMIT: Duration = Duration::from_secs(60);
const LARGE_SEGMENTS: usize = 500;
/// Search nodes for the exact tunnel-length search on the large instance.
const LARGE_EXACT_BUDGET: u64 = 200_000;
/// Budget used to provoke exhaustion in criterion 8.
const TINY_BUDGET: u64 = 3;
const SWITCH_CORPUS: usize = 100;
const SWITCH_MAX_CROSSINGS: usize = 14;
const STACKING_CORPUS: usize = 100;
const STACKING_MAX_EDGES: usize = 6;
const TUNNEL_CORPUS: usize = 100;
const TUNNEL_MAX_CROSSINGS: usize = 12;
const ZERO_SWITCH_CORPUS: u64 = 200;
const BUNDLE_TARGET: usize = 4;
const WEAVE_TARGET: usize = 12;
const WEAVE_BUNDLE: usize = 13;

/// (criterion, reason) pairs expected to fail; see the decisions log.
const KNOWN_SHORTFALLS: &[(usize, &str)] =
    &[(9, "weave-grid built from the prose has optimum 8, not the depicted 12")];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn caps() -> OracleCaps {
    OracleCaps::default()
}

fn arr(d: &Drawing) -> Arrangement {
    Arrangement::build(d).expect("generated drawings are valid")
}

fn grid3() -> Arrangement {
    arr(&grid(3, 3, &int(1), &rat(1, 10)))
}

fn oracle(a: &Arrangement, m: Model, o: Objective) -> ObjectiveValue {
    enumerate_optimal_casing(a, m, o, caps()).expect("within caps").value
}

/// Seeded random drawings (segments and graphs alternately) with at least
/// one crossing and at most `max_k` crossings and `max_m` edges.
fn corpus(count: usize, max_k: usize, max_m: usize) -> Vec<(String, Arrangement)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let (label, d) = if seed.is_multiple_of(2) {
            let n = 3 + (seed / 2 % (max_m as u64 - 2).min(6)) as usize;
            (format!("segments({n}, seed {seed})"), random_segments(n, seed, 6.0, 4.0, 9.0))
        } else {
            let m = 4 + (seed / 2 % (max_m as u64 - 3).min(8)) as usize;
            (format!("graph(7, {m}, seed {seed})"), random_graph(7, m, seed, 6.0))
        };
        seed += 1;
        let a = arr(&d);
        let k = a.num_crossings();
        if k >= 1 && k <= max_k && d.num_edges() <= max_m {
            out.push((label, a));
        }
    }
    out
}

/// "min..max (mean)" crossings over a corpus.
fn spread(corpus: &[(String, Arrangement)]) -> String {
    let ks: Vec<usize> = corpus.iter().map(|(_, a)| a.num_crossings()).collect();
    let (lo, hi) = (ks.iter().min().unwrap_or(&0), ks.iter().max().unwrap_or(&0));
    format!("k {lo}..{hi}, mean {:.1}", ks.iter().sum::<usize>() as f64 / ks.len().max(1) as f64)
}

fn criterion_1() -> Outcome {
    // Directions with slopes 1/4 and -1/4 meet at angle 2 arctan(1/4).
    let sin = crossing_angle_sin(&Point::from_ints(4, 1), &Point::from_ints(4, -1)).unwrap();
    let widths = ["1", "0.1", "3/7", "2.5"];
    let mut ok = sin.sin_sq() == &rat(64, 289);
    for w in widths {
        let w = parse_rational(w).unwrap();
        let t = tunnel_length(&w, &sin).as_rational();
        ok &= t == Some(&w * rat(17, 8));
    }
    outcome(ok, format!("sin^2 = {}, tunnel_length(w) = 17w/8 exactly for w in {widths:?}", sin.sin_sq()))
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let mut solvable = 0;
    for seed in 0..ZERO_SWITCH_CORPUS {
        let d = random_segments(3 + (seed % 6) as usize, seed, 10.0, 3.0, 9.0);
        let a = arr(&d);
        let exists = zero_switch_casing(&a).is_some();
        let bip = CrossingGraph::build(&a).is_bipartite();
        let q = odd_face_polygons(&Arrangement::build_unchecked(&degree_one_transform(&d))).len();
        solvable += usize::from(exists);
        if exists != bip || bip != (q == 0) {
            bad.push(seed);
        }
    }
    outcome(
        bad.is_empty(),
        format!("{ZERO_SWITCH_CORPUS} drawings, {solvable} switch-free; disagreements at seeds {bad:?}"),
    )
}

fn criterion_3_and_4(corpus: &[(String, Arrangement)]) -> (Outcome, Outcome) {
    let mut mismatches = Vec::new();
    let mut bound_violations = Vec::new();
    let mut nonzero = 0;
    for (label, a) in corpus {
        let s = solve_min_total_switches_on(a);
        let best = oracle(a, Model::Weaving, Objective::MinTotalSwitches);
        if ObjectiveValue::Count(s.report.total_switches) != best {
            mismatches.push(label.clone());
        }
        nonzero += usize::from(s.report.total_switches > 0);
        if switch_lower_bound(a) > s.report.total_switches {
            bound_violations.push(label.clone());
        }
    }
    let named = [
        ("triangle", triangle(), 1),
        ("two-triangles", two_triangles(), 2),
        ("pentagram", pentagram(), 1),
        ("grid3x3", grid(3, 3, &int(1), &rat(1, 10)), 0),
    ];
    let mut named_ok = true;
    let mut named_vals = Vec::new();
    for (name, d, want) in named {
        let a = arr(&d);
        let got = solve_min_total_switches_on(&a).report.total_switches;
        let o = oracle(&a, Model::Weaving, Objective::MinTotalSwitches);
        named_ok &= got == want && o == ObjectiveValue::Count(want);
        named_vals.push(format!("{name}={got}"));
    }
    (
        outcome(
            mismatches.is_empty() && named_ok,
            format!(
                "{} drawings ({}, {nonzero} need switches) match 2^k enumeration; {}; mismatches {mismatches:?}",
                corpus.len(),
                spread(corpus),
                named_vals.join(", ")
            ),
        ),
        outcome(bound_violations.is_empty(), format!("ceil(o/2) <= optimum on all {}; violations {bound_violations:?}", corpus.len())),
    )
}

fn criterion_5() -> Outcome {
    let objectives = [Objective::MinMaxTunnels, Objective::MinMaxTunnelLength, Objective::MaxMinTunnelDistance];
    let items = corpus(STACKING_CORPUS, usize::MAX, STACKING_MAX_EDGES);
    let mut bad = Vec::new();
    for (label, a) in &items {
        for o in objectives {
            let s = solve_stacking_on(a, o).unwrap();
            if s.value != oracle(a, Model::Stacking, o) {
                bad.push(format!("{label} {o}"));
            }
        }
    }
    outcome(bad.is_empty(), format!(
            "{} drawings with m <= {STACKING_MAX_EDGES} ({}), 3 objectives vs m! enumeration; mismatches {bad:?}",
            items.len(),
            spread(&items)
        ))
}

fn criterion_6(tunnel: &[(String, Arrangement)]) -> Outcome {
    let g = grid3();
    let weave = solve_min_max_tunnels_weaving(&g).value;
    let stack = solve_stacking_on(&g, Objective::MinMaxTunnels).unwrap().value;
    let grid_ok = weave == ObjectiveValue::Count(2)
        && stack == ObjectiveValue::Count(3)
        && oracle(&g, Model::Weaving, Objective::MinMaxTunnels) == weave
        && oracle(&g, Model::Stacking, Objective::MinMaxTunnels) == stack;
    let mut bad = Vec::new();
    for (label, a) in tunnel {
        let o = min_max_indegree_orientation(&CrossingGraph::build(a));
        if ObjectiveValue::Count(o.max_indegree) != oracle(a, Model::Weaving, Objective::MinMaxTunnels) {
            bad.push(label.clone());
        }
    }
    outcome(
        grid_ok && bad.is_empty(),
        format!(
            "grid3x3 weaving {weave} vs stacking {stack}; {} drawings ({}) match enumeration; mismatches {bad:?}",
            tunnel.len(),
            spread(tunnel)
        ),
    )
}

fn close_pairs_instance() -> Arrangement {
    // Edge 3 is crossed by 1, 2, 4, 5 at x = 0, 1, 2, 2.5.
    let mut vertices = vec![(30, Point::from_ints(-1, 0)), (31, Point::from_ints(4, 0))];
    let mut edges = vec![(3, 30, 31)];
    for (id, x) in [(1u64, rat(0, 1)), (2, rat(1, 1)), (4, rat(2, 1)), (5, rat(5, 2))] {
        vertices.push((10 * id, Point::new(x.clone(), int(-1))));
        vertices.push((10 * id + 1, Point::new(x, int(1))));
        edges.push((id, 10 * id, 10 * id + 1));
    }
    arr(&Drawing::new(vertices, edges, rat(1, 10)).unwrap())
}

fn criterion_7(tunnel: &[(String, Arrangement)]) -> Outcome {
    let g = grid3();
    let s = solve_max_min_tunnel_distance_weaving(&g);
    let grid_ok = s.delta_sq == Some(int(4))
        && oracle(&g, Model::Weaving, Objective::MaxMinTunnelDistance) == ObjectiveValue::Distance(Some(int(4)));

    // Decisions over every candidate and the midpoints between them must
    // switch from feasible to infeasible once, at the optimum.
    let mut non_monotone = Vec::new();
    let mut wrong = Vec::new();
    let mut instances: Vec<(&str, &Arrangement)> = vec![("grid3x3", &g)];
    instances.extend(tunnel.iter().map(|(l, a)| (l.as_str(), a)));
    for (label, a) in instances {
        let cand = candidate_distances(a).values;
        let mut probes: Vec<Rational> = Vec::new();
        for (i, c) in cand.iter().enumerate() {
            probes.push(c.clone());
            let next = cand.get(i + 1).cloned().unwrap_or_else(|| c * int(2));
            probes.push((c + next) / int(2));
        }
        let feasible: Vec<bool> = probes.iter().map(|p| max_min_distance_feasible(a, p).is_some()).collect();
        if feasible.windows(2).any(|w| !w[0] && w[1]) {
            non_monotone.push(label.to_string());
        }
        let best = oracle(a, Model::Weaving, Objective::MaxMinTunnelDistance);
        if ObjectiveValue::Distance(solve_max_min_tunnel_distance_weaving(a).delta_sq) != best {
            wrong.push(label.to_string());
        }
    }

    let f = close_pairs_instance();
    let clauses = TwoSatInstance::build(&f, Some(&int(4))).describe(&f);
    let bar = "x\u{304}";
    let expected = format!("({bar}13 \u{2228} {bar}23) \u{2227} ({bar}23 \u{2228} x34) \u{2227} ({bar}23 \u{2228} x35) \u{2227} (x34 \u{2228} x35)");
    let fig_ok = clauses == expected;
    outcome(
        grid_ok && non_monotone.is_empty() && wrong.is_empty() && fig_ok,
        format!(
            "grid3x3 delta* = {}; {} drawings monotone and optimal (bad {non_monotone:?} {wrong:?}); clauses {clauses}",
            ObjectiveValue::Distance(s.delta_sq),
            tunnel.len() + 1
        ),
    )
}

fn criterion_8(tunnel: &[(String, Arrangement)]) -> Outcome {
    let mut bad = Vec::new();
    let mut nodes = 0;
    for (label, a) in tunnel {
        let s = solve_min_max_tunnel_length_exact(a, 10_000_000).expect("small instances fit the budget");
        nodes = nodes.max(s.nodes);
        if ObjectiveValue::Length(s.value) != oracle(a, Model::Weaving, Objective::MinMaxTunnelLength) {
            bad.push(label.clone());
        }
    }
    let exhausted = solve_min_max_tunnel_length_exact(&grid3(), TINY_BUDGET).err();
    let budget_ok = exhausted == Some(TunnelError::BudgetExceeded { budget: TINY_BUDGET });
    outcome(
        bad.is_empty() && budget_ok,
        format!(
            "{} drawings match enumeration (max {nodes} search nodes); budget {TINY_BUDGET} gives {:?}; mismatches {bad:?}",
            tunnel.len(),
            exhausted
        ),
    )
}

fn criterion_9() -> Outcome {
    let small = arr(&bundle_square(1));
    let s = solve_min_total_switches_on(&small);
    let o = oracle(&small, Model::Weaving, Objective::MinTotalSwitches);
    let small_ok = ObjectiveValue::Count(s.report.total_switches) == o;
    let big = solve_min_total_switches_on(&arr(&bundle_square(5)));
    let bundle_ok = big.report.total_switches == BUNDLE_TARGET;

    let w = arr(&weave_grid(WEAVE_BUNDLE));
    let ws = solve_min_total_switches_on(&w);
    let certificate = casing_metrics(&w, &ws.casing).unwrap().total_switches;
    let lb = switch_lower_bound(&w);
    let weave_checked = lb <= certificate && certificate == ws.report.total_switches;
    let weave_on_target = certificate == WEAVE_TARGET;
    outcome(
        small_ok && bundle_ok && weave_checked && weave_on_target,
        format!(
            "bundle-square c=1 (k={}) solver {} = oracle {o}; c=5: {} (target {BUNDLE_TARGET}); \
             weave-grid c={WEAVE_BUNDLE}: lower bound {lb} <= certificate {certificate} (target {WEAVE_TARGET})",
            small.num_crossings(),
            s.report.total_switches,
            big.report.total_switches
        ),
    )
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let a = arr(&random_segments(LARGE_SEGMENTS, 7, 100.0, 5.0, 25.0));
    let setup = t.elapsed();
    let opts = SolveOptions { exact_budget: LARGE_EXACT_BUDGET, allow_heuristic: true };
    let pairs = [
        (Model::Weaving, Objective::MinTotalSwitches),
        (Model::Weaving, Objective::MinMaxTunnels),
        (Model::Weaving, Objective::MinMaxTunnelLength),
        (Model::Weaving, Objective::MaxMinTunnelDistance),
        (Model::Stacking, Objective::MinMaxTunnels),
        (Model::Stacking, Objective::MinMaxTunnelLength),
        (Model::Stacking, Objective::MaxMinTunnelDistance),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, o) in pairs {
        let t = Instant::now();
        let s = solve(&a, m, o, opts).unwrap();
        let dt = t.elapsed();
        ok &= dt < LARGE_LIMIT;
        let tag = if s.optimal { "" } else { " upper bound" };
        parts.push(format!("{m} {o} {:.1}s{tag}", dt.as_secs_f64()));
    }
    outcome(
        ok,
        format!(
            "{LARGE_SEGMENTS} segments, {} crossings (generated and built in {:.1}s): {}",
            a.num_crossings(),
            setup.as_secs_f64(),
            parts.join("; ")
        ),
    )
}

fn main() {
    let switch = corpus(SWITCH_CORPUS, SWITCH_MAX_CROSSINGS, 12);
    let tunnel = corpus(TUNNEL_CORPUS, TUNNEL_MAX_CROSSINGS, 12);
    let (c3, c4) = criterion_3_and_4(&switch);
    let results = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, c3),
        (4, c4),
        (5, criterion_5()),
        (6, criterion_6(&tunnel)),
        (7, criterion_7(&tunnel)),
        (8, criterion_8(&tunnel)),
        (9, criterion_9()),
        (10, criterion_10()),
    ];
    let mut unexpected = Vec::new();
    for (n, r) in &results {
        let known = KNOWN_SHORTFALLS.iter().find(|(k, _)| k == n);
        println!("criterion {n:>2}: {} - {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        match (r.pass, known) {
            (false, Some((_, why))) => println!("              known shortfall: {why}"),
            (false, None) => unexpected.push(format!("criterion {n} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {n} passes; remove it from KNOWN_SHORTFALLS")),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
