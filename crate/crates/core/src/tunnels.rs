//! Tunnel objectives in the weaving model.

use std::cmp::Ordering;

use crate::arrangement::Arrangement;
use crate::crossing_graph::{casing_metrics, Casing, CrossingGraph, ObjectiveReport};
use crate::exact::{Rational, RootSum};
use crate::flow::FlowNetwork;
use crate::objective::{Objective, ObjectiveValue};
use crate::stacking::solve_stacking_on;
use crate::twosat::{solve_2sat, Lit};

/// For each crossing-graph link (crossing id), the node that receives the
/// tunnel; the other endpoint is on top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub tunnel_side: Vec<usize>,
    pub max_indegree: usize,
}

impl Orientation {
    pub fn indegrees(&self, nodes: usize) -> Vec<usize> {
        let mut deg = vec![0; nodes];
        for &t in &self.tunnel_side {
            deg[t] += 1;
        }
        deg
    }
}

/// Tries to orient every link so that no node gets more than `cap`
/// incoming links.
fn orient_with_cap(g: &CrossingGraph, cap: usize) -> Option<Vec<usize>> {
    let (n, k) = (g.num_nodes(), g.num_links());
    let source = n + k;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + k + 2);
    let mut choice = Vec::with_capacity(k);
    for (l, &(a, b, _)) in g.links.iter().enumerate() {
        net.add_arc(source, n + l, 1);
        choice.push((net.add_arc(n + l, a, 1), net.add_arc(n + l, b, 1)));
    }
    for v in 0..n {
        net.add_arc(v, sink, cap as i64);
    }
    if net.max_flow(source, sink) < k as i64 {
        return None;
    }
    Some(
        g.links
            .iter()
            .zip(&choice)
            .map(|(&(a, b, _), &(to_a, _))| if net.flow(to_a) == 1 { a } else { b })
            .collect(),
    )
}

/// Orientation minimising the maximum indegree, by binary search on the
/// cap with a flow feasibility test.
pub fn min_max_indegree_orientation(g: &CrossingGraph) -> Orientation {
    let (n, k) = (g.num_nodes(), g.num_links());
    if k == 0 {
        return Orientation { tunnel_side: Vec::new(), max_indegree: 0 };
    }
    let mut lo = k.div_ceil(n);
    let mut hi = g.adjacency.iter().map(Vec::len).max().unwrap_or(0);
    let mut best = orient_with_cap(g, hi).expect("the maximum degree is always enough");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match orient_with_cap(g, mid) {
            Some(o) => {
                best = o;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let mut o = Orientation { tunnel_side: best, max_indegree: 0 };
    o.max_indegree = o.indegrees(n).into_iter().max().unwrap_or(0);
    debug_assert_eq!(o.max_indegree, lo);
    o
}

#[derive(Debug, Clone)]
pub struct WeavingSolution {
    pub casing: Casing,
    pub report: ObjectiveReport,
    pub value: ObjectiveValue,
}

pub fn solve_min_max_tunnels_weaving(arr: &Arrangement) -> WeavingSolution {
    let g = CrossingGraph::build(arr);
    let o = min_max_indegree_orientation(&g);
    let top = arr.crossings().iter().map(|c| c.other(o.tunnel_side[c.id])).collect();
    let casing = Casing::new(arr, top).expect("orientation covers every crossing");
    let report = casing_metrics(arr, &casing).unwrap();
    assert_eq!(report.max_tunnels, o.max_indegree);
    WeavingSolution { value: ObjectiveValue::Count(report.max_tunnels), casing, report }
}

/// Distinct squared distances between two crossings on a common edge,
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub values: Vec<Rational>,
    /// Crossing pairs sharing an edge, with repetitions.
    pub pairs: usize,
}

pub fn candidate_distances(arr: &Arrangement) -> CandidateSet {
    let mut values = Vec::new();
    for e in 0..arr.drawing().num_edges() {
        let cs = arr.edge_crossings(e);
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                values.push(arr.crossings()[cs[i]].point.dist_sq(&arr.crossings()[cs[j]].point));
            }
        }
    }
    let pairs = values.len();
    values.sort();
    values.dedup();
    CandidateSet { values, pairs }
}

/// One variable per crossing (true: the lower-indexed edge is on top), and
/// for every edge and every pair of its crossings that are too close, a
/// clause saying the edge may not tunnel at both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSatInstance {
    pub num_vars: usize,
    pub clauses: Vec<(Lit, Lit)>,
}

impl TwoSatInstance {
    /// Clauses for pairs at squared distance `< limit`; `None` forbids
    /// every pair.
    pub fn build(arr: &Arrangement, limit: Option<&Rational>) -> Self {
        let mut clauses = Vec::new();
        // "edge e is on top at crossing c"
        let bridge = |c: usize, e: usize| Lit { var: c, positive: arr.crossings()[c].edge_a == e };
        for e in 0..arr.drawing().num_edges() {
            let cs = arr.edge_crossings(e);
            for i in 0..cs.len() {
                for j in i + 1..cs.len() {
                    let close = limit.is_none_or(|l| {
                        &arr.crossings()[cs[i]].point.dist_sq(&arr.crossings()[cs[j]].point) < l
                    });
                    if close {
                        clauses.push((bridge(cs[i], e), bridge(cs[j], e)));
                    }
                }
            }
        }
        TwoSatInstance { num_vars: arr.num_crossings(), clauses }
    }

    pub fn solve(&self, arr: &Arrangement) -> Option<Casing> {
        let a = solve_2sat(self.num_vars, &self.clauses)?;
        Some(Casing::from_bits(arr, |c| a[c]))
    }

    /// Clauses in the notation `(x̄13 ∨ x34)`, variables named by the two
    /// edge ids of their crossing.
    pub fn describe(&self, arr: &Arrangement) -> String {
        let d = arr.drawing();
        let lit = |l: Lit| {
            let c = &arr.crossings()[l.var];
            let name = format!("{}{}", d.edges()[c.edge_a].id, d.edges()[c.edge_b].id);
            if l.positive {
                format!("x{name}")
            } else {
                format!("x\u{304}{name}")
            }
        };
        self.clauses
            .iter()
            .map(|&(a, b)| format!("({} \u{2228} {})", lit(a), lit(b)))
            .collect::<Vec<_>>()
            .join(" \u{2227} ")
    }
}

/// A casing in which no edge has two tunnels at squared distance `< limit`.
pub fn max_min_distance_feasible(arr: &Arrangement, limit: &Rational) -> Option<Casing> {
    TwoSatInstance::build(arr, Some(limit)).solve(arr)
}

#[derive(Debug, Clone)]
pub struct DistanceSolution {
    pub casing: Casing,
    pub report: ObjectiveReport,
    /// Optimal squared distance; `None` when some casing gives no edge two
    /// tunnels.
    pub delta_sq: Option<Rational>,
    pub candidates: usize,
}

pub fn solve_max_min_tunnel_distance_weaving(arr: &Arrangement) -> DistanceSolution {
    let cand = candidate_distances(arr);
    let finish = |casing: Casing, delta_sq: Option<Rational>| {
        let report = casing_metrics(arr, &casing).unwrap();
        assert_eq!(report.min_tunnel_distance_sq, delta_sq, "decision casing must attain the optimum");
        DistanceSolution { casing, report, delta_sq, candidates: cand.values.len() }
    };
    if let Some(c) = TwoSatInstance::build(arr, None).solve(arr) {
        return finish(c, None);
    }
    // Feasible at values[lo] (nothing is closer than the smallest
    // candidate); infeasible past the last.
    let (mut lo, mut hi) = (0, cand.values.len());
    let mut best = max_min_distance_feasible(arr, &cand.values[0]).expect("no clause at the smallest candidate");
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        match max_min_distance_feasible(arr, &cand.values[mid]) {
            Some(c) => {
                best = c;
                lo = mid;
            }
            None => hi = mid,
        }
    }
    finish(best, Some(cand.values[lo].clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TunnelError {
    #[error("search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone)]
pub struct LengthSolution {
    pub casing: Casing,
    pub report: ObjectiveReport,
    pub value: RootSum,
    /// False for the stacking fallback, which only gives an upper bound.
    pub exact: bool,
    pub nodes: u64,
}

struct Search<'a> {
    arr: &'a Arrangement,
    length: Vec<f64>,
    load: Vec<f64>,
    tunnels: Vec<Vec<usize>>,
    tunnel_side: Vec<usize>,
    best: RootSum,
    best_f: f64,
    best_sides: Option<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn exact_load(&self, e: usize, extra: Option<usize>) -> RootSum {
        let mut s = RootSum::zero();
        for &c in self.tunnels[e].iter().chain(extra.iter()) {
            s.add(&self.arr.crossings()[c].tunnel);
        }
        s
    }

    /// Whether adding crossing `c` as a tunnel of `e` keeps every load
    /// strictly below the incumbent.
    fn below_best(&self, e: usize, c: usize) -> bool {
        let v = self.load[e] + self.length[c];
        let margin = 1e-9 * (1.0 + self.best_f.abs());
        if v < self.best_f - margin {
            true
        } else if v > self.best_f + margin {
            false
        } else {
            self.exact_load(e, Some(c)) < self.best
        }
    }

    fn go(&mut self, i: usize) -> Result<(), TunnelError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(TunnelError::BudgetExceeded { budget: self.budget });
        }
        let k = self.arr.num_crossings();
        if i == k {
            let m = self.arr.drawing().num_edges();
            let value = (0..m).map(|e| self.exact_load(e, None)).max().unwrap_or_else(RootSum::zero);
            if value < self.best {
                self.best_f = value.to_f64();
                self.best = value;
                self.best_sides = Some(self.tunnel_side.clone());
            }
            return Ok(());
        }
        let c = &self.arr.crossings()[i];
        let (a, b) = (c.edge_a, c.edge_b);
        let mut options = [a, b];
        if self.load[b] + self.length[i] < self.load[a] + self.length[i] {
            options.swap(0, 1);
        }
        for e in options {
            if !self.below_best(e, i) {
                continue;
            }
            self.load[e] += self.length[i];
            self.tunnels[e].push(i);
            self.tunnel_side[i] = e;
            let r = self.go(i + 1);
            self.tunnels[e].pop();
            self.load[e] -= self.length[i];
            r?;
        }
        Ok(())
    }
}

/// Exact minimum over casings of the largest per-edge total tunnel length,
/// by depth-first branch and bound seeded with the stacking greedy.
/// Fails once more than `budget` search nodes have been visited.
pub fn solve_min_max_tunnel_length_exact(arr: &Arrangement, budget: u64) -> Result<LengthSolution, TunnelError> {
    let seed = heuristic_min_max_tunnel_length(arr);
    let m = arr.drawing().num_edges();
    let k = arr.num_crossings();
    let mut s = Search {
        arr,
        length: arr.crossings().iter().map(|c| c.tunnel.to_f64()).collect(),
        load: vec![0.0; m],
        tunnels: vec![Vec::new(); m],
        tunnel_side: vec![0; k],
        best_f: seed.value.to_f64(),
        best: seed.value.clone(),
        best_sides: None,
        nodes: 0,
        budget,
    };
    s.go(0)?;
    let nodes = s.nodes;
    let casing = match s.best_sides {
        Some(sides) => {
            let top = arr.crossings().iter().map(|c| c.other(sides[c.id])).collect();
            Casing::new(arr, top).unwrap()
        }
        None => seed.casing,
    };
    let report = casing_metrics(arr, &casing).unwrap();
    let value = report.max_tunnel_length.clone();
    debug_assert_eq!(value.cmp(&s.best), Ordering::Equal);
    Ok(LengthSolution { casing, report, value, exact: true, nodes })
}

/// Upper bound from the stacking greedy; any stacking is a weaving casing.
pub fn heuristic_min_max_tunnel_length(arr: &Arrangement) -> LengthSolution {
    let st = solve_stacking_on(arr, Objective::MinMaxTunnelLength).expect("tunnel objective");
    let value = st.report.max_tunnel_length.clone();
    LengthSolution { casing: st.casing, report: st.report, value, exact: false, nodes: 0 }
}
