//! Minimum total switches in the weaving model.
//!
//! Odd face polygons of the degree-one drawing are paired up (or sent to the
//! unbounded face) by a minimum weight perfect matching over dual BFS
//! distances; breaking the portions along the matched dual paths leaves a
//! parity-consistent constraint graph whose 2-colouring is the casing.

use std::collections::VecDeque;

use crate::arrangement::{Arrangement, ArrangementError, PortionKind, UNBOUNDED};
use crate::crossing_graph::{casing_metrics, zero_switch_casing, Casing, ConstraintGraph, ObjectiveReport};
use crate::geometry::{degree_one_transform, Drawing};
use crate::matching::min_weight_perfect_matching;

/// Odd faces of an arrangement (face ids, ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddFaceSet {
    pub faces: Vec<usize>,
}

impl OddFaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

pub fn odd_face_polygons(arr: &Arrangement) -> OddFaceSet {
    OddFaceSet { faces: arr.face_records().into_iter().filter(|r| r.is_odd).map(|r| r.face).collect() }
}

/// Number of odd face polygons after the degree-one transform.
pub fn odd_face_count(d: &Drawing) -> usize {
    odd_face_polygons(&Arrangement::build_unchecked(&degree_one_transform(d))).len()
}

/// `⌈o/2⌉` for the `o` odd face polygons of the degree-one transform.
pub fn switch_lower_bound(arr: &Arrangement) -> usize {
    odd_face_count(arr.drawing()).div_ceil(2)
}

/// Face adjacency across `between-crossings` portions.
#[derive(Debug, Clone)]
pub struct DualGraph {
    /// `(neighbour face, portion)` per face, in portion order.
    pub adjacency: Vec<Vec<(usize, usize)>>,
}

/// Single-source BFS result over the dual graph.
#[derive(Debug, Clone)]
pub struct DualTree {
    pub source: usize,
    pub dist: Vec<Option<u32>>,
    parent: Vec<Option<(usize, usize)>>,
}

impl DualTree {
    /// Portions crossed on the tree path from the source to `target`.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        self.dist[target]?;
        let mut out = Vec::new();
        let mut f = target;
        while let Some((prev, portion)) = self.parent[f] {
            out.push(portion);
            f = prev;
        }
        out.reverse();
        Some(out)
    }
}

impl DualGraph {
    pub fn build(arr: &Arrangement) -> Self {
        let mut adjacency = vec![Vec::new(); arr.faces().len()];
        for p in arr.portions() {
            if p.kind == PortionKind::BetweenCrossings && p.left_face != p.right_face {
                adjacency[p.left_face].push((p.right_face, p.id));
                adjacency[p.right_face].push((p.left_face, p.id));
            }
        }
        DualGraph { adjacency }
    }

    pub fn bfs(&self, source: usize) -> DualTree {
        let n = self.adjacency.len();
        let mut dist = vec![None; n];
        let mut parent = vec![None; n];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(f) = queue.pop_front() {
            let df = dist[f].unwrap();
            for &(g, p) in &self.adjacency[f] {
                if dist[g].is_none() {
                    dist[g] = Some(df + 1);
                    parent[g] = Some((f, p));
                    queue.push_back(g);
                }
            }
        }
        DualTree { source, dist, parent }
    }
}

/// Distances between the odd faces and from each to the unbounded face.
#[derive(Debug, Clone)]
pub struct DualDistances {
    pub odd: OddFaceSet,
    /// `between[i][j]` for odd faces `i`, `j` (indices into `odd.faces`).
    pub between: Vec<Vec<Option<u32>>>,
    pub to_unbounded: Vec<Option<u32>>,
    pub trees: Vec<DualTree>,
}

pub fn dual_distances(arr: &Arrangement, odd: &OddFaceSet) -> DualDistances {
    let dual = DualGraph::build(arr);
    let trees: Vec<DualTree> = odd.faces.iter().map(|&f| dual.bfs(f)).collect();
    let between = trees.iter().map(|t| odd.faces.iter().map(|&g| t.dist[g]).collect()).collect();
    let to_unbounded = trees.iter().map(|t| t.dist[UNBOUNDED]).collect();
    DualDistances { odd: odd.clone(), between, to_unbounded, trees }
}

/// Node of the matching instance: odd face `i` or its outer copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatchNode {
    Face(usize),
    Outer(usize),
}

impl MatchNode {
    fn index(self) -> usize {
        match self {
            MatchNode::Face(i) => 2 * i,
            MatchNode::Outer(i) => 2 * i + 1,
        }
    }

    fn from_index(x: usize) -> Self {
        if x.is_multiple_of(2) {
            MatchNode::Face(x / 2)
        } else {
            MatchNode::Outer(x / 2)
        }
    }
}

/// `q` odd-face nodes, `q` outer copies. Face-face weight is the dual
/// distance, face `i` to outer copy `i` the distance to the unbounded face,
/// outer copies form a zero-weight clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingInstance {
    pub q: usize,
    pub edges: Vec<(MatchNode, MatchNode, u32)>,
}

impl MatchingInstance {
    pub fn from_distances(dist: &DualDistances) -> Self {
        let q = dist.odd.len();
        let mut edges = Vec::new();
        for i in 0..q {
            for j in i + 1..q {
                if let Some(d) = dist.between[i][j] {
                    edges.push((MatchNode::Face(i), MatchNode::Face(j), d));
                }
            }
            if let Some(d) = dist.to_unbounded[i] {
                edges.push((MatchNode::Face(i), MatchNode::Outer(i), d));
            }
            for j in i + 1..q {
                edges.push((MatchNode::Outer(i), MatchNode::Outer(j), 0));
            }
        }
        MatchingInstance { q, edges }
    }

    /// Minimum weight perfect matching. Among optimal matchings, pairs with
    /// the unbounded face are preferred over face-face pairs.
    pub fn solve(&self) -> Option<(Vec<(MatchNode, MatchNode)>, u64)> {
        if self.q == 0 {
            return Some((Vec::new(), 0));
        }
        // Each face-face pair costs one extra unit at a scale no tie
        // difference can reach.
        let scale = self.q as i64 + 1;
        let edges: Vec<(usize, usize, i64)> = self
            .edges
            .iter()
            .map(|&(a, b, w)| {
                let bump = matches!((a, b), (MatchNode::Face(_), MatchNode::Face(_))) as i64;
                (a.index(), b.index(), w as i64 * scale + bump)
            })
            .collect();
        let (mate, _) = min_weight_perfect_matching(2 * self.q, &edges)?;
        let mut weight = std::collections::HashMap::new();
        for &(a, b, w) in &self.edges {
            let key = (a.index().min(b.index()), a.index().max(b.index()));
            let e = weight.entry(key).or_insert(w);
            *e = (*e).min(w);
        }
        let mut pairs = Vec::new();
        let mut total = 0u64;
        for x in 0..2 * self.q {
            if x < mate[x] {
                let (a, b) = (MatchNode::from_index(x), MatchNode::from_index(mate[x]));
                total += weight[&(x, mate[x])] as u64;
                pairs.push((a, b));
            }
        }
        Some((pairs, total))
    }
}

/// Result of the exact MinTotalSwitches solver.
#[derive(Debug, Clone)]
pub struct SwitchSolution {
    pub casing: Casing,
    pub report: ObjectiveReport,
    pub odd_faces: usize,
    pub matching: Vec<(MatchNode, MatchNode)>,
    /// Portions of the degree-one arrangement that carry a switch.
    pub breaks: Vec<usize>,
}

/// Colours the constraint graph with the soft links in `broken` dropped.
/// Each component is rooted at its lowest incidence with value "on top".
/// Panics if some cycle still has odd parity.
fn colour_constraints(arr: &Arrangement, broken: &[bool]) -> Casing {
    let cg = ConstraintGraph::build(arr);
    let n = cg.incidences.len();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for &(a, b) in &cg.hard {
        adj[a].push((b, true));
        adj[b].push((a, true));
    }
    for &(a, b, portion) in &cg.soft {
        if !broken[portion] {
            adj[a].push((b, false));
            adj[b].push((a, false));
        }
    }
    let mut val: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if val[root].is_some() {
            continue;
        }
        val[root] = Some(true);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let vu = val[u].unwrap();
            for &(v, differ) in &adj[u] {
                let want = vu ^ differ;
                match val[v] {
                    None => {
                        val[v] = Some(want);
                        queue.push_back(v);
                    }
                    Some(x) => assert_eq!(x, want, "odd parity cycle survives the breaks"),
                }
            }
        }
    }
    Casing::from_bits(arr, |c| val[2 * c].unwrap())
}

/// Exact minimum total number of switches in the weaving model.
pub fn solve_min_total_switches(d: &Drawing) -> Result<SwitchSolution, ArrangementError> {
    let arr = Arrangement::build(d)?;
    Ok(solve_min_total_switches_on(&arr))
}

pub fn solve_min_total_switches_on(arr: &Arrangement) -> SwitchSolution {
    let reduced = Arrangement::build_unchecked(&degree_one_transform(arr.drawing()));
    debug_assert!(reduced
        .crossings()
        .iter()
        .zip(arr.crossings())
        .all(|(a, b)| (a.edge_a, a.edge_b) == (b.edge_a, b.edge_b)));
    let odd = odd_face_polygons(&reduced);
    let q = odd.len();
    let finish = |casing: Casing, matching, breaks| {
        let mut report = casing_metrics(arr, &casing).expect("casing covers the arrangement");
        report.odd_face_count = Some(q);
        report.switch_lower_bound = Some(q.div_ceil(2));
        SwitchSolution { casing, report, odd_faces: q, matching, breaks }
    };
    if q == 0 {
        let casing = zero_switch_casing(arr).expect("no odd face polygon means a bipartite crossing graph");
        return finish(casing, Vec::new(), Vec::new());
    }
    let dist = dual_distances(&reduced, &odd);
    let instance = MatchingInstance::from_distances(&dist);
    let (pairs, weight) = instance.solve().expect("every odd face reaches another odd face or the unbounded face");
    let mut broken = vec![false; reduced.portions().len()];
    for &(a, b) in &pairs {
        let path = match (a, b) {
            (MatchNode::Face(i), MatchNode::Face(j)) => dist.trees[i].path_to(odd.faces[j]),
            (MatchNode::Face(i), MatchNode::Outer(_)) | (MatchNode::Outer(_), MatchNode::Face(i)) => {
                dist.trees[i].path_to(UNBOUNDED)
            }
            _ => continue,
        };
        for p in path.unwrap() {
            broken[p] ^= true;
        }
    }
    let breaks: Vec<usize> = (0..broken.len()).filter(|&p| broken[p]).collect();
    let casing = colour_constraints(&reduced, &broken);
    let casing = Casing::new(arr, casing.tops().to_vec()).expect("degree-one transform keeps crossing ids");
    let sol = finish(casing, pairs, breaks);
    assert_eq!(sol.report.total_switches as u64, weight, "switches must equal the matching weight");
    sol
}

/// [`casing_metrics`] plus the odd-face context fields.
pub fn full_report(arr: &Arrangement, casing: &Casing) -> Result<ObjectiveReport, crate::crossing_graph::CasingError> {
    let mut r = casing_metrics(arr, casing)?;
    let o = odd_face_count(arr.drawing());
    r.odd_face_count = Some(o);
    r.switch_lower_bound = Some(o.div_ceil(2));
    Ok(r)
}
