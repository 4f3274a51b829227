//! The edge crossing graph, casings and their evaluation.

use std::collections::VecDeque;

use crate::arrangement::Arrangement;
use crate::exact::{RootSum, Rational};
use crate::geometry::EdgeId;

/// One node per drawing edge, one link per crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingGraph {
    /// `(a, b, crossing)` with `a < b`, in crossing id order.
    pub links: Vec<(usize, usize, usize)>,
    /// Neighbours of each node as `(other edge, crossing)`, sorted.
    pub adjacency: Vec<Vec<(usize, usize)>>,
}

impl CrossingGraph {
    pub fn build(arr: &Arrangement) -> Self {
        let m = arr.drawing().num_edges();
        let mut adjacency = vec![Vec::new(); m];
        let mut links = Vec::with_capacity(arr.num_crossings());
        for c in arr.crossings() {
            links.push((c.edge_a, c.edge_b, c.id));
            adjacency[c.edge_a].push((c.edge_b, c.id));
            adjacency[c.edge_b].push((c.edge_a, c.id));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        CrossingGraph { links, adjacency }
    }

    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_links(&self) -> usize {
        self.links.len()
    }

    /// A proper 2-colouring by BFS from the lowest unvisited edge (coloured
    /// `true`), or `None` when the graph has an odd cycle.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.num_nodes();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(true);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &(v, _) in &self.adjacency[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CasingError {
    #[error("casing has {found} entries but the arrangement has {expected} crossings")]
    CountMismatch { expected: usize, found: usize },
    #[error("crossing {crossing}: top edge {edge} is not one of the crossing edges")]
    NotInvolved { crossing: usize, edge: usize },
    #[error("casing names crossing ({0}, {1}) which is not in the drawing")]
    UnknownCrossing(EdgeId, EdgeId),
    #[error("crossing ({0}, {1}) is listed twice")]
    DuplicateCrossing(EdgeId, EdgeId),
}

/// For every crossing (by id), the index of the edge drawn on top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Casing {
    top: Vec<usize>,
}

impl Casing {
    pub fn new(arr: &Arrangement, top: Vec<usize>) -> Result<Self, CasingError> {
        if top.len() != arr.num_crossings() {
            return Err(CasingError::CountMismatch { expected: arr.num_crossings(), found: top.len() });
        }
        for (c, &e) in top.iter().enumerate() {
            if !arr.crossings()[c].involves(e) {
                return Err(CasingError::NotInvolved { crossing: c, edge: e });
            }
        }
        Ok(Casing { top })
    }

    /// Builds a casing from one bit per crossing: `true` puts the
    /// lower-indexed edge on top.
    pub fn from_bits(arr: &Arrangement, first_on_top: impl Fn(usize) -> bool) -> Self {
        let top = arr
            .crossings()
            .iter()
            .map(|c| if first_on_top(c.id) { c.edge_a } else { c.edge_b })
            .collect();
        Casing { top }
    }

    pub fn check(&self, arr: &Arrangement) -> Result<(), CasingError> {
        Casing::new(arr, self.top.clone()).map(|_| ())
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn top(&self, crossing: usize) -> usize {
        self.top[crossing]
    }

    pub fn tops(&self) -> &[usize] {
        &self.top
    }

    pub fn set_top(&mut self, crossing: usize, edge: usize) {
        self.top[crossing] = edge;
    }

    pub fn is_on_top(&self, crossing: usize, edge: usize) -> bool {
        self.top[crossing] == edge
    }

    /// The opposite decision at every crossing.
    pub fn flipped(&self, arr: &Arrangement) -> Casing {
        let top = self.top.iter().enumerate().map(|(c, &e)| arr.crossings()[c].other(e)).collect();
        Casing { top }
    }
}

/// One node per (edge, crossing) incidence. Incidence `2c` is crossing `c`
/// seen from its lower edge, `2c + 1` from its higher edge.
#[derive(Debug, Clone)]
pub struct ConstraintGraph {
    /// `(edge, crossing)` per incidence.
    pub incidences: Vec<(usize, usize)>,
    /// Pairs that must differ, one per crossing.
    pub hard: Vec<(usize, usize)>,
    /// `(first, second, portion)`: consecutive incidences along an edge that
    /// should agree, with the portion between them.
    pub soft: Vec<(usize, usize, usize)>,
    /// Soft links of each edge, in order along it.
    pub edge_soft: Vec<Vec<usize>>,
}

pub fn incidence(arr: &Arrangement, crossing: usize, edge: usize) -> usize {
    let c = &arr.crossings()[crossing];
    debug_assert!(c.involves(edge));
    2 * crossing + usize::from(edge != c.edge_a)
}

impl ConstraintGraph {
    pub fn build(arr: &Arrangement) -> Self {
        let k = arr.num_crossings();
        let mut incidences = Vec::with_capacity(2 * k);
        let mut hard = Vec::with_capacity(k);
        for c in arr.crossings() {
            incidences.push((c.edge_a, c.id));
            incidences.push((c.edge_b, c.id));
            hard.push((2 * c.id, 2 * c.id + 1));
        }
        let m = arr.drawing().num_edges();
        let mut soft = Vec::new();
        let mut edge_soft = vec![Vec::new(); m];
        for (e, list) in edge_soft.iter_mut().enumerate() {
            let cs = arr.edge_crossings(e);
            let portions = arr.edge_portions(e);
            for i in 1..cs.len() {
                list.push(soft.len());
                soft.push((incidence(arr, cs[i - 1], e), incidence(arr, cs[i], e), portions[i]));
            }
        }
        ConstraintGraph { incidences, hard, soft, edge_soft }
    }

    /// "This edge is on top here", per incidence.
    pub fn values(&self, casing: &Casing) -> Vec<bool> {
        self.incidences.iter().map(|&(e, c)| casing.is_on_top(c, e)).collect()
    }

    /// Indices of soft links the casing violates, i.e. its switches.
    pub fn violated(&self, casing: &Casing) -> Vec<usize> {
        let vals = self.values(casing);
        (0..self.soft.len()).filter(|&s| vals[self.soft[s].0] != vals[self.soft[s].1]).collect()
    }
}

/// Metrics of one edge under a casing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMetrics {
    pub edge: EdgeId,
    pub switches: usize,
    pub tunnels: usize,
    pub bridges: usize,
    pub tunnel_length: RootSum,
    /// Squared distance between the closest two tunnels, `None` with fewer
    /// than two tunnels.
    pub min_tunnel_distance_sq: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveReport {
    pub per_edge: Vec<EdgeMetrics>,
    pub total_switches: usize,
    pub max_switches: usize,
    pub max_tunnels: usize,
    pub max_tunnel_length: RootSum,
    pub min_tunnel_distance_sq: Option<Rational>,
    /// Odd face polygons of the degree-one drawing, when computed.
    pub odd_face_count: Option<usize>,
    pub switch_lower_bound: Option<usize>,
}

impl ObjectiveReport {
    /// Minimum tunnel distance as a float; infinite without any pair of
    /// tunnels on one edge.
    pub fn min_tunnel_distance(&self) -> f64 {
        self.min_tunnel_distance_sq.as_ref().map_or(f64::INFINITY, |d| crate::exact::to_f64(d).sqrt())
    }
}

/// Per-edge and aggregate metrics of `casing`. The odd-face fields are left
/// empty; see [`crate::switches::full_report`].
pub fn casing_metrics(arr: &Arrangement, casing: &Casing) -> Result<ObjectiveReport, CasingError> {
    casing.check(arr)?;
    let d = arr.drawing();
    let mut per_edge = Vec::with_capacity(d.num_edges());
    for e in 0..d.num_edges() {
        let cs = arr.edge_crossings(e);
        let on_top: Vec<bool> = cs.iter().map(|&c| casing.is_on_top(c, e)).collect();
        let switches = on_top.windows(2).filter(|w| w[0] != w[1]).count();
        let mut tunnel_length = RootSum::zero();
        let mut prev: Option<usize> = None;
        let mut min_sq: Option<Rational> = None;
        let mut tunnels = 0;
        for (i, &c) in cs.iter().enumerate() {
            if on_top[i] {
                continue;
            }
            tunnels += 1;
            tunnel_length.add(&arr.crossings()[c].tunnel);
            if let Some(p) = prev {
                let dsq = arr.crossings()[p].point.dist_sq(&arr.crossings()[c].point);
                if min_sq.as_ref().is_none_or(|m| &dsq < m) {
                    min_sq = Some(dsq);
                }
            }
            prev = Some(c);
        }
        per_edge.push(EdgeMetrics {
            edge: d.edges()[e].id,
            switches,
            tunnels,
            bridges: cs.len() - tunnels,
            tunnel_length,
            min_tunnel_distance_sq: min_sq,
        });
    }
    let total_switches = per_edge.iter().map(|m| m.switches).sum();
    let max_switches = per_edge.iter().map(|m| m.switches).max().unwrap_or(0);
    let max_tunnels = per_edge.iter().map(|m| m.tunnels).max().unwrap_or(0);
    let max_tunnel_length = per_edge.iter().map(|m| m.tunnel_length.clone()).max().unwrap_or_else(RootSum::zero);
    let min_tunnel_distance_sq = per_edge.iter().filter_map(|m| m.min_tunnel_distance_sq.clone()).min();
    Ok(ObjectiveReport {
        per_edge,
        total_switches,
        max_switches,
        max_tunnels,
        max_tunnel_length,
        min_tunnel_distance_sq,
        odd_face_count: None,
        switch_lower_bound: None,
    })
}

/// A casing without switches, if one exists: the edges of one colour class
/// of the crossing graph go on top everywhere.
pub fn zero_switch_casing(arr: &Arrangement) -> Option<Casing> {
    let colour = CrossingGraph::build(arr).two_coloring()?;
    let top = arr
        .crossings()
        .iter()
        .map(|c| if colour[c.edge_a] { c.edge_a } else { c.edge_b })
        .collect();
    Some(Casing { top })
}
