//! Greedy bottom-up stacking for the three tunnel objectives.
//!
//! The edge that fares best when placed at the bottom goes first; every
//! remaining edge it crosses loses that crossing from its tunnel set, and
//! the process repeats on the rest.

use std::cmp::Ordering;

use crate::arrangement::{Arrangement, ArrangementError};
use crate::crossing_graph::{casing_metrics, Casing, ObjectiveReport};
use crate::exact::{Point, Rational, RootSum};
use crate::geometry::Drawing;
use crate::objective::{Objective, ObjectiveValue};

/// Edge indices, bottom first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackingOrder {
    pub bottom_first: Vec<usize>,
}

impl StackingOrder {
    /// Height of each edge (0 = bottom).
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.bottom_first.len()];
        for (r, &e) in self.bottom_first.iter().enumerate() {
            rank[e] = r;
        }
        rank
    }

    /// At each crossing the higher edge is on top.
    pub fn casing(&self, arr: &Arrangement) -> Casing {
        let rank = self.ranks();
        Casing::from_bits(arr, |c| {
            let x = &arr.crossings()[c];
            rank[x.edge_a] > rank[x.edge_b]
        })
    }
}

/// Binary heap over keys `0..n` with position tracking, so a key can be
/// re-sifted after its priority changes. `better(a, b)` is true when `a`
/// should come out before `b`.
pub(crate) struct IndexedHeap {
    heap: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl IndexedHeap {
    pub(crate) fn new(n: usize, better: &impl Fn(usize, usize) -> bool) -> Self {
        let mut h = IndexedHeap { heap: (0..n).collect(), pos: (0..n).map(Some).collect() };
        for i in (0..n / 2).rev() {
            h.sift_down(i, better);
        }
        h
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i]] = Some(i);
        self.pos[self.heap[j]] = Some(j);
    }

    fn sift_up(&mut self, mut i: usize, better: &impl Fn(usize, usize) -> bool) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !better(self.heap[i], self.heap[parent]) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize, better: &impl Fn(usize, usize) -> bool) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && better(self.heap[l], self.heap[best]) {
                best = l;
            }
            if r < self.heap.len() && better(self.heap[r], self.heap[best]) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    pub(crate) fn pop(&mut self, better: &impl Fn(usize, usize) -> bool) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.len() - 1;
        self.swap(0, last);
        self.heap.pop();
        self.pos[top] = None;
        if !self.heap.is_empty() {
            self.sift_down(0, better);
        }
        Some(top)
    }

    /// Restores the heap after `key`'s priority changed in either direction.
    pub(crate) fn update(&mut self, key: usize, better: &impl Fn(usize, usize) -> bool) {
        if let Some(i) = self.pos[key] {
            self.sift_up(i, better);
            let i = self.pos[key].unwrap();
            self.sift_down(i, better);
        }
    }
}

#[derive(Debug, Clone, Default)]
struct GapNode {
    min_sq: Option<Rational>,
    first: Option<usize>,
    last: Option<usize>,
}

/// Live crossing positions along one edge with the minimum squared gap
/// between consecutive live positions. Removal is `O(log k)`.
#[derive(Debug, Clone)]
pub struct EdgeGapStructure {
    points: Vec<Point>,
    size: usize,
    tree: Vec<GapNode>,
    alive: usize,
}

impl EdgeGapStructure {
    /// `points` in order along the edge.
    pub fn new(points: Vec<Point>) -> Self {
        let size = points.len().next_power_of_two().max(1);
        let mut s = EdgeGapStructure { alive: points.len(), points, size, tree: vec![GapNode::default(); 2 * size] };
        for i in 0..s.points.len() {
            s.tree[size + i] = GapNode { min_sq: None, first: Some(i), last: Some(i) };
        }
        for i in (1..size).rev() {
            s.tree[i] = s.merge(&s.tree[2 * i], &s.tree[2 * i + 1]);
        }
        s
    }

    fn merge(&self, l: &GapNode, r: &GapNode) -> GapNode {
        let mut min_sq = match (&l.min_sq, &r.min_sq) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        if let (Some(a), Some(b)) = (l.last, r.first) {
            let gap = self.points[a].dist_sq(&self.points[b]);
            if min_sq.as_ref().is_none_or(|m| &gap < m) {
                min_sq = Some(gap);
            }
        }
        GapNode { min_sq, first: l.first.or(r.first), last: r.last.or(l.last) }
    }

    pub fn remove(&mut self, i: usize) {
        let mut x = self.size + i;
        if self.tree[x].first.is_none() {
            return;
        }
        self.alive -= 1;
        self.tree[x] = GapNode::default();
        while x > 1 {
            x /= 2;
            self.tree[x] = self.merge(&self.tree[2 * x], &self.tree[2 * x + 1]);
        }
    }

    /// `None` (infinite) with fewer than two live positions.
    pub fn min_gap_sq(&self) -> Option<&Rational> {
        self.tree[1].min_sq.as_ref()
    }

    pub fn len(&self) -> usize {
        self.alive
    }

    pub fn is_empty(&self) -> bool {
        self.alive == 0
    }
}

/// What each edge would score if it were placed at the very bottom.
pub fn bottom_values(arr: &Arrangement, objective: Objective) -> Vec<ObjectiveValue> {
    let m = arr.drawing().num_edges();
    (0..m)
        .map(|e| {
            let cs = arr.edge_crossings(e);
            match objective {
                Objective::MinMaxTunnels => ObjectiveValue::Count(cs.len()),
                Objective::MinMaxTunnelLength => {
                    let mut sum = RootSum::zero();
                    for &c in cs {
                        sum.add(&arr.crossings()[c].tunnel);
                    }
                    ObjectiveValue::Length(sum)
                }
                Objective::MaxMinTunnelDistance => ObjectiveValue::Distance(
                    cs.windows(2).map(|w| arr.crossings()[w[0]].point.dist_sq(&arr.crossings()[w[1]].point)).min(),
                ),
                other => panic!("{other} has no stacking greedy"),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StackingError {
    #[error("{0} is not a tunnel objective; in the stacking model it is an open problem")]
    Unsupported(Objective),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Debug, Clone)]
pub struct StackingSolution {
    pub order: StackingOrder,
    pub casing: Casing,
    pub report: ObjectiveReport,
    pub value: ObjectiveValue,
}

enum EdgeState {
    Count(Vec<usize>),
    Length(Vec<RootSum>),
    Gaps(Vec<EdgeGapStructure>),
}

impl EdgeState {
    fn value(&self, e: usize) -> ObjectiveValue {
        match self {
            EdgeState::Count(v) => ObjectiveValue::Count(v[e]),
            EdgeState::Length(v) => ObjectiveValue::Length(v[e].clone()),
            EdgeState::Gaps(v) => ObjectiveValue::Distance(v[e].min_gap_sq().cloned()),
        }
    }

    fn cmp(&self, a: usize, b: usize) -> Ordering {
        match self {
            EdgeState::Count(v) => v[a].cmp(&v[b]),
            EdgeState::Length(v) => v[a].cmp(&v[b]),
            EdgeState::Gaps(v) => match (v[a].min_gap_sq(), v[b].min_gap_sq()) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(x), Some(y)) => y.cmp(x),
            },
        }
    }
}

pub fn solve_stacking(d: &Drawing, objective: Objective) -> Result<StackingSolution, StackingError> {
    let arr = Arrangement::build(d)?;
    solve_stacking_on(&arr, objective)
}

pub fn solve_stacking_on(arr: &Arrangement, objective: Objective) -> Result<StackingSolution, StackingError> {
    let m = arr.drawing().num_edges();
    let mut state = match objective {
        Objective::MinMaxTunnels => EdgeState::Count((0..m).map(|e| arr.edge_crossings(e).len()).collect()),
        Objective::MinMaxTunnelLength => EdgeState::Length(
            bottom_values(arr, objective)
                .into_iter()
                .map(|v| match v {
                    ObjectiveValue::Length(l) => l,
                    _ => unreachable!(),
                })
                .collect(),
        ),
        Objective::MaxMinTunnelDistance => EdgeState::Gaps(
            (0..m)
                .map(|e| {
                    EdgeGapStructure::new(arr.edge_crossings(e).iter().map(|&c| arr.crossings()[c].point.clone()).collect())
                })
                .collect(),
        ),
        other => return Err(StackingError::Unsupported(other)),
    };

    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    let mut worst: Option<ObjectiveValue> = None;
    let mut heap = {
        let st = &state;
        IndexedHeap::new(m, &|a: usize, b: usize| st.cmp(a, b).then(a.cmp(&b)) == Ordering::Less)
    };
    while !heap.is_empty() {
        let e = {
            let st = &state;
            heap.pop(&|a: usize, b: usize| st.cmp(a, b).then(a.cmp(&b)) == Ordering::Less).unwrap()
        };
        let v = state.value(e);
        if worst.as_ref().is_none_or(|w| w.is_better_than(&v)) {
            worst = Some(v);
        }
        placed[e] = true;
        order.push(e);
        let mut touched = Vec::new();
        for &c in arr.edge_crossings(e) {
            let x = &arr.crossings()[c];
            let f = x.other(e);
            if placed[f] {
                continue;
            }
            match &mut state {
                EdgeState::Count(v) => v[f] -= 1,
                EdgeState::Length(v) => v[f] = v[f].sub(&x.tunnel),
                EdgeState::Gaps(v) => v[f].remove(arr.position_on(c, f)),
            }
            touched.push(f);
        }
        let st = &state;
        let better = |a: usize, b: usize| st.cmp(a, b).then(a.cmp(&b)) == Ordering::Less;
        for f in touched {
            heap.update(f, &better);
        }
    }

    let order = StackingOrder { bottom_first: order };
    let casing = order.casing(arr);
    let report = casing_metrics(arr, &casing).expect("induced casing covers the arrangement");
    let value = objective.value_of(&report);
    if let Some(w) = &worst {
        assert_eq!(w.cmp_quality(&value), Ordering::Equal, "greedy bookkeeping disagrees with the induced casing");
    }
    Ok(StackingSolution { order, casing, report, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fixtures::{grid, random_segments, triangle};
    use proptest::prelude::*;

    fn cross() -> Drawing {
        let p = |x: i64, y: i64| Point::from_ints(x, y);
        Drawing::from_segments(vec![(p(0, 0), p(4, 0)), (p(1, -1), p(1, 1))], int(1)).unwrap()
    }

    #[test]
    fn bottom_values_examples() {
        let arr = Arrangement::build(&grid(3, 3, &int(1), &rat(1, 10))).unwrap();
        assert!(bottom_values(&arr, Objective::MinMaxTunnels).iter().all(|v| *v == ObjectiveValue::Count(3)));
        assert!(bottom_values(&arr, Objective::MaxMinTunnelDistance)
            .iter()
            .all(|v| *v == ObjectiveValue::Distance(Some(int(1)))));
        let arr = Arrangement::build(&cross()).unwrap();
        assert!(bottom_values(&arr, Objective::MinMaxTunnelLength)
            .iter()
            .all(|v| *v == ObjectiveValue::Length(RootSum::from_rational(int(1)))));
    }

    #[test]
    fn solve_examples() {
        let g = grid(3, 3, &int(1), &rat(1, 10));
        assert_eq!(solve_stacking(&g, Objective::MinMaxTunnels).unwrap().value, ObjectiveValue::Count(3));
        assert_eq!(solve_stacking(&g, Objective::MaxMinTunnelDistance).unwrap().value, ObjectiveValue::Distance(Some(int(1))));
        let c = cross();
        assert_eq!(solve_stacking(&c, Objective::MinMaxTunnels).unwrap().value, ObjectiveValue::Count(1));
        assert_eq!(
            solve_stacking(&c, Objective::MinMaxTunnelLength).unwrap().value,
            ObjectiveValue::Length(RootSum::from_rational(int(1)))
        );
        assert_eq!(solve_stacking(&c, Objective::MaxMinTunnelDistance).unwrap().value, ObjectiveValue::Distance(None));
        assert!(matches!(
            solve_stacking(&triangle(), Objective::MinTotalSwitches),
            Err(StackingError::Unsupported(Objective::MinTotalSwitches))
        ));
    }

    #[test]
    fn gap_structure() {
        let pts: Vec<Point> = [0, 1, 3, 6, 10].iter().map(|&x| Point::from_ints(x, 0)).collect();
        let mut g = EdgeGapStructure::new(pts);
        assert_eq!(g.min_gap_sq(), Some(&int(1)));
        g.remove(1);
        assert_eq!(g.min_gap_sq(), Some(&int(9)));
        g.remove(3);
        assert_eq!(g.min_gap_sq(), Some(&int(9)));
        g.remove(2);
        assert_eq!(g.min_gap_sq(), Some(&int(100)));
        g.remove(0);
        assert_eq!((g.min_gap_sq(), g.len()), (None, 1));
        assert!(EdgeGapStructure::new(Vec::new()).min_gap_sq().is_none());
    }

    proptest! {
        #[test]
        fn heap_pops_in_order(vals in proptest::collection::vec(0i32..50, 1..40), updates in proptest::collection::vec((0usize..40, 0i32..50), 0..30)) {
            let mut vals = vals;
            let n = vals.len();
            let mut heap = IndexedHeap::new(n, &|a: usize, b: usize| (vals[a], a) < (vals[b], b));
            for (k, v) in updates {
                let k = k % n;
                vals[k] = v;
                heap.update(k, &|a: usize, b: usize| (vals[a], a) < (vals[b], b));
            }
            let mut out = Vec::new();
            while let Some(k) = heap.pop(&|a: usize, b: usize| (vals[a], a) < (vals[b], b)) {
                out.push((vals[k], k));
            }
            let mut sorted = out.clone();
            sorted.sort();
            prop_assert_eq!(out, sorted);
        }

        /// Stored values track a from-scratch recomputation on the edges not
        /// yet placed.
        #[test]
        fn gap_structure_matches_recomputation(seed in 0u64..200) {
            let d = random_segments(8, seed, 8.0, 4.0, 8.0);
            let arr = Arrangement::build(&d).unwrap();
            for e in 0..d.num_edges() {
                let cs = arr.edge_crossings(e).to_vec();
                let mut g = EdgeGapStructure::new(cs.iter().map(|&c| arr.crossings()[c].point.clone()).collect());
                let mut alive: Vec<usize> = (0..cs.len()).collect();
                while !alive.is_empty() {
                    let want = alive
                        .windows(2)
                        .map(|w| arr.crossings()[cs[w[0]]].point.dist_sq(&arr.crossings()[cs[w[1]]].point))
                        .min();
                    prop_assert_eq!(g.min_gap_sq().cloned(), want);
                    let i = alive.remove((seed as usize) % alive.len());
                    g.remove(i);
                }
            }
        }
    }
}
