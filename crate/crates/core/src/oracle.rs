//! Exhaustive ground truth: every casing (weaving) or every edge order
//! (stacking), plus the stackability test.
//!
//! Deliberately naive. Tunnel objectives go through `casing_metrics`;
//! switches are recounted here from a separately sorted crossing list.

use std::collections::hash_map::DefaultHasher;
use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::hash::{Hash, Hasher};

use crate::arrangement::Arrangement;
use crate::crossing_graph::{casing_metrics, Casing};
use crate::exact::format_rational;
use crate::geometry::Drawing;
use crate::objective::{Model, Objective, ObjectiveValue};
use crate::stacking::StackingOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_crossings: usize,
    pub max_edges: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { max_crossings: 16, max_edges: 7 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what} = {actual} exceeds the oracle cap of {cap}")]
    CapExceeded { what: &'static str, actual: usize, cap: usize },
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub model: Model,
    pub objective: Objective,
    pub value: ObjectiveValue,
    pub witness: Casing,
    /// The witnessing order in the stacking model.
    pub order: Option<StackingOrder>,
    pub fingerprint: u64,
}

/// Hash of the drawing's exact content.
pub fn fingerprint(d: &Drawing) -> u64 {
    let mut h = DefaultHasher::new();
    format_rational(d.casing_width()).hash(&mut h);
    for v in d.vertices() {
        (v.id, format_rational(&v.pos.x), format_rational(&v.pos.y)).hash(&mut h);
    }
    for e in d.edges() {
        (e.id, e.u, e.v).hash(&mut h);
    }
    h.finish()
}

/// Per-edge crossing ids sorted by parameter, built without the
/// arrangement's own per-edge lists.
fn independent_sequences(arr: &Arrangement) -> Vec<Vec<usize>> {
    let m = arr.drawing().num_edges();
    let mut seq: Vec<Vec<usize>> = vec![Vec::new(); m];
    for c in arr.crossings() {
        seq[c.edge_a].push(c.id);
        seq[c.edge_b].push(c.id);
    }
    for (e, list) in seq.iter_mut().enumerate() {
        list.sort_by(|&x, &y| {
            let (cx, cy) = (&arr.crossings()[x], &arr.crossings()[y]);
            let px = if cx.edge_a == e { &cx.param_a } else { &cx.param_b };
            let py = if cy.edge_a == e { &cy.param_a } else { &cy.param_b };
            px.cmp(py)
        });
    }
    seq
}

/// Switch counts by direct scan: `(total, max per edge)`.
fn scan_switches(seq: &[Vec<usize>], casing: &Casing) -> (usize, usize) {
    let mut total = 0;
    let mut max = 0;
    for (e, list) in seq.iter().enumerate() {
        let mut s = 0;
        for w in list.windows(2) {
            if (casing.top(w[0]) == e) != (casing.top(w[1]) == e) {
                s += 1;
            }
        }
        total += s;
        max = max.max(s);
    }
    (total, max)
}

fn evaluate(arr: &Arrangement, seq: &[Vec<usize>], casing: &Casing, objective: Objective) -> ObjectiveValue {
    match objective {
        Objective::MinTotalSwitches => ObjectiveValue::Count(scan_switches(seq, casing).0),
        Objective::MinMaxSwitches => ObjectiveValue::Count(scan_switches(seq, casing).1),
        _ => objective.value_of(&casing_metrics(arr, casing).expect("enumerated casing is complete")),
    }
}

/// Optimum of `objective` in `model` by exhaustive enumeration. The first
/// optimum in enumeration order is the witness: casings by binary counter
/// over crossing ids (bit set = lower edge on top), orders lexicographically.
pub fn enumerate_optimal_casing(
    arr: &Arrangement,
    model: Model,
    objective: Objective,
    caps: OracleCaps,
) -> Result<OracleResult, OracleError> {
    let seq = independent_sequences(arr);
    let mut best: Option<(ObjectiveValue, Casing, Option<StackingOrder>)> = None;
    let mut consider = |casing: Casing, order: Option<StackingOrder>| {
        let v = evaluate(arr, &seq, &casing, objective);
        if best.as_ref().is_none_or(|b| v.is_better_than(&b.0)) {
            best = Some((v, casing, order));
        }
    };
    match model {
        Model::Weaving => {
            let k = arr.num_crossings();
            if k > caps.max_crossings {
                return Err(OracleError::CapExceeded { what: "crossings", actual: k, cap: caps.max_crossings });
            }
            for bits in 0u64..(1u64 << k) {
                consider(Casing::from_bits(arr, |c| bits >> c & 1 == 1), None);
            }
        }
        Model::Stacking => {
            let m = arr.drawing().num_edges();
            if m > caps.max_edges {
                return Err(OracleError::CapExceeded { what: "edges", actual: m, cap: caps.max_edges });
            }
            let mut perm: Vec<usize> = (0..m).collect();
            loop {
                let order = StackingOrder { bottom_first: perm.clone() };
                consider(order.casing(arr), Some(order));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    let (value, witness, order) = best.expect("at least one casing");
    Ok(OracleResult { model, objective, value, witness, order, fingerprint: fingerprint(arr.drawing()) })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A bottom-first edge order inducing `casing`, if the "above" relation is
/// acyclic. Ties go to the lowest edge index.
pub fn is_stackable(arr: &Arrangement, casing: &Casing) -> Option<StackingOrder> {
    let m = arr.drawing().num_edges();
    // covers[e]: edges drawn over e somewhere.
    let mut above_count = vec![0usize; m];
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); m];
    for c in arr.crossings() {
        let top = casing.top(c.id);
        let bottom = c.other(top);
        covers[bottom].push(top);
        above_count[top] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..m).filter(|&e| above_count[e] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(Reverse(e)) = ready.pop() {
        order.push(e);
        for &t in &covers[e] {
            above_count[t] -= 1;
            if above_count[t] == 0 {
                ready.push(Reverse(t));
            }
        }
    }
    (order.len() == m).then_some(StackingOrder { bottom_first: order })
}
