//! 2-SAT by strongly connected components of the implication graph.

/// Literal over variable `var`; `positive == false` is its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Lit { var: self.var, positive: !self.positive }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

/// Satisfying assignment of the conjunction of `clauses` over `n` variables,
/// or `None`. Each variable gets the value whose literal comes later in
/// topological order of the condensation.
pub fn solve_2sat(n: usize, clauses: &[(Lit, Lit)]) -> Option<Vec<bool>> {
    let nodes = 2 * n;
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in clauses {
        // (a or b) == (!a -> b) and (!b -> a)
        adj[a.negated().node()].push(b.node());
        adj[b.negated().node()].push(a.node());
    }
    let comp = tarjan(&adj);
    // Tarjan numbers components in reverse topological order.
    (0..n)
        .map(|v| {
            let (t, f) = (comp[2 * v], comp[2 * v + 1]);
            (t != f).then_some(t < f)
        })
        .collect()
}

/// Component index per node; components are numbered in the order Tarjan's
/// algorithm completes them (sinks first).
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    // Explicit call stack of (node, next neighbour index).
    let mut calls: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        calls.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = calls.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let w = adj[v][top.1];
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn satisfies(a: &[bool], clauses: &[(Lit, Lit)]) -> bool {
        clauses.iter().all(|(x, y)| a[x.var] == x.positive || a[y.var] == y.positive)
    }

    #[test]
    fn basic() {
        let c = [(Lit::pos(0), Lit::pos(1)), (Lit::neg(0), Lit::pos(1)), (Lit::neg(1), Lit::pos(2))];
        let a = solve_2sat(3, &c).unwrap();
        assert!(satisfies(&a, &c));
        let contradiction = [(Lit::pos(0), Lit::pos(0)), (Lit::neg(0), Lit::neg(0))];
        assert!(solve_2sat(1, &contradiction).is_none());
        assert_eq!(solve_2sat(2, &[]).map(|a| a.len()), Some(2));
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(n in 1usize..7, raw in proptest::collection::vec((0usize..7, any::<bool>(), 0usize..7, any::<bool>()), 0..14)) {
            let clauses: Vec<(Lit, Lit)> = raw
                .into_iter()
                .map(|(a, pa, b, pb)| (Lit { var: a % n, positive: pa }, Lit { var: b % n, positive: pb }))
                .collect();
            let any_sat = (0u32..1 << n).any(|bits| {
                let a: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
                satisfies(&a, &clauses)
            });
            match solve_2sat(n, &clauses) {
                Some(a) => prop_assert!(satisfies(&a, &clauses)),
                None => prop_assert!(!any_sat),
            }
        }
    }
}
