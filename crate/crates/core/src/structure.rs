//! Strong components, topological order, out-degeneracy and the distance spread `M(G)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::distance::{Distance, DistanceMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("digraph has a directed cycle")]
pub struct Cyclic;

/// Strong components with ids in a topological order of the condensation.
#[derive(Clone, Debug)]
pub struct SccDecomposition {
    pub component_of: Vec<usize>,
    /// Vertex lists, each sorted.
    pub components: Vec<Vec<usize>>,
    /// Acyclic quotient on component ids; an arc `(i, j)` implies `i < j`.
    pub condensation: Digraph,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component ids that receive an arc from component `c`.
    pub fn children(&self, c: usize) -> &[usize] {
        self.condensation.out_neighbors(c)
    }

    /// `Δ+(SC(G))`.
    pub fn max_out_degree(&self) -> usize {
        self.condensation.max_out_degree()
    }
}

/// Tarjan's algorithm, iterative.
pub fn strong_components(g: &Digraph) -> SccDecomposition {
    let n = g.order();
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut tarjan_comp = vec![UNVISITED; n];
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let outs = g.out_neighbors(v);
            if *pos < outs.len() {
                let w = outs[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = found.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    tarjan_comp[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                found.push(comp);
            }
        }
    }

    // Tarjan emits components sinks-first; reverse for a topological numbering.
    let count = found.len();
    found.reverse();
    let component_of: Vec<usize> = tarjan_comp.iter().map(|&c| count - 1 - c).collect();
    let mut quotient: Vec<(usize, usize)> = g
        .arcs()
        .map(|(u, v)| (component_of[u], component_of[v]))
        .filter(|(a, b)| a != b)
        .collect();
    quotient.sort_unstable();
    quotient.dedup();
    let condensation = Digraph::new(count, quotient).expect("condensation is a simple DAG");
    SccDecomposition {
        component_of,
        components: found,
        condensation,
    }
}

/// Kahn's algorithm, always taking the smallest available vertex.
pub fn topological_sort(g: &Digraph) -> Result<Vec<usize>, Cyclic> {
    let n = g.order();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &w in g.out_neighbors(u) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(Cyclic)
    }
}

pub fn is_acyclic(g: &Digraph) -> bool {
    topological_sort(g).is_ok()
}

/// Maximum over subgraphs of the minimum out-degree.
///
/// Peels a minimum-out-degree vertex (lowest id on ties) until nothing is
/// left and returns the largest minimum seen.
pub fn out_degeneracy(g: &Digraph) -> usize {
    let n = g.order();
    let mut outdeg: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (outdeg[v], v))
            .expect("a live vertex remains");
        best = best.max(outdeg[v]);
        alive[v] = false;
        for &u in g.in_neighbors(v) {
            if alive[u] {
                outdeg[u] -= 1;
            }
        }
    }
    best
}

/// `M(G)`: one plus the widest spread of `d(u, w)` over a closed out-neighbourhood `N+[v]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spread {
    Finite(u32),
    /// Some `N+[v]` mixes reachable and unreachable vertices as seen from some `u`.
    Infinite,
}

impl Spread {
    /// `log_M(k + 1)`; 0 when the bound is vacuous (`M` infinite or `M = 1`).
    pub fn degeneracy_lower_bound(self, out_degeneracy: usize) -> f64 {
        match self {
            Spread::Finite(m) if m >= 2 => ((out_degeneracy + 1) as f64).ln() / (m as f64).ln(),
            _ => 0.0,
        }
    }
}

pub fn spread(g: &Digraph, dm: &DistanceMatrix) -> Spread {
    let n = g.order();
    let mut widest = 0;
    for u in 0..n {
        let row = dm.row(u);
        for v in 0..n {
            let mut lo = row[v];
            let mut hi = row[v];
            for &w in g.out_neighbors(v) {
                lo = lo.min(row[w]);
                hi = hi.max(row[w]);
            }
            match (lo, hi) {
                (Distance::Finite(a), Distance::Finite(b)) => widest = widest.max(b - a),
                (Distance::Finite(_), Distance::Infinite) => return Spread::Infinite,
                // every vertex of N+[v] is unreachable from u: no spread
                _ => {}
            }
        }
    }
    Spread::Finite(widest + 1)
}
