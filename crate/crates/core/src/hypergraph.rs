//! Distinguisher hypergraphs, greedy covers and the LP-based metric dimension bound.

use serde::{Deserialize, Serialize};

use crate::distance::DistanceMatrix;
use crate::lp::LpError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    /// For distinguisher hypergraphs, the vertex pair `(i, j)`, `i < j`, behind each edge.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<(usize, usize)>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Self {
        for e in &edges {
            assert!(e.iter().all(|&v| v < n), "hyperedge vertex out of range");
        }
        Hypergraph {
            n,
            edges,
            labels: Vec::new(),
        }
    }

    /// Largest number of edges through one vertex.
    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn is_cover(&self, cover: &[usize]) -> bool {
        self.edges.iter().all(|e| e.iter().any(|v| cover.contains(v)))
    }
}

/// Which distances decide whether `w` separates the pair `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    /// `d(w, x) != d(w, y)`: what a cop probing from `w` observes.
    #[default]
    CopProbe,
    /// `d(x, w) != d(y, w)`: distances measured from the pair to the witness.
    PairToWitness,
}

/// One labelled hyperedge per pair `i < j`, holding every vertex that separates them.
pub fn distinguisher_hypergraph(dm: &DistanceMatrix, convention: Convention) -> Hypergraph {
    let n = dm.order();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut labels = Vec::with_capacity(edges.capacity());
    for i in 0..n {
        for j in i + 1..n {
            let edge = (0..n)
                .filter(|&w| match convention {
                    Convention::CopProbe => dm.get(w, i) != dm.get(w, j),
                    Convention::PairToWitness => dm.get(i, w) != dm.get(j, w),
                })
                .collect();
            edges.push(edge);
            labels.push((i, j));
        }
    }
    Hypergraph { n, edges, labels }
}

/// `c = min |h_ij| / n`, kept as the integer pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CParameter {
    pub min_edge: usize,
    pub n: usize,
}

impl CParameter {
    pub fn value(self) -> f64 {
        self.min_edge as f64 / self.n as f64
    }
}

/// With no pairs to separate (`n <= 1`) the minimum is vacuous and `c = 1`.
pub fn c_parameter(h: &Hypergraph) -> CParameter {
    CParameter {
        min_edge: h.edges.iter().map(Vec::len).min().unwrap_or(h.n),
        n: h.n,
    }
}

/// `(1 + 2 ln n) / c`; `None` when some pair is inseparable (`c = 0`).
pub fn lp_upper_bound(dm: &DistanceMatrix) -> Option<f64> {
    let h = distinguisher_hypergraph(dm, Convention::CopProbe);
    let c = c_parameter(&h);
    if c.min_edge == 0 {
        return None;
    }
    Some((1.0 + 2.0 * (dm.order() as f64).ln()) / c.value())
}

/// `(1 + ln d) τ*`.
pub fn lovasz_bound(max_degree: usize, tau_star: f64) -> f64 {
    (1.0 + (max_degree.max(1) as f64).ln()) * tau_star
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyCover {
    pub cover: Vec<usize>,
    pub max_degree: usize,
}

/// Repeatedly takes the vertex meeting the most uncovered edges (lowest id on ties).
pub fn greedy_vertex_cover(h: &Hypergraph) -> Result<GreedyCover, LpError> {
    if let Some(e) = h.edges.iter().position(Vec::is_empty) {
        return Err(LpError::EmptyEdge(e));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); h.n];
    for (e, edge) in h.edges.iter().enumerate() {
        for &v in edge {
            incident[v].push(e);
        }
    }
    let mut covered = vec![false; h.edges.len()];
    let mut gain: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut remaining = h.edges.len();
    let mut cover = Vec::new();
    while remaining > 0 {
        let v = (0..h.n)
            .max_by_key(|&v| (gain[v], std::cmp::Reverse(v)))
            .expect("nonempty vertex set");
        cover.push(v);
        for &e in &incident[v] {
            if !covered[e] {
                covered[e] = true;
                remaining -= 1;
                for &u in &h.edges[e] {
                    gain[u] -= 1;
                }
            }
        }
    }
    cover.sort_unstable();
    Ok(GreedyCover {
        cover,
        max_degree: h.max_degree(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::distance::all_pairs_distances;
    use crate::families;
    use crate::lp::fractional_vertex_cover;
    use crate::resolve::{is_resolving, metric_dimension_exact};
    use proptest::prelude::*;

    #[test]
    fn three_cycle_edges_are_everything() {
        let dm = all_pairs_distances(&families::rotation_tournament(1).unwrap());
        for conv in [Convention::CopProbe, Convention::PairToWitness] {
            let h = distinguisher_hypergraph(&dm, conv);
            assert_eq!(h.edges.len(), 3);
            assert!(h.edges.iter().all(|e| e == &vec![0, 1, 2]));
        }
        let h = distinguisher_hypergraph(&dm, Convention::CopProbe);
        assert_eq!(c_parameter(&h).value(), 1.0);
        let ub = lp_upper_bound(&dm).unwrap();
        assert!((ub - (1.0 + 2.0 * 3f64.ln())).abs() < 1e-12);
        assert!((ub - 3.197).abs() < 1e-3);
    }

    #[test]
    fn rotation_five_edges_nonempty() {
        let dm = all_pairs_distances(&families::rotation_tournament(2).unwrap());
        let h = distinguisher_hypergraph(&dm, Convention::CopProbe);
        assert_eq!(h.edges.len(), 10);
        assert!(h.edges.iter().all(|e| !e.is_empty()));
    }

    #[test]
    fn paley_seven_c_parameter() {
        let g = families::paley_tournament(7).unwrap();
        let dm = all_pairs_distances(&g);
        let h = distinguisher_hypergraph(&dm, Convention::CopProbe);
        // oracle: count separating vertices pair by pair
        let mut min_sep = usize::MAX;
        for x in 0..7 {
            for y in x + 1..7 {
                min_sep = min_sep.min((0..7).filter(|&w| dm.get(w, x) != dm.get(w, y)).count());
            }
        }
        assert_eq!(c_parameter(&h), CParameter { min_edge: min_sep, n: 7 });
        // x, y and the s-bar vertices separate; the two sameness vertices do not
        assert_eq!(min_sep, 5);
        let ub = lp_upper_bound(&dm).unwrap();
        let beta = metric_dimension_exact(&g, &dm).len();
        assert!(ub >= beta as f64);
    }

    #[test]
    fn greedy_examples() {
        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]);
        assert_eq!(greedy_vertex_cover(&single).unwrap().cover, vec![0]);
        let tri = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let g = greedy_vertex_cover(&tri).unwrap();
        assert_eq!(g.cover.len(), 2);
        assert!(tri.is_cover(&g.cover));
        assert_eq!(
            greedy_vertex_cover(&Hypergraph::new(2, vec![vec![]])),
            Err(LpError::EmptyEdge(0))
        );
    }

    #[test]
    fn hypergraph_json() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![2]]);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[2]]}"#);
        assert_eq!(serde_json::from_str::<Hypergraph>(&s).unwrap(), h);
    }

    fn brute_force_tau(h: &Hypergraph) -> usize {
        (0u32..1 << h.n)
            .filter(|mask| h.edges.iter().all(|e| e.iter().any(|&v| mask >> v & 1 == 1)))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    proptest! {
        #[test]
        fn pair_endpoints_always_separate(n in 1usize..9, p in 0.0f64..1.0, seed in any::<u64>()) {
            let dm = all_pairs_distances(&families::random_oriented(n, p, seed));
            for conv in [Convention::CopProbe, Convention::PairToWitness] {
                let h = distinguisher_hypergraph(&dm, conv);
                prop_assert_eq!(h.edges.len(), n * (n - 1) / 2);
                for (edge, &(i, j)) in h.edges.iter().zip(&h.labels) {
                    prop_assert!(edge.contains(&i) && edge.contains(&j));
                }
            }
        }

        #[test]
        fn cover_chain_and_lovasz(n in 2usize..8, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g: Digraph = families::random_oriented(n, p, seed);
            let dm = all_pairs_distances(&g);
            let h = distinguisher_hypergraph(&dm, Convention::CopProbe);
            let fc = fractional_vertex_cover(&h).unwrap();
            let greedy = greedy_vertex_cover(&h).unwrap();
            let tau = brute_force_tau(&h);
            prop_assert!(is_resolving(&dm, &greedy.cover));
            prop_assert_eq!(tau, metric_dimension_exact(&g, &dm).len());
            prop_assert!(fc.value <= tau as f64 + 1e-9);
            prop_assert!(tau <= greedy.cover.len());
            prop_assert!(greedy.cover.len() <= n);
            prop_assert!(greedy.cover.len() as f64 <= lovasz_bound(greedy.max_degree, fc.value) + 1e-9);
            prop_assert!(tau as f64 <= lp_upper_bound(&dm).unwrap() + 1e-9);
        }
    }
}
