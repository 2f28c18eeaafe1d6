//! Resolving sets and the metric dimension `β(G)`.
//!
//! A probe set `W` resolves `G` when no two vertices share a distance vector
//! `(d(w, x))_{w ∈ W}`; this is exactly a one-round win for `|W|` cops.

use itertools::Itertools;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::distance::{Distance, DistanceMatrix};
use crate::par;

/// Distances from each probe vertex to `x`, in probe order.
pub fn distance_vector(dm: &DistanceMatrix, probe: &[usize], x: usize) -> Vec<Distance> {
    probe.iter().map(|&w| dm.get(w, x)).collect()
}

pub fn is_resolving(dm: &DistanceMatrix, w: &[usize]) -> bool {
    let mut vectors: Vec<Vec<Distance>> = (0..dm.order()).map(|x| distance_vector(dm, w, x)).collect();
    vectors.sort_unstable();
    vectors.windows(2).all(|p| p[0] != p[1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvingSet {
    pub vertices: Vec<usize>,
    pub resolved: bool,
}

impl ResolvingSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

const CHUNK: usize = 4096;

/// Smallest resolving set, searching by cardinality and then lexicographically,
/// so the witness is the lexicographically least optimal set.
pub fn metric_dimension_exact(g: &Digraph, dm: &DistanceMatrix) -> ResolvingSet {
    let n = g.order();
    for size in 1..=n {
        let mut combos = (0..n).combinations(size);
        loop {
            let chunk: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            if let Some(i) = par::position_first(&chunk, |w| is_resolving(dm, w)) {
                return ResolvingSet {
                    vertices: chunk[i].clone(),
                    resolved: true,
                };
            }
        }
    }
    // only reachable for n = 0
    ResolvingSet {
        vertices: Vec::new(),
        resolved: n <= 1,
    }
}

/// Outcome of the structural test for metric dimension one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum MetricDimOne {
    /// A Hamiltonian path with no arc skipping forward over a vertex.
    Case1 { path: Vec<usize> },
    /// A source whose removal leaves such a path.
    Case2 { source: usize, path: Vec<usize> },
    No,
}

impl MetricDimOne {
    pub fn is_yes(&self) -> bool {
        !matches!(self, MetricDimOne::No)
    }
}

/// Orders `vertices` by distance from `start` and checks that the order is a
/// Hamiltonian path with distances `0, 1, ..., len-1` and no forward skip arc.
fn skip_free_path(g: &Digraph, dm: &DistanceMatrix, vertices: &[usize], start: usize) -> Option<Vec<usize>> {
    let len = vertices.len();
    let mut slot = vec![usize::MAX; len];
    for &v in vertices {
        let d = dm.get(start, v).finite()? as usize;
        if d >= len || slot[d] != usize::MAX {
            return None;
        }
        slot[d] = v;
    }
    let mut position = vec![usize::MAX; g.order()];
    for (i, &v) in slot.iter().enumerate() {
        position[v] = i;
    }
    for (i, &v) in slot.iter().enumerate() {
        if i + 1 < len && !g.has_arc(v, slot[i + 1]) {
            return None;
        }
        let skips = g
            .out_neighbors(v)
            .iter()
            .any(|&w| position[w] != usize::MAX && position[w] > i + 1);
        if skips {
            return None;
        }
    }
    Some(slot)
}

/// Decides whether `g` matches one of the two structural cases for metric
/// dimension one, trying every start vertex.
pub fn metric_dim_one_classifier(g: &Digraph, dm: &DistanceMatrix) -> MetricDimOne {
    let n = g.order();
    let all: Vec<usize> = (0..n).collect();
    for s in 0..n {
        if let Some(path) = skip_free_path(g, dm, &all, s) {
            return MetricDimOne::Case1 { path };
        }
    }
    // A source is never an inner vertex of a path, so removing it leaves the
    // other distances unchanged and `dm` can be reused.
    for z in (0..n).filter(|&z| g.is_source(z)) {
        let rest: Vec<usize> = all.iter().copied().filter(|&v| v != z).collect();
        for &s in &rest {
            if let Some(path) = skip_free_path(g, dm, &rest, s) {
                return MetricDimOne::Case2 { source: z, path };
            }
        }
    }
    MetricDimOne::No
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::all_pairs_distances;
    use crate::families;
    use proptest::prelude::*;

    fn cycle3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn resolving_examples() {
        let dm = all_pairs_distances(&cycle3());
        assert!(is_resolving(&dm, &[0]));
        let dm = all_pairs_distances(&families::transitive_tournament(3));
        assert!(!is_resolving(&dm, &[0]));
        let dm = all_pairs_distances(&families::directed_path(4));
        assert!(is_resolving(&dm, &[0]));
        assert!(is_resolving(&dm, &[0, 1, 2, 3]));
    }

    #[test]
    fn metric_dimension_examples() {
        let p4 = families::directed_path(4);
        let b = metric_dimension_exact(&p4, &all_pairs_distances(&p4));
        assert_eq!(b.vertices, vec![0]);
        let c = cycle3();
        assert_eq!(metric_dimension_exact(&c, &all_pairs_distances(&c)).len(), 1);
        let t5 = families::rotation_tournament(2).unwrap();
        let b = metric_dimension_exact(&t5, &all_pairs_distances(&t5));
        assert!(b.len() <= 2);
        assert_eq!(b.len(), brute_force_beta(&t5));
        // probing the middle vertex sees the source at infinity
        let t3 = families::transitive_tournament(3);
        assert_eq!(metric_dimension_exact(&t3, &all_pairs_distances(&t3)).vertices, vec![1]);
    }

    #[test]
    fn binary_sources_resolve_the_base() {
        for base in [families::directed_path(4), families::tripartite_cycle(2).unwrap(), Digraph::empty(5)] {
            let m = base.order();
            let ext = families::binary_source_extension(&base);
            let dm = all_pairs_distances(&ext);
            let sources: Vec<usize> = (m..ext.order()).collect();
            assert!(is_resolving(&dm, &sources));
            assert!(metric_dimension_exact(&ext, &dm).len() <= families::ceil_log2(m));
        }
    }

    #[test]
    fn classifier_examples() {
        let p5 = families::directed_path(5);
        assert!(matches!(metric_dim_one_classifier(&p5, &all_pairs_distances(&p5)), MetricDimOne::Case1 { .. }));

        // source 4 pointing into the middle of P_4
        let g = Digraph::new(5, [(0, 1), (1, 2), (2, 3), (4, 2)]).unwrap();
        assert_eq!(
            metric_dim_one_classifier(&g, &all_pairs_distances(&g)),
            MetricDimOne::Case2 { source: 4, path: vec![0, 1, 2, 3] }
        );

        // 3-cycle 0->1->2->0 plus vertex 3 with the skip arc 1->3 after 2->3
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3), (1, 3)]).unwrap();
        let dm = all_pairs_distances(&g);
        assert_eq!(metric_dim_one_classifier(&g, &dm), MetricDimOne::No);
        assert!(metric_dimension_exact(&g, &dm).len() > 1);

        let c = cycle3();
        assert_eq!(
            metric_dim_one_classifier(&c, &all_pairs_distances(&c)),
            MetricDimOne::Case1 { path: vec![0, 1, 2] }
        );
        let two = Digraph::empty(2);
        assert!(matches!(metric_dim_one_classifier(&two, &all_pairs_distances(&two)), MetricDimOne::Case2 { .. }));
    }

    /// Independent oracle: every subset by bitmask, resolving checked pairwise.
    fn brute_force_beta(g: &Digraph) -> usize {
        let dm = all_pairs_distances(g);
        let n = g.order();
        (1u32..1 << n)
            .filter(|mask| {
                (0..n).all(|x| {
                    (x + 1..n).all(|y| (0..n).any(|w| mask >> w & 1 == 1 && dm.get(w, x) != dm.get(w, y)))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn exact_beta_matches_brute_force(n in 1usize..=5, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = families::random_oriented(n, p, seed);
            let dm = all_pairs_distances(&g);
            let b = metric_dimension_exact(&g, &dm);
            prop_assert!(is_resolving(&dm, &b.vertices));
            prop_assert_eq!(b.len(), brute_force_beta(&g));
            prop_assert_eq!(metric_dim_one_classifier(&g, &dm).is_yes(), b.len() == 1);
        }
    }
}
