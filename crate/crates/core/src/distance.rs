//! Directed distances with an explicit infinity.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digraph::Digraph;
use crate::par;

/// Length of a shortest directed path, or `Infinite` when none exists.
///
/// The derived ordering puts every finite value below `Infinite`, and
/// `Infinite == Infinite`, so distance vectors can be compared and hashed
/// directly when grouping candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

// JSON encoding: a number, or `null` for infinity.
impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_some(d),
            Distance::Infinite => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<u32>::deserialize(d)? {
            Some(v) => Distance::Finite(v),
            None => Distance::Infinite,
        })
    }
}

/// All-pairs directed distances, row-major: `get(u, v)` is the distance from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Distance {
        self.dist[u * self.n + v]
    }

    /// Distances from `u` to every vertex.
    pub fn row(&self, u: usize) -> &[Distance] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Largest distance over ordered pairs of distinct vertices (0 for a single vertex).
    pub fn diameter(&self) -> Distance {
        let mut best = Distance::ZERO;
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    best = best.max(self.get(u, v));
                }
            }
        }
        best
    }
}

/// BFS from every vertex.
pub fn all_pairs_distances(g: &Digraph) -> DistanceMatrix {
    let n = g.order();
    let rows = par::map_range(n, |s| bfs_row(g, s));
    DistanceMatrix {
        n,
        dist: rows.into_iter().flatten().collect(),
    }
}

fn bfs_row(g: &Digraph, source: usize) -> Vec<Distance> {
    let mut row = vec![Distance::Infinite; g.order()];
    let mut queue = VecDeque::new();
    row[source] = Distance::ZERO;
    queue.push_back((source, 0u32));
    while let Some((u, d)) = queue.pop_front() {
        for &w in g.out_neighbors(u) {
            if row[w] == Distance::Infinite {
                row[w] = Distance::Finite(d + 1);
                queue.push_back((w, d + 1));
            }
        }
    }
    row
}

/// Diameter of `g`; `Infinite` unless `g` is strongly connected.
pub fn diameter(g: &Digraph) -> Distance {
    all_pairs_distances(g).diameter()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    fn cycle3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn fin(d: u32) -> Distance {
        Distance::Finite(d)
    }

    #[test]
    fn infinity_ordering_and_addition() {
        assert!(fin(1_000_000) < Distance::Infinite);
        assert_eq!(Distance::Infinite, Distance::Infinite);
        assert_eq!(fin(2) + fin(3), fin(5));
        assert_eq!(fin(2) + Distance::Infinite, Distance::Infinite);
        assert_eq!(Distance::Infinite + Distance::Infinite, Distance::Infinite);
    }

    #[test]
    fn three_cycle_rows() {
        let dm = all_pairs_distances(&cycle3());
        assert_eq!(dm.row(0), &[fin(0), fin(1), fin(2)]);
        assert_eq!(dm.diameter(), fin(2));
    }

    #[test]
    fn single_arc_has_no_return_path() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        let dm = all_pairs_distances(&g);
        assert_eq!(dm.get(1, 0), Distance::Infinite);
        assert_eq!(dm.get(0, 1), fin(1));
    }

    #[test]
    fn rotation_five_far_vertex() {
        // 0 -> {1,2}; 4 is reached through 2 -> 4.
        let dm = all_pairs_distances(&families::rotation_tournament(2).unwrap());
        assert_eq!(dm.get(0, 4), fin(2));
        assert_eq!(dm.get(0, 3), fin(2));
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&cycle3()), fin(2));
        assert_eq!(diameter(&families::transitive_tournament(3)), Distance::Infinite);
        assert_eq!(diameter(&families::paley_tournament(7).unwrap()), fin(2));
    }

    #[test]
    fn json_encoding_uses_null_for_infinity() {
        let v = vec![fin(3), Distance::Infinite];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[3,null]");
        let back: Vec<Distance> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    fn floyd_warshall(g: &Digraph) -> Vec<Vec<Distance>> {
        let n = g.order();
        let mut d = vec![vec![Distance::Infinite; n]; n];
        for (u, row) in d.iter_mut().enumerate() {
            row[u] = Distance::ZERO;
        }
        for (u, v) in g.arcs() {
            d[u][v] = fin(1);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d
    }

    proptest! {
        #[test]
        fn bfs_matches_floyd_warshall(n in 1usize..=8, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = families::random_oriented(n, p, seed);
            let dm = all_pairs_distances(&g);
            let fw = floyd_warshall(&g);
            for u in 0..n {
                prop_assert_eq!(dm.get(u, u), Distance::ZERO);
                for v in 0..n {
                    prop_assert_eq!(dm.get(u, v), fw[u][v]);
                    prop_assert_eq!(dm.get(u, v) == fin(1), g.has_arc(u, v));
                    for w in 0..n {
                        prop_assert!(dm.get(u, w) <= dm.get(u, v) + dm.get(v, w));
                    }
                }
            }
        }
    }
}
