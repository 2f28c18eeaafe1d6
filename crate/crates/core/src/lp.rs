//! Fractional hypergraph vertex cover via a dense simplex.
//!
//! The covering LP `min Σx  s.t.  Σ_{v∈h} x_v >= 1, 0 <= x <= 1` is solved through
//! its packing dual `max Σy  s.t.  Σ_{h∋v} y_h <= 1, y >= 0`. The packing LP has a
//! feasible slack basis at the origin, so a single phase suffices; the cover `x`
//! is read off the reduced costs of the slack columns. The upper bounds
//! `x <= 1` never bind at an optimum and are dropped.

use thiserror::Error;

use crate::hypergraph::Hypergraph;

pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("hyperedge {0} is empty, so no cover exists")]
    EmptyEdge(usize),
    #[error("simplex did not terminate within {0} pivots")]
    IterationLimit(usize),
}

/// Optimal fractional cover together with the packing that certifies it.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalCover {
    pub value: f64,
    /// Weight of each vertex.
    pub x: Vec<f64>,
    /// Dual weight of each hyperedge.
    pub packing: Vec<f64>,
}

/// `max cᵀy` subject to `Ay <= b`, `y >= 0`, with `b >= 0`.
/// Returns (objective, primal y, dual multipliers of the rows).
fn maximize_packing(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<(f64, Vec<f64>, Vec<f64>), LpError> {
    let rows = a.len();
    let vars = c.len();
    let cols = vars + rows;
    let rhs = cols;
    let mut t = vec![vec![0.0; cols + 1]; rows];
    for i in 0..rows {
        t[i][..vars].copy_from_slice(&a[i]);
        t[i][vars + i] = 1.0;
        t[i][rhs] = b[i];
    }
    let mut obj = vec![0.0; cols + 1];
    for j in 0..vars {
        obj[j] = -c[j];
    }
    let mut basis: Vec<usize> = (vars..cols).collect();

    let limit = 50 * (rows + cols).max(1) * (rows + cols).max(1);
    let mut pivots = 0;
    loop {
        // Bland: lowest-index improving column
        let Some(enter) = (0..cols).find(|&j| obj[j] < -TOLERANCE) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..rows {
            if t[i][enter] > TOLERANCE {
                let ratio = t[i][rhs] / t[i][enter];
                let better = match leave {
                    None => true,
                    Some(l) => ratio < best - TOLERANCE || (ratio <= best + TOLERANCE && basis[i] < basis[l]),
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        // The packing LP is bounded whenever every column has a positive entry.
        let r = leave.expect("packing LP is bounded");
        let p = t[r][enter];
        for v in t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && row[enter].abs() > 0.0 {
                let f = row[enter];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * pv;
                }
            }
        }
        let f = obj[enter];
        for (x, &pv) in obj.iter_mut().zip(&pivot_row) {
            *x -= f * pv;
        }
        basis[r] = enter;
        pivots += 1;
        if pivots > limit {
            return Err(LpError::IterationLimit(limit));
        }
    }
    let mut y = vec![0.0; vars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < vars {
            y[bv] = t[i][rhs];
        }
    }
    let duals = (0..rows).map(|i| obj[vars + i]).collect();
    Ok((obj[rhs], y, duals))
}

/// `τ*(H)` with an optimal vertex weighting.
pub fn fractional_vertex_cover(h: &Hypergraph) -> Result<FractionalCover, LpError> {
    if let Some(e) = h.edges.iter().position(Vec::is_empty) {
        return Err(LpError::EmptyEdge(e));
    }
    let m = h.edges.len();
    let mut a = vec![vec![0.0; m]; h.n];
    for (e, edge) in h.edges.iter().enumerate() {
        for &v in edge {
            a[v][e] = 1.0;
        }
    }
    let (value, packing, duals) = maximize_packing(&a, &vec![1.0; h.n], &vec![1.0; m])?;
    let x = duals.into_iter().map(|d| d.clamp(0.0, 1.0)).collect();
    Ok(FractionalCover { value, x, packing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::all_pairs_distances;
    use crate::families;
    use crate::hypergraph::{distinguisher_hypergraph, Convention};
    use proptest::prelude::*;

    fn hyper(n: usize, edges: Vec<Vec<usize>>) -> Hypergraph {
        Hypergraph::new(n, edges)
    }

    /// Weak duality certificate: x covers, y packs, and the objectives agree.
    fn assert_certified(h: &Hypergraph, fc: &FractionalCover) {
        for edge in &h.edges {
            let s: f64 = edge.iter().map(|&v| fc.x[v]).sum();
            assert!(s >= 1.0 - 1e-9, "edge {edge:?} covered only {s}");
        }
        for v in 0..h.n {
            let load: f64 = h.edges.iter().zip(&fc.packing).filter(|(e, _)| e.contains(&v)).map(|(_, y)| y).sum();
            assert!(load <= 1.0 + 1e-9);
        }
        assert!(fc.packing.iter().all(|&y| y >= -1e-12));
        let primal: f64 = fc.x.iter().sum();
        let dual: f64 = fc.packing.iter().sum();
        assert!((primal - dual).abs() < 1e-9, "gap {primal} vs {dual}");
        assert!((primal - fc.value).abs() < 1e-9);
    }

    #[test]
    fn single_edge() {
        let h = hyper(3, vec![vec![0, 1, 2]]);
        let fc = fractional_vertex_cover(&h).unwrap();
        assert!((fc.value - 1.0).abs() < 1e-9);
        assert_certified(&h, &fc);
    }

    #[test]
    fn triangle_is_three_halves() {
        let h = hyper(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let fc = fractional_vertex_cover(&h).unwrap();
        assert!((fc.value - 1.5).abs() < 1e-9);
        for x in &fc.x {
            assert!((x - 0.5).abs() < 1e-9);
        }
        assert_certified(&h, &fc);
    }

    #[test]
    fn three_cycle_distinguishers() {
        let dm = all_pairs_distances(&families::rotation_tournament(1).unwrap());
        let h = distinguisher_hypergraph(&dm, Convention::CopProbe);
        let fc = fractional_vertex_cover(&h).unwrap();
        assert!((fc.value - 1.0).abs() < 1e-9);
        assert_certified(&h, &fc);
    }

    #[test]
    fn empty_edge_is_infeasible() {
        let h = hyper(3, vec![vec![0], vec![]]);
        assert_eq!(fractional_vertex_cover(&h), Err(LpError::EmptyEdge(1)));
        let none = fractional_vertex_cover(&hyper(2, vec![])).unwrap();
        assert_eq!(none.value, 0.0);
    }

    #[test]
    fn degenerate_instances_terminate() {
        // many identical and nested edges produce degenerate pivots
        let mut edges = vec![vec![0, 1, 2, 3]; 6];
        edges.extend([vec![0, 1], vec![0, 1], vec![2, 3], vec![1, 2], vec![3, 0]]);
        let h = hyper(4, edges);
        let fc = fractional_vertex_cover(&h).unwrap();
        assert!((fc.value - 2.0).abs() < 1e-9);
        assert_certified(&h, &fc);
    }

    proptest! {
        #[test]
        fn random_hypergraphs_are_certified(n in 1usize..9, m in 0usize..20, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<Vec<usize>> = (0..m)
                .map(|_| {
                    let mut e: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
                    if e.is_empty() {
                        e.push(rng.gen_range(0..n));
                    }
                    e
                })
                .collect();
            let h = hyper(n, edges);
            let fc = fractional_vertex_cover(&h).unwrap();
            assert_certified(&h, &fc);
        }
    }
}
