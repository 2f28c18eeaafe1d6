//! Arc-indicator statistics of tournaments: sameness sets, neighbourhood
//! profiles, double regularity and even four-cycle counts.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::par;

/// `+1` for an arc `u -> v`, `-1` otherwise. Only meaningful for `u != v` in a tournament.
pub fn chi(g: &Digraph, u: usize, v: usize) -> i8 {
    if g.has_arc(u, v) {
        1
    } else {
        -1
    }
}

/// Dense `χ` matrix with a zero diagonal.
fn chi_matrix(g: &Digraph) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut m = vec![vec![-1i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 0;
        for &j in g.out_neighbors(i) {
            row[j] = 1;
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sameness {
    /// Third vertices `z` with `χ(u,z) = χ(v,z)`.
    pub same: Vec<usize>,
    /// The remaining third vertices.
    pub different: Vec<usize>,
}

impl Sameness {
    pub fn s(&self) -> usize {
        self.same.len()
    }

    pub fn s_bar(&self) -> usize {
        self.different.len()
    }
}

pub fn sameness(g: &Digraph, u: usize, v: usize) -> Sameness {
    assert_ne!(u, v, "sameness needs two distinct vertices");
    let (same, different) = (0..g.order())
        .filter(|&z| z != u && z != v)
        .partition(|&z| chi(g, u, z) == chi(g, v, z));
    Sameness { same, different }
}

/// Third vertices split by `(χ(x,·), χ(y,·))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NeighborhoodProfile {
    pub pp: usize,
    pub pm: usize,
    pub mp: usize,
    pub mm: usize,
}

impl NeighborhoodProfile {
    pub fn total(&self) -> usize {
        self.pp + self.pm + self.mp + self.mm
    }
}

pub fn neighborhood_profile(g: &Digraph, x: usize, y: usize) -> NeighborhoodProfile {
    let mut p = NeighborhoodProfile::default();
    for z in (0..g.order()).filter(|&z| z != x && z != y) {
        match (chi(g, x, z), chi(g, y, z)) {
            (1, 1) => p.pp += 1,
            (1, _) => p.pm += 1,
            (_, 1) => p.mp += 1,
            _ => p.mm += 1,
        }
    }
    p
}

/// Regular with every pair sharing exactly `(n-3)/4` out-neighbours and `(n-3)/4` in-neighbours.
pub fn doubly_regular_check(g: &Digraph) -> bool {
    let n = g.order();
    if !g.is_tournament() || n < 3 || !(n - 3).is_multiple_of(4) {
        return false;
    }
    if (0..n).any(|v| 2 * g.out_degree(v) != n - 1) {
        return false;
    }
    let target = (n - 3) / 4;
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            let p = neighborhood_profile(g, x, y);
            p.pp == target && p.mm == target
        })
    })
}

/// Ordered 4-tuples of distinct vertices `(w,x,y,z)` with
/// `χ(w,x)χ(x,y)χ(y,z)χ(z,w) = 1`, counted in `O(n³)`.
///
/// For fixed `(w, y)` the product factors as `f(x) f(z)` with
/// `f(t) = χ(w,t)χ(t,y)`, so the positive tuples number
/// `((n-2)(n-3) + A² - (n-2)) / 2` where `A = Σ_t f(t)`.
pub fn e4c_count(g: &Digraph) -> u64 {
    let n = g.order();
    if n < 4 {
        return 0;
    }
    let chi = chi_matrix(g);
    let base = ((n - 2) * (n - 3)) as i64 - (n - 2) as i64;
    par::sum_range(n, |w| {
        let mut total = 0i64;
        for y in (0..n).filter(|&y| y != w) {
            let a: i64 = (0..n).map(|t| chi[w][t] * chi[t][y]).sum();
            total += (base + a * a) / 2;
        }
        total as u64
    })
}

/// `e4c_count / (n⁴/2)`.
pub fn e4c_ratio(g: &Digraph) -> f64 {
    let n = g.order() as f64;
    e4c_count(g) as f64 / (n.powi(4) / 2.0)
}

/// `Σ |s(u,v) - n/2|` over ordered pairs of distinct vertices.
pub fn quasirandom_deviation(g: &Digraph) -> f64 {
    let n = g.order();
    let half = n as f64 / 2.0;
    let mut total = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            total += 2.0 * (sameness(g, u, v).s() as f64 - half).abs();
        }
    }
    total
}

/// Smallest and largest `s(u,v)` over pairs; `(0, 0)` below two vertices.
pub fn sameness_range(g: &Digraph) -> (usize, usize) {
    let n = g.order();
    let mut lo = usize::MAX;
    let mut hi = 0;
    for u in 0..n {
        for v in u + 1..n {
            let s = sameness(g, u, v).s();
            lo = lo.min(s);
            hi = hi.max(s);
        }
    }
    if lo == usize::MAX {
        (0, 0)
    } else {
        (lo, hi)
    }
}

/// The random-tournament sameness window
/// `[2(1-ε)p(1-p)(n-2), (1+ε)(p²+(1-p)²)(n-2)]` with `ε = 1/√ln n`.
pub fn sameness_bracket(n: usize, p: f64) -> (f64, f64) {
    let eps = 1.0 / (n as f64).ln().sqrt();
    let m = (n - 2) as f64;
    let rho = p * p + (1.0 - p) * (1.0 - p);
    (2.0 * (1.0 - eps) * p * (1.0 - p) * m, (1.0 + eps) * rho * m)
}

/// Share of unordered pairs whose `s(u,v)` lies inside [`sameness_bracket`].
pub fn sameness_bracket_fraction(g: &Digraph, p: f64) -> f64 {
    let n = g.order();
    if n < 3 {
        return 1.0;
    }
    let (lo, hi) = sameness_bracket(n, p);
    let mut inside = 0usize;
    let mut pairs = 0usize;
    for u in 0..n {
        for v in u + 1..n {
            let s = sameness(g, u, v).s() as f64;
            pairs += 1;
            if lo <= s && s <= hi {
                inside += 1;
            }
        }
    }
    inside as f64 / pairs as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    fn e4c_brute(g: &Digraph) -> u64 {
        let n = g.order();
        let c = |a, b| chi(g, a, b) as i32;
        let mut count = 0;
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let distinct = w != x && w != y && w != z && x != y && x != z && y != z;
                        if distinct && c(w, x) * c(x, y) * c(y, z) * c(z, w) == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn sameness_examples() {
        let p7 = families::paley_tournament(7).unwrap();
        for u in 0..7 {
            for v in 0..7 {
                if u != v {
                    let s = sameness(&p7, u, v);
                    assert_eq!(s.s(), 2);
                    assert_eq!(s.s_bar(), 3);
                }
            }
        }
        // 0 -> 1 -> 2 -> 0: vertex 2 beats 0 but loses to 1
        let c3 = families::rotation_tournament(1).unwrap();
        assert_eq!(sameness(&c3, 0, 1).s(), 0);
        assert_eq!(sameness(&c3, 0, 1).different, vec![2]);
        // T_5: 0 -> {1,2}, 1 -> {2,3}; third vertices 2,3,4 give (+,+), (-,+), (-,-)
        let t5 = families::rotation_tournament(2).unwrap();
        assert_eq!(sameness(&t5, 0, 1).same, vec![2, 4]);
    }

    #[test]
    fn profile_examples() {
        let p7 = families::paley_tournament(7).unwrap();
        assert_eq!(neighborhood_profile(&p7, 0, 1).pp, 1);
        let c3 = families::rotation_tournament(1).unwrap();
        assert_eq!(neighborhood_profile(&c3, 0, 1).total(), 1);
        let r = families::random_tournament(20, 0.5, 3).unwrap();
        assert_eq!(neighborhood_profile(&r, 4, 11).total(), 18);
    }

    #[test]
    fn doubly_regular_examples() {
        assert!(doubly_regular_check(&families::rotation_tournament(1).unwrap()));
        assert!(!doubly_regular_check(&families::rotation_tournament(2).unwrap()));
        assert!(!doubly_regular_check(&families::rotation_tournament(3).unwrap()));
        for q in [7, 11, 19, 23] {
            assert!(doubly_regular_check(&families::paley_tournament(q).unwrap()), "q={q}");
        }
        assert!(!doubly_regular_check(&families::transitive_tournament(7)));
    }

    #[test]
    fn e4c_examples() {
        assert_eq!(e4c_count(&families::rotation_tournament(1).unwrap()), 0);
        let p7 = families::paley_tournament(7).unwrap();
        assert_eq!(e4c_count(&p7), e4c_brute(&p7));
        let t = families::transitive_tournament(6);
        assert_eq!(e4c_count(&t), e4c_brute(&t));
    }

    #[test]
    fn deviation_examples() {
        let p7 = families::paley_tournament(7).unwrap();
        assert_eq!(quasirandom_deviation(&p7), 63.0);
        // every pair of the 3-cycle has s = 0
        let c3 = families::rotation_tournament(1).unwrap();
        assert_eq!(quasirandom_deviation(&c3), 6.0 * 1.5);
    }

    #[test]
    fn bracket_at_half() {
        let (lo, hi) = sameness_bracket(30, 0.5);
        let eps = 1.0 / 30f64.ln().sqrt();
        assert!((lo - (1.0 - eps) * 14.0).abs() < 1e-12);
        assert!((hi - (1.0 + eps) * 14.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn e4c_matches_brute_force(n in 1usize..9, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = families::random_tournament(n, p, seed).unwrap();
            prop_assert_eq!(e4c_count(&g), e4c_brute(&g));
        }

        #[test]
        fn partition_identities(n in 2usize..14, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = families::random_tournament(n, p, seed).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        let s = sameness(&g, u, v);
                        prop_assert_eq!(s.s() + s.s_bar(), n - 2);
                        let pr = neighborhood_profile(&g, u, v);
                        prop_assert_eq!(pr.total(), n - 2);
                        prop_assert_eq!(pr.pp + pr.mm, s.s());
                    }
                }
            }
            prop_assert!(quasirandom_deviation(&g) >= 0.0);
        }
    }
}
