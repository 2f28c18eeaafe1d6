//! The combined bounds report behind the `zeta`, `beta` and `bounds` commands.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::distance::{Distance, DistanceMatrix};
use crate::game::{localization_number_exact, GameError, Zeta};
use crate::hypergraph::{c_parameter, distinguisher_hypergraph, greedy_vertex_cover, lovasz_bound, lp_upper_bound, Convention};
use crate::lp::fractional_vertex_cover;
use crate::resolve::{metric_dim_one_classifier, metric_dimension_exact, MetricDimOne};
use crate::structure::{out_degeneracy, spread, strong_components, Spread};
use crate::tournament;

/// `ζ` as it appears in reports: a number, or why it is missing.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ZetaValue {
    Exact(usize),
    Exceeds { exceeds: usize },
    Unavailable { error: String },
}

impl ZetaValue {
    pub fn from_result(r: Result<Zeta, GameError>) -> Self {
        match r {
            Ok(Zeta::Exact(z)) => ZetaValue::Exact(z),
            Ok(Zeta::Exceeds(k)) => ZetaValue::Exceeds { exceeds: k },
            Err(e) => ZetaValue::Unavailable { error: e.to_string() },
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            ZetaValue::Exact(z) => Some(*z),
            _ => None,
        }
    }
}

/// `max_i ζ(G_i) + Δ⁺(SC(G))` with exact component values.
pub fn strong_component_bound(g: &Digraph) -> Result<usize, GameError> {
    let scc = strong_components(g);
    let mut worst = 0;
    for vertices in &scc.components {
        let sub = g.induced(vertices);
        let dm = crate::distance::all_pairs_distances(&sub);
        let z = localization_number_exact(&sub, &dm, sub.order())?
            .exact()
            .expect("cops win with every vertex probed");
        worst = worst.max(z);
    }
    Ok(worst + scc.max_out_degree())
}

/// `log_M(k+1)` for the out-degeneracy `k`; zero when the spread is infinite.
pub fn degeneracy_lower_bound(g: &Digraph, dm: &DistanceMatrix) -> f64 {
    match spread(g, dm) {
        Spread::Infinite => 0.0,
        m => m.degeneracy_lower_bound(out_degeneracy(g)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub beta: usize,
    pub zeta: ZetaValue,
    pub lower_dt: f64,
    /// `None` (JSON `null`) stands for an infinite bound.
    pub upper_lp: Option<f64>,
    pub upper_sc: Option<usize>,
    pub consistent: bool,
}

const SLACK: f64 = 1e-9;

pub fn bounds_report(g: &Digraph, dm: &DistanceMatrix, max_cops: usize) -> BoundsReport {
    let n = g.order();
    let beta = metric_dimension_exact(g, dm).len();
    let zeta = ZetaValue::from_result(localization_number_exact(g, dm, max_cops));
    let lower_dt = degeneracy_lower_bound(g, dm);
    let upper_lp = lp_upper_bound(dm);
    let upper_sc = strong_component_bound(g).ok();
    let mut consistent = beta <= n && lower_dt <= beta as f64 + SLACK;
    if let Some(ub) = upper_lp {
        consistent &= beta as f64 <= ub + SLACK;
    }
    match zeta {
        ZetaValue::Exact(z) => {
            consistent &= lower_dt <= z as f64 + SLACK && z <= beta;
            if let Some(sc) = upper_sc {
                consistent &= z <= sc;
            }
        }
        // every cap at or above β must have found ζ
        ZetaValue::Exceeds { exceeds } => consistent &= exceeds < beta,
        ZetaValue::Unavailable { .. } => {}
    }
    BoundsReport {
        n,
        beta,
        zeta,
        lower_dt,
        upper_lp,
        upper_sc,
        consistent,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaReport {
    pub n: usize,
    pub beta: usize,
    pub witness: Vec<usize>,
    pub metric_dim_one: MetricDimOne,
    pub greedy_cover: Vec<usize>,
    pub tau_star: f64,
    pub lovasz_bound: f64,
    pub c: f64,
    pub upper_lp: Option<f64>,
}

pub fn beta_report(g: &Digraph, dm: &DistanceMatrix) -> BetaReport {
    let exact = metric_dimension_exact(g, dm);
    let h = distinguisher_hypergraph(dm, Convention::CopProbe);
    let greedy = greedy_vertex_cover(&h).expect("distinguisher edges contain their pair");
    let tau_star = fractional_vertex_cover(&h).expect("distinguisher edges are nonempty").value;
    BetaReport {
        n: g.order(),
        beta: exact.len(),
        witness: exact.vertices,
        metric_dim_one: metric_dim_one_classifier(g, dm),
        lovasz_bound: lovasz_bound(greedy.max_degree, tau_star),
        greedy_cover: greedy.cover,
        tau_star,
        c: c_parameter(&h).value(),
        upper_lp: lp_upper_bound(dm),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaReport {
    pub n: usize,
    pub zeta: ZetaValue,
}

pub fn zeta_report(g: &Digraph, dm: &DistanceMatrix, max_cops: usize) -> ZetaReport {
    ZetaReport {
        n: g.order(),
        zeta: ZetaValue::from_result(localization_number_exact(g, dm, max_cops)),
    }
}


/// Structural and tournament statistics for the `stats` command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub n: usize,
    pub arcs: usize,
    pub strong_components: usize,
    pub condensation_max_out_degree: usize,
    pub out_degeneracy: usize,
    /// `None` when infinite.
    pub spread: Option<u32>,
    pub diameter: Distance,
    pub is_tournament: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tournament: Option<TournamentStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TournamentStats {
    pub doubly_regular: bool,
    pub s_min: usize,
    pub s_max: usize,
    pub quasirandom_deviation: f64,
    pub e4c_count: u64,
    pub e4c_ratio: f64,
}

pub fn stats_report(g: &Digraph, dm: &DistanceMatrix) -> StatsReport {
    let scc = strong_components(g);
    let is_tournament = g.is_tournament();
    let tournament = is_tournament.then(|| {
        let (s_min, s_max) = tournament::sameness_range(g);
        TournamentStats {
            doubly_regular: tournament::doubly_regular_check(g),
            s_min,
            s_max,
            quasirandom_deviation: tournament::quasirandom_deviation(g),
            e4c_count: tournament::e4c_count(g),
            e4c_ratio: tournament::e4c_ratio(g),
        }
    });
    StatsReport {
        n: g.order(),
        arcs: g.arc_count(),
        strong_components: scc.len(),
        condensation_max_out_degree: scc.max_out_degree(),
        out_degeneracy: out_degeneracy(g),
        spread: match spread(g, dm) {
            Spread::Finite(m) => Some(m),
            Spread::Infinite => None,
        },
        diameter: dm.diameter(),
        is_tournament,
        tournament,
    }
}

#[cfg(test)]
mod stats_tests {
    use super::*;
    use crate::distance::all_pairs_distances;
    use crate::families;

    #[test]
    fn paley_stats() {
        let g = families::paley_tournament(7).unwrap();
        let r = stats_report(&g, &all_pairs_distances(&g));
        let t = r.tournament.unwrap();
        assert!(t.doubly_regular);
        assert_eq!((t.s_min, t.s_max), (2, 2));
        assert_eq!(t.quasirandom_deviation, 63.0);
        assert_eq!(r.diameter, Distance::Finite(2));
        assert_eq!(r.strong_components, 1);
    }

    #[test]
    fn non_tournament_has_no_tournament_block() {
        let g = families::directed_path(4);
        let r = stats_report(&g, &all_pairs_distances(&g));
        assert!(r.tournament.is_none());
        assert!(!serde_json::to_string(&r).unwrap().contains("e4c"));
        assert_eq!(r.strong_components, 4);
    }
}
