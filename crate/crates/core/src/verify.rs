//! Checks of known values and bounds: each entry names its instances and the relation they must satisfy.

use serde::Serialize;

use crate::decomposition::{DagDecomposition, PathDecomposition};
use crate::digraph::Digraph;
use crate::distance::{all_pairs_distances, Distance};
use crate::experiment::{self, ExperimentConfig};
use crate::families;
use crate::game::{localization_number_exact, play, GameTranscript, OptimalRobber, Outcome};
use crate::hypergraph::{distinguisher_hypergraph, greedy_vertex_cover, lovasz_bound, lp_upper_bound, Convention};
use crate::lp::fractional_vertex_cover;
use crate::report::{degeneracy_lower_bound, strong_component_bound};
use crate::resolve::{is_resolving, metric_dim_one_classifier, metric_dimension_exact};
use crate::strategies::{
    dag_decomp_sweep, dag_sweep, path_sweep, rotation_strategy, sc_composite, CopStrategy, InnerPlay, RotationStrategy,
    StrategyError,
};
use crate::structure::{spread, Spread};
use crate::tournament::{doubly_regular_check, sameness};

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Digraph,
}

fn instance(name: impl Into<String>, graph: Digraph) -> Instance {
    Instance {
        name: name.into(),
        graph,
    }
}

/// Family members with a known localization number.
pub fn exact_value_instances() -> Vec<(Instance, usize)> {
    let c3 = families::rotation_tournament(1).expect("m = 1");
    let mut v: Vec<(Instance, usize)> = (1..=3)
        .map(|m| {
            let g = families::rotation_tournament(m).expect("m >= 1");
            (instance(format!("rotation {m}"), g), m / 2 + 1)
        })
        .collect();
    for i in 1..=2 {
        v.push((instance(format!("tripartite_cycle {i}"), families::tripartite_cycle(i).expect("i >= 1")), i));
    }
    v.push((instance("blowup 1 3", families::blowup(&c3, 3).expect("k >= 3")), 3));
    v.push((instance("sc_tight 3 1", families::sc_tight(3, 1).expect("odd m")), 3));
    v
}

/// 50 seeded acyclic digraphs on at most 8 vertices.
pub fn random_dag_instances() -> Vec<Instance> {
    (0..50u64)
        .map(|s| {
            let n = 1 + (s % 8) as usize;
            let p = 0.2 + 0.15 * (s % 5) as f64;
            instance(format!("dag n={n} p={p:.2} seed={s}"), families::random_dag(n, p, s))
        })
        .collect()
}

/// 200 seeded oriented graphs on at most 5 vertices.
pub fn classifier_instances() -> Vec<Instance> {
    (0..200u64)
        .map(|s| {
            let n = 1 + (s % 5) as usize;
            let p = [0.3, 0.5, 0.7, 0.9][(s / 5 % 4) as usize];
            instance(
                format!("oriented n={n} p={p} seed={s}"),
                families::random_oriented(n, p, 1000 + s),
            )
        })
        .collect()
}

/// 100 seeded digraphs on at most 10 vertices whose strong components have at most 6.
pub fn sc_bound_instances() -> Vec<Instance> {
    (0..100u64)
        .map(|s| {
            let n = 2 + (s % 9) as usize;
            let p = 0.4 + 0.15 * (s % 4) as f64;
            instance(
                format!("layered n={n} p={p:.2} seed={s}"),
                families::random_layered(n, 6, p, 5000 + s),
            )
        })
        .collect()
}

pub const PALEY_ORDERS: [usize; 3] = [7, 11, 19];

pub fn experiment_config() -> ExperimentConfig {
    ExperimentConfig {
        n_values: vec![30, 50],
        p: 0.5,
        trials: 10,
        seed: 20_240_601,
        epsilon: None,
    }
}

/// A strategy run against the optimal robber for its own budget.
pub struct PlayCase {
    pub name: String,
    pub graph: Digraph,
    pub strategy: Box<dyn CopStrategy>,
    /// Capture must happen within this many rounds; for evasion cases, the rounds played.
    pub rounds: usize,
    pub expect_capture: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlayResult {
    pub name: String,
    pub budget: usize,
    pub outcome: Outcome,
    pub rounds: usize,
    pub expect_capture: bool,
    pub passed: bool,
}

fn case(name: &str, graph: Digraph, strategy: Box<dyn CopStrategy>, rounds: usize, expect_capture: bool) -> PlayCase {
    PlayCase {
        name: name.to_string(),
        graph,
        strategy,
        rounds,
        expect_capture,
    }
}

/// The designated instance for every strategy, plus the one-cop-short rotation runs.
pub fn strategy_cases() -> Result<Vec<PlayCase>, StrategyError> {
    let t4 = families::transitive_tournament(4);
    let p5 = families::directed_path(5);
    let p6 = families::directed_path(6);
    let c3 = families::rotation_tournament(1).expect("m = 1");
    let single = Digraph::empty(1);
    let dag = families::random_dag(7, 0.4, 3);
    let dag_bags = DagDecomposition::new(dag.clone(), (0..7).map(|v| vec![v]).collect());
    let sc11 = families::sc_tight(1, 1).expect("odd m");
    let sc11_bags = DagDecomposition::new(
        Digraph::new(2, [(0, 1)]).expect("one arc"),
        vec![vec![0, 1, 2], vec![3, 4, 5]],
    );
    let sc31 = families::sc_tight(3, 1).expect("odd m");
    let two_cycles = Digraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).expect("oriented");
    let topo_t4 = PathDecomposition::singletons(&[0, 1, 2, 3]);

    let mut v = vec![
        case("dag_sweep on transitive T_4", t4.clone(), dag_sweep(&t4)?, 4, true),
        case("dag_sweep on a single vertex", single.clone(), dag_sweep(&single)?, 1, true),
        case("dag_sweep on directed P_6", p6.clone(), dag_sweep(&p6)?, 6, true),
        case("path_sweep on transitive T_4", t4.clone(), path_sweep(&t4, &topo_t4)?, 4, true),
        case(
            "path_sweep on directed P_5",
            p5.clone(),
            path_sweep(&p5, &PathDecomposition::singletons(&[0, 1, 2, 3, 4]))?,
            5,
            true,
        ),
        case(
            "path_sweep on the 3-cycle",
            c3.clone(),
            path_sweep(&c3, &PathDecomposition::new(vec![vec![0, 2], vec![1, 2]]))?,
            2,
            true,
        ),
        case("dag_decomp_sweep on a DAG", dag.clone(), dag_decomp_sweep(&dag, &dag_bags)?, 7, true),
        case(
            "dag_decomp_sweep on the 3-cycle",
            c3.clone(),
            dag_decomp_sweep(&c3, &DagDecomposition::new(Digraph::empty(1), vec![vec![0, 1, 2]]))?,
            1,
            true,
        ),
        case("dag_decomp_sweep on sc_tight(1,1)", sc11.clone(), dag_decomp_sweep(&sc11, &sc11_bags)?, 2, true),
        case(
            "sc_composite (solver play) on sc_tight(3,1)",
            sc31.clone(),
            Box::new(sc_composite(&sc31, InnerPlay::Solver)?),
            4,
            true,
        ),
        case(
            "sc_composite (metric basis) on sc_tight(3,1)",
            sc31.clone(),
            Box::new(sc_composite(&sc31, InnerPlay::Basis)?),
            2,
            true,
        ),
        case(
            "sc_composite on transitive T_4",
            t4.clone(),
            Box::new(sc_composite(&t4, InnerPlay::Basis)?),
            4,
            true,
        ),
        case(
            "sc_composite on two linked 3-cycles",
            two_cycles.clone(),
            Box::new(sc_composite(&two_cycles, InnerPlay::Basis)?),
            2,
            true,
        ),
    ];
    for (m, bound) in [(2, 2), (3, 3), (4, 2)] {
        let g = families::rotation_tournament(m).expect("m >= 1");
        let full = RotationStrategy::full_budget(m);
        v.push(case(
            &format!("rotation on T_{}", 2 * m + 1),
            g.clone(),
            Box::new(rotation_strategy(m, full)?),
            bound,
            true,
        ));
        v.push(case(
            &format!("rotation with one cop short on T_{}", 2 * m + 1),
            g.clone(),
            Box::new(rotation_strategy(m, full - 1)?),
            5 * g.order(),
            false,
        ));
    }
    Ok(v)
}

/// Plays one case; the transcript is returned for further inspection.
pub fn run_case(case: &mut PlayCase) -> Result<(PlayResult, GameTranscript), String> {
    let dm = all_pairs_distances(&case.graph);
    let budget = case.strategy.budget();
    let mut robber = OptimalRobber::new(&case.graph, &dm, budget).map_err(|e| e.to_string())?;
    let transcript =
        play(&case.graph, &dm, case.strategy.as_mut(), &mut robber, case.rounds).map_err(|e| e.to_string())?;
    transcript.check(&case.graph, &dm)?;
    let passed = match transcript.outcome {
        Outcome::Captured { round, .. } => case.expect_capture && round <= case.rounds,
        Outcome::Evaded { .. } => !case.expect_capture,
    };
    Ok((
        PlayResult {
            name: case.name.clone(),
            budget,
            outcome: transcript.outcome,
            rounds: transcript.rounds.len(),
            expect_capture: case.expect_capture,
            passed,
        },
        transcript,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    run: fn(&mut Vec<String>) -> bool,
}

impl Check {
    pub fn run(&self) -> CheckReport {
        let mut details = Vec::new();
        let passed = (self.run)(&mut details);
        CheckReport {
            id: self.id,
            claim: self.claim,
            passed,
            details,
        }
    }
}

fn zeta_of(g: &Digraph) -> Option<usize> {
    localization_number_exact(g, &all_pairs_distances(g), g.order())
        .ok()
        .and_then(|z| z.exact())
}

fn check_values(filter: &str, out: &mut Vec<String>) -> bool {
    let mut ok = true;
    for (inst, expected) in exact_value_instances().into_iter().filter(|(i, _)| i.name.starts_with(filter)) {
        let got = zeta_of(&inst.graph);
        ok &= got == Some(expected);
        out.push(format!("{}: zeta {:?}, expected {expected}", inst.name, got));
    }
    ok
}

fn check_rotation(out: &mut Vec<String>) -> bool {
    check_values("rotation", out)
}

fn check_d3(out: &mut Vec<String>) -> bool {
    check_values("tripartite_cycle", out)
}

fn check_blowup(out: &mut Vec<String>) -> bool {
    check_values("blowup", out)
}

fn check_sc_tight(out: &mut Vec<String>) -> bool {
    let mut ok = check_values("sc_tight", out);
    let g = families::sc_tight(3, 1).expect("odd m");
    let sc = strong_component_bound(&g).ok();
    out.push(format!("sc_tight 3 1: max zeta(G_i) + out-degree of SC(G) = {sc:?}"));
    ok &= sc == Some(3);
    ok
}

fn check_dag(out: &mut Vec<String>) -> bool {
    let bad: Vec<String> = random_dag_instances()
        .into_iter()
        .filter(|i| zeta_of(&i.graph) != Some(1))
        .map(|i| i.name)
        .collect();
    out.push(format!("{} of 50 acyclic digraphs have zeta = 1", 50 - bad.len()));
    out.extend(bad.iter().map(|n| format!("zeta != 1: {n}")));
    bad.is_empty()
}

fn check_metric_dim_one(out: &mut Vec<String>) -> bool {
    let mut disagreements = 0;
    for inst in classifier_instances() {
        let dm = all_pairs_distances(&inst.graph);
        let beta = metric_dimension_exact(&inst.graph, &dm).len();
        let class = metric_dim_one_classifier(&inst.graph, &dm);
        if class.is_yes() != (beta == 1) {
            disagreements += 1;
            out.push(format!("disagreement on {}: beta {beta}, classifier {class:?}", inst.name));
        }
    }
    out.push(format!("{disagreements} disagreements over 200 digraphs"));
    disagreements == 0
}

/// `log_M(k+1) <= ζ <= β <= min(lp bound, n)`; `None` when the instance is out of budget.
pub fn bound_chain(g: &Digraph) -> Option<Result<(), String>> {
    let dm = all_pairs_distances(g);
    let zeta = zeta_of(g)?;
    let beta = metric_dimension_exact(g, &dm).len();
    let lower = degeneracy_lower_bound(g, &dm);
    let lp = lp_upper_bound(&dm);
    let mut problems = Vec::new();
    if matches!(spread(g, &dm), Spread::Finite(_)) && lower > zeta as f64 + 1e-9 {
        problems.push(format!("lower bound {lower} > zeta {zeta}"));
    }
    if zeta > beta {
        problems.push(format!("zeta {zeta} > beta {beta}"));
    }
    let upper = lp.map_or(g.order() as f64, |u| u.min(g.order() as f64));
    if beta as f64 > upper + 1e-9 {
        problems.push(format!("beta {beta} > {upper}"));
    }
    Some(if problems.is_empty() {
        Ok(())
    } else {
        Err(problems.join("; "))
    })
}

pub fn bound_chain_instances() -> Vec<Instance> {
    let mut v: Vec<Instance> = exact_value_instances().into_iter().map(|(i, _)| i).collect();
    v.extend(random_dag_instances());
    v.extend(classifier_instances());
    v
}

fn check_bound_chain(out: &mut Vec<String>) -> bool {
    let mut ok = true;
    let instances = bound_chain_instances();
    for inst in &instances {
        match bound_chain(&inst.graph) {
            Some(Ok(())) => {}
            Some(Err(e)) => {
                ok = false;
                out.push(format!("{}: {e}", inst.name));
            }
            None => {
                ok = false;
                out.push(format!("{}: not solved", inst.name));
            }
        }
    }
    out.push(format!("{} instances checked", instances.len()));
    ok
}

fn check_sc_bound(out: &mut Vec<String>) -> bool {
    let mut ok = true;
    for inst in sc_bound_instances() {
        let zeta = zeta_of(&inst.graph);
        let bound = strong_component_bound(&inst.graph).ok();
        match (zeta, bound) {
            (Some(z), Some(b)) if z <= b => {}
            _ => {
                ok = false;
                out.push(format!("{}: zeta {zeta:?}, bound {bound:?}", inst.name));
            }
        }
    }
    out.push("100 digraphs checked".into());
    ok
}

fn check_strategies(out: &mut Vec<String>) -> bool {
    let cases = match strategy_cases() {
        Ok(c) => c,
        Err(e) => {
            out.push(format!("could not build strategies: {e}"));
            return false;
        }
    };
    let mut ok = true;
    for mut c in cases {
        match run_case(&mut c) {
            Ok((r, _)) => {
                ok &= r.passed;
                out.push(format!(
                    "{}: {} cops, {:?} ({} rounds){}",
                    r.name,
                    r.budget,
                    r.outcome,
                    r.rounds,
                    if r.passed { "" } else { " FAILED" }
                ));
            }
            Err(e) => {
                ok = false;
                out.push(format!("{}: {e}", c.name));
            }
        }
    }
    ok
}

fn check_lovasz(out: &mut Vec<String>) -> bool {
    let mut ok = true;
    let mut count = 0;
    for inst in bound_chain_instances().into_iter().chain(sc_bound_instances()) {
        let dm = all_pairs_distances(&inst.graph);
        let h = distinguisher_hypergraph(&dm, Convention::CopProbe);
        let Ok(tau) = fractional_vertex_cover(&h) else {
            ok = false;
            out.push(format!("{}: LP failed", inst.name));
            continue;
        };
        let greedy = greedy_vertex_cover(&h).expect("edges are nonempty");
        let bound = lovasz_bound(greedy.max_degree, tau.value);
        if greedy.cover.len() as f64 > bound + 1e-9 || !is_resolving(&dm, &greedy.cover) {
            ok = false;
            out.push(format!("{}: greedy {} vs bound {bound}", inst.name, greedy.cover.len()));
        }
        count += 1;
    }
    out.push(format!("{count} hypergraphs checked"));
    ok
}

fn check_paley(out: &mut Vec<String>) -> bool {
    let mut ok = true;
    for q in PALEY_ORDERS {
        let g = families::paley_tournament(q).expect("q = 3 mod 4 prime");
        let dm = all_pairs_distances(&g);
        let regular = doubly_regular_check(&g);
        let s_ok = (0..q).all(|x| (x + 1..q).all(|y| sameness(&g, x, y).s() == (q - 3) / 2));
        let diameter = dm.diameter();
        ok &= regular && s_ok && diameter == Distance::Finite(2);
        out.push(format!("P_{q}: doubly regular {regular}, s = (q-3)/2 {s_ok}, diameter {diameter}"));
        if q <= 11 {
            let beta = metric_dimension_exact(&g, &dm).len();
            let zeta = zeta_of(&g);
            ok &= zeta.is_some_and(|z| z <= beta);
            out.push(format!("P_{q}: beta {beta}, zeta {zeta:?}"));
        }
    }
    ok
}

fn check_random(out: &mut Vec<String>) -> bool {
    let config = experiment_config();
    let (Ok(rows), Ok(again)) = (experiment::run(&config), experiment::run(&config)) else {
        out.push("experiment failed to run".into());
        return false;
    };
    let deterministic = experiment::to_csv_string(&rows) == experiment::to_csv_string(&again);
    out.push(format!("bitwise identical CSV on rerun: {deterministic}"));
    let fractions = experiment::bracket_fractions(&config).unwrap_or_default();
    for (r, f) in rows.iter().zip(&fractions) {
        out.push(format!(
            "n={} trial={} diameter={} sameness in bracket {:.3} e4c ratio {:.4}",
            r.n, r.trial, r.diameter, f, r.e4c_ratio
        ));
    }
    deterministic
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { id: "rotation", claim: "zeta(T_{2m+1}) = floor(m/2) + 1 for m in 1..=3", run: check_rotation },
        Check { id: "d3", claim: "zeta(D_3(i)) = i for i in 1..=2", run: check_d3 },
        Check { id: "blowup", claim: "zeta of the 3-fold blow-up of the 3-cycle is 3", run: check_blowup },
        Check { id: "sc_tight", claim: "zeta(sc_tight(3,1)) = max zeta(G_i) + out-degree of SC(G) = 3", run: check_sc_tight },
        Check { id: "dag", claim: "acyclic digraphs have zeta = 1", run: check_dag },
        Check { id: "metric_dim_one", claim: "the structural test agrees with beta = 1", run: check_metric_dim_one },
        Check { id: "bound_chain", claim: "log_M(k+1) <= zeta <= beta <= min((1 + 2 ln n)/c, n)", run: check_bound_chain },
        Check { id: "sc_bound", claim: "zeta <= max zeta(G_i) + out-degree of SC(G)", run: check_sc_bound },
        Check { id: "strategies", claim: "each strategy captures within its round bound; one cop short, rotation loses", run: check_strategies },
        Check { id: "lovasz", claim: "greedy cover <= (1 + ln d) tau* and resolves", run: check_lovasz },
        Check { id: "paley", claim: "Paley tournaments are doubly regular with s = (q-3)/2 and diameter 2", run: check_paley },
        Check { id: "random", claim: "random-tournament experiment is reproducible (statistics reported)", run: check_random },
    ]
}

pub fn run_check(id: &str) -> Option<CheckReport> {
    checks().into_iter().find(|c| c.id == id).map(|c| c.run())
}
