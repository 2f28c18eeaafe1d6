//! Cop strategies that realize the constructive upper bounds.
//!
//! Every strategy sees only the transcript so far and is deterministic, so a
//! game can be replayed from its transcript.

use thiserror::Error;

use crate::decomposition::{validate_dag_decomposition, validate_path_decomposition, DagDecomposition, PathDecomposition};
use crate::digraph::Digraph;
use crate::distance::{all_pairs_distances, DistanceMatrix};
use crate::game::{localization_number_exact, GameSolver, Round, Zeta};
use crate::resolve::metric_dimension_exact;
use crate::structure::{strong_components, topological_sort, SccDecomposition};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, PartialEq)]
pub enum StrategyError {
    #[error("digraph has a directed cycle")]
    Cyclic,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("candidate class {0:?} does not fit a window of three consecutive vertices")]
    Ambiguous(Vec<usize>),
    #[error("strategy ran out of probes after {0} rounds")]
    Exhausted(usize),
    #[error("solver: {0}")]
    Solver(String),
}

pub trait CopStrategy {
    fn name(&self) -> &str;
    /// Most cops used in any one round.
    fn budget(&self) -> usize;
    /// Rounds within which the strategy captures any robber.
    fn round_bound(&self) -> usize;
    fn next_probe(&mut self, history: &[Round]) -> Result<Vec<usize>, StrategyError>;
}

/// Candidate set the next probe will face.
pub fn current_candidates(n: usize, history: &[Round]) -> VertexSet {
    history
        .last()
        .map_or(VertexSet::full(n), |r| r.next_candidates.iter().copied().collect())
}

/// Probes a fixed list of vertex sets, one per round.
struct Sweep {
    name: &'static str,
    probes: Vec<Vec<usize>>,
    budget: usize,
}

impl CopStrategy for Sweep {
    fn name(&self) -> &str {
        self.name
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn round_bound(&self) -> usize {
        self.probes.len()
    }

    fn next_probe(&mut self, history: &[Round]) -> Result<Vec<usize>, StrategyError> {
        self.probes
            .get(history.len())
            .cloned()
            .ok_or(StrategyError::Exhausted(history.len()))
    }
}

/// One cop probing the vertices of an acyclic digraph in topological order.
pub fn dag_sweep(g: &Digraph) -> Result<Box<dyn CopStrategy>, StrategyError> {
    let order = topological_sort(g).map_err(|_| StrategyError::Cyclic)?;
    Ok(Box::new(Sweep {
        name: "dag_sweep",
        probes: order.into_iter().map(|v| vec![v]).collect(),
        budget: 1,
    }))
}

fn bag_sweep(name: &'static str, bags: impl IntoIterator<Item = Vec<usize>>) -> Sweep {
    let probes: Vec<Vec<usize>> = bags
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|mut b| {
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    let budget = probes.iter().map(Vec::len).max().unwrap_or(1);
    Sweep { name, probes, budget }
}

/// Probes the bags of a directed path-decomposition in order (`width + 1` cops).
pub fn path_sweep(g: &Digraph, pd: &PathDecomposition) -> Result<Box<dyn CopStrategy>, StrategyError> {
    let v = validate_path_decomposition(g, pd);
    if !v.valid {
        return Err(StrategyError::InvalidDecomposition(v.violation.unwrap_or_default()));
    }
    Ok(Box::new(bag_sweep("path_sweep", pd.bags.iter().cloned())))
}

/// Probes the bags of a DAG-decomposition in a topological order of its index DAG (`width` cops).
pub fn dag_decomp_sweep(g: &Digraph, dd: &DagDecomposition) -> Result<Box<dyn CopStrategy>, StrategyError> {
    let v = validate_dag_decomposition(g, dd);
    if !v.valid {
        return Err(StrategyError::InvalidDecomposition(v.violation.unwrap_or_default()));
    }
    let order = dd
        .sweep_order()
        .ok_or_else(|| StrategyError::InvalidDecomposition("index digraph is cyclic".into()))?;
    Ok(Box::new(bag_sweep(
        "dag_decomp_sweep",
        order.into_iter().map(|d| dd.bags[d].clone()),
    )))
}

/// The three-move schedule on `T_{2m+1}` with `⌊m/2⌋ + 1` cops.
///
/// The first move uses vertices `4s`. Every later move takes the window
/// `{R, R+1, R+2}` holding the robber's last class and probes `R + 2s + 1`.
pub struct RotationStrategy {
    m: usize,
    cops: usize,
}

impl RotationStrategy {
    pub fn full_budget(m: usize) -> usize {
        m / 2 + 1
    }

    fn order(&self) -> usize {
        2 * self.m + 1
    }

    /// Cyclic start of the shortest window of consecutive vertices holding `class`, and its length.
    fn window(&self, class: &[usize]) -> (usize, usize) {
        let n = self.order();
        let mut best = (class[0], n);
        for &start in class {
            let len = class.iter().map(|&v| (v + n - start) % n).max().unwrap_or(0) + 1;
            if len < best.1 {
                best = (start, len);
            }
        }
        best
    }
}

pub fn rotation_strategy(m: usize, cops: usize) -> Result<RotationStrategy, StrategyError> {
    if m == 0 {
        return Err(StrategyError::Precondition("rotation strategy needs m >= 1".into()));
    }
    if cops == 0 || cops > RotationStrategy::full_budget(m) {
        return Err(StrategyError::Precondition(format!(
            "cop count {cops} must lie in 1..={}",
            RotationStrategy::full_budget(m)
        )));
    }
    Ok(RotationStrategy { m, cops })
}

impl CopStrategy for RotationStrategy {
    fn name(&self) -> &str {
        "rotation"
    }

    fn budget(&self) -> usize {
        self.cops
    }

    fn round_bound(&self) -> usize {
        3
    }

    fn next_probe(&mut self, history: &[Round]) -> Result<Vec<usize>, StrategyError> {
        let n = self.order();
        let k = Self::full_budget(self.m);
        let mut probe: Vec<usize> = match history.last() {
            None => (0..k).map(|s| 4 * s).collect(),
            Some(last) => {
                let (r, len) = self.window(&last.class);
                if len > 3 && self.cops == k {
                    return Err(StrategyError::Ambiguous(last.class.clone()));
                }
                (0..k).map(|s| (r + 2 * s + 1) % n).collect()
            }
        };
        probe.truncate(self.cops);
        probe.sort_unstable();
        probe.dedup();
        Ok(probe)
    }
}

/// How `sc_composite` plays inside one strong component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InnerPlay {
    /// Probe a metric basis: one round per component.
    #[default]
    Basis,
    /// Follow the exact solver with `ζ(G_i)` cops.
    Solver,
}

struct Component {
    vertices: Vec<usize>,
    /// Lowest vertex of each child component.
    markers: Vec<usize>,
    inner: Inner,
    rank: u32,
}

enum Inner {
    Basis(Vec<usize>),
    Solver(GameSolver),
}

/// Clears strong components in topological order. In each phase the cops play
/// inside the component while one marker cop sits in each child component; a
/// finite marker distance means the robber has left.
pub struct ScComposite {
    n: usize,
    components: Vec<Component>,
    component_of: Vec<usize>,
    budget: usize,
}

pub fn sc_composite(g: &Digraph, mode: InnerPlay) -> Result<ScComposite, StrategyError> {
    let scc: SccDecomposition = strong_components(g);
    let mut components = Vec::with_capacity(scc.len());
    let mut inner_max = 0;
    for (c, vertices) in scc.components.iter().enumerate() {
        let sub = g.induced(vertices);
        let sub_dm = all_pairs_distances(&sub);
        let (inner, size, rank) = match mode {
            InnerPlay::Basis => {
                let basis = metric_dimension_exact(&sub, &sub_dm).vertices;
                let global: Vec<usize> = basis.iter().map(|&i| vertices[i]).collect();
                (Inner::Basis(global), basis.len(), 0)
            }
            InnerPlay::Solver => {
                let zeta = localization_number_exact(&sub, &sub_dm, sub.order())
                    .map_err(|e| StrategyError::Solver(e.to_string()))?;
                let Zeta::Exact(z) = zeta else {
                    unreachable!("a component is always won with all of its vertices")
                };
                let solver = GameSolver::new(&sub, &sub_dm, z).map_err(|e| StrategyError::Solver(e.to_string()))?;
                let rank = solver.initial_rank().expect("solver wins with zeta cops");
                (Inner::Solver(solver), z, rank)
            }
        };
        inner_max = inner_max.max(size);
        let markers = scc.children(c).iter().map(|&d| scc.components[d][0]).collect();
        components.push(Component {
            vertices: vertices.clone(),
            markers,
            inner,
            rank,
        });
    }
    Ok(ScComposite {
        n: g.order(),
        components,
        budget: inner_max + scc.max_out_degree(),
        component_of: scc.component_of,
    })
}

impl ScComposite {
    /// Component the cops work on when facing `candidates`: the first one still holding a candidate.
    pub fn phase(&self, candidates: VertexSet) -> usize {
        candidates
            .iter()
            .map(|v| self.component_of[v])
            .min()
            .expect("candidate set is nonempty")
    }

    pub fn component_vertices(&self, c: usize) -> &[usize] {
        &self.components[c].vertices
    }
}

impl CopStrategy for ScComposite {
    fn name(&self) -> &str {
        "sc_composite"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn round_bound(&self) -> usize {
        self.components.iter().map(|c| c.rank as usize + 1).sum()
    }

    fn next_probe(&mut self, history: &[Round]) -> Result<Vec<usize>, StrategyError> {
        let candidates = current_candidates(self.n, history);
        let phase = self.phase(candidates);
        let comp = &mut self.components[phase];
        let mut probe = match &mut comp.inner {
            Inner::Basis(basis) => basis.clone(),
            Inner::Solver(solver) => {
                let local: VertexSet = comp
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| candidates.contains(v))
                    .map(|(i, _)| i)
                    .collect();
                let p = solver
                    .winning_probe(local)
                    .map_err(|e| StrategyError::Solver(e.to_string()))?
                    .ok_or_else(|| StrategyError::Solver("component state is not winning".into()))?;
                p.into_iter().map(|i| comp.vertices[i]).collect()
            }
        };
        probe.extend(&comp.markers);
        probe.sort_unstable();
        Ok(probe)
    }
}

/// Replays the solver's ranked winning region on the whole digraph.
pub struct SolverStrategy {
    solver: GameSolver,
    n: usize,
}

pub fn solver_strategy(g: &Digraph, dm: &DistanceMatrix, k: usize) -> Result<SolverStrategy, StrategyError> {
    let solver = GameSolver::new(g, dm, k).map_err(|e| StrategyError::Solver(e.to_string()))?;
    if !solver.cops_win() {
        return Err(StrategyError::Precondition(format!("{k} cops do not win on this digraph")));
    }
    Ok(SolverStrategy { solver, n: g.order() })
}

impl CopStrategy for SolverStrategy {
    fn name(&self) -> &str {
        "solver"
    }

    fn budget(&self) -> usize {
        self.solver.cops()
    }

    fn round_bound(&self) -> usize {
        self.solver.initial_rank().map_or(0, |r| r as usize + 1)
    }

    fn next_probe(&mut self, history: &[Round]) -> Result<Vec<usize>, StrategyError> {
        let s = current_candidates(self.n, history);
        self.solver
            .winning_probe(s)
            .map_err(|e| StrategyError::Solver(e.to_string()))?
            .ok_or_else(|| StrategyError::Solver("candidate set is not winning".into()))
    }
}
