//! Rules of the localization game, the exact solver and the play engine.
//!
//! The solver works on candidate sets. A set `S` is winning for `k` cops when
//! some probe splits `S` into classes that are each a singleton or whose robber
//! step is already winning. Winning sets are computed as a least fixpoint over
//! the candidate sets reachable from `V`, one Jacobi pass at a time; the pass
//! in which a set first wins is its rank, an upper bound on the rounds the cops
//! still need from there.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::distance::{Distance, DistanceMatrix};
use crate::par;
use crate::strategies::{CopStrategy, StrategyError};
use crate::vertex_set::VertexSet;

/// Solver size limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_vertices: usize,
    pub max_probes: u64,
    pub max_states: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_vertices: 24,
            max_probes: 1_000_000,
            max_states: 4_000_000,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GameError {
    #[error("cop count {k} must lie in 1..={n}")]
    BudgetOutOfRange { k: usize, n: usize },
    #[error("probe is empty")]
    EmptyProbe,
    #[error("probe vertex {vertex} is not below {n}")]
    ProbeOutOfRange { vertex: usize, n: usize },
    #[error("probe places two cops on vertex {0}")]
    DuplicateProbeVertex(usize),
    #[error("probe uses {used} cops but the budget is {budget}")]
    OverBudget { used: usize, budget: usize },
    #[error("instance exceeds solver limits: {0}")]
    Resource(String),
    #[error("robber chose class {0}, which does not exist")]
    InvalidRobberChoice(usize),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// Sorts and checks a probe of at most `budget` distinct vertices.
pub fn validate_probe(n: usize, budget: usize, probe: &[usize]) -> Result<Vec<usize>, GameError> {
    if probe.is_empty() {
        return Err(GameError::EmptyProbe);
    }
    let mut p = probe.to_vec();
    p.sort_unstable();
    if let Some(&v) = p.iter().find(|&&v| v >= n) {
        return Err(GameError::ProbeOutOfRange { vertex: v, n });
    }
    if let Some(w) = p.windows(2).find(|w| w[0] == w[1]) {
        return Err(GameError::DuplicateProbeVertex(w[0]));
    }
    if p.len() > budget {
        return Err(GameError::OverBudget { used: p.len(), budget });
    }
    Ok(p)
}

/// One block of the partition of a candidate set under a probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeClass {
    pub vector: Vec<Distance>,
    pub class: VertexSet,
}

/// Splits `s` by distance vectors from the (sorted) probe; blocks come in vector order.
pub fn partition_by_probe(dm: &DistanceMatrix, s: VertexSet, probe: &[usize]) -> Vec<ProbeClass> {
    let mut keyed: Vec<(Vec<Distance>, usize)> = s
        .iter()
        .map(|x| (probe.iter().map(|&p| dm.get(p, x)).collect(), x))
        .collect();
    keyed.sort();
    let mut out: Vec<ProbeClass> = Vec::new();
    for (vector, x) in keyed {
        match out.last_mut() {
            Some(last) if last.vector == vector => last.class.insert(x),
            _ => out.push(ProbeClass {
                vector,
                class: VertexSet::singleton(x),
            }),
        }
    }
    out
}

/// Closed out-neighbourhoods as bitmasks.
fn closed_neighborhoods(g: &Digraph) -> Vec<VertexSet> {
    (0..g.order())
        .map(|v| g.closed_out_neighborhood(v).into_iter().collect())
        .collect()
}

fn step_with(closed: &[VertexSet], c: VertexSet) -> VertexSet {
    c.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(closed[v]))
}

/// Where the robber can be after leaving `c`: the union of closed out-neighbourhoods.
pub fn robber_step(g: &Digraph, c: VertexSet) -> VertexSet {
    c.iter().fold(VertexSet::EMPTY, |mut acc, v| {
        acc.insert(v);
        for &w in g.out_neighbors(v) {
            acc.insert(w);
        }
        acc
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A probe together with the partition of `V` it induces.
struct ProbeSplit {
    probe: Vec<usize>,
    classes: Vec<VertexSet>,
}

enum Analysis {
    /// The probe at this index separates the whole set.
    Immediate(u32),
    /// Each option is a probe index and the robber steps that must already be winning.
    Options(Vec<(u32, Vec<VertexSet>)>),
}

enum StateInfo {
    Pending,
    Immediate(u32),
    Options(Vec<(u32, Box<[u32]>)>),
}

const UNDECIDED: u32 = u32::MAX;

/// Least-fixpoint solver for a fixed number of cops.
pub struct GameSolver {
    n: usize,
    k: usize,
    closed: Vec<VertexSet>,
    splits: Vec<ProbeSplit>,
    limits: SolverLimits,
    index: HashMap<VertexSet, u32>,
    states: Vec<VertexSet>,
    info: Vec<StateInfo>,
    rank: Vec<u32>,
}

impl GameSolver {
    pub fn new(g: &Digraph, dm: &DistanceMatrix, k: usize) -> Result<Self, GameError> {
        Self::with_limits(g, dm, k, SolverLimits::default())
    }

    pub fn with_limits(g: &Digraph, dm: &DistanceMatrix, k: usize, limits: SolverLimits) -> Result<Self, GameError> {
        let n = g.order();
        if k == 0 || k > n {
            return Err(GameError::BudgetOutOfRange { k, n });
        }
        if n > limits.max_vertices {
            return Err(GameError::Resource(format!(
                "{n} vertices, limit {}",
                limits.max_vertices
            )));
        }
        let probes = binomial(n, k);
        if probes > limits.max_probes as u128 {
            return Err(GameError::Resource(format!(
                "C({n},{k}) = {probes} probes, limit {}",
                limits.max_probes
            )));
        }
        let mut solver = GameSolver {
            n,
            k,
            closed: closed_neighborhoods(g),
            splits: probe_splits(dm, k),
            limits,
            index: HashMap::new(),
            states: Vec::new(),
            info: Vec::new(),
            rank: Vec::new(),
        };
        solver.ensure(VertexSet::full(n))?;
        Ok(solver)
    }

    pub fn cops(&self) -> usize {
        self.k
    }

    /// Distinct probe partitions kept after merging probes with identical splits.
    pub fn probe_count(&self) -> usize {
        self.splits.len()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Whether `k` cops win from the initial candidate set `V`.
    pub fn cops_win(&self) -> bool {
        self.rank[0] != UNDECIDED
    }

    pub fn initial_rank(&self) -> Option<u32> {
        (self.rank[0] != UNDECIDED).then_some(self.rank[0])
    }

    pub fn is_winning(&mut self, s: VertexSet) -> Result<bool, GameError> {
        Ok(self.rank(s)?.is_some())
    }

    /// Rank of `s`, or `None` when the robber survives forever from `s`.
    pub fn rank(&mut self, s: VertexSet) -> Result<Option<u32>, GameError> {
        let id = self.ensure(s)?;
        let r = self.rank[id as usize];
        Ok((r != UNDECIDED).then_some(r))
    }

    /// A probe that wins from `s` and lowers the rank of every non-singleton class.
    pub fn winning_probe(&mut self, s: VertexSet) -> Result<Option<Vec<usize>>, GameError> {
        let id = self.ensure(s)? as usize;
        let r = self.rank[id];
        if r == UNDECIDED {
            return Ok(None);
        }
        let probe_index = match &self.info[id] {
            StateInfo::Immediate(p) => *p,
            StateInfo::Options(options) => {
                options
                    .iter()
                    .find(|(_, reqs)| reqs.iter().all(|&q| self.rank[q as usize] < r))
                    .expect("ranked state has a witnessing option")
                    .0
            }
            StateInfo::Pending => unreachable!("explored state"),
        };
        Ok(Some(self.splits[probe_index as usize].probe.clone()))
    }

    fn analyse(&self, s: VertexSet) -> Analysis {
        let mut options: Vec<(u32, Vec<VertexSet>)> = Vec::new();
        let mut seen: HashMap<Vec<VertexSet>, ()> = HashMap::new();
        'probes: for (i, split) in self.splits.iter().enumerate() {
            let mut reqs = Vec::new();
            for &c in &split.classes {
                let part = c.intersection(s);
                if part.len() >= 2 {
                    let next = step_with(&self.closed, part);
                    // a requirement containing s can never rank below s
                    if s.is_subset(next) {
                        continue 'probes;
                    }
                    reqs.push(next);
                }
            }
            if reqs.is_empty() {
                return Analysis::Immediate(i as u32);
            }
            reqs.sort_unstable();
            reqs.dedup();
            if seen.insert(reqs.clone(), ()).is_none() {
                options.push((i as u32, reqs));
            }
        }
        Analysis::Options(options)
    }

    fn intern(&mut self, s: VertexSet, frontier: &mut Vec<VertexSet>) -> Result<u32, GameError> {
        if let Some(&id) = self.index.get(&s) {
            return Ok(id);
        }
        if self.states.len() >= self.limits.max_states {
            return Err(GameError::Resource(format!(
                "more than {} candidate sets",
                self.limits.max_states
            )));
        }
        let id = self.states.len() as u32;
        self.index.insert(s, id);
        self.states.push(s);
        self.info.push(StateInfo::Pending);
        self.rank.push(UNDECIDED);
        frontier.push(s);
        Ok(id)
    }

    /// Explores everything reachable from `s` and re-solves if new sets appeared.
    fn ensure(&mut self, s: VertexSet) -> Result<u32, GameError> {
        assert!(!s.is_empty() && s.is_subset(VertexSet::full(self.n)), "candidate set out of range");
        if let Some(&id) = self.index.get(&s) {
            return Ok(id);
        }
        let mut frontier = Vec::new();
        let id = self.intern(s, &mut frontier)?;
        while !frontier.is_empty() {
            let analysed = par::map_slice(&frontier, |&t| self.analyse(t));
            let mut next = Vec::new();
            for (t, a) in frontier.iter().zip(analysed) {
                let tid = self.index[t] as usize;
                self.info[tid] = match a {
                    Analysis::Immediate(p) => {
                        self.rank[tid] = 0;
                        StateInfo::Immediate(p)
                    }
                    Analysis::Options(options) => {
                        let mut resolved = Vec::with_capacity(options.len());
                        for (p, reqs) in options {
                            let ids = reqs
                                .into_iter()
                                .map(|r| self.intern(r, &mut next))
                                .collect::<Result<Vec<_>, _>>()?;
                            resolved.push((p, ids.into_boxed_slice()));
                        }
                        StateInfo::Options(resolved)
                    }
                };
            }
            frontier = next;
        }
        self.solve();
        Ok(id)
    }

    /// Jacobi passes: pass `r` ranks every set with an option whose requirements all ranked before `r`.
    fn solve(&mut self) {
        let mut pass = 1u32;
        loop {
            let rank = &self.rank;
            let info = &self.info;
            let fresh: Vec<bool> = par::map_range(self.states.len(), |i| {
                rank[i] == UNDECIDED
                    && match &info[i] {
                        StateInfo::Options(options) => options
                            .iter()
                            .any(|(_, reqs)| reqs.iter().all(|&q| rank[q as usize] < pass)),
                        _ => false,
                    }
            });
            let mut changed = false;
            for (i, f) in fresh.into_iter().enumerate() {
                if f {
                    self.rank[i] = pass;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            pass += 1;
        }
    }
}

/// All `k`-subsets with their partitions of `V`, keeping the first probe per distinct partition.
fn probe_splits(dm: &DistanceMatrix, k: usize) -> Vec<ProbeSplit> {
    let n = dm.order();
    let probes: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let full = VertexSet::full(n);
    let partitions: Vec<Vec<VertexSet>> = par::map_slice(&probes, |p| {
        let mut classes: Vec<VertexSet> = partition_by_probe(dm, full, p).into_iter().map(|c| c.class).collect();
        classes.sort_unstable();
        classes
    });
    let mut seen = HashMap::new();
    let mut splits = Vec::new();
    for (probe, classes) in probes.into_iter().zip(partitions) {
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(classes) {
            let classes = e.key().clone();
            e.insert(());
            splits.push(ProbeSplit { probe, classes });
        }
    }
    splits
}

/// `ζ(G)` when it is at most the search cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Zeta {
    Exact(usize),
    Exceeds(usize),
}

impl Zeta {
    pub fn exact(self) -> Option<usize> {
        match self {
            Zeta::Exact(z) => Some(z),
            Zeta::Exceeds(_) => None,
        }
    }
}

pub fn cops_win(g: &Digraph, dm: &DistanceMatrix, k: usize) -> Result<bool, GameError> {
    Ok(GameSolver::new(g, dm, k)?.cops_win())
}

/// Smallest `k <= k_max` for which `k` cops win.
pub fn localization_number_exact(g: &Digraph, dm: &DistanceMatrix, k_max: usize) -> Result<Zeta, GameError> {
    localization_number_with_limits(g, dm, k_max, SolverLimits::default())
}

pub fn localization_number_with_limits(
    g: &Digraph,
    dm: &DistanceMatrix,
    k_max: usize,
    limits: SolverLimits,
) -> Result<Zeta, GameError> {
    for k in 1..=k_max.min(g.order()) {
        if GameSolver::with_limits(g, dm, k, limits)?.cops_win() {
            return Ok(Zeta::Exact(k));
        }
    }
    Ok(Zeta::Exceeds(k_max))
}

/// The robber's side of a round: pick one block of the partition.
pub trait RobberAdversary {
    fn name(&self) -> &str;
    fn choose(&mut self, candidates: VertexSet, probe: &[usize], classes: &[ProbeClass]) -> Result<usize, GameError>;
}

/// Plays into the cops' losing region whenever possible.
pub struct OptimalRobber {
    solver: GameSolver,
}

impl OptimalRobber {
    pub fn new(g: &Digraph, dm: &DistanceMatrix, k: usize) -> Result<Self, GameError> {
        Ok(OptimalRobber {
            solver: GameSolver::new(g, dm, k)?,
        })
    }

    pub fn from_solver(solver: GameSolver) -> Self {
        OptimalRobber { solver }
    }
}

impl RobberAdversary for OptimalRobber {
    fn name(&self) -> &str {
        "optimal"
    }

    /// Largest class whose step is losing for the cops; failing that the
    /// non-singleton class of highest rank; a singleton only when forced.
    fn choose(&mut self, _candidates: VertexSet, _probe: &[usize], classes: &[ProbeClass]) -> Result<usize, GameError> {
        let mut best: Option<(bool, u32, usize, usize)> = None;
        for (i, c) in classes.iter().enumerate() {
            if c.class.len() < 2 {
                continue;
            }
            let next = step_with(&self.solver.closed, c.class);
            let key = match self.solver.rank(next)? {
                None => (true, 0, c.class.len()),
                Some(r) => (false, r, c.class.len()),
            };
            if best.is_none_or(|(e, r, l, _)| key > (e, r, l)) {
                best = Some((key.0, key.1, key.2, i));
            }
        }
        Ok(best.map_or(0, |b| b.3))
    }
}

/// Always takes the largest class.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyRobber;

impl RobberAdversary for GreedyRobber {
    fn name(&self) -> &str {
        "greedy"
    }

    fn choose(&mut self, _candidates: VertexSet, _probe: &[usize], classes: &[ProbeClass]) -> Result<usize, GameError> {
        let mut best = 0;
        for (i, c) in classes.iter().enumerate() {
            if c.class.len() > classes[best].class.len() {
                best = i;
            }
        }
        Ok(best)
    }
}

/// One round: the probe, what the cops saw, the robber's class and the
/// candidate set after the robber moved (equal to the class on capture).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub probe: Vec<usize>,
    pub vector: Vec<Distance>,
    pub class: Vec<usize>,
    pub next_candidates: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Captured { round: usize, vertex: usize },
    Evaded { max_rounds: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTranscript {
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
}

#[derive(Serialize, Deserialize)]
struct RoundLine {
    round: usize,
    #[serde(flatten)]
    data: Round,
}

impl GameTranscript {
    pub fn captured(&self) -> bool {
        matches!(self.outcome, Outcome::Captured { .. })
    }

    /// One JSON object per round, then one for the outcome.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rounds.iter().enumerate() {
            let line = RoundLine {
                round: i + 1,
                data: r.clone(),
            };
            out.push_str(&serde_json::to_string(&line).expect("round serializes"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.outcome).expect("outcome serializes"));
        out.push('\n');
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self, serde_json::Error> {
        let mut rounds = Vec::new();
        let mut outcome = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let value: serde_json::Value = serde_json::from_str(line)?;
            if value.get("outcome").is_some() {
                outcome = Some(serde_json::from_value(value)?);
            } else {
                rounds.push(serde_json::from_value::<RoundLine>(value)?.data);
            }
        }
        let outcome = outcome.ok_or_else(|| serde::de::Error::custom("transcript has no outcome line"))?;
        Ok(GameTranscript { rounds, outcome })
    }

    /// Replays the transcript against the rules; returns the first inconsistency.
    pub fn check(&self, g: &Digraph, dm: &DistanceMatrix) -> Result<(), String> {
        let mut s = VertexSet::full(g.order());
        for (i, r) in self.rounds.iter().enumerate() {
            let classes = partition_by_probe(dm, s, &r.probe);
            let class: VertexSet = r.class.iter().copied().collect();
            let block = classes
                .iter()
                .find(|c| c.vector == r.vector)
                .ok_or_else(|| format!("round {}: vector {:?} not observed", i + 1, r.vector))?;
            if block.class != class {
                return Err(format!("round {}: class is not a partition block", i + 1));
            }
            let last = i + 1 == self.rounds.len();
            if class.len() == 1 {
                if !last {
                    return Err(format!("round {}: singleton class but play continued", i + 1));
                }
            } else {
                s = robber_step(g, class);
            }
            if r.next_candidates.iter().copied().collect::<VertexSet>() != if class.len() == 1 { class } else { s } {
                return Err(format!("round {}: wrong successor candidates", i + 1));
            }
        }
        match self.outcome {
            Outcome::Captured { round, vertex } => {
                let ok = round == self.rounds.len() && self.rounds.last().is_some_and(|r| r.class == vec![vertex]);
                if ok {
                    Ok(())
                } else {
                    Err("capture does not match the final round".into())
                }
            }
            Outcome::Evaded { max_rounds } => {
                if max_rounds == self.rounds.len() && self.rounds.iter().all(|r| r.class.len() > 1) {
                    Ok(())
                } else {
                    Err("evasion record is inconsistent".into())
                }
            }
        }
    }
}

/// Runs one game for at most `max_rounds` rounds.
pub fn play(
    g: &Digraph,
    dm: &DistanceMatrix,
    cops: &mut dyn CopStrategy,
    robber: &mut dyn RobberAdversary,
    max_rounds: usize,
) -> Result<GameTranscript, GameError> {
    let n = g.order();
    let mut s = VertexSet::full(n);
    let mut rounds: Vec<Round> = Vec::new();
    for round in 1..=max_rounds {
        let probe = validate_probe(n, cops.budget(), &cops.next_probe(&rounds)?)?;
        let classes = partition_by_probe(dm, s, &probe);
        let choice = robber.choose(s, &probe, &classes)?;
        let ProbeClass { vector, class } = classes.get(choice).cloned().ok_or(GameError::InvalidRobberChoice(choice))?;
        if class.len() == 1 {
            rounds.push(Round {
                probe,
                vector,
                class: class.to_vec(),
                next_candidates: class.to_vec(),
            });
            let vertex = class.first().expect("singleton");
            return Ok(GameTranscript {
                rounds,
                outcome: Outcome::Captured { round, vertex },
            });
        }
        s = robber_step(g, class);
        rounds.push(Round {
            probe,
            vector,
            class: class.to_vec(),
            next_candidates: s.to_vec(),
        });
    }
    Ok(GameTranscript {
        rounds,
        outcome: Outcome::Evaded { max_rounds },
    })
}
