//! Seeded random-tournament experiments with CSV output.

use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::distance::{all_pairs_distances, Distance};
use crate::families::random_tournament;
use crate::hypergraph::{distinguisher_hypergraph, greedy_vertex_cover, Convention};
use crate::par;
use crate::tournament::{e4c_ratio, sameness_bracket_fraction, sameness_range};

pub const CSV_HEADER: &str = "n,p,seed,trial,diameter,beta_greedy,k_bound,s_min,s_max,e4c_ratio";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n_values: Vec<usize>,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    /// Slack in the `k_bound` column; `None` means `1/√ln n`.
    pub epsilon: Option<f64>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::Config("trials must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(ExperimentError::Config(format!("p = {} is not a probability", self.p)));
        }
        if self.n_values.is_empty() || self.n_values.iter().any(|&n| n < 2) {
            return Err(ExperimentError::Config("every n must be at least 2".into()));
        }
        Ok(())
    }
}

/// One CSV row. `seed` is the seed the trial's tournament was drawn with.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub trial: usize,
    pub diameter: Distance,
    pub beta_greedy: usize,
    pub k_bound: f64,
    pub s_min: usize,
    pub s_max: usize,
    pub e4c_ratio: f64,
}

/// `(2 + ε) ln n / ln(1/ρ)` with `ρ = p² + (1-p)²`.
pub fn k_bound(n: usize, p: f64, epsilon: Option<f64>) -> f64 {
    let ln_n = (n as f64).ln();
    let eps = epsilon.unwrap_or(1.0 / ln_n.sqrt());
    let rho = p * p + (1.0 - p) * (1.0 - p);
    (2.0 + eps) * ln_n / (1.0 / rho).ln()
}

pub fn trial_seed(base: u64, trial: usize) -> u64 {
    base.wrapping_add(trial as u64)
}

pub fn measure(g: &Digraph, p: f64, seed: u64, trial: usize, epsilon: Option<f64>) -> TrialRow {
    let n = g.order();
    let dm = all_pairs_distances(g);
    let h = distinguisher_hypergraph(&dm, Convention::CopProbe);
    let (s_min, s_max) = sameness_range(g);
    TrialRow {
        n,
        p,
        seed,
        trial,
        diameter: dm.diameter(),
        beta_greedy: greedy_vertex_cover(&h).expect("distinguisher edges are nonempty").cover.len(),
        k_bound: k_bound(n, p, epsilon),
        s_min,
        s_max,
        e4c_ratio: e4c_ratio(g),
    }
}

/// Rows ordered by `n` (as configured) and then by trial index.
pub fn run(config: &ExperimentConfig) -> Result<Vec<TrialRow>, ExperimentError> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    Ok(par::map_slice(&jobs, |&(n, trial)| {
        let seed = trial_seed(config.seed, trial);
        let g = random_tournament(n, config.p, seed).expect("validated parameters");
        measure(&g, config.p, seed, trial, config.epsilon)
    }))
}

pub fn write_csv<W: io::Write>(rows: &[TrialRow], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<TrialRow>, ExperimentError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<_>, _>>()?)
}

pub fn to_csv_string(rows: &[TrialRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Share of pairs inside the random-tournament sameness bracket, per trial.
pub fn bracket_fractions(config: &ExperimentConfig) -> Result<Vec<f64>, ExperimentError> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    Ok(par::map_slice(&jobs, |&(n, trial)| {
        let g = random_tournament(n, config.p, trial_seed(config.seed, trial)).expect("validated parameters");
        sameness_bracket_fraction(&g, config.p)
    }))
}
