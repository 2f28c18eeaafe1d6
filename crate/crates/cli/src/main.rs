use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use locgame::decomposition::{DagDecomposition, PathDecomposition};
use locgame::experiment::{self, ExperimentConfig};
use locgame::families::{self, FamilySpec};
use locgame::game::{play, GreedyRobber, OptimalRobber, RobberAdversary};
use locgame::report;
use locgame::strategies::{self, CopStrategy, InnerPlay, RotationStrategy};
use locgame::{all_pairs_distances, verify, Digraph};

#[derive(Parser)]
#[command(name = "locgame", version, about = "Localization game on oriented digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum StrategyName {
    DagSweep,
    PathSweep,
    DagDecompSweep,
    ScComposite,
    Rotation,
    Solver,
}

#[derive(Clone, Copy, ValueEnum)]
enum RobberName {
    Optimal,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum InnerName {
    Basis,
    Solver,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member, e.g. `gen rotation 2` or `gen random 10 0.5 --seed 1`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact localization number.
    Zeta {
        graph: PathBuf,
        #[arg(long)]
        max_cops: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric dimension with the hypergraph cover bounds.
    Beta {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Localization number, metric dimension and every bound, with a consistency verdict.
    Bounds {
        graph: PathBuf,
        #[arg(long)]
        max_cops: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural and tournament statistics.
    Stats {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play a cop strategy against a robber; writes the transcript as JSON lines.
    Play {
        graph: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyName,
        /// Path or DAG decomposition (JSON) for the sweep strategies.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Cop budget for `rotation` and `solver`.
        #[arg(long)]
        cops: Option<usize>,
        #[arg(long, value_enum, default_value_t = InnerName::Basis)]
        inner: InnerName,
        #[arg(long, value_enum, default_value_t = RobberName::Optimal)]
        robber: RobberName,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run built-in checks of known values and bounds: one id, or `all`.
    Verify {
        #[arg(default_value = "all")]
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random-tournament experiment written as CSV.
    Experiment {
        /// Tournament orders; repeat the flag for several.
        #[arg(long = "n", required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_graph(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Digraph::from_json_str(&text),
        _ => Digraph::from_edge_list(&text),
    };
    g.with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    emit(out, &s)
}

fn build_strategy(
    g: &Digraph,
    name: StrategyName,
    decomposition: Option<&Path>,
    cops: Option<usize>,
    inner: InnerName,
) -> Result<Box<dyn CopStrategy>> {
    let read_decomposition = || -> Result<String> {
        let p = decomposition.ok_or_else(|| anyhow!("this strategy needs --decomposition"))?;
        fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
    };
    Ok(match name {
        StrategyName::DagSweep => strategies::dag_sweep(g)?,
        StrategyName::PathSweep => strategies::path_sweep(g, &PathDecomposition::from_json_str(&read_decomposition()?)?)?,
        StrategyName::DagDecompSweep => {
            strategies::dag_decomp_sweep(g, &DagDecomposition::from_json_str(&read_decomposition()?)?)?
        }
        StrategyName::ScComposite => {
            let mode = match inner {
                InnerName::Basis => InnerPlay::Basis,
                InnerName::Solver => InnerPlay::Solver,
            };
            Box::new(strategies::sc_composite(g, mode)?)
        }
        StrategyName::Rotation => {
            let n = g.order();
            if n.is_multiple_of(2) || *g != families::rotation_tournament(n / 2)? {
                bail!("rotation strategy needs the rotation tournament T_{{2m+1}} with its standard labels");
            }
            let m = n / 2;
            Box::new(strategies::rotation_strategy(m, cops.unwrap_or(RotationStrategy::full_budget(m)))?)
        }
        StrategyName::Solver => {
            let dm = all_pairs_distances(g);
            let k = match cops {
                Some(k) => k,
                None => locgame::game::localization_number_exact(g, &dm, g.order())?
                    .exact()
                    .expect("all vertices always win"),
            };
            Box::new(strategies::solver_strategy(g, &dm, k)?)
        }
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen {
            family,
            seed,
            format,
            out,
        } => {
            let tokens: Vec<&str> = family.iter().map(String::as_str).collect();
            let g = FamilySpec::parse_tokens(&tokens, seed)?.build()?;
            let text = match format {
                Format::Edgelist => g.to_edge_list(),
                Format::Json => g.to_json_string() + "\n",
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Zeta { graph, max_cops, out } => {
            let g = read_graph(&graph)?;
            let dm = all_pairs_distances(&g);
            let r = report::zeta_report(&g, &dm, max_cops.unwrap_or(g.order()));
            emit_json(out.as_deref(), &r)?;
            Ok(!matches!(r.zeta, report::ZetaValue::Unavailable { .. }))
        }
        Command::Beta { graph, out } => {
            let g = read_graph(&graph)?;
            let r = report::beta_report(&g, &all_pairs_distances(&g));
            emit_json(out.as_deref(), &r)?;
            Ok(true)
        }
        Command::Bounds { graph, max_cops, out } => {
            let g = read_graph(&graph)?;
            let r = report::bounds_report(&g, &all_pairs_distances(&g), max_cops.unwrap_or(g.order()));
            emit_json(out.as_deref(), &r)?;
            Ok(r.consistent)
        }
        Command::Stats { graph, out } => {
            let g = read_graph(&graph)?;
            emit_json(out.as_deref(), &report::stats_report(&g, &all_pairs_distances(&g)))?;
            Ok(true)
        }
        Command::Play {
            graph,
            strategy,
            decomposition,
            cops,
            inner,
            robber,
            max_rounds,
            out,
        } => {
            let g = read_graph(&graph)?;
            let dm = all_pairs_distances(&g);
            let mut cops = build_strategy(&g, strategy, decomposition.as_deref(), cops, inner)?;
            let mut robber: Box<dyn RobberAdversary> = match robber {
                RobberName::Optimal => Box::new(OptimalRobber::new(&g, &dm, cops.budget())?),
                RobberName::Greedy => Box::new(GreedyRobber),
            };
            let t = play(&g, &dm, cops.as_mut(), robber.as_mut(), max_rounds)?;
            emit(out.as_deref(), &t.to_json_lines())?;
            Ok(t.check(&g, &dm).is_ok())
        }
        Command::Verify { id, out } => {
            let reports: Vec<_> = if id == "all" {
                verify::checks().iter().map(|c| c.run()).collect()
            } else {
                let ids: Vec<&str> = verify::checks().iter().map(|c| c.id).collect();
                vec![verify::run_check(&id).ok_or_else(|| anyhow!("unknown check {id:?}; known: {}", ids.join(", ")))?]
            };
            emit_json(out.as_deref(), &reports)?;
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::Experiment {
            n,
            p,
            trials,
            seed,
            epsilon,
            out,
        } => {
            let config = ExperimentConfig {
                n_values: n,
                p,
                trials,
                seed,
                epsilon,
            };
            let rows = experiment::run(&config)?;
            emit(out.as_deref(), &experiment::to_csv_string(&rows))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
