use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curiosity_cli::{
    compare_csv, fig1_csv, parse_algos, parse_f64_list, parse_seeds, run_experiment, CliError,
    ExperimentConfig,
};
use curiosity_core::env::{make_clique_corridor, make_random_mdp};
use curiosity_core::info_geometry::DirichletCounts;

/// Curiosity-driven exploration of unknown finite MDPs: compare exploration
/// strategies, trace information-gain accounting, and measure the quality of
/// the dynamic-programming approximation.
#[derive(Parser)]
#[command(name = "curiosity", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    Run(RunArgs),
    Fig1(Fig1Args),
    Compare(CompareArgs),
    EnvDump(EnvDumpArgs),
}

/// Run the four-way exploration comparison on a clique-corridor environment.
///
/// Writes one trajectory CSV per (algorithm, seed) with columns
/// t,state,action,next_state,realized_gain,cumulative_gain; a summary.csv with
/// columns algo,seed,final_cumulative_gain,corridor_crossings,
/// frac_initial_clique,frac_initial_with_entrance,frac_far_clique; and an
/// aggregate.csv of per-step mean cumulative gain, one column per algorithm.
#[derive(Args)]
struct RunArgs {
    /// JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// States per clique.
    #[arg(long)]
    clique_size: Option<usize>,
    /// Corridor length in states.
    #[arg(long)]
    corridor: Option<usize>,
    /// Uniform Dirichlet prior pseudo-count per entry.
    #[arg(long)]
    prior: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Discount for the dp algorithm (and q-learning unless overridden).
    #[arg(long)]
    gamma: Option<f64>,
    /// Seeds, as an inclusive range `1..10` or a list `1,4,9`.
    #[arg(long)]
    seeds: Option<String>,
    /// Comma-separated subset of random,greedy,qlearn,dp.
    #[arg(long)]
    algos: Option<String>,
    /// Bellman solver tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    qlearn_lr: Option<f64>,
    #[arg(long)]
    qlearn_epsilon: Option<f64>,
    #[arg(long)]
    qlearn_gamma: Option<f64>,
    #[arg(long)]
    qlearn_init_q: Option<f64>,
    /// Load the environment from a text file instead of generating one per
    /// seed.
    #[arg(long)]
    env_file: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Trace cumulative gain vs the sum of one-step gains while learning a fixed
/// categorical distribution under a Dirichlet prior.
///
/// CSV columns: t,cumulative_gain,sum_one_step_gains. The sum column is
/// monotone; the cumulative column may decrease.
#[derive(Args)]
struct Fig1Args {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Sampling distribution, comma-separated.
    #[arg(long, default_value = "0.1,0.5,0.4")]
    p: String,
    /// Dirichlet prior pseudo-count per outcome.
    #[arg(long, default_value_t = 50.0 / 3.0)]
    prior_count: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Sweep prior scales and report how far the frozen-posterior Bellman solution
/// is from the depth-truncated exact recursion.
///
/// CSV columns: scale,error,tail,c2_error (the worst-pair absolute gap, the
/// truncation allowance g_a*gamma^tau/(1-gamma), and scale^2*error).
#[derive(Args)]
struct CompareArgs {
    #[arg(long, default_value_t = 2)]
    states: usize,
    #[arg(long, default_value_t = 2)]
    actions: usize,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Depth of the exact recursion; cost grows as (states*actions)^tau.
    #[arg(long, default_value_t = 10)]
    tau: u32,
    /// Prior scale factors, comma-separated.
    #[arg(long, default_value = "1,2,4,8")]
    scales: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Generate an environment and dump its transition kernel as text
/// ("S A init" header, then one probability row per (state, action) pair).
#[derive(Args)]
struct EnvDumpArgs {
    /// Generate a dense random MDP instead of a clique-corridor.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 5)]
    clique_size: usize,
    #[arg(long, default_value_t = 50)]
    corridor: usize,
    /// States of the random MDP (with --random).
    #[arg(long, default_value_t = 4)]
    states: usize,
    /// Actions of the random MDP (with --random).
    #[arg(long, default_value_t = 2)]
    actions: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(payload: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)?;
                }
            }
            fs::write(path, payload)?;
        }
        None => print!("{payload}"),
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let mut config = match &args.config {
        Some(path) => serde_json::from_str::<ExperimentConfig>(&fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = args.clique_size {
        config.clique_size = v;
    }
    if let Some(v) = args.corridor {
        config.corridor = v;
    }
    if let Some(v) = args.prior {
        config.prior_count = v;
    }
    if let Some(v) = args.steps {
        config.steps = v;
    }
    if let Some(v) = args.gamma {
        config.gamma = v;
    }
    if let Some(spec) = &args.seeds {
        config.seeds = parse_seeds(spec)?;
    }
    if let Some(spec) = &args.algos {
        config.algos = parse_algos(spec)?;
    }
    if let Some(v) = args.tol {
        config.tol = v;
    }
    if let Some(v) = args.qlearn_lr {
        config.qlearn.learning_rate = v;
    }
    if let Some(v) = args.qlearn_epsilon {
        config.qlearn.epsilon = v;
    }
    if let Some(v) = args.qlearn_gamma {
        config.qlearn.gamma = Some(v);
    }
    if let Some(v) = args.qlearn_init_q {
        config.qlearn.init_q = v;
    }
    if args.env_file.is_some() {
        config.env_file = args.env_file;
    }
    if let Some(v) = args.out {
        config.out = v;
    }
    run_experiment(&config)?;
    Ok(())
}

fn fig1(args: Fig1Args) -> Result<(), CliError> {
    let p = parse_f64_list(&args.p)?;
    let prior = DirichletCounts::symmetric(p.len(), args.prior_count)?;
    let csv = fig1_csv(args.samples, &p, &prior, args.seed)?;
    emit(&csv, args.out.as_ref())
}

fn compare(args: CompareArgs) -> Result<(), CliError> {
    let scales = parse_f64_list(&args.scales)?;
    let csv = compare_csv(
        args.states,
        args.actions,
        args.gamma,
        args.tau,
        &scales,
        args.seed,
        args.tol,
    )?;
    emit(&csv, args.out.as_ref())
}

fn env_dump(args: EnvDumpArgs) -> Result<(), CliError> {
    let env = if args.random {
        make_random_mdp(args.states, args.actions, args.seed)?
    } else {
        make_clique_corridor(args.clique_size, args.corridor, args.seed)?
    };
    emit(&env.to_text(), args.out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Fig1(args) => fig1(args),
        Command::Compare(args) => compare(args),
        Command::EnvDump(args) => env_dump(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
