//! `plnet` — power-law network resilience experiments from the shell.
//!
//! Every numeric output equals the corresponding library call exactly;
//! results go to standard output, diagnostics and progress to standard
//! error. Exit codes: 0 success, 2 domain/usage error, 3 I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use plnet::harness::{
    fmt_sig10, write_dist_csv, write_giant_fraction_csv, write_meta, write_sweep_csv, RunMeta,
};
use plnet::{
    build_configuration_multigraph, census_components, count_self_and_parallel,
    critical_failure_rate, draw_failure_mask, predict, run_sweep, surviving_distribution_table,
    synthesize_histogram, ComponentCensus, HistogramMode, Multigraph, PlnParams, Seed,
    SweepConfig, BETA0,
};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "plnet",
    version,
    about = "Predict and measure the resilience of finite power-law networks to random node failures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic survivor prediction for one (beta, alpha|nodes, p)
    Predict(PredictArgs),
    /// Critical failure rate where the giant component dissolves
    Critical(CriticalArgs),
    /// Generate a configuration-model multigraph (plngraph v1)
    Generate(GenerateArgs),
    /// Fail a stored graph at rate p and print the component census
    Simulate(SimulateArgs),
    /// Replicated (beta, p) sweep; writes a CSV table plus .meta sidecar
    Sweep(SweepArgs),
    /// Surviving degree distribution: analytic vs one seeded graph per p
    SurvivingDist(SurvivingDistArgs),
    /// Giant-component fraction of intact graphs per beta
    GiantFraction(GiantFractionArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Deterministic,
    Stochastic,
}

impl From<Mode> for HistogramMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Deterministic => HistogramMode::Deterministic,
            Mode::Stochastic => HistogramMode::Stochastic,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Deterministic => "deterministic",
            Mode::Stochastic => "stochastic",
        })
    }
}

/// beta plus exactly one way of fixing alpha.
#[derive(Args)]
struct SizeArgs {
    /// Power-law slope (beta > 1)
    #[arg(long)]
    beta: f64,
    /// Scale parameter directly
    #[arg(long, conflicts_with = "nodes")]
    alpha: Option<f64>,
    /// Target node count; sets alpha = ln(nodes / zeta(beta))
    #[arg(long)]
    nodes: Option<u64>,
}

impl SizeArgs {
    fn params(&self) -> Result<PlnParams, CliError> {
        match (self.alpha, self.nodes) {
            (Some(a), None) => Ok(PlnParams::new(self.beta, a)?),
            (None, Some(n)) => Ok(PlnParams::for_size(self.beta, n)?),
            _ => Err(CliError::Domain(
                "exactly one of --alpha or --nodes is required".into(),
            )),
        }
    }
}

enum CliError {
    Domain(String),
    Io(String),
    /// Standard output closed under us (e.g. piped into `head`); not an error.
    BrokenPipe,
}

impl From<plnet::Error> for CliError {
    fn from(e: plnet::Error) -> Self {
        match e {
            plnet::Error::Domain(_) | plnet::Error::Invariant(_) => CliError::Domain(e.to_string()),
            plnet::Error::Io(io) => CliError::from(io),
            plnet::Error::Format(_) => CliError::Io(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::BrokenPipe
        } else {
            CliError::Io(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Predict(args) => cmd_predict(args),
        Command::Critical(args) => cmd_critical(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::SurvivingDist(args) => cmd_surviving_dist(args),
        Command::GiantFraction(args) => cmd_giant_fraction(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
    }
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// Failure probability in [0, 1)
    #[arg(long)]
    p: f64,
}

fn cmd_predict(args: PredictArgs) -> Result<(), CliError> {
    let params = args.size.params()?;
    let pred = predict(&params, args.p)?;
    println!("beta                 {}", fmt_sig10(params.beta()));
    println!("alpha                {}", fmt_sig10(params.alpha()));
    println!("max_degree           {}", params.max_degree());
    println!("p                    {}", fmt_sig10(pred.p));
    println!("chi                  {}", fmt_sig10(pred.chi));
    println!("xi                   {}", fmt_sig10(pred.xi));
    println!("alpha_prime          {}", fmt_sig10(pred.alpha_prime));
    println!("beta_prime           {}", fmt_sig10(pred.beta_prime));
    println!("expected_orphans     {}", fmt_sig10(pred.expected_orphans));
    println!("expected_survivors   {}", fmt_sig10(pred.expected_survivors));
    println!("has_giant            {}", pred.has_giant);
    if params.beta() > 2.0 && params.beta() < BETA0 {
        match critical_failure_rate(&params) {
            Ok(pc) => println!("p_critical           {}", fmt_sig10(pc)),
            // Threshold beyond the sweep cap (or undefined at this scale).
            Err(_) => println!("p_critical           > 0.99"),
        }
    }
    Ok(())
}

#[derive(Args)]
struct CriticalArgs {
    #[command(flatten)]
    size: SizeArgs,
}

fn cmd_critical(args: CriticalArgs) -> Result<(), CliError> {
    let params = args.size.params()?;
    let pc = critical_failure_rate(&params)?;
    println!("{pc:.4}");
    Ok(())
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// Seed for histogram sampling and stub shuffling
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Deterministic)]
    mode: Mode,
    /// Output path; "-" or absent writes the graph to standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

fn graph_summary(graph: &Multigraph) -> String {
    let (self_loops, parallel) = count_self_and_parallel(graph);
    let max_degree = graph.degrees().iter().max().copied().unwrap_or(0);
    format!(
        "num_vertices    {}\nnum_edges       {}\nmax_degree      {}\nself_loops      {}\nparallel_edges  {}",
        graph.num_vertices(),
        graph.num_edges(),
        max_degree,
        self_loops,
        parallel
    )
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let params = args.size.params()?;
    let seed = Seed::new(args.seed);
    let hist = synthesize_histogram(&params, args.mode.into(), seed.derive(&[0]));
    let graph = build_configuration_multigraph(&hist, seed.derive(&[1]))?;
    match args.out.as_deref() {
        Some(path) if path != Path::new("-") => {
            graph.save_path(path)?;
            println!("{}", graph_summary(&graph));
        }
        _ => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            graph.save(&mut lock)?;
            lock.flush()?;
            eprintln!("{}", graph_summary(&graph));
        }
    }
    Ok(())
}

#[derive(Args)]
struct SimulateArgs {
    /// Graph file in plngraph v1 format
    #[arg(long)]
    graph: PathBuf,
    /// Failure probability in [0, 1]
    #[arg(long)]
    p: f64,
    #[arg(long)]
    seed: u64,
    /// Emit a CSV header and row instead of aligned text
    #[arg(long)]
    csv: bool,
}

fn print_census(census: &ComponentCensus, num_vertices: u64, failed: u64, csv: bool) {
    if csv {
        println!(
            "num_vertices,failed_count,total_survivors,giant_size,second_size,orphan_count,survivors_outside_giant"
        );
        println!(
            "{num_vertices},{failed},{},{},{},{},{}",
            census.total_survivors,
            census.giant_size,
            census.second_size,
            census.orphan_count,
            census.survivors_outside_giant
        );
    } else {
        println!("num_vertices              {num_vertices}");
        println!("failed_count              {failed}");
        println!("total_survivors           {}", census.total_survivors);
        println!("giant_size                {}", census.giant_size);
        println!("second_size               {}", census.second_size);
        println!("orphan_count              {}", census.orphan_count);
        println!("survivors_outside_giant   {}", census.survivors_outside_giant);
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let graph = Multigraph::load_path(&args.graph)?;
    let mask = draw_failure_mask(graph.num_vertices(), args.p, Seed::new(args.seed))?;
    let census = census_components(&graph, Some(&mask))?;
    print_census(
        &census,
        graph.num_vertices() as u64,
        mask.failed_count(),
        args.csv,
    );
    Ok(())
}

#[derive(Args)]
struct SweepArgs {
    /// Slope value; repeat or comma-separate for several
    #[arg(long = "beta", required = true, value_delimiter = ',')]
    betas: Vec<f64>,
    /// Explicit failure probabilities (alternative to --p-min/--p-max/--p-step)
    #[arg(long = "p", value_delimiter = ',', conflicts_with_all = ["p_min", "p_max", "p_step"])]
    p_values: Vec<f64>,
    #[arg(long)]
    p_min: Option<f64>,
    #[arg(long)]
    p_max: Option<f64>,
    #[arg(long)]
    p_step: Option<f64>,
    /// Target node count per graph
    #[arg(long)]
    nodes: u64,
    #[arg(long, default_value_t = 20)]
    replicates: u32,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Deterministic)]
    mode: Mode,
    /// CSV output path; the metadata sidecar replaces its extension with .meta
    #[arg(long)]
    out: PathBuf,
}

fn p_grid(args: &SweepArgs) -> Result<Vec<f64>, CliError> {
    if !args.p_values.is_empty() {
        return Ok(args.p_values.clone());
    }
    match (args.p_min, args.p_max, args.p_step) {
        (Some(lo), Some(hi), Some(step)) => {
            if step <= 0.0 || hi < lo {
                return Err(CliError::Domain(
                    "need p-step > 0 and p-max >= p-min".into(),
                ));
            }
            let count = ((hi - lo) / step).round() as usize;
            let mut grid: Vec<f64> = (0..=count).map(|i| lo + i as f64 * step).collect();
            grid.retain(|&p| p <= hi + 1e-12);
            Ok(grid)
        }
        _ => Err(CliError::Domain(
            "provide --p values or all of --p-min/--p-max/--p-step".into(),
        )),
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let p_values = p_grid(&args)?;
    let config = SweepConfig {
        betas: args.betas.clone(),
        p_values,
        target_nodes: args.nodes,
        replicates: args.replicates,
        base_seed: Seed::new(args.seed),
        histogram_mode: args.mode.into(),
    };
    eprintln!(
        "sweep: {} beta value(s) x {} p value(s), {} replicate(s), n = {}",
        config.betas.len(),
        config.p_values.len(),
        config.replicates,
        config.target_nodes
    );
    let started = Instant::now();
    let records = run_sweep(&config)?;
    let wall = started.elapsed().as_secs_f64();
    let mut csv = std::io::BufWriter::new(std::fs::File::create(&args.out)?);
    write_sweep_csv(&records, &mut csv)?;
    csv.flush()?;
    let meta = RunMeta {
        tool: "plnet".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        base_seed: config.base_seed,
        config: format!(
            "sweep betas={:?} p={:?} nodes={} replicates={} mode={}",
            config.betas, config.p_values, config.target_nodes, config.replicates, args.mode
        ),
        wall_seconds: wall,
    };
    let meta_path = args.out.with_extension("meta");
    let mut mw = std::io::BufWriter::new(std::fs::File::create(&meta_path)?);
    write_meta(&meta, &mut mw)?;
    mw.flush()?;
    eprintln!(
        "sweep: wrote {} ({} rows) and {} in {wall:.1}s",
        args.out.display(),
        records.len(),
        meta_path.display()
    );
    Ok(())
}

#[derive(Args)]
struct SurvivingDistArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// Failure probabilities, one seeded graph each
    #[arg(long = "p", required = true, value_delimiter = ',')]
    p_values: Vec<f64>,
    #[arg(long)]
    seed: u64,
    /// CSV output path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Write a table to `out` (plus sidecar) or standard output.
fn emit_table<F>(out: Option<&Path>, seed: Seed, config: String, write_rows: F) -> Result<(), CliError>
where
    F: Fn(&mut dyn Write) -> std::io::Result<()>,
{
    match out {
        Some(path) => {
            let started = Instant::now();
            let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
            write_rows(&mut w)?;
            w.flush()?;
            let meta = RunMeta {
                tool: "plnet".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                base_seed: seed,
                config,
                wall_seconds: started.elapsed().as_secs_f64(),
            };
            let mut mw = std::io::BufWriter::new(std::fs::File::create(path.with_extension("meta"))?);
            write_meta(&meta, &mut mw)?;
            mw.flush()?;
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_rows(&mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn cmd_surviving_dist(args: SurvivingDistArgs) -> Result<(), CliError> {
    let params = args.size.params()?;
    let seed = Seed::new(args.seed);
    let rows = surviving_distribution_table(&params, &args.p_values, seed)?;
    let config = format!(
        "surviving-dist beta={} alpha={} p={:?} seed={}",
        params.beta(),
        params.alpha(),
        args.p_values,
        args.seed
    );
    emit_table(args.out.as_deref(), seed, config, move |w| {
        write_dist_csv(&rows, w)
    })?;
    Ok(())
}

#[derive(Args)]
struct GiantFractionArgs {
    /// Slope values in [2, beta0)
    #[arg(long = "beta", required = true, value_delimiter = ',')]
    betas: Vec<f64>,
    #[arg(long)]
    nodes: u64,
    #[arg(long, default_value_t = 20)]
    replicates: u32,
    #[arg(long)]
    seed: u64,
    /// CSV output path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_giant_fraction(args: GiantFractionArgs) -> Result<(), CliError> {
    let rows = plnet::intact_giant_fraction_table(
        &args.betas,
        args.nodes,
        args.replicates,
        Seed::new(args.seed),
    )?;
    let config = format!(
        "giant-fraction betas={:?} nodes={} replicates={} seed={}",
        args.betas, args.nodes, args.replicates, args.seed
    );
    emit_table(args.out.as_deref(), Seed::new(args.seed), config, move |w| {
        write_giant_fraction_csv(&rows, w)
    })?;
    Ok(())
}
