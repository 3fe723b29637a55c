use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use peg_cli::commands::{self, GraphSource, Output, PegArgs, SignalSource};
use peg_cli::experiments::{ExperimentConfig, ExperimentKind, Overrides};
use peg_cli::specs::{BUILDER_HELP, GENERATOR_HELP};
use peg_cli::table::Format;
use peg_cli::{CliError, CliResult};
use peg_core::Aggregation;

// Aliases keep clap from treating the lists as repeated flags.
type UsizeList = Vec<usize>;
type F64List = Vec<f64>;

#[derive(Parser)]
#[command(name = "peg", version, about = "Permutation entropy of time series and graph signals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical permutation entropy of a time series.
    Pe {
        #[command(flatten)]
        signal: SignalArgs,
        #[command(flatten)]
        embed: EmbedArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Permutation entropy of a signal on a graph.
    Peg {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        signal: SignalArgs,
        #[command(flatten)]
        embed: EmbedArgs,
        /// Aggregation over walks: `walk` (walk-weighted) or `set`.
        #[arg(long, default_value = "walk", value_parser = parse_mode)]
        mode: Aggregation,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Runs a parameter sweep and prints one row per grid point.
    Experiment(ExperimentArgs),
    /// Writes a generated signal (CSV) to stdout or --out.
    Gen {
        #[arg(help = GENERATOR_HELP)]
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SignalSel {
    /// Signal CSV: one value per line or `vertex,value` pairs.
    #[arg(long)]
    signal: Option<PathBuf>,
    /// Matrix (PGM or CSV) flattened row-major.
    #[arg(long)]
    image: Option<PathBuf>,
    #[arg(long = "gen", help = GENERATOR_HELP)]
    generator: Option<String>,
}

#[derive(Args)]
struct SignalArgs {
    #[command(flatten)]
    sel: SignalSel,
    /// Seed for random generators and builders.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SignalArgs {
    fn source(&self) -> SignalSource {
        let s = &self.sel;
        if let Some(p) = &s.signal {
            SignalSource::File(p.clone())
        } else if let Some(p) = &s.image {
            SignalSource::Image(p.clone())
        } else {
            SignalSource::Generator(s.generator.clone().expect("clap enforces one source"))
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with_all = ["builder", "coords"])]
    graph: Option<PathBuf>,
    #[arg(long, help = BUILDER_HELP, conflicts_with = "coords")]
    builder: Option<String>,
    /// `id,x,y` CSV for a Gaussian-kernel graph.
    #[arg(long, requires_all = ["sigma1_sq", "sigma2"])]
    coords: Option<PathBuf>,
    #[arg(long)]
    sigma1_sq: Option<f64>,
    /// Distance cutoff of the kernel graph.
    #[arg(long)]
    sigma2: Option<f64>,
    /// Directed variant of `path` and `grid` builders (and of image grids).
    #[arg(long)]
    directed: bool,
}

impl GraphArgs {
    fn source(&self) -> Option<GraphSource> {
        if let Some(p) = &self.graph {
            Some(GraphSource::File(p.clone()))
        } else if let Some(b) = &self.builder {
            Some(GraphSource::Builder(b.clone()))
        } else {
            self.coords.as_ref().map(|c| GraphSource::Kernel {
                coords: c.clone(),
                sigma1_sq: self.sigma1_sq.expect("clap requires sigma1-sq"),
                sigma2: self.sigma2.expect("clap requires sigma2"),
            })
        }
    }
}

#[derive(Args)]
struct EmbedArgs {
    /// Embedding dimension.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Delay.
    #[arg(long = "L", default_value_t = 1)]
    delay: usize,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
}

#[derive(Args)]
struct ExperimentArgs {
    /// logistic | mix2d | regular | er | bipartite-sweep
    #[arg(value_parser = parse_kind)]
    name: ExperimentKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Published scale instead of the desk-scale defaults.
    #[arg(long)]
    full: bool,
    /// Embedding dimensions: `4`, `2,3,5` or `2..8`.
    #[arg(long, value_parser = parse_usize_list)]
    m: Option<UsizeList>,
    #[arg(long = "L")]
    delay: Option<usize>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Aggregation>,
    /// Replicates per grid point.
    #[arg(long)]
    seeds: Option<usize>,
    /// Number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Probability grid, comma separated.
    #[arg(long, value_parser = parse_f64_list)]
    p: Option<F64List>,
    /// Image sides: `10,20,50` or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_usize_list)]
    sizes: Option<UsizeList>,
    /// `START,STOP` for the logistic parameter.
    #[arg(long, value_parser = parse_range)]
    r_range: Option<(f64, f64)>,
    #[arg(long)]
    r_step: Option<f64>,
    /// Logistic series length.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    burn_in: Option<usize>,
    /// Adds a runtime_s column (makes output run-dependent).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
}

fn parse_mode(s: &str) -> Result<Aggregation, String> {
    s.parse().map_err(|e: peg_core::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: CliError| e.message)
}

fn parse_kind(s: &str) -> Result<ExperimentKind, String> {
    s.parse().map_err(|e: CliError| e.message)
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| format!("bad integer {v:?}")))
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|_| format!("bad number {v:?}")))
        .collect()
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    match parse_f64_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected START,STOP, got {s:?}")),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Pe { signal, embed, out } => {
            let out = Output {
                path: out.out,
                format: out.format,
            };
            commands::cmd_pe(&signal.source(), embed.m, embed.delay, signal.seed, &out)?;
        }
        Command::Peg {
            graph,
            signal,
            embed,
            mode,
            out,
        } => {
            let graph_source = graph.source();
            let signal_source = signal.source();
            let args = PegArgs {
                graph: graph_source.as_ref(),
                signal: &signal_source,
                directed: graph.directed,
                m: embed.m,
                delay: embed.delay,
                mode,
                seed: signal.seed,
            };
            let out = Output {
                path: out.out,
                format: out.format,
            };
            commands::cmd_peg(&args, &out)?;
        }
        Command::Experiment(a) => {
            let overrides = Overrides {
                m: a.m,
                seeds: a.seeds,
                n: a.n,
                p: a.p,
                sizes: a.sizes,
                r_range: a.r_range,
                r_step: a.r_step,
                points: a.points,
                burn_in: a.burn_in,
                mode: a.mode,
                delay: a.delay,
            };
            let config = ExperimentConfig::preset(a.name, a.seed, a.full).apply(&overrides)?;
            let out = Output {
                path: a.out,
                format: a.format,
            };
            commands::cmd_experiment(&config, a.timings, &out)?;
        }
        Command::Gen { spec, seed, out } => commands::cmd_gen(&spec, seed, out.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
