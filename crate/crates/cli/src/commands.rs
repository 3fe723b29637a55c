//! Subcommand implementations, independent of argument parsing.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use peg_core::{
    build_grid2d, gaussian_kernel_graph_2d, io, pe_time_series, peg, Aggregation, EntropyResult,
    Graph,
};

use crate::experiments::{self, ExperimentConfig};
use crate::specs::{self, Generated};
use crate::table::{Format, Table};
use crate::{CliError, CliResult};

/// Where a signal comes from.
#[derive(Debug, Clone)]
pub enum SignalSource {
    File(PathBuf),
    Image(PathBuf),
    Generator(String),
}

/// Where a graph comes from.
#[derive(Debug, Clone)]
pub enum GraphSource {
    File(PathBuf),
    Builder(String),
    Kernel {
        coords: PathBuf,
        sigma1_sq: f64,
        sigma2: f64,
    },
}

#[derive(Debug, Clone)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Format,
}

impl Output {
    pub fn emit(&self, text: &str) -> CliResult<()> {
        match &self.path {
            Some(p) => fs::write(p, text)
                .map_err(|e| CliError::config(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// A loaded signal, with grid dimensions when it came from a matrix.
struct LoadedSignal {
    values: Vec<f64>,
    dims: Option<(usize, usize)>,
}

fn load_signal(src: &SignalSource, seed: u64) -> CliResult<LoadedSignal> {
    Ok(match src {
        SignalSource::File(p) => LoadedSignal {
            values: io::read_signal(p)?,
            dims: None,
        },
        SignalSource::Image(p) => {
            let m = io::read_matrix(p)?;
            LoadedSignal {
                dims: Some((m.rows(), m.cols())),
                values: m.into_signal(),
            }
        }
        SignalSource::Generator(spec) => match specs::generate(spec, seed)? {
            Generated::Series(x) => LoadedSignal { values: x, dims: None },
            Generated::Image(m) => LoadedSignal {
                dims: Some((m.rows(), m.cols())),
                values: m.into_signal(),
            },
        },
    })
}

fn load_graph(src: Option<&GraphSource>, directed: bool, seed: u64, signal: &LoadedSignal) -> CliResult<Graph> {
    match src {
        Some(GraphSource::File(p)) => {
            let g = io::read_edge_list(p)?;
            if directed && !g.is_directed() {
                return Err(CliError::config(format!(
                    "--directed given but {} declares an undirected graph",
                    p.display()
                )));
            }
            Ok(g)
        }
        Some(GraphSource::Builder(spec)) => specs::build_graph(spec, directed, seed),
        Some(GraphSource::Kernel {
            coords,
            sigma1_sq,
            sigma2,
        }) => {
            if directed {
                return Err(CliError::config("kernel graphs are undirected"));
            }
            let pts = io::read_coords(coords)?;
            Ok(gaussian_kernel_graph_2d(&pts, *sigma1_sq, *sigma2)?.with_label(format!(
                "gaussian-kernel({}, sigma1_sq={sigma1_sq}, sigma2={sigma2})",
                coords.display()
            )))
        }
        // Matrices default to the king-move grid of their shape.
        None => match signal.dims {
            Some((r, c)) => Ok(build_grid2d(r, c, directed)?),
            None => Err(CliError::config(
                "no graph given: use --graph, --builder or --coords (or an image signal)",
            )),
        },
    }
}

fn render_result(r: &EntropyResult, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => io::format_result(r)?,
        Format::Csv => {
            let mut t = Table::new([
                "m",
                "L",
                "mode",
                "total",
                "distinct",
                "tied_vectors",
                "raw_nats",
                "normalized",
                "histogram",
            ]);
            t.provenance = vec![
                ("graph".into(), json!(r.provenance.graph)),
                ("signal_hash".into(), json!(r.provenance.signal_hash)),
            ];
            let hist: Vec<String> = r.histogram.nonzero().map(|(p, c)| format!("{p}:{c}")).collect();
            t.push(vec![
                r.m().into(),
                r.provenance.delay.into(),
                r.provenance.mode.map_or("none", |m| m.as_str()).into(),
                r.total().into(),
                r.histogram.distinct().into(),
                r.provenance.tied_vectors.into(),
                r.raw.into(),
                r.normalized.into(),
                hist.join(";").into(),
            ]);
            t.to_csv()
        }
    })
}

pub fn cmd_pe(signal: &SignalSource, m: usize, delay: usize, seed: u64, out: &Output) -> CliResult<EntropyResult> {
    let x = load_signal(signal, seed)?;
    let r = pe_time_series(&x.values, m, delay)?;
    out.emit(&render_result(&r, out.format)?)?;
    Ok(r)
}

pub struct PegArgs<'a> {
    pub graph: Option<&'a GraphSource>,
    pub signal: &'a SignalSource,
    pub directed: bool,
    pub m: usize,
    pub delay: usize,
    pub mode: Aggregation,
    pub seed: u64,
}

pub fn cmd_peg(args: &PegArgs<'_>, out: &Output) -> CliResult<EntropyResult> {
    let x = load_signal(args.signal, args.seed)?;
    let g = load_graph(args.graph, args.directed, args.seed, &x)?;
    if x.values.len() != g.n() {
        return Err(CliError::config(format!(
            "signal has {} values but the graph has {} vertices",
            x.values.len(),
            g.n()
        )));
    }
    let r = peg(&g, &x.values, args.m, args.delay, args.mode)?;
    out.emit(&render_result(&r, out.format)?)?;
    Ok(r)
}

pub fn cmd_experiment(config: &ExperimentConfig, timings: bool, out: &Output) -> CliResult<Table> {
    log::info!("running {} (config {})", config.kind().name(), config.hash());
    let table = experiments::run(config, timings)?;
    out.emit(&table.render(out.format))?;
    Ok(table)
}

/// Writes a generated signal: matrix CSV for images, one value per line
/// otherwise.
pub fn cmd_gen(spec: &str, seed: u64, out: Option<&Path>) -> CliResult<()> {
    let text = match specs::generate(spec, seed)? {
        Generated::Series(x) => io::format_signal(&x),
        Generated::Image(m) => io::format_matrix_csv(&m),
    };
    Output {
        path: out.map(Path::to_path_buf),
        format: Format::Csv,
    }
    .emit(&text)
}
