//! Parameter sweeps: the logistic map, MIX images on grids, white noise on
//! regular and random graphs, and the complete-bipartite construction.
//!
//! Every random draw is seeded from the base seed through [`derive_seed`], so
//! a run is a pure function of its [`ExperimentConfig`]. Grid points are
//! evaluated on the rayon pool and rows are emitted in grid order.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use peg_core::signal::{gaussian_noise, logistic_map_with_burn_in, mix2d};
use peg_core::{
    build_complete, build_complete_bipartite, build_cycle, build_erdos_renyi, build_grid2d,
    build_path, peg, Aggregation, EntropyResult, Graph,
};

use crate::table::{Cell, Table};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Logistic,
    Mix2d,
    Regular,
    Er,
    BipartiteSweep,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::Logistic,
        ExperimentKind::Mix2d,
        ExperimentKind::Regular,
        ExperimentKind::Er,
        ExperimentKind::BipartiteSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Logistic => "logistic",
            ExperimentKind::Mix2d => "mix2d",
            ExperimentKind::Regular => "regular",
            ExperimentKind::Er => "er",
            ExperimentKind::BipartiteSweep => "bipartite-sweep",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ExperimentKind::ALL.iter().map(|k| k.name()).collect();
                CliError::config(format!("unknown experiment {s:?} (expected one of {})", names.join(", ")))
            })
    }
}

/// Parameter grid of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum Grid {
    /// Logistic series on directed and undirected paths.
    Logistic {
        r_start: f64,
        r_stop: f64,
        r_step: f64,
        points: usize,
        x0: f64,
        burn_in: usize,
        m: usize,
    },
    /// MIX images on directed king-move grids of side `size`.
    Mix2d {
        p: Vec<f64>,
        sizes: Vec<usize>,
        m: usize,
        seeds: usize,
    },
    /// White noise on the cycle, the balanced complete bipartite graph and
    /// the complete graph.
    Regular { n: usize, m: Vec<usize>, seeds: usize },
    /// White noise on Erdos-Renyi graphs; every replicate draws a new graph.
    Er {
        n: usize,
        p: Vec<f64>,
        m: Vec<usize>,
        seeds: usize,
    },
    /// Sorted white noise on `K_{k, n-k}`, `k = 1..=n/2`, with `m = 2`.
    BipartiteSweep { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub grid: Grid,
    pub seed: u64,
    pub mode: Aggregation,
    #[serde(rename = "L")]
    pub delay: usize,
    pub full: bool,
}

/// Command-line overrides of a preset. Setting a field that the experiment
/// does not use is a configuration error.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub m: Option<Vec<usize>>,
    pub seeds: Option<usize>,
    pub n: Option<usize>,
    pub p: Option<Vec<f64>>,
    pub sizes: Option<Vec<usize>>,
    pub r_range: Option<(f64, f64)>,
    pub r_step: Option<f64>,
    pub points: Option<usize>,
    pub burn_in: Option<usize>,
    pub mode: Option<Aggregation>,
    pub delay: Option<usize>,
}

fn unused<T>(value: &Option<T>, flag: &str, kind: ExperimentKind) -> CliResult<()> {
    match value {
        Some(_) => Err(CliError::config(format!(
            "{flag} does not apply to the {} experiment",
            kind.name()
        ))),
        None => Ok(()),
    }
}

fn single_m(m: &Option<Vec<usize>>, current: usize) -> CliResult<usize> {
    match m.as_deref() {
        None => Ok(current),
        Some([m]) => Ok(*m),
        Some(_) => Err(CliError::config("this experiment takes a single --m value")),
    }
}

impl ExperimentConfig {
    /// Desk-scale defaults, or the published scale with `full`.
    pub fn preset(kind: ExperimentKind, seed: u64, full: bool) -> Self {
        let grid = match kind {
            ExperimentKind::Logistic => Grid::Logistic {
                r_start: 3.55,
                r_stop: 4.0,
                r_step: if full { 1e-4 } else { 1e-3 },
                points: if full { 1 << 14 } else { 1 << 12 },
                x0: 0.65,
                burn_in: 0,
                m: 3,
            },
            ExperimentKind::Mix2d => Grid::Mix2d {
                p: vec![0.1, 0.25, 0.5, 0.9],
                sizes: (1..=10).map(|s| 10 * s).collect(),
                m: 6,
                seeds: 10,
            },
            ExperimentKind::Regular => Grid::Regular {
                n: 500,
                m: (2..=8).collect(),
                seeds: 20,
            },
            ExperimentKind::Er => Grid::Er {
                n: if full { 2000 } else { 500 },
                p: vec![0.1, 0.3, 0.6, 0.9],
                m: (2..=7).collect(),
                seeds: if full { 20 } else { 10 },
            },
            ExperimentKind::BipartiteSweep => Grid::BipartiteSweep { n: 2000 },
        };
        ExperimentConfig {
            grid,
            seed,
            mode: Aggregation::WalkWeighted,
            delay: 1,
            full,
        }
    }

    pub fn kind(&self) -> ExperimentKind {
        match self.grid {
            Grid::Logistic { .. } => ExperimentKind::Logistic,
            Grid::Mix2d { .. } => ExperimentKind::Mix2d,
            Grid::Regular { .. } => ExperimentKind::Regular,
            Grid::Er { .. } => ExperimentKind::Er,
            Grid::BipartiteSweep { .. } => ExperimentKind::BipartiteSweep,
        }
    }

    pub fn apply(mut self, o: &Overrides) -> CliResult<Self> {
        let kind = self.kind();
        if let Some(mode) = o.mode {
            self.mode = mode;
        }
        if let Some(delay) = o.delay {
            self.delay = delay;
        }
        match &mut self.grid {
            Grid::Logistic {
                r_start,
                r_stop,
                r_step,
                points,
                burn_in,
                m,
                ..
            } => {
                unused(&o.seeds, "--seeds", kind)?;
                unused(&o.n, "--n", kind)?;
                unused(&o.p, "--p", kind)?;
                unused(&o.sizes, "--sizes", kind)?;
                *m = single_m(&o.m, *m)?;
                if let Some((a, b)) = o.r_range {
                    (*r_start, *r_stop) = (a, b);
                }
                *r_step = o.r_step.unwrap_or(*r_step);
                *points = o.points.unwrap_or(*points);
                *burn_in = o.burn_in.unwrap_or(*burn_in);
            }
            Grid::Mix2d { p, sizes, m, seeds } => {
                unused(&o.n, "--n", kind)?;
                *m = single_m(&o.m, *m)?;
                *p = o.p.clone().unwrap_or(std::mem::take(p));
                *sizes = o.sizes.clone().unwrap_or(std::mem::take(sizes));
                *seeds = o.seeds.unwrap_or(*seeds);
            }
            Grid::Regular { n, m, seeds } => {
                unused(&o.p, "--p", kind)?;
                unused(&o.sizes, "--sizes", kind)?;
                *n = o.n.unwrap_or(*n);
                *m = o.m.clone().unwrap_or(std::mem::take(m));
                *seeds = o.seeds.unwrap_or(*seeds);
            }
            Grid::Er { n, p, m, seeds } => {
                unused(&o.sizes, "--sizes", kind)?;
                *n = o.n.unwrap_or(*n);
                *p = o.p.clone().unwrap_or(std::mem::take(p));
                *m = o.m.clone().unwrap_or(std::mem::take(m));
                *seeds = o.seeds.unwrap_or(*seeds);
            }
            Grid::BipartiteSweep { n } => {
                unused(&o.m, "--m", kind)?;
                unused(&o.seeds, "--seeds", kind)?;
                unused(&o.p, "--p", kind)?;
                unused(&o.sizes, "--sizes", kind)?;
                unused(&o.delay, "--L", kind)?;
                *n = o.n.unwrap_or(*n);
            }
        }
        if !matches!(self.grid, Grid::Logistic { .. }) {
            unused(&o.r_range, "--r-range", kind)?;
            unused(&o.r_step, "--r-step", kind)?;
            unused(&o.points, "--points", kind)?;
            unused(&o.burn_in, "--burn-in", kind)?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::config(msg));
        let check_m = |m: usize| -> CliResult<()> {
            if !(2..=peg_core::ordinal::MAX_DIMENSION).contains(&m) {
                return bad(format!(
                    "embedding dimension {m} is outside 2..={}",
                    peg_core::ordinal::MAX_DIMENSION
                ));
            }
            Ok(())
        };
        let check_list = |what: &str, empty: bool| -> CliResult<()> {
            if empty {
                return bad(format!("the {what} grid is empty"));
            }
            Ok(())
        };
        let check_p = |p: &[f64]| -> CliResult<()> {
            match p.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                Some(v) => bad(format!("probability {v} is outside [0, 1]")),
                None => Ok(()),
            }
        };
        let check_seeds = |s: usize| -> CliResult<()> {
            if s == 0 {
                return bad("at least one seed is needed".into());
            }
            Ok(())
        };
        if !(1..=peg_core::peg::MAX_DELAY).contains(&self.delay) {
            return bad(format!("delay {} is outside 1..={}", self.delay, peg_core::peg::MAX_DELAY));
        }
        match &self.grid {
            Grid::Logistic {
                r_start,
                r_stop,
                r_step,
                points,
                x0,
                m,
                ..
            } => {
                check_m(*m)?;
                if !(*r_step > 0.0) || !(r_start <= r_stop) || !(*r_start > 0.0 && *r_stop <= 4.0) {
                    return bad(format!("bad r grid {r_start}..{r_stop} step {r_step}"));
                }
                if !(*x0 > 0.0 && *x0 < 1.0) {
                    return bad(format!("x0 = {x0} is outside (0, 1)"));
                }
                if *points <= (m - 1) * self.delay {
                    return bad(format!("{points} points are too few for m = {m}"));
                }
            }
            Grid::Mix2d { p, sizes, m, seeds } => {
                check_m(*m)?;
                check_list("p", p.is_empty())?;
                check_list("size", sizes.is_empty())?;
                check_p(p)?;
                check_seeds(*seeds)?;
                if let Some(s) = sizes.iter().find(|&&s| s < 2) {
                    return bad(format!("image size {s} is below 2"));
                }
            }
            Grid::Regular { n, m, seeds } => {
                check_list("m", m.is_empty())?;
                m.iter().try_for_each(|&m| check_m(m))?;
                check_seeds(*seeds)?;
                if *n < 4 || n % 2 != 0 {
                    return bad(format!("regular experiment needs an even n >= 4, got {n}"));
                }
            }
            Grid::Er { n, p, m, seeds } => {
                check_list("m", m.is_empty())?;
                check_list("p", p.is_empty())?;
                m.iter().try_for_each(|&m| check_m(m))?;
                check_p(p)?;
                check_seeds(*seeds)?;
                if *n < 2 {
                    return bad(format!("er experiment needs n >= 2, got {n}"));
                }
            }
            Grid::BipartiteSweep { n } => {
                if *n < 2 {
                    return bad(format!("bipartite sweep needs n >= 2, got {n}"));
                }
                if self.delay != 1 {
                    return bad("the bipartite sweep uses L = 1".into());
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configs serialize")
    }

    /// First 16 hex digits of the SHA-256 of [`Self::to_json`].
    pub fn hash(&self) -> String {
        hex::encode(&Sha256::digest(self.to_json().as_bytes())[..8])
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one random stream, mixed from the base seed and a path of
/// integers identifying the stream (grid index, replicate, ...).
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(base), |acc, &part| splitmix64(acc ^ splitmix64(part)))
}

/// Mean, sample standard deviation and standard error.
pub fn summarize(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    let std = var.sqrt();
    (mean, std, std / n.sqrt())
}

/// One entropy evaluation and the time it took.
#[derive(Debug, Clone, Copy)]
struct Sample {
    raw: f64,
    normalized: f64,
    secs: f64,
}

fn timed(f: impl FnOnce() -> peg_core::Result<EntropyResult>) -> CliResult<Sample> {
    let start = Instant::now();
    let r = f()?;
    Ok(Sample {
        raw: r.raw,
        normalized: r.normalized,
        secs: start.elapsed().as_secs_f64(),
    })
}

const STAT_COLUMNS: [&str; 6] = ["replicates", "mean_raw", "std_raw", "mean_norm", "std_norm", "stderr_norm"];

fn stat_cells(samples: &[Sample]) -> Vec<Cell> {
    let raw: Vec<f64> = samples.iter().map(|s| s.raw).collect();
    let norm: Vec<f64> = samples.iter().map(|s| s.normalized).collect();
    let (mean_raw, std_raw, _) = summarize(&raw);
    let (mean_norm, std_norm, se_norm) = summarize(&norm);
    vec![
        samples.len().into(),
        mean_raw.into(),
        std_raw.into(),
        mean_norm.into(),
        std_norm.into(),
        se_norm.into(),
    ]
}

fn stats_table(params: &[&str], timings: bool) -> Table {
    let mut cols: Vec<&str> = params.to_vec();
    cols.extend(STAT_COLUMNS);
    if timings {
        cols.push("runtime_s");
    }
    Table::new(cols)
}

fn push_stats(table: &mut Table, mut params: Vec<Cell>, samples: &[Sample], timings: bool) {
    params.extend(stat_cells(samples));
    if timings {
        params.push(samples.iter().map(|s| s.secs).sum::<f64>().into());
    }
    table.push(params);
}

/// Grid values `start, start + step, ...` up to `stop`, rounded to 1e-9 so
/// that printed values are clean.
fn r_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
        .collect()
}

/// Runs an experiment. With `timings` a `runtime_s` column holds the time
/// spent in entropy evaluation for each row; it is the only
/// non-deterministic output.
pub fn run(config: &ExperimentConfig, timings: bool) -> CliResult<Table> {
    config.validate()?;
    let mode = config.mode;
    let delay = config.delay;
    let mut table = match &config.grid {
        Grid::Logistic {
            r_start,
            r_stop,
            r_step,
            points,
            x0,
            burn_in,
            m,
        } => {
            let directed = build_path(*points, true)?;
            let undirected = build_path(*points, false)?;
            let rs = r_grid(*r_start, *r_stop, *r_step);
            let results: Vec<[Sample; 2]> = rs
                .par_iter()
                .map(|&r| -> CliResult<[Sample; 2]> {
                    let x = logistic_map_with_burn_in(r, *x0, *points, *burn_in)?;
                    Ok([
                        timed(|| peg(&directed, &x, *m, delay, mode))?,
                        timed(|| peg(&undirected, &x, *m, delay, mode))?,
                    ])
                })
                .collect::<CliResult<_>>()?;
            let mut t = stats_table(&["r", "domain", "m"], timings);
            for (r, pair) in rs.iter().zip(&results) {
                for (domain, s) in ["directed-path", "undirected-path"].into_iter().zip(pair) {
                    push_stats(&mut t, vec![(*r).into(), domain.into(), (*m).into()], &[*s], timings);
                }
            }
            t
        }

        Grid::Mix2d { p, sizes, m, seeds } => {
            let points: Vec<(usize, usize)> = (0..p.len())
                .flat_map(|pi| sizes.iter().map(move |&s| (pi, s)))
                .collect();
            let grids: Vec<Graph> = sizes
                .iter()
                .map(|&s| build_grid2d(s, s, true))
                .collect::<peg_core::Result<_>>()?;
            let results: Vec<Vec<Sample>> = points
                .par_iter()
                .map(|&(pi, size)| {
                    let g = &grids[sizes.iter().position(|&s| s == size).expect("listed size")];
                    (0..*seeds)
                        .map(|rep| {
                            let seed = derive_seed(config.seed, &[pi as u64, size as u64, rep as u64]);
                            let img = mix2d(p[pi], size, size, seed)?;
                            timed(|| peg(g, img.as_slice(), *m, delay, mode))
                        })
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<_>>()?;
            let mut t = stats_table(&["p", "size", "m"], timings);
            for (&(pi, size), samples) in points.iter().zip(&results) {
                push_stats(&mut t, vec![p[pi].into(), size.into(), (*m).into()], samples, timings);
            }
            t
        }

        Grid::Regular { n, m, seeds } => {
            let graphs = [
                ("cycle", build_cycle(*n)?),
                ("bipartite-half", build_complete_bipartite(n / 2, n - n / 2)?),
                ("complete", build_complete(*n)?),
            ];
            // One task per (graph, replicate); the signal of a replicate is
            // shared by all graphs and all m.
            let tasks: Vec<(usize, usize)> = (0..graphs.len())
                .flat_map(|gi| (0..*seeds).map(move |rep| (gi, rep)))
                .collect();
            let results: Vec<Vec<Sample>> = tasks
                .par_iter()
                .map(|&(gi, rep)| {
                    let x = gaussian_noise(*n, derive_seed(config.seed, &[rep as u64]));
                    m.iter()
                        .map(|&m| timed(|| peg(&graphs[gi].1, &x, m, delay, mode)))
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<_>>()?;
            let mut t = stats_table(&["graph", "m"], timings);
            for (gi, (name, _)) in graphs.iter().enumerate() {
                for (mi, &mm) in m.iter().enumerate() {
                    let samples: Vec<Sample> =
                        (0..*seeds).map(|rep| results[gi * seeds + rep][mi]).collect();
                    push_stats(&mut t, vec![(*name).into(), mm.into()], &samples, timings);
                }
            }
            t
        }

        Grid::Er { n, p, m, seeds } => {
            let tasks: Vec<(usize, usize)> = (0..p.len())
                .flat_map(|pi| (0..*seeds).map(move |rep| (pi, rep)))
                .collect();
            let results: Vec<Vec<Sample>> = tasks
                .par_iter()
                .map(|&(pi, rep)| {
                    let g = build_erdos_renyi(*n, p[pi], derive_seed(config.seed, &[pi as u64, rep as u64, 0]))?;
                    let x = gaussian_noise(*n, derive_seed(config.seed, &[pi as u64, rep as u64, 1]));
                    m.iter()
                        .map(|&m| timed(|| peg(&g, &x, m, delay, mode)))
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<_>>()?;
            let mut t = stats_table(&["n", "p", "m"], timings);
            for (pi, &pp) in p.iter().enumerate() {
                for (mi, &mm) in m.iter().enumerate() {
                    let samples: Vec<Sample> =
                        (0..*seeds).map(|rep| results[pi * seeds + rep][mi]).collect();
                    push_stats(&mut t, vec![(*n).into(), pp.into(), mm.into()], &samples, timings);
                }
            }
            t
        }

        Grid::BipartiteSweep { n } => {
            let n = *n;
            // Vertices 1..k carry the k largest values.
            let mut x = gaussian_noise(n, derive_seed(config.seed, &[0]));
            x.sort_by(|a, b| b.total_cmp(a));
            let ks: Vec<usize> = (1..=n / 2).collect();
            let results: Vec<(Sample, Sample)> = ks
                .par_iter()
                .map(|&k| -> CliResult<(Sample, Sample)> {
                    let g = build_complete_bipartite(k, n - k)?;
                    let s = timed(|| peg(&g, &x, 2, 1, mode))?;
                    drop(g);
                    let mirror = build_complete_bipartite(n - k, k)?;
                    Ok((s, timed(|| peg(&mirror, &x, 2, 1, mode))?))
                })
                .collect::<CliResult<_>>()?;
            let mut cols = vec!["k", "raw", "closed_form", "abs_diff", "mirror_raw", "normalized"];
            if timings {
                cols.push("runtime_s");
            }
            let mut t = Table::new(cols);
            for (&k, (s, mirror)) in ks.iter().zip(&results) {
                let closed = bipartite_closed_form(n, k);
                let mut row: Vec<Cell> = vec![
                    k.into(),
                    s.raw.into(),
                    closed.into(),
                    (s.raw - closed).abs().into(),
                    mirror.raw.into(),
                    s.normalized.into(),
                ];
                if timings {
                    row.push((s.secs + mirror.secs).into());
                }
                t.push(row);
            }
            t
        }
    };
    table.provenance = vec![
        ("tool".into(), json!(format!("peg-cli {}", env!("CARGO_PKG_VERSION")))),
        ("experiment".into(), json!(config.kind().name())),
        ("config_hash".into(), json!(config.hash())),
        ("config".into(), serde_json::to_value(config).expect("configs serialize")),
    ];
    Ok(table)
}

/// `-((n-k)/n) ln((n-k)/n) - (k/n) ln(k/n)`.
pub fn bipartite_closed_form(n: usize, k: usize) -> f64 {
    let a = (n - k) as f64 / n as f64;
    let b = k as f64 / n as f64;
    -a * a.ln() - b * b.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_by_path() {
        let a = derive_seed(1, &[0, 1]);
        assert_ne!(a, derive_seed(1, &[1, 0]));
        assert_ne!(a, derive_seed(2, &[0, 1]));
        assert_eq!(a, derive_seed(1, &[0, 1]));
    }

    #[test]
    fn summary_statistics() {
        let (mean, std, se) = summarize(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(mean, 2.5);
        assert!((std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((se - std / 2.0).abs() < 1e-15);
        assert_eq!(summarize(&[7.0]), (7.0, 0.0, 0.0));
    }

    #[test]
    fn r_grid_counts() {
        assert_eq!(r_grid(3.55, 4.0, 1e-3).len(), 451);
        assert_eq!(r_grid(3.55, 4.0, 1e-4).len(), 4501);
        let g = r_grid(3.55, 4.0, 1e-3);
        assert_eq!(g[0], 3.55);
        assert_eq!(*g.last().unwrap(), 4.0);
        assert_eq!(g[280], 3.83);
    }

    #[test]
    fn overrides_are_checked() {
        let base = ExperimentConfig::preset(ExperimentKind::Regular, 1, false);
        let o = Overrides {
            sizes: Some(vec![10]),
            ..Overrides::default()
        };
        assert!(base.clone().apply(&o).is_err());
        let o = Overrides {
            m: Some(vec![]),
            ..Overrides::default()
        };
        assert!(base.clone().apply(&o).is_err());
        let o = Overrides {
            n: Some(20),
            seeds: Some(2),
            ..Overrides::default()
        };
        let c = base.apply(&o).unwrap();
        assert_eq!(c.grid, Grid::Regular { n: 20, m: (2..=8).collect(), seeds: 2 });
    }

    #[test]
    fn small_bipartite_sweep_matches_closed_form() {
        let c = ExperimentConfig::preset(ExperimentKind::BipartiteSweep, 3, false)
            .apply(&Overrides {
                n: Some(40),
                ..Overrides::default()
            })
            .unwrap();
        let t = run(&c, false).unwrap();
        assert_eq!(t.rows.len(), 20);
        let diff = t.column("abs_diff").unwrap();
        assert!(t.rows.iter().all(|r| r[diff].as_f64().unwrap() <= 1e-12));
    }

    #[test]
    fn config_hash_tracks_parameters() {
        let a = ExperimentConfig::preset(ExperimentKind::Er, 1, false);
        let b = ExperimentConfig::preset(ExperimentKind::Er, 2, false);
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
        assert!(a.to_json().contains("\"experiment\":\"er\""));
    }
}
