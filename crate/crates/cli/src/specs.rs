//! Inline graph-builder and signal-generator specs, e.g. `grid:100x100` or
//! `logistic:3.83,4096`.

use peg_core::signal::{gaussian_noise, logistic_map_with_burn_in, mix2d};
use peg_core::{
    build_complete, build_complete_bipartite, build_cycle, build_erdos_renyi, build_grid2d,
    build_path, build_star, Graph, ImageMatrix,
};

use crate::{CliError, CliResult};

pub const BUILDER_HELP: &str = "path:N | cycle:N | complete:N | star:N | bipartite:K,L | grid:RxC | er:N,P";
pub const GENERATOR_HELP: &str = "noise:N | ramp:N | logistic:R,N[,X0[,BURN_IN]] | mix2d:P,RxC";

fn split(spec: &str) -> CliResult<(&str, Vec<&str>)> {
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| CliError::config(format!("spec {spec:?} has no `name:` prefix")))?;
    Ok((name, args.split(',').map(str::trim).collect()))
}

fn num<T: std::str::FromStr>(spec: &str, field: &str) -> CliResult<T> {
    field
        .parse()
        .map_err(|_| CliError::config(format!("bad number {field:?} in spec {spec:?}")))
}

fn dims(spec: &str, field: &str) -> CliResult<(usize, usize)> {
    let (r, c) = field
        .split_once('x')
        .ok_or_else(|| CliError::config(format!("expected ROWSxCOLS in spec {spec:?}")))?;
    Ok((num(spec, r)?, num(spec, c)?))
}

fn arity(spec: &str, args: &[&str], allowed: std::ops::RangeInclusive<usize>) -> CliResult<()> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        Err(CliError::config(format!("wrong number of arguments in spec {spec:?}")))
    }
}

/// Builds a graph from a builder spec. `directed` applies to `path` and
/// `grid`; `seed` to `er`.
pub fn build_graph(spec: &str, directed: bool, seed: u64) -> CliResult<Graph> {
    let (name, args) = split(spec)?;
    let undirected_only = |g: CliResult<Graph>| {
        if directed {
            Err(CliError::config(format!("builder {name:?} has no directed variant")))
        } else {
            g
        }
    };
    match name {
        "path" => {
            arity(spec, &args, 1..=1)?;
            Ok(build_path(num(spec, args[0])?, directed)?)
        }
        "grid" => {
            arity(spec, &args, 1..=1)?;
            let (r, c) = dims(spec, args[0])?;
            Ok(build_grid2d(r, c, directed)?)
        }
        "cycle" | "complete" | "star" => {
            arity(spec, &args, 1..=1)?;
            let n = num(spec, args[0])?;
            undirected_only(Ok(match name {
                "cycle" => build_cycle(n)?,
                "complete" => build_complete(n)?,
                _ => build_star(n)?,
            }))
        }
        "bipartite" => {
            arity(spec, &args, 2..=2)?;
            undirected_only(Ok(build_complete_bipartite(num(spec, args[0])?, num(spec, args[1])?)?))
        }
        "er" => {
            arity(spec, &args, 2..=2)?;
            undirected_only(Ok(build_erdos_renyi(num(spec, args[0])?, num(spec, args[1])?, seed)?))
        }
        other => Err(CliError::config(format!(
            "unknown builder {other:?} (expected {BUILDER_HELP})"
        ))),
    }
}

/// Output of a generator spec.
#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Series(Vec<f64>),
    Image(ImageMatrix),
}

impl Generated {
    pub fn into_signal(self) -> Vec<f64> {
        match self {
            Generated::Series(x) => x,
            Generated::Image(m) => m.into_signal(),
        }
    }
}

pub fn generate(spec: &str, seed: u64) -> CliResult<Generated> {
    let (name, args) = split(spec)?;
    match name {
        "noise" => {
            arity(spec, &args, 1..=1)?;
            Ok(Generated::Series(gaussian_noise(num(spec, args[0])?, seed)))
        }
        "ramp" => {
            arity(spec, &args, 1..=1)?;
            let n: usize = num(spec, args[0])?;
            Ok(Generated::Series((1..=n).map(|i| i as f64).collect()))
        }
        "logistic" => {
            arity(spec, &args, 2..=4)?;
            let r = num(spec, args[0])?;
            let n = num(spec, args[1])?;
            let x0 = args.get(2).map(|a| num(spec, a)).transpose()?.unwrap_or(0.65);
            let burn = args.get(3).map(|a| num(spec, a)).transpose()?.unwrap_or(0);
            Ok(Generated::Series(logistic_map_with_burn_in(r, x0, n, burn)?))
        }
        "mix2d" => {
            arity(spec, &args, 2..=2)?;
            let (rows, cols) = dims(spec, args[1])?;
            Ok(Generated::Image(mix2d(num(spec, args[0])?, rows, cols, seed)?))
        }
        other => Err(CliError::config(format!(
            "unknown generator {other:?} (expected {GENERATOR_HELP})"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders() {
        assert_eq!(build_graph("path:5", true, 0).unwrap().edge_count(), 4);
        assert_eq!(build_graph("grid:3x4", false, 0).unwrap().n(), 12);
        assert_eq!(build_graph("bipartite:2,3", false, 0).unwrap().edge_count(), 6);
        assert_eq!(build_graph("er:10,1", false, 3).unwrap().edge_count(), 45);
        assert!(build_graph("cycle:5", true, 0).is_err());
        assert!(build_graph("wheel:5", false, 0).is_err());
        assert!(build_graph("path", false, 0).is_err());
        assert!(build_graph("path:x", false, 0).is_err());
        assert!(build_graph("grid:3", false, 0).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(generate("ramp:3", 0).unwrap().into_signal(), vec![1.0, 2.0, 3.0]);
        assert_eq!(generate("noise:4", 7).unwrap(), generate("noise:4", 7).unwrap());
        let l = generate("logistic:4,3,0.5", 0).unwrap().into_signal();
        assert_eq!(l, vec![1.0, 0.0, 0.0]);
        match generate("mix2d:0.5,3x4", 1).unwrap() {
            Generated::Image(m) => assert_eq!((m.rows(), m.cols()), (3, 4)),
            other => panic!("{other:?}"),
        }
        assert!(generate("logistic:5,10", 0).is_err());
        assert!(generate("mix2d:0.5", 0).is_err());
    }
}
