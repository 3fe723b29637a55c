//! Readers and writers for the on-disk formats.
//!
//! Vertex ids are 1-based on disk and 0-based everywhere else; the conversion
//! happens only here. Readers reject malformed input instead of repairing it,
//! and every error carries the line (text formats) or byte offset (binary PGM)
//! where parsing stopped.
//!
//! Formats:
//!
//! * edge list: optional `%directed` / `%undirected` header (default
//!   undirected), optional `%vertices N`, then `u v [w]` per line separated by
//!   tabs or spaces. `#` starts a comment.
//! * signal: one value per line, or `vertex,value` pairs covering `1..=n`
//!   exactly once. An optional `value` / `vertex,value` header is accepted.
//! * matrix: PGM (`P2` or `P5`, 8 or 16 bit) or a comma-separated numeric
//!   matrix, flattened row-major.
//! * coordinates: `id,x,y` rows with an optional `id,x,y` header.
//! * result: JSON, see [`EntropyResult`].

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::entropy::{signal_hash, EntropyResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, Point2};
use crate::signal::ImageMatrix;

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::from(e).in_file(path))
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        }
        .trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_f64(line: usize, field: &str, what: &str) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} {field:?} is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("{what} {field:?} is not finite")));
    }
    Ok(v)
}

fn parse_id(line: usize, field: &str) -> Result<usize> {
    match field.trim().parse::<usize>() {
        Ok(0) => Err(Error::parse(line, "vertex ids start at 1")),
        Ok(id) => Ok(id),
        Err(_) => Err(Error::parse(line, format!("vertex id {field:?} is not a positive integer"))),
    }
}

// ---------------------------------------------------------------- edge lists

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    parse_edge_list(&read_text(path)?)
        .map_err(|e| e.in_file(path))
        .map(|g| g.with_label(path.display().to_string()))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut directed = None;
    let mut declared_n = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();

    for (line, content) in content_lines(text) {
        if let Some(directive) = content.strip_prefix('%') {
            if !edges.is_empty() {
                return Err(Error::parse(line, "directives must precede the first edge"));
            }
            let mut words = directive.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some(kind @ ("directed" | "undirected")), None, None) => {
                    if directed.is_some() {
                        return Err(Error::parse(line, "repeated orientation directive"));
                    }
                    directed = Some(kind == "directed");
                }
                (Some("vertices"), Some(count), None) => {
                    if declared_n.is_some() {
                        return Err(Error::parse(line, "repeated %vertices directive"));
                    }
                    let n: usize = count
                        .parse()
                        .map_err(|_| Error::parse(line, format!("bad vertex count {count:?}")))?;
                    declared_n = Some(n);
                }
                _ => return Err(Error::parse(line, format!("unknown directive %{directive}"))),
            }
            continue;
        }
        let directed = *directed.get_or_insert(false);

        let fields: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(
                line,
                format!("expected `u v [w]`, found {} fields", fields.len()),
            ));
        }
        let u = parse_id(line, fields[0])?;
        let v = parse_id(line, fields[1])?;
        let w = match fields.get(2) {
            Some(f) => parse_f64(line, f, "weight")?,
            None => 1.0,
        };
        if u == v {
            return Err(Error::InvalidGraph(format!("line {line}: self-loop at vertex {u}")));
        }
        if w <= 0.0 {
            return Err(Error::InvalidGraph(format!(
                "line {line}: edge ({u}, {v}) has non-positive weight {w}"
            )));
        }
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if let Some(first) = seen.insert(key, line) {
            return Err(Error::InvalidGraph(format!(
                "line {line}: edge ({u}, {v}) duplicates line {first}"
            )));
        }
        edges.push((u - 1, v - 1, w));
    }

    let max_id = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared_n {
        Some(n) if n < max_id => {
            return Err(Error::InvalidGraph(format!(
                "edge list references vertex {max_id} but declares only {n} vertices"
            )))
        }
        Some(n) => n,
        None => max_id,
    };
    if n == 0 {
        return Err(Error::InvalidGraph("edge list has no vertices".into()));
    }
    Graph::from_edges(n, directed.unwrap_or(false), edges)
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &format_edge_list(g))
}

/// Canonical text form: orientation header, vertex count, then edges sorted
/// by `(u, v)` with `u < v` for undirected graphs. Weights are written only
/// for weighted graphs, in shortest round-trip notation.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(if g.is_directed() { "%directed\n" } else { "%undirected\n" });
    let _ = writeln!(out, "%vertices {}", g.n());
    for (u, v, w) in g.edges() {
        if g.is_weighted() {
            let _ = writeln!(out, "{}\t{}\t{w}", u + 1, v + 1);
        } else {
            let _ = writeln!(out, "{}\t{}", u + 1, v + 1);
        }
    }
    out
}

// ------------------------------------------------------------------- signals

pub fn read_signal(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    parse_signal(&read_text(path)?).map_err(|e| e.in_file(path))
}

pub fn parse_signal(text: &str) -> Result<Vec<f64>> {
    let mut lines = content_lines(text).peekable();
    if let Some(&(_, first)) = lines.peek() {
        let header: Vec<&str> = first.split(',').map(str::trim).collect();
        if header == ["value"] || header == ["vertex", "value"] {
            lines.next();
        }
    }

    let mut plain = Vec::new();
    let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split(',').collect();
        match fields.len() {
            1 if pairs.is_empty() => plain.push(parse_f64(line, fields[0], "value")?),
            2 if plain.is_empty() => {
                pairs.push((line, parse_id(line, fields[0])?, parse_f64(line, fields[1], "value")?))
            }
            1 | 2 => {
                return Err(Error::parse(line, "mixes plain values with vertex,value pairs"))
            }
            k => return Err(Error::parse(line, format!("expected 1 or 2 fields, found {k}"))),
        }
    }
    if pairs.is_empty() {
        if plain.is_empty() {
            return Err(Error::InvalidSignal("signal file has no values".into()));
        }
        return Ok(plain);
    }

    let n = pairs.len();
    let mut x: Vec<Option<f64>> = vec![None; n];
    for &(line, id, v) in &pairs {
        if id > n {
            return Err(Error::parse(
                line,
                format!("vertex {id} is outside 1..={n} ({n} pairs given)"),
            ));
        }
        if x[id - 1].replace(v).is_some() {
            return Err(Error::parse(line, format!("vertex {id} is given twice")));
        }
    }
    Ok(x.into_iter().map(|v| v.expect("n distinct ids in 1..=n")).collect())
}

pub fn write_signal(x: &[f64], path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &format_signal(x))
}

/// One value per line, shortest round-trip notation.
pub fn format_signal(x: &[f64]) -> String {
    let mut out = String::with_capacity(x.len() * 20);
    for v in x {
        let _ = writeln!(out, "{v}");
    }
    out
}

// ------------------------------------------------------------------ matrices

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ImageMatrix> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::from(e).in_file(path))?;
    parse_matrix(&bytes).map_err(|e| e.in_file(path))
}

/// PGM when the data starts with `P2` or `P5`, CSV otherwise.
pub fn parse_matrix(bytes: &[u8]) -> Result<ImageMatrix> {
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        return parse_pgm(bytes);
    }
    let text = std::str::from_utf8(bytes).map_err(|e| Error::ParseBytes {
        offset: e.valid_up_to(),
        message: "matrix CSV is not valid UTF-8".into(),
    })?;
    parse_matrix_csv(text)
}

pub fn parse_matrix_csv(text: &str) -> Result<ImageMatrix> {
    let mut cols = None;
    let mut rows = 0;
    let mut data = Vec::new();
    for (line, content) in content_lines(text) {
        let before = data.len();
        for field in content.split(',') {
            data.push(parse_f64(line, field, "entry")?);
        }
        let width = data.len() - before;
        match cols {
            None => cols = Some(width),
            Some(c) if c != width => {
                return Err(Error::parse(line, format!("row has {width} entries, expected {c}")))
            }
            _ => {}
        }
        rows += 1;
    }
    match cols {
        Some(cols) => ImageMatrix::new(rows, cols, data),
        None => Err(Error::InvalidSize("matrix file has no rows".into())),
    }
}

struct PgmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PgmCursor<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::ParseBytes {
            offset: self.pos,
            message: message.into(),
        }
    }

    /// Skips whitespace and `#` comments.
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn integer(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return Err(self.error(format!("expected {what}")));
        }
        if self.bytes.get(self.pos).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
            return Err(self.error(format!("unexpected byte after {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ASCII digits")
            .parse()
            .map_err(|_| Error::ParseBytes {
                offset: start,
                message: format!("{what} is too large"),
            })
    }
}

pub fn parse_pgm(bytes: &[u8]) -> Result<ImageMatrix> {
    let mut cur = PgmCursor { bytes, pos: 0 };
    let binary = match bytes.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(cur.error("missing P2/P5 magic number")),
    };
    cur.pos = 2;
    if cur.bytes.get(2).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
        return Err(cur.error("magic number must be followed by whitespace"));
    }
    let cols = cur.integer("width")? as usize;
    let rows = cur.integer("height")? as usize;
    let maxval = cur.integer("maximum grey value")?;
    if cols == 0 || rows == 0 {
        return Err(cur.error(format!("image size {cols}x{rows} is empty")));
    }
    if !(1..=65535).contains(&maxval) {
        return Err(cur.error(format!("maximum grey value {maxval} is outside 1..=65535")));
    }
    let count = rows * cols;
    let mut data = Vec::with_capacity(count);

    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        if !cur.bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(cur.error("expected a single whitespace byte before the raster"));
        }
        cur.pos += 1;
        let width = if maxval < 256 { 1 } else { 2 };
        let raster = &bytes[cur.pos..];
        if raster.len() < count * width {
            return Err(Error::ParseBytes {
                offset: bytes.len(),
                message: format!(
                    "raster ends after {} of {} bytes",
                    raster.len(),
                    count * width
                ),
            });
        }
        if raster.len() > count * width {
            return Err(Error::ParseBytes {
                offset: cur.pos + count * width,
                message: "trailing data after the raster".into(),
            });
        }
        for (k, sample) in raster.chunks_exact(width).enumerate() {
            let v = match *sample {
                [b] => u32::from(b),
                [hi, lo] => u32::from(u16::from_be_bytes([hi, lo])),
                _ => unreachable!(),
            };
            if v > maxval {
                return Err(Error::ParseBytes {
                    offset: cur.pos + k * width,
                    message: format!("sample {v} exceeds the maximum grey value {maxval}"),
                });
            }
            data.push(f64::from(v));
        }
    } else {
        for _ in 0..count {
            let start = cur.pos;
            let v = cur.integer("grey value")?;
            if v > maxval {
                cur.pos = start;
                cur.skip_separators();
                return Err(cur.error(format!("sample {v} exceeds the maximum grey value {maxval}")));
            }
            data.push(f64::from(v));
        }
        cur.skip_separators();
        if cur.pos < bytes.len() {
            return Err(cur.error("trailing data after the last sample"));
        }
    }
    ImageMatrix::new(rows, cols, data)
}

pub fn write_matrix_csv(m: &ImageMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &format_matrix_csv(m))
}

pub fn format_matrix_csv(m: &ImageMatrix) -> String {
    let mut out = String::new();
    for row in m.as_slice().chunks_exact(m.cols()) {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

// --------------------------------------------------------------- coordinates

pub fn read_coords(path: impl AsRef<Path>) -> Result<Vec<Point2>> {
    let path = path.as_ref();
    parse_coords(&read_text(path)?).map_err(|e| e.in_file(path))
}

/// Points in id order.
pub fn parse_coords(text: &str) -> Result<Vec<Point2>> {
    let mut rows: Vec<(usize, usize, Point2)> = Vec::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if rows.is_empty() && fields == ["id", "x", "y"] {
            continue;
        }
        if fields.len() != 3 {
            return Err(Error::parse(line, format!("expected `id,x,y`, found {} fields", fields.len())));
        }
        let id = parse_id(line, fields[0])?;
        let p = Point2 {
            x: parse_f64(line, fields[1], "x")?,
            y: parse_f64(line, fields[2], "y")?,
        };
        rows.push((line, id, p));
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidSize("coordinate file has no points".into()));
    }
    let mut points: Vec<Option<Point2>> = vec![None; n];
    for (line, id, p) in rows {
        if id > n {
            return Err(Error::parse(line, format!("id {id} is outside 1..={n}")));
        }
        if points[id - 1].replace(p).is_some() {
            return Err(Error::parse(line, format!("id {id} is given twice")));
        }
    }
    Ok(points.into_iter().map(|p| p.expect("n distinct ids")).collect())
}

// ------------------------------------------------------------------- results

pub fn write_result(result: &EntropyResult, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &format_result(result)?)
}

/// Pretty-printed JSON with a trailing newline.
pub fn format_result(result: &EntropyResult) -> Result<String> {
    let mut s = serde_json::to_string_pretty(result)?;
    s.push('\n');
    Ok(s)
}

pub fn read_result(path: impl AsRef<Path>) -> Result<EntropyResult> {
    let path = path.as_ref();
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::from(e).in_file(path))
}

// ------------------------------------------------------------------- dataset

/// Where a dataset came from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DatasetMetadata {
    pub sources: Vec<PathBuf>,
    pub format: String,
    /// One [`signal_hash`] per signal.
    pub signal_hashes: Vec<String>,
}

/// A graph and the signals defined on it.
#[derive(Debug, Clone)]
pub struct Dataset {
    graph: Option<Graph>,
    signals: Vec<Vec<f64>>,
    metadata: DatasetMetadata,
}

impl Dataset {
    /// Fails when a signal's length differs from the graph order.
    pub fn new(graph: Option<Graph>, signals: Vec<Vec<f64>>) -> Result<Self> {
        if signals.is_empty() {
            return Err(Error::InvalidSignal("a dataset needs at least one signal".into()));
        }
        if let Some(g) = &graph {
            if let Some((k, s)) = signals.iter().enumerate().find(|(_, s)| s.len() != g.n()) {
                return Err(Error::InvalidSize(format!(
                    "signal {} has {} values but the graph has {} vertices",
                    k + 1,
                    s.len(),
                    g.n()
                )));
            }
        }
        let metadata = DatasetMetadata {
            signal_hashes: signals.iter().map(|s| signal_hash(s)).collect(),
            ..DatasetMetadata::default()
        };
        Ok(Dataset {
            graph,
            signals,
            metadata,
        })
    }

    /// Reads an optional edge list and one or more signal files.
    pub fn load(graph: Option<&Path>, signals: &[PathBuf]) -> Result<Self> {
        let g = graph.map(read_edge_list).transpose()?;
        let xs = signals.iter().map(read_signal).collect::<Result<Vec<_>>>()?;
        let mut ds = Dataset::new(g, xs)?;
        ds.metadata.sources = graph.map(Path::to_path_buf).into_iter().chain(signals.iter().cloned()).collect();
        ds.metadata.format = "edge-list+signal-csv".into();
        Ok(ds)
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    pub fn signals(&self) -> &[Vec<f64>] {
        &self.signals
    }

    pub fn metadata(&self) -> &DatasetMetadata {
        &self.metadata
    }
}
