//! Pattern histograms and Shannon entropy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Aggregation;
use crate::ordinal::{check_dimension, factorial, ln_factorial};

/// Dimensions up to this use a dense `m!`-slot array (8! = 40320).
const DENSE_MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Bins {
    Dense(Vec<u64>),
    Sparse(BTreeMap<u64, u64>),
}

/// Counts of ordinal patterns, keyed by Lehmer index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternHistogram {
    m: usize,
    bins: Bins,
    total: u64,
}

impl PatternHistogram {
    pub fn new(m: usize) -> Result<Self> {
        check_dimension(m)?;
        let bins = if m <= DENSE_MAX_DIMENSION {
            Bins::Dense(vec![0; factorial(m) as usize])
        } else {
            Bins::Sparse(BTreeMap::new())
        };
        Ok(PatternHistogram { m, bins, total: 0 })
    }

    pub fn from_counts<I>(m: usize, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut h = PatternHistogram::new(m)?;
        for (pattern, count) in counts {
            if pattern >= factorial(m) {
                return Err(Error::InvalidParameter(format!(
                    "pattern index {pattern} is out of range for m = {m}"
                )));
            }
            h.add_many(pattern, count);
        }
        Ok(h)
    }

    pub fn add(&mut self, pattern: u64) {
        self.add_many(pattern, 1);
    }

    fn add_many(&mut self, pattern: u64, count: u64) {
        debug_assert!(pattern < factorial(self.m));
        if count == 0 {
            return;
        }
        match &mut self.bins {
            Bins::Dense(v) => v[pattern as usize] += count,
            Bins::Sparse(map) => *map.entry(pattern).or_insert(0) += count,
        }
        self.total += count;
    }

    /// Adds `other` into `self`. Merging is associative and commutative, so
    /// partial histograms can be combined in any grouping.
    pub fn merge(&mut self, other: &PatternHistogram) {
        assert_eq!(self.m, other.m, "cannot merge histograms of different dimension");
        for (pattern, count) in other.nonzero() {
            self.add_many(pattern, count);
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, pattern: u64) -> u64 {
        match &self.bins {
            Bins::Dense(v) => v.get(pattern as usize).copied().unwrap_or(0),
            Bins::Sparse(map) => map.get(&pattern).copied().unwrap_or(0),
        }
    }

    /// Nonzero bins in increasing pattern order.
    pub fn nonzero(&self) -> Box<dyn Iterator<Item = (u64, u64)> + '_> {
        match &self.bins {
            Bins::Dense(v) => Box::new(
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(p, &c)| (p as u64, c)),
            ),
            Bins::Sparse(map) => Box::new(map.iter().map(|(&p, &c)| (p, c))),
        }
    }

    /// Number of distinct patterns observed.
    pub fn distinct(&self) -> usize {
        self.nonzero().count()
    }

    /// Bin counts sorted in decreasing order, forgetting which pattern each
    /// belongs to.
    pub fn count_multiset(&self) -> Vec<u64> {
        let mut c: Vec<u64> = self.nonzero().map(|(_, c)| c).collect();
        c.sort_unstable_by(|a, b| b.cmp(a));
        c
    }

    /// `-sum p ln p` over nonzero bins, in nats.
    pub fn shannon(&self) -> f64 {
        let total = self.total as f64;
        let raw = self
            .nonzero()
            .map(|(_, c)| {
                let p = c as f64 / total;
                p * p.ln()
            })
            .fold(0.0, |acc, t| acc - t);
        raw.clamp(0.0, ln_factorial(self.m))
    }
}

/// Parameters and diagnostics attached to an entropy value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub delay: usize,
    /// `None` for classical time-series entropy.
    pub mode: Option<Aggregation>,
    pub graph: String,
    pub signal_hash: String,
    /// Embedding vectors containing at least one pair of equal entries.
    pub tied_vectors: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ResultRecord", try_from = "ResultRecord")]
pub struct EntropyResult {
    /// Entropy in nats.
    pub raw: f64,
    /// `raw / ln(m!)`.
    pub normalized: f64,
    pub histogram: PatternHistogram,
    pub provenance: Provenance,
}

impl EntropyResult {
    pub fn m(&self) -> usize {
        self.histogram.m()
    }

    pub fn total(&self) -> u64 {
        self.histogram.total()
    }
}

/// Shannon entropy of a pattern histogram, with empty provenance.
pub fn entropy_of_histogram(histogram: PatternHistogram) -> Result<EntropyResult> {
    entropy_with_provenance(histogram, Provenance::default())
}

pub(crate) fn entropy_with_provenance(
    histogram: PatternHistogram,
    provenance: Provenance,
) -> Result<EntropyResult> {
    if histogram.total() == 0 {
        return Err(Error::EmptyDomain("the pattern histogram is empty".into()));
    }
    let raw = histogram.shannon();
    let normalized = (raw / ln_factorial(histogram.m())).clamp(0.0, 1.0);
    Ok(EntropyResult {
        raw,
        normalized,
        histogram,
        provenance,
    })
}

/// SHA-256 of the signal's little-endian `f64` bytes, hex encoded.
pub fn signal_hash(x: &[f64]) -> String {
    let mut hasher = Sha256::new();
    for v in x {
        hasher.update(v.to_le_bytes());
    }
    hex::encode(hasher.finalize())
}

/// On-disk JSON shape of an [`EntropyResult`].
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ResultRecord {
    m: usize,
    #[serde(rename = "L")]
    delay: usize,
    mode: Option<Aggregation>,
    raw_nats: f64,
    normalized: f64,
    total: u64,
    histogram: Vec<(u64, u64)>,
    graph: String,
    signal_hash: String,
    #[serde(default)]
    tied_vectors: u64,
}

impl From<EntropyResult> for ResultRecord {
    fn from(r: EntropyResult) -> Self {
        ResultRecord {
            m: r.m(),
            delay: r.provenance.delay,
            mode: r.provenance.mode,
            raw_nats: r.raw,
            normalized: r.normalized,
            total: r.total(),
            histogram: r.histogram.nonzero().collect(),
            graph: r.provenance.graph,
            signal_hash: r.provenance.signal_hash,
            tied_vectors: r.provenance.tied_vectors,
        }
    }
}

impl TryFrom<ResultRecord> for EntropyResult {
    type Error = Error;

    fn try_from(rec: ResultRecord) -> Result<Self> {
        let histogram = PatternHistogram::from_counts(rec.m, rec.histogram)?;
        if histogram.total() != rec.total {
            return Err(Error::InvalidParameter(format!(
                "histogram counts sum to {} but total is {}",
                histogram.total(),
                rec.total
            )));
        }
        Ok(EntropyResult {
            raw: rec.raw_nats,
            normalized: rec.normalized,
            histogram,
            provenance: Provenance {
                delay: rec.delay,
                mode: rec.mode,
                graph: rec.graph,
                signal_hash: rec.signal_hash,
                tied_vectors: rec.tied_vectors,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_three_split() {
        let h = PatternHistogram::from_counts(2, [(0, 5), (1, 3)]).unwrap();
        let r = entropy_of_histogram(h).unwrap();
        assert!((r.raw - 0.6616).abs() < 5e-5, "{}", r.raw);
        assert!((r.normalized - 0.9544).abs() < 5e-5, "{}", r.normalized);
    }

    #[test]
    fn single_bin_is_zero() {
        let h = PatternHistogram::from_counts(4, [(7, 42)]).unwrap();
        let r = entropy_of_histogram(h).unwrap();
        assert_eq!(r.raw, 0.0);
        assert_eq!(r.normalized, 0.0);
    }

    #[test]
    fn uniform_reaches_the_maximum() {
        for m in 2..=5 {
            let h = PatternHistogram::from_counts(m, (0..factorial(m)).map(|p| (p, 3))).unwrap();
            let r = entropy_of_histogram(h).unwrap();
            assert!((r.raw - ln_factorial(m)).abs() < 1e-12);
            assert!((r.normalized - 1.0).abs() < 1e-12 && r.normalized <= 1.0);
        }
    }

    #[test]
    fn empty_histogram_is_an_error() {
        let h = PatternHistogram::new(3).unwrap();
        assert!(matches!(entropy_of_histogram(h), Err(Error::EmptyDomain(_))));
    }

    #[test]
    fn sparse_storage_above_eight() {
        let mut h = PatternHistogram::new(10).unwrap();
        h.add(factorial(10) - 1);
        h.add(0);
        h.add(0);
        assert_eq!(h.nonzero().collect::<Vec<_>>(), vec![(0, 2), (factorial(10) - 1, 1)]);
        assert!(PatternHistogram::from_counts(3, [(6, 1)]).is_err());
    }

    #[test]
    fn merge_is_order_independent() {
        let a = PatternHistogram::from_counts(3, [(0, 2), (4, 1)]).unwrap();
        let b = PatternHistogram::from_counts(3, [(4, 5), (5, 1)]).unwrap();
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.total(), 9);
        assert_eq!(ab.count_multiset(), vec![6, 2, 1]);
    }

    #[test]
    fn json_round_trip_preserves_fields() {
        let h = PatternHistogram::from_counts(3, [(0, 4), (2, 1), (5, 7)]).unwrap();
        let r = entropy_with_provenance(
            h,
            Provenance {
                delay: 2,
                mode: Some(Aggregation::SetBased),
                graph: "cycle(n=12)".into(),
                signal_hash: signal_hash(&[1.0, 2.0]),
                tied_vectors: 3,
            },
        )
        .unwrap();
        let json = serde_json::to_string(&r).unwrap();
        for key in ["\"m\":3", "\"L\":2", "\"mode\":\"set\"", "\"raw_nats\"", "\"histogram\":[[0,4],[2,1],[5,7]]"] {
            assert!(json.contains(key), "{json}");
        }
        let back: EntropyResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn json_rejects_inconsistent_total() {
        let bad = r#"{"m":2,"L":1,"mode":null,"raw_nats":0.0,"normalized":0.0,"total":3,
            "histogram":[[0,2]],"graph":"","signal_hash":""}"#;
        assert!(serde_json::from_str::<EntropyResult>(bad).is_err());
    }
}
