use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::PathBuf;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::words::canonical_word;
use crate::error::{Error, Result};
use crate::numeric::{cf_expand, Parity};
use crate::operators::IntMatrix2;
use crate::reduction::{construct_from_period, period_of_reduced, reduce_fast, LlsPeriod};
use crate::scalar::{ext_gcd, format_tuple, Int};

/// Bucket label of a reduced operator produced by the reduction.
pub fn census_label<T: Int>(reduced: &IntMatrix2<T>) -> Result<LlsPeriod<T>> {
    period_of_reduced(reduced)
}

/// Bucket label read from a reduced operator displayed row-wise as `(p q; r s)`,
/// i.e. the transpose of the reduction output.
///
/// `(1, s − 2)` when `p = 0`, otherwise the odd expansion of `q/p` followed by
/// `⌊(s − 1)/q⌋`.
pub fn census_label_display<T: Int>(display: &IntMatrix2<T>) -> Result<LlsPeriod<T>> {
    let (p, q, s) = (&display.m11, &display.m12, &display.m22);
    if p.is_zero() {
        return LlsPeriod::new(vec![T::one(), s.clone() - T::one() - T::one()]);
    }
    if !p.is_positive() || !q.is_positive() {
        return Err(Error::NotReduced);
    }
    let mut word = cf_expand(&Ratio::new(q.clone(), p.clone()), Parity::Odd).into_terms();
    word.push((s.clone() - T::one()).div_floor(q));
    LlsPeriod::new(word)
}

/// Trace of the reduced operator carrying an even-length bucket label.
pub fn trace_of_label<T: Int>(label: &[T]) -> Result<T> {
    if label.len() < 2 || label.len() % 2 != 0 {
        return Err(Error::InvalidPeriod(format!("{} is not an even-length label", format_tuple(label))));
    }
    let (prefix, lambda) = label.split_at(label.len() - 1);
    Ok(construct_from_period(prefix, &lambda[0])?.trace())
}

/// Values of `t` with `|base + t·step| <= bound`, as an inclusive range.
fn t_range(base: i64, step: i64, bound: i64) -> Option<(i64, i64)> {
    if step == 0 {
        return (base.abs() <= bound).then_some((i64::MIN, i64::MAX));
    }
    // lo <= t·step <= hi
    let (lo, hi) = (-bound - base, bound - base);
    let (lo, hi, step) = if step > 0 { (lo, hi, step) } else { (-hi, -lo, -step) };
    let (lo, hi) = (-((-lo).div_euclid(step)), hi.div_euclid(step));
    (lo <= hi).then_some((lo, hi))
}

fn intersect(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    let ((a0, a1), (b0, b1)) = (a?, b?);
    let (lo, hi) = (a0.max(b0), a1.min(b1));
    (lo <= hi).then_some((lo, hi))
}

/// Every det-one matrix with all entries in `[-n, n]` whose first row is `(x, ·)`
/// and whose `|trace|` lies in `[min_trace, max_trace]`.
fn visit_stratum(n: i64, x: i64, min_trace: i64, max_trace: Option<i64>, mut f: impl FnMut(IntMatrix2<i64>)) {
    for y in -n..=n {
        if x.gcd(&y) != 1 {
            continue;
        }
        // x·u + y·v = 1, so (m21, m22) = (−v + t·x, u + t·y)
        let (_, u, v) = ext_gcd(&x, &y);
        let mut range = intersect(t_range(u, y, n), t_range(-v, x, n));
        if let Some(cap) = max_trace {
            range = intersect(range, t_range(x + u, y, cap));
        }
        let Some((lo, hi)) = range else { continue };
        for t in lo..=hi {
            let m22 = u + t * y;
            let tr = (x + m22).abs();
            if tr < min_trace || max_trace.is_some_and(|c| tr > c) {
                continue;
            }
            f(IntMatrix2::new(x, y, -v + t * x, m22));
        }
    }
}

/// Visit each integer matrix of determinant one with entries bounded by `n`
/// exactly once, first rows in lexicographic order. Returns the count.
pub fn enumerate_sl2(n: i64, mut visitor: impl FnMut(&IntMatrix2<i64>)) -> u64 {
    let mut count = 0;
    for x in -n..=n {
        visit_stratum(n, x, 0, None, |m| {
            count += 1;
            visitor(&m);
        });
    }
    count
}

/// Direct count over all `(2n+1)^4` candidates.
pub fn enumerate_sl2_bruteforce(n: i64) -> u64 {
    let r = -n..=n;
    let mut count = 0;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    count += u64::from(a * d - b * c == 1);
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub n: i64,
    /// Largest `|trace|` counted; all hyperbolic traces when `None`.
    pub trace_cap: Option<i64>,
    /// Worker threads; `0` uses the rayon default.
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// First-row strata processed between checkpoint writes.
    pub checkpoint_every: usize,
}

impl CensusOptions {
    pub fn new(n: i64) -> Self {
        Self { n, trace_cap: None, workers: 0, checkpoint: None, checkpoint_every: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct StateCount {
    state: [i64; 4],
    count: u64,
}

/// Resumable census state: strata before `cursor` are already counted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    #[serde(rename = "N")]
    pub n: i64,
    pub trace_cap: Option<i64>,
    pub cursor: usize,
    pub matrices_scanned: u64,
    counts: Vec<StateCount>,
}

type StateCounts = HashMap<[i64; 4], u64>;

fn merge(mut a: StateCounts, b: StateCounts) -> StateCounts {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn count_stratum(opts: &CensusOptions, x: i64) -> Result<(StateCounts, u64)> {
    let mut counts = StateCounts::new();
    let mut scanned = 0u64;
    let mut err = None;
    visit_stratum(opts.n, x, 3, opts.trace_cap, |m| {
        if err.is_some() {
            return;
        }
        match reduce_fast(&m) {
            Ok(r) => {
                scanned += 1;
                *counts.entry([r.m11, r.m12, r.m21, r.m22]).or_insert(0) += 1;
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok((counts, scanned)),
    }
}

/// Count how often the reduction lands on each reduced operator.
pub fn census(opts: &CensusOptions) -> Result<CensusReport> {
    if opts.n < 1 {
        return Err(Error::OutOfRange(format!("N = {} must be positive", opts.n)));
    }
    let strata: Vec<i64> = (-opts.n..=opts.n).collect();
    let mut counts = StateCounts::new();
    let mut scanned = 0u64;
    let mut cursor = 0usize;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let text = fs::read_to_string(path).map_err(|e| Error::OutOfRange(format!("checkpoint: {e}")))?;
            let cp: Checkpoint =
                serde_json::from_str(&text).map_err(|e| Error::OutOfRange(format!("checkpoint: {e}")))?;
            if cp.n != opts.n || cp.trace_cap != opts.trace_cap || cp.cursor > strata.len() {
                return Err(Error::OutOfRange("checkpoint was written for a different census".into()));
            }
            cursor = cp.cursor;
            scanned = cp.matrices_scanned;
            counts = cp.counts.into_iter().map(|s| (s.state, s.count)).collect();
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if opts.workers > 0 {
        builder = builder.num_threads(opts.workers);
    }
    let pool = builder.build().map_err(|e| Error::Internal(e.to_string()))?;
    let batch = opts.checkpoint_every.max(1);
    while cursor < strata.len() {
        let end = (cursor + batch).min(strata.len());
        let (part, n) = pool.install(|| {
            strata[cursor..end]
                .par_iter()
                .map(|&x| count_stratum(opts, x))
                .try_reduce(|| (StateCounts::new(), 0), |a, b| Ok((merge(a.0, b.0), a.1 + b.1)))
        })?;
        counts = merge(counts, part);
        scanned += n;
        cursor = end;
        if let Some(path) = &opts.checkpoint {
            write_checkpoint(path, opts, cursor, scanned, &counts)?;
        }
    }
    CensusReport::from_states(opts.n, opts.trace_cap, scanned, counts)
}

fn write_checkpoint(
    path: &PathBuf,
    opts: &CensusOptions,
    cursor: usize,
    scanned: u64,
    counts: &StateCounts,
) -> Result<()> {
    let mut list: Vec<StateCount> = counts.iter().map(|(k, v)| StateCount { state: *k, count: *v }).collect();
    list.sort_by_key(|s| s.state);
    let cp = Checkpoint { n: opts.n, trace_cap: opts.trace_cap, cursor, matrices_scanned: scanned, counts: list };
    let text = serde_json::to_string(&cp).map_err(|e| Error::Internal(e.to_string()))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Error::OutOfRange(format!("checkpoint: {e}")))
}

/// Census counts keyed by `(|trace|, label)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: i64,
    pub trace_cap: Option<i64>,
    pub matrices_scanned: u64,
    pub counts: BTreeMap<(i64, Vec<i64>), u64>,
}

#[derive(Serialize)]
struct BucketRow {
    period: String,
    trace: i64,
    count: u64,
    #[serde(rename = "N")]
    n: i64,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    #[serde(rename = "N")]
    n: i64,
    trace_cap: Option<i64>,
    matrices_scanned: u64,
    buckets: Vec<BucketRow>,
    classes: &'a [(String, i64, u64)],
}

impl CensusReport {
    fn from_states(n: i64, trace_cap: Option<i64>, scanned: u64, states: StateCounts) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for ([a, c, b, d], k) in states {
            let r = IntMatrix2::new(a, c, b, d);
            let label = census_label(&r)?.into_word();
            *counts.entry((r.trace(), label)).or_insert(0) += k;
        }
        Ok(Self { n, trace_cap, matrices_scanned: scanned, counts })
    }

    /// `#_N(P)` for a bucket label, zero when absent.
    pub fn count(&self, label: &[i64]) -> u64 {
        self.counts
            .iter()
            .filter(|((_, l), _)| l.as_slice() == label)
            .map(|(_, v)| *v)
            .sum()
    }

    /// Buckets merged by cyclic class up to rotation and reversal: `(class, |trace|, count)`.
    pub fn classes(&self) -> Vec<(String, i64, u64)> {
        let mut merged: BTreeMap<(i64, Vec<i64>), u64> = BTreeMap::new();
        for ((t, label), v) in &self.counts {
            *merged.entry((*t, canonical_word(label))).or_insert(0) += v;
        }
        merged.into_iter().map(|((t, w), v)| (format_tuple(&w), t, v)).collect()
    }

    fn rows(&self) -> Vec<BucketRow> {
        self.counts
            .iter()
            .map(|((t, label), v)| BucketRow { period: format_tuple(label), trace: *t, count: *v, n: self.n })
            .collect()
    }

    /// Columns `period, trace, count, N`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows() {
            w.serialize(row).map_err(|e| Error::Internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        let classes = self.classes();
        let doc = ReportJson {
            n: self.n,
            trace_cap: self.trace_cap,
            matrices_scanned: self.matrices_scanned,
            buckets: self.rows(),
            classes: &classes,
        };
        serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_bruteforce() {
        for n in 1..=3 {
            let mut seen = std::collections::HashSet::new();
            let count = enumerate_sl2(n, |m| {
                assert_eq!(m.det(), 1);
                assert!(m.max_abs_entry() <= n);
                assert!(seen.insert(m.clone()));
            });
            assert_eq!(count, enumerate_sl2_bruteforce(n), "N = {n}");
        }
    }

    #[test]
    fn t_range_bounds() {
        assert_eq!(t_range(1, 2, 5), Some((-3, 2)));
        assert_eq!(t_range(1, -2, 5), Some((-2, 3)));
        assert_eq!(t_range(7, 0, 5), None);
        assert_eq!(t_range(3, 0, 5), Some((i64::MIN, i64::MAX)));
        assert_eq!(t_range(0, 7, 3), Some((0, 0)));
    }

    #[test]
    fn labels() {
        let m = |r| IntMatrix2::<i64>::from_i64(r);
        let w = |r| census_label_display(&m(r)).unwrap().into_word();
        assert_eq!(w([[0, 1], [-1, 3]]), vec![1, 1]);
        assert_eq!(w([[1, 2], [1, 3]]), vec![2, 1]);
        assert_eq!(w([[2, 3], [3, 5]]), vec![1, 1, 1, 1]);
        assert_eq!(trace_of_label(&[2i64, 1]).unwrap(), 4);
        assert_eq!(trace_of_label(&[1i64, 1, 1, 2]).unwrap(), 10);
        assert!(trace_of_label(&[1i64, 1, 1]).is_err());
    }

    #[test]
    fn small_census_is_worker_independent() {
        let mut o = CensusOptions::new(12);
        o.workers = 1;
        let one = census(&o).unwrap();
        o.workers = 3;
        o.checkpoint_every = 5;
        let three = census(&o).unwrap();
        assert_eq!(one, three);
        let total: u64 = one.counts.values().sum();
        assert_eq!(total, one.matrices_scanned);
    }

    #[test]
    fn checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let mut o = CensusOptions::new(9);
        o.trace_cap = Some(6);
        let plain = census(&o).unwrap();
        // partial checkpoint covering the first eight strata
        let (states, scanned) = (-9..-1)
            .map(|x| count_stratum(&o, x).unwrap())
            .fold((StateCounts::new(), 0), |a, b| (merge(a.0, b.0), a.1 + b.1));
        write_checkpoint(&path, &o, 8, scanned, &states).unwrap();
        o.checkpoint = Some(path.clone());
        o.checkpoint_every = 4;
        assert_eq!(census(&o).unwrap(), plain);
        let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(cp.cursor, 19);
        let mut other = o.clone();
        other.n = 10;
        assert!(census(&other).is_err());
    }

    #[test]
    fn exports() {
        let mut o = CensusOptions::new(6);
        o.trace_cap = Some(4);
        let r = census(&o).unwrap();
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("period,trace,count,N\n"));
        assert!(csv.contains("\"(1,1)\",3,"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(json["N"], 6);
        assert!(json["buckets"].as_array().unwrap().len() >= 3);
    }
}
