use serde::Serialize;

use super::census::{census, trace_of_label, CensusOptions};
use crate::error::{Error, Result};
use crate::numeric::gk_probability;

/// One line of the frequency experiment for a pair of bucket labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    #[serde(rename = "N")]
    pub n: i64,
    pub count1: u64,
    pub count2: u64,
    /// `#_N(P1) / #_N(P2)`, absent while `#_N(P2) = 0`.
    pub empirical: Option<f64>,
    /// `GK(P1') / GK(P2')` with the last entry of each label dropped.
    pub gk_ratio: f64,
}

/// Empirical bucket ratio against the Gauss–Kuzmin ratio for each bound in `ns`.
pub fn ratio_experiment(p1: &[i64], p2: &[i64], ns: &[i64], workers: usize) -> Result<Vec<RatioRow>> {
    let t1 = trace_of_label(p1)?;
    let t2 = trace_of_label(p2)?;
    let gk = |p: &[i64]| gk_probability::<i64, f64>(&p[..p.len() - 1]);
    let gk_ratio = gk(p1)? / gk(p2)?;
    if ns.is_empty() {
        return Err(Error::OutOfRange("no bounds given".into()));
    }
    ns.iter()
        .map(|&n| {
            let mut opts = CensusOptions::new(n);
            opts.trace_cap = Some(t1.max(t2));
            opts.workers = workers;
            let report = census(&opts)?;
            let (count1, count2) = (report.count(p1), report.count(p2));
            let empirical = (count2 > 0).then(|| count1 as f64 / count2 as f64);
            Ok(RatioRow { n, count1, count2, empirical, gk_ratio })
        })
        .collect()
}
