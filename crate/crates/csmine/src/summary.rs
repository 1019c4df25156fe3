//! Redundancy filtering and the summary metrics reported per run.

use serde::Serialize;

use csmine_core::{AnnotatedContrastSet, ContrastSet, CoverageSet, DataSet, Mode};

/// Keeps sets whose redundancy is strictly below `threshold`, in order.
pub fn filter_redundancy(sets: &[AnnotatedContrastSet], threshold: f64) -> Vec<AnnotatedContrastSet> {
    sets.iter().filter(|s| s.redundancy.value < threshold).cloned().collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Metrics {
    pub count: usize,
    /// Mean of `p / P` over sets, in percent.
    pub mean_support: f64,
    /// Mean of `p / (p + n)` over sets, in percent.
    pub mean_precision: f64,
    /// Examples covered by none of their own group's sets.
    pub zero_cov: usize,
    /// Examples covered by exactly one of their own group's sets.
    pub one_cov: usize,
}

/// Metrics for `sets` evaluated on `ds`. Counts are recomputed; negatives
/// follow `mode`. Set groups are indices into `ds.groups()`.
pub fn summarize(sets: &[ContrastSet], ds: &DataSet, mode: Mode) -> Metrics {
    let all = CoverageSet::full(ds.len());
    let sizes = ds.group_sizes();
    let members: Vec<CoverageSet> = (0..ds.groups().len()).map(|g| ds.group_members(g)).collect();
    let mut hits = vec![0usize; ds.len()];
    let (mut support, mut precision) = (0.0, 0.0);

    for cs in sets {
        let covered = cs.cover(&all, ds);
        let positives = &members[cs.group];
        let negatives = match mode {
            Mode::OneVsAll => all.and_not(positives),
            Mode::OneVsOne { negative } => members[negative].clone(),
        };
        let p = covered.intersection_count(positives);
        let n = covered.intersection_count(&negatives);
        if sizes[cs.group] > 0 {
            support += p as f64 / sizes[cs.group] as f64;
        }
        if p + n > 0 {
            precision += p as f64 / (p + n) as f64;
        }
        for e in covered.and(positives).iter() {
            hits[e] += 1;
        }
    }

    let k = sets.len();
    let mean = |x: f64| if k == 0 { 0.0 } else { 100.0 * x / k as f64 };
    Metrics {
        count: k,
        mean_support: mean(support),
        mean_precision: mean(precision),
        zero_cov: hits.iter().filter(|&&h| h == 0).count(),
        one_cov: hits.iter().filter(|&&h| h == 1).count(),
    }
}
