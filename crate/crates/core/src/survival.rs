//! Kaplan–Meier product-limit estimator and the two-sample log-rank statistic.
//!
//! The log-rank statistic is the chi-square form `(O - E)^2 / V` with the
//! hypergeometric variance, pooled over the distinct event times of both
//! samples. Samples may share observations; they are treated as two multisets.

use alloc::vec;
use alloc::vec::Vec;

use crate::data::SurvivalObs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SurvivalError {
    #[error("empty sample")]
    EmptySample,
    #[error("survival time must be finite and non-negative")]
    InvalidTime,
}

/// Step function of a Kaplan–Meier estimate. Only times with at least one
/// event create a step.
#[derive(Debug, Clone, PartialEq)]
pub struct KmCurve {
    pub times: Vec<f64>,
    /// `S(t)` just after each step time.
    pub survival: Vec<f64>,
    pub at_risk: Vec<usize>,
    pub events: Vec<usize>,
}

impl KmCurve {
    /// `S(t)`: product over event times `<= t`.
    pub fn at(&self, t: f64) -> f64 {
        let steps = self.times.partition_point(|&s| s <= t);
        if steps == 0 {
            1.0
        } else {
            self.survival[steps - 1]
        }
    }
}

fn check(obs: &[SurvivalObs]) -> Result<(), SurvivalError> {
    if obs.is_empty() {
        return Err(SurvivalError::EmptySample);
    }
    if obs.iter().any(|o| !(o.time.is_finite() && o.time >= 0.0)) {
        return Err(SurvivalError::InvalidTime);
    }
    Ok(())
}

pub fn km_estimate(obs: &[SurvivalObs]) -> Result<KmCurve, SurvivalError> {
    check(obs)?;
    let grid = TimeGrid::new(obs);
    let mut counts = TimeCounts::new(grid.len());
    for (i, o) in obs.iter().enumerate() {
        counts.add(grid.rank(i), o.event);
    }
    let mut curve = KmCurve {
        times: Vec::new(),
        survival: Vec::new(),
        at_risk: Vec::new(),
        events: Vec::new(),
    };
    let mut at_risk = obs.len();
    let mut s = 1.0;
    for k in 0..grid.len() {
        let d = counts.events[k] as usize;
        if d > 0 {
            s *= 1.0 - d as f64 / at_risk as f64;
            curve.times.push(grid.times[k]);
            curve.survival.push(s);
            curve.at_risk.push(at_risk);
            curve.events.push(d);
        }
        // censored at t leave after the events at t
        at_risk -= counts.total[k] as usize;
    }
    Ok(curve)
}

/// Log-rank chi-square statistic between two samples. Zero when the pooled
/// sample has no events or no variance.
pub fn log_rank(a: &[SurvivalObs], b: &[SurvivalObs]) -> Result<f64, SurvivalError> {
    check(a)?;
    check(b)?;
    let pooled: Vec<SurvivalObs> = a.iter().chain(b).copied().collect();
    let grid = TimeGrid::new(&pooled);
    let mut ca = TimeCounts::new(grid.len());
    let mut cb = TimeCounts::new(grid.len());
    for (i, o) in pooled.iter().enumerate() {
        if i < a.len() {
            ca.add(grid.rank(i), o.event);
        } else {
            cb.add(grid.rank(i), o.event);
        }
    }
    Ok(log_rank_counts(&ca, &cb))
}

/// Distinct observation times with each observation's position among them.
#[derive(Debug, Clone)]
pub struct TimeGrid {
    times: Vec<f64>,
    ranks: Vec<u32>,
}

impl TimeGrid {
    pub fn new(obs: &[SurvivalObs]) -> Self {
        let mut times: Vec<f64> = obs.iter().map(|o| o.time).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let ranks = obs
            .iter()
            .map(|o| times.partition_point(|&t| t < o.time) as u32)
            .collect();
        TimeGrid { times, ranks }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    #[inline]
    pub fn rank(&self, obs: usize) -> usize {
        self.ranks[obs] as usize
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }
}

/// Per-time event and observation counts of one sample on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeCounts {
    pub events: Vec<u32>,
    pub total: Vec<u32>,
}

impl TimeCounts {
    pub fn new(len: usize) -> Self {
        TimeCounts {
            events: vec![0; len],
            total: vec![0; len],
        }
    }

    #[inline]
    pub fn add(&mut self, rank: usize, event: bool) {
        self.total[rank] += 1;
        self.events[rank] += event as u32;
    }

    pub fn clear(&mut self) {
        self.events.iter_mut().for_each(|x| *x = 0);
        self.total.iter_mut().for_each(|x| *x = 0);
    }
}

/// Read access to per-time counts, so complements need not be materialized.
pub trait Counts {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn events(&self, k: usize) -> u32;
    fn total(&self, k: usize) -> u32;
}

impl Counts for TimeCounts {
    fn len(&self) -> usize {
        self.total.len()
    }
    #[inline]
    fn events(&self, k: usize) -> u32 {
        self.events[k]
    }
    #[inline]
    fn total(&self, k: usize) -> u32 {
        self.total[k]
    }
}

/// `whole - part`, element-wise.
pub struct Difference<'a> {
    pub whole: &'a TimeCounts,
    pub part: &'a TimeCounts,
}

impl Counts for Difference<'_> {
    fn len(&self) -> usize {
        self.whole.total.len()
    }
    #[inline]
    fn events(&self, k: usize) -> u32 {
        self.whole.events[k] - self.part.events[k]
    }
    #[inline]
    fn total(&self, k: usize) -> u32 {
        self.whole.total[k] - self.part.total[k]
    }
}

impl<T: Counts + ?Sized> Counts for &T {
    fn len(&self) -> usize {
        (**self).len()
    }
    fn events(&self, k: usize) -> u32 {
        (**self).events(k)
    }
    fn total(&self, k: usize) -> u32 {
        (**self).total(k)
    }
}

/// Log-rank statistic from counts on a shared grid.
pub fn log_rank_counts<A: Counts, B: Counts>(a: A, b: B) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut risk_a = 0u64;
    let mut risk_b = 0u64;
    let mut observed = 0.0;
    let mut expected = 0.0;
    let mut variance = 0.0;
    // at-risk counts are suffix sums, so walk the grid backwards
    for k in (0..a.len()).rev() {
        risk_a += a.total(k) as u64;
        risk_b += b.total(k) as u64;
        let d_a = a.events(k) as f64;
        let d = d_a + b.events(k) as f64;
        if d == 0.0 {
            continue;
        }
        let n_a = risk_a as f64;
        let n_b = risk_b as f64;
        let n = n_a + n_b;
        observed += d_a;
        expected += d * n_a / n;
        if n > 1.0 {
            variance += n_a * n_b * d * (n - d) / (n * n * (n - 1.0));
        }
    }
    if variance > 0.0 {
        let diff = observed - expected;
        diff * diff / variance
    } else {
        0.0
    }
}
