//! Attribute penalties, coverage rewards and redundancy scoring.
//!
//! Every accepted contrast set increments a usage counter for each distinct
//! attribute it contains. The penalty of an attribute is its share of all
//! usages, and the penalty of a candidate premise is the sum over its distinct
//! attributes. The quality multiplier `(1 - sπ)·φ` is lifted back towards 1 by
//! the reward `φ` when the candidate mostly covers positives that no earlier
//! set of the current minimum-support level covered.

use alloc::vec;
use alloc::vec::Vec;

use crate::contrast::ContrastSet;
use crate::coverage::CoverageSet;
use crate::data::DataSet;

/// Lower bound of the quality multiplier when `sπ >= 1`.
pub const MIN_MULTIPLIER: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct PenaltyState {
    usage: Vec<u32>,
    total: u32,
    strength: f64,
    saturation: f64,
    fresh: CoverageSet,
}

impl PenaltyState {
    /// `strength` is `s >= 0`; `saturation` is the reward boundary `b` in
    /// `(0, 1]` (with `b = 1` the reward never applies). `positives` seeds the
    /// set of not-yet-covered positives.
    pub fn new(attributes: usize, strength: f64, saturation: f64, positives: &CoverageSet) -> Self {
        PenaltyState {
            usage: vec![0; attributes],
            total: 0,
            strength,
            saturation,
            fresh: positives.clone(),
        }
    }

    pub fn reset(&mut self, positives: &CoverageSet) {
        self.usage.iter_mut().for_each(|u| *u = 0);
        self.total = 0;
        self.fresh = positives.clone();
    }

    /// Books an accepted contrast set: one usage per distinct attribute, and
    /// its covered examples leave the fresh set.
    pub fn record(&mut self, cs: &ContrastSet, covered: &CoverageSet) {
        for a in cs.attributes() {
            self.usage[a] += 1;
            self.total += 1;
        }
        self.fresh.and_not_assign(covered);
    }

    pub fn usage(&self) -> &[u32] {
        &self.usage
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn saturation(&self) -> f64 {
        self.saturation
    }

    /// Positives not covered by any set recorded since the last reset.
    pub fn fresh(&self) -> &CoverageSet {
        &self.fresh
    }

    pub fn attribute_penalty(&self, attribute: usize) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.usage[attribute] as f64 / self.total as f64
        }
    }

    /// Sum of attribute penalties over the distinct attributes given.
    pub fn premise_penalty<I: IntoIterator<Item = usize>>(&self, attributes: I) -> f64 {
        let mut seen: Vec<usize> = attributes.into_iter().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter().map(|a| self.attribute_penalty(a)).sum()
    }

    /// Combined multiplier `(1 - sπ)·φ` for a candidate with premise penalty
    /// `penalty` covering `p` positives of which `p_fresh` are fresh.
    pub fn multiplier(&self, penalty: f64, p_fresh: usize, p: usize) -> f64 {
        if self.strength == 0.0 || penalty == 0.0 {
            return 1.0;
        }
        let phi = reward(p_fresh, p, self.strength, penalty, self.saturation);
        combined_multiplier(self.strength, penalty, phi)
    }
}

fn penalty_factor(s: f64, penalty: f64) -> f64 {
    (1.0 - s * penalty).max(MIN_MULTIPLIER)
}

fn combined_multiplier(s: f64, penalty: f64, phi: f64) -> f64 {
    (penalty_factor(s, penalty) * phi).clamp(MIN_MULTIPLIER, 1.0)
}

/// Reward `φ`: 1 up to `x = p_new/p = b`, then linear up to `1/(1 - sπ)` at
/// `x = 1`.
pub fn reward(p_new: usize, p: usize, s: f64, penalty: f64, b: f64) -> f64 {
    if p == 0 {
        return 1.0;
    }
    let x = p_new as f64 / p as f64;
    if x <= b {
        return 1.0;
    }
    let full = 1.0 / penalty_factor(s, penalty);
    1.0 + (x - b) / (1.0 - b) * (full - 1.0)
}

/// `q' = q·m` for `q >= 0` and `q / m` for `q < 0`, with `m = (1 - sπ)·φ`,
/// so that the modified quality never exceeds `q`.
pub fn modified_quality(q: f64, s: f64, penalty: f64, phi: f64) -> f64 {
    apply_multiplier(q, combined_multiplier(s, penalty, phi))
}

#[inline]
pub fn apply_multiplier(q: f64, m: f64) -> f64 {
    if m == 1.0 {
        q
    } else if q >= 0.0 {
        q * m
    } else {
        q / m
    }
}

/// Jaccard index of two sorted, deduplicated index lists.
fn jaccard_sorted(a: &[usize], b: &[usize]) -> f64 {
    let (mut i, mut j, mut common) = (0, 0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.len() + b.len() - common;
    if union == 0 {
        1.0
    } else {
        common as f64 / union as f64
    }
}

fn jaccard_sets(a: &CoverageSet, b: &CoverageSet) -> f64 {
    let union = a.union_count(b);
    if union == 0 {
        1.0
    } else {
        a.intersection_count(b) as f64 / union as f64
    }
}

/// Precomputed pieces of a contrast set needed for similarity.
#[derive(Clone, Debug)]
pub struct Profile {
    pub attributes: Vec<usize>,
    pub covered_positives: CoverageSet,
}

impl Profile {
    pub fn new(cs: &ContrastSet, ds: &DataSet, positives: &CoverageSet) -> Self {
        Profile {
            attributes: cs.attributes(),
            covered_positives: cs.cover(positives, ds),
        }
    }

    pub fn similarity(&self, other: &Profile) -> f64 {
        jaccard_sorted(&self.attributes, &other.attributes)
            * jaccard_sets(&self.covered_positives, &other.covered_positives)
    }
}

/// Attribute Jaccard times positive-coverage Jaccard.
pub fn similarity(a: &ContrastSet, b: &ContrastSet, ds: &DataSet, positives: &CoverageSet) -> f64 {
    Profile::new(a, ds, positives).similarity(&Profile::new(b, ds, positives))
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct RedundancyRecord {
    pub value: f64,
    /// Index of the most similar predecessor, `None` for the first set.
    pub predecessor: Option<usize>,
}

/// Similarity to the most similar of `predecessors`; the first maximum wins.
pub fn redundancy(candidate: &Profile, predecessors: &[Profile]) -> RedundancyRecord {
    let mut best = RedundancyRecord::default();
    for (i, p) in predecessors.iter().enumerate() {
        let s = candidate.similarity(p);
        if best.predecessor.is_none() || s > best.value {
            best = RedundancyRecord {
                value: s,
                predecessor: Some(i),
            };
        }
    }
    best
}

/// Redundancy of every set against the ones before it.
pub fn redundancies(profiles: &[Profile]) -> Vec<RedundancyRecord> {
    (0..profiles.len())
        .map(|k| redundancy(&profiles[k], &profiles[..k]))
        .collect()
}
