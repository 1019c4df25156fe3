//! Growing, pruning and the multi-pass separate-and-conquer driver.
//!
//! For every minimum positive support level the driver resets the attribute
//! penalties and runs up to `max_passes` covering passes. A pass repeatedly
//! grows a contrast set on the positives it has not covered yet, prunes it,
//! and books it; the pass ends when growing fails. A level ends early when a
//! whole pass produced nothing that had not been found before.
//!
//! Candidate conditions are scored in one sweep per attribute: numeric
//! attributes are walked in value order so that `< v` and `>= v` coverages
//! are a prefix and its complement, nominal attributes are bucketed by value.

use alloc::vec;
use alloc::vec::Vec;

use crate::contrast::{Condition, ConfusionMatrix, ContrastSet, Test};
use crate::coverage::CoverageSet;
use crate::data::{AttributeKind, Column, DataSet};
use crate::diversity::{self, PenaltyState, Profile, RedundancyRecord};
use crate::quality::{self, correlation_value};
use crate::survival::{log_rank_counts, Difference, TimeCounts, TimeGrid};

pub use crate::quality::Measure;

/// Which examples act as negatives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// All other groups.
    #[default]
    OneVsAll,
    /// A single group; examples of the remaining groups are ignored.
    OneVsOne { negative: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningParams {
    /// Minimum positive support levels, strictly descending.
    pub minsupps: Vec<f64>,
    /// Minimum share of all positives a set must cover among those still
    /// uncovered in its pass.
    pub minsupp_new: f64,
    /// Maximum `(n·P)/(p·N)`.
    pub max_neg2pos: f64,
    pub max_passes: usize,
    /// Penalty strength `s`; 0 disables penalties.
    pub penalty_strength: f64,
    /// Reward boundary `b`; 1 disables rewards.
    pub reward_saturation: f64,
    pub mode: Mode,
    /// Overrides the task's default measure.
    pub measure: Option<Measure>,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            minsupps: vec![0.8, 0.5, 0.2, 0.1],
            minsupp_new: 0.1,
            max_neg2pos: 0.5,
            max_passes: 5,
            penalty_strength: 0.5,
            reward_saturation: 0.2,
            mode: Mode::OneVsAll,
            measure: None,
        }
    }
}

fn in_unit(x: f64) -> bool {
    x > 0.0 && x <= 1.0
}

impl MiningParams {
    pub fn validate(&self) -> Result<(), InductionError> {
        if self.minsupps.is_empty() || !self.minsupps.iter().all(|&m| in_unit(m)) {
            return Err(InductionError::InvalidParams("minsupps must be non-empty and in (0, 1]"));
        }
        if self.minsupps.windows(2).any(|w| w[0] <= w[1]) {
            return Err(InductionError::InvalidParams("minsupps must be strictly descending"));
        }
        if !in_unit(self.minsupp_new) {
            return Err(InductionError::InvalidParams("minsupp_new must be in (0, 1]"));
        }
        if !(self.max_neg2pos > 0.0 && self.max_neg2pos.is_finite()) {
            return Err(InductionError::InvalidParams("max_neg2pos must be positive"));
        }
        if self.max_passes == 0 {
            return Err(InductionError::InvalidParams("max_passes must be at least 1"));
        }
        if !(self.penalty_strength >= 0.0 && self.penalty_strength.is_finite()) {
            return Err(InductionError::InvalidParams("penalty_strength must be >= 0"));
        }
        if !in_unit(self.reward_saturation) {
            return Err(InductionError::InvalidParams("reward_saturation must be in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InductionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("group index {0} is not in the data set")]
    UnknownGroup(usize),
    #[error("mining needs at least two groups")]
    TooFewGroups,
    #[error("group of interest has no examples")]
    EmptyPositives,
    #[error("no negative examples")]
    EmptyNegatives,
    #[error("one-vs-one negative group equals the group of interest")]
    SameGroup,
    #[error("measure {0:?} is not supported by the data set's task")]
    UnsupportedMeasure(Measure),
}

/// A contrast set as emitted by the driver.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnotatedContrastSet {
    /// Canonical form.
    pub set: ContrastSet,
    /// 1-based covering pass within its level.
    pub pass: usize,
    /// Minimum positive support level it was mined at.
    pub minsupp: f64,
    pub p: usize,
    pub n: usize,
    /// Covered positives that were uncovered in the pass when accepted.
    pub p_new: usize,
    /// Unpenalized quality.
    pub quality: f64,
    pub redundancy: RedundancyRecord,
}

/// Every acceptance, duplicates included, in generation order.
#[derive(Clone, Debug, PartialEq)]
pub struct InductionEvent {
    pub set: ContrastSet,
    pub minsupp: f64,
    pub pass: usize,
    pub p: usize,
    pub n: usize,
    pub p_new: usize,
    pub duplicate: bool,
    /// Attribute usage counts after booking this set.
    pub usage_after: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupResult {
    pub group: usize,
    pub total_p: usize,
    pub total_n: usize,
    pub sets: Vec<AnnotatedContrastSet>,
    pub events: Vec<InductionEvent>,
}

enum Scorer<'a> {
    Correlation,
    Regression {
        labels: &'a [f64],
        positive_mean: f64,
    },
    Survival {
        grid: TimeGrid,
        events: Vec<bool>,
        positives: TimeCounts,
    },
}

/// Everything fixed for one group of interest.
pub struct Context<'a> {
    ds: &'a DataSet,
    group: usize,
    measure: Measure,
    positives: CoverageSet,
    negatives: CoverageSet,
    universe: CoverageSet,
    total_p: usize,
    total_n: usize,
    scorer: Scorer<'a>,
    /// Per numeric attribute: non-missing universe examples by ascending value.
    sorted: Vec<Vec<u32>>,
}

impl<'a> Context<'a> {
    pub fn new(ds: &'a DataSet, group: usize, params: &MiningParams) -> Result<Self, InductionError> {
        if group >= ds.groups().len() {
            return Err(InductionError::UnknownGroup(group));
        }
        if ds.groups().len() < 2 {
            return Err(InductionError::TooFewGroups);
        }
        let measure = params.measure.unwrap_or(Measure::for_task(ds.task()));
        if !measure.supported_by(ds) {
            return Err(InductionError::UnsupportedMeasure(measure));
        }
        let positives = ds.group_members(group);
        let negatives = match params.mode {
            Mode::OneVsAll => CoverageSet::full(ds.len()).and_not(&positives),
            Mode::OneVsOne { negative } if negative == group => return Err(InductionError::SameGroup),
            Mode::OneVsOne { negative } if negative >= ds.groups().len() => {
                return Err(InductionError::UnknownGroup(negative))
            }
            Mode::OneVsOne { negative } => ds.group_members(negative),
        };
        let total_p = positives.count();
        let total_n = negatives.count();
        if total_p == 0 {
            return Err(InductionError::EmptyPositives);
        }
        if total_n == 0 {
            return Err(InductionError::EmptyNegatives);
        }
        let universe = positives.or(&negatives);

        let scorer = match measure {
            Measure::Correlation => Scorer::Correlation,
            Measure::RegressionConsistency => {
                let labels = ds.labels().expect("checked by supported_by");
                let sum: f64 = positives.iter().map(|i| labels[i]).sum();
                Scorer::Regression {
                    labels,
                    positive_mean: sum / total_p as f64,
                }
            }
            Measure::SurvivalConsistency => {
                let obs = ds.survival().expect("checked by supported_by");
                let grid = TimeGrid::new(obs);
                let mut pos = TimeCounts::new(grid.len());
                for i in &positives {
                    pos.add(grid.rank(i), obs[i].event);
                }
                Scorer::Survival {
                    events: obs.iter().map(|o| o.event).collect(),
                    grid,
                    positives: pos,
                }
            }
        };

        let sorted = ds
            .attributes()
            .iter()
            .enumerate()
            .map(|(a, attr)| match (&attr.kind, ds.column(a)) {
                (AttributeKind::Numeric, Column::Numeric(values)) => {
                    let mut idx: Vec<u32> = universe
                        .iter()
                        .filter(|&i| !values[i].is_nan())
                        .map(|i| i as u32)
                        .collect();
                    idx.sort_by(|&x, &y| values[x as usize].total_cmp(&values[y as usize]));
                    idx
                }
                _ => Vec::new(),
            })
            .collect();

        Ok(Context {
            ds,
            group,
            measure,
            positives,
            negatives,
            universe,
            total_p,
            total_n,
            scorer,
            sorted,
        })
    }

    pub fn dataset(&self) -> &DataSet {
        self.ds
    }

    pub fn group(&self) -> usize {
        self.group
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn positives(&self) -> &CoverageSet {
        &self.positives
    }

    pub fn negatives(&self) -> &CoverageSet {
        &self.negatives
    }

    /// Positives and negatives; the examples the search sees.
    pub fn universe(&self) -> &CoverageSet {
        &self.universe
    }

    pub fn total_p(&self) -> usize {
        self.total_p
    }

    pub fn total_n(&self) -> usize {
        self.total_n
    }

    pub fn cover(&self, cs: &ContrastSet) -> CoverageSet {
        cs.cover(&self.universe, self.ds)
    }

    pub fn confusion(&self, covered: &CoverageSet, uncovered: &CoverageSet) -> ConfusionMatrix {
        ConfusionMatrix::from_coverage(covered, &self.positives, &self.negatives, uncovered)
    }

    /// Unpenalized quality of a coverage.
    pub fn quality(&self, covered: &CoverageSet) -> f64 {
        let acc = self.accumulate(covered.iter(), None, None);
        self.score(&acc, None)
    }

    fn new_acc(&self) -> Acc {
        Acc {
            p: 0,
            n: 0,
            p_new: 0,
            p_fresh: 0,
            label_sum: 0.0,
            times: match &self.scorer {
                Scorer::Survival { grid, .. } => Some(TimeCounts::new(grid.len())),
                _ => None,
            },
        }
    }

    #[inline]
    fn add(&self, acc: &mut Acc, i: usize, uncovered: Option<&CoverageSet>, fresh: Option<&CoverageSet>) {
        if self.positives.contains(i) {
            acc.p += 1;
            if uncovered.is_some_and(|u| u.contains(i)) {
                acc.p_new += 1;
            }
            if fresh.is_some_and(|f| f.contains(i)) {
                acc.p_fresh += 1;
            }
        } else {
            acc.n += 1;
        }
        match &self.scorer {
            Scorer::Correlation => {}
            Scorer::Regression { labels, .. } => acc.label_sum += labels[i],
            Scorer::Survival { grid, events, .. } => {
                if let Some(t) = acc.times.as_mut() {
                    t.add(grid.rank(i), events[i]);
                }
            }
        }
    }

    fn accumulate<I: Iterator<Item = usize>>(
        &self,
        examples: I,
        uncovered: Option<&CoverageSet>,
        fresh: Option<&CoverageSet>,
    ) -> Acc {
        let mut acc = self.new_acc();
        for i in examples {
            self.add(&mut acc, i, uncovered, fresh);
        }
        acc
    }

    /// Quality of `acc`, or of `whole - acc` when `whole` is given.
    fn score(&self, acc: &Acc, whole: Option<&Acc>) -> f64 {
        let (p, n) = match whole {
            Some(w) => (w.p - acc.p, w.n - acc.n),
            None => (acc.p, acc.n),
        };
        match &self.scorer {
            Scorer::Correlation => correlation_value(p as usize, n as usize, self.total_p, self.total_n),
            Scorer::Regression { positive_mean, .. } => {
                let sum = match whole {
                    Some(w) => w.label_sum - acc.label_sum,
                    None => acc.label_sum,
                };
                -libm::fabs(sum / (p + n) as f64 - positive_mean)
            }
            Scorer::Survival { positives, .. } => {
                let part = acc.times.as_ref().expect("survival accumulator");
                let stat = match whole {
                    Some(w) => log_rank_counts(
                        Difference {
                            whole: w.times.as_ref().expect("survival accumulator"),
                            part,
                        },
                        positives,
                    ),
                    None => log_rank_counts(part, positives),
                };
                -stat
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Acc {
    p: u32,
    n: u32,
    p_new: u32,
    p_fresh: u32,
    label_sum: f64,
    times: Option<TimeCounts>,
}

impl Acc {
    fn covered(&self) -> u32 {
        self.p + self.n
    }
}

/// Counts of one candidate; `part` alone or `whole - part`.
struct Candidate<'c> {
    condition: Condition,
    part: &'c Acc,
    whole: Option<&'c Acc>,
}

impl Candidate<'_> {
    fn get(&self, f: impl Fn(&Acc) -> u32) -> u32 {
        match self.whole {
            Some(w) => f(w) - f(self.part),
            None => f(self.part),
        }
    }
    fn p(&self) -> u32 {
        self.get(|a| a.p)
    }
    fn covered(&self) -> u32 {
        self.get(Acc::covered)
    }
    fn p_new(&self) -> u32 {
        self.get(|a| a.p_new)
    }
    fn p_fresh(&self) -> u32 {
        self.get(|a| a.p_fresh)
    }
}

/// Walks every candidate condition on `covered`, in tie-break order:
/// attributes in declaration order; numeric splits ascending with `<` before
/// `>=`; nominal values ascending with `=` before `!=`.
fn for_each_candidate<F>(
    ctx: &Context<'_>,
    covered: &CoverageSet,
    uncovered: Option<&CoverageSet>,
    fresh: Option<&CoverageSet>,
    mut visit: F,
) where
    F: FnMut(&Context<'_>, Candidate<'_>),
{
    let ds = ctx.ds;
    for (a, attr) in ds.attributes().iter().enumerate() {
        match (&attr.kind, ds.column(a)) {
            (AttributeKind::Numeric, Column::Numeric(values)) => {
                let order: Vec<usize> = ctx.sorted[a]
                    .iter()
                    .map(|&i| i as usize)
                    .filter(|&i| covered.contains(i))
                    .collect();
                if order.len() < 2 {
                    continue;
                }
                let whole = ctx.accumulate(order.iter().copied(), uncovered, fresh);
                let mut prefix = ctx.new_acc();
                for w in order.windows(2) {
                    ctx.add(&mut prefix, w[0], uncovered, fresh);
                    let (lo, hi) = (values[w[0]], values[w[1]]);
                    if lo < hi {
                        let split = (lo + hi) / 2.0;
                        visit(
                            ctx,
                            Candidate {
                                condition: Condition::new(a, Test::LessThan(split)),
                                part: &prefix,
                                whole: None,
                            },
                        );
                        visit(
                            ctx,
                            Candidate {
                                condition: Condition::new(a, Test::AtLeast(split)),
                                part: &prefix,
                                whole: Some(&whole),
                            },
                        );
                    }
                }
            }
            (AttributeKind::Nominal(labels), Column::Nominal(values)) => {
                let mut buckets: Vec<Acc> = (0..labels.len()).map(|_| ctx.new_acc()).collect();
                let mut whole = ctx.new_acc();
                for i in covered {
                    let v = values[i];
                    if (v as usize) < labels.len() {
                        ctx.add(&mut buckets[v as usize], i, uncovered, fresh);
                        ctx.add(&mut whole, i, uncovered, fresh);
                    }
                }
                for (k, bucket) in buckets.iter().enumerate() {
                    if bucket.covered() == 0 {
                        continue;
                    }
                    visit(
                        ctx,
                        Candidate {
                            condition: Condition::new(a, Test::Equals(k as u32)),
                            part: bucket,
                            whole: None,
                        },
                    );
                    visit(
                        ctx,
                        Candidate {
                            condition: Condition::new(a, Test::NotEquals(k as u32)),
                            part: bucket,
                            whole: Some(&whole),
                        },
                    );
                }
            }
            _ => unreachable!("column storage follows attribute kind"),
        }
    }
}

/// Candidate conditions on the covered examples: for numeric attributes a
/// split at each midpoint between consecutive distinct non-missing values
/// (`< v` and `>= v`), for nominal attributes `= v` and `!= v` for each value
/// that occurs.
pub fn possible_conditions(covered: &CoverageSet, ds: &DataSet) -> Vec<Condition> {
    let mut out = Vec::new();
    for (a, attr) in ds.attributes().iter().enumerate() {
        match &attr.kind {
            AttributeKind::Numeric => {
                let mut vals: Vec<f64> = covered
                    .iter()
                    .filter_map(|i| match ds.value(i, a) {
                        crate::data::Value::Numeric(x) => Some(x),
                        _ => None,
                    })
                    .collect();
                vals.sort_by(f64::total_cmp);
                vals.dedup();
                for w in vals.windows(2) {
                    let split = (w[0] + w[1]) / 2.0;
                    out.push(Condition::new(a, Test::LessThan(split)));
                    out.push(Condition::new(a, Test::AtLeast(split)));
                }
            }
            AttributeKind::Nominal(labels) => {
                for k in 0..labels.len() as u32 {
                    let seen = covered
                        .iter()
                        .any(|i| ds.value(i, a) == crate::data::Value::Nominal(k));
                    if seen {
                        out.push(Condition::new(a, Test::Equals(k)));
                        out.push(Condition::new(a, Test::NotEquals(k)));
                    }
                }
            }
        }
    }
    out
}

fn neg2pos_ok(ctx: &Context<'_>, p: usize, n: usize, max: f64) -> bool {
    if p == 0 {
        return false;
    }
    (n as f64 * ctx.total_p as f64) / (p as f64 * ctx.total_n as f64) <= max
}

/// Penalized quality of a full premise with coverage `covered`.
pub fn penalized(ctx: &Context<'_>, cs: &ContrastSet, covered: &CoverageSet, penalty: &PenaltyState) -> f64 {
    penalized_with(ctx, cs.attributes(), covered, penalty)
}

fn penalized_with<I: IntoIterator<Item = usize>>(
    ctx: &Context<'_>,
    attributes: I,
    covered: &CoverageSet,
    penalty: &PenaltyState,
) -> f64 {
    let acc = ctx.accumulate(covered.iter(), None, Some(penalty.fresh()));
    let q = ctx.score(&acc, None);
    let pi = penalty.premise_penalty(attributes);
    let m = penalty.multiplier(pi, acc.p_fresh as usize, acc.p as usize);
    diversity::apply_multiplier(q, m)
}

/// Grows a premise from empty by repeatedly adding the best condition that
/// keeps `p/P >= minsupp` and `p_new/P >= minsupp_new`. Returns the premise
/// and its coverage, or `None` when nothing could be added or the grown set
/// violates `max_neg2pos`.
pub fn grow(
    ctx: &Context<'_>,
    uncovered: &CoverageSet,
    minsupp: f64,
    params: &MiningParams,
    penalty: &PenaltyState,
) -> Option<(ContrastSet, CoverageSet)> {
    let mut cs = ContrastSet::new(ctx.group);
    let mut covered = ctx.universe.clone();
    let total_p = ctx.total_p as f64;

    loop {
        let current = covered.count() as u32;
        let base_attrs = cs.attributes();
        let base_penalty = penalty.premise_penalty(base_attrs.iter().copied());
        let mut best: Option<(Condition, f64, u32)> = None;

        for_each_candidate(ctx, &covered, Some(uncovered), Some(penalty.fresh()), |ctx, cand| {
            let size = cand.covered();
            if size == 0 || size >= current {
                return;
            }
            let p = cand.p();
            if (p as f64) / total_p < minsupp || (cand.p_new() as f64) / total_p < params.minsupp_new {
                return;
            }
            let q = ctx.score(cand.part, cand.whole);
            let attr = cand.condition.attribute;
            let pi = if base_attrs.binary_search(&attr).is_ok() {
                base_penalty
            } else {
                base_penalty + penalty.attribute_penalty(attr)
            };
            let m = penalty.multiplier(pi, cand.p_fresh() as usize, p as usize);
            let q = diversity::apply_multiplier(q, m);
            let better = match best {
                None => true,
                Some((_, bq, bsize)) => q > bq || (q == bq && size > bsize),
            };
            if better {
                best = Some((cand.condition, q, size));
            }
        });

        match best {
            Some((cond, _, _)) => {
                covered = cond.cover(&covered, ctx.ds);
                cs.push(cond);
            }
            None => break,
        }
    }

    if cs.is_empty() {
        return None;
    }
    let p = covered.intersection_count(&ctx.positives);
    let n = covered.intersection_count(&ctx.negatives);
    neg2pos_ok(ctx, p, n, params.max_neg2pos).then_some((cs, covered))
}

/// Removes conditions one at a time while some removal keeps `max_neg2pos`
/// and does not lower the penalized quality; the penalty is recomputed for
/// the reduced attribute set. Among qualifying removals the best one wins,
/// the later condition on ties. Stops at a single condition.
pub fn prune(ctx: &Context<'_>, mut cs: ContrastSet, params: &MiningParams, penalty: &PenaltyState) -> ContrastSet {
    let mut single: Vec<CoverageSet> = cs.conditions.iter().map(|c| c.cover(&ctx.universe, ctx.ds)).collect();
    while cs.len() > 1 {
        // suffix[i] covers conditions i.., so dropping i leaves prefix & suffix[i + 1]
        let mut suffix = vec![ctx.universe.clone(); cs.len() + 1];
        for i in (0..cs.len()).rev() {
            suffix[i] = suffix[i + 1].and(&single[i]);
        }
        let mut best_q = penalized(ctx, &cs, &suffix[0], penalty);
        let mut remove = None;
        let mut prefix = ctx.universe.clone();
        for i in 0..cs.len() {
            let cov = prefix.and(&suffix[i + 1]);
            prefix.and_assign(&single[i]);
            let p = cov.intersection_count(&ctx.positives);
            let n = cov.intersection_count(&ctx.negatives);
            if !neg2pos_ok(ctx, p, n, params.max_neg2pos) {
                continue;
            }
            let attrs = cs.conditions.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.attribute);
            let q = penalized_with(ctx, attrs, &cov, penalty);
            if q >= best_q {
                best_q = q;
                remove = Some(i);
            }
        }
        match remove {
            Some(i) => {
                cs.conditions.remove(i);
                single.remove(i);
            }
            None => break,
        }
    }
    cs
}

/// Mines contrast sets for one group of interest.
pub fn mine_group(ds: &DataSet, group: usize, params: &MiningParams) -> Result<GroupResult, InductionError> {
    params.validate()?;
    let ctx = Context::new(ds, group, params)?;
    Ok(mine_with_context(&ctx, params))
}

pub fn mine_with_context(ctx: &Context<'_>, params: &MiningParams) -> GroupResult {
    let mut penalty = PenaltyState::new(
        ctx.ds.attributes().len(),
        params.penalty_strength,
        params.reward_saturation,
        &ctx.positives,
    );
    let mut sets: Vec<AnnotatedContrastSet> = Vec::new();
    let mut keys: Vec<Vec<Condition>> = Vec::new();
    let mut events = Vec::new();

    for &minsupp in &params.minsupps {
        penalty.reset(&ctx.positives);
        for pass in 1..=params.max_passes {
            let mut uncovered = ctx.positives.clone();
            let mut novel = 0usize;
            while let Some((grown, _)) = grow(ctx, &uncovered, minsupp, params, &penalty) {
                let pruned = prune(ctx, grown, params, &penalty);
                let canonical = pruned.canonicalize();
                let covered = ctx.cover(&canonical);
                let cm = ctx.confusion(&covered, &uncovered);
                let key = canonical.canonical_key();
                let duplicate = keys.contains(&key);

                uncovered.and_not_assign(&covered);
                penalty.record(&canonical, &covered);
                events.push(InductionEvent {
                    set: canonical.clone(),
                    minsupp,
                    pass,
                    p: cm.p,
                    n: cm.n,
                    p_new: cm.p_new,
                    duplicate,
                    usage_after: penalty.usage().to_vec(),
                });
                if !duplicate {
                    novel += 1;
                    keys.push(key);
                    sets.push(AnnotatedContrastSet {
                        quality: ctx.quality(&covered),
                        set: canonical,
                        pass,
                        minsupp,
                        p: cm.p,
                        n: cm.n,
                        p_new: cm.p_new,
                        redundancy: RedundancyRecord::default(),
                    });
                }
            }
            if novel == 0 {
                break;
            }
        }
    }

    let profiles: Vec<Profile> = sets
        .iter()
        .map(|s| Profile::new(&s.set, ctx.ds, &ctx.positives))
        .collect();
    for (s, r) in sets.iter_mut().zip(diversity::redundancies(&profiles)) {
        s.redundancy = r;
    }

    GroupResult {
        group: ctx.group,
        total_p: ctx.total_p,
        total_n: ctx.total_n,
        sets,
        events,
    }
}

/// Groups mined by [`mine_all`]: every group, except the negative group in
/// one-vs-one mode.
pub fn target_groups(ds: &DataSet, params: &MiningParams) -> Vec<usize> {
    (0..ds.groups().len())
        .filter(|&g| !matches!(params.mode, Mode::OneVsOne { negative } if negative == g))
        .collect()
}

pub fn mine_all(ds: &DataSet, params: &MiningParams) -> Result<Vec<GroupResult>, InductionError> {
    params.validate()?;
    if ds.groups().len() < 2 {
        return Err(InductionError::TooFewGroups);
    }
    target_groups(ds, params)
        .into_iter()
        .map(|g| mine_group(ds, g, params))
        .collect()
}

/// Unpenalized quality of a contrast set under the group's measure.
pub fn evaluate(ctx: &Context<'_>, cs: &ContrastSet) -> Result<f64, quality::QualityError> {
    let covered = ctx.cover(cs);
    quality::evaluate(ctx.measure, &covered, ctx.ds, &ctx.positives, &ctx.negatives).map(|s| s.value)
}
