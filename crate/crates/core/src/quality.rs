//! Quality measures driving the search.
//!
//! Classification uses the correlation between the premise and group
//! membership. Regression and survival use consistency with the group of
//! interest: the negated absolute difference of label means, and the negated
//! log-rank statistic between the covered examples and the whole group.

use alloc::vec::Vec;

use crate::contrast::ConfusionMatrix;
use crate::coverage::CoverageSet;
use crate::data::{DataSet, SurvivalObs, Task};
use crate::survival::{self, SurvivalError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Measure {
    #[default]
    Correlation,
    RegressionConsistency,
    SurvivalConsistency,
}

impl Measure {
    /// The measure used for a task unless overridden.
    pub fn for_task(task: Task) -> Measure {
        match task {
            Task::Classification => Measure::Correlation,
            Task::Regression => Measure::RegressionConsistency,
            Task::Survival => Measure::SurvivalConsistency,
        }
    }

    /// Checks the data set carries the target this measure needs.
    pub fn supported_by(self, ds: &DataSet) -> bool {
        match self {
            Measure::Correlation => true,
            Measure::RegressionConsistency => ds.labels().is_some(),
            Measure::SurvivalConsistency => ds.survival().is_some(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityScore {
    pub value: f64,
    pub measure: Measure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum QualityError {
    #[error("contrast set covers no examples")]
    EmptyCoverage,
    #[error("group of interest is empty")]
    EmptyPositives,
    #[error("data set has no target for {0:?}")]
    MissingTarget(Measure),
    #[error(transparent)]
    Survival(#[from] SurvivalError),
}

/// `(pN - Pn) / sqrt(PN(p+n)(P-p+N-n))`. A zero denominator (nothing or
/// everything covered) gives 0.
pub fn correlation_value(p: usize, n: usize, total_p: usize, total_n: usize) -> f64 {
    let (p, n, pp, nn) = (p as f64, n as f64, total_p as f64, total_n as f64);
    let denom = pp * nn * (p + n) * (pp - p + nn - n);
    if denom <= 0.0 {
        return 0.0;
    }
    (p * nn - pp * n) / libm::sqrt(denom)
}

pub fn correlation(cm: &ConfusionMatrix) -> QualityScore {
    QualityScore {
        value: correlation_value(cm.p, cm.n, cm.total_p, cm.total_n),
        measure: Measure::Correlation,
    }
}

fn mean_over(labels: &[f64], set: &CoverageSet) -> Option<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in set {
        sum += labels[i];
        count += 1;
    }
    (count > 0).then(|| sum / count as f64)
}

/// `-|mean(L over covered) - mean(L over positives)|`. The covered mean runs
/// over every covered example, positive or not.
pub fn regression_consistency(
    covered: &CoverageSet,
    ds: &DataSet,
    positives: &CoverageSet,
) -> Result<QualityScore, QualityError> {
    let labels = ds
        .labels()
        .ok_or(QualityError::MissingTarget(Measure::RegressionConsistency))?;
    let cov_mean = mean_over(labels, covered).ok_or(QualityError::EmptyCoverage)?;
    let pos_mean = mean_over(labels, positives).ok_or(QualityError::EmptyPositives)?;
    Ok(QualityScore {
        value: -libm::fabs(cov_mean - pos_mean),
        measure: Measure::RegressionConsistency,
    })
}

fn sample(obs: &[SurvivalObs], set: &CoverageSet) -> Vec<SurvivalObs> {
    set.iter().map(|i| obs[i]).collect()
}

/// `-LogRank(covered, positives)` on the two (possibly overlapping) samples.
pub fn survival_consistency(
    covered: &CoverageSet,
    ds: &DataSet,
    positives: &CoverageSet,
) -> Result<QualityScore, QualityError> {
    let obs = ds
        .survival()
        .ok_or(QualityError::MissingTarget(Measure::SurvivalConsistency))?;
    if covered.is_empty() {
        return Err(QualityError::EmptyCoverage);
    }
    if positives.is_empty() {
        return Err(QualityError::EmptyPositives);
    }
    let stat = survival::log_rank(&sample(obs, covered), &sample(obs, positives))?;
    Ok(QualityScore {
        value: -stat,
        measure: Measure::SurvivalConsistency,
    })
}

/// Scores a coverage with any measure; `negatives` is only used by
/// correlation.
pub fn evaluate(
    measure: Measure,
    covered: &CoverageSet,
    ds: &DataSet,
    positives: &CoverageSet,
    negatives: &CoverageSet,
) -> Result<QualityScore, QualityError> {
    match measure {
        Measure::Correlation => {
            let cm = ConfusionMatrix::new(
                covered.intersection_count(positives),
                covered.intersection_count(negatives),
                positives.count(),
                negatives.count(),
            );
            Ok(correlation(&cm))
        }
        Measure::RegressionConsistency => regression_consistency(covered, ds, positives),
        Measure::SurvivalConsistency => survival_consistency(covered, ds, positives),
    }
}
