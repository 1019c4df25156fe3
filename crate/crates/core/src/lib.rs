//! Contrast set mining with multi-pass separate-and-conquer induction.
//!
//! A contrast set is a conjunction of attribute conditions that covers many
//! examples of a group of interest and few of the remaining groups. This crate
//! holds the algorithmic part of the miner: the in-memory data model, coverage
//! bit sets, conditions and contrast sets, quality measures (correlation,
//! label-mean consistency, log-rank consistency), attribute penalties with
//! coverage rewards, and the grow / prune / covering drivers.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, configuration
//! and the command line live in the `csmine` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod contrast;
pub mod coverage;
pub mod data;
pub mod diversity;
pub mod induction;
pub mod quality;
pub mod survival;

pub use contrast::{ConfusionMatrix, Condition, ContrastSet, Test};
pub use coverage::CoverageSet;
pub use data::{
    Attribute, AttributeKind, Binding, DataError, DataSet, Example, SurvivalObs, Table, Task,
    Value,
};
pub use diversity::{PenaltyState, RedundancyRecord};
pub use induction::{
    AnnotatedContrastSet, GroupResult, InductionError, InductionEvent, Measure, MiningParams,
    Mode,
};
pub use quality::QualityScore;
pub use survival::KmCurve;
