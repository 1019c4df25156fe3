pub mod arff;
pub mod synth;
pub mod config;
pub mod report;
pub mod run;
pub mod summary;
