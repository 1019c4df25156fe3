//! Run configuration: a flat TOML file plus `key=value` overrides.
//!
//! ```toml
//! input = "heart.arff"
//! group = "class"
//! redundancy_threshold = 0.5
//! output_dir = "out"
//! ```
//!
//! Relative paths are resolved against the directory of the config file.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use csmine_core::{Binding, Measure, MiningParams, Mode, Task};

pub const WORKERS_ENV: &str = "CSMINE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TaskName {
    #[default]
    Classification,
    Regression,
    Survival,
}

impl From<TaskName> for Task {
    fn from(t: TaskName) -> Task {
        match t {
            TaskName::Classification => Task::Classification,
            TaskName::Regression => Task::Regression,
            TaskName::Survival => Task::Survival,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    #[default]
    OneVsAll,
    OneVsOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureName {
    Correlation,
    Regression,
    Survival,
}

impl From<MeasureName> for Measure {
    fn from(m: MeasureName) -> Measure {
        match m {
            MeasureName::Correlation => Measure::Correlation,
            MeasureName::Regression => Measure::RegressionConsistency,
            MeasureName::Survival => Measure::SurvivalConsistency,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

fn default_minsupps() -> Vec<f64> {
    MiningParams::default().minsupps
}
fn default_minsupp_new() -> f64 {
    MiningParams::default().minsupp_new
}
fn default_max_neg2pos() -> f64 {
    MiningParams::default().max_neg2pos
}
fn default_max_passes() -> usize {
    MiningParams::default().max_passes
}
fn default_penalty_strength() -> f64 {
    MiningParams::default().penalty_strength
}
fn default_reward_saturation() -> f64 {
    MiningParams::default().reward_saturation
}
fn default_threshold() -> f64 {
    0.5
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("csmine-out")
}
fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json]
}
fn default_seed() -> u64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// A single ARFF file.
    pub input: Option<PathBuf>,
    /// Several ARFF files, mined independently with the same settings.
    #[serde(default)]
    pub inputs: Vec<PathBuf>,
    /// Generate the data instead: a generator spec path, or `"default"`.
    pub synthetic: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,

    #[serde(default)]
    pub task: TaskName,
    pub group: Option<String>,
    pub label: Option<String>,
    pub time: Option<String>,
    pub status: Option<String>,
    /// Split regression / survival data into two groups at the median.
    /// Defaults to true when no group column is named.
    pub derive_groups: Option<bool>,

    #[serde(default)]
    pub mode: ModeName,
    /// Group label used as negatives in one-vs-one mode.
    pub negative_group: Option<String>,
    pub measure: Option<MeasureName>,
    #[serde(default = "default_minsupps")]
    pub minsupps: Vec<f64>,
    #[serde(default = "default_minsupp_new")]
    pub minsupp_new: f64,
    #[serde(default = "default_max_neg2pos")]
    pub max_neg2pos: f64,
    #[serde(default = "default_max_passes")]
    pub max_passes: usize,
    #[serde(default = "default_penalty_strength")]
    pub penalty_strength: f64,
    #[serde(default = "default_reward_saturation")]
    pub reward_saturation: f64,

    #[serde(default = "default_threshold")]
    pub redundancy_threshold: f64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("override `{0}` is not of the form key=value")]
    BadOverride(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Parses an override value as a TOML value, falling back to a bare string.
fn override_value(raw: &str) -> toml::Value {
    let wrapped = format!("v = {raw}");
    match wrapped.parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(raw.to_string())),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

pub fn apply_overrides(table: &mut toml::Table, overrides: &[String]) -> Result<(), ConfigError> {
    for o in overrides {
        let (key, value) = o.split_once('=').ok_or_else(|| ConfigError::BadOverride(o.clone()))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::BadOverride(o.clone()));
        }
        table.insert(key.to_string(), override_value(value.trim()));
    }
    Ok(())
}

fn parse_table(text: &str, origin: &str) -> Result<toml::Table, ConfigError> {
    text.parse().map_err(|e: toml::de::Error| ConfigError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })
}

/// Reads a config file into a raw table, with its base directory and name.
pub fn read_table(path: &Path) -> Result<(toml::Table, PathBuf, String), ConfigError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: origin.clone(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    Ok((parse_table(&text, &origin)?, base, origin))
}

impl RunConfig {
    /// Builds a config from TOML text and overrides. `base` anchors relative
    /// paths; `origin` names the source in errors.
    pub fn from_toml(text: &str, overrides: &[String], base: &Path, origin: &str) -> Result<RunConfig, ConfigError> {
        let mut table = parse_table(text, origin)?;
        apply_overrides(&mut table, overrides)?;
        Self::from_table(table, base, origin)
    }

    pub fn from_table(table: toml::Table, base: &Path, origin: &str) -> Result<RunConfig, ConfigError> {
        let mut cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| ConfigError::Parse {
                path: origin.to_string(),
                message: e.to_string(),
            })?;
        cfg.resolve(base);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<RunConfig, ConfigError> {
        let (mut table, base, origin) = read_table(path)?;
        apply_overrides(&mut table, overrides)?;
        Self::from_table(table, &base, &origin)
    }

    fn resolve(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(p) = self.input.as_mut() {
            fix(p);
        }
        self.inputs.iter_mut().for_each(fix);
        fix(&mut self.output_dir);
        if let Some(s) = self.synthetic.as_mut() {
            if s != "default" && Path::new(s).is_relative() {
                *s = base.join(&*s).display().to_string();
            }
        }
    }

    /// Every ARFF input, in order.
    pub fn input_paths(&self) -> Vec<PathBuf> {
        self.input.iter().chain(&self.inputs).cloned().collect()
    }

    pub fn derives_groups(&self) -> bool {
        self.task != TaskName::Classification && self.derive_groups.unwrap_or(self.group.is_none())
    }

    pub fn binding(&self) -> Binding {
        Binding {
            task: self.task.into(),
            group: self.group.clone(),
            label: self.label.clone(),
            time: self.time.clone(),
            status: self.status.clone(),
        }
    }

    /// Parameters with the mode left as one-vs-all; the negative group is
    /// resolved per data set.
    pub fn params(&self) -> MiningParams {
        MiningParams {
            minsupps: self.minsupps.clone(),
            minsupp_new: self.minsupp_new,
            max_neg2pos: self.max_neg2pos,
            max_passes: self.max_passes,
            penalty_strength: self.penalty_strength,
            reward_saturation: self.reward_saturation,
            mode: Mode::OneVsAll,
            measure: self.measure.map(Into::into),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: &str| Err(ConfigError::Invalid(m.to_string()));
        let inputs = self.input_paths();
        match (&self.synthetic, inputs.is_empty()) {
            (None, true) => return invalid("no input: set `input`, `inputs` or `synthetic`"),
            (Some(_), false) => return invalid("`synthetic` cannot be combined with `input`/`inputs`"),
            _ => {}
        }
        for p in &inputs {
            if !p.is_file() {
                return Err(ConfigError::Invalid(format!("input {} does not exist", p.display())));
            }
        }
        if let Some(s) = &self.synthetic {
            if s != "default" && !Path::new(s).is_file() {
                return Err(ConfigError::Invalid(format!("generator spec {s} does not exist")));
            }
        }
        if !(self.redundancy_threshold > 0.0 && self.redundancy_threshold <= 1.0) {
            return invalid("redundancy_threshold must be in (0, 1]");
        }
        if self.formats.is_empty() {
            return invalid("formats must not be empty");
        }
        self.params()
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        match self.task {
            TaskName::Classification if self.group.is_none() => {
                return invalid("classification needs a `group` column")
            }
            TaskName::Regression if self.label.is_none() => return invalid("regression needs a `label` column"),
            TaskName::Survival if self.time.is_none() || self.status.is_none() => {
                return invalid("survival needs `time` and `status` columns")
            }
            _ => {}
        }
        if self.task != TaskName::Classification && !self.derives_groups() && self.group.is_none() {
            return invalid("derive_groups = false needs a `group` column");
        }
        match (self.mode, &self.negative_group) {
            (ModeName::OneVsOne, None) => invalid("one-vs-one mode needs `negative_group`"),
            (ModeName::OneVsAll, Some(_)) => invalid("`negative_group` only applies to one-vs-one mode"),
            _ => Ok(()),
        }
    }
}

/// Worker count from the environment; `None` lets the pool decide.
pub fn workers_from_env() -> Result<Option<usize>, ConfigError> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ConfigError::Invalid(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str, overrides: &[&str]) -> Result<RunConfig, ConfigError> {
        let o: Vec<String> = overrides.iter().map(|s| s.to_string()).collect();
        let dir = env!("CARGO_MANIFEST_DIR");
        RunConfig::from_toml(text, &o, Path::new(dir), "test.toml")
    }

    #[test]
    fn defaults_match_mining_defaults() {
        let c = cfg("synthetic = \"default\"\ngroup = \"group\"\n", &[]).unwrap();
        assert_eq!(c.params(), MiningParams::default());
        assert_eq!(c.redundancy_threshold, 0.5);
        assert_eq!(c.formats, vec![Format::Csv, Format::Json]);
    }

    #[test]
    fn overrides_are_typed() {
        let c = cfg(
            "synthetic = \"default\"\ngroup = \"group\"\n",
            &["max_passes=1", "penalty_strength=0", "minsupps=[0.1]", "group=group"],
        )
        .unwrap();
        assert_eq!(c.max_passes, 1);
        assert_eq!(c.penalty_strength, 0.0);
        assert_eq!(c.minsupps, vec![0.1]);
        let bad = cfg("synthetic = \"default\"\ngroup = \"group\"\n", &["max_passes=many"]);
        assert!(matches!(bad, Err(ConfigError::Parse { .. })));
        assert!(matches!(
            cfg("synthetic = \"default\"\n", &["nonsense"]),
            Err(ConfigError::BadOverride(_))
        ));
    }

    #[test]
    fn validation() {
        assert!(matches!(cfg("synthetic = \"default\"\n", &[]), Err(ConfigError::Invalid(_))));
        assert!(matches!(
            cfg("input = \"missing.arff\"\ngroup = \"g\"\n", &[]),
            Err(ConfigError::Invalid(_))
        ));
        assert!(matches!(
            cfg("synthetic = \"default\"\ngroup = \"g\"\nredundancy_threshold = 0\n", &[]),
            Err(ConfigError::Invalid(_))
        ));
        assert!(matches!(
            cfg("synthetic = \"default\"\ngroup = \"g\"\nmode = \"one-vs-one\"\n", &[]),
            Err(ConfigError::Invalid(_))
        ));
        assert!(matches!(
            cfg("synthetic = \"default\"\ngroup = \"g\"\nunknown_key = 1\n", &[]),
            Err(ConfigError::Parse { .. })
        ));
        let reg = cfg("synthetic = \"default\"\ntask = \"regression\"\nlabel = \"a1\"\n", &[]).unwrap();
        assert!(reg.derives_groups());
    }
}
