//! End-to-end mining: load, bind, mine every group, filter, report.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use csmine_core::data::{derive_groups_regression, derive_groups_survival};
use csmine_core::induction::{mine_group, target_groups};
use csmine_core::{DataError, DataSet, GroupResult, InductionError, MiningParams, Mode, Table, Task};

use crate::arff::{self, ReadError};
use crate::config::{ConfigError, Format, ModeName, RunConfig};
use crate::report::{self, GroupReport, JsonReport, ReportError, ReportRow};
use crate::summary::{filter_redundancy, summarize, Metrics};
use crate::synth::{SynthError, SynthSpec};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("{input}: {source}")]
    Data { input: String, source: DataError },
    #[error("{input}: {source}")]
    Mining { input: String, source: InductionError },
    #[error("{input}: unknown negative group `{group}`")]
    UnknownNegative { input: String, group: String },
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

/// A loaded input: its display name and the raw table.
pub struct Input {
    pub name: String,
    pub table: Table,
}

pub fn load_inputs(cfg: &RunConfig) -> Result<Vec<Input>, RunError> {
    if let Some(spec) = &cfg.synthetic {
        let spec = if spec == "default" {
            SynthSpec::default_two_cluster()
        } else {
            let text = std::fs::read_to_string(spec).map_err(|source| RunError::Io {
                path: spec.clone(),
                source,
            })?;
            SynthSpec::from_toml(&text)?
        };
        return Ok(vec![Input {
            name: spec.relation.clone(),
            table: spec.generate(cfg.seed)?,
        }]);
    }
    cfg.input_paths()
        .iter()
        .map(|p| {
            Ok(Input {
                name: p.display().to_string(),
                table: arff::read(p)?,
            })
        })
        .collect()
}

/// Applies the configured column roles, deriving groups when asked.
pub fn bind(cfg: &RunConfig, input: &Input) -> Result<DataSet, RunError> {
    let data_err = |source| RunError::Data {
        input: input.name.clone(),
        source,
    };
    let ds = if cfg.derives_groups() {
        match Task::from(cfg.task) {
            Task::Regression => derive_groups_regression(&input.table, cfg.label.as_deref().unwrap_or_default()),
            _ => derive_groups_survival(
                &input.table,
                cfg.time.as_deref().unwrap_or_default(),
                cfg.status.as_deref().unwrap_or_default(),
            ),
        }
    } else {
        input.table.bind(&cfg.binding())
    };
    ds.map_err(data_err)
}

/// Mining parameters with the negative group resolved against `ds`.
pub fn params_for(cfg: &RunConfig, ds: &DataSet, input: &str) -> Result<MiningParams, RunError> {
    let mut params = cfg.params();
    if cfg.mode == ModeName::OneVsOne {
        let name = cfg.negative_group.clone().unwrap_or_default();
        let negative = ds.group_index(&name).ok_or_else(|| RunError::UnknownNegative {
            input: input.to_string(),
            group: name,
        })?;
        params.mode = Mode::OneVsOne { negative };
    }
    Ok(params)
}

pub struct DatasetRun {
    pub name: String,
    pub relation: String,
    pub dataset: DataSet,
    pub params: MiningParams,
    pub groups: Vec<GroupResult>,
}

impl DatasetRun {
    pub fn initial_metrics(&self) -> Metrics {
        let sets: Vec<_> = self.groups.iter().flat_map(|g| g.sets.iter().map(|s| s.set.clone())).collect();
        summarize(&sets, &self.dataset, self.params.mode)
    }

    pub fn filtered_metrics(&self, threshold: f64) -> Metrics {
        let sets: Vec<_> = self
            .groups
            .iter()
            .flat_map(|g| filter_redundancy(&g.sets, threshold))
            .map(|s| s.set)
            .collect();
        summarize(&sets, &self.dataset, self.params.mode)
    }
}

/// Mines every group of one data set, groups in parallel, results in group order.
pub fn mine_dataset(name: &str, ds: DataSet, params: MiningParams) -> Result<DatasetRun, RunError> {
    let mining = |source| RunError::Mining {
        input: name.to_string(),
        source,
    };
    params.validate().map_err(mining)?;
    if ds.groups().len() < 2 {
        return Err(mining(InductionError::TooFewGroups));
    }
    let groups = target_groups(&ds, &params)
        .into_par_iter()
        .map(|g| mine_group(&ds, g, &params))
        .collect::<Result<Vec<_>, _>>()
        .map_err(mining)?;
    Ok(DatasetRun {
        name: name.to_string(),
        relation: String::new(),
        dataset: ds,
        params,
        groups,
    })
}

/// Runs the whole pipeline in a pool of `workers` threads (default: all cores).
pub fn run(cfg: &RunConfig, workers: Option<usize>) -> Result<Vec<DatasetRun>, RunError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| RunError::Pool(e.to_string()))?;
    pool.install(|| {
        let inputs = load_inputs(cfg)?;
        inputs
            .par_iter()
            .map(|input| {
                let ds = bind(cfg, input)?;
                let params = params_for(cfg, &ds, &input.name)?;
                let mut run = mine_dataset(&input.name, ds, params)?;
                run.relation = input.table.relation.clone();
                Ok(run)
            })
            .collect()
    })
}

fn settings_json(cfg: &RunConfig, params: &MiningParams, ds: &DataSet) -> serde_json::Value {
    let task = match ds.task() {
        Task::Classification => "classification",
        Task::Regression => "regression",
        Task::Survival => "survival",
    };
    let measure = params.measure.map(|m| format!("{m:?}"));
    serde_json::json!({
        "task": task,
        "mode": match params.mode {
            Mode::OneVsAll => "one-vs-all".to_string(),
            Mode::OneVsOne { negative } => format!("one-vs-one ({})", ds.groups()[negative]),
        },
        "measure": measure,
        "minsupps": params.minsupps,
        "minsupp_new": params.minsupp_new,
        "max_neg2pos": params.max_neg2pos,
        "max_passes": params.max_passes,
        "penalty_strength": params.penalty_strength,
        "reward_saturation": params.reward_saturation,
        "derive_groups": cfg.derives_groups(),
        "seed": cfg.synthetic.as_ref().map(|_| cfg.seed),
    })
}

/// File stem for an input: its file name without extension, made unique by
/// position when several inputs share one.
fn stems(runs: &[DatasetRun]) -> Vec<String> {
    let base: Vec<String> = runs
        .iter()
        .map(|r| {
            Path::new(&r.name)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| r.name.clone())
        })
        .collect();
    base.iter()
        .enumerate()
        .map(|(i, b)| {
            if base.iter().filter(|x| *x == b).count() > 1 {
                format!("{b}-{}", i + 1)
            } else {
                b.clone()
            }
        })
        .collect()
}

/// Writes `<stem>.csv` (kept sets), `<stem>-all.csv` and `<stem>.json`
/// into the output directory. Returns the written paths.
pub fn write_reports(cfg: &RunConfig, runs: &[DatasetRun]) -> Result<Vec<PathBuf>, RunError> {
    let dir = &cfg.output_dir;
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| RunError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for (run, stem) in runs.iter().zip(stems(runs)) {
        let ds = &run.dataset;
        let all: Vec<ReportRow> = run
            .groups
            .iter()
            .flat_map(|g| g.sets.iter().map(|s| ReportRow::new(s, ds)))
            .collect();
        let kept: Vec<ReportRow> = run
            .groups
            .iter()
            .flat_map(|g| filter_redundancy(&g.sets, cfg.redundancy_threshold))
            .map(|s| ReportRow::new(&s, ds))
            .collect();
        if cfg.formats.contains(&Format::Csv) {
            for (rows, name) in [(&kept, format!("{stem}.csv")), (&all, format!("{stem}-all.csv"))] {
                let path = dir.join(name);
                let mut buf = Vec::new();
                report::write_csv(rows, &mut buf)?;
                std::fs::write(&path, buf).map_err(io(&path))?;
                written.push(path);
            }
        }
        if cfg.formats.contains(&Format::Json) {
            let doc = JsonReport {
                input: run.name.clone(),
                relation: run.relation.clone(),
                examples: ds.len(),
                settings: settings_json(cfg, &run.params, ds),
                redundancy_threshold: cfg.redundancy_threshold,
                groups: run
                    .groups
                    .iter()
                    .map(|g| GroupReport {
                        group: ds.groups()[g.group].clone(),
                        positives: g.total_p,
                        negatives: g.total_n,
                        sets: g.sets.iter().map(|s| ReportRow::new(s, ds)).collect(),
                    })
                    .collect(),
                initial: run.initial_metrics(),
                filtered: run.filtered_metrics(cfg.redundancy_threshold),
            };
            let path = dir.join(format!("{stem}.json"));
            let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
            text.push('\n');
            std::fs::write(&path, text).map_err(io(&path))?;
            written.push(path);
        }
    }
    Ok(written)
}
