use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use csmine::arff;
use csmine::config::{self, RunConfig};
use csmine::report::{self, ReportRow};
use csmine::run::{self, Input};
use csmine::summary::{summarize, Metrics};
use csmine::synth::SynthSpec;

#[derive(Parser)]
#[command(name = "csmine", version, about = "Contrast set mining for ARFF data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine contrast sets as described by a TOML config.
    Mine {
        config: PathBuf,
        /// Override a config key, e.g. `--set max_passes=1`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Recompute summary metrics for a CSV report against a data set.
    Summarize {
        report: PathBuf,
        dataset: PathBuf,
        /// Config supplying the column roles (task, group, ...).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Generate a synthetic ARFF data set.
    Synth {
        /// Generator spec; the built-in two-cluster spec when omitted.
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn print_metrics(label: &str, m: &Metrics) {
    println!(
        "  {label:<9} sets={:<4} support={:.1}% precision={:.1}% 0-cov={} 1-cov={}",
        m.count, m.mean_support, m.mean_precision, m.zero_cov, m.one_cov
    );
}

fn mine(config: &Path, overrides: &[String]) -> Result<()> {
    let cfg = RunConfig::load(config, overrides)?;
    let workers = config::workers_from_env()?;
    let runs = run::run(&cfg, workers)?;
    let written = run::write_reports(&cfg, &runs)?;
    for r in &runs {
        println!("{}", r.name);
        print_metrics("all", &r.initial_metrics());
        print_metrics("filtered", &r.filtered_metrics(cfg.redundancy_threshold));
    }
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn summarize_report(report_path: &Path, dataset: &Path, config: Option<&Path>, overrides: &[String]) -> Result<()> {
    let (mut table, base, origin) = match config {
        Some(p) => config::read_table(p)?,
        None => (toml::Table::new(), PathBuf::from("."), "command line".to_string()),
    };
    for key in ["input", "inputs", "synthetic"] {
        table.remove(key);
    }
    let dataset = std::path::absolute(dataset).with_context(|| dataset.display().to_string())?;
    table.insert("input".into(), toml::Value::String(dataset.display().to_string()));
    config::apply_overrides(&mut table, overrides)?;
    let cfg = RunConfig::from_table(table, &base, &origin)?;

    let input = Input {
        name: dataset.display().to_string(),
        table: arff::read(&dataset)?,
    };
    let ds = run::bind(&cfg, &input)?;
    let params = run::params_for(&cfg, &ds, &input.name)?;
    let file = std::fs::File::open(report_path).with_context(|| report_path.display().to_string())?;
    let rows: Vec<ReportRow> = report::read_csv(file).with_context(|| report_path.display().to_string())?;
    let sets = report::parse_rows(&rows, &ds).with_context(|| report_path.display().to_string())?;
    let metrics = summarize(&sets, &ds, params.mode);
    println!("{}", serde_json::to_string_pretty(&metrics)?);
    Ok(())
}

fn synth(spec: Option<&Path>, seed: u64, output: Option<&Path>) -> Result<()> {
    let spec = match spec {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| p.display().to_string())?;
            SynthSpec::from_toml(&text).with_context(|| p.display().to_string())?
        }
        None => SynthSpec::default_two_cluster(),
    };
    let text = arff::write(&spec.generate(seed)?);
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| p.display().to_string())?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mine { config, overrides } => mine(config, overrides),
        Command::Summarize {
            report,
            dataset,
            config,
            overrides,
        } => summarize_report(report, dataset, config.as_deref(), overrides),
        Command::Synth { spec, seed, output } => synth(spec.as_deref(), *seed, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
