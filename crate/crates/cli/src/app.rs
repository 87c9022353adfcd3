use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qbpa::report::{matrix_csv, matrix_markdown, report_csv, report_markdown};
use qbpa::{
    run_pipeline, DistanceSemantics, DivergenceInput, EvidenceDocument, EvidenceSet, Execution,
    LogBase, MeasureStrategy, PairwiseMatrix, PipelineOptions,
};
use thiserror::Error;

use crate::fixtures;
use crate::reproduce::{render_csv, render_markdown, reproduce, ReproduceOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Pipeline(String),
    #[error("{0}")]
    Reproduction(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Pipeline(_) => 3,
            CliError::Reproduction(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qbpa", version, about = "Ordinal quantum evidence fusion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full fusion pipeline on an evidence file.
    Fuse {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Emit one normalized pairwise matrix.
    Measure {
        #[arg(long)]
        input: PathBuf,
        #[arg(value_enum)]
        measure: MeasureName,
        #[command(flatten)]
        common: Common,
    },
    /// Compare against the published case-study tables.
    Reproduce {
        /// Fixture ids; all four when omitted.
        #[arg(value_parser = ["app1", "app2", "app3", "app4"])]
        fixtures: Vec<String>,
        /// Evaluate every measure strategy and report the closest per table.
        #[arg(long)]
        sweep: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureName {
    Dxp,
    Dwb,
    Sim1,
    Sim2,
    Sim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Md => "md",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value = "complex", value_parser = ["complex", "belief", "amplitude"])]
    distance: String,
    #[arg(long = "divergence-input", default_value = "belief", value_parser = ["belief", "amplitude"])]
    divergence_input: String,
    #[arg(long = "log-base", default_value = "10", value_parser = ["10", "2", "e"])]
    log_base: String,
    /// Copies of the weighted average to combine; defaults to the number of evidences.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    copies: Option<u64>,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Write files into this directory instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run every loop on the calling thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn strategy(&self) -> MeasureStrategy {
        MeasureStrategy {
            distance: self.distance.parse::<DistanceSemantics>().expect("validated by clap"),
            divergence_input: self.divergence_input.parse::<DivergenceInput>().expect("validated by clap"),
            log_base: self.log_base.parse::<LogBase>().expect("validated by clap"),
        }
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions {
            strategy: self.strategy(),
            copies: self.copies.map(|c| c as usize),
            execution: self.execution(),
        }
    }
}

/// What a successful command produced: `(file stem, contents)` pairs.
pub type Outputs = Vec<(String, String)>;

pub fn load_evidence(path: &Path) -> Result<(EvidenceSet, Option<f64>), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let doc = EvidenceDocument::from_json(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let tol = doc.mass_tolerance;
    let es = doc
        .into_evidence_set()
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok((es, tol))
}

fn pick(m: &Option<PairwiseMatrix>, name: &str) -> Result<PairwiseMatrix, CliError> {
    m.clone().ok_or_else(|| {
        CliError::Pipeline(format!("{name}: degenerate-matrix: every off-diagonal entry is zero"))
    })
}

fn cmd_fuse(input: &Path, common: &Common) -> Result<Outputs, CliError> {
    let (es, tol) = load_evidence(input)?;
    let mut report = run_pipeline(&es, &common.pipeline_options()).map_err(|e| CliError::Pipeline(e.to_string()))?;
    if let Some(tol) = tol {
        report.notes.push(format!("evidence validated with mass tolerance {tol}"));
    }
    let text = match common.format {
        Format::Md => report_markdown(&report),
        Format::Csv => report_csv(&report),
    };
    Ok(vec![("report".into(), text)])
}

fn cmd_measure(input: &Path, measure: MeasureName, common: &Common) -> Result<Outputs, CliError> {
    let (es, _) = load_evidence(input)?;
    let report = run_pipeline(&es, &common.pipeline_options()).map_err(|e| CliError::Pipeline(e.to_string()))?;
    let (name, m) = match measure {
        MeasureName::Dxp => ("dxp", &report.d_xp),
        MeasureName::Dwb => ("dwb", &report.d_wb),
        MeasureName::Sim1 => ("sim1", &report.sim1),
        MeasureName::Sim2 => ("sim2", &report.sim2),
        MeasureName::Sim => ("sim", &report.sim),
    };
    let m = pick(m, name)?;
    let text = match common.format {
        Format::Md => matrix_markdown(&m, &report.evidence_ids),
        Format::Csv => matrix_csv(&m, &report.evidence_ids),
    };
    Ok(vec![(name.into(), text)])
}

fn cmd_reproduce(ids: &[String], sweep: bool, common: &Common) -> Result<(Outputs, Vec<String>), CliError> {
    let chosen: Vec<_> = if ids.is_empty() {
        fixtures::ALL.to_vec()
    } else {
        ids.iter()
            .map(|id| fixtures::by_id(id).ok_or_else(|| CliError::Usage(format!("unknown fixture `{id}`"))))
            .collect::<Result<_, _>>()?
    };
    let opts = ReproduceOptions {
        strategy: common.strategy(),
        copies: common.copies.map(|c| c as usize),
        sweep,
        execution: common.execution(),
    };
    let mut outputs = Vec::new();
    let mut failures = Vec::new();
    for f in &chosen {
        let r = reproduce(f, &opts).map_err(|e| CliError::Pipeline(format!("{}: {e}", f.id)))?;
        for a in r.assertions.iter().filter(|a| !a.passed) {
            failures.push(format!("{}: {} ({})", f.id, a.name, a.detail));
        }
        let text = match common.format {
            Format::Md => render_markdown(&r),
            Format::Csv => render_csv(&r),
        };
        outputs.push((format!("{}-reproduce", f.id), text));
    }
    Ok((outputs, failures))
}

fn emit(outputs: &Outputs, common: &Common, stdout: &mut String) -> Result<(), CliError> {
    match &common.output {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Data(format!("cannot create {}: {e}", dir.display())))?;
            for (stem, text) in outputs {
                let path = dir.join(format!("{stem}.{}", common.format.extension()));
                fs::write(&path, text).map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
                stdout.push_str(&format!("wrote {}\n", path.display()));
            }
        }
        None => {
            for (k, (_, text)) in outputs.iter().enumerate() {
                if k > 0 {
                    stdout.push('\n');
                }
                stdout.push_str(text);
            }
        }
    }
    Ok(())
}

/// Runs a parsed command. On success returns what to print on stdout.
/// Reproduction failures still emit every report before the error.
pub fn execute(cli: &Cli, stdout: &mut String) -> Result<(), CliError> {
    match &cli.command {
        Command::Fuse { input, common } => emit(&cmd_fuse(input, common)?, common, stdout),
        Command::Measure { input, measure, common } => emit(&cmd_measure(input, *measure, common)?, common, stdout),
        Command::Reproduce { fixtures, sweep, common } => {
            let (outputs, failures) = cmd_reproduce(fixtures, *sweep, common)?;
            emit(&outputs, common, stdout)?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Reproduction(format!(
                    "reproduction assertions failed:\n  {}",
                    failures.join("\n  ")
                )))
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns `(exit code, stdout, stderr)`.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { (1, String::new(), text) } else { (0, text, String::new()) };
        }
    };
    let mut stdout = String::new();
    match execute(&cli, &mut stdout) {
        Ok(()) => (0, stdout, String::new()),
        Err(e) => (e.exit_code(), stdout, format!("error: {e}\n")),
    }
}
