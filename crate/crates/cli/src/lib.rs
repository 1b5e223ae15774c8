//! The `vacphase` command line: read one JSON input, run one command, write
//! JSON or CSV.
//!
//! Exit status is 0 on success, 1 for unreadable or invalid input, and 2 when
//! the solid-angle methods disagree. Failures print one `error:` line on stderr.

pub mod format;
pub mod report;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use vacphase::schema::{ExperimentFile, FilterFile, MediumFile, PhaseFile, SweepFile};
use vacphase::{
    circular_indices, cross_checked_solid_angle, cutoff_sensitivity, geometric_phases, predict,
    suppression_report, sweep_theta, tangent_trace, wave_number, ExperimentSpec, MaterialModel,
    PathSource, PredictorOptions, Regime,
};

use report::{
    BranchOut, CsvRows, FilterReport, MediumReport, MediumRow, PhaseReport, PredictionReport,
    SweepReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Solid angle and geometric phases of a path or helix.
    Phase,
    /// Circular refractive indices of a medium.
    Medium,
    /// Which zero-point branches a chamber suppresses over a band.
    Filter,
    /// Net vacuum phase for a full experiment.
    Predict,
    /// Predictions over a list of helix polar angles.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Command-line values that replace the corresponding input settings.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Overrides {
    pub cutoff_coefficient: Option<f64>,
    pub samples_per_turn: Option<u32>,
    pub closure_tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub format: OutputFormat,
    /// Standard output when `None`.
    pub output: Option<PathBuf>,
    pub overrides: Overrides,
}

#[derive(Debug, Parser)]
#[command(
    name = "vacphase",
    version,
    about = "Geometric and vacuum phases of light in coiled fibres"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON input document.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Replace the chamber's cutoff coefficient.
    #[arg(long)]
    pub cutoff_coefficient: Option<f64>,
    /// Replace the helix sampling density.
    #[arg(long)]
    pub samples_per_turn: Option<u32>,
    /// Largest tolerated gap between first and last tangent.
    #[arg(long = "closure-tol")]
    pub closure_tol: Option<f64>,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        Self {
            command: cli.command,
            input: cli.input,
            format: cli.format,
            output: cli.output,
            overrides: Overrides {
                cutoff_coefficient: cli.cutoff_coefficient,
                samples_per_turn: cli.samples_per_turn,
                closure_tolerance: cli.closure_tol,
            },
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Core(vacphase::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_INVALID,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) => f.write_str(msg),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<vacphase::Error> for Failure {
    fn from(e: vacphase::Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Run one command, returning the process exit status.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(config).and_then(|bytes| emit(config, &bytes, stdout)) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let line = failure.to_string().replace(['\n', '\r'], " ");
            // nothing sensible is left to do if stderr itself is broken
            let _ = writeln!(stderr, "error: {line}");
            failure.exit_code()
        }
    }
}

fn execute(config: &RunConfig) -> Outcome<Vec<u8>> {
    let text = fs::read_to_string(&config.input)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", config.input.display())))?;
    let ov = &config.overrides;
    match config.command {
        Command::Phase => {
            reject(
                ov.cutoff_coefficient.is_some(),
                "--cutoff-coefficient",
                "phase",
            )?;
            let file: PhaseFile = parse(&text, &config.input)?;
            let options = options(ov)?;
            let source = with_samples(file.path_source()?, ov.samples_per_turn)?;
            let trace = tangent_trace(&source.to_path()?, options.trace)?;
            let solid = cross_checked_solid_angle(&trace, options.holonomy_tolerance)?;
            let phases = geometric_phases(file.occupation, solid.primary().omega);
            let report = PhaseReport {
                occupation: file.occupation,
                solid_angle: (&solid).into(),
                phases: (&phases).into(),
            };
            render(&report, config.format)
        }
        Command::Medium => {
            reject(
                ov.cutoff_coefficient.is_some(),
                "--cutoff-coefficient",
                "medium",
            )?;
            reject(
                ov.samples_per_turn.is_some(),
                "--samples-per-turn",
                "medium",
            )?;
            reject(ov.closure_tolerance.is_some(), "--closure-tol", "medium")?;
            let file: MediumFile = parse(&text, &config.input)?;
            render(&medium_report(&file.to_material()?)?, config.format)
        }
        Command::Filter => {
            reject(
                ov.samples_per_turn.is_some(),
                "--samples-per-turn",
                "filter",
            )?;
            reject(ov.closure_tolerance.is_some(), "--closure-tol", "filter")?;
            let mut file: FilterFile = parse(&text, &config.input)?;
            if let Some(c) = ov.cutoff_coefficient {
                file.chamber.cutoff_coefficient = c;
            }
            let material = file.medium.to_material()?;
            let band = file.band.to_band()?;
            let points = PredictorOptions::default().band_points;
            let suppression = suppression_report(&material, &file.chamber, &band, points)?;
            let report = FilterReport {
                regime: Regime::from_suppression(
                    suppression.left_suppressed,
                    suppression.right_suppressed,
                ),
                sensitivity: cutoff_sensitivity(&material, &file.chamber, &band, points)?,
                suppression,
            };
            render(&report, config.format)
        }
        Command::Predict => {
            let file: ExperimentFile = parse(&text, &config.input)?;
            let spec = experiment(file.to_spec(options(ov)?)?, ov)?;
            let prediction = predict(&spec)?;
            render(
                &PredictionReport::new(spec.occupation, &prediction),
                config.format,
            )
        }
        Command::Sweep => {
            let file: SweepFile = parse(&text, &config.input)?;
            let spec = experiment(file.to_spec(options(ov)?)?, ov)?;
            let rows = sweep_theta(&spec, &file.thetas)?;
            render(&SweepReport::new(spec.occupation, &rows), config.format)
        }
    }
}

fn reject(present: bool, flag: &str, command: &str) -> Outcome<()> {
    if present {
        return Err(Failure::Input(format!(
            "{flag} does not apply to `{command}`"
        )));
    }
    Ok(())
}

fn parse<T: DeserializeOwned>(text: &str, path: &Path) -> Outcome<T> {
    serde_json::from_str(text)
        .map_err(|e| Failure::Input(format!("invalid input {}: {e}", path.display())))
}

fn options(ov: &Overrides) -> Outcome<PredictorOptions> {
    let mut options = PredictorOptions::default();
    if let Some(tol) = ov.closure_tolerance {
        options.trace.closure_tolerance = tol;
        options.trace.validate()?;
    }
    Ok(options)
}

fn with_samples(source: PathSource, samples: Option<u32>) -> Outcome<PathSource> {
    match (source, samples) {
        (source, None) => Ok(source),
        (PathSource::Helix(mut h), Some(n)) => {
            h.samples_per_turn = n;
            h.validate()?;
            Ok(PathSource::Helix(h))
        }
        (PathSource::Sampled(_), Some(_)) => Err(Failure::Input(
            "--samples-per-turn needs a helix input, not sampled points".into(),
        )),
    }
}

fn experiment(mut spec: ExperimentSpec, ov: &Overrides) -> Outcome<ExperimentSpec> {
    spec.path = with_samples(spec.path, ov.samples_per_turn)?;
    if let (Some(chamber), Some(c)) = (spec.chamber.as_mut(), ov.cutoff_coefficient) {
        chamber.cutoff_coefficient = c;
        chamber.validate()?;
    }
    Ok(spec)
}

fn medium_report(material: &MaterialModel) -> Outcome<MediumReport> {
    let row = |omega: Option<f64>, medium: &vacphase::GyrotropicMedium| -> Outcome<MediumRow> {
        let idx = circular_indices(medium);
        let k = |n: Option<f64>| -> Outcome<Option<f64>> {
            match (n, omega) {
                (Some(n), Some(w)) => Ok(Some(wave_number(n, w)?)),
                _ => Ok(None),
            }
        };
        Ok(MediumRow {
            omega,
            plus: BranchOut::new(&idx.plus, k(idx.plus.propagating())?),
            minus: BranchOut::new(&idx.minus, k(idx.minus.propagating())?),
        })
    };
    let rows = match material {
        MaterialModel::Constant(m) => vec![row(None, m)?],
        MaterialModel::Tabulated(t) => t
            .nodes()
            .iter()
            .map(|node| row(Some(node.omega), &material.medium_at(node.omega)?))
            .collect::<Outcome<_>>()?,
    };
    Ok(MediumReport { rows })
}

fn render<T: Serialize + CsvRows>(report: &T, format: OutputFormat) -> Outcome<Vec<u8>> {
    match format {
        OutputFormat::Json => {
            format::to_json(report).map_err(|e| Failure::Input(format!("cannot encode JSON: {e}")))
        }
        OutputFormat::Csv => to_csv(&report.csv_rows()),
    }
}

fn to_csv(rows: &[report::Columns]) -> Outcome<Vec<u8>> {
    let fail = |e: csv::Error| Failure::Input(format!("cannot encode CSV: {e}"));
    let mut writer = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        writer
            .write_record(first.iter().map(|(h, _)| h))
            .map_err(fail)?;
    }
    for row in rows {
        writer
            .write_record(row.iter().map(|(_, v)| v))
            .map_err(fail)?;
    }
    writer
        .into_inner()
        .map_err(|e| Failure::Input(format!("cannot encode CSV: {e}")))
}

fn emit(config: &RunConfig, bytes: &[u8], stdout: &mut dyn Write) -> Outcome<()> {
    let result = match &config.output {
        Some(path) => fs::write(path, bytes),
        None => stdout.write_all(bytes).and_then(|()| stdout.flush()),
    };
    result.map_err(|e: io::Error| {
        let target = config.output.as_ref().map_or_else(
            || "standard output".to_string(),
            |p| p.display().to_string(),
        );
        Failure::Input(format!("cannot write {target}: {e}"))
    })
}
