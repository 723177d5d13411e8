//! `tetrad`: generate PG(3,q) models, check them against the line axioms,
//! classify triples and quadruples, verify duality and re-render reports.
//!
//! Exit codes: 0 all axioms and harmonicity hold, 1 an axiom fails,
//! 2 axioms hold but harmonicity fails, 3 usage, input or unsupported
//! operation errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tetrad::duality::{check_duality, DualityReport, DualityScope};
use tetrad::flats::labelled_catalog;
use tetrad::pg3::build_model;
use tetrad::report_io::{
    emit_report, parse_model, parse_report, render_text, serialize_model, Generator, ModelFile,
};
use tetrad::tetra::{classify_quadruple, classify_triple, diagonals_of_tetrad};
use tetrad::verify::{self, CheckMode, CheckOptions};
use tetrad::PrimeField;

const EXIT_USAGE: u8 = 3;

/// Environment variable for the worker count. Accepted for forward
/// compatibility; every computation currently runs on one thread.
const WORKERS_ENV: &str = "TETRAD_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "tetrad",
    version,
    about = "Finite-model checks for the line axioms of projective 3-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    PerFlat,
    Sample,
}

impl From<Mode> for CheckMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exhaustive => CheckMode::Exhaustive,
            Mode::PerFlat => CheckMode::PerFlat,
            Mode::Sample => CheckMode::Sample,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the canonical PG(3,q) model file.
    Gen {
        #[arg(long)]
        q: u32,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a model file and emit a report.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Quadruples drawn by the sampled survey.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify three or four line ids.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(required = true, num_args = 3..=4)]
        ids: Vec<usize>,
    },
    /// Verify the duality map of a generated model.
    Dual {
        #[arg(long = "in", conflicts_with = "q", required_unless_present = "q")]
        input: Option<PathBuf>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Triples and quadruples drawn per flat in sampled mode.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-render a saved JSON report.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Ok(w) = std::env::var(WORKERS_ENV) {
        if w.parse::<usize>().map_or(true, |w| w == 0) {
            eprintln!("error: {WORKERS_ENV} must be a positive integer, got {w:?}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen { q, out } => {
            let field = field_for(q)?;
            let model = build_model(field);
            let text = serialize_model(&model.structure, Some(Generator::Pg3 { q }))?;
            write_output(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Check {
            input,
            out,
            mode,
            samples,
            seed,
            format,
        } => {
            let file = read_model(&input)?;
            let mut opts = match mode {
                Some(m) => CheckOptions::new(m.into()),
                None => CheckOptions::default_for(&file),
            };
            if let Some(s) = seed {
                opts.seed = s;
            }
            if let Some(s) = samples {
                if opts.mode != CheckMode::Sample {
                    bail!("--samples only applies to --mode sample");
                }
                opts.survey_samples = s;
            }
            let report = verify::run_check(&file, &opts);
            let text = match format {
                Format::Json => emit_report(&report),
                Format::Text => render_text(&report),
            };
            write_output(out.as_deref(), &text)?;
            Ok(report.outcome().exit_code() as u8)
        }
        Command::Classify { input, ids } => {
            let file = read_model(&input)?;
            println!("{}", classify_line(&file, &ids)?);
            Ok(0)
        }
        Command::Dual {
            input,
            q,
            out,
            mode,
            samples,
            seed,
            format,
        } => {
            let file = match (input, q) {
                (Some(path), _) => read_model(&path)?,
                (None, Some(q)) => {
                    let model = build_model(field_for(q)?);
                    ModelFile {
                        generator: Some(Generator::Pg3 { q }),
                        structure: model.structure,
                    }
                }
                (None, None) => unreachable!("clap requires --in or --q"),
            };
            let model = verify::regenerate(&file).map_err(|why| {
                anyhow!("unsupported operation: duality needs coordinates: {why}")
            })?;
            let catalog = labelled_catalog(&model.structure)?;
            let mode = mode.map_or_else(|| CheckMode::default_for(&file), CheckMode::from);
            let scope = match mode {
                CheckMode::Exhaustive => {
                    if samples.is_some() {
                        bail!("--samples only applies to sampled modes");
                    }
                    DualityScope::Exhaustive
                }
                _ => DualityScope::Sampled {
                    per_flat: samples.unwrap_or(verify::DEFAULT_DUALITY_PER_FLAT),
                    seed: seed.unwrap_or(verify::DEFAULT_SEED),
                },
            };
            let report =
                check_duality(&model.dual_permutation(), &model.structure, &catalog, scope);
            let text = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report)?;
                    s.push('\n');
                    s
                }
                Format::Text => render_duality(&report),
            };
            write_output(out.as_deref(), &text)?;
            Ok(if report.all_passed { 0 } else { 1 })
        }
        Command::Report { input, out, format } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let report = parse_report(&text)
                .with_context(|| format!("{} is not a verification report", input.display()))?;
            let rendered = match format {
                Format::Json => emit_report(&report),
                Format::Text => render_text(&report),
            };
            write_output(out.as_deref(), &rendered)?;
            Ok(0)
        }
    }
}

fn field_for(q: u32) -> Result<PrimeField> {
    let field = PrimeField::new(q).map_err(|_| anyhow!("q must be prime (got {q})"))?;
    if q > 7 {
        bail!("q must be at most 7 (got {q})");
    }
    Ok(field)
}

fn read_model(path: &Path) -> Result<ModelFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_model(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn classify_line(file: &ModelFile, ids: &[usize]) -> Result<String> {
    let m = &file.structure;
    let catalog = labelled_catalog(m).context("model has no labelled flat catalog")?;
    match *ids {
        [x, y, z] => Ok(classify_triple(x, y, z, m, &catalog)?.to_string()),
        [o, p, q, r] => {
            let t = [o, p, q, r];
            let class = classify_quadruple(t, m, &catalog)?;
            if class.tetrad_kind().is_none() {
                return Ok(class.to_string());
            }
            let d = diagonals_of_tetrad(t, m, &catalog)?;
            let [a, b, c] = d.diagonals;
            Ok(format!(
                "{class} diagonals=[{a},{b},{c}] harmonic={}",
                d.is_harmonic()
            ))
        }
        _ => bail!("expected 3 or 4 line ids"),
    }
}

fn render_duality(r: &DualityReport) -> String {
    let rows = [
        ("involution", &r.involution),
        ("incidence preserved", &r.incidence_preserved),
        ("flat kinds swapped", &r.flat_kinds_swapped),
        ("triad types swapped", &r.triad_types_swapped),
        ("tetrad types swapped", &r.tetrad_types_swapped),
        ("harmonicity invariant", &r.harmonicity_invariant),
    ];
    let mut out = String::new();
    for (name, check) in rows {
        out.push_str(&format!(
            "{name:<22} {} ({} cases, {} violations)\n",
            if check.passed { "PASS" } else { "FAIL" },
            check.cases,
            check.violations
        ));
    }
    out.push_str(if r.all_passed {
        "duality holds\n"
    } else {
        "duality fails\n"
    });
    out
}
