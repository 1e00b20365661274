//! `gmf` — evaluate generalized matrix functions, build induced matrices,
//! describe symmetry classes, and run the seeded verification suites.
//!
//! All results go to standard output as JSON (or to `--out`); logs go to
//! standard error.  Exit codes: 0 when everything passed, 1 when a
//! verification run recorded failures, 2 on usage or input-format errors.
//! Every error is also reported as a machine-readable JSON object
//! `{"error": code, "detail": text}` on standard output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gmf_core::caps::Caps;
use gmf_core::gmf::{det_m, GmfSpec};
use gmf_core::harness::{
    suite_complete_positivity, suite_css, suite_detm_superadd, suite_induced_superadd,
    suite_scalar_strong_superadd, suite_tensor_superadd, suite_thompson, SuiteReport, TrialConfig,
    DEFAULT_TOL,
};
use gmf_core::induced::{induced_entrywise, StarBasis};
use gmf_core::linalg::{determinant, BlockMatrix, ComplexMatrix};
use gmf_core::perm::{enumerate_characters, Character, CharacterSpec, PermutationGroup};
use gmf_core::symclass::{sequence_count, SymmetryClass};

#[derive(Parser)]
#[command(
    name = "gmf",
    version,
    about = "Generalized matrix functions: evaluation, induced matrices, and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the generalized matrix function of a square matrix.
    Eval {
        /// Path to the matrix JSON ({"rows", "cols", "entries": [[re, im], ..]}).
        #[arg(long)]
        matrix: PathBuf,
        /// Group: family name (S3, A4, C5, trivial2) or a JSON file path
        /// ({"degree", "generators"} with 1-based one-line images).
        #[arg(long)]
        group: String,
        /// Character: "sign", "trivial", or a character JSON file path.
        #[arg(long = "char")]
        character: String,
        /// Write the JSON result to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the induced matrix of a square matrix on a symmetry class.
    Induced {
        #[arg(long)]
        matrix: PathBuf,
        /// Group acting on tensor positions: file path or family name.
        #[arg(long)]
        group: String,
        #[arg(long = "char")]
        character: String,
        /// Construction to use; both agree on Hermitian inputs.
        #[arg(long, value_enum, default_value_t = Mode::Compression)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe a symmetry class: orbit representatives, admissible set,
    /// stabilizer orders, and dimension.
    Symclass {
        /// Group acting on tensor positions: file path or family name.
        #[arg(long)]
        group: String,
        /// Alphabet size (the dimension of the underlying vector space).
        #[arg(long)]
        n: usize,
        /// Optional tensor power; must match the group degree when given.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "char")]
        character: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and aggregate their reports.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteKind,
        /// Block count for blockwise suites.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Block size / matrix side; doubles as the default group degree.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Group: file path, family name with degree (S3), or bare family
        /// letter (S, A, C, trivial) taking its degree from --n.
        #[arg(long, default_value = "S")]
        group: String,
        /// Character name, file path, or "all" to enumerate every degree-1
        /// character of the group.
        #[arg(long = "char", default_value = "all")]
        character: String,
        /// Kronecker exponent for the tensor-power suite.
        #[arg(long, default_value_t = 2)]
        power: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the block-determinant bound det(flatten(A)) <= det(det_m(A)),
    /// either on one block matrix (--blocks) or as a seeded suite.
    Thompson {
        /// Path to a block-matrix JSON ({"m", "n", "blocks": [[matrix, ..], ..]}).
        #[arg(long)]
        blocks: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Compress the Kronecker power onto the orthonormal star basis.
    Compression,
    /// Evaluate each entry as a generalized matrix function of a
    /// submatrix (Hermitian inputs).
    Entrywise,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteKind {
    /// Scalar strong superadditivity.
    Scalar,
    /// Blockwise (completely) strong superadditivity in the Loewner order.
    Css,
    /// Kronecker-power strong superadditivity.
    Tensor,
    /// Induced-matrix strong superadditivity.
    Induced,
    /// Blockwise-determinant superadditivity, Loewner and scalar forms.
    Detm,
    /// Complete positivity of the blockwise map.
    Cp,
    /// Block-determinant bound and its Cholesky reformulation.
    Thompson,
    /// Every suite above, in order.
    All,
}

/// Errors carrying the machine-readable code used in the JSON error object.
enum CliError {
    Usage(String),
    Format(String),
    Core(gmf_core::Error),
}

impl CliError {
    fn code(&self) -> &str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Format(_) => "format",
            CliError::Core(e) => e.code(),
        }
    }

    fn detail(&self) -> String {
        match self {
            CliError::Usage(d) | CliError::Format(d) => d.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

impl From<gmf_core::Error> for CliError {
    fn from(e: gmf_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return emit_error(&CliError::Usage(e.to_string()));
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => emit_error(&e),
    }
}

/// Prints the JSON error object to standard output and maps every input
/// problem to the usage/format exit code.
fn emit_error(e: &CliError) -> ExitCode {
    log::error!("{}: {}", e.code(), e.detail());
    println!(
        "{}",
        serde_json::to_string(&json!({"error": e.code(), "detail": e.detail()}))
            .expect("error objects always serialize")
    );
    ExitCode::from(2)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let caps = Caps::from_env();
    match cli.command {
        Command::Eval {
            matrix,
            group,
            character,
            out,
        } => {
            let group = load_group(&group, None, &caps)?;
            let character = load_character(&character, &group)?;
            let matrix = load_json::<ComplexMatrix>(&matrix)?;
            let spec = GmfSpec::new(group, character)?;
            let value = spec.evaluate(&matrix)?;
            emit(&json!({"value": [value.re, value.im]}), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Induced {
            matrix,
            group,
            character,
            mode,
            out,
        } => {
            let group = load_group(&group, None, &caps)?;
            let character = load_character(&character, &group)?;
            let matrix = load_json::<ComplexMatrix>(&matrix)?;
            if !matrix.is_square() {
                return Err(CliError::Usage(format!(
                    "the induced matrix needs a square input, got {}x{}",
                    matrix.rows(),
                    matrix.cols()
                )));
            }
            let class = SymmetryClass::new(matrix.rows(), group, character, &caps)?;
            let (label, induced, delta_bar) = match mode {
                Mode::Compression => {
                    let basis = StarBasis::new(class, &caps)?;
                    let induced = basis.induced(&matrix, &caps)?;
                    ("compression", induced, basis.class().delta_bar().to_vec())
                }
                Mode::Entrywise => {
                    let induced = induced_entrywise(&matrix, &class, &caps)?;
                    ("entrywise", induced, class.delta_bar().to_vec())
                }
            };
            emit(
                &json!({"mode": label, "delta_bar": delta_bar, "matrix": induced}),
                out.as_deref(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Symclass {
            group,
            n,
            m,
            character,
            out,
        } => {
            let group = load_group(&group, m, &caps)?;
            if let Some(m) = m {
                if m != group.degree() {
                    return Err(CliError::Usage(format!(
                        "--m {} contradicts the group degree {}",
                        m,
                        group.degree()
                    )));
                }
            }
            let character = load_character(&character, &group)?;
            let class = SymmetryClass::new(n, group, character, &caps)?;
            let payload = json!({
                "m": class.m(),
                "n": class.n(),
                "group_order": class.group().order(),
                "character": class.character().name(),
                "sequence_count": sequence_count(class.m(), class.n(), &caps)?,
                "delta": class.delta(),
                "delta_bar": class.delta_bar(),
                "nu": class.nu(),
                "dimension": class.dimension(),
            });
            emit(&payload, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            m,
            n,
            group,
            character,
            power,
            trials,
            seed,
            tol,
            out,
        } => {
            let group = load_group(&group, Some(n), &caps)?;
            let characters = if character == "all" {
                enumerate_characters(&group)?
            } else {
                vec![load_character(&character, &group)?]
            };
            let mut reports = Vec::new();
            for character in characters {
                let cfg = TrialConfig::new(m, n, group.clone(), character, trials, seed, tol)?;
                for kind in expand(suite) {
                    let report = run_suite(kind, &cfg, power, &caps)?;
                    log::info!("{}", report.summary_line());
                    reports.push(report);
                }
            }
            let passed = reports.iter().all(SuiteReport::passed);
            emit(&json!({"passed": passed, "reports": reports}), out.as_deref())?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Thompson {
            blocks,
            m,
            n,
            trials,
            seed,
            tol,
            out,
        } => {
            if let Some(path) = blocks {
                let blocks = load_json::<BlockMatrix>(&path)?;
                let det_flat = determinant(&blocks.flatten())?;
                let det_blockwise = determinant(&det_m(&blocks)?)?;
                let margin = det_blockwise.re - det_flat.re;
                let scale = 1.0 + det_blockwise.re.abs().max(det_flat.re.abs());
                let satisfied = margin >= -tol * scale;
                emit(
                    &json!({
                        "det_flat": [det_flat.re, det_flat.im],
                        "det_blockwise": [det_blockwise.re, det_blockwise.im],
                        "margin": margin,
                        "satisfied": satisfied,
                    }),
                    out.as_deref(),
                )?;
                return Ok(if satisfied {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            let group = PermutationGroup::trivial(n, &caps)?;
            let character = Character::trivial(&group);
            let cfg = TrialConfig::new(m, n, group, character, trials, seed, tol)?;
            let report = suite_thompson(&cfg)?;
            log::info!("{}", report.summary_line());
            let passed = report.passed();
            emit(&json!({"passed": passed, "reports": [report]}), out.as_deref())?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn expand(kind: SuiteKind) -> Vec<SuiteKind> {
    match kind {
        SuiteKind::All => vec![
            SuiteKind::Scalar,
            SuiteKind::Css,
            SuiteKind::Tensor,
            SuiteKind::Induced,
            SuiteKind::Detm,
            SuiteKind::Cp,
            SuiteKind::Thompson,
        ],
        other => vec![other],
    }
}

fn run_suite(
    kind: SuiteKind,
    cfg: &TrialConfig,
    power: usize,
    caps: &Caps,
) -> Result<SuiteReport, CliError> {
    let report = match kind {
        SuiteKind::Scalar => suite_scalar_strong_superadd(cfg)?,
        SuiteKind::Css => suite_css(cfg)?,
        SuiteKind::Tensor => suite_tensor_superadd(cfg, power, caps)?,
        SuiteKind::Induced => suite_induced_superadd(cfg, caps)?,
        SuiteKind::Detm => suite_detm_superadd(cfg)?,
        SuiteKind::Cp => suite_complete_positivity(cfg)?,
        SuiteKind::Thompson => suite_thompson(cfg)?,
        SuiteKind::All => unreachable!("expanded before dispatch"),
    };
    Ok(report)
}

/// Reads and deserializes a JSON input file, reporting parse positions.
fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

/// Loads a group from a JSON file, or builds a named family: `S`, `A`, `C`
/// (with the degree appended, e.g. `S3`) or `trivial`.  A bare family name
/// takes `default_degree`.
fn load_group(
    arg: &str,
    default_degree: Option<usize>,
    caps: &Caps,
) -> Result<PermutationGroup, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        return load_json::<PermutationGroup>(path);
    }
    let (family, digits) = arg.split_at(
        arg.find(|c: char| c.is_ascii_digit())
            .unwrap_or(arg.len()),
    );
    let degree = if digits.is_empty() {
        default_degree.ok_or_else(|| {
            CliError::Usage(format!(
                "group {arg:?} has no degree; append one (e.g. {arg}3) or pass --n"
            ))
        })?
    } else {
        digits
            .parse::<usize>()
            .map_err(|e| CliError::Usage(format!("bad group degree in {arg:?}: {e}")))?
    };
    let group = match family {
        "S" => PermutationGroup::symmetric(degree, caps)?,
        "A" => PermutationGroup::alternating(degree, caps)?,
        "C" => PermutationGroup::cyclic(degree, caps)?,
        "trivial" => PermutationGroup::trivial(degree, caps)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown group {other:?}: expected a JSON file path or S<k>, A<k>, C<k>, trivial<k>"
            )))
        }
    };
    Ok(group)
}

/// Loads a character by built-in name or from a JSON description file.
fn load_character(arg: &str, group: &PermutationGroup) -> Result<Character, CliError> {
    match arg {
        "sign" => Ok(Character::sign(group)),
        "trivial" => Ok(Character::trivial(group)),
        other => {
            let path = Path::new(other);
            if !path.exists() {
                return Err(CliError::Usage(format!(
                    "unknown character {other:?}: expected \"sign\", \"trivial\", or a JSON file path"
                )));
            }
            let spec = load_json::<CharacterSpec>(path)?;
            Ok(spec.realize(group)?)
        }
    }
}

/// Writes pretty JSON (with a trailing newline) to `--out` or stdout.
fn emit(value: &serde_json::Value, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Format(format!("serialization failed: {e}")))?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        })?,
        None => print!("{text}"),
    }
    Ok(())
}
