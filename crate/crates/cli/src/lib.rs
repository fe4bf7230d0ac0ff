//! File formats, reports and the `nlie` command-line driver.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nlie::algebra::{minimal_engel_cartan, EngelSearch, NLieAlgebra, EXHAUSTIVE_SEARCH_CAP};
use nlie::codim1::{find_codim1, Codim1Error, Codim1Options};
use nlie::field::Field;
use nlie::oracle::{
    all_codim1_subalgebras_with_covectors, filippov_random_check, random_algebra, GeneratorSpec,
    OracleError, Strategy, DEFAULT_BUDGET, DEFAULT_DENSITY,
};
use rayon::prelude::*;

use format::{AlgebraFile, AnyAlgebra, FieldDescriptor, FormatError};
use report::{
    basis, scalars, AnalyzeReport, CartanJson, Codim1Json, ContradictionJson, Describe,
    HyperplaneJson, OracleReport, ValidateReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "nlie", version, about = "Exact computations with n-Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Filippov identity on basis tuples, cross-checked on random vectors.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Random-vector trials for the cross-check.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Derived algebra, lower central series and a minimal Engel/Cartan subalgebra.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, env = "NLIE_MAX_EXT", default_value_t = 12)]
        max_ext: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        budget: usize,
    },
    /// Find a codimension-1 subalgebra of an (n+2)-dimensional n-Lie algebra.
    #[command(name = "find-codim1")]
    FindCodim1 {
        file: PathBuf,
        /// Largest total field extension degree.
        #[arg(long, env = "NLIE_MAX_EXT", default_value_t = 12)]
        max_ext: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random Engel tuples per extension level when exhaustive search is too large.
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        #[arg(long)]
        json: bool,
        /// Where contradiction reports are written (default: next to the input).
        #[arg(long)]
        report_dir: Option<PathBuf>,
    },
    /// List every codimension-1 subalgebra by exhaustive hyperplane enumeration.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate algebras. STRAT is `sparse[:DENSITY[:BUDGET]]`,
    /// `perfect-filter[:BUDGET[:DENSITY]]` or `fixture:NAME`.
    Generate {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        dim: usize,
        /// `Q`, `p` or `p^k`.
        #[arg(long)]
        field: String,
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        seed: u64,
        /// Instances use seeds `seed, seed + 1, ...`.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write one file per instance here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Runs the command line `args` (program name first), writing reports to
/// `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Validate {
            file,
            json,
            trials,
            seed,
        } => Ok(match load(&file)? {
            AnyAlgebra::Finite(a) => validate(&a, json, trials, seed, out),
            AnyAlgebra::Rational(a) => validate(&a, json, trials, seed, out),
        }),
        Command::Analyze {
            file,
            json,
            max_ext,
            seed,
            budget,
        } => {
            let search = EngelSearch {
                budget,
                seed,
                max_ext,
                exhaustive_cap: EXHAUSTIVE_SEARCH_CAP,
            };
            Ok(match load(&file)? {
                AnyAlgebra::Finite(a) => analyze(&a, json, &search, out),
                AnyAlgebra::Rational(a) => analyze(&a, json, &search, out),
            })
        }
        Command::FindCodim1 {
            file,
            max_ext,
            seed,
            budget,
            json,
            report_dir,
        } => {
            let opts = Codim1Options {
                max_ext,
                seed,
                budget,
                ..Codim1Options::default()
            };
            let report_path = contradiction_path(&file, report_dir.as_deref());
            match load(&file)? {
                AnyAlgebra::Finite(a) => codim1(&a, &opts, json, &report_path, out, err),
                AnyAlgebra::Rational(a) => codim1(&a, &opts, json, &report_path, out, err),
            }
        }
        Command::Oracle { file, json } => match load(&file)? {
            AnyAlgebra::Finite(a) => oracle(&a, json, out, err),
            AnyAlgebra::Rational(_) => Err(CliError::Usage(
                "the oracle enumerates hyperplanes and needs a finite field".into(),
            )),
        },
        Command::Generate {
            arity,
            dim,
            field,
            strategy,
            seed,
            count,
            out: dir,
        } => {
            let strategy = parse_strategy(&strategy)?;
            let fd = FieldDescriptor::from_spec(&field)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let file = AlgebraFile {
                arity,
                dimension: dim,
                field: fd,
                brackets: Vec::new(),
                intended_branch: None,
                note: None,
            };
            let job = GenerateJob {
                arity,
                dim,
                strategy,
                seed,
                count,
                dir,
            };
            match file.field().map_err(|e| CliError::Usage(e.to_string()))? {
                format::FieldKind::Finite(f) => generate(f, &job, out, err),
                format::FieldKind::Rational(f) => generate(f, &job, out, err),
            }
        }
    }
}

fn read_file(path: &Path) -> Result<AlgebraFile, CliError> {
    let text = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    let format_err = |source| CliError::Format {
        path: path.display().to_string(),
        source,
    };
    let text = std::str::from_utf8(&text).map_err(|e| {
        format_err(FormatError::Parse {
            line: 0,
            column: 0,
            message: format!("not UTF-8: {e}"),
        })
    })?;
    AlgebraFile::from_json(text).map_err(format_err)
}

fn load(path: &Path) -> Result<AnyAlgebra, CliError> {
    read_file(path)?.to_algebra().map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) {
    let text = serde_json::to_string_pretty(value).expect("plain data");
    let _ = writeln!(out, "{text}");
}

fn tuple_text(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn validate<F: Describe>(
    a: &NLieAlgebra<F>,
    json: bool,
    trials: usize,
    seed: u64,
    out: &mut dyn Write,
) -> i32 {
    let f = a.field();
    let v = a.validate();
    let r = filippov_random_check(a, trials, seed);
    let rep = ValidateReport::new(f, &v, &r);
    if json {
        emit_json(out, &rep);
    } else if let Some(w) = &rep.witness {
        let names = |ix: &[usize]| {
            ix.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join(", ")
        };
        let _ = writeln!(out, "invalid: the Filippov identity fails");
        let _ = writeln!(out, "  x = ({})", names(&w.x));
        let _ = writeln!(out, "  y = ({})", names(&w.y));
        let _ = writeln!(out, "  lhs [x.., [y..]]                = {}", tuple_text(&w.lhs));
        let _ = writeln!(out, "  rhs sum_i [y.., [x.., y_i], ..] = {}", tuple_text(&w.rhs));
        let _ = writeln!(
            out,
            "random check: {}",
            if rep.random_check_passed { "passed" } else { "failed" }
        );
    } else {
        let _ = writeln!(
            out,
            "valid: {} basis instances checked; random check {} ({} trials)",
            rep.checked,
            if rep.random_check_passed { "passed" } else { "FAILED" },
            rep.random_trials
        );
    }
    if rep.valid {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn analyze<F: Describe>(
    a: &NLieAlgebra<F>,
    json: bool,
    search: &EngelSearch,
    out: &mut dyn Write,
) -> i32 {
    let f = a.field();
    let a = NLieAlgebra::validated(a.tensor().clone());
    let valid = a.ensure_valid().is_ok();
    let derived = a.derived_algebra();
    let series: Vec<usize> = a.lower_central_series().iter().map(|s| s.dim()).collect();
    let (cartan, cartan_error, code) = if !valid {
        (None, Some("invalid algebra".to_string()), EXIT_INVALID)
    } else {
        match minimal_engel_cartan(&a, search) {
            Ok(r) => (Some(CartanJson::new(&r)), None, EXIT_OK),
            Err(e) => (None, Some(e.to_string()), EXIT_BUDGET),
        }
    };
    let rep = AnalyzeReport {
        field: f.info(),
        arity: a.arity(),
        dimension: a.dim(),
        valid,
        derived_dimension: derived.dim(),
        perfect: derived.is_full(),
        lower_central_series: series,
        nilpotent: a.is_nilpotent(),
        cartan,
        cartan_error,
    };
    if json {
        emit_json(out, &rep);
        return code;
    }
    let _ = writeln!(out, "arity {}, dimension {}", rep.arity, rep.dimension);
    let _ = writeln!(out, "valid: {}", rep.valid);
    let _ = writeln!(
        out,
        "derived algebra: dimension {}{}",
        rep.derived_dimension,
        if rep.perfect { " (perfect)" } else { "" }
    );
    let _ = writeln!(out, "lower central series dimensions: {:?}", rep.lower_central_series);
    let _ = writeln!(out, "nilpotent: {}", rep.nilpotent);
    if let Some(c) = &rep.cartan {
        let _ = writeln!(
            out,
            "minimal Engel subalgebra: dimension {} at extension degree {} ({} search, {} examined)",
            c.dimension,
            c.extension_degree,
            if c.exhaustive { "exhaustive" } else { "random" },
            c.examined
        );
        for row in &c.basis {
            let _ = writeln!(out, "  {}", tuple_text(row));
        }
        let _ = writeln!(out, "witness tuple:");
        for row in &c.witness {
            let _ = writeln!(out, "  {}", tuple_text(row));
        }
        let _ = writeln!(
            out,
            "nilpotent: {}, self-normalizing: {}",
            c.nilpotent, c.self_normalizing
        );
    }
    if let Some(e) = &rep.cartan_error {
        let _ = writeln!(out, "Engel/Cartan search: {e}");
    }
    code
}

fn contradiction_path(input: &Path, dir: Option<&Path>) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "algebra".into());
    let name = format!("{stem}.contradiction.json");
    match dir {
        Some(d) => d.join(name),
        None => input.with_file_name(name),
    }
}

fn codim1<F: Describe>(
    a: &NLieAlgebra<F>,
    opts: &Codim1Options,
    json: bool,
    report_path: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let r = match find_codim1(a, opts) {
        Ok(r) => r,
        Err(e) => {
            let code = match &e {
                Codim1Error::InvalidAlgebra => EXIT_INVALID,
                Codim1Error::DimensionMismatch { .. } => EXIT_USAGE,
                Codim1Error::PaperContradiction(rep) => {
                    let text = serde_json::to_string_pretty(&ContradictionJson::new(rep))
                        .expect("plain data");
                    std::fs::write(report_path, text + "\n")
                        .map_err(|e| CliError::io(report_path, e))?;
                    let _ = writeln!(err, "contradiction report written to {}", report_path.display());
                    EXIT_CONTRADICTION
                }
                _ => EXIT_BUDGET,
            };
            let _ = writeln!(err, "error: {e}");
            return Ok(code);
        }
    };
    let rep = Codim1Json::new(&r);
    if json {
        emit_json(out, &rep);
        return Ok(EXIT_OK);
    }
    let _ = writeln!(out, "branch: {}", rep.case.branch);
    let _ = writeln!(out, "extension degree: {}", rep.extension_degree);
    if let report::FieldInfo::Finite {
        modulus: Some(m), ..
    } = &rep.field
    {
        let _ = writeln!(out, "scalars in terms of g, a root of {m}");
    }
    let _ = writeln!(out, "codimension-1 subalgebra basis:");
    for row in &rep.basis {
        let _ = writeln!(out, "  {}", tuple_text(row));
    }
    if !rep.case.eigenvalues.is_empty() {
        let _ = writeln!(out, "eigenvalues: {}", rep.case.eigenvalues.join(", "));
    }
    if let Some(t) = &rep.case.theta {
        let _ = writeln!(out, "theta: {t}");
    }
    if !rep.case.vectors.is_empty() {
        let _ = writeln!(out, "vectors:");
        for row in &rep.case.vectors {
            let _ = writeln!(out, "  {}", tuple_text(row));
        }
    }
    Ok(EXIT_OK)
}

fn oracle<F: Describe>(
    a: &NLieAlgebra<F>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let f = a.field();
    let found = match all_codim1_subalgebras_with_covectors(a) {
        Ok(found) => found,
        Err(e @ OracleError::TooLarge { .. }) => {
            let _ = writeln!(err, "error: {e}");
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let q = f.order().expect("finite");
    let rep = OracleReport {
        field: f.info(),
        hyperplanes: (q.pow(a.dim() as u32) - 1) / (q - 1),
        count: found.len(),
        subalgebras: found
            .iter()
            .map(|(c, s)| HyperplaneJson {
                covector: scalars(f, c),
                basis: basis(f, s),
            })
            .collect(),
    };
    if json {
        emit_json(out, &rep);
    } else {
        let _ = writeln!(
            out,
            "{} of {} hyperplanes are subalgebras (listed by covector)",
            rep.count, rep.hyperplanes
        );
        for h in &rep.subalgebras {
            let _ = writeln!(out, "  {}", tuple_text(&h.covector));
        }
    }
    Ok(EXIT_OK)
}

/// Parses `sparse[:DENSITY[:BUDGET]]`, `perfect-filter[:BUDGET[:DENSITY]]`
/// and `fixture:NAME`.
pub fn parse_strategy(text: &str) -> Result<Strategy, String> {
    let mut parts = text.split(':');
    let kind = parts.next().unwrap_or_default();
    let rest: Vec<&str> = parts.collect();
    let density = |s: Option<&&str>| -> Result<f64, String> {
        s.map_or(Ok(DEFAULT_DENSITY), |s| {
            s.parse().map_err(|_| format!("bad density {s:?}"))
        })
    };
    let budget = |s: Option<&&str>| -> Result<usize, String> {
        s.map_or(Ok(DEFAULT_BUDGET), |s| {
            s.parse().map_err(|_| format!("bad budget {s:?}"))
        })
    };
    match (kind, rest.len()) {
        ("sparse", 0..=2) => Ok(Strategy::Sparse {
            density: density(rest.first())?,
            budget: budget(rest.get(1))?,
        }),
        ("perfect-filter", 0..=2) => Ok(Strategy::PerfectFilter {
            budget: budget(rest.first())?,
            density: density(rest.get(1))?,
        }),
        ("fixture", 1) => Ok(Strategy::Fixture(rest[0].to_string())),
        _ => Err(format!(
            "unknown strategy {text:?}; expected sparse[:DENSITY[:BUDGET]], \
             perfect-filter[:BUDGET[:DENSITY]] or fixture:NAME"
        )),
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

struct GenerateJob {
    arity: usize,
    dim: usize,
    strategy: Strategy,
    seed: u64,
    count: usize,
    dir: Option<PathBuf>,
}

fn generate<F>(
    f: F,
    job: &GenerateJob,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError>
where
    F: Field + Send + Sync,
    F::Elem: Send + Sync,
{
    let results: Vec<(u64, Result<NLieAlgebra<F>, OracleError>)> = (0..job.count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = job.seed.wrapping_add(i);
            let spec = GeneratorSpec {
                arity: job.arity,
                dim: job.dim,
                field: f.clone(),
                strategy: job.strategy.clone(),
                seed,
            };
            (seed, random_algebra(&spec))
        })
        .collect();
    if let Some(dir) = &job.dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut code = EXIT_OK;
    for (seed, r) in results {
        let a = match r {
            Ok(a) => a,
            Err(e @ (OracleError::NotFound { .. } | OracleError::FixtureInvalid(_))) => {
                let _ = writeln!(err, "seed {seed}: {e}");
                code = EXIT_BUDGET;
                continue;
            }
            Err(e) => return Err(CliError::Usage(e.to_string())),
        };
        let file = AlgebraFile::from_algebra(&a);
        match &job.dir {
            Some(dir) => {
                let path = dir.join(format!("n{}-d{}-s{seed}.json", job.arity, job.dim));
                std::fs::write(&path, file.to_json()).map_err(|e| CliError::io(&path, e))?;
            }
            None if job.count == 1 => {
                let _ = out.write_all(file.to_json().as_bytes());
            }
            None => {
                let _ = writeln!(out, "{}", serde_json::to_string(&file).expect("plain data"));
            }
        }
    }
    Ok(code)
}
