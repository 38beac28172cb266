//! Command-line interface: argument parsing, engine dispatch, JSON/table
//! rendering and exit-code mapping.

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::direct::{DirectEngine, DEFAULT_MAX_DEGREE};
use crate::extremes::movement_classes;
use crate::finiteness::{decide_finiteness, witness_nonvanishing, FinitenessVerdict};
use crate::formula::{theorem1_dims, theorem2_dims};
use crate::linalg::FieldSpec;
use crate::quiver::{classify, parse_quiver, Quiver, DEFAULT_PATH_CAP};
use crate::report::{CohomologyReport, DegreeDim};
use crate::verify::run_verify;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hochschild",
    about = "Hochschild cohomology dimensions of truncated quiver algebras kQ/k^nQ",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the dimension sequence dim H^0 .. dim H^D.
    Dims(DimsArgs),
    /// Decide finiteness of the cohomology algebra and certify the verdict.
    Finiteness(FinitenessArgs),
    /// List movement-equivalence classes and extreme counts of (j // ni).
    Extremes(ExtremesArgs),
    /// Cross-check the engines, the complex identities and the oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Direct,
    Formula,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Args)]
struct DimsArgs {
    /// Quiver description file.
    #[arg(long)]
    quiver: PathBuf,
    /// Truncation exponent n >= 2 of kQ/k^nQ.
    #[arg(long)]
    n: usize,
    /// Field characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Highest cohomological degree to report.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = EngineChoice::Both)]
    engine: EngineChoice,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Cap on the size of any materialized path-pair basis.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    max_basis: usize,
}

#[derive(Args)]
struct FinitenessArgs {
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Number of witness certificates (r = 0 .. count-1) for the infinite case.
    #[arg(long, default_value_t = 2)]
    certificates: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    max_basis: usize,
}

#[derive(Args)]
struct ExtremesArgs {
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long)]
    n: usize,
    /// The index i of the parallel-path spaces (j // ni).
    #[arg(long, default_value_t = 1)]
    i: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    max_basis: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long)]
    n: usize,
    /// Characteristics to check (repeatable).
    #[arg(long = "char", default_values_t = vec![0u64, 2, 3, 5])]
    characteristics: Vec<u64>,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    max_basis: usize,
    /// Bar-oracle bound on dim A.
    #[arg(long, default_value_t = crate::bar::DEFAULT_DIM_BOUND)]
    dim_bound: usize,
}

#[derive(Serialize)]
struct AlgebraInfo {
    name: String,
    vertices: usize,
    arrows: usize,
    n: usize,
}

#[derive(Serialize)]
struct CertificateOut {
    r: usize,
    degree: usize,
    holds: Option<bool>,
    note: Option<String>,
}

#[derive(Serialize)]
struct FinitenessOut {
    verdict: String,
    witness: Option<String>,
    certificates: Vec<CertificateOut>,
}

#[derive(Serialize)]
struct DimsOut {
    algebra: AlgebraInfo,
    #[serde(rename = "char")]
    characteristic: u64,
    dims: Vec<DegreeDim>,
    agreement: Option<bool>,
    finiteness: FinitenessOut,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct ExtremeClassOut {
    j: usize,
    basis_size: usize,
    classes: usize,
    extremes: usize,
}

#[derive(Serialize)]
struct ExtremesOut {
    algebra: AlgebraInfo,
    i: usize,
    counts: Vec<ExtremeClassOut>,
}

fn load_quiver(path: &FsPath) -> Result<(Quiver, String)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "quiver".to_string());
    Ok((parse_quiver(&text)?, name))
}

fn algebra_info(q: &Quiver, name: &str, n: usize) -> AlgebraInfo {
    AlgebraInfo {
        name: name.to_string(),
        vertices: q.vertex_count(),
        arrows: q.arrow_count(),
        n,
    }
}

fn certificates(
    q: &Quiver,
    n: usize,
    field: FieldSpec,
    count: usize,
    cap: usize,
    warnings: &mut Vec<String>,
) -> Result<Vec<CertificateOut>> {
    let class = classify(q);
    let Some(cycle) = class.shortest_cycle else {
        return Ok(Vec::new());
    };
    let e = cycle.len();
    let mut out = Vec::new();
    for r in 0..count {
        match witness_nonvanishing(q, n, field, r, cap) {
            Ok(holds) => out.push(CertificateOut {
                r,
                degree: 2 * r * e + 1,
                holds: Some(holds),
                note: None,
            }),
            Err(Error::CapExceeded(msg)) => {
                warnings.push(format!("certificate r={r} skipped: {msg}"));
                out.push(CertificateOut {
                    r,
                    degree: 2 * r * e + 1,
                    holds: None,
                    note: Some("basis cap exceeded".to_string()),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The formula engine for a given quiver, or an explanation why it does
/// not apply.
fn formula_dims(
    q: &Quiver,
    n: usize,
    field: FieldSpec,
    max_degree: usize,
    cap: usize,
) -> Result<CohomologyReport> {
    let class = classify(q);
    if !class.weakly_connected {
        return Err(Error::InvalidInput(
            "the formula engine assumes a connected quiver; use --engine direct".into(),
        ));
    }
    match class.basic_cycle_length {
        Some(1) => Err(Error::InvalidInput(
            "closed-form table not applicable to the loop (e = 1); use --engine direct".into(),
        )),
        Some(e) => theorem1_dims(e, n, field, max_degree),
        None => theorem2_dims(q, n, field, max_degree, cap),
    }
}

fn run_dims(args: &DimsArgs) -> Result<(String, i32)> {
    let (q, name) = load_quiver(&args.quiver)?;
    let field = FieldSpec::new(args.characteristic)?;
    let mut warnings = Vec::new();
    let mut agreement = None;
    let mut mismatch = false;

    let direct = match args.engine {
        EngineChoice::Formula => None,
        _ => {
            let mut engine = DirectEngine::new(&q, &name, args.n, args.max_degree, args.max_basis)?;
            Some(engine.dims(field))
        }
    };
    let formula = match args.engine {
        EngineChoice::Direct => None,
        EngineChoice::Formula => Some(formula_dims(&q, args.n, field, args.max_degree, args.max_basis)?),
        EngineChoice::Both => match formula_dims(&q, args.n, field, args.max_degree, args.max_basis)
        {
            Ok(r) => Some(r),
            Err(Error::InvalidInput(msg)) => {
                warnings.push(format!("formula engine unavailable: {msg}"));
                None
            }
            Err(e) => return Err(e),
        },
    };

    let dims: Vec<DegreeDim> = match (&direct, &formula) {
        (Some(d), Some(f)) => {
            let shared = d.dims.len().min(f.dims.len());
            let agree = (0..shared).all(|m| d.dims[m].value == f.dims[m].value);
            agreement = Some(agree);
            mismatch = !agree;
            d.dims
                .iter()
                .take(shared)
                .map(|dd| DegreeDim {
                    degree: dd.degree,
                    value: dd.value,
                    engine: "both".to_string(),
                })
                .collect()
        }
        (Some(d), None) => d.dims.clone(),
        (None, Some(f)) => f.dims.clone(),
        (None, None) => unreachable!("at least one engine always runs"),
    };
    if let Some(d) = &direct {
        warnings.extend(d.warnings.iter().cloned());
        if let Some(m) = d.truncated_at {
            warnings.push(format!("direct engine truncated before degree {m}"));
        }
    }

    let verdict = decide_finiteness(&q, args.n);
    let (verdict_str, witness) = match &verdict {
        FinitenessVerdict::Finite => ("finite".to_string(), None),
        FinitenessVerdict::Infinite { witness } => {
            ("infinite".to_string(), Some(witness.label(&q)))
        }
    };
    let certs = match &verdict {
        FinitenessVerdict::Finite => Vec::new(),
        FinitenessVerdict::Infinite { .. } => {
            certificates(&q, args.n, field, 2, args.max_basis, &mut warnings)?
        }
    };

    let out = DimsOut {
        algebra: algebra_info(&q, &name, args.n),
        characteristic: args.characteristic,
        dims,
        agreement,
        finiteness: FinitenessOut {
            verdict: verdict_str,
            witness,
            certificates: certs,
        },
        warnings,
    };
    let rendered = match args.format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Table => {
            let mut s = String::new();
            s.push_str(&format!(
                "{} (|Q0|={}, |Q1|={}), n={}, char={}\n",
                out.algebra.name, out.algebra.vertices, out.algebra.arrows, out.algebra.n,
                out.characteristic
            ));
            for d in &out.dims {
                s.push_str(&format!("H^{}  {}  [{}]\n", d.degree, d.value, d.engine));
            }
            if let Some(a) = out.agreement {
                s.push_str(&format!("engines agree: {a}\n"));
            }
            s.push_str(&format!("cohomology algebra: {}\n", out.finiteness.verdict));
            for w in &out.warnings {
                s.push_str(&format!("warning: {w}\n"));
            }
            s
        }
    };
    Ok((rendered, if mismatch { 3 } else { 0 }))
}

fn run_finiteness(args: &FinitenessArgs) -> Result<(String, i32)> {
    let (q, name) = load_quiver(&args.quiver)?;
    let field = FieldSpec::new(args.characteristic)?;
    let mut warnings = Vec::new();
    let verdict = decide_finiteness(&q, args.n);
    let (verdict_str, witness, certs) = match &verdict {
        FinitenessVerdict::Finite => ("finite".to_string(), None, Vec::new()),
        FinitenessVerdict::Infinite { witness } => (
            "infinite".to_string(),
            Some(witness.label(&q)),
            certificates(&q, args.n, field, args.certificates, args.max_basis, &mut warnings)?,
        ),
    };
    #[derive(Serialize)]
    struct Out {
        algebra: AlgebraInfo,
        #[serde(rename = "char")]
        characteristic: u64,
        finiteness: FinitenessOut,
        warnings: Vec<String>,
    }
    let out = Out {
        algebra: algebra_info(&q, &name, args.n),
        characteristic: args.characteristic,
        finiteness: FinitenessOut {
            verdict: verdict_str,
            witness,
            certificates: certs,
        },
        warnings,
    };
    let rendered = match args.format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Table => {
            let mut s = format!(
                "{}: cohomology algebra is {}\n",
                out.algebra.name, out.finiteness.verdict
            );
            if let Some(w) = &out.finiteness.witness {
                s.push_str(&format!("shortest oriented cycle: {w}\n"));
            }
            for c in &out.finiteness.certificates {
                s.push_str(&format!(
                    "H^{} != 0 certified: {}\n",
                    c.degree,
                    c.holds.map_or("skipped".to_string(), |h| h.to_string())
                ));
            }
            s
        }
    };
    // A failed certificate contradicts the verdict and is reported as an error.
    let bad = out
        .finiteness
        .certificates
        .iter()
        .any(|c| c.holds == Some(false));
    Ok((rendered, if bad { 1 } else { 0 }))
}

fn run_extremes(args: &ExtremesArgs) -> Result<(String, i32)> {
    let (q, name) = load_quiver(&args.quiver)?;
    if args.i == 0 {
        return Err(Error::InvalidInput("the index i must be >= 1".into()));
    }
    let mut counts = Vec::new();
    for j in 1..=args.n.saturating_sub(2) {
        let classes = movement_classes(&q, args.n, args.i, j, args.max_basis)?;
        counts.push(ExtremeClassOut {
            j,
            basis_size: classes.iter().map(|c| c.members.len()).sum(),
            classes: classes.len(),
            extremes: classes.iter().filter(|c| c.is_j_extreme()).count(),
        });
    }
    let out = ExtremesOut {
        algebra: algebra_info(&q, &name, args.n),
        i: args.i,
        counts,
    };
    let rendered = match args.format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Table => {
            let mut s = format!("{} n={} i={}\n", out.algebra.name, args.n, args.i);
            s.push_str("j  pairs  classes  extremes\n");
            for c in &out.counts {
                s.push_str(&format!(
                    "{}  {}  {}  {}\n",
                    c.j, c.basis_size, c.classes, c.extremes
                ));
            }
            s
        }
    };
    Ok((rendered, 0))
}

fn run_verify_cmd(args: &VerifyArgs) -> Result<(String, i32)> {
    let (q, name) = load_quiver(&args.quiver)?;
    let report = run_verify(
        &q,
        &name,
        args.n,
        &args.characteristics,
        args.max_degree,
        args.max_basis,
        args.dim_bound,
    )?;
    let rendered = to_json(&report);
    Ok((rendered, if report.all_passed { 0 } else { 1 }))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Parse `args`, run the selected subcommand, print its output, and return
/// the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path with code 0.
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Dims(a) => run_dims(a),
        Command::Finiteness(a) => run_finiteness(a),
        Command::Extremes(a) => run_extremes(a),
        Command::Verify(a) => run_verify_cmd(a),
    };
    match result {
        Ok((rendered, code)) => {
            print!("{rendered}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
