//! Batch CLI: exact polynomial root counting and kernel analysis.
//!
//! Machine-readable JSON goes to stdout (byte-deterministic in exact
//! mode); a short human summary goes to stderr. Exit codes are stable:
//! 0 success, 2 input/schema error, 3 domain violation, 4 oracle
//! disagreement, 1 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use discrimina::analyzer::{
    analyze_exact, oracle_check, AnalysisReport, AnalyzeOptions, Classification, Mode,
    NegativeCount,
};
use discrimina::discrimination::{
    count_distinct_positive_roots, count_distinct_real_roots, CountKind, RootCountReport, SignList,
};
use discrimina::error::Error;
use discrimina::input::{parse_coeff_array, KernelDocument, NumericAdapter};
use discrimina::quad::parse_tolerance;
use discrimina::report::{analysis_json, root_count_json};
use discrimina::Polynomial;

#[derive(Parser)]
#[command(
    name = "discrimina",
    version,
    about = "Exact root counting and positive-solution analysis for rank-2 separable integral equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count distinct real roots of a polynomial (ascending rational
    /// coefficients, e.g. '["-1","0","1"]' for x^2 - 1).
    CountReal {
        /// Inline JSON array of coefficient strings, or a path to a file
        /// containing one.
        #[arg(long)]
        coeffs: String,
    },
    /// Count distinct positive roots; zero roots are stripped and their
    /// multiplicity reported.
    CountPositive {
        #[arg(long)]
        coeffs: String,
    },
    /// Analyze a kernel document: solution counts, classification, and
    /// (with --solve) explicit solutions with residuals.
    Analyze {
        /// Path to a kernel document (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Construct the solutions explicitly and verify residuals.
        #[arg(long)]
        solve: bool,
        /// Cross-check every count against the Sturm oracle.
        #[arg(long)]
        oracle: bool,
        /// Root/lambda enclosure tolerance for --solve (rational or
        /// decimal string).
        #[arg(long, default_value = "1e-12")]
        tol: String,
        /// Residual verification grid size.
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        /// Also write the JSON report to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ParseRational(_)
        | Error::ParseDecimal(_)
        | Error::SchemaViolation(_)
        | Error::MatrixShape { .. } => 2,
        Error::ZeroPolynomial(_)
        | Error::ConstantPolynomial(_)
        | Error::ZeroConstantTerm
        | Error::PositivityViolation(_)
        | Error::AlphaSign(_)
        | Error::PiecewiseInvalid(_)
        | Error::InvalidTolerance
        | Error::QuadratureDiverged
        | Error::DegenerateInterval
        | Error::NoBracket
        | Error::WrongN { .. } => 3,
        Error::OracleMismatch(_) => 4,
        Error::NonSquareMatrix { .. }
        | Error::Internal(_)
        | Error::PathDisagreement { .. }
        | Error::BoundViolation { .. } => 1,
    }
}

fn load_coeffs(arg: &str) -> Result<Polynomial, Error> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::SchemaViolation(format!("cannot read {arg}: {e}")))?
    };
    parse_coeff_array(&text)
}

fn run_count_real(coeffs: &str) -> Result<(), Error> {
    let poly = load_coeffs(coeffs)?;
    let report = count_distinct_real_roots(&poly)?;
    emit_count(&report, None, &poly);
    Ok(())
}

fn run_count_positive(coeffs: &str) -> Result<(), Error> {
    let poly = load_coeffs(coeffs)?;
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial("count-positive"));
    }
    let (cofactor, zero_mult) = poly.strip_zero_roots();
    let report = if cofactor.degree() == Some(0) {
        RootCountReport {
            kind: CountKind::DistinctPositive,
            mu: 0,
            nu: 0,
            count: 0,
            sign_list: SignList::new(Vec::new()).unwrap(),
            revised: SignList::new(Vec::new()).unwrap(),
        }
    } else {
        count_distinct_positive_roots(&cofactor)?
    };
    emit_count(&report, Some(zero_mult), &poly);
    Ok(())
}

fn emit_count(report: &RootCountReport, zero_mult: Option<usize>, poly: &Polynomial) {
    let json = root_count_json(report, zero_mult);
    println!("{}", serde_json::to_string_pretty(&json).unwrap());
    let what = match report.kind {
        CountKind::DistinctReal => "distinct real roots",
        CountKind::DistinctPositive => "distinct positive roots",
    };
    eprintln!("{poly}: {} {what}", report.count);
    if let Some(k) = zero_mult {
        if k > 0 {
            eprintln!("zero root stripped with multiplicity {k}");
        }
    }
}

fn run_analyze(
    input: &PathBuf,
    solve: bool,
    oracle: bool,
    tol: &str,
    grid: usize,
    emit: Option<&PathBuf>,
) -> Result<(), Error> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::SchemaViolation(format!("cannot read {}: {e}", input.display())))?;
    let doc = KernelDocument::from_json(&text)?;
    let (tol_rat, _) = parse_tolerance(tol)?;

    let report: AnalysisReport = if doc.is_numeric() {
        let adapter = NumericAdapter::from_document(&doc)?;
        let (_, tol_f) = parse_tolerance(doc.tol.as_deref().unwrap_or("1e-12"))?;
        let nm = adapter.numeric_moments(tol_f)?;
        let mut r = discrimina::analyzer::analyze_numeric(&nm)?;
        if solve {
            r.notes.push(
                "--solve is only available in exact mode; candidates were not constructed".into(),
            );
        }
        r
    } else {
        let spec = doc.to_kernel_spec()?;
        let opts = AnalyzeOptions {
            solve,
            tol: tol_rat,
            grid,
        };
        analyze_exact(&spec, &opts)?
    };

    // Validation only: the emitted report must not depend on --oracle.
    if oracle {
        if let (Some(alpha), Classification::FiniteCount { m }) =
            (&report.alpha, &report.classification)
        {
            oracle_check(alpha, *m)?;
            eprintln!("oracle: Sturm counts agree");
        }
    }

    let json = analysis_json(&report);
    let pretty = serde_json::to_string_pretty(&json).unwrap();
    println!("{pretty}");
    if let Some(path) = emit {
        std::fs::write(path, pretty.as_bytes())
            .map_err(|e| Error::SchemaViolation(format!("cannot write {}: {e}", path.display())))?;
    }

    let mode = match report.mode {
        Mode::Exact => "exact",
        Mode::Numeric => "numeric",
    };
    let summary = match &report.classification {
        Classification::NoPositiveSolutions => "no positive solutions".to_string(),
        Classification::InfiniteFamily { .. } => "infinitely many positive solutions".to_string(),
        Classification::FiniteCount { m } => format!("{m} positive solution(s)"),
    };
    let negative = match report.negative {
        NegativeCount::Finite(k) => format!("{k} negative"),
        NegativeCount::Infinite => "infinitely many negative".to_string(),
    };
    eprintln!(
        "n = {}, {mode} mode: {summary}, {negative}; certified = {}",
        report.n, report.certified
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::CountReal { coeffs } => run_count_real(coeffs),
        Command::CountPositive { coeffs } => run_count_positive(coeffs),
        Command::Analyze {
            input,
            solve,
            oracle,
            tol,
            grid,
            emit,
        } => run_analyze(input, *solve, *oracle, tol, *grid, emit.as_ref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
