mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz_core::algebra::{check_grading, leibniz_defects};
use leibniz_core::catalog::{self, simple_leibniz_sl2, sl2};
use leibniz_core::cochain::BlockSignature;
use leibniz_core::cohomology::{cohomology, graded_cohomology, GradedCocycles};
use leibniz_core::derivations::{decompose_derivation, delta_generators, derivation_basis, derivation_space};
use leibniz_core::verify::{verify_range, VerifyOptions};
use leibniz_core::{AlgebraStructure, Grading};

/// Environment variable capping the number of verification workers.
const WORKERS_ENV: &str = "LEIBNIZ_WORKERS";

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Exact cohomology computations for Leibniz algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity and the declared grading.
    Check {
        /// Algebra file to check.
        path: Option<PathBuf>,
        /// Check the built-in L_m instead.
        #[arg(long, conflicts_with = "path")]
        m: Option<usize>,
    },
    /// Dimensions of ZL^n, BL^n and HL^n with adjoint coefficients.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Split by degree of the algebra's grading.
        #[arg(long)]
        graded: bool,
        /// Projection and support dimensions of graded 2-cocycles per block.
        #[arg(long)]
        blocks: bool,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Run the full claim ledger for L_m over a range of m.
    VerifyPaper {
        /// Inclusive range `a..b` with a >= 2.
        #[arg(long, default_value = "2..8", value_parser = parse_range)]
        m_range: (usize, usize),
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check d^3 d^2 = 0 (m <= 4 only).
        #[arg(long)]
        deep: bool,
    },
    /// Derivation algebra and its decomposition.
    Derivations {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Write a built-in algebra in the text format.
    Build {
        #[arg(long, conflicts_with = "sl2", required_unless_present = "sl2")]
        m: Option<usize>,
        #[arg(long)]
        sl2: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Built-in L_m.
    #[arg(long)]
    m: Option<usize>,
    /// Algebra file.
    #[arg(long)]
    algebra: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("invalid range start {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("invalid range end {b:?}"))?;
    if a < 2 {
        return Err(format!("range must start at m >= 2, got {a}"));
    }
    if b < a {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// Failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<bool, UsageError>;

fn load_input(m: Option<usize>, path: Option<&PathBuf>) -> Result<(AlgebraStructure, Option<Grading>), UsageError> {
    match (m, path) {
        (Some(m), _) => {
            let (a, g) = simple_leibniz_sl2(m)?;
            Ok((a, Some(g)))
        }
        (None, Some(p)) => {
            let f = catalog::load(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?;
            Ok((f.algebra, f.grading))
        }
        (None, None) => Err(UsageError("no input given".into())),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), UsageError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_check(path: Option<PathBuf>, m: Option<usize>) -> CmdResult {
    let (a, g) = load_input(m, path.as_ref())?;
    let defects = leibniz_defects(&a);
    let grading_ok = g.as_ref().map(|g| check_grading(&a, g));
    print!("{}", render::check(&a, &defects, grading_ok));
    Ok(defects.is_empty() && grading_ok != Some(false))
}

fn cmd_cohomology(input: Input, n: usize, graded: bool, blocks: bool, format: Format) -> CmdResult {
    if n > 2 {
        return Err(UsageError(format!("--n {n}: cohomology is available for n <= 2")));
    }
    if blocks && n != 2 {
        return Err(UsageError("--blocks applies to n = 2 only".into()));
    }
    let (a, g) = load_input(input.m, input.algebra.as_ref())?;
    let need_grading = graded || blocks;
    let grading = match (&g, need_grading) {
        (Some(g), true) => Some(g),
        (None, true) => return Err(UsageError("--graded and --blocks need a grading line in the algebra file".into())),
        _ => None,
    };
    let report = match grading {
        Some(g) if graded => graded_cohomology(&a, g, n)?,
        _ => cohomology(&a, n)?,
    };
    let block_list = match grading {
        Some(g) if blocks => {
            let z = GradedCocycles::compute(&a, g)?;
            let mut list = z.all_blocks()?;
            let pair = [BlockSignature::new(vec![0, 1], 0), BlockSignature::new(vec![1, 0], 0)];
            if let Ok(b) = z.block(-1, &pair) {
                list.push(b);
            }
            Some(list)
        }
        _ => None,
    };
    let text = match format {
        Format::Json => render::cohomology_json(&report, block_list.as_deref())?,
        Format::Csv => render::cohomology_csv(&report, block_list.as_deref())?,
        Format::Pretty => render::cohomology_pretty(&report, block_list.as_deref()),
    };
    print!("{text}");
    Ok(true)
}

fn workers_from_env() -> Result<Option<usize>, UsageError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            let w: usize = v.trim().parse().map_err(|_| UsageError(format!("{WORKERS_ENV}={v:?} is not a number")))?;
            Ok(Some(w.max(1)))
        }
        Err(_) => Ok(None),
    }
}

fn cmd_verify(range: (usize, usize), format: Format, out: Option<PathBuf>, deep: bool) -> CmdResult {
    let opts = VerifyOptions { deep, workers: workers_from_env()? };
    let suite = verify_range(range.0..=range.1, &opts);
    let text = match format {
        Format::Json => render::suite_json(&suite)?,
        Format::Csv => render::suite_csv(&suite)?,
        Format::Pretty => render::suite_pretty(&suite),
    };
    emit(&text, out.as_ref())?;
    Ok(suite.pass)
}

fn cmd_derivations(input: Input, format: Format) -> CmdResult {
    let (a, g) = load_input(input.m, input.algebra.as_ref())?;
    let dim = derivation_space(&a).dim();
    let decomposition = g.as_ref().map(|g| {
        derivation_basis(&a)
            .iter()
            .map(|d| decompose_derivation(&a, g, d))
            .collect::<Result<Vec<_>, _>>()
    });
    let (decs, note) = match decomposition {
        Some(Ok(d)) => (Some(d), None),
        Some(Err(e)) => (None, Some(format!("decomposition unavailable: {e}"))),
        None => (None, Some("decomposition unavailable: no grading declared".to_string())),
    };
    let generators = g.as_ref().map(|g| delta_generators(&a, g)).unwrap_or_default();
    let summary = render::DerivationSummary { algebra: &a, dim, decompositions: decs.as_deref(), delta_generators: &generators, note };
    let text = match format {
        Format::Json => render::derivations_json(&summary)?,
        Format::Csv => render::derivations_csv(&summary)?,
        Format::Pretty => render::derivations_pretty(&summary),
    };
    print!("{text}");
    Ok(decs.map_or(true, |d| d.iter().all(|x| x.is_exact())))
}

fn cmd_build(m: Option<usize>, use_sl2: bool, out: Option<PathBuf>) -> CmdResult {
    let text = if use_sl2 {
        catalog::to_text(&sl2(), Some(&Grading::trivial(3)))
    } else {
        let (a, g) = simple_leibniz_sl2(m.expect("clap requires --m or --sl2"))?;
        catalog::to_text(&a, Some(&g))
    };
    emit(&text, out.as_ref())?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { path, m } => {
            if path.is_none() && m.is_none() {
                Err(UsageError("give an algebra file or --m".into()))
            } else {
                cmd_check(path, m)
            }
        }
        Command::Cohomology { input, n, graded, blocks, format } => cmd_cohomology(input, n, graded, blocks, format),
        Command::VerifyPaper { m_range, format, out, deep } => cmd_verify(m_range, format, out, deep),
        Command::Derivations { input, format } => cmd_derivations(input, format),
        Command::Build { m, sl2, out } => cmd_build(m, sl2, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
