//! Command-line front end: validate quiver documents, export the algebra
//! presentations, run the verification suite, and compare graded word
//! counts against the path-count oracle.
//!
//! Exit status: 0 when every check passes, 1 when at least one check
//! fails, 2 on input or usage errors. All output is deterministic,
//! including `verify --random` via the seed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quiver_dga::ce::{assemble_colimit, boundary_subalgebra, CeOptions};
use quiver_dga::dg::Presentation;
use quiver_dga::export::presentation_json;
use quiver_dga::ginzburg::{build_ginzburg, build_relative_ginzburg};
use quiver_dga::quiver::QuiverWithFrozen;
use quiver_dga::verify::{
    oracle, random::random_quiver, render_text, suite_report, verify_instance,
    verify_instance_shrinking, RunOptions,
};

#[derive(Parser)]
#[command(name = "quiver-dga", version, about = "Quiver dg-algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a quiver document.
    Validate(ValidateArgs),
    /// Build one of the algebras and emit its presentation as JSON.
    Build(BuildArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Graded word counts, with the path-count oracle at degree 0.
    Hilbert(HilbertArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Quiver document (JSON).
    path: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algebra {
    /// Ginzburg algebra of the quiver, frozen markings ignored.
    Ginzburg,
    /// Relative Ginzburg algebra of the quiver with its frozen subquiver.
    Relative,
    /// Chekanov-Eliashberg colimit.
    Ce,
    /// Boundary subalgebra of the colimit.
    Boundary,
}

#[derive(Args)]
struct BuildArgs {
    path: PathBuf,
    #[arg(long, default_value_t = 4)]
    n: i64,
    #[arg(long, value_enum)]
    algebra: Algebra,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
    /// Comma-separated values of n to verify.
    #[arg(long = "n-list", default_value = "4,5,6,7", value_delimiter = ',')]
    n_list: Vec<i64>,
    /// Write the report JSON here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Use the literal boundary differential on frozen edge pieces
    /// (regression mode; breaks d^2 = 0 whenever frozen arrows exist).
    #[arg(long = "paper-literal")]
    paper_literal: bool,
    /// Seed for the random instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of extra random instances to verify.
    #[arg(long, default_value_t = 0)]
    random: usize,
}

#[derive(Args)]
struct HilbertArgs {
    path: PathBuf,
    #[arg(long, default_value_t = 4)]
    n: i64,
    #[arg(long, default_value_t = 0)]
    degree: i64,
    #[arg(long = "max-len", default_value_t = 6)]
    max_len: usize,
    #[arg(long, value_enum, default_value_t = Algebra::Ce)]
    algebra: Algebra,
}

fn fail_usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn load_quiver(path: &PathBuf) -> Result<QuiverWithFrozen, ExitCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail_usage(format_args!("cannot read {}: {e}", path.display())))?;
    QuiverWithFrozen::parse(&text).map_err(fail_usage)
}

fn build_algebra(
    q: &QuiverWithFrozen,
    algebra: Algebra,
    n: i64,
) -> Result<Presentation, ExitCode> {
    let opts = CeOptions::default();
    let built = match algebra {
        Algebra::Ginzburg => build_ginzburg(q, n).map_err(|e| e.to_string()),
        Algebra::Relative => build_relative_ginzburg(q, n).map_err(|e| e.to_string()),
        Algebra::Ce => assemble_colimit(q, n, &opts).map_err(|e| e.to_string()),
        Algebra::Boundary => assemble_colimit(q, n, &opts)
            .map_err(|e| e.to_string())
            .and_then(|colimit| {
                let (b, closure) = boundary_subalgebra(&colimit, q).map_err(|e| e.to_string())?;
                if !closure.passed() {
                    return Err("boundary subalgebra is not differentially closed".to_string());
                }
                Ok(b)
            }),
    };
    built.map_err(fail_usage)
}

fn cmd_validate(args: &ValidateArgs) -> ExitCode {
    match load_quiver(&args.path) {
        Ok(q) => {
            println!(
                "ok: {} vertices, {} arrows ({} frozen), {} frozen vertices",
                q.vertices().len(),
                q.arrows().len(),
                q.frozen_arrows().count(),
                q.frozen_vertices().count(),
            );
            ExitCode::SUCCESS
        }
        Err(code) => code,
    }
}

fn cmd_build(args: &BuildArgs) -> ExitCode {
    let q = match load_quiver(&args.path) {
        Ok(q) => q,
        Err(code) => return code,
    };
    let p = match build_algebra(&q, args.algebra, args.n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let mut json = serde_json::to_string_pretty(&presentation_json(&p))
        .expect("presentation serializes");
    json.push('\n');
    if let Some(out) = &args.out {
        if let Err(e) = fs::write(out, &json) {
            return fail_usage(format_args!("cannot write {}: {e}", out.display()));
        }
    } else {
        print!("{json}");
    }
    eprintln!("{} generators over {} vertices", p.generator_count(), p.vertices().len());
    for (id, info) in p.generators() {
        eprintln!("  {id}: {} -> {} degree {}", info.src, info.tgt, info.degree);
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    if args.n_list.is_empty() {
        return fail_usage("--n-list must not be empty");
    }
    let q = match load_quiver(&args.path) {
        Ok(q) => q,
        Err(code) => return code,
    };
    let opts = RunOptions {
        paper_literal: args.paper_literal,
        ..RunOptions::default()
    };
    let mut reports = Vec::new();
    for &n in &args.n_list {
        reports.push(verify_instance(&q, n, &opts));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for _ in 0..args.random {
        let instance = random_quiver(&mut rng);
        for &n in &args.n_list {
            reports.push(verify_instance_shrinking(&instance, n, &opts));
        }
    }
    let suite = suite_report(reports);
    let mut json = serde_json::to_string_pretty(&suite).expect("report serializes");
    json.push('\n');
    match &args.report {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                return fail_usage(format_args!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{json}"),
    }
    eprint!("{}", render_text(&suite));
    if suite.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_hilbert(args: &HilbertArgs) -> ExitCode {
    let q = match load_quiver(&args.path) {
        Ok(q) => q,
        Err(code) => return code,
    };
    let p = match build_algebra(&q, args.algebra, args.n) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let count = p.graded_dimension(args.degree, args.max_len);
    println!(
        "degree {} words up to length {}: {}",
        args.degree, args.max_len, count
    );
    if args.degree != 0 {
        return ExitCode::SUCCESS;
    }
    // At degree 0 the words are exactly the paths of the underlying quiver
    // (of the frozen subquiver, for the boundary algebra), provided no
    // other generator can reach degree 0.
    let (oracle_quiver, min_n) = match args.algebra {
        Algebra::Ginzburg | Algebra::Relative => (q.clone(), 3),
        Algebra::Ce => (q.clone(), 4),
        Algebra::Boundary => (q.frozen_subquiver(), 4),
    };
    if args.n < min_n {
        println!("oracle: skipped (needs n >= {min_n} for this algebra)");
        return ExitCode::SUCCESS;
    }
    let expected = oracle::path_count(&oracle_quiver, args.max_len);
    let delta = count as i128 - expected as i128;
    println!("oracle: {expected}");
    println!("delta: {delta}");
    if delta == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate(args) => cmd_validate(&args),
        Command::Build(args) => cmd_build(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Hilbert(args) => cmd_hilbert(&args),
    }
}
