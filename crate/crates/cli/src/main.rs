//! Command-line front end: certified norms, obstruction suites, odometer
//! runs with JSONL traces and resumable checkpoints, vine elimination
//! reports, the embedded atlas, and Temperley-Lieb computations.
//!
//! Exit codes: 0 success / all tests pass, 1 an obstruction failed,
//! 2 structural or parse error, 3 budget exhausted.

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use std::io::Write;
use std::process::ExitCode;
use subfactor_core::atlas;
use subfactor_core::bigraph::{Bigraph, BigraphPair};
use subfactor_core::obstructions::{run_suite, suite_passes, SuiteOptions, TestKind};
use subfactor_core::odometer::{
    checkpoint_from_json, checkpoint_to_json, run, vine_elimination, ClassificationStatement,
    GenerationCaps, OdometerBudget, RunStatus, VineOptions,
};
use subfactor_core::poly::AlgebraicReal;
use subfactor_core::spectral::{graph_norm_exact, norm_bounds, ExactLimit, NormEnclosure};
use subfactor_core::tl;

#[derive(Parser)]
#[command(name = "subfactor", version, about = "principal graph toolkit", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified graph norm of a bwd-encoded graph
    Norm(NormArgs),
    /// Run the obstruction suite on a pair, one JSONL verdict per line
    Check(CheckArgs),
    /// Enumerate weeds and vines under an index limit
    Odometer(OdometerArgs),
    /// Analyze every translate of a vine
    Vines(VinesArgs),
    /// Print the embedded corpus
    Atlas(AtlasArgs),
    /// Temperley-Lieb computations
    Tl(TlArgs),
}

#[derive(Args)]
struct NormArgs {
    /// bwd-encoded graph
    graph: String,
    /// Sturm-certified enclosure instead of the fast power-iteration bounds
    #[arg(long)]
    exact: bool,
    /// requested enclosure width (decimal, e.g. 1e-9)
    #[arg(long, default_value = "1e-10")]
    eps: String,
}

#[derive(Args)]
struct CheckArgs {
    /// pair as two bwd encodings joined by a comma
    pair: String,
    /// comma-separated test names (default: all)
    #[arg(long)]
    tests: Option<String>,
    /// keep running after the first failure
    #[arg(long)]
    exhaustive: bool,
    /// depth-safe mode for pairs still subject to extension
    #[arg(long)]
    weed_mode: bool,
    /// index limit, enables the tail bound in weed mode
    #[arg(long)]
    limit: Option<String>,
}

#[derive(Args)]
struct OdometerArgs {
    /// root pair
    #[arg(long)]
    root: Option<String>,
    /// exact index limit, e.g. "3+sqrt(2)" or "(5+sqrt(13))/2"
    #[arg(long)]
    limit: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
    #[arg(long, default_value_t = 100_000)]
    max_weeds: usize,
    #[arg(long, default_value_t = 24)]
    max_depth: usize,
    /// JSONL event stream destination (stdout if omitted)
    #[arg(long)]
    out: Option<String>,
    /// checkpoint file to write on exit
    #[arg(long)]
    checkpoint: Option<String>,
    /// resume from a checkpoint file
    #[arg(long)]
    resume: Option<String>,
    /// worker threads for candidate screening
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct VinesArgs {
    /// vine pair
    #[arg(long)]
    vine: String,
    /// largest supertransitivity to test
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 10_000)]
    prime_bound: u64,
    /// also apply the d-number test to the global index
    #[arg(long)]
    dnumber: bool,
    /// optional index limit for norm cuts
    #[arg(long)]
    limit: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct AtlasArgs {
    /// re-validate every entry (parse, certified index, full suite)
    #[arg(long)]
    validate: bool,
}

#[derive(Args)]
struct TlArgs {
    #[command(subcommand)]
    sub: TlCommand,
}

#[derive(Subcommand)]
enum TlCommand {
    /// Jones-Wenzl idempotent coefficients
    Jw {
        #[arg(long)]
        n: usize,
        /// evaluate at an exact loop value, e.g. "2" or "(1+sqrt(5))/2"
        #[arg(long)]
        delta: Option<String>,
    },
    /// trace of a Jones-Wenzl idempotent as a polynomial in the loop value
    Trace {
        #[arg(long)]
        jw: usize,
    },
    /// count and list the diagram basis
    Basis {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Norm(a) => cmd_norm(a),
        Command::Check(a) => cmd_check(a),
        Command::Odometer(a) => cmd_odometer(a),
        Command::Vines(a) => cmd_vines(a),
        Command::Atlas(a) => cmd_atlas(a),
        Command::Tl(a) => cmd_tl(a),
    }
}

fn parse_eps(s: &str) -> Result<BigRational, String> {
    // accepts "1e-9" or plain decimals
    let v: f64 = s.parse().map_err(|_| format!("bad eps {}", s))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("bad eps {}", s));
    }
    BigRational::from_float(v).ok_or_else(|| format!("bad eps {}", s))
}

fn print_enclosure(label: &str, enc: &NormEnclosure) {
    let mid = enc.to_f64();
    let w = subfactor_core::poly::intpoly::rational_to_f64(&enc.width());
    println!("{} = {:.10} (width <= {:.1e})", label, mid, w.max(1e-300));
}

fn cmd_norm(a: NormArgs) -> Result<ExitCode, String> {
    let g = Bigraph::parse_bwd(&a.graph).map_err(|e| e.to_string())?;
    let enc = if a.exact {
        let eps = parse_eps(&a.eps)?;
        graph_norm_exact(&g, &eps)
    } else {
        norm_bounds(&g, 60)
    };
    print_enclosure("norm  ", &enc);
    let (lo2, hi2) = enc.squared();
    let sq = NormEnclosure { lo: lo2, hi: hi2 };
    print_enclosure("norm^2", &sq);
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(a: CheckArgs) -> Result<ExitCode, String> {
    let p = BigraphPair::parse_pair(&a.pair).map_err(|e| e.to_string())?;
    let tests: Vec<TestKind> = match &a.tests {
        None => TestKind::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(|t| TestKind::from_name(t.trim()).ok_or_else(|| format!("unknown test {}", t)))
            .collect::<Result<_, _>>()?,
    };
    let limit = match &a.limit {
        None => None,
        Some(s) => Some(ExactLimit::parse(s).ok_or_else(|| format!("bad limit {}", s))?),
    };
    let verdicts = run_suite(
        &p,
        &tests,
        SuiteOptions {
            weed_mode: a.weed_mode,
            exhaustive: a.exhaustive,
            limit: limit.as_ref(),
        },
    );
    for v in &verdicts {
        println!("{}", serde_json::to_string(v).unwrap());
    }
    if suite_passes(&verdicts) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn install_pool(jobs: Option<usize>) -> Result<(), String> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn cmd_odometer(a: OdometerArgs) -> Result<ExitCode, String> {
    install_pool(a.jobs)?;
    let statement = match &a.resume {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
            checkpoint_from_json(&text).map_err(|e| e.to_string())?.0
        }
        None => {
            let root_str = a.root.as_deref().ok_or("--root required unless resuming")?;
            let limit_str = a.limit.as_deref().ok_or("--limit required unless resuming")?;
            let root = BigraphPair::parse_pair(root_str).map_err(|e| e.to_string())?;
            ClassificationStatement::trivial(root, limit_str).map_err(|e| e.to_string())?
        }
    };
    let budget = OdometerBudget {
        max_steps: a.max_steps,
        max_weeds: a.max_weeds,
        max_depth: a.max_depth,
    };
    let result = run(statement, budget, GenerationCaps::default()).map_err(|e| e.to_string())?;

    let mut sink: Box<dyn Write> = match &a.out {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|e| e.to_string())?),
        None => Box::new(std::io::stdout()),
    };
    for ev in &result.trace {
        writeln!(sink, "{}", serde_json::to_string(ev).unwrap()).map_err(|e| e.to_string())?;
    }
    let summary = serde_json::json!({
        "event": "summary",
        "status": result.status,
        "steps": result.steps,
        "vines": result.statement.vines.len(),
        "weeds": result.statement.weeds.len(),
    });
    writeln!(sink, "{}", summary).map_err(|e| e.to_string())?;
    drop(sink);

    if let Some(path) = &a.checkpoint {
        let text = checkpoint_to_json(&result.statement, result.steps, Some(result.status));
        std::fs::write(path, text).map_err(|e| e.to_string())?;
    }
    match result.status {
        RunStatus::Complete => Ok(ExitCode::SUCCESS),
        RunStatus::BudgetExhausted => Ok(ExitCode::from(3)),
    }
}

fn cmd_vines(a: VinesArgs) -> Result<ExitCode, String> {
    install_pool(a.jobs)?;
    let v = BigraphPair::parse_pair(&a.vine).map_err(|e| e.to_string())?;
    let limit = match &a.limit {
        None => None,
        Some(s) => Some(ExactLimit::parse(s).ok_or_else(|| format!("bad limit {}", s))?),
    };
    let opts = VineOptions { prime_bound: a.prime_bound, use_dnumber: a.dnumber };
    let report = vine_elimination(&v, a.max_n, limit.as_ref(), opts);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(ExitCode::SUCCESS)
}

fn cmd_atlas(a: AtlasArgs) -> Result<ExitCode, String> {
    if a.validate {
        for e in atlas::all_entries() {
            e.validate()?;
        }
    }
    println!("{:<34} {:>8}  {:<32} {:<12} pair", "name", "index", "exact", "status");
    for e in atlas::all_entries() {
        println!(
            "{:<34} {:>8}  {:<32} {:<12} {}",
            e.name,
            e.index_decimal,
            e.exact_index,
            match e.status {
                atlas::Status::Constructed => "constructed",
                atlas::Status::Candidate => "candidate",
            },
            e.pair
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_delta(s: &str) -> Result<AlgebraicReal, String> {
    let lim = ExactLimit::parse(s).ok_or_else(|| format!("bad delta {}", s))?;
    lim.to_algebraic()
        .ok_or_else(|| "delta must be exact (surd), not a decimal".to_string())
}

fn cmd_tl(a: TlArgs) -> Result<ExitCode, String> {
    match a.sub {
        TlCommand::Jw { n, delta } => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let sym = tl::jones_wenzl_sym(n);
            match delta {
                None => {
                    let f = sym.to_ratfunc();
                    println!("f({}) over rational functions in d, {} terms:", n, f.terms().len());
                    for (d, c) in f.terms() {
                        println!("  {}  {}", d.paren_word(), ratfunc_in_delta(c));
                    }
                }
                Some(expr) => {
                    let alg = parse_delta(&expr)?;
                    let field = subfactor_core::poly::NumberField::new(alg);
                    let dval = field.gen();
                    let f = sym.eval_at(&dval).map_err(|e| e.to_string())?;
                    println!("f({}) at d = {}, {} terms:", n, expr, f.terms().len());
                    for (d, c) in f.terms() {
                        println!("  {}  {}", d.paren_word(), c.to_f64());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        TlCommand::Trace { jw } => {
            let tr = tl::quantum_int(jw + 1);
            println!("tr f({}) = {}", jw, poly_in_delta(&tr));
            Ok(ExitCode::SUCCESS)
        }
        TlCommand::Basis { n } => {
            let basis = tl::tl_basis(n);
            println!("{} diagrams on {} strands:", basis.len(), n);
            for d in &basis {
                println!("  {}", d.paren_word());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Renders an integer polynomial in the loop parameter with `d` as the
/// variable name.
fn poly_in_delta(p: &subfactor_core::poly::IntPoly) -> String {
    format!("{}", p).replace('x', "d")
}

fn ratfunc_in_delta(c: &tl::RatFunc) -> String {
    if c.den.is_one() {
        poly_in_delta(&c.num)
    } else {
        format!("({}) / ({})", poly_in_delta(&c.num), poly_in_delta(&c.den))
    }
}
