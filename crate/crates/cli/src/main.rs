use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use klyachko::groupalg::{
    check_ideal, check_idempotency, check_lemma_suite, check_pare_suite, check_specialization, gmaj_in,
    klyachko_element_in, partner_element_in,
};
use klyachko::lie::{check_dynkin, is_lie_element};
use klyachko::ppart::{check_ppartition_suite, check_shuffle_suite};
use klyachko::theta::check_theta;
use klyachko::{Error, Method, Permutation, Relation, VerificationReport};

/// Exact verification suites for the Klyachko element `e_n(q)` and its relatives.
#[derive(Parser, Debug)]
#[command(name = "klyachko", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an element or statistic.
    Show {
        what: ShowTarget,
        #[arg(long)]
        n: usize,
        /// Only this permutation (for `gmaj`).
        #[arg(long)]
        sigma: Option<String>,
        /// Reduce coefficients modulo q1⋯qn = 1 before printing.
        #[arg(long)]
        cyclic: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ShowTarget {
    Element,
    Partner,
    Gmaj,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    Lie,
    Dynkin,
    Idempotent,
    Ideal,
    Lemma,
    Pare,
    Ppartition,
    ShuffleIdentity,
    Theta,
    Cyclotomic,
}

#[derive(Args, Debug)]
struct VerifyOpts {
    /// Size of the symmetric group (largest size for `pare`).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Compare exact values at random points instead of rational functions.
    #[arg(long, conflicts_with = "symbolic")]
    randomized: bool,
    /// Compare rational functions even when n ≥ 5.
    #[arg(long)]
    symbolic: bool,
    /// Random points (random triples for `lemma`).
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, env = "KLYACHKO_SEED", default_value_t = 0)]
    seed: u64,
    /// Truncation degree for `ppartition` and `theta`.
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Largest permutation size for `theta`.
    #[arg(long, default_value_t = 4)]
    max_size: usize,
    /// Also write the report as JSON.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Include `elapsed_ms` in the JSON report.
    #[arg(long)]
    timing: bool,
}

impl Suite {
    fn has_randomized_mode(self) -> bool {
        matches!(self, Suite::Lie | Suite::Dynkin | Suite::Idempotent | Suite::Ideal | Suite::Lemma)
    }
}

fn method_for(suite: Suite, opts: &VerifyOpts) -> Result<Method, String> {
    if !suite.has_randomized_mode() {
        if opts.randomized {
            return Err(format!("suite {suite:?} has no randomized mode").to_lowercase());
        }
        return Ok(Method::Symbolic);
    }
    let randomized = opts.randomized || (!opts.symbolic && opts.n >= 5);
    if !randomized {
        return Ok(Method::Symbolic);
    }
    if opts.points == 0 {
        return Err("--points must be positive".into());
    }
    Ok(Method::Randomized { points: opts.points, seed: opts.seed })
}

fn run_suite(suite: Suite, opts: &VerifyOpts, method: Method) -> klyachko::Result<VerificationReport> {
    let n = opts.n;
    let element = || klyachko_element_in(n, Relation::Cyclic);
    match suite {
        Suite::Lie => is_lie_element(&element(), method),
        Suite::Dynkin => check_dynkin(&element(), method),
        Suite::Idempotent => check_idempotency(n, method),
        Suite::Ideal => check_ideal(n, method),
        Suite::Lemma => check_lemma_suite(n, method),
        Suite::Pare => check_pare_suite(n),
        Suite::Ppartition => check_ppartition_suite(n, opts.degree),
        Suite::ShuffleIdentity => check_shuffle_suite(n),
        Suite::Theta => check_theta(opts.max_size, opts.degree),
        Suite::Cyclotomic => check_specialization(n),
    }
}

fn validate_n(suite: Option<Suite>, n: usize) -> Result<(), String> {
    let min = match suite {
        Some(Suite::Theta) => 0,
        Some(Suite::Lie | Suite::Dynkin | Suite::Ppartition | Suite::ShuffleIdentity | Suite::Cyclotomic) => 2,
        _ => 1,
    };
    if n < min {
        return Err(format!("--n must be at least {min}"));
    }
    if n > 9 {
        return Err("--n must be at most 9".into());
    }
    Ok(())
}

fn show(what: ShowTarget, n: usize, sigma: Option<&str>, cyclic: bool) -> Result<String, String> {
    validate_n(None, n)?;
    let relation = if cyclic { Relation::Cyclic } else { Relation::Free };
    let text = match what {
        ShowTarget::Element => klyachko_element_in(n, relation).render('q'),
        ShowTarget::Partner => partner_element_in(n, relation).render('q'),
        ShowTarget::Gmaj => {
            let perms: Vec<Permutation> = match sigma {
                Some(s) => {
                    let p = Permutation::parse(s).map_err(|e| e.to_string())?;
                    if p.degree() != n {
                        return Err(format!("--sigma {s} is not a permutation of 1..{n}"));
                    }
                    vec![p]
                }
                None => Permutation::all(n).collect(),
            };
            perms
                .iter()
                .map(|p| format!("{p}: {}", gmaj_in(p, relation).render('q')))
                .collect::<Vec<_>>()
                .join("\n")
        }
    };
    Ok(text)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}\n\nFor more information, try '--help'.");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Show { what, n, sigma, cyclic } => match show(what, n, sigma.as_deref(), cyclic) {
            Ok(text) => {
                emit(&text);
                ExitCode::SUCCESS
            }
            Err(msg) => usage_error(&msg),
        },
        Command::Verify { suite, opts } => {
            if let Err(msg) = validate_n(Some(suite), opts.n) {
                return usage_error(&msg);
            }
            let method = match method_for(suite, &opts) {
                Ok(m) => m,
                Err(msg) => return usage_error(&msg),
            };
            let report = match run_suite(suite, &opts, method) {
                Ok(r) => r,
                Err(e @ (Error::InvalidArgument(_) | Error::Parse(_))) => return usage_error(&e.to_string()),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            emit(&report.to_string());
            if let Some(path) = &opts.json {
                let mut json = report.to_json(opts.timing);
                json.push('\n');
                if let Err(e) = std::fs::write(path, json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
