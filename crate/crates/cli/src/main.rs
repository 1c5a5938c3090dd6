use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use hasse_cli::problem::parse_order;
use hasse_cli::report::EXIT_INPUT;
use hasse_cli::{dispatch, parse_problem, Failure, MethodChoice, Options, RunReport};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verb {
    Integrate,
    Leaps,
    Fitting,
    Genericgens,
    CheckHs,
    Derivations,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Integrate => "integrate",
            Verb::Leaps => "leaps",
            Verb::Fitting => "fitting",
            Verb::Genericgens => "genericgens",
            Verb::CheckHs => "check-hs",
            Verb::Derivations => "derivations",
        }
    }
}

/// Hasse–Schmidt integrability workbench.
///
/// Exit codes: 0 success, 2 verification failure, 3 budget exhausted,
/// 4 input error. HS_BUDGET_STEPS caps Gröbner and search steps.
#[derive(Debug, Parser)]
#[command(name = "hs", version)]
struct Cli {
    verb: Verb,
    /// Problem file, or `-` for stdin.
    file: PathBuf,
    /// Monomial order, overriding the problem file.
    #[arg(long, value_parser = ["grevlex", "lex"])]
    order: Option<String>,
    /// Leap scan bound, or the length m to integrate to.
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<MethodChoice>,
    /// Total degree bound for the semi-decision on non-artinian algebras.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Fitting ideal level.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn budget_from_env() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("HS_BUDGET_STEPS") {
        let n: u64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("HS_BUDGET_STEPS must be a positive integer, got {v:?}")))?;
        hasse::groebner::set_step_budget(n);
    }
    Ok(())
}

fn run(cli: &Cli) -> RunReport {
    let verb = cli.verb.name();
    let flags = json!({
        "order": cli.order,
        "max_order": cli.max_order,
        "method": cli.method.map(|m| format!("{m:?}").to_lowercase()),
        "degree_bound": cli.degree_bound,
        "ell": cli.ell,
    });
    let fail = |f: Failure, inputs| RunReport::new(verb, inputs, serde_json::Value::Null, vec![], Some(f));
    let file_echo = json!({"file": cli.file.display().to_string(), "flags": flags});
    let problem = budget_from_env()
        .and_then(|()| cli.order.as_deref().map(parse_order).transpose())
        .and_then(|order| parse_problem(&read_input(&cli.file)?, order));
    let problem = match problem {
        Ok(p) => p,
        Err(f) => return fail(f, file_echo),
    };
    let inputs = json!({"problem": problem.canonical(), "flags": flags});
    let opts = Options {
        max_order: cli.max_order,
        method: cli.method,
        degree_bound: cli.degree_bound,
        ell: cli.ell,
    };
    match dispatch(verb, &problem, &opts) {
        Ok((results, transcript, reason)) => RunReport::new(verb, inputs, results, transcript, reason),
        Err(f) => fail(f, inputs),
    }
}

fn main() -> ExitCode {
    // clap's own exit code 2 would read as a verification failure
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let start = Instant::now();
    let mut report = run(&cli);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if cli.text {
        print!("{}", report.to_text());
    } else {
        println!("{}", report.to_json());
    }
    let code = u8::try_from(report.exit_code).unwrap_or(EXIT_INPUT as u8);
    ExitCode::from(code)
}
