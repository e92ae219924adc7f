//! Command dispatch for the `lcslab` binary. [`run`] is the whole program
//! minus process I/O, so tests can call it directly.

pub mod args;
pub mod commands;
pub mod report;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, CmdResult, USAGE};

/// Captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn seed_from_env(env_seed: Option<&str>) -> Result<u64, CliError> {
    match env_seed {
        None => Ok(0),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("LCSLAB_SEED must be an integer, got '{s}'"))),
    }
}

/// Runs one command. `argv` excludes the program name; `env_seed` is the
/// value of `LCSLAB_SEED`, if set.
pub fn run(argv: &[String], env_seed: Option<&str>) -> Output {
    let full = std::iter::once("lcslab".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(full) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    let seed = match cli.seed.map(Ok).unwrap_or_else(|| seed_from_env(env_seed)) {
        Ok(s) => s,
        Err(e) => return failure(e),
    };
    // the echo always carries the seed, so rerunning it reproduces the report
    let mut echo: Vec<String> = vec!["lcslab".into()];
    echo.extend(argv.iter().map(|a| shell_quote(a)));
    if cli.seed.is_none() {
        echo.push("--seed".into());
        echo.push(seed.to_string());
    }
    let (result, input) = dispatch(&cli.command, seed);
    match result {
        Ok(report) => {
            let code = report.status.exit_code();
            let value = report.into_value(&echo, seed, input);
            let stdout = if cli.json {
                serde_json::to_string_pretty(&value).expect("serializable") + "\n"
            } else {
                report::render_text(&value)
            };
            Output {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Err(e) => failure(e),
    }
}

/// Quotes an argument for a POSIX shell when it contains anything beyond
/// plain word characters.
pub fn shell_quote(arg: &str) -> String {
    let plain = |c: char| c.is_ascii_alphanumeric() || "_-./=:,+@%".contains(c);
    if !arg.is_empty() && arg.chars().all(plain) {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

fn failure(e: CliError) -> Output {
    Output {
        stdout: String::new(),
        stderr: format!("error: {}\n", e.message),
        code: e.code,
    }
}

fn dispatch(cmd: &Command, seed: u64) -> (CmdResult, Option<serde_json::Value>) {
    use commands::*;
    let with_input = |a: &args::AlgebraArgs, f: &dyn Fn(&Input) -> CmdResult| match load(a) {
        Ok(input) => (f(&input), Some(input.describe())),
        Err(e) => (Err(e), None),
    };
    match cmd {
        Command::Validate(a) => (validate(a), None),
        Command::Profile(a) => with_input(a, &profile),
        Command::Cohomology { input, theta } => {
            with_input(input, &|i| cohomology_cmd(i, theta.as_deref()))
        }
        Command::LcsVerify {
            input,
            omega,
            theta,
        } => with_input(input, &|i| {
            lcs_verify(i, omega.as_deref(), theta.as_deref())
        }),
        Command::LcsSearch {
            input,
            theta,
            samples,
        } => with_input(input, &|i| lcs_search_cmd(i, theta, *samples, seed)),
        Command::Kind {
            input,
            omega,
            theta,
        } => with_input(input, &|i| kind(i, omega.as_deref(), theta.as_deref())),
        Command::ContactVerify { input, eta } => {
            with_input(input, &|i| contact_verify(i, eta.as_deref()))
        }
        Command::ContactSearch { input, samples } => {
            with_input(input, &|i| contact_search_cmd(i, *samples, seed))
        }
        Command::Derivations { input, matrix } => {
            with_input(input, &|i| derivations(i, matrix.as_deref()))
        }
        Command::ExtendContact {
            input,
            eta,
            derivation,
        } => with_input(input, &|i| extend_contact(i, eta, derivation)),
        Command::DoubleExtend {
            input,
            beta,
            derivation,
        } => with_input(input, &|i| double_extend(i, beta, derivation)),
        Command::LatticeCheck { family, k, t0 } => {
            (lattice_check(*family, *k, t0.as_deref(), seed), None)
        }
        Command::Catalog(c) => (catalog_cmd(c), None),
    }
}
