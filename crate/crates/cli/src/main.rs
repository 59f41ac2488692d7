use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lfactor_core::lfunctions::Routes;
use lfactor_core::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "lfactor", version, about = "Dirichlet L-function factors at non-positive integers")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 192, value_parser = clap::value_parser!(u32).range(64..=4096))]
    pub prec_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Which routes `ldlog` runs.
    #[arg(long, global = true, value_enum, default_value_t = RoutesArg::Both)]
    pub routes: RoutesArg,
}

impl Config {
    pub fn prec(&self) -> usize {
        self.prec_bits as usize
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoutesArg {
    Direct,
    Functional,
    Both,
}

impl From<RoutesArg> for Routes {
    fn from(r: RoutesArg) -> Self {
        match r {
            RoutesArg::Direct => Routes::Direct,
            RoutesArg::Functional => Routes::Functional,
            RoutesArg::Both => Routes::Both,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    All,
    Lerch,
    Factorization,
    Gross,
    Kernels,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// L(chi, s) and L'(chi, s).
    Lvalue {
        #[arg(long)]
        chi: String,
        /// Real part of s, as an integer, fraction or decimal.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        s_im: String,
    },
    /// L'/L(chi, 1 - n).
    Ldlog {
        #[arg(long)]
        chi: String,
        #[arg(long)]
        n: u32,
    },
    /// Generalized Bernoulli number B_{n, chi}.
    Bernoulli {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        chi: String,
    },
    /// The bracketed factor L'/L(chi, 1 - n) + H_{n-1}/2 - c_chi log 2/(1 - 2^-n).
    Factor {
        #[arg(long)]
        chi: String,
        #[arg(long)]
        n: u32,
    },
    /// Degree coefficient of a totally real abelian field.
    Prop22 {
        #[arg(long)]
        field: String,
    },
    /// Degree coefficient for the rational case.
    Prop23,
    /// Run oracle suites; exit 3 if any line fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Table of factors for several characters or fields.
    Report {
        /// `chi=<spec>;n=<n>[;weight=<r>]` or `field=<spec>;n=<n>[;weight=<r>]`.
        #[arg(long = "entry")]
        entries: Vec<String>,
        /// JSON file holding an array of entries.
        #[arg(long)]
        spec: Option<std::path::PathBuf>,
        /// Shorthand for one entry per listed character.
        #[arg(long)]
        chi: Vec<String>,
        /// Shorthand for one entry per listed field.
        #[arg(long)]
        field: Vec<String>,
        /// n for the --chi and --field shorthands.
        #[arg(long)]
        n: Option<u32>,
        /// Also run an oracle suite and attach its lines.
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
    },
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    code: &'a str,
    message: String,
}

fn fail(code: &str, message: String, exit: u8) -> ExitCode {
    let body = serde_json::to_string(&ErrorJson { code, message }).expect("error json");
    eprintln!("{body}");
    ExitCode::from(exit)
}

pub enum Failure {
    Core(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail("usage", e.to_string().trim().to_string(), 1);
        }
    };
    let cfg = &cli.config;
    let result = match cli.command {
        Command::Lvalue { chi, s, s_im } => commands::lvalue(cfg, &chi, &s, &s_im),
        Command::Ldlog { chi, n } => commands::ldlog(cfg, &chi, n),
        Command::Bernoulli { n, chi } => commands::bernoulli(cfg, &chi, n),
        Command::Factor { chi, n } => commands::factor(cfg, &chi, n),
        Command::Prop22 { field } => commands::prop22(cfg, &field),
        Command::Prop23 => commands::prop23(cfg),
        Command::Verify { suite } => commands::verify(cfg, suite),
        Command::Report { entries, spec, chi, field, n, suite } => {
            commands::report(cfg, &entries, spec.as_deref(), &chi, &field, n, suite)
        }
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) => {
            let exit = if e.is_refusal() { 2 } else { 1 };
            fail(e.code(), e.to_string(), exit)
        }
        Err(Failure::Verify(out)) => {
            print!("{out}");
            fail("verify_failed", "one or more oracle lines failed".into(), 3)
        }
    }
}
