//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage, parse or
//! evaluation error.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::IsTerminal;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exactnum::HalfInt;
use crate::ketlang::EvalContext;
use crate::spinops::{BasisLabel, SpinJ};
use report::ReportDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    M,
    Cartesian,
}

impl From<BasisArg> for BasisLabel {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::M => BasisLabel::StandardM,
            BasisArg::Cartesian => BasisLabel::Cartesian,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spincouple", version, about = "Exact two-particle spin coupling, Clebsch-Gordan coefficients and entanglement")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Single-particle basis: standard |j, m> or Cartesian (x, y, z), the latter for j = 1 only.
    #[arg(long, global = true, value_enum, default_value_t = BasisArg::M)]
    pub basis: BasisArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coupled |S, mu> basis of two spins.
    Couple {
        #[arg(long, default_value = "1")]
        j1: String,
        #[arg(long, default_value = "1")]
        j2: String,
    },
    /// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>; half-integers as "1/2".
    Cg {
        #[arg(allow_hyphen_values = true)]
        j1: String,
        #[arg(allow_hyphen_values = true)]
        m1: String,
        #[arg(allow_hyphen_values = true)]
        j2: String,
        #[arg(allow_hyphen_values = true)]
        m2: String,
        #[arg(value_name = "J", allow_hyphen_values = true)]
        total: String,
        #[arg(value_name = "M", allow_hyphen_values = true)]
        projection: String,
    },
    /// Checks that a state is a simultaneous eigenstate of S^2 and Sz.
    Verify {
        /// State expression, e.g. "chi(1) x chi(1)".
        #[arg(allow_hyphen_values = true)]
        state: String,
        #[arg(long = "S", visible_alias = "spin")]
        spin: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "1")]
        j1: String,
        #[arg(long, default_value = "1")]
        j2: String,
    },
    /// Schmidt rank, coefficients, entropy and exchange parity of a state.
    Entangle {
        /// State expression.
        #[arg(allow_hyphen_values = true, required_unless_present_any = ["paper_state", "bell"], conflicts_with_all = ["paper_state", "bell"])]
        state: Option<String>,
        /// One of S1..S6, A1..A3.
        #[arg(long, conflicts_with = "bell")]
        paper_state: Option<String>,
        /// One of HH+VV, HH-VV, HV+VH, HV-VH.
        #[arg(long, allow_hyphen_values = true)]
        bell: Option<String>,
        #[arg(long, default_value = "1")]
        j1: String,
        #[arg(long, default_value = "1")]
        j2: String,
    },
    /// Every two-photon check in one document.
    PaperReport {
        /// Record the generation time (the output is otherwise byte-for-byte reproducible).
        #[arg(long)]
        timestamps: bool,
    },
}

fn spin(text: &str) -> Result<SpinJ> {
    SpinJ::parse(text)
}

fn half(text: &str) -> Result<HalfInt> {
    HalfInt::parse(text)
}

/// Runs a parsed command, producing its document.
pub fn execute(cli: &Cli) -> Result<ReportDocument> {
    let basis = BasisLabel::from(cli.basis);
    match &cli.command {
        Command::Couple { j1, j2 } => commands::couple(spin(j1)?, spin(j2)?, basis),
        Command::Cg { j1, m1, j2, m2, total, projection } => {
            Ok(commands::cg([half(j1)?, half(m1)?, half(j2)?, half(m2)?, half(total)?, half(projection)?]))
        }
        Command::Verify { state, spin: s, mu, j1, j2 } => {
            let ctx = EvalContext::new(spin(j1)?, spin(j2)?, basis);
            commands::verify(state, &ctx, half(s)?, half(mu)?)
        }
        Command::Entangle { state, paper_state, bell, j1, j2 } => match (state, paper_state, bell) {
            (_, Some(label), _) => commands::entangle_paper_state(label),
            (_, _, Some(label)) => commands::entangle_bell(label),
            (Some(text), _, _) => commands::entangle_expr(text, &EvalContext::new(spin(j1)?, spin(j2)?, basis)),
            _ => Err(Error::Precondition("give a state expression, --paper-state or --bell".into())),
        },
        Command::PaperReport { timestamps } => {
            let mut doc = commands::paper_report()?;
            if *timestamps {
                doc.generated_at_unix = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .ok()
                    .map(|d| d.as_secs());
            }
            Ok(doc)
        }
    }
}

fn color_enabled() -> std::result::Result<bool, String> {
    match std::env::var("SPINCOUPLE_COLOR").as_deref() {
        Ok("always") => Ok(true),
        Ok("never") => Ok(false),
        Ok("auto") | Err(_) => Ok(std::io::stdout().is_terminal()),
        Ok(other) => Err(format!("SPINCOUPLE_COLOR must be auto, never or always, not {other:?}")),
    }
}

/// Parses arguments, runs the command, prints the result and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let color = match color_enabled() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            match cli.format {
                OutputFormat::Json => print!("{}", doc.to_json()),
                OutputFormat::Text => print!("{}", doc.to_text(color)),
            }
            if doc.all_hold() {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
