//! `tensq`: batch front end for tensor squares, Peiffer products, Malcev
//! verdicts and explicit matrix representations.
//!
//! Exit codes: 0 success, 1 input error, 2 enumeration budget or memory cap
//! exceeded, 3 internal invariant violation.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tensq::fp::DEFAULT_BUDGET;
use tensq::linearity::{bryukhanov_ab, button_g2_ab, button_g3_ab, button_product_ab, k2_q_type};

use commands::{CliError, EngineArgs, RepArgs};
use report::CommandReport;

#[derive(Parser, Debug)]
#[command(name = "tensq", version, about = "Exact non-abelian tensor computations")]
struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Include wall-clock timing (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args, Debug)]
struct Engine {
    /// Maximum number of live cosets.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// hlt, felsch, or both (tensor and cosets only).
    #[arg(long, default_value = "hlt")]
    strategy: String,
    /// Simplify the presentation by Tietze moves before enumerating.
    #[arg(long)]
    tietze: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whitehead's Gamma of a finitely generated abelian group, e.g. "Z_2 x Z^3".
    Gamma { group: String },
    /// Non-abelian tensor square (or exterior square) of a finite group.
    Tensor {
        /// Catalog name or presentation "< a, b | a^2, ... >".
        #[arg(long)]
        group: String,
        #[arg(long)]
        exterior: bool,
        #[command(flatten)]
        engine: Engine,
    },
    /// Peiffer product of G with itself, or of G and H under trivial actions.
    Peiffer {
        #[arg(long)]
        group: String,
        /// Second factor; both actions are then trivial.
        #[arg(long)]
        with: Option<String>,
        #[command(flatten)]
        engine: Engine,
    },
    /// Index of a subgroup given by generating words.
    Cosets {
        #[arg(long)]
        group: String,
        /// Subgroup generator words; repeat the flag or separate by commas.
        #[arg(long)]
        subgroup: Vec<String>,
        #[command(flatten)]
        engine: Engine,
    },
    /// Malcev linearity verdict for an abelian group descriptor.
    Malcev {
        /// Descriptor file.
        #[arg(long, conflicts_with = "canned", required_unless_present = "canned")]
        descriptor: Option<std::path::PathBuf>,
        /// Built-in descriptor.
        #[arg(long, value_enum)]
        canned: Option<Canned>,
        /// Field characteristic: 0 or a prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long)]
        degree: u64,
    },
    /// Explicit matrix representation with its verification summary.
    Rep {
        #[arg(value_enum)]
        kind: RepKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Button variant: 2 or 3.
        #[arg(long, default_value_t = 2)]
        variant: u32,
        /// Number of unipotent Button generators.
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Canned {
    K2Q,
    G2,
    G3,
    G2G3,
    Bryukhanov,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RepKind {
    Sanov,
    Free,
    Zmfk,
    Nilpotent,
    TensorFree,
    TensorNilpotent,
    Braid,
    FigureEight,
    Button,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn run(cli: &Cli, echo: String) -> Result<CommandReport, CliError> {
    fn engine(e: &Engine) -> EngineArgs<'_> {
        EngineArgs {
            budget: e.budget,
            strategy: &e.strategy,
            tietze: e.tietze,
        }
    }
    let check_budget = |e: &Engine| {
        if e.budget == 0 {
            Err(CliError::Input("budget must be at least 1".into()))
        } else {
            Ok(())
        }
    };
    let mut input = echo.clone().into_bytes();
    let mut report;
    match &cli.command {
        Command::Gamma { group } => {
            report = CommandReport::new(echo, &input);
            commands::gamma(&mut report, group)?;
        }
        Command::Tensor { group, exterior, engine: e } => {
            check_budget(e)?;
            report = CommandReport::new(echo, &input);
            commands::tensor(&mut report, group, *exterior, &engine(e))?;
        }
        Command::Peiffer { group, with, engine: e } => {
            check_budget(e)?;
            report = CommandReport::new(echo, &input);
            commands::peiffer(&mut report, group, with.as_deref(), &engine(e))?;
        }
        Command::Cosets { group, subgroup, engine: e } => {
            check_budget(e)?;
            report = CommandReport::new(echo, &input);
            commands::cosets(&mut report, group, subgroup, &engine(e))?;
        }
        Command::Malcev {
            descriptor,
            canned,
            characteristic,
            degree,
        } => {
            let (name, text) = match (descriptor, canned) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    (path.display().to_string(), text)
                }
                (None, Some(c)) => {
                    let d = match c {
                        Canned::K2Q => k2_q_type(),
                        Canned::G2 => button_g2_ab(),
                        Canned::G3 => button_g3_ab(),
                        Canned::G2G3 => button_product_ab(),
                        Canned::Bryukhanov => bryukhanov_ab(),
                    };
                    (value_name(c), d.to_string())
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            input.push(b'\n');
            input.extend_from_slice(text.as_bytes());
            report = CommandReport::new(echo, &input);
            commands::malcev(&mut report, &name, &text, *characteristic, *degree)?;
        }
        Command::Rep {
            kind,
            n,
            c,
            m,
            k,
            variant,
            count,
            samples,
            max_len,
            seed,
        } => {
            report = CommandReport::new(echo, &input);
            let args = RepArgs {
                n: *n,
                c: *c,
                m: *m,
                k: *k,
                variant: *variant,
                count: *count,
                samples: *samples,
                max_len: *max_len,
                seed: *seed,
            };
            commands::rep(&mut report, &value_name(kind), &args)?;
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&cli, echo) {
        Ok(mut report) => {
            if cli.timing {
                report.set_timing(start.elapsed().as_millis() as u64);
            }
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("report serializes")
                ),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
