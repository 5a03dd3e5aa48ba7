use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toric_chow::cli::{exit_code, run_text, Command, EXIT_USAGE};
use toric_chow::verify::CheckSelection;

/// Chow quotients of toric varieties by subtori, as toric stacks.
#[derive(Parser)]
#[command(name = "toric-chow", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Input document; reads stdin when omitted or `-`.
    #[arg(global = true)]
    input: Option<PathBuf>,

    /// Replace a non-saturated sublattice by its saturation.
    #[arg(long, global = true)]
    saturate: bool,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the fan and sublattice.
    Validate,
    /// The quotient fan and its stack monoids.
    Quotient,
    /// Multiplicities of all cones of the fan.
    Multiplicities,
    /// The cycle over a cone of the quotient fan.
    Cycle {
        #[arg(long)]
        cone: usize,
    },
    /// The universal family and its two morphisms.
    Family,
    /// The fiber over a cone of the quotient fan.
    Fiber {
        #[arg(long)]
        cone: usize,
    },
    /// Run verification checks (all of them when none is selected).
    Check(CheckArgs),
    /// Everything.
    All,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    integral: bool,
    #[arg(long)]
    reduced: bool,
    #[arg(long)]
    equidim: bool,
    #[arg(long)]
    basic: bool,
    /// Grade bound for the bounded searches.
    #[arg(long, default_value_t = 8)]
    bound: u32,
}

impl CheckArgs {
    fn selection(&self) -> CheckSelection {
        let any = self.integral || self.reduced || self.equidim || self.basic;
        CheckSelection {
            integral: self.integral || !any,
            reduced: self.reduced || !any,
            equidimensional: self.equidim || !any,
            basic: self.basic || !any,
            bound: self.bound,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn configure_threads(jobs: usize) {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE as u8) } else { ExitCode::SUCCESS };
        }
    };
    configure_threads(cli.jobs);
    let command = match &cli.command {
        Cmd::Validate => Command::Validate,
        Cmd::Quotient => Command::Quotient,
        Cmd::Multiplicities => Command::Multiplicities,
        Cmd::Cycle { cone } => Command::Cycle { cone: *cone },
        Cmd::Family => Command::Family,
        Cmd::Fiber { cone } => Command::Fiber { cone: *cone },
        Cmd::Check(a) => Command::Check(a.selection()),
        Cmd::All => Command::All,
    };
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match run_text(&command, &text, cli.saturate) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
