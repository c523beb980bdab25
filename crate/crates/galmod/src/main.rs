use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use galmod::check::cmd_check;
use galmod::commands::{
    cmd_decompose, cmd_euler, cmd_genus, cmd_noether, cmd_oracle, MethodArg, OracleArgs,
};
use galmod::{CliError, Format, Output};

#[derive(Parser)]
#[command(
    name = "galmod",
    version,
    about = "Galois module structure of H^0 on cyclic p-group covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose H^0(X, O(D)) into Jordan blocks.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Reject data that fails the strict realizability checks.
        #[arg(long)]
        strict: bool,
    },
    /// Genus of every level of the tower.
    Genus {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Euler characteristic in the simple basis.
    Euler {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Relative projectivity over the subgroup of order p^w.
    Noether {
        file: PathBuf,
        #[arg(long)]
        w: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Compare against Artin-Schreier curves y^p - y = x^m.
    Oracle {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 9)]
        m_max: u32,
        #[arg(long, default_value_t = 30)]
        n_max: i64,
        /// Single curve exponent instead of the sweep.
        #[arg(long)]
        m: Option<u32>,
        /// Single divisor degree n·∞ instead of the sweep.
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Seeded property run over random towers.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Decompose {
            file,
            method,
            format,
            strict,
        } => cmd_decompose(&file, method, format, strict),
        Command::Genus {
            file,
            format,
            strict,
        } => cmd_genus(&file, format, strict),
        Command::Euler {
            file,
            format,
            strict,
        } => cmd_euler(&file, format, strict),
        Command::Noether {
            file,
            w,
            seed,
            format,
            strict,
        } => cmd_noether(&file, w, seed, format, strict),
        Command::Oracle {
            p,
            m_max,
            n_max,
            m,
            n,
            format,
        } => cmd_oracle(
            &OracleArgs {
                p,
                m_max,
                n_max,
                m,
                n,
            },
            format,
        ),
        Command::Check { seed, cases } => cmd_check(seed, cases),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("galmod: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
