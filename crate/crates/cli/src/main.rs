//! `nearprime`: validate, enumerate, classify and verify finite near-ring
//! modules from the command line.

/// `println!` that exits quietly when stdout is a closed pipe.
macro_rules! out {
    () => { out!("") };
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

mod commands;
mod input;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_CONTRADICTION: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "nearprime", version, about = "Prime and classical prime R-ideals of finite near-ring modules")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Global {
    /// Structured JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Reject near-rings that are not zero-symmetric.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads for verification sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NotionArg {
    Prime,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Dauns,
    Juglal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NRangeArg {
    Submodules,
    RIdeals,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms and print structural flags.
    Validate {
        /// JSON file or catalog key.
        file: String,
    },
    /// List every substructure of a kind.
    Enumerate {
        file: String,
        /// subgroup, normal-subgroup, left-r-subgroup, right-r-subgroup,
        /// invariant-r-subgroup, left-ideal, right-ideal, ideal, r-submodule, r-ideal
        #[arg(long)]
        kind: String,
        /// Print only the number of substructures.
        #[arg(long)]
        count: bool,
        /// Smallest substructure of the kind containing this set instead.
        #[arg(long, value_name = "SET")]
        generate: Option<String>,
    },
    /// Prime and classical prime verdicts for an R-ideal (or ring ideal).
    Classify {
        file: String,
        /// The ideal, as comma-separated labels or indices; omit for all.
        #[arg(long, value_name = "SET")]
        ideal: Option<String>,
        /// Restrict to one variant: 0, 1, 2, 3 or c.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, value_enum)]
        notion: Option<NotionArg>,
        #[arg(long, value_enum, default_value = "dauns")]
        convention: ConventionArg,
        /// Treat the ideal as an ideal of the near-ring itself.
        #[arg(long)]
        ring: bool,
        /// Range of N in the classical conditions.
        #[arg(long, value_enum, default_value = "submodules")]
        n_range: NRangeArg,
        /// Replay a witness, e.g. "A=0,2;B=0,2;N=0,1,2,3" or "a=3;b=2;N=0,1".
        #[arg(long, value_name = "WITNESS", requires_all = ["ideal", "variant", "notion"])]
        check_witness: Option<String>,
    },
    /// Test whether a subset is a classical m_v-system.
    Msystem {
        file: String,
        #[arg(long, value_name = "SET")]
        set: String,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Left annihilator of a subset.
    Ann {
        file: String,
        #[arg(long, value_name = "SET")]
        set: String,
        /// Also run the annihilator statements on the structure.
        #[arg(long)]
        verify: bool,
    },
    /// Run statement verifiers exhaustively on a structure.
    Verify {
        file: String,
        /// One statement by name; omit for all module-level statements.
        #[arg(long)]
        theorem: Option<String>,
    },
    /// Build a built-in near-field.
    Nearfield {
        /// dn32 or gf9.
        name: String,
        /// Print the tables as JSON.
        #[arg(long)]
        emit_json: bool,
    },
    /// Build the power module R^n.
    Power {
        /// Ring file or catalog key.
        file: String,
        #[arg(short, long, default_value_t = 2)]
        n: usize,
        /// Run the R^n structure statements (R must be a near-field).
        #[arg(long)]
        verify: bool,
        /// Print the module as JSON.
        #[arg(long)]
        emit_json: bool,
    },
    /// Built-in example structures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// List the catalog keys.
    List,
    /// Print one entry's tables and stated claims.
    Show { key: String },
    /// Recompute every claim and run every verifier.
    Run {
        /// Restrict to these keys.
        keys: Vec<String>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            });
        }
    };
    let threads = cli.global.jobs;
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        log::warn!("thread pool: {e}");
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
