//! `treepark`: parking functions on rooted trees from the command line.
//!
//! Exit status: 0 when the checked property holds, 1 when it fails, 2 on
//! malformed input or usage errors.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "treepark",
    version,
    about = "Parking functions on rooted labeled trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A payload given inline or as `@path`.
#[derive(Clone, Debug)]
pub struct Payload(String);

impl std::str::FromStr for Payload {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path)
                .map(|text| Payload(text.trim().to_string()))
                .map_err(|e| format!("cannot read {path}: {e}")),
            None => Ok(Payload(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Census,
    Roundtrip,
    MmpPath,
    GrowthPath,
    Props,
    All,
}

#[derive(clap::Args)]
pub struct TreeAndSeq {
    /// Parent of each vertex 1..n, 0 for the root (inline or @file)
    #[arg(long)]
    tree: Payload,
    /// Preferred vertex of each driver (inline or @file)
    #[arg(long)]
    seq: Payload,
}

#[derive(Subcommand)]
enum Command {
    /// Run the parking procedure and report where each driver parks
    Park {
        #[command(flatten)]
        input: TreeAndSeq,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether a sequence is a parking function (or distribution)
    Check {
        #[command(flatten)]
        input: TreeAndSeq,
        /// Also require the sequence to be weakly increasing
        #[arg(long)]
        distribution: bool,
    },
    /// Decide whether a parking function is prime
    Prime {
        #[command(flatten)]
        input: TreeAndSeq,
    },
    /// List the edges a parking function uses, in first-crossing order
    UsedEdges {
        #[command(flatten)]
        input: TreeAndSeq,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Map a prime parking function to a permutation and a labeled plane tree
    Psi {
        #[command(flatten)]
        input: TreeAndSeq,
        /// Also map back and compare with the input
        #[arg(long)]
        check: bool,
    },
    /// Map a permutation and a labeled plane tree back to a prime parking function
    PsiInv {
        /// Permutation of 1..n (inline or @file)
        #[arg(long)]
        perm: Payload,
        /// Plane tree such as "*[2 1[3]]" (inline or @file)
        #[arg(long)]
        ptree: Payload,
        /// Also map forward again and compare with the input
        #[arg(long)]
        check: bool,
    },
    /// The mmp-statistic parking function of a 132-avoiding permutation
    Borie {
        /// Permutation of 1..n (inline or @file)
        #[arg(long)]
        perm: Payload,
        /// Also compare with the inverse bijection applied to the labeled path
        #[arg(long)]
        check: bool,
    },
    /// Check generating-function identities with exact rational arithmetic
    Series {
        /// Truncation order
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Identity id, or "all"
        #[arg(long, default_value = "all")]
        identity: String,
        /// List the registered identities and exit
        #[arg(long)]
        list: bool,
    },
    /// Table of counts from the closed forms
    Counts {
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Exhaustive censuses and bijection suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Largest size to run; each suite has its own default
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Permit sizes beyond the default bounds
        #[arg(long)]
        allow_large: bool,
        /// Seed for the random property instances
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random property instances per size
        #[arg(long, default_value_t = 10_000)]
        instances: usize,
        /// Print wall times to stderr
        #[arg(long)]
        timing: bool,
    },
}

/// Die quietly on a closed pipe (`treepark series | head`) instead of panicking.
fn restore_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    restore_sigpipe();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Park { input, format } => commands::park(&input, format),
        Command::Check {
            input,
            distribution,
        } => commands::check(&input, distribution),
        Command::Prime { input } => commands::prime(&input),
        Command::UsedEdges { input, format } => commands::used_edges(&input, format),
        Command::Psi { input, check } => commands::psi(&input, check),
        Command::PsiInv { perm, ptree, check } => commands::psi_inv(&perm, &ptree, check),
        Command::Borie { perm, check } => commands::borie(&perm, check),
        Command::Series {
            order,
            identity,
            list,
        } => commands::series(order, &identity, list),
        Command::Counts { max, format } => commands::counts(max, format),
        Command::Verify {
            suite,
            max_n,
            format,
            allow_large,
            seed,
            instances,
            timing,
        } => commands::verify(&commands::VerifyArgs {
            suite,
            max_n,
            format,
            allow_large,
            seed,
            instances,
            timing,
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
