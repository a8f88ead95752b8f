use std::io::Write;
use std::process::ExitCode;

use acyc::commands::{run, Command, RunConfig, Status};
use acyc_core::action::{SubgroupScope, DEFAULT_MAX_GROUP_ORDER};
use acyc_core::constructions::DEFAULT_MAX_CELLS;
use acyc_core::Ring;
use clap::{Parser, Subcommand};

/// Exact homology, group actions on simplicial complexes and rational
/// finiteness checks.
///
/// Inputs are JSON files, or names of fixtures in the corpus directory
/// ($ACYC_FIXTURES, defaulting to the shipped corpus).
///
/// Exit status: 0 success or sufficient, 1 input error, 2 internal error,
/// 3 obstructed, 4 indeterminate.
#[derive(Parser, Debug)]
#[command(name = "acyc", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Simplicial homology of a complex.
    Homology {
        input: String,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: Ring,
        /// Reduced homology.
        #[arg(long)]
        reduced: bool,
    },
    /// Fixed-set verdict for a group action.
    CheckFh {
        input: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Fixed-set components and Lefschetz numbers of a group action.
    FixedSets {
        input: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Reflection-group gluing of a mirrored complex.
    BasicConstruction {
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_CELLS, value_parser = clap::value_parser!(u64).range(1..))]
        max_cells: u64,
    },
    /// Finiteness properties of the kernel of the Artin group of a flag complex.
    BbReport {
        input: String,
        /// Take the complex to be simply connected.
        #[arg(long)]
        assert_simply_connected: bool,
    },
    /// Homology of the Salvetti complex of the Artin group of a flag complex.
    Salvetti {
        input: String,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: Ring,
    },
    /// Checks the candidate two-step resolutions over Q[Z x Z/n].
    VerifyResolution {
        #[arg(required = true, num_args = 1..)]
        n: Vec<u32>,
    },
    /// Objects and hom-set sizes of the orbit category of a group.
    OrbitCategory {
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_GROUP_ORDER, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        max_group_order: usize,
    },
}

#[derive(clap::Args, Debug)]
struct GroupArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_GROUP_ORDER, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    max_group_order: usize,
    /// Every subgroup rather than one per conjugacy class.
    #[arg(long)]
    all_subgroups: bool,
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse().map_err(|e: acyc_core::UnknownRing| e.to_string())
}

fn config(cli: Cli) -> RunConfig {
    let mut c = RunConfig::new(Command::VerifyResolution { orders: Vec::new() });
    c.json = cli.json;
    c.jobs = cli.jobs;
    let scope = |g: &GroupArgs| if g.all_subgroups { SubgroupScope::All } else { SubgroupScope::Conjugacy };
    c.command = match cli.command {
        Cmd::Homology { input, ring, reduced } => {
            c.ring = ring;
            c.reduced = reduced;
            Command::Homology { input }
        }
        Cmd::CheckFh { input, group } => {
            c.scope = scope(&group);
            c.max_group_order = group.max_group_order;
            Command::CheckFh { input }
        }
        Cmd::FixedSets { input, group } => {
            c.scope = scope(&group);
            c.max_group_order = group.max_group_order;
            Command::FixedSets { input }
        }
        Cmd::BasicConstruction { input, max_cells } => {
            c.max_cells = max_cells;
            Command::BasicConstruction { input }
        }
        Cmd::BbReport {
            input,
            assert_simply_connected,
        } => {
            c.assert_simply_connected = assert_simply_connected;
            Command::BbReport { input }
        }
        Cmd::Salvetti { input, ring } => {
            c.ring = ring;
            Command::Salvetti { input }
        }
        Cmd::VerifyResolution { n } => Command::VerifyResolution { orders: n },
        Cmd::OrbitCategory { input, max_group_order } => {
            c.max_group_order = max_group_order;
            Command::OrbitCategory { input }
        }
    };
    c
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::InputError as u8 } else { 0 });
        }
    };
    let config = config(cli);
    match run(&config) {
        Ok(outcome) => {
            let text = if config.json {
                outcome.report.to_json()
            } else {
                outcome.report.to_text()
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(Status::Internal as u8);
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
