mod cache;
mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crg_core::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Character tables, p-blocks and perfect isometries of G(de,e,r).
#[derive(Parser, Debug)]
#[command(name = "crg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Directory for cached character rows.
    #[arg(long, global = true, env = "CRG_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Lift the default limits de ≤ 8 and r ≤ 7.
    #[arg(long, global = true)]
    no_desk_bounds: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of G(de,e,r); with e = 1 this is the wreath product.
    Chartable(GroupArgs),
    /// p-blocks of G(de,e,r).
    Blocks {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: u32,
    },
    /// Build the isometry between two blocks and verify it.
    Perfiso {
        #[command(flatten)]
        group: GroupArgs,
        /// Rank of the target group.
        #[arg(long)]
        r2: usize,
        #[arg(long)]
        p: u32,
        /// Source block: an index into the block list or a core as JSON,
        /// e.g. `[[1],[]]`.
        #[arg(long)]
        block: String,
        /// Target block, same syntax.
        #[arg(long)]
        block2: String,
        /// Weight vector narrowing a core selector, e.g. `[1,1]`.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        weight2: Option<String>,
        /// Include every Î value in the report.
        #[arg(long)]
        full: bool,
        /// Skip the slice decomposition cross-check.
        #[arg(long)]
        skip_slices: bool,
    },
    /// Run the invariant checks on built-in instances.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GroupArgs {
    #[arg(long)]
    pub de: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long)]
    pub r: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Io(String),
    /// The job ran; the code reports its outcome.
    Verdict(u8),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Data(_) => 65,
            Failure::Io(_) => 74,
            Failure::Verdict(c) => *c,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadPrime { .. }
            | Error::WeightMismatch { .. }
            | Error::MixedDefect
            | Error::StabilizerMismatch
            | Error::NonCoreComponent(..) => Failure::Data(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

pub struct Context {
    pub format: Format,
    pub cache: cache::Cache,
    pub out: Option<PathBuf>,
}

impl Context {
    pub fn emit(&self, body: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, body)?,
            None => print!("{body}"),
        }
        Ok(())
    }
}

fn check_bounds(cli: &Cli) -> Result<(), Failure> {
    if cli.no_desk_bounds {
        return Ok(());
    }
    let (g, r2) = match &cli.command {
        Command::Chartable(g) | Command::Blocks { group: g, .. } => (*g, None),
        Command::Perfiso { group, r2, .. } => (*group, Some(*r2)),
        Command::Selftest { .. } => return Ok(()),
    };
    if g.de > 8 || g.r > 7 || r2.is_some_and(|r| r > 7) {
        return Err(Failure::Usage(
            "outside the desk bounds de ≤ 8, r ≤ 7; pass --no-desk-bounds to override".into(),
        ));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    check_bounds(&cli)?;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let ctx = Context {
        format: cli.format,
        cache: cache::Cache::new(cli.cache_dir.clone()),
        out: cli.out.clone(),
    };
    match cli.command {
        Command::Chartable(g) => commands::chartable(&ctx, g),
        Command::Blocks { group, p } => commands::blocks(&ctx, group, p),
        Command::Perfiso { group, r2, p, block, block2, weight, weight2, full, skip_slices } => commands::perfiso(
            &ctx,
            commands::PerfisoJob { group, r2, p, block, block2, weight, weight2, full, skip_slices },
        ),
        Command::Selftest { seed } => selftest::run(&ctx, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Data(m) | Failure::Io(m) => eprintln!("crg: {m}"),
                Failure::Verdict(_) => {}
            }
            ExitCode::from(f.code())
        }
    }
}
