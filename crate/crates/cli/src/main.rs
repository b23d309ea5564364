//! `kflag`: tables and verification suites for equivariant K-theory of G/B.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 resource limit.

/// `println!` that exits quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($t:tt)*) => {
        $crate::emit(format_args!($($t)*))
    };
}

mod cache;
mod commands;
mod config;
mod render;

use clap::{Parser, Subcommand};
use config::{FileConfig, Format, RunConfig, DEFAULT_MAX_RANK_CAP};
use kflag::ring::Target;
use kflag::weyl::LieType;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum FailureKind {
    Invariant,
    Usage,
    Resource,
}

#[derive(Debug)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
}

impl Failure {
    pub fn usage(m: impl Into<String>) -> Failure {
        Failure { kind: FailureKind::Usage, message: m.into() }
    }

    pub fn resource(m: impl Into<String>) -> Failure {
        Failure { kind: FailureKind::Resource, message: m.into() }
    }

    pub fn invariant(m: impl Into<String>) -> Failure {
        Failure { kind: FailureKind::Invariant, message: m.into() }
    }

    fn code(&self) -> u8 {
        match self.kind {
            FailureKind::Invariant => 1,
            FailureKind::Usage => 2,
            FailureKind::Resource => 3,
        }
    }
}

impl From<kflag::Error> for Failure {
    fn from(e: kflag::Error) -> Failure {
        use kflag::Error as E;
        let kind = match &e {
            E::Resource(_) => FailureKind::Resource,
            E::Usage(_) | E::Config(_) | E::Parse(_) | E::Pole(_) => FailureKind::Usage,
            E::Invariant { .. } | E::Arithmetic(_) => FailureKind::Invariant,
        };
        Failure { kind, message: e.to_string() }
    }
}

pub fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut o = std::io::stdout().lock();
    if let Err(e) = o.write_fmt(args).and_then(|_| o.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("kflag: cannot write output: {e}");
        std::process::exit(3);
    }
}

/// Settings may come from flags, environment variables or a JSON config
/// file; a flag beats its environment variable, which beats the file.
#[derive(Parser, Debug)]
#[command(name = "kflag", version, about = "Exact torus-equivariant K-theory of flag varieties G/B")]
struct Cli {
    /// Output format: json, tsv or pretty
    #[arg(long, global = true, env = "KFLAG_FORMAT")]
    format: Option<String>,
    /// Set every e^λ to 1 in emitted values
    #[arg(long, global = true, env = "KFLAG_NON_EQUIVARIANT")]
    non_equivariant: bool,
    /// Substitute an exact rational number for y
    #[arg(long, global = true, env = "KFLAG_Y", allow_hyphen_values = true)]
    y: Option<String>,
    /// Substitute y = -q' (p-adic dictionary)
    #[arg(long = "q-prime", global = true, env = "KFLAG_Q_PRIME", allow_hyphen_values = true)]
    q_prime: Option<String>,
    /// Directory for the persistent class cache
    #[arg(long, global = true, env = "KFLAG_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest rank accepted
    #[arg(long, global = true, env = "KFLAG_MAX_RANK_CAP")]
    max_rank_cap: Option<usize>,
    /// Lie type (alternative to the positional form)
    #[arg(long = "type", global = true, env = "KFLAG_TYPE")]
    lie_type: Option<String>,
    /// Rank (alternative to the positional form)
    #[arg(long, global = true, env = "KFLAG_RANK")]
    rank: Option<usize>,
    /// JSON file with any of the keys type, rank, format, non_equivariant, y, q_prime, cache_dir, max_rank_cap
    #[arg(long, global = true, env = "KFLAG_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schubert expansions of a motivic family: [TYPE RANK] FAMILY [W...]
    Expand {
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
    },
    /// Run a verification suite: [TYPE RANK] SUITE
    Verify {
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
    },
    /// Casselman transition table: [TYPE RANK]
    Casselman {
        #[arg(num_args = 0..)]
        args: Vec<String>,
    },
    /// Stable-envelope restriction matrix: [TYPE RANK]
    Stab {
        #[arg(num_args = 0..)]
        args: Vec<String>,
        /// plus or minus
        #[arg(long, default_value = "minus")]
        chamber: String,
    },
}

/// Leading "A 2" or "A2" in the positional arguments.
fn split_system(args: &[String]) -> (Option<(String, usize)>, Vec<String>) {
    let is_type = |s: &str| s.len() == 1 && LieType::parse(s).is_ok();
    if args.len() >= 2 && is_type(&args[0]) {
        if let Ok(n) = args[1].parse::<usize>() {
            return (Some((args[0].clone(), n)), args[2..].to_vec());
        }
    }
    if let Some(a) = args.first() {
        let (t, n) = a.split_at(a.chars().next().map_or(0, |c| c.len_utf8()));
        if is_type(t) {
            if let Ok(n) = n.parse::<usize>() {
                return (Some((t.to_string(), n)), args[1..].to_vec());
            }
        }
    }
    (None, args.to_vec())
}

fn build_config(cli: &Cli, system: Option<(String, usize)>) -> Result<RunConfig, Failure> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let (pos_type, pos_rank) = match system {
        Some((t, n)) => (Some(t), Some(n)),
        None => (None, None),
    };
    if let (Some(a), Some(b)) = (&pos_type, &cli.lie_type) {
        if !a.eq_ignore_ascii_case(b) {
            return Err(Failure::usage(format!("type given twice: '{a}' and --type {b}")));
        }
    }
    if let (Some(a), Some(b)) = (pos_rank, cli.rank) {
        if a != b {
            return Err(Failure::usage(format!("rank given twice: {a} and --rank {b}")));
        }
    }
    let t = pos_type.or(cli.lie_type.clone()).or(file.lie_type).ok_or_else(|| Failure::usage("missing Lie type (e.g. `A 2` or --type A --rank 2)"))?;
    let rank = pos_rank.or(cli.rank).or(file.rank).ok_or_else(|| Failure::usage("missing rank"))?;
    let lie_type = LieType::parse(&t).map_err(|_| Failure::usage(format!("unknown Lie type '{t}'; expected one of A B C D E F G")))?;
    let format = Format::parse(cli.format.as_deref().or(file.format.as_deref()).unwrap_or("pretty"))?;
    let parse_target = |s: Option<&String>| s.map(|v| Target::parse(v)).transpose().map_err(Failure::from);
    let cfg = RunConfig {
        lie_type,
        rank,
        format,
        non_equivariant: cli.non_equivariant || file.non_equivariant.unwrap_or(false),
        y: parse_target(cli.y.as_ref().or(file.y.as_ref()))?,
        q_prime: parse_target(cli.q_prime.as_ref().or(file.q_prime.as_ref()))?,
        cache_dir: cli.cache_dir.clone().or(file.cache_dir),
        max_rank_cap: cli.max_rank_cap.or(file.max_rank_cap).unwrap_or(DEFAULT_MAX_RANK_CAP),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let args = match &cli.command {
        Command::Expand { args } | Command::Verify { args } | Command::Casselman { args } | Command::Stab { args, .. } => args.clone(),
    };
    let (system, rest) = split_system(&args);
    let cfg = build_config(&cli, system)?;
    let ctx = commands::Context::new(cfg)?;
    match &cli.command {
        Command::Expand { .. } => {
            let (family, w) = rest.split_first().ok_or_else(|| Failure::usage("expand needs a family name"))?;
            let w = if w.is_empty() { None } else { Some(w.join(" ")) };
            ctx.expand(family, w.as_deref())
        }
        Command::Verify { .. } => match rest.as_slice() {
            [suite] => ctx.verify(suite),
            _ => Err(Failure::usage(format!("verify needs exactly one suite: {}", commands::SUITES.join(", ")))),
        },
        Command::Casselman { .. } => {
            if !rest.is_empty() {
                return Err(Failure::usage(format!("unexpected arguments: {}", rest.join(" "))));
            }
            ctx.casselman()
        }
        Command::Stab { chamber, .. } => {
            if !rest.is_empty() {
                return Err(Failure::usage(format!("unexpected arguments: {}", rest.join(" "))));
            }
            ctx.stab(chamber)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("kflag: {}", f.message);
            ExitCode::from(f.code())
        }
    }
}
