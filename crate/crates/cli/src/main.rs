//! `mcgverify`: runs the built-in claim catalog and reports verdicts.

mod cache;
mod range;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mcg_core::claims::{self, Bounds, ClaimReport, RunContext, Selection, Status};
use mcg_core::McgError;

use range::IntRange;

/// Exit code for command-line usage errors; 2 is reserved for failing claims.
const EXIT_USAGE: u8 = 64;
const EXIT_UNKNOWN_CLAIM: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "mcgverify", version, about = "Verify mapping class group claims for closed nonorientable surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every claim whose id matches the filter.
    Run(RunArgs),
    /// Describe one claim.
    Explain {
        id: String,
    },
    /// List claim ids for a selection.
    List(SelectArgs),
}

#[derive(clap::Args, Debug)]
struct SelectArgs {
    /// Claim id glob (`*` and `?`).
    #[arg(long, default_value = "*")]
    filter: String,
    /// Genus range for mapping-class claims, `A..B` or `A`.
    #[arg(long, default_value = "3..9")]
    genus: IntRange,
    /// Rotation parameter ranges for the E_g grid.
    #[arg(long, default_value = "2..16")]
    k: IntRange,
    #[arg(long, default_value = "1..3")]
    p: IntRange,
    #[arg(long, default_value = "0..2")]
    q: IntRange,
}

impl SelectArgs {
    fn selection(&self) -> Selection {
        Selection {
            genus: self.genus.inclusive(),
            k: self.k.inclusive(),
            p: self.p.inclusive(),
            q: self.q.inclusive(),
        }
    }
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    select: SelectArgs,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Largest |k| tried in conjugators c0 · x1^k.
    #[arg(long, default_value_t = mcg_core::mcg::DEFAULT_CONJUGATOR_BOUND)]
    bound_conj: usize,
    /// Largest power tried when computing orders (default 4g).
    #[arg(long)]
    bound_order: Option<usize>,
    /// Node budget for the lantern rewriting search.
    #[arg(long, default_value_t = mcg_core::lantern::DEFAULT_BUDGET)]
    bound_rewrite: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for persisting evaluated automorphisms between runs.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => run(args),
        Command::Explain { id } => match claims::explain(&id) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("mcgverify: {e}");
                ExitCode::from(EXIT_UNKNOWN_CLAIM)
            }
        },
        Command::List(select) => {
            let sel = select.selection();
            if let Err(e) = check_genus(&sel) {
                eprintln!("mcgverify: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            let mut out = std::io::stdout().lock();
            for c in claims::inventory(&sel).iter().filter(|c| claims::glob_match(&select.filter, &c.id)) {
                let _ = writeln!(out, "{}\t{:?}\t{}", c.id, c.kind, c.provenance);
            }
            ExitCode::SUCCESS
        }
    }
}

fn check_genus(sel: &Selection) -> Result<(), McgError> {
    match sel.genus.start() {
        &g if g < 3 => Err(McgError::UnsupportedGenus(g)),
        _ => Ok(()),
    }
}

fn run(args: RunArgs) -> ExitCode {
    let sel = args.select.selection();
    if let Err(e) = check_genus(&sel) {
        eprintln!("mcgverify: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let bounds = Bounds {
        conjugator: args.bound_conj,
        order: args.bound_order,
        rewrite: args.bound_rewrite,
    };
    let ctx = RunContext::new();
    if let Some(dir) = &args.cache {
        if let Err(e) = cache::load(dir, &sel, &ctx) {
            eprintln!("mcgverify: cache: {e}");
        }
    }
    let reports = match claims::run_claims(&args.select.filter, &sel, args.jobs, &bounds, &ctx) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("mcgverify: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(dir) = &args.cache {
        if let Err(e) = cache::store(dir, &ctx) {
            eprintln!("mcgverify: cache: {e}");
        }
    }
    let mut out = std::io::stdout().lock();
    match args.format {
        Format::Json => {
            let _ = serde_json::to_writer_pretty(&mut out, &reports);
            let _ = writeln!(out);
        }
        Format::Text => write_text(&mut out, &reports),
    }
    ExitCode::from(claims::exit_code(&reports) as u8)
}

fn write_text(out: &mut impl Write, reports: &[ClaimReport]) {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    for r in reports {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        let _ = writeln!(out, "{tag:<12} {:<44} expected {:<10} observed {:<10} {:>6} ms", r.id, r.expected, r.observed, r.millis);
        if r.status != Status::Pass {
            let _ = writeln!(out, "             witness: {}", r.witness);
        }
    }
    let _ = writeln!(
        out,
        "{} claims: {} pass, {} fail, {} inconclusive",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Inconclusive)
    );
}
