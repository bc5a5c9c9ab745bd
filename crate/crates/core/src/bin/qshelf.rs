use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qshelf::partitions::{dump, enumerate, PartitionConstraint};
use qshelf::verify::{
    emit_series, run_suite, Format, SeriesObject, SeriesParams, Suite, SuiteConfig,
};
use qshelf::{Error, Family};

#[derive(Parser)]
#[command(
    name = "qshelf",
    version,
    about = "Exact q-series checks for shelf recursions and partition identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Dump one series.
    Series(SeriesArgs),
    /// Dump the partitions of n in a class, one per line.
    Partitions(PartitionArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
    suite: String,
    #[arg(long, default_value_t = 2)]
    k_min: i64,
    #[arg(long, default_value_t = 4)]
    k_max: i64,
    #[arg(long, env = "QSHELF_ORDER", default_value_t = 60)]
    order: i64,
    #[arg(long, default_value_t = 6)]
    j_max: i64,
    /// Comma-separated starting shelves.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
    big_j: Vec<i64>,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    #[arg(long)]
    parallelism: Option<usize>,
    #[arg(long, hide = true)]
    corrupt_recursion: Option<i64>,
}

#[derive(Args)]
struct Family_ {
    #[arg(long, default_value = "gga", value_parser = ["gga", "gordon"])]
    family: String,
    #[arg(long, default_value_t = 2)]
    k: i64,
    #[arg(long, default_value_t = 1)]
    i: i64,
    #[arg(long, default_value_t = 0)]
    big_j: i64,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SeriesObject::NAMES))]
    what: String,
    #[command(flatten)]
    class: Family_,
    #[arg(long, default_value_t = 0)]
    j: i64,
    /// With `genfun`: count the class of h-entry (i, l) at shelf j.
    #[arg(long)]
    l: Option<i64>,
    #[arg(long, env = "QSHELF_ORDER", default_value_t = 20)]
    order: i64,
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    class: Family_,
    #[arg(long)]
    n: i64,
    /// Bound on every part; with --max-count, the bound appears exactly that often.
    #[arg(long, requires = "max_count")]
    max_part: Option<i64>,
    #[arg(long, requires = "max_part")]
    max_count: Option<i64>,
}

fn family(s: &str) -> Family {
    s.parse().expect("restricted by clap")
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::InvalidParameter(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(a) => {
            let mut cfg = SuiteConfig {
                suite: a.suite.parse().expect("restricted by clap"),
                k_min: a.k_min,
                k_max: a.k_max,
                order: a.order,
                j_max: a.j_max,
                big_j: a.big_j,
                format: if a.format == "json" {
                    Format::Json
                } else {
                    Format::Text
                },
                corrupt_recursion: a.corrupt_recursion,
                ..SuiteConfig::default()
            };
            if let Some(p) = a.parallelism {
                cfg.parallelism = p;
            }
            match run_suite(&cfg) {
                Ok(report) => {
                    print!("{}", report.render());
                    ExitCode::from(report.exit_code as u8)
                }
                Err(e) => fail(e),
            }
        }
        Command::Series(a) => {
            let params = SeriesParams {
                family: family(&a.class.family),
                k: a.class.k,
                i: a.class.i,
                j: a.j,
                big_j: a.class.big_j,
                l: a.l,
            };
            let what: SeriesObject = a.what.parse().expect("restricted by clap");
            match emit_series(what, &params, a.order) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Partitions(a) => {
            let c = match PartitionConstraint::new(
                family(&a.class.family),
                a.class.k,
                a.class.i,
                a.class.big_j,
            ) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let c = match (a.max_part, a.max_count) {
                (Some(m), Some(n)) => c.with_max(m, n),
                _ => c,
            };
            print!("{}", dump(&enumerate(&c, a.n)));
            ExitCode::SUCCESS
        }
    }
}
