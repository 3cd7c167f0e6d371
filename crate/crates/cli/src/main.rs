//! `agmon`: enumerate commutative monoids and AG-monoids, twist and untwist
//! single tables, and reproduce the per-order counts.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{error::ErrorKind, CommandFactory, Parser, Subcommand, ValueEnum};

use agmon_core::enumeration::{
    enumerate_ag_monoids_via_construction_with, enumerate_commutative_monoids_with, table1_row_with,
};
use agmon_core::storage::{read_db_file, write_db_file};
use agmon_core::{
    automorphism_group, encode_table, parse_cycle_notation, twist, untwist, CayleyTable,
    EnumerationOptions, Progress, TwistPair,
};

/// Orders at or above this need `--allow-long`.
const LONG_RUNNING_ORDER: usize = 8;

#[derive(Parser)]
#[command(
    name = "agmon",
    version,
    about = "Commutative monoids and AG-monoids up to isomorphism"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// commutative monoids
    Cm,
    /// AG-monoids built by twisting commutative monoids
    Ag,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Worker threads (defaults to the available parallelism)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Permit order 8 and above, which can take a long time
    #[arg(long)]
    allow_long: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all structures of one order and write an AGMON database
    Enumerate {
        #[arg(short = 'n', long, value_parser = clap::value_parser!(u64).range(1..=9))]
        order: u64,
        #[arg(long, value_enum)]
        kind: Kind,
        /// With --kind ag, also include the associative (commutative) AG-monoids
        #[arg(long)]
        include_associative: bool,
        /// Database file to write
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Twist a commutative monoid by an involutive automorphism
    Twist {
        #[arg(long = "in")]
        input: PathBuf,
        /// Automorphism in cycle notation, e.g. "(1,5)(2,4)"
        #[arg(long)]
        alpha: String,
    },
    /// Recover the commutative monoid and automorphism behind an AG-monoid
    Untwist {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Report the algebraic properties of a table
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print monoid and AG-monoid counts for every order up to --max-order
    Table1 {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=9))]
        max_order: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List the automorphism group of a commutative monoid
    Autgroup {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            if !e.to_string().contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn guard_long(order: usize, search: &SearchArgs) {
    if order >= LONG_RUNNING_ORDER && !search.allow_long {
        Cli::command()
            .error(
                ErrorKind::ArgumentConflict,
                format!(
                    "order {order} takes several minutes or more; pass --allow-long to run it \
                     (orders up to {} finish quickly)",
                    LONG_RUNNING_ORDER - 1
                ),
            )
            .exit();
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Enumerate {
            order,
            kind,
            include_associative,
            out,
            search,
        } => {
            let order = order as usize;
            guard_long(order, &search);
            cmd_enumerate(order, kind, include_associative, out.as_deref(), &search)
        }
        Command::Twist { input, alpha } => cmd_twist(&input, &alpha),
        Command::Untwist { input } => cmd_untwist(&input),
        Command::Verify { input } => cmd_verify(&input),
        Command::Table1 { max_order, search } => {
            let max_order = max_order as usize;
            guard_long(max_order, &search);
            cmd_table1(max_order, &search)
        }
        Command::Autgroup { input } => cmd_autgroup(&input),
    }
}

/// Writes throttled progress lines to standard error.
struct ProgressPrinter {
    last: Mutex<Instant>,
}

impl ProgressPrinter {
    fn new() -> Self {
        Self {
            last: Mutex::new(Instant::now()),
        }
    }

    fn report(&self, p: Progress) {
        let mut last = self.last.lock().unwrap();
        if last.elapsed() >= Duration::from_secs(2) || p.prefixes_done == p.prefixes_total {
            *last = Instant::now();
            eprintln!(
                "progress: {}/{} partitions, {} nodes, {} tables",
                p.prefixes_done, p.prefixes_total, p.nodes_visited, p.tables_found
            );
        }
    }
}

fn cmd_enumerate(
    order: usize,
    kind: Kind,
    include_associative: bool,
    out: Option<&Path>,
    search: &SearchArgs,
) -> Result<()> {
    let printer = ProgressPrinter::new();
    let hook = |p: Progress| printer.report(p);
    let opts = EnumerationOptions {
        workers: search.workers.unwrap_or(0) as usize,
        progress: Some(&hook),
    };
    let result = match kind {
        Kind::Cm => enumerate_commutative_monoids_with(order, &opts)?,
        Kind::Ag => enumerate_ag_monoids_via_construction_with(order, include_associative, &opts)?,
    };
    let db = result.into_database()?;
    if let Some(path) = out {
        write_db_file(&db, path).with_context(|| format!("writing {}", path.display()))?;
    }
    println!(
        "order={} kind={} count={}",
        db.order(),
        db.kind().tag(),
        db.count()
    );
    Ok(())
}

fn read_single(path: &Path) -> Result<CayleyTable> {
    let db = read_db_file(path).with_context(|| format!("reading {}", path.display()))?;
    if db.count() != 1 {
        bail!(
            "{} holds {} tables; expected exactly one",
            path.display(),
            db.count()
        );
    }
    Ok(db.into_tables().remove(0))
}

fn cmd_twist(input: &Path, alpha: &str) -> Result<()> {
    let monoid = read_single(input)?;
    let alpha = parse_cycle_notation(alpha, monoid.order()).context("parsing --alpha")?;
    let pair = TwistPair::new(monoid, alpha)?;
    println!("{}", encode_table(&twist(&pair))?);
    Ok(())
}

fn cmd_untwist(input: &Path) -> Result<()> {
    let t = read_single(input)?;
    let pair = untwist(&t)?;
    println!("{}", encode_table(pair.monoid())?);
    println!("{}", pair.alpha());
    Ok(())
}

fn property_line(name: &str, witness: Option<agmon_core::Witness>) -> String {
    match witness {
        None => format!("{name}: true"),
        Some(w) => format!("{name}: false witness={w}"),
    }
}

fn cmd_verify(input: &Path) -> Result<()> {
    let t = read_single(input)?;
    println!(
        "{}",
        property_line("associative", t.associativity_violation())
    );
    println!(
        "{}",
        property_line("commutative", t.commutativity_violation())
    );
    println!(
        "{}",
        property_line("left-invertive", t.left_invertive_violation())
    );
    println!("{}", property_line("medial", t.medial_violation()));
    let ids = t.left_identities();
    let listed: Vec<String> = ids.iter().map(|e| e.to_string()).collect();
    println!(
        "left-identities: {} {{{}}}",
        !ids.is_empty(),
        listed.join(",")
    );
    match t.two_sided_identity() {
        Some(e) => println!("two-sided-identity: true {e}"),
        None => println!("two-sided-identity: false"),
    }
    Ok(())
}

fn cmd_table1(max_order: usize, search: &SearchArgs) -> Result<()> {
    let opts = EnumerationOptions::with_workers(search.workers.unwrap_or(0) as usize);
    println!("order commutative_monoids nonassociative_ag total");
    for n in 1..=max_order {
        let row = table1_row_with(n, &opts)?;
        println!(
            "{} {} {} {}",
            row.order, row.commutative_monoids, row.nonassociative_ag, row.total
        );
    }
    Ok(())
}

fn cmd_autgroup(input: &Path) -> Result<()> {
    let t = read_single(input)?;
    let group = automorphism_group(&t)?;
    println!("group-order: {}", group.order());
    for p in group.members() {
        println!("member: {p}");
    }
    let involutions = group.involutions();
    println!("involutions: {}", involutions.len());
    for p in &involutions {
        println!("involution: {p}");
    }
    let classes = group.conjugacy_classes_of_involutions();
    println!("classes: {}", classes.len());
    for class in classes.classes() {
        println!("class: {} size={}", class[0], class.len());
    }
    Ok(())
}
