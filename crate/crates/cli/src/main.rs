//! `suclass` — count, enumerate, and classify the conjugacy classes of
//! finite-order SU(n) elements and cyclic subgroups in which no matrix
//! has 1 as an eigenvalue.

#![forbid(unsafe_code)]

mod cache;
mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};

use suclass::counting::DEFAULT_ENUMERATION_CEILING;
use suclass::Error;

use output::{Format, EXIT_RESOURCE_LIMIT, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "suclass",
    version,
    about = "Special conjugacy classes and cyclic subgroups of SU(n): exact counts, representatives, and verifications"
)]
struct Cli {
    /// Output format (machine formats are deterministic).
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Worker threads for enumeration; 0 keeps the library default.
    /// Output is identical for every value.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Bypass the on-disk result cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Ceiling for the enumeration search-space estimate C(m+n−2, n).
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CEILING)]
    limit: u64,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count special element classes of order dividing m in SU(n).
    Count {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Count classes of order exactly m instead of dividing m.
        #[arg(long)]
        exact_order: bool,
        /// Comma-separated methods to run and compare.
        #[arg(long, value_enum, value_delimiter = ',',
              default_values_t = [MethodArg::Formula, MethodArg::Enum, MethodArg::Series])]
        methods: Vec<MethodArg>,
    },
    /// Count conjugacy classes of special cyclic subgroups of order m.
    Subgroups {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Drop the scalar (central) class.
        #[arg(long)]
        exclude_center: bool,
        /// List one canonical representative tuple per class.
        #[arg(long)]
        reps: bool,
        /// Re-derive the count with the Burnside-lemma oracle.
        #[arg(long)]
        burnside: bool,
    },
    /// Run a named property suite up to a bound.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        bound: u64,
    },
    /// Expand the class-counting generating function for modulus m.
    Series {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long)]
        order: u64,
    },
    /// Export a named integer sequence over primes.
    Export {
        #[arg(value_enum)]
        sequence: SequenceArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        bound: u64,
    },
    /// Special homotopy classes of maps B(Z/p) -> BSU(n); numerically the
    /// `count` closed form at prime modulus.
    HomotopyClasses {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Formula,
    Enum,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Catalan,
    Wilson,
    PqCongruence,
    FreeOrbits,
    FormulaVsOracle,
}

impl SuiteArg {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteArg::Catalan => "catalan",
            SuiteArg::Wilson => "wilson",
            SuiteArg::PqCongruence => "pq-congruence",
            SuiteArg::FreeOrbits => "free-orbits",
            SuiteArg::FormulaVsOracle => "formula-vs-oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceArg {
    SpcgPp,
    NprimePp,
    CatalanResidues,
}

impl SequenceArg {
    pub fn as_str(&self) -> &'static str {
        match self {
            SequenceArg::SpcgPp => "spcg-pp",
            SequenceArg::NprimePp => "nprime-pp",
            SequenceArg::CatalanResidues => "catalan-residues",
        }
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    std::process::exit(run(cli, &args));
}

fn run(cli: Cli, raw_args: &[String]) -> i32 {
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }

    let cache_key = cache::key_from_args(raw_args);
    if !cli.no_cache {
        if let Some(hit) = cache::lookup(&cache_key) {
            print!("{hit}");
            return 0;
        }
    }

    let result = match &cli.command {
        Cmd::Count {
            n,
            m,
            exact_order,
            methods,
        } => commands::count(*n, *m, *exact_order, methods, cli.limit),
        Cmd::Subgroups {
            n,
            m,
            exclude_center,
            reps,
            burnside,
        } => commands::subgroups(*n, *m, *exclude_center, *reps, *burnside, cli.limit),
        Cmd::Verify { suite, bound } => commands::verify(*suite, *bound, cli.limit),
        Cmd::Series { m, order } => commands::series(*m, *order),
        Cmd::Export { sequence, bound } => commands::export(*sequence, *bound),
        Cmd::HomotopyClasses { n, p } => commands::homotopy_classes(*n, *p),
    };

    let out = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let rendered = match output::render(cli.format, &out) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    print!("{rendered}");
    if out.exit == 0 && !cli.no_cache {
        cache::store(&cache_key, &rendered);
    }
    out.exit
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE_LIMIT,
        Error::Internal(_) => 1,
        _ => EXIT_USAGE,
    }
}
