//! `invlat`: degree bounds and verification suites for invariant lattices.
//!
//! Exit codes: 0 success, 1 a verification found a violation, 2 invalid
//! input, 3 a search hit its radius cap.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use invlat::{BoundKind, GeomError, SearchError};

use input::{LatticeInput, NumList};
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "invlat", version, about = "Exact degree bounds for lattices of invariant monomials")]
pub struct Cli {
    /// Output format; json and csv are stable, pretty is for reading.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads (overrides INVLAT_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute dspan, bfield and/or bfieldr of one lattice.
    Bounds {
        #[command(flatten)]
        lattice: LatticeInput,
        /// Bounds to compute, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "dspan,bfield,bfieldr")]
        which: Vec<BoundKind>,
        /// Search radius cap; defaults to the proven bound for each quantity.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run a verification suite; exits 1 on any violation.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Tabulate bounds over primes and dimensions.
    Scan {
        /// Primes to use, e.g. 5..13 (non-primes in the range are skipped).
        #[arg(long)]
        primes: NumList,
        /// Dimensions, e.g. 2..4.
        #[arg(long)]
        m: NumList,
        #[arg(long, value_enum, default_value = "sharp")]
        family: commands::Family,
        /// Random systems per (p, m) cell.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Search radius cap for every bound.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Successive minima of the L1 ball and the Minkowski product check.
    Minima {
        #[command(flatten)]
        lattice: LatticeInput,
    },
    /// Short basis with norm certificate, optionally lifted to the
    /// nonnegative orthant along dual pairs.
    Basis {
        #[command(flatten)]
        lattice: LatticeInput,
        /// 1-based coordinate pairs with e_i + e_j in the lattice, e.g. 1-2,3-4.
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Describe a named construction.
    Construct {
        /// sharp:p=..,m=..[,missing=..], counterexample:n=.., dihedral:n=.., dicyclic:n=..
        spec: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// D_span <= n/2 over every index-n sublattice of Z^2 not containing e1, e2, e1-e2.
    Hrd {
        #[arg(long)]
        n: NumList,
        #[arg(long, value_enum, default_value = "all")]
        mode: commands::ModeArg,
    },
    /// bfieldr >= n/2 > ceil(n/3) on the composite counterexample.
    Counterexample {
        #[arg(long)]
        n: NumList,
    },
    /// Minkowski product and Mahler basis bounds on random lattices.
    Minkowski {
        #[command(flatten)]
        sample: commands::SampleArgs,
    },
    /// bfieldr <= bfield <= 2 dspan + 1, dspan < index, bfield <= index.
    Relations {
        #[command(flatten)]
        sample: commands::SampleArgs,
    },
    /// bfield = bfieldr = ceil(p / ceil(m/2)) on sharp-case lattices.
    Sharp {
        #[arg(long)]
        primes: NumList,
        #[arg(long)]
        m: NumList,
        /// For odd m, try every missing coefficient instead of the default.
        #[arg(long)]
        all_missing: bool,
    },
    /// No positive-weight lattice point lies below a D_span witness.
    Blob {
        #[arg(long)]
        n: NumList,
    },
    /// Subtracting a positive-weight lattice point from a larger vector.
    Bite {
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        nmax: u64,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Output still printed on stdout (the report with the violators).
    pub stdout: Option<String>,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), stdout: None }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), stdout: None }
    }

    pub fn violation(message: impl Into<String>, stdout: String) -> Self {
        Failure { code: 1, message: message.into(), stdout: Some(stdout) }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::CapExceeded { .. } => Failure { code: 3, message: e.to_string(), stdout: None },
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Search(s) => s.into(),
            other => Failure::input(other.to_string()),
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var("INVLAT_THREADS") {
        Ok(s) if !s.trim().is_empty() => {
            s.trim().parse().map(Some).map_err(|_| Failure::input(format!("INVLAT_THREADS=`{s}` is not a number")))
        }
        _ => Ok(None),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    if let Some(n) = thread_count(cli.threads)? {
        if n == 0 {
            return Err(Failure::input("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::internal(e.to_string()))?;
    }
    commands::dispatch(cli.command, cli.format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = &f.stdout {
                let _ = stdout.write_all(out.as_bytes());
            }
            eprintln!("invlat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
