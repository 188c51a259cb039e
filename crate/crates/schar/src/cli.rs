//! The `schar` command line. [`run`] does all the work and returns the exit
//! status with the rendered output, so it can be tested in-process.

use std::ffi::OsString;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schar_core::lattice::{self, BoundMethod, EliminationOrder};
use schar_core::schar::{decode, project};
use schar_core::{CharacterTable, ConstraintSystem, EnumerateOptions, Enumerator, Error, SSimplex, SearchOptions};

use crate::corpus::{self, LoadError};
use crate::driver::{self, RunConfig};
use crate::report::{self, Format, Info, Projection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(name = "schar", version, about = "S-characters of finite groups from their character tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Abort after this many lattice points.
    #[arg(long, global = true)]
    limit: Option<u64>,
    /// Abort after this many seconds.
    #[arg(long, global = true)]
    timeout: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the arithmetic invariants of a character table.
    Validate { table: String },
    /// Class counts of a table.
    Info { table: String },
    /// Vertices and polarity of the S-character simplex.
    Simplex {
        table: String,
        /// Dilate the simplex first.
        #[arg(long, default_value_t = 1)]
        dilate: u64,
    },
    /// Lattice points of the simplex.
    Enumerate {
        table: String,
        /// Require value >= 1 on the rational classes of prime power order.
        #[arg(long)]
        strengthen_prime_power: bool,
        /// Do not count the identity as an element of prime power order.
        #[arg(long)]
        exclude_identity: bool,
        /// Scan the bounding box instead (small tables only).
        #[arg(long)]
        oracle: bool,
        /// Print only the number of points.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        engine: Engine,
    },
    /// S-characters that vanish on no element of prime power order.
    Search {
        table: String,
        #[command(flatten)]
        search: SearchFlags,
        /// Include phase timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Project class functions of a group to a quotient.
    Project {
        table: String,
        /// Fusion map file from `table` to `--target`.
        #[arg(long)]
        fusion: String,
        /// Character table of the quotient.
        #[arg(long)]
        target: String,
        /// Comma-separated coefficients of the irreducibles of `table`;
        /// without this, every search hit is projected.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Option<Vec<i64>>,
        #[command(flatten)]
        search: SearchFlags,
    },
}

#[derive(Args, Debug)]
struct SearchFlags {
    /// Enumerate the full simplex instead of the strengthened one.
    #[arg(long)]
    no_strengthen: bool,
    /// Do not count the identity as an element of prime power order.
    #[arg(long)]
    exclude_identity: bool,
    /// Keep characters that are not faithful.
    #[arg(long)]
    no_faithful: bool,
    /// Keep only actual characters.
    #[arg(long)]
    ordinary_only: bool,
    /// Report the total number of lattice points (implies --no-strengthen).
    #[arg(long)]
    count_all: bool,
    #[command(flatten)]
    engine: Engine,
}

#[derive(Args, Debug)]
struct Engine {
    #[arg(long, value_enum, default_value_t = Method::Projection)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Order::Ascending)]
    order: Order,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Projection,
    Lp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Ascending,
    Descending,
    Natural,
}

impl Engine {
    fn options(&self) -> EnumerateOptions {
        EnumerateOptions {
            bound_method: match self.method {
                Method::Projection => BoundMethod::Projection,
                Method::Lp => BoundMethod::LinearProgramming,
            },
            order: match self.order {
                Order::Ascending => EliminationOrder::RangeAscending,
                Order::Descending => EliminationOrder::RangeDescending,
                Order::Natural => EliminationOrder::Natural,
            },
            limit: None,
        }
    }
}

impl SearchFlags {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            strengthen: !self.no_strengthen,
            include_identity: !self.exclude_identity,
            faithful_only: !self.no_faithful,
            ordinary_only: self.ordinary_only,
            count_all_points: self.count_all,
            enumerate: self.engine.options(),
        }
    }
}

/// Exit status and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Output {
        Output { code, stdout: String::new(), stderr }
    }
}

enum Failure {
    Load(LoadError),
    Core(Error),
    Usage(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Load(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn into_output(self) -> Output {
        match self {
            Failure::Load(e @ LoadError::Io { .. }) => Output::fail(EXIT_IO, format!("error: {e}\n")),
            Failure::Load(e) => Output::fail(EXIT_INVALID, format!("error: {e}\n")),
            Failure::Usage(m) => Output::fail(EXIT_USAGE, format!("error: {m}\n")),
            Failure::Core(e) => {
                let code = match e {
                    Error::LimitExceeded(_) | Error::Interrupted | Error::DimensionCap { .. } => EXIT_LIMIT,
                    Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => EXIT_USAGE,
                    _ => EXIT_INVALID,
                };
                let msg = match e {
                    Error::Interrupted => "error: timed out\n".to_string(),
                    e => format!("error: {e}\n"),
                };
                Output::fail(code, msg)
            }
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Output::fail(EXIT_USAGE, text) } else { Output::ok(text) };
        }
    };
    execute(cli).unwrap_or_else(Failure::into_output)
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    if cli.threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let timeout = match cli.timeout {
        Some(s) if !(s.is_finite() && s > 0.0) => return Err(Failure::Usage("--timeout must be positive".into())),
        s => s.map(Duration::from_secs_f64),
    };
    Ok(RunConfig { threads: cli.threads, limit: cli.limit, timeout })
}

/// Loads a table and refuses it if it fails validation.
fn load_valid(name: &str) -> Result<CharacterTable, Failure> {
    let t = corpus::load_table(name)?;
    let r = t.validate();
    if let Some(v) = r.violations.first() {
        return Err(Failure::Core(Error::InvalidTable(format!("{}: {v}", t.name))));
    }
    Ok(t)
}

fn execute(cli: Cli) -> Result<Output, Failure> {
    let cfg = config(&cli)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { table } => {
            let t = corpus::load_table(table)?;
            let r = t.validate();
            let out = report::validation(&t, &r, fmt);
            Ok(Output { code: if r.is_valid() { EXIT_OK } else { EXIT_INVALID }, stdout: out, stderr: String::new() })
        }
        Command::Info { table } => {
            let t = load_valid(table)?;
            let rt = t.realify()?;
            Ok(Output::ok(report::info(&Info::new(&t, &rt), fmt)))
        }
        Command::Simplex { table, dilate } => {
            let t = load_valid(table)?;
            let s = SSimplex::from_table(&t.realify()?)?;
            let s = if *dilate == 1 { s } else { s.dilate(*dilate)? };
            Ok(Output::ok(report::simplex(&t.name, &s, &s.polarity(), fmt)))
        }
        Command::Enumerate { table, strengthen_prime_power, exclude_identity, oracle, count, engine } => {
            let t = load_valid(table)?;
            let rt = t.realify()?;
            let mut cs = ConstraintSystem::from_simplex(&SSimplex::from_table(&rt)?)?;
            if *strengthen_prime_power {
                let cols: Vec<usize> =
                    rt.prime_power_columns_with(!exclude_identity).into_iter().filter(|&j| cs.row_is_rational(j)).collect();
                cs = cs.strengthen(&cols)?;
            }
            let pts = if *oracle {
                let pts = lattice::brute_force(&cs)?;
                if let Some(l) = cfg.limit.filter(|&l| pts.len() as u64 > l) {
                    return Err(Error::LimitExceeded(l).into());
                }
                pts
            } else {
                let e = Enumerator::new(&cs, &engine.options())?;
                if *count {
                    return Ok(Output::ok(report::count(&t.name, cs.dim(), driver::count(&e, &cfg)?, fmt)));
                }
                driver::enumerate(&e, &cfg)?
            };
            if *count {
                return Ok(Output::ok(report::count(&t.name, cs.dim(), pts.len() as u64, fmt)));
            }
            Ok(Output::ok(report::points(&t.name, cs.dim(), &pts, fmt)))
        }
        Command::Search { table, search, timings } => {
            let t = load_valid(table)?;
            let r = driver::search(&t, &search.options(), &cfg)?;
            Ok(Output::ok(report::search(&t, &r, *timings, fmt)))
        }
        Command::Project { table, fusion, target, coeffs, search } => {
            let g = load_valid(table)?;
            let f = load_valid(target)?;
            let fm = corpus::load_fusion(fusion)?;
            fm.validate(&g, &f)?;
            let sources: Vec<Vec<i64>> = match coeffs {
                Some(c) if c.len() != g.class_count() => {
                    return Err(Failure::Usage(format!("{} coefficients for {} irreducibles", c.len(), g.class_count())))
                }
                Some(c) => vec![c.clone()],
                None => driver::search(&g, &search.options(), &cfg)?.hits.into_iter().map(|h| h.complex_coeffs).collect(),
            };
            let frt = f.realify()?;
            let include_identity = !search.exclude_identity;
            let mut out = Vec::with_capacity(sources.len());
            for c in sources {
                let values = project(&g.combine(&c), &fm, &g, &f)?;
                let decomposition = f.decompose(&values).ok();
                let is_s_character = decomposition
                    .as_ref()
                    .and_then(|d| frt.real_coefficients(d))
                    .filter(|r| r[0] == 1)
                    .is_some_and(|r| decode(&r[1..], &frt, include_identity).is_ok());
                out.push(Projection { source_coefficients: c, values, decomposition, is_s_character });
            }
            Ok(Output::ok(report::projections(&g, &f, &out, fmt)))
        }
    }
}

