use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wyhom::*;
use wythoff_homology::engine::Convention;
use wythoff_homology::polytope::RationalPoint;
use wythoff_homology::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "wyhom", version, about = "Integral homology of finite permutation groups")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for cached resolutions (also read from WYHOM_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Conv::ConjX)]
    convention: Conv,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Conv {
    ConjX,
    ConjXInverse,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H_n(G; Z) for a range of degrees.
    Homology {
        /// Catalog name (M11, S5, Z2xZ2, ...) or a group JSON file.
        #[arg(long)]
        group: String,
        /// Degrees, e.g. `3`, `1..5` or `1,3,5`.
        #[arg(long, default_value = "1..4")]
        degrees: String,
        /// Keep only these primes.
        #[arg(long, value_delimiter = ',', conflicts_with = "min_prime")]
        primes: Option<Vec<u64>>,
        /// Keep only primes at least this large.
        #[arg(long)]
        min_prime: Option<u64>,
        /// sylow, wall, bar, small or auto.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Vertex types for the Wall route, e.g. `0..3`.
        #[arg(long)]
        types: Option<String>,
    },
    /// Periodic p-part patterns for primes dividing |G| once.
    PpartTable {
        /// Groups (default: the six Mathieu groups).
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', default_value = "5,7,11,23")]
        primes: Vec<u64>,
    },
    /// Orbit structure of a Wythoff complex.
    Wythoff {
        #[arg(long)]
        group: String,
        /// `simplex` or a face-poset JSON file.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        types: String,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
    },
    /// Vertex degree of an orbit polytope.
    EdgeDegree {
        #[arg(long)]
        group: String,
        /// Comma separated rationals, e.g. `1,2,3/2`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Include the orbit points in the report.
        #[arg(long)]
        list_points: bool,
    },
    /// Build a free resolution and check it.
    Resolution {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// small, bar, wall or auto.
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        types: Option<String>,
    },
    /// Built-in consistency checks.
    Selftest,
}

fn config(cli: &Cli) -> JobConfig {
    JobConfig {
        seed: cli.seed,
        cache_dir: cli.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)),
        format: match cli.format {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        },
        convention: match cli.convention {
            Conv::ConjX => Convention::ConjX,
            Conv::ConjXInverse => Convention::ConjXInverse,
        },
        ..JobConfig::default()
    }
}

fn types(s: &Option<String>) -> Result<Option<Vec<usize>>> {
    s.as_deref().map(parse_list).transpose()
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let mut cfg = config(cli);
    let f = cfg.format;
    Ok(match &cli.command {
        Command::Homology { group, degrees, primes, min_prime, method, types: t } => {
            cfg.method = Method::parse(method)?;
            cfg.primes = match (primes, min_prime) {
                (Some(ps), _) => PrimeFilter::Only(ps.clone()),
                (None, Some(p)) => PrimeFilter::AtLeast(*p),
                (None, None) => PrimeFilter::All,
            };
            let spec = GroupSpec::resolve(group)?;
            (cmd_group_homology(&cfg, &spec, &parse_list(degrees)?, types(t)?)?.render(f)?, true)
        }
        Command::PpartTable { groups, primes } => {
            let specs = match groups {
                Some(gs) => gs.iter().map(|g| GroupSpec::resolve(g)).collect::<Result<Vec<_>>>()?,
                None => mathieu_specs()?,
            };
            (cmd_ppart_table(&cfg, &specs, primes)?.render(f)?, true)
        }
        Command::Wythoff { group, base, types: t, max_dim } => {
            let spec = GroupSpec::resolve(group)?;
            (cmd_wythoff_report(&cfg, &spec, base.as_deref(), &parse_list(t)?, *max_dim)?.render(f)?, true)
        }
        Command::EdgeDegree { group, point, vertex, threads, list_points } => {
            cfg.threads = (*threads).max(1);
            let spec = GroupSpec::resolve(group)?;
            let p: RationalPoint = point.parse()?;
            (cmd_edge_degree(&cfg, &spec, &p, *vertex, *list_points)?.render(f)?, true)
        }
        Command::Resolution { group, degree, method, types: t } => {
            cfg.method = Method::parse(method)?;
            let spec = GroupSpec::resolve(group)?;
            (cmd_resolution(&cfg, &spec, *degree, types(t)?)?.render(f)?, true)
        }
        Command::Selftest => {
            let r = cmd_selftest(&cfg)?;
            (r.render(f)?, r.result.passed)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: self-test failed");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
