use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockkl::verify::{run_suite, Suite};
use fockkl::{Engine, Partition};

/// Canonical bases of the level-one q-Fock space and their decomposition
/// numbers, via affine Kazhdan-Lusztig polynomials.
#[derive(Parser, Debug)]
#[command(name = "fockkl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Single {
    #[arg(long)]
    n: usize,
    /// Rank; defaults to the size of the partition.
    #[arg(long)]
    r: Option<usize>,
    partition: Partition,
}

#[derive(Args, Debug)]
struct Grid {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Maximal number of parts; defaults to m.
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The n-regular partition hat(mu) of size m + (n-1) r (r-1).
    Hat(Single),
    /// The partition tilde(lambda) of size m + (n-1) r (r-1).
    Tilde(Single),
    /// The n-core.
    Core {
        #[arg(long)]
        n: usize,
        partition: Partition,
    },
    /// Length of the longest element stabilising the alcove point of mu + rho.
    Ellmu(Single),
    /// The polynomial d_{lambda,mu}(q).
    Dpoly {
        #[arg(long)]
        n: usize,
        /// Rank; defaults to the common size of the partitions.
        #[arg(long)]
        r: Option<usize>,
        lambda: Partition,
        mu: Partition,
    },
    /// The matrix [d_{lambda,mu}(q)] over partitions of m with at most r parts.
    Dmat(Grid),
    /// The matrix [e_{lambda,mu}(q)].
    Emat(Grid),
    /// A canonical basis vector G+ of the Fock space.
    Gplus {
        #[arg(long)]
        n: usize,
        /// Rank used by the computation; defaults to the smallest admissible.
        #[arg(long)]
        r: Option<usize>,
        /// Read the partition as mu and return the column of its conjugate.
        #[arg(long)]
        mu_conj: bool,
        partition: Partition,
    },
    /// Run a property suite over all partitions of size at most m.
    Verify {
        /// One of th1, th2, inverse, routes, oracle, recursion.
        scope: Suite,
        #[command(flatten)]
        grid: Grid,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(#[from] fockkl::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

struct Output {
    body: String,
    ok: bool,
}

fn data(body: String) -> Output {
    Output { body, ok: true }
}

fn progress(line: &str) {
    eprintln!("{line}");
}

fn no_csv(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!("csv output is only available for matrices, not {what}")));
    }
    Ok(())
}

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn run(cli: &Cli, engine: &Engine) -> Result<Output, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Hat(a) | Command::Tilde(a) => {
            no_csv(fmt, "partitions")?;
            let r = a.r.unwrap_or(a.partition.size());
            let p = match cli.command {
                Command::Hat(_) => a.partition.hat(a.n, r)?,
                _ => a.partition.tilde(a.n, r)?,
            };
            Ok(data(match fmt {
                Format::Json => json(&p),
                _ => format!("{p}\n"),
            }))
        }
        Command::Core { n, partition } => {
            no_csv(fmt, "partitions")?;
            let p = partition.n_core(*n)?;
            Ok(data(match fmt {
                Format::Json => json(&p),
                _ => format!("{p}\n"),
            }))
        }
        Command::Ellmu(a) => {
            no_csv(fmt, "integers")?;
            let r = a.r.unwrap_or(a.partition.size());
            Ok(data(format!("{}\n", fockkl::fock::ell_mu(&a.partition, a.n, r)?)))
        }
        Command::Dpoly { n, r, lambda, mu } => {
            no_csv(fmt, "polynomials")?;
            let r = r.unwrap_or(mu.size());
            let d = engine.d_poly(lambda, mu, *n, r)?;
            Ok(data(match fmt {
                Format::Json => json(&serde_json::json!({
                    "lambda": lambda, "mu": mu, "n": n, "r": r, "poly": d,
                })),
                _ => format!("{d}\n"),
            }))
        }
        Command::Dmat(g) | Command::Emat(g) => {
            let r = g.r.unwrap_or(g.m);
            progress(&format!("computing matrix over partitions of {} (n={}, r={r})", g.m, g.n));
            let mat = match cli.command {
                Command::Dmat(_) => engine.d_matrix(g.m, g.n, r)?,
                _ => engine.e_matrix(g.m, g.n, r)?,
            };
            Ok(data(match fmt {
                Format::Text => mat.to_text(),
                Format::Csv => mat.to_csv(),
                Format::Json => json(&mat.to_json()),
            }))
        }
        Command::Gplus { n, r, mu_conj, partition } => {
            no_csv(fmt, "vectors")?;
            let mu = if *mu_conj { partition.clone() } else { partition.conjugate() };
            let r = r.unwrap_or(mu.len().max(2));
            let v = engine.gplus_vector(&mu, *n, r)?;
            Ok(data(match fmt {
                Format::Json => json(&v.to_json()),
                _ => format!("{v}\n"),
            }))
        }
        Command::Verify { scope, grid } => {
            no_csv(fmt, "reports")?;
            let r = grid.r.unwrap_or(grid.m);
            let rep = run_suite(engine, *scope, grid.m, grid.n, r, &progress)?;
            let body = match fmt {
                Format::Json => json(&rep),
                _ => rep.to_text(),
            };
            Ok(Output { body, ok: rep.passed() })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let engine = Engine::new();
    let result = pool.install(|| run(&cli, &engine)).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.body)?,
            None => std::io::stdout().write_all(out.body.as_bytes())?,
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
