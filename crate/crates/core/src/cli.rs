//! The `sforge` command line.
//!
//! Exit status is 0 on success, 1 when a command fails at run time (search
//! failure, invalid generator, I/O) and 2 for usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::CenterDensityTable;
use crate::catalog::{append_record, read_records, CodeRecord, Method};
use crate::codes::{canonical_form, CyclicGenerator};
use crate::error::Error;
use crate::ivp::solve_ivp;
use crate::lattice::{associated_lattice, plot_rows, write_plot_csv};
use crate::metrics::{chart_rows, ratio_series, write_csv};
use crate::search::{exhaustive_search_with, heuristic_search, ExhaustiveConfig, SearchConfig, SearchResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sforge", version, about = "Design and evaluate cyclic group codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Shape {
    /// Dimension n (even).
    #[arg(long)]
    dim: usize,
    /// Number of points M.
    #[arg(long)]
    points: u64,
}

#[derive(Debug, Args)]
struct Densities {
    /// CSV `k,lambda,source` overriding the center densities.
    #[arg(long, value_name = "PATH")]
    density_table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shell-constrained random search.
    Design {
        #[command(flatten)]
        shape: Shape,
        /// Distinct candidates to evaluate (Q).
        #[arg(long, default_value_t = 2048)]
        candidates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses the global pool.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Catalog to append the result to.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        densities: Densities,
    },
    /// Optimum over all generators up to isometry.
    Exhaustive {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        densities: Densities,
    },
    /// Optimal initial vector for a given generator.
    Evaluate {
        #[command(flatten)]
        shape: Shape,
        /// Exponents b_1,...,b_k.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        densities: Densities,
    },
    /// Target distance and candidate norm.
    Bound {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        densities: Densities,
    },
    /// Efficiency-chart CSV from a catalog.
    Chart {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write `log2M,ratio,n` rows here.
        #[arg(long)]
        ratios: Option<PathBuf>,
    },
    /// Plot CSV of the associated lattice (n = 4).
    Lattice {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Add translates covering [-M/4, 5M/4)^2.
        #[arg(long)]
        periodic: bool,
        /// Add the arc of radius W.
        #[arg(long)]
        shell: bool,
        #[command(flatten)]
        densities: Densities,
    },
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match run(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Design { shape, candidates, seed, workers, out: catalog, densities } => {
            check_shape(&shape)?;
            if candidates == 0 {
                return Err(Failure::Usage("--candidates must be at least 1".into()));
            }
            let table = load_table(&densities)?;
            let mut cfg = SearchConfig::new(shape.points, shape.dim, candidates, seed);
            cfg.workers = workers;
            let result = heuristic_search(&cfg, &table)?;
            report_search(out, &result)?;
            save(catalog.as_deref(), &CodeRecord::from_search(&result, candidates, seed, Method::Heuristic))
        }
        Command::Exhaustive { shape, workers, out: catalog, densities } => {
            check_shape(&shape)?;
            let table = load_table(&densities)?;
            let mut cfg = ExhaustiveConfig::new(shape.points, shape.dim);
            cfg.workers = workers;
            let result = exhaustive_search_with(&cfg, &table)?;
            report_search(out, &result)?;
            save(catalog.as_deref(), &CodeRecord::from_search(&result, 0, 0, Method::Exhaustive))
        }
        Command::Evaluate { shape, b, out: catalog, densities } => {
            let g = generator(&shape, b)?;
            let table = load_table(&densities)?;
            let solution = solve_ivp(&g)?;
            let record = CodeRecord::from_solution(&g, &solution, &table)?;
            emit(out, &[
                ("M", g.order().to_string()),
                ("n", g.dim().to_string()),
                ("b", join(g.exponents())),
                ("canonical", join(canonical_form(&g).exponents())),
                ("d", solution.d.to_string()),
                ("d_check", record.d_check.to_string()),
                ("ratio", record.ratio.to_string()),
                ("y", join(&solution.y)),
                ("x", join(&solution.x)),
                ("active", join(&solution.active_set)),
            ])?;
            save(catalog.as_deref(), &record)
        }
        Command::Bound { shape, densities } => {
            let k = check_shape(&shape)?;
            let table = load_table(&densities)?;
            let info = table.bound_info(shape.points, k)?;
            emit(out, &[
                ("M", info.order.to_string()),
                ("k", info.k.to_string()),
                ("lambda_k", info.lambda_k.to_string()),
                ("d_check", info.d_check.to_string()),
                ("W", info.w.to_string()),
                ("vacuous", info.vacuous.to_string()),
            ])
        }
        Command::Chart { catalog, out: path, ratios } => {
            let records = read_records(&catalog)?;
            for r in &records {
                r.verify()?;
            }
            let rows = chart_rows(&records)?;
            write_file(&path, |w| write_csv(&rows, w))?;
            let mut summary = vec![("chart_rows", rows.len().to_string())];
            if let Some(ratio_path) = ratios {
                let mut by_dim: BTreeMap<usize, Vec<&CodeRecord>> = BTreeMap::new();
                for r in &records {
                    by_dim.entry(r.dim).or_default().push(r);
                }
                let mut points = Vec::new();
                for group in by_dim.values() {
                    points.extend(ratio_series(group.iter().copied())?);
                }
                write_file(&ratio_path, |w| write_csv(&points, w))?;
                summary.push(("ratio_rows", points.len().to_string()));
            }
            emit(out, &summary)
        }
        Command::Lattice { shape, b, out: path, periodic, shell, densities } => {
            if shape.dim != 4 {
                return Err(Failure::Usage(format!("lattice plots need --dim 4, got {}", shape.dim)));
            }
            let g = generator(&shape, b)?;
            let w = if shell { Some(load_table(&densities)?.candidate_norm(g.order(), 2)?) } else { None };
            let rows = plot_rows(&associated_lattice(&g)?, w, periodic)?;
            write_file(&path, |out| write_plot_csv(&rows, out))?;
            emit(out, &[("rows", rows.len().to_string())])
        }
    }
}

fn check_shape(shape: &Shape) -> std::result::Result<usize, Failure> {
    if shape.dim == 0 || !shape.dim.is_multiple_of(2) {
        return Err(Failure::Usage(format!("--dim must be even and positive, got {}", shape.dim)));
    }
    if shape.points < 2 {
        return Err(Failure::Usage(format!("--points must be at least 2, got {}", shape.points)));
    }
    Ok(shape.dim / 2)
}

fn generator(shape: &Shape, b: Vec<u64>) -> std::result::Result<CyclicGenerator, Failure> {
    let k = check_shape(shape)?;
    if b.len() != k {
        return Err(Failure::Usage(format!("--b needs {k} entries for --dim {}, got {}", shape.dim, b.len())));
    }
    Ok(CyclicGenerator::new(shape.points, shape.dim, b)?)
}

fn load_table(densities: &Densities) -> std::result::Result<CenterDensityTable, Failure> {
    Ok(CenterDensityTable::resolve(densities.density_table.as_deref())?)
}

fn report_search(out: &mut dyn Write, r: &SearchResult) -> Outcome {
    emit(out, &[
        ("M", r.order.to_string()),
        ("n", r.dim.to_string()),
        ("b", join(&r.best_b)),
        ("canonical", join(&r.best_canonical)),
        ("d", r.best_d.to_string()),
        ("d_check", r.d_check.to_string()),
        ("ratio", r.ratio.to_string()),
        ("y", join(&r.best_y)),
        ("x", join(&r.best_x)),
        ("evaluated", r.evaluated.to_string()),
        ("duplicates", r.duplicates_skipped.to_string()),
    ])
}

fn emit(out: &mut dyn Write, lines: &[(&str, String)]) -> Outcome {
    for (key, value) in lines {
        writeln!(out, "{key:<10} {value}").map_err(|e| Error::io("<stdout>", e))?;
    }
    Ok(())
}

fn save(catalog: Option<&Path>, record: &CodeRecord) -> Outcome {
    if let Some(path) = catalog {
        append_record(path, record)?;
    }
    Ok(())
}

fn write_file(path: &Path, body: impl FnOnce(&mut std::fs::File) -> csv::Result<()>) -> Outcome {
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    body(&mut file).map_err(|e| Error::csv(path, e))?;
    Ok(())
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
