use std::path::PathBuf;
use std::process::ExitCode;

use birkhoff_lab::explorer::{
    eigenvalue_scatter, fuzz_monoid_conjecture, raster_cross_section, raster_tetrahedron_slice, CrossSectionSpec,
    PixelClass, TetraPlane, DEFAULT_FUZZ_SEED,
};
use birkhoff_lab::{
    certify_with, fixtures, io, is_bracelet, trotter_factorise_center_ray, BraceletReport, Certificate, HeuristicConfig,
    Verdict,
};
use clap::{Args, Parser, Subcommand};

/// Exit code for input, output and numerical errors.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "birkhoff-lab", version, about = "Bracelet checks, unistochastic witnesses and spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the bracelet report and certificate of a matrix.
    /// Exits 0 if unistochastic, 1 if not, 2 if unknown.
    Check {
        matrix: PathBuf,
        #[command(flatten)]
        heuristic: HeuristicArgs,
    },
    /// Certify a matrix and write the unitary witness, if any.
    Witness {
        matrix: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        heuristic: HeuristicArgs,
    },
    /// Eigenvalues of bracelet circulants on a simplex grid, with the hypocycloid boundary.
    Spectra {
        #[arg(short)]
        d: usize,
        #[arg(long)]
        step: f64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Classified raster of the plane through three matrices.
    CrossSection {
        #[arg(long, num_args = 3, value_names = ["F0", "F1", "F2"])]
        anchors: Vec<PathBuf>,
        #[arg(long, default_value_t = 256)]
        res: usize,
        #[arg(long, default_value_t = 1.0)]
        extent: f64,
        /// Fall back to the heuristic search where no exact method applies.
        #[arg(long)]
        heuristic: bool,
        #[command(flatten)]
        budget: HeuristicArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Slice of the circulant 4x4 tetrahedron through three points given as `a0,a1,a2,a3`.
    Tetra {
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], value_parser = parse_point)]
        plane: Vec<Vec<f64>>,
        #[arg(long, default_value_t = 256)]
        res: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Search for bracelet pairs whose product is not bracelet.
    Fuzz {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_FUZZ_SEED)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the regression fixtures. Exits 1 if any outcome is inconsistent.
    Fixtures {
        #[command(flatten)]
        heuristic: HeuristicArgs,
    },
    /// Write the elementary factors approximating `(1 - λ) 1 + λ W_d`.
    Trotter {
        #[arg(short)]
        d: usize,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 256)]
        steps: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct HeuristicArgs {
    #[arg(long, default_value_t = 100)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl HeuristicArgs {
    fn config(&self) -> HeuristicConfig {
        HeuristicConfig { restarts: self.restarts, max_iters: self.max_iters, tol: self.tol, seed: self.seed }
    }
}

fn parse_point(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Unistochastic => 0,
        Verdict::NotUnistochastic => 1,
        Verdict::Unknown => 2,
    }
}

fn print_report(report: &BraceletReport) {
    println!("{}", BraceletReport::CSV_HEADER);
    println!("{}", report.to_csv_row());
}

fn run(command: Command) -> birkhoff_lab::Result<u8> {
    match command {
        Command::Check { matrix, heuristic } => {
            let b = io::read_matrix(&matrix)?;
            print_report(&is_bracelet(&b));
            let cert = certify_with(&b, &heuristic.config())?;
            println!("{}", cert.to_json(None));
            Ok(verdict_code(cert.verdict()))
        }
        Command::Witness { matrix, output, heuristic } => {
            let b = io::read_matrix(&matrix)?;
            let cert = certify_with(&b, &heuristic.config())?;
            let file = match &cert {
                Certificate::Unistochastic(w) => {
                    io::write_complex_matrix(&output, w.matrix())?;
                    Some(output.as_path())
                }
                _ => None,
            };
            println!("{}", cert.to_json(file));
            Ok(verdict_code(cert.verdict()))
        }
        Command::Spectra { d, step, tolerance, output } => {
            let scatter = eigenvalue_scatter(d, step, tolerance)?;
            let (points, boundary) = scatter.write(&output)?;
            if scatter.experimental {
                eprintln!("d = {d} is outside {{3, 4}}: experimental");
            }
            println!("{}", serde_json::to_string(&scatter.summary()).expect("plain data"));
            eprintln!("wrote {} and {}", points.display(), boundary.display());
            Ok(u8::from(scatter.failures > 0))
        }
        Command::CrossSection { anchors, res, extent, heuristic, budget, output } => {
            let m: Vec<_> = anchors.iter().map(|p| io::read_matrix(p)).collect::<Result<_, _>>()?;
            let spec = CrossSectionSpec {
                anchors: [m[0].clone(), m[1].clone(), m[2].clone()],
                resolution: res,
                extent,
                heuristic: heuristic.then(|| budget.config()),
            };
            let raster = raster_cross_section(&spec)?;
            let (ppm, csv) = raster.write(&output)?;
            print_counts(|c| raster.count(c));
            eprintln!("wrote {} and {}", ppm.display(), csv.display());
            Ok(0)
        }
        Command::Tetra { plane, res, output } => {
            let plane = TetraPlane::new(&plane[0], &plane[1], &plane[2])?;
            let slice = raster_tetrahedron_slice(&plane, res)?;
            let (ppm, csv) = slice.write(&output)?;
            print_counts(|c| slice.raster.count(c));
            eprintln!("wrote {} and {}", ppm.display(), csv.display());
            Ok(0)
        }
        Command::Fuzz { d, trials, seed, output } => {
            let report = fuzz_monoid_conjecture(d, trials, seed, output.as_deref())?;
            println!("{}", serde_json::to_string(&report).expect("plain data"));
            Ok(0)
        }
        Command::Fixtures { heuristic } => {
            let summary = fixtures::regression_fixtures(&heuristic.config())?;
            for o in &summary.outcomes {
                println!("{o}");
            }
            Ok(u8::from(!summary.all_consistent()))
        }
        Command::Trotter { d, lambda, steps, output } => {
            let factors = trotter_factorise_center_ray(d, lambda, steps)?;
            io::write_factors(&output, d, &factors)?;
            eprintln!("wrote {} factors to {}", factors.len(), output.display());
            Ok(0)
        }
    }
}

fn print_counts(count: impl Fn(PixelClass) -> usize) {
    println!("class,pixels");
    for c in [PixelClass::Outside, PixelClass::BistoOnly, PixelClass::Bracelet, PixelClass::Unistochastic] {
        println!("{},{}", c.as_str(), count(c));
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("BIRKHOFF_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = value.parse().map_err(|_| format!("BIRKHOFF_LAB_THREADS={value:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    // clap reports usage errors with code 2, which is taken by `unknown`
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_ERROR);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
