use casimir_cli::output::{check_tolerance, parse_separation, pool, Units};
use casimir_cli::sweep::{linspace, KernelChoice, SweepSpec};
use casimir_cli::{exit, regions, scenario, selftest, sweep, CliError};
use clap::{Parser, Subcommand};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

/// Dynamic Casimir response kernels, region maps and scenario reports.
#[derive(Parser)]
#[command(name = "dyncasimir", version)]
struct Cli {
    /// Relative tolerance for quadratures, in (1e-12, 1e-2)
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true, env = "DYNCASIMIR_JOBS")]
    jobs: Option<usize>,

    /// Report results in SI units instead of natural units
    #[arg(long, global = true)]
    si: bool,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate A± on a (q, ω) grid and write CSV
    Sweep {
        /// q values (m⁻¹), comma separated
        #[arg(long, value_delimiter = ',', conflicts_with = "q_range")]
        q: Vec<f64>,
        /// q grid as start,stop,count
        #[arg(long, value_delimiter = ',')]
        q_range: Option<Vec<f64>>,
        /// ω values (natural units, m⁻¹), comma separated
        #[arg(long, value_delimiter = ',', conflicts_with = "omega_range")]
        omega: Vec<f64>,
        /// ω grid as start,stop,count
        #[arg(long, value_delimiter = ',')]
        omega_range: Option<Vec<f64>>,
        /// Plate separation H (m) or "inf"
        #[arg(long, default_value = "1")]
        h: String,
        #[arg(long, value_enum, default_value = "both")]
        kernel: KernelChoice,
    },
    /// Evaluate the observables requested by a scenario file
    Scenario { file: PathBuf },
    /// Tag an n×n grid of the (q, ω) plane with its region
    Regions {
        #[arg(long, default_value = "1")]
        h: String,
        #[arg(long)]
        q_max: f64,
        #[arg(long)]
        omega_max: f64,
        #[arg(long, default_value_t = 50)]
        n: usize,
    },
    /// Run the oracle suite
    Selftest {
        #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
        perturb_b: f64,
    },
}

fn grid(list: Vec<f64>, range: Option<Vec<f64>>, name: &str) -> Result<Vec<f64>, CliError> {
    match range {
        Some(r) => {
            if r.len() != 3 {
                return Err(CliError::Validation(format!("{name} range is start,stop,count")));
            }
            let n = r[2];
            if !(n >= 1.0) || n.fract() != 0.0 {
                return Err(CliError::Validation(format!("{name} range count must be a positive integer")));
            }
            Ok(linspace(r[0], r[1], n as usize))
        }
        None => Ok(list),
    }
}

fn write_out(path: &Option<PathBuf>, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let name = p.display().to_string();
            let file = File::create(Path::new(p)).map_err(|e| CliError::io(&name, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(&name, e))
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            f(&mut w).map_err(|e| CliError::io("stdout", e))
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    check_tolerance(cli.tol)?;
    let units = Units::new(cli.si);
    match cli.command {
        Command::Sweep { q, q_range, omega, omega_range, h, kernel } => {
            let spec = SweepSpec {
                q_grid: grid(q, q_range, "q")?,
                omega_grid: grid(omega, omega_range, "omega")?,
                h: parse_separation(&h)?,
                kernel,
                rel_tol: cli.tol,
            };
            spec.validate()?;
            let rows = sweep::run(&spec, &pool(cli.jobs)?)?;
            write_out(&cli.output, |w| sweep::write_csv(&rows, &spec, units, w))?;
            Ok(if sweep::any_nonconverged(&rows) { exit::NON_CONVERGENCE } else { exit::OK })
        }
        Command::Scenario { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| CliError::io(file.display().to_string(), e))?;
            let parsed = scenario::parse(&text)?;
            let report = scenario::run(&parsed, units, cli.tol)?;
            write_out(&cli.output, |w| w.write_all(report.to_toml().as_bytes()))?;
            Ok(report.exit_code())
        }
        Command::Regions { h, q_max, omega_max, n } => {
            let h = parse_separation(&h)?;
            let g = regions::region_grid(h, q_max, omega_max, n)?;
            write_out(&cli.output, |w| regions::write_csv(&g, h, units, w))?;
            Ok(exit::OK)
        }
        Command::Selftest { perturb_b } => {
            let checks = selftest::run(perturb_b);
            let table = selftest::table(&checks);
            write_out(&cli.output, |w| w.write_all(table.as_bytes()))?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                return Err(CliError::SelftestFailed(failed));
            }
            Ok(exit::OK)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
