//! `qlogistic`: command-line access to the q-deformed logistic toolkit.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qlogistic::dynamics::{DEFAULT_ORBIT_LENGTH, DEFAULT_TAIL, DEFAULT_X0};
use qlogistic::entropy::{lap_counts, DEFAULT_MAX_LEN, DEFAULT_TOLERANCE};
use qlogistic::output::format_sig;
use qlogistic::sweep::write_manifest;
use qlogistic::{
    attractor_scenario, bifurcation_scan, entropy_bisection, gas_check, lyapunov_turning, run_sweep,
    solve_special_constants, threshold_mask, Assignment, Axis, BifurcationSpec, DeformedMap, Error,
    FixedPointRecord, MapFamily, Param, Pattern, Quantity, Slot, SweepSpec,
};

const DIGITS: usize = 6;

#[derive(Parser)]
#[command(name = "qlogistic", version, about = "Dynamics of q-deformed logistic maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value, first two derivatives and Schwarzian derivative at a point.
    Eval {
        #[command(flatten)]
        map: MapArgs,
        /// Point in [0, 1].
        #[arg(long)]
        x: f64,
    },
    /// Fixed points with their stability, the GAS verdict and the attractor scenario.
    FixedPoints {
        #[command(flatten)]
        map: MapArgs,
    },
    /// The parameters q0 (where r1(q) = 4) and q1 (where r1(q) = r2(q)), to 12 decimals.
    Constants,
    /// Topological entropy by kneading bisection against tent maps.
    Entropy {
        #[command(flatten)]
        map: MapArgs,
        /// Target half-width of the log-slope bracket.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Longest kneading prefix compared before a comparison counts as a tie.
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Lap number of the n-th iterate and the growth estimate log(c_n / c_{n-1}).
    LapOracle {
        #[command(flatten)]
        map: MapArgs,
        /// Iterate, at most 25.
        #[arg(long, default_value_t = 18)]
        n: usize,
    },
    /// Lyapunov exponent along the orbit of the turning point.
    Lyapunov {
        #[command(flatten)]
        map: MapArgs,
        /// Orbit length (at least 100); the default is the length used for the reference Lyapunov maps.
        #[arg(long, default_value_t = DEFAULT_ORBIT_LENGTH)]
        n: usize,
    },
    /// Bifurcation diagram: orbit tails over a closed parameter range, as CSV.
    Bifurcation(BifurcationArgs),
    /// Evaluate a quantity on a parameter grid and write `axis1,axis2,value` CSV.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct MapArgs {
    /// Deformation parameters in application order, comma-separated: `--chain 3,0.5`
    /// is phi_{0.5} ∘ phi_3 ∘ f_r. Omit for the plain logistic map.
    #[arg(long, value_delimiter = ',', conflicts_with = "q")]
    chain: Vec<f64>,
    /// Single deformation parameter, same as `--chain Q`.
    #[arg(long)]
    q: Option<f64>,
    /// Logistic parameter in (0, 4].
    #[arg(long)]
    r: f64,
}

impl MapArgs {
    fn build(&self) -> qlogistic::Result<DeformedMap> {
        match self.q {
            Some(q) => DeformedMap::new(self.r, &[q]),
            None => DeformedMap::new(self.r, &self.chain),
        }
    }
}

#[derive(Args)]
struct BifurcationArgs {
    /// Chain in application order; entries are numbers or the names q (= q1), q1, q2.
    /// Empty for the logistic map.
    #[arg(long, default_value = "q")]
    chain_template: String,
    /// Parameter varied along the diagram: r, q, q1 or q2.
    #[arg(long, default_value = "r")]
    param: String,
    #[arg(long)]
    from: f64,
    /// Included when reached exactly by the step.
    #[arg(long)]
    to: f64,
    #[arg(long)]
    step: f64,
    /// Fixed r when another parameter is varied.
    #[arg(long)]
    r: Option<f64>,
    /// Fixed value for q / q1.
    #[arg(long, alias = "q1")]
    q: Option<f64>,
    #[arg(long)]
    q2: Option<f64>,
    /// Initial condition; the default matches the reference diagrams.
    #[arg(long, default_value_t = DEFAULT_X0)]
    x0: f64,
    /// Orbit length; default as in the reference diagrams.
    #[arg(long, default_value_t = DEFAULT_ORBIT_LENGTH)]
    length: usize,
    /// Final iterates kept per parameter value; default as in the reference diagrams.
    #[arg(long, default_value_t = DEFAULT_TAIL)]
    tail: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// entropy, lyapunov, lyapunov-positive or stability.
    #[arg(long)]
    quantity: String,
    /// single, k2, k3, k5 (axes q, r) or q1q2, q1q1q2, q1q2q2, q1q2q1 (axes q1, q2 at fixed --r).
    #[arg(long, default_value = "single")]
    pattern: String,
    /// First axis (q or q1) as MIN..MAX:STEP (MAX excluded) or MIN..=MAX:STEP.
    /// Non-positive q values are skipped, so `0..100:0.1` starts at 0.1.
    #[arg(long)]
    axis1: String,
    /// Second axis (r, or q2 for two-valued patterns), same syntax.
    #[arg(long)]
    axis2: String,
    /// Fixed r for the two-valued patterns.
    #[arg(long)]
    r: Option<f64>,
    /// Entropy tolerance; the default gives the resolution of the reference heatmaps.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
    /// Orbit length for Lyapunov quantities; default as in the reference Lyapunov maps.
    #[arg(long, default_value_t = DEFAULT_ORBIT_LENGTH)]
    orbit_length: usize,
    /// Replace entropy or Lyapunov values by 1 (above the threshold) or 0.
    #[arg(long)]
    mask_threshold: Option<f64>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a plain-text manifest of the run settings.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Output(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Output(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Output(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidSpec(_) | Error::Type(_) => 2,
                Error::ResourceLimit(_) => 4,
                Error::Io { .. } => 1,
                Error::Domain(_) | Error::Singularity(_) | Error::Convergence(_) => 3,
            })
        }
    }
}

fn sig(v: f64) -> String {
    format_sig(v, DIGITS)
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Eval { map, x } => {
            let m = map.build()?;
            let jet = m.jet(x)?;
            writeln!(out, "value = {}", sig(jet.value))?;
            writeln!(out, "d1 = {}", sig(jet.d1))?;
            writeln!(out, "d2 = {}", sig(jet.d2))?;
            match m.schwarzian(x) {
                Ok(s) => writeln!(out, "schwarzian = {}", sig(s))?,
                Err(Error::Singularity(_)) => writeln!(out, "schwarzian = undefined (turning point)")?,
                Err(e) => return Err(e.into()),
            }
        }
        Command::FixedPoints { map } => {
            let m = map.build()?;
            let scenario = attractor_scenario(&m)?;
            write_record(&mut out, &scenario.zero_record)?;
            for rec in &scenario.nonzero_records {
                write_record(&mut out, rec)?;
            }
            match gas_check(&m)? {
                Some(rec) => writeln!(out, "gas = {}", sig(rec.location))?,
                None => writeln!(out, "gas = none")?,
            }
            writeln!(out, "scenario = {}", scenario.kind)?;
        }
        Command::Constants => {
            let (q0, q1) = solve_special_constants()?;
            writeln!(out, "q0 = {q0:.12}")?;
            writeln!(out, "q1 = {q1:.12}")?;
        }
        Command::Entropy { map, tol, max_len } => {
            let h = entropy_bisection(&map.build()?, tol, max_len)?;
            writeln!(out, "entropy = {}", sig(h.value))?;
            writeln!(out, "bracket = [{}, {}]", sig(h.bracket_lo), sig(h.bracket_hi))?;
            writeln!(out, "status = {}", h.status)?;
        }
        Command::LapOracle { map, n } => {
            if n < 2 {
                return Err(Failure::Usage(format!("--n must be at least 2, got {n}")));
            }
            let counts = lap_counts(&map.build()?, n)?;
            let (cn, prev) = (counts[n - 1], counts[n - 2]);
            writeln!(out, "c_{n} = {cn}")?;
            writeln!(out, "estimate = {}", sig((cn as f64 / prev as f64).ln()))?;
        }
        Command::Lyapunov { map, n } => {
            let lambda = lyapunov_turning(&map.build()?, n)?;
            writeln!(out, "lyapunov = {}", sig(lambda))?;
        }
        Command::Bifurcation(args) => bifurcation(args, &mut out)?,
        Command::Sweep(args) => sweep(args, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn write_record(out: &mut impl Write, rec: &FixedPointRecord) -> std::io::Result<()> {
    writeln!(
        out,
        "fixed point {}: multiplier {}, {}{}",
        sig(rec.location),
        sig(rec.multiplier),
        rec.classification,
        if rec.gas { ", GAS" } else { "" }
    )
}

fn parse_param(s: &str) -> Result<Param, Failure> {
    match s {
        "r" => Ok(Param::R),
        "q" | "q1" => Ok(Param::Q1),
        "q2" => Ok(Param::Q2),
        _ => Err(Failure::Usage(format!("unknown parameter `{s}`; expected r, q, q1 or q2"))),
    }
}

fn bifurcation(args: BifurcationArgs, out: &mut impl Write) -> Result<(), Failure> {
    let param = parse_param(&args.param)?;
    let chain = MapFamily::parse_chain(&args.chain_template)?;
    let r = match (param, args.r) {
        (Param::R, Some(_)) => return Err(Failure::Usage("--r is the varied parameter".into())),
        (Param::R, None) => Slot::Var(Param::R),
        (_, Some(r)) => Slot::Fixed(r),
        (_, None) => return Err(Failure::Usage("--r is required unless --param r".into())),
    };
    let mut fixed = Assignment::new();
    if let Some(q) = args.q {
        fixed.set(Param::Q1, q);
    }
    if let Some(q2) = args.q2 {
        fixed.set(Param::Q2, q2);
    }
    let family = MapFamily::new(r, chain);
    for p in [Param::Q1, Param::Q2] {
        if p != param && family.uses(p) && fixed.get(p).is_none() {
            return Err(Failure::Usage(format!("the chain template uses {p}; give its value")));
        }
    }
    let mut spec = BifurcationSpec::new(family, param, Axis::closed(args.from, args.to, args.step)?, fixed);
    spec.x0 = args.x0;
    spec.orbit_length = args.length;
    spec.tail = args.tail;
    let data = bifurcation_scan(&spec)?;
    match args.out {
        Some(path) => data.export_csv(&path)?,
        None => data.write_csv(out)?,
    }
    Ok(())
}

fn sweep(args: SweepArgs, out: &mut impl Write) -> Result<(), Failure> {
    let quantity: Quantity = args.quantity.parse()?;
    let pattern: Pattern = args.pattern.parse()?;
    let mut spec = SweepSpec::new(pattern, quantity, args.axis1.parse()?, args.axis2.parse()?, args.r);
    spec.tolerance = args.tol;
    spec.max_len = args.max_len;
    spec.orbit_length = args.orbit_length;
    spec.validated()?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
    let mut grid = pool.install(|| run_sweep(&spec))?;
    if let Some(t) = args.mask_threshold {
        grid = threshold_mask(&grid, t)?;
    }

    if let Some(path) = &args.manifest {
        let software = concat!("qlogistic ", env!("CARGO_PKG_VERSION"));
        write_manifest(&spec, path, software)?;
    }
    match args.out {
        Some(path) => grid.export_csv(&path)?,
        None => grid.write_csv(out)?,
    }
    Ok(())
}
