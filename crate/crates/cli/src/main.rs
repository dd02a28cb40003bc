//! `dirac-trap`: command-line front end for the four-level trapped-ion /
//! Dirac simulation library.
//!
//! Subcommands: `eigen` (per-mode spectra and eigenstate coefficients),
//! `evolve` (time series of transition probabilities and correlations),
//! `sweep` (eigen rows along one parameter axis) and `figure` (regenerate
//! the bundled figure data sets as CSV files).
//!
//! Exit codes: 0 success, 2 parameter error, 3 degenerate-regime error
//! (g2 below the floor; re-run with `--oracle`).

mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_trap::dirac::PlanarConfig;
use dirac_trap::dynamics::{
    evolve_ionic, uniform_grid, IonicLabel, DEFAULT_STEPS, DEFAULT_T_MAX,
};
use dirac_trap::entanglement::{concurrence, correlation_report, gamma5_expectation};
use dirac_trap::linalg::Mat4;
use dirac_trap::spectrum::{
    coefficients_from_density, eigensystem, eigensystem_with_fallback, EigenSystem, ModeIndex,
};
use dirac_trap::Error as CoreError;
use std::f64::consts::FRAC_PI_4;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use table::{Cell, Column, Table};

#[derive(Parser)]
#[command(name = "dirac-trap", version, about = "Trapped-ion Dirac dynamics: spectra, quantum oscillations, entanglement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, eigenstate coefficients, concurrence and chirality
    Eigen(EigenArgs),
    /// Time evolution of one ionic level on a uniform p*t grid
    Evolve(EvolveArgs),
    /// Eigen rows swept along one parameter axis
    Sweep(SweepArgs),
    /// Regenerate the figure data sets (CSV, one file per panel)
    Figure(FigureArgs),
}

#[derive(Args, Clone)]
struct PlanarArgs {
    /// Mass m (natural units)
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Momentum magnitude p (propagation along x)
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Electric field magnitude
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Field angle theta in the x-y plane (radians)
    #[arg(long, default_value_t = FRAC_PI_4)]
    theta: f64,
    /// Electric dipole coupling kappa
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Magnetic dipole coupling mu
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
}

impl PlanarArgs {
    fn config(&self) -> Result<PlanarConfig, CliError> {
        PlanarConfig::new(self.m, self.p, self.eps, self.theta, self.kappa, self.mu)
            .map_err(CliError::from)
    }
}

#[derive(Args)]
struct EigenArgs {
    #[command(flatten)]
    planar: PlanarArgs,
    /// Restrict output to one mode, given as "n,s" with n,s in {0,1}
    #[arg(long, value_parser = parse_mode)]
    mode: Option<(u8, u8)>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    planar: PlanarArgs,
    /// Initial ionic level
    #[arg(long, default_value = "a")]
    init: String,
    /// Grid extent in dimensionless p*t units
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    tmax: f64,
    /// Number of grid points (at least 2)
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    planar: PlanarArgs,
    /// Sweep specification "axis=lo:hi:n" with axis one of m|p|eps|theta|kappa|mu
    #[arg(long, value_parser = parse_sweep)]
    sweep: SweepSpec,
    /// Restrict output to one mode, given as "n,s"
    #[arg(long, value_parser = parse_mode)]
    mode: Option<(u8, u8)>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id (1..4)
    id: u32,
    /// Output directory for the per-panel CSV files
    #[arg(long, default_value = "figures")]
    out: PathBuf,
    /// Field magnitude used by every panel
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Grid extent in p*t units (figures 2-4)
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    tmax: f64,
    /// Grid points (figures 2-4)
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fall back to the spectral-projector oracle when the closed-form
    /// ansatz is degenerate (g2 below the floor)
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy)]
struct SweepSpec {
    axis: SweepAxis,
    lo: f64,
    hi: f64,
    n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SweepAxis {
    M,
    P,
    Eps,
    Theta,
    Kappa,
    Mu,
}

fn parse_mode(s: &str) -> Result<(u8, u8), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected \"n,s\" with n,s in {0,1}".into());
    }
    let n: u8 = parts[0].trim().parse().map_err(|_| "n must be 0 or 1")?;
    let s_idx: u8 = parts[1].trim().parse().map_err(|_| "s must be 0 or 1")?;
    if n > 1 || s_idx > 1 {
        return Err("mode indices must be 0 or 1".into());
    }
    Ok((n, s_idx))
}

fn parse_sweep(s: &str) -> Result<SweepSpec, String> {
    let (axis_str, range) = s
        .split_once('=')
        .ok_or("expected \"axis=lo:hi:n\"")?;
    let axis = match axis_str.trim() {
        "m" => SweepAxis::M,
        "p" => SweepAxis::P,
        "eps" => SweepAxis::Eps,
        "theta" => SweepAxis::Theta,
        "kappa" => SweepAxis::Kappa,
        "mu" => SweepAxis::Mu,
        other => return Err(format!("unknown sweep axis '{other}'")),
    };
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err("expected \"axis=lo:hi:n\"".into());
    }
    let lo: f64 = parts[0].parse().map_err(|_| "bad lower bound")?;
    let hi: f64 = parts[1].parse().map_err(|_| "bad upper bound")?;
    let n: usize = parts[2].parse().map_err(|_| "bad point count")?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err("sweep range must be finite".into());
    }
    if n < 1 {
        return Err("sweep needs at least one point".into());
    }
    Ok(SweepSpec { axis, lo, hi, n })
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn param(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::DegenerateInvariant { .. } => CliError {
                code: 3,
                message: format!("{e}; re-run with --oracle to use the spectral-projector fallback"),
            },
            other => CliError {
                code: 2,
                message: other.to_string(),
            },
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: 1,
            message: format!("io error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eigen(args) => run_eigen(args),
        Command::Evolve(args) => run_evolve(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Figure(args) => run_figure(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn build_system(cfg: &PlanarConfig, oracle: bool) -> Result<EigenSystem, CliError> {
    let params = cfg.to_dirac();
    if oracle {
        eigensystem_with_fallback(&params).map_err(CliError::from)
    } else {
        eigensystem(&params).map_err(CliError::from)
    }
}

fn selected_modes(mode: Option<(u8, u8)>) -> Vec<ModeIndex> {
    match mode {
        Some((n, s)) => vec![ModeIndex::new(n, s).expect("validated by clap")],
        None => ModeIndex::ALL.to_vec(),
    }
}

fn eigen_columns() -> Vec<Column> {
    vec![
        Column::scalar("m"),
        Column::scalar("p"),
        Column::scalar("eps"),
        Column::scalar("theta"),
        Column::scalar("kappa"),
        Column::scalar("mu"),
        Column::scalar("n"),
        Column::scalar("s"),
        Column::scalar("lambda"),
        Column::scalar("m_a"),
        Column::scalar("m_b"),
        Column::scalar("m_c"),
        Column::scalar("m_d"),
        Column::phase("phase_ab"),
        Column::phase("phase_ac"),
        Column::phase("phase_ad"),
        Column::scalar("concurrence"),
        Column::scalar("chirality"),
    ]
}

/// One eigen row from a (lambda, rho) pair; `chirality` is the expectation
/// of the chirality operator gamma5 (the closed-form quantity).
fn eigen_row(
    cfg: &PlanarConfig,
    mode: ModeIndex,
    lambda: f64,
    rho: &Mat4,
) -> Result<Vec<Cell>, CliError> {
    let coeffs = coefficients_from_density(rho)?;
    let conc = concurrence(rho)?;
    let chi = gamma5_expectation(rho);
    let phase_cell = |p: Option<dirac_trap::C64>| Cell::Phase(p.map(|z| (z.re, z.im)));
    Ok(vec![
        Cell::Num(cfg.m),
        Cell::Num(cfg.p),
        Cell::Num(cfg.eps),
        Cell::Num(cfg.theta),
        Cell::Num(cfg.kappa),
        Cell::Num(cfg.mu),
        Cell::Num(mode.n() as f64),
        Cell::Num(mode.s() as f64),
        Cell::Num(lambda),
        Cell::Num(coeffs.moduli[0]),
        Cell::Num(coeffs.moduli[1]),
        Cell::Num(coeffs.moduli[2]),
        Cell::Num(coeffs.moduli[3]),
        phase_cell(coeffs.phases[0]),
        phase_cell(coeffs.phases[1]),
        phase_cell(coeffs.phases[2]),
        Cell::Num(conc),
        Cell::Num(chi),
    ])
}

fn eigen_table(cfg: &PlanarConfig, modes: &[ModeIndex], oracle: bool) -> Result<Table, CliError> {
    let sys = build_system(cfg, oracle)?;
    let mut t = Table::new(eigen_columns());
    for &mode in modes {
        let col = mode.column();
        t.push(eigen_row(cfg, mode, sys.lambdas[col], &sys.rhos[col])?);
    }
    Ok(t)
}

fn emit(table: &Table, output: &OutputArgs) -> Result<(), CliError> {
    let mut buf = Vec::new();
    match output.format {
        Format::Csv => table.write_csv(&mut buf)?,
        Format::Json => table.write_json(&mut buf)?,
    }
    match &output.out {
        Some(path) => std::fs::write(path, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

fn run_eigen(args: EigenArgs) -> Result<(), CliError> {
    let cfg = args.planar.config()?;
    let table = eigen_table(&cfg, &selected_modes(args.mode), args.output.oracle)?;
    emit(&table, &args.output)
}

fn run_evolve(args: EvolveArgs) -> Result<(), CliError> {
    let cfg = args.planar.config()?;
    let init: IonicLabel = args
        .init
        .parse()
        .map_err(|e: CoreError| CliError::param(e.to_string()))?;
    if args.steps < 2 {
        return Err(CliError::param("--steps must be at least 2"));
    }
    if !(args.tmax.is_finite() && args.tmax > 0.0) {
        return Err(CliError::param("--tmax must be positive"));
    }
    let sys = build_system(&cfg, args.output.oracle)?;
    // the grid is in dimensionless p*t units; evolution time is pt / p
    if cfg.p <= 0.0 {
        return Err(CliError::param("evolve requires p > 0 for the p*t grid"));
    }
    let grid = uniform_grid(args.tmax, args.steps);

    let mut t = Table::new(vec![
        Column::scalar("m"),
        Column::scalar("p"),
        Column::scalar("eps"),
        Column::scalar("theta"),
        Column::scalar("kappa"),
        Column::scalar("mu"),
        Column::scalar("init"),
        Column::scalar("pt"),
        Column::scalar("p_a"),
        Column::scalar("p_b"),
        Column::scalar("p_c"),
        Column::scalar("p_d"),
        Column::scalar("concurrence"),
        Column::scalar("chirality"),
        Column::scalar("p_ad"),
        Column::scalar("p_cb"),
    ]);
    for &pt in &grid {
        let state = evolve_ionic(&sys, init, pt / cfg.p);
        let report = correlation_report(&state.amps);
        t.push(vec![
            Cell::Num(cfg.m),
            Cell::Num(cfg.p),
            Cell::Num(cfg.eps),
            Cell::Num(cfg.theta),
            Cell::Num(cfg.kappa),
            Cell::Num(cfg.mu),
            Cell::Num(init.index() as f64),
            Cell::Num(pt),
            Cell::Num(state.amps[0].norm_sqr().clamp(0.0, 1.0)),
            Cell::Num(state.amps[1].norm_sqr().clamp(0.0, 1.0)),
            Cell::Num(state.amps[2].norm_sqr().clamp(0.0, 1.0)),
            Cell::Num(state.amps[3].norm_sqr().clamp(0.0, 1.0)),
            Cell::Num(report.concurrence),
            Cell::Num(report.chirality),
            Cell::Num(report.p_ad),
            Cell::Num(report.p_cb),
        ]);
    }
    emit(&t, &args.output)
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    let base = args.planar.clone();
    let spec = args.sweep;
    let modes = selected_modes(args.mode);
    let mut table = Table::new(eigen_columns());
    for i in 0..spec.n {
        let value = if spec.n == 1 {
            spec.lo
        } else {
            spec.lo + (spec.hi - spec.lo) * i as f64 / (spec.n - 1) as f64
        };
        let mut planar = base.clone();
        match spec.axis {
            SweepAxis::M => planar.m = value,
            SweepAxis::P => planar.p = value,
            SweepAxis::Eps => planar.eps = value,
            SweepAxis::Theta => planar.theta = value,
            SweepAxis::Kappa => planar.kappa = value,
            SweepAxis::Mu => planar.mu = value,
        }
        let cfg = planar.config()?;
        let sys = build_system(&cfg, args.output.oracle)?;
        for &mode in &modes {
            let col = mode.column();
            table.push(eigen_row(&cfg, mode, sys.lambdas[col], &sys.rhos[col])?);
        }
    }
    emit(&table, &args.output)
}

// figure parameter sets: (kappa, mu) series in the order used throughout
const FIG_COUPLINGS: [(f64, f64); 3] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
const FIG1_COUPLINGS: [(f64, f64); 3] = [(0.0, 1.0), (1.0, 0.0), (1.0, 1.0)];

fn series_suffix(kappa: f64, mu: f64) -> String {
    format!("k{}mu{}", kappa as u32, mu as u32)
}

fn run_figure(args: FigureArgs) -> Result<(), CliError> {
    if args.steps < 2 {
        return Err(CliError::param("--steps must be at least 2"));
    }
    if !(args.tmax.is_finite() && args.tmax > 0.0) {
        return Err(CliError::param("--tmax must be positive"));
    }
    std::fs::create_dir_all(&args.out)?;
    let files = match args.id {
        1 => figure1(&args)?,
        2 => figure2(&args)?,
        3 => figure3(&args)?,
        4 => figure4(&args)?,
        other => {
            return Err(CliError::param(format!(
                "unknown figure id {other}, expected 1..4"
            )))
        }
    };
    for f in files {
        println!("{}", f.display());
    }
    Ok(())
}

fn write_panel(dir: &Path, name: &str, table: &Table) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    std::fs::write(&path, buf)?;
    Ok(path)
}

/// Concurrence and |<gamma5>| of the eigen-densities vs m/p (theta = pi/4)
/// and vs theta (m/p = 1), one file per s branch. Both observables are
/// independent of n up to the sign absorbed by the absolute value.
fn figure1(args: &FigureArgs) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    let columns = |axis: &'static str| {
        let mut cols = vec![Column::scalar(axis)];
        for (kappa, mu) in FIG1_COUPLINGS {
            // leak the per-series names once; the set is tiny and fixed
            let c: &'static str =
                Box::leak(format!("c_{}", series_suffix(kappa, mu)).into_boxed_str());
            let chi: &'static str =
                Box::leak(format!("abs_chi_{}", series_suffix(kappa, mu)).into_boxed_str());
            cols.push(Column::scalar(c));
            cols.push(Column::scalar(chi));
        }
        cols
    };

    for s in [0u8, 1] {
        let mode = ModeIndex::new(0, s).expect("valid mode");

        let mut by_mp = Table::new(columns("m_over_p"));
        let n_pts = 200;
        for i in 0..n_pts {
            let mp = 10f64.powf(-2.0 + 4.0 * i as f64 / (n_pts - 1) as f64);
            let mut row = vec![Cell::Num(mp)];
            for (kappa, mu) in FIG1_COUPLINGS {
                let cfg = PlanarConfig::new(mp, 1.0, args.eps, FRAC_PI_4, kappa, mu)
                    .map_err(CliError::from)?;
                let sys = build_system(&cfg, true)?;
                let rho = &sys.rhos[mode.column()];
                row.push(Cell::Num(concurrence(rho)?));
                row.push(Cell::Num(gamma5_expectation(rho).abs()));
            }
            by_mp.push(row);
        }
        files.push(write_panel(
            &args.out,
            &format!("fig1_vs_mp_s{s}.csv"),
            &by_mp,
        )?);

        let mut by_theta = Table::new(columns("theta"));
        let n_pts = 201;
        for i in 0..n_pts {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / (n_pts - 1) as f64;
            let mut row = vec![Cell::Num(theta)];
            for (kappa, mu) in FIG1_COUPLINGS {
                let cfg = PlanarConfig::new(1.0, 1.0, args.eps, theta, kappa, mu)
                    .map_err(CliError::from)?;
                let sys = build_system(&cfg, true)?;
                let rho = &sys.rhos[mode.column()];
                row.push(Cell::Num(concurrence(rho)?));
                row.push(Cell::Num(gamma5_expectation(rho).abs()));
            }
            by_theta.push(row);
        }
        files.push(write_panel(
            &args.out,
            &format!("fig1_vs_theta_s{s}.csv"),
            &by_theta,
        )?);
    }
    Ok(files)
}

/// Transition probabilities P_{a -> a,b,c,d}(pt), one file per mass value,
/// all three coupling series side by side.
fn figure2(args: &FigureArgs) -> Result<Vec<PathBuf>, CliError> {
    let grid = uniform_grid(args.tmax, args.steps);
    let mut files = Vec::new();
    for m in [0.0, 1.0] {
        let mut cols = vec![Column::scalar("pt")];
        for (kappa, mu) in FIG_COUPLINGS {
            for level in ["a", "b", "c", "d"] {
                let name: &'static str = Box::leak(
                    format!("p_a{level}_{}", series_suffix(kappa, mu)).into_boxed_str(),
                );
                cols.push(Column::scalar(name));
            }
        }
        let mut t = Table::new(cols);
        let systems: Vec<EigenSystem> = FIG_COUPLINGS
            .iter()
            .map(|&(kappa, mu)| {
                let cfg = PlanarConfig::new(m, 1.0, args.eps, FRAC_PI_4, kappa, mu)?;
                eigensystem(&cfg.to_dirac())
            })
            .collect::<Result<_, CoreError>>()
            .map_err(CliError::from)?;
        for &pt in &grid {
            let mut row = vec![Cell::Num(pt)];
            for sys in &systems {
                let state = evolve_ionic(sys, IonicLabel::A, pt);
                for k in 0..4 {
                    row.push(Cell::Num(state.amps[k].norm_sqr().clamp(0.0, 1.0)));
                }
            }
            t.push(row);
        }
        files.push(write_panel(&args.out, &format!("fig2_m{}.csv", m as u32), &t)?);
    }
    Ok(files)
}

/// Survivor probabilities P_{a->a} and P_{d->d} for kappa = mu = 1, one
/// file per mass value.
fn figure3(args: &FigureArgs) -> Result<Vec<PathBuf>, CliError> {
    let grid = uniform_grid(args.tmax, args.steps);
    let mut files = Vec::new();
    for m in [0.0, 1.0] {
        let cfg = PlanarConfig::new(m, 1.0, args.eps, FRAC_PI_4, 1.0, 1.0)
            .map_err(CliError::from)?;
        let sys = eigensystem(&cfg.to_dirac()).map_err(CliError::from)?;
        let mut t = Table::new(vec![
            Column::scalar("pt"),
            Column::scalar("p_aa"),
            Column::scalar("p_dd"),
        ]);
        for &pt in &grid {
            let a = evolve_ionic(&sys, IonicLabel::A, pt);
            let d = evolve_ionic(&sys, IonicLabel::D, pt);
            t.push(vec![
                Cell::Num(pt),
                Cell::Num(a.amps[0].norm_sqr().clamp(0.0, 1.0)),
                Cell::Num(d.amps[3].norm_sqr().clamp(0.0, 1.0)),
            ]);
        }
        files.push(write_panel(&args.out, &format!("fig3_m{}.csv", m as u32), &t)?);
    }
    Ok(files)
}

/// Concurrence and ionic-superposition chirality of |a(t)>, one file per
/// mass value, all three coupling series.
fn figure4(args: &FigureArgs) -> Result<Vec<PathBuf>, CliError> {
    let grid = uniform_grid(args.tmax, args.steps);
    let mut files = Vec::new();
    for m in [0.0, 1.0] {
        let mut cols = vec![Column::scalar("pt")];
        for (kappa, mu) in FIG_COUPLINGS {
            let c: &'static str =
                Box::leak(format!("c_{}", series_suffix(kappa, mu)).into_boxed_str());
            let chi: &'static str =
                Box::leak(format!("chi_{}", series_suffix(kappa, mu)).into_boxed_str());
            cols.push(Column::scalar(c));
            cols.push(Column::scalar(chi));
        }
        let mut t = Table::new(cols);
        let systems: Vec<EigenSystem> = FIG_COUPLINGS
            .iter()
            .map(|&(kappa, mu)| {
                let cfg = PlanarConfig::new(m, 1.0, args.eps, FRAC_PI_4, kappa, mu)?;
                eigensystem(&cfg.to_dirac())
            })
            .collect::<Result<_, CoreError>>()
            .map_err(CliError::from)?;
        for &pt in &grid {
            let mut row = vec![Cell::Num(pt)];
            for sys in &systems {
                let state = evolve_ionic(sys, IonicLabel::A, pt);
                let report = correlation_report(&state.amps);
                row.push(Cell::Num(report.concurrence));
                row.push(Cell::Num(report.chirality));
            }
            t.push(row);
        }
        files.push(write_panel(&args.out, &format!("fig4_m{}.csv", m as u32), &t)?);
    }
    Ok(files)
}
