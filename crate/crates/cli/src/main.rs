mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rvm_core::arith::ChebyshevTable;
use rvm_core::constants::{normalized_sup, optimize_lambda, table1, KTable, MSpec, SupStrategy};
use rvm_core::empirical::{find_prime_in_power_interval, load_zeros, residual_scan, ZerosDataset, DESK_SCALE_NOTE};
use rvm_core::gaps::{optimize_mu, scan_condition, smallest_m, Admissibility, GapParams, Grid, SmallestMConfig};
use rvm_core::perron::{general_error, quadrature_residual, DeltaInput, FiniteSeries};
use rvm_core::quad::QuadratureSettings;
use rvm_core::weights::{canonical_weight, weight_constants, PiecewiseWeight, WeightTolerances};
use rvm_core::zeta::{NuSelector, ZeroSumParams, ZetaBoundsConfig};

use output::{num, Csv, Run};

const THREADS_ENV: &str = "RVM_THREADS";
const CONFIG_LABEL: &str =
    "results depend on externally supplied zero-count and zero-density constants (see the config provenance lines)";

#[derive(Parser)]
#[command(name = "rvm", version, about = "Explicit error terms for the truncated explicit formula for psi(x)")]
struct Cli {
    /// Write CSV here (plus a `.manifest.json` next to it) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    zeta_config: Option<PathBuf>,
    #[arg(long, global = true)]
    k_table: Option<PathBuf>,
    #[arg(long, global = true)]
    sieve_cache: Option<PathBuf>,
    #[arg(long, global = true)]
    zeros: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Constants N, L and theta' of a weight.
    Weights(WeightArgs),
    #[command(subcommand)]
    Perron(PerronCmd),
    #[command(subcommand)]
    Zeta(ZetaCmd),
    #[command(subcommand)]
    Constants(ConstantsCmd),
    #[command(subcommand)]
    Gaps(GapsCmd),
    #[command(subcommand)]
    Empirical(EmpiricalCmd),
}

#[derive(Args)]
struct WeightArgs {
    /// Weight file (`k=<int> xi=<real>` header, then `a b c0 c1 ...` per piece); canonical weight if absent.
    #[arg(long)]
    weight: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-12)]
    root_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    admissibility_tol: f64,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 4000)]
    max_intervals: usize,
}

impl QuadArgs {
    fn settings(&self) -> QuadratureSettings {
        QuadratureSettings { abs_tol: self.abs_tol, rel_tol: self.rel_tol, max_intervals: self.max_intervals }
    }
}

#[derive(Subcommand)]
enum PerronCmd {
    /// Checks |v(y) - J(y, kappa')| <= Delta(y) on a grid, or a finite series against its error bound.
    Validate {
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [-10.0, -5.0, -2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0])]
        y: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.2, 1.0])]
        kappa_prime: Vec<f64>,
        /// Finite series file with `n a_n` lines; switches to the series check.
        #[arg(long)]
        series: Option<PathBuf>,
        #[arg(long, default_value_t = 10.5)]
        x: f64,
        #[arg(long, default_value_t = 10.0)]
        t: f64,
        #[arg(long, default_value_t = 1.5)]
        kappa: f64,
        #[arg(long, default_value_t = 1.0)]
        kappa_a: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Zero-free widths at the given heights (log t).
    Nu {
        #[arg(long, value_delimiter = ',', required = true)]
        log_t: Vec<f64>,
    },
    /// Heights (log t) where the combined region changes regime.
    Crossovers,
    /// Bound for the sum of x^(beta-1) over zeros up to 2T.
    Zerosum {
        #[arg(long)]
        log_x: f64,
        #[arg(long)]
        log_t: f64,
        #[arg(long, default_value_t = 0.6)]
        sigma1: f64,
    },
}

#[derive(Args)]
struct SupArgs {
    #[arg(long, default_value_t = 1e-7)]
    rel_tol: f64,
    #[arg(long, default_value_t = 200_000)]
    max_boxes: usize,
}

impl SupArgs {
    fn strategy(&self) -> SupStrategy {
        SupStrategy { rel_tol: self.rel_tol, max_boxes: self.max_boxes, ..SupStrategy::default() }
    }
}

#[derive(Subcommand)]
enum ConstantsCmd {
    /// Certified constant M for one parameter set.
    M {
        #[arg(long)]
        log_x_m: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        lambda: f64,
        /// K; looked up in the K table when absent.
        #[arg(long)]
        k: Option<f64>,
        /// Also minimize over lambda in `lo,hi`.
        #[arg(long, value_parser = parse_pair)]
        optimize: Option<(f64, f64)>,
        #[command(flatten)]
        sup: SupArgs,
    },
    /// Recomputes the ten reference rows.
    Table1 {
        /// Also minimize over lambda in `lo,hi`.
        #[arg(long, value_parser = parse_pair)]
        optimize: Option<(f64, f64)>,
        #[command(flatten)]
        sup: SupArgs,
    },
}

#[derive(Args)]
struct GapGridArgs {
    #[arg(long, default_value_t = 90)]
    m: u32,
    #[arg(long)]
    from_logx: f64,
    #[arg(long)]
    to_logx: f64,
    #[arg(long, conflicts_with = "geometric")]
    step: Option<f64>,
    /// Number of geometric steps instead of a fixed step.
    #[arg(long)]
    geometric: Option<usize>,
    #[arg(long, default_value_t = 0.6)]
    sigma1: f64,
    #[arg(long, default_value_t = 1.0 / 85.0)]
    alpha: f64,
    /// Fail on points where T = x^mu/2 is outside the admissible range instead of flagging them.
    #[arg(long)]
    enforce_admissibility: bool,
}

impl GapGridArgs {
    fn grid(&self) -> Result<Grid> {
        Ok(match (self.step, self.geometric) {
            (Some(s), None) => Grid::Step(s),
            (None, Some(n)) => Grid::Geometric(n),
            (None, None) => bail!(usage("one of --step or --geometric is required")),
            _ => unreachable!("clap rejects both"),
        })
    }

    fn params(&self, mu: f64) -> GapParams {
        let admissibility = if self.enforce_admissibility { Admissibility::Enforce } else { Admissibility::Report };
        GapParams { m: self.m, sigma1: self.sigma1, alpha: self.alpha, admissibility, ..GapParams::primes_between_powers(mu) }
    }
}

#[derive(Subcommand)]
enum GapsCmd {
    /// Evaluates the positivity condition on a grid of log x.
    Scan {
        #[arg(long)]
        mu: f64,
        #[command(flatten)]
        grid: GapGridArgs,
    },
    /// Best mu for a range of log x.
    Optimize {
        #[arg(long, default_value_t = 0.0105)]
        mu_lo: f64,
        #[arg(long, default_value_t = 1.0 / 85.0)]
        mu_hi: f64,
        #[command(flatten)]
        grid: GapGridArgs,
    },
    /// Smallest m for which every segment has a mu with positive condition.
    SmallestM {
        #[arg(long, default_value_t = 60)]
        m_lo: u32,
        #[arg(long, default_value_t = 200)]
        m_hi: u32,
    },
}

#[derive(Subcommand)]
enum EmpiricalCmd {
    /// Residual of the truncated explicit formula over T* in [T, 2T].
    Residual {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// First prime above n^m for each n, with its certificate policy.
    Powers {
        #[arg(long, default_value_t = 90)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n_from: u64,
        #[arg(long)]
        n_to: u64,
    },
}

/// A bad invocation that clap cannot detect.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(s: &str) -> Usage {
    Usage(s.into())
}

fn zeta_config(run: &mut Run, path: &Option<PathBuf>) -> Result<ZetaBoundsConfig> {
    match path {
        Some(p) => Ok(ZetaBoundsConfig::parse(&run.read_config("zeta-config", p)?)?),
        None => {
            run.record_builtin("zeta-config");
            Ok(ZetaBoundsConfig::shipped())
        }
    }
}

fn k_table(run: &mut Run, path: &Option<PathBuf>) -> Result<KTable> {
    match path {
        Some(p) => Ok(KTable::parse(&run.read_config("k-table", p)?)?),
        None => {
            run.record_builtin("k-table");
            Ok(KTable::shipped())
        }
    }
}

fn weight(run: &mut Run, path: &Option<PathBuf>) -> Result<PiecewiseWeight> {
    match path {
        Some(p) => Ok(PiecewiseWeight::parse(&run.read_config("weight", p)?)?),
        None => Ok(canonical_weight()),
    }
}

fn zeros(run: &mut Run, path: &Option<PathBuf>) -> Result<ZerosDataset> {
    match path {
        Some(p) => {
            let text = run.read_config("zeros", p)?;
            Ok(load_zeros(text.as_bytes())?)
        }
        None => {
            run.record_builtin("zeros");
            Ok(ZerosDataset::bundled())
        }
    }
}

/// Loads the sieve cache when it covers `limit`, otherwise sieves and refreshes it.
fn sieve(run: &mut Run, path: &Option<PathBuf>, limit: u64) -> Result<ChebyshevTable> {
    let Some(p) = path else { return Ok(ChebyshevTable::new(limit)?) };
    if p.exists() {
        let t = ChebyshevTable::load(p)?;
        if t.limit() >= limit {
            run.record_file("sieve-cache", p);
            return Ok(t);
        }
    }
    let t = ChebyshevTable::new(limit)?;
    t.save(p).with_context(|| format!("writing sieve cache {}", p.display()))?;
    run.record_file("sieve-cache", p);
    Ok(t)
}

fn nu_row(z: &ZetaBoundsConfig, log_t: f64) -> Vec<String> {
    let mut cells = vec![num(log_t)];
    for s in [NuSelector::Classical, NuSelector::Ford, NuSelector::Yang, NuSelector::Vk, NuSelector::Combined] {
        cells.push(z.nu(log_t, s).map(num).unwrap_or_default());
    }
    cells
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
    let p = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok((p(a)?, p(b)?))
}

fn dispatch(cli: Cli, run: &mut Run) -> Result<Csv> {
    match cli.command {
        Command::Weights(a) => {
            let w = weight(run, &a.weight)?;
            let tol = WeightTolerances { root: a.root_tol, admissibility: a.admissibility_tol };
            let c = weight_constants(&w, &tol)?;
            let mut csv = Csv::new(&["quantity", "lo", "hi"]);
            for (name, i) in [("N", c.n_kxi), ("L", c.l_xi), ("theta_prime", c.theta_prime)] {
                csv.row([name.to_string(), num(i.lo), num(i.hi)]);
            }
            Ok(csv)
        }
        Command::Perron(PerronCmd::Validate { weight: wa, quad, y, kappa_prime, series, x, t, kappa, kappa_a, lambda }) => {
            let w = weight(run, &wa.weight)?;
            let tol = WeightTolerances { root: wa.root_tol, admissibility: wa.admissibility_tol };
            let consts = weight_constants(&w, &tol)?;
            let s = quad.settings();
            if let Some(path) = series {
                let series = FiniteSeries::parse(&run.read_config("series", &path)?, kappa, kappa_a)?;
                let approx = series.averaged_integral(x, t, &w, &s)?;
                let gap = (series.partial_sum(x) - approx.value).abs();
                let bound = general_error(&series, x, t, &consts, lambda)?;
                let mut csv = Csv::new(&["x", "T", "partial_sum", "averaged", "gap", "general_error", "quad_error", "holds"]);
                let holds = gap <= bound + approx.error;
                csv.row([x, t, series.partial_sum(x), approx.value, gap, bound, approx.error].map(num).into_iter().chain([holds.to_string()]));
                return Ok(csv);
            }
            let mut csv = Csv::new(&["y", "kappa_prime", "approx", "residual", "delta", "quad_error", "holds"]);
            for &yy in &y {
                for &kp in &kappa_prime {
                    let r = quadrature_residual(&DeltaInput { y: yy, kappa_prime: kp, consts }, &w, &s)?;
                    csv.row([yy, kp, r.approx, r.residual, r.delta, r.quad_error].map(num).into_iter().chain([r.holds().to_string()]));
                }
            }
            Ok(csv)
        }
        Command::Zeta(cmd) => {
            let z = zeta_config(run, &cli.zeta_config)?;
            match cmd {
                ZetaCmd::Nu { log_t } => {
                    let mut csv = Csv::new(&["log_t", "nu1", "nu2", "nu3", "nu4", "combined"]);
                    for l in log_t {
                        csv.row(nu_row(&z, l));
                    }
                    Ok(csv)
                }
                ZetaCmd::Crossovers => {
                    let mut csv = Csv::new(&["from", "to", "log_t"]);
                    for (i, j, c) in z.standard_crossovers()? {
                        csv.row([format!("{i:?}"), format!("{j:?}"), num(c)]);
                    }
                    Ok(csv)
                }
                ZetaCmd::Zerosum { log_x, log_t, sigma1 } => {
                    let b = z.zero_sum_bound(&ZeroSumParams { log_x, log_t, sigma1 })?;
                    let mut csv = Csv::new(&["log_x", "log_t", "sigma1", "value", "low_strip", "density", "count", "sigma_max"]);
                    csv.row([log_x, log_t, sigma1, b.value, b.low_strip, b.density, b.count, b.sigma_max].map(num));
                    run.note(CONFIG_LABEL);
                    Ok(csv)
                }
            }
        }
        Command::Constants(cmd) => {
            let theta = rvm_core::weights::canonical_constants().theta_prime;
            match cmd {
                ConstantsCmd::M { log_x_m, alpha, omega, lambda, k, optimize, sup } => {
                    let k = match k {
                        Some(k) => k,
                        None => {
                            let table = k_table(run, &cli.k_table)?;
                            table
                                .lookup(log_x_m, alpha, omega)
                                .with_context(|| format!("no K row for ({log_x_m}, {alpha}, {omega}); pass --k"))
                                .map_err(|e| Usage(format!("{e:#}")))?
                                .k
                        }
                    };
                    let spec = MSpec { log_x_m, alpha, omega, lambda, k };
                    let s = sup.strategy();
                    let r = normalized_sup(&spec, theta, &s)?;
                    let opt = optimize.map(|b| optimize_lambda(&spec, theta, b, &s)).transpose()?;
                    let mut csv = Csv::new(&[
                        "log_xM", "alpha", "omega", "lambda", "K", "M", "lower", "argmax_log_x", "converged",
                        "first_admissible_log_x", "lambda_opt", "M_opt",
                    ]);
                    let mut cells: Vec<String> = [log_x_m, alpha, omega, lambda, k, r.value, r.lower, r.argmax_log_x].map(num).into();
                    cells.push(r.converged.to_string());
                    cells.push(opt_num(r.first_admissible_log_x));
                    cells.push(opt_num(opt.map(|o| o.lambda)));
                    cells.push(opt_num(opt.map(|o| o.m)));
                    csv.row(cells);
                    Ok(csv)
                }
                ConstantsCmd::Table1 { optimize, sup } => {
                    let table = k_table(run, &cli.k_table)?;
                    let rows = table1(&table, theta, &sup.strategy(), optimize)?;
                    let mut header = vec!["log_xM", "alpha", "omega", "lambda", "M_paper", "M_computed", "ratio"];
                    if optimize.is_some() {
                        header.extend(["lambda_opt", "M_opt"]);
                    }
                    let mut csv = Csv::new(&header);
                    for r in rows {
                        let f = r.reference;
                        let mut cells: Vec<String> = [f.log_x_m, f.alpha, f.omega, f.lambda, f.m, r.computed.value, r.ratio].map(num).into();
                        if let Some(o) = r.optimum {
                            cells.extend([num(o.lambda), num(o.m)]);
                        }
                        csv.row(cells);
                    }
                    Ok(csv)
                }
            }
        }
        Command::Gaps(cmd) => {
            let z = zeta_config(run, &cli.zeta_config)?;
            let csv = match cmd {
                GapsCmd::Scan { mu, grid } => {
                    let s = scan_condition(&grid.params(mu), &z, grid.from_logx, grid.to_logx, grid.grid()?)?;
                    let mut csv = Csv::new(&["log_x", "lhs", "F", "error_term", "e_term", "admissible"]);
                    for r in &s.reports {
                        csv.row([r.log_x, r.lhs, r.f, r.error_term, r.e_term].map(num).into_iter().chain([r.admissible.to_string()]));
                    }
                    run.note(format!("min lhs {} at log x = {}", num(s.min_lhs), num(s.argmin_log_x)));
                    if s.inadmissible > 0 {
                        run.note(format!(
                            "{} of {} points have T = x^mu/2 outside max(51, log^2 x) < T < (x^alpha - 2)/4",
                            s.inadmissible,
                            s.reports.len()
                        ));
                    }
                    for m in &s.marks {
                        run.note(format!("regime change {} at log x = {}", m.label, num(m.log_x)));
                    }
                    csv
                }
                GapsCmd::Optimize { mu_lo, mu_hi, grid } => {
                    let o = optimize_mu(&grid.params(mu_lo), &z, grid.from_logx, grid.to_logx, grid.grid()?, (mu_lo, mu_hi))?;
                    let mut csv = Csv::new(&["m", "mu", "min_lhs", "method"]);
                    csv.row([grid.m.to_string(), num(o.mu), num(o.min_lhs), format!("{:?}", o.method)]);
                    csv
                }
                GapsCmd::SmallestM { m_lo, m_hi } => {
                    let cfg = SmallestMConfig { m_range: (m_lo, m_hi), ..SmallestMConfig::primes_between_powers() };
                    let p = GapParams { admissibility: Admissibility::Report, ..GapParams::primes_between_powers(cfg.mu_bracket.0) };
                    let mut csv = Csv::new(&["m", "segment_lo", "segment_hi", "mu", "min_lhs"]);
                    match smallest_m(&p, &z, &cfg)? {
                        Some(f) => {
                            for (s, o) in cfg.segments.iter().zip(&f.segments) {
                                csv.row([f.m.to_string(), num(s.lo), num(s.hi), num(o.mu), num(o.min_lhs)]);
                            }
                        }
                        None => run.note(format!("no m in [{m_lo}, {m_hi}] is feasible")),
                    }
                    csv
                }
            };
            run.note(CONFIG_LABEL);
            Ok(csv)
        }
        Command::Empirical(cmd) => match cmd {
            EmpiricalCmd::Residual { x, t, steps } => {
                if !(x > 1.0 && x <= 1e12) {
                    bail!(usage("--x must lie in (1, 1e12]"));
                }
                let ds = zeros(run, &cli.zeros)?;
                let table = sieve(run, &cli.sieve_cache, x.floor() as u64)?;
                let r = residual_scan(x, t, &ds, &table, steps)?;
                let mut csv = Csv::new(&["T_star", "residual"]);
                for (ts, v) in &r.profile {
                    csv.row([num(*ts), num(*v)]);
                }
                run.note(format!("psi(x) = {}", num(r.psi)));
                run.note(format!("best residual {} at T* = {} over {} steps", num(r.best_residual), num(r.best_t_star), r.pieces));
                run.note(DESK_SCALE_NOTE);
                Ok(csv)
            }
            EmpiricalCmd::Powers { m, n_from, n_to } => {
                use rayon::prelude::*;
                if n_from > n_to {
                    bail!(usage("--n-from must not exceed --n-to"));
                }
                let found: Vec<_> = (n_from..=n_to).into_par_iter().map(|n| find_prime_in_power_interval(n, m)).collect();
                let mut csv = Csv::new(&["n", "offset", "digits", "test-policy"]);
                for w in found {
                    let w = w?;
                    if !w.verify() {
                        bail!("witness for n = {} failed re-verification", w.n);
                    }
                    csv.row([w.n.to_string(), w.offset.to_string(), w.digits().to_string(), w.policy.to_string()]);
                }
                Ok(csv)
            }
        },
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| Usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        return 1;
    }
    match e.downcast_ref::<rvm_core::Error>() {
        Some(c) if c.is_user_error() => 1,
        Some(_) => 2,
        None => 2,
    }
}

fn run(argv: Vec<String>) -> Result<()> {
    configure_threads()?;
    let cli = Cli::try_parse_from(&argv).map_err(|e| {
        if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
            let _ = e.print();
            std::process::exit(0);
        }
        Usage(e.render().to_string())
    })?;
    let mut run = Run::new(argv, cli.out.clone());
    let csv = dispatch(cli, &mut run)?;
    run.finish(csv)
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(u) = e.downcast_ref::<Usage>() {
                eprint!("{u}");
                if !u.0.ends_with('\n') {
                    eprintln!();
                }
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
