//! Command front end shared by the `mhdconv` binary and the tests.
//!
//! Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 unsupported critical
//! set or regime.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dynamics::{
    integrate_until_escape, sector_probe, Cubic1D, HexSystem, HopfNormalForm, RayOutcome, System, DEFAULT_STEP,
};
use crate::error::Error;
use crate::fields::{pattern_snapshot, FieldSnapshot};
use crate::output::{Cell, Table};
use crate::params::{BoxGeometry, FluidParams, ModeIndex};
use crate::scan::{self, Axis, ScanGrid};
use crate::stability::{critical_rayleigh_capped, find_q0, leading_growth_rate, OnsetKind};
use crate::transition::hopf::{asymptotic_check, center_manifold_coefficient, hopf_coefficient};
use crate::transition::TransitionType;
use crate::transition::real::{classify, p_star, p_star_exact, q_star, sigma_roll, TransitionKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 1.0)]
    pub p1: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub p2: f64,
    #[arg(long = "Q", global = true, default_value_t = 0.0)]
    pub q: f64,
    #[arg(long = "L1", global = true, default_value_t = 1.0)]
    pub l1: f64,
    #[arg(long = "L2", global = true, default_value_t = 1.0)]
    pub l2: f64,
    /// Rayleigh number for commands that evaluate at a given R.
    #[arg(long = "R", global = true)]
    pub r: Option<f64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Accepted for scripting symmetry; every computation is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on the horizontal lattice indices (exact search when absent).
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    /// Flat key=value file; flags on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "mhdconv", version, args_override_self = true, about = "Onset and transition analysis of magnetoconvection in a box")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// First critical Rayleigh number, onset kind and critical indices.
    Critical,
    /// Transition type at steady onset.
    Classify,
    /// Hopf transition number at oscillatory onset.
    Hopf(HopfArgs),
    /// Parameter sweeps over the box or over (p2, Q).
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Integrate a reduced amplitude system, or probe the capture sector.
    #[command(subcommand)]
    Simulate(SimCmd),
    /// Planform samples of a weighted mode combination.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct HopfArgs {
    /// Comma-separated Q values; emits the large-Q table instead of a single record.
    #[arg(long)]
    q_list: Option<String>,
}

#[derive(Debug, Subcommand)]
enum ScanCmd {
    /// Critical index over (L1, L2).
    Minimizers(BoxScan),
    /// Hexagonal criticality along L1/L2 = j/(k√3).
    Hexlines(HexScan),
    /// Transition region over (p2, Q).
    Regions(RegionScan),
}

#[derive(Debug, Args)]
struct BoxScan {
    #[arg(long, default_value_t = 0.5)]
    l1_min: f64,
    #[arg(long, default_value_t = 6.0)]
    l1_max: f64,
    #[arg(long, default_value_t = 0.5)]
    l2_min: f64,
    #[arg(long, default_value_t = 6.0)]
    l2_max: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

#[derive(Debug, Args)]
struct HexScan {
    #[arg(long, default_value_t = 0.5)]
    l1_min: f64,
    #[arg(long, default_value_t = 6.0)]
    l1_max: f64,
    #[arg(long, default_value_t = 0.5)]
    l2_min: f64,
    #[arg(long, default_value_t = 6.0)]
    l2_max: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    /// Largest j or k of the followed lines.
    #[arg(long, default_value_t = 4)]
    max_index: u32,
}

#[derive(Debug, Args)]
struct RegionScan {
    #[arg(long, default_value_t = 0.1)]
    p2_min: f64,
    #[arg(long, default_value_t = 2.0)]
    p2_max: f64,
    #[arg(long, default_value_t = 20)]
    p2_points: usize,
    #[arg(long, default_value_t = 0.0)]
    q_min: f64,
    #[arg(long, default_value_t = 100.0)]
    q_max: f64,
    #[arg(long, default_value_t = 21)]
    q_points: usize,
}

#[derive(Debug, Subcommand)]
enum SimCmd {
    /// dx/dt = βx + bx³
    Cubic(CubicArgs),
    /// Two-mode hexagonal amplitude system.
    Hex(HexArgs),
    /// Planar Hopf normal form.
    Hopf(HopfSimArgs),
    /// Ray fan around the origin of the hexagonal system.
    Sector(SectorArgs),
}

#[derive(Debug, Args)]
struct Integration {
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: f64,
    #[arg(long, default_value_t = 500_000)]
    steps: usize,
    #[arg(long, default_value_t = 100)]
    sample_every: usize,
    /// Treat escape to infinity as a failure (exit 3).
    #[arg(long)]
    expect_converge: bool,
}

#[derive(Debug, Args)]
struct CubicArgs {
    /// Linear rate; derived from --R at the critical roll when absent.
    #[arg(long)]
    beta: Option<f64>,
    /// Cubic coefficient; derived from the physical parameters when absent.
    #[arg(long)]
    b: Option<f64>,
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    x0: f64,
    #[command(flatten)]
    integ: Integration,
}

#[derive(Debug, Args)]
struct HexArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    x0: f64,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    y0: f64,
    #[command(flatten)]
    integ: Integration,
}

#[derive(Debug, Args)]
struct HopfSimArgs {
    /// Linear rate; λ'(R − R_c) from --R when absent.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
    x0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    y0: f64,
    #[command(flatten)]
    integ: Integration,
}

#[derive(Debug, Args)]
struct SectorArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 720)]
    rays: usize,
    /// Starting radius as a multiple of √β.
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// e.g. "2*(2,1,1) + 1*(0,2,1)"
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    combo: String,
    #[arg(long, default_value_t = 1.0)]
    z: f64,
    #[arg(long, default_value_t = 41)]
    nx: usize,
    #[arg(long, default_value_t = 41)]
    ny: usize,
    /// Also write an SVG quiver of (u1, u2).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: msg.into() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::Parse(_) => EXIT_USAGE,
        Error::UnsupportedCriticalSet(_) | Error::InvalidRegime(_) | Error::BranchMismatch(..) => EXIT_UNSUPPORTED,
        _ => EXIT_NUMERIC,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self { code: exit_code(&e), message: e.to_string() }
    }
}

/// What a command produced: text for stdout and files to write.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Response {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", n + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() || k == "config" {
            return Err(CliError::usage(format!("config line {}: bad key", n + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Splices config entries in front of the first flag so later flags win.
fn expand_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = Some(args.get(i + 1).cloned().ok_or_else(|| CliError::usage("--config needs a path"))?);
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::usage(format!("reading {path}: {e}")))?;
    let entries = parse_config(&text)?;
    let first_flag = args.iter().skip(1).position(|a| a.starts_with('-')).map_or(args.len(), |i| i + 1);
    let mut out = args[..first_flag].to_vec();
    for (k, v) in entries {
        if v == "true" {
            out.push(format!("--{k}"));
        } else {
            out.push(format!("--{k}={v}"));
        }
    }
    out.extend_from_slice(&args[first_flag..]);
    Ok(out)
}

/// Parses and runs a command line (argv[0] included) without touching the filesystem
/// except to read `--config`.
pub fn execute<I, S>(argv: I) -> Result<Response, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = expand_config(argv.into_iter().map(Into::into).collect())?;
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Response { stdout: e.to_string(), files: vec![] }),
                _ => Err(CliError::usage(e.to_string())),
            };
        }
    };
    let run = &cli.run;
    let p = FluidParams::new(run.p1, run.p2, run.q)?;
    let geom = BoxGeometry::new(run.l1, run.l2)?;
    if run.truncation == Some(0) {
        return Err(CliError::usage("--truncation must be >= 1"));
    }
    let mut extra = Vec::new();
    let table = match &cli.cmd {
        Command::Critical => cmd_critical(run, &p, &geom)?,
        Command::Classify => cmd_classify(&p, &geom)?,
        Command::Hopf(h) => cmd_hopf(&p, &geom, h)?,
        Command::Scan(s) => cmd_scan(run, &p, &geom, s)?,
        Command::Simulate(s) => cmd_simulate(run, &p, &geom, s)?,
        Command::Render(r) => {
            let (t, snap) = cmd_render(&geom, r)?;
            if let Some(svg) = &r.svg {
                extra.push((svg.clone(), quiver_svg(&snap, &geom)));
            }
            t
        }
    };
    let mut resp = emit(&table, run);
    resp.files.extend(extra);
    Ok(resp)
}

fn companion_path(out: &Path) -> PathBuf {
    match out.extension() {
        Some(e) if e != "jsonl" => out.with_extension("jsonl"),
        _ => {
            let mut s = out.as_os_str().to_owned();
            s.push(".jsonl");
            PathBuf::from(s)
        }
    }
}

/// CSV goes to --out with a JSON-lines companion next to it; without --out the
/// chosen format goes to stdout.
fn emit(table: &Table, run: &RunConfig) -> Response {
    let primary = match run.format {
        Format::Csv => table.to_csv(),
        Format::Jsonl => table.to_jsonl(),
    };
    match &run.out {
        None => Response { stdout: primary, files: vec![] },
        Some(path) => {
            let mut files = vec![(path.clone(), primary)];
            if run.format == Format::Csv {
                files.push((companion_path(path), table.to_jsonl()));
            }
            Response { stdout: String::new(), files }
        }
    }
}

fn set_string(set: &[ModeIndex]) -> String {
    set.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";")
}

fn cmd_critical(run: &RunConfig, p: &FluidParams, geom: &BoxGeometry) -> Result<Table, CliError> {
    let c = critical_rayleigh_capped(p, geom, run.truncation);
    let q0 = if p.p2 < 1.0 { Some(find_q0(p.p1, p.p2, geom)?) } else { None };
    let mut t = Table::new(
        "critical",
        1,
        &["R", "kind", "R_r", "R_c", "critical_indices", "alpha", "rho", "Q0", "near_tie_gap", "runner_up"],
    );
    t.push(vec![
        c.r_first.into(),
        match c.kind {
            OnsetKind::Real => "real",
            OnsetKind::Complex => "complex",
        }
        .into(),
        c.r_r.into(),
        c.r_c.into(),
        set_string(&c.critical_set).into(),
        c.alpha.into(),
        c.rho.into(),
        q0.into(),
        c.near_tie_gap().into(),
        c.runner_up.map(|(m, _)| m.to_string()).into(),
    ]);
    Ok(t)
}

fn cmd_classify(p: &FluidParams, geom: &BoxGeometry) -> Result<Table, CliError> {
    let r = classify(p, geom)?;
    let inventory = r
        .inventory
        .iter()
        .map(|s| format!("{}:{:?}:{}", s.name, s.side, if s.stable { "stable" } else { "unstable" }))
        .collect::<Vec<_>>()
        .join(";");
    let kind = match r.kind {
        TransitionKind::SimpleRoll => "roll",
        TransitionKind::SimpleRectangle => "rectangle",
        TransitionKind::HexagonalPair => "hexagonal",
    };
    let mut t = Table::new(
        "classify",
        1,
        &[
            "kind", "critical_indices", "R_r", "a", "b", "region", "type", "inventory", "sigma_roll", "sqrt_sigma_roll",
            "Qstar", "pstar", "pstar_exact", "sector_half_angle", "near_tie_gap",
        ],
    );
    let sigma = sigma_roll(p, geom, r.critical[0]);
    t.push(vec![
        kind.into(),
        set_string(&r.critical).into(),
        r.r_r.into(),
        r.a.into(),
        r.b.into(),
        r.region.map(|l| l.to_string()).into(),
        r.transition_type.to_string().into(),
        inventory.into(),
        sigma.into(),
        (sigma >= 0.0).then(|| sigma.sqrt()).into(),
        q_star(geom).into(),
        p_star(geom).into(),
        p_star_exact(geom).into(),
        r.sector_half_angle.into(),
        r.near_tie_gap.into(),
    ]);
    Ok(t)
}

fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| CliError::usage(format!("bad number {x:?}: {e}"))))
        .collect()
}

fn cmd_hopf(p: &FluidParams, geom: &BoxGeometry, h: &HopfArgs) -> Result<Table, CliError> {
    if let Some(list) = &h.q_list {
        let qs = parse_list(list)?;
        if qs.len() < 2 || qs.iter().any(|q| !(*q > 0.0)) {
            return Err(CliError::usage("--q-list needs at least two positive values"));
        }
        let rep = asymptotic_check(p, geom, &qs)?;
        let mut t = Table::new(
            "hopf-asymptotics",
            1,
            &["Q", "critical_indices", "gamma_sq", "rho_sq", "rho_sq_over_Q", "limit", "exponent", "b", "type"],
        );
        for (i, &q) in qs.iter().enumerate() {
            let pq = p.with_q(q)?;
            let c = critical_rayleigh_capped(&pq, geom, None);
            let (b, ty) = match hopf_coefficient(&pq, geom) {
                Ok(r) => (Some(r.b), Some(r.transition_type.to_string())),
                Err(_) => (None, None),
            };
            t.push(vec![
                q.into(),
                set_string(&c.critical_set).into(),
                rep.gamma_sq[i].into(),
                rep.rho_sq[i].into(),
                (rep.rho_sq[i] / q).into(),
                rep.limit.into(),
                rep.exponent.into(),
                b.into(),
                ty.into(),
            ]);
        }
        return Ok(t);
    }
    let r = hopf_coefficient(p, geom)?;
    let reduced = center_manifold_coefficient(p, geom, r.jc, r.r_c, r.rho)?;
    let mut t = Table::new(
        "hopf",
        1,
        &["Jc", "R_c", "rho", "b", "lambda_prime", "type", "radius_coefficient", "b_reduced", "type_reduced"],
    );
    t.push(vec![
        r.jc.to_string().into(),
        r.r_c.into(),
        r.rho.into(),
        r.b.into(),
        r.lambda_prime.into(),
        r.transition_type.to_string().into(),
        r.radius_coefficient.into(),
        reduced.into(),
        if reduced < 0.0 { TransitionType::TypeI } else { TransitionType::TypeII }.to_string().into(),
    ]);
    Ok(t)
}

fn cmd_scan(run: &RunConfig, p: &FluidParams, geom: &BoxGeometry, s: &ScanCmd) -> Result<Table, CliError> {
    Ok(match s {
        ScanCmd::Minimizers(a) => {
            let grid = ScanGrid {
                x: Axis::stepped(a.l1_min, a.l1_max, a.step)?,
                y: Axis::stepped(a.l2_min, a.l2_max, a.step)?,
            };
            scan::minimizers_table(&scan::minimizers(p, &grid, run.truncation)?)
        }
        ScanCmd::Hexlines(a) => {
            if a.max_index == 0 {
                return Err(CliError::usage("--max-index must be >= 1"));
            }
            if !(a.l2_min < a.l2_max) {
                return Err(CliError::usage("empty L2 range"));
            }
            let l1 = Axis::stepped(a.l1_min, a.l1_max, a.step)?;
            scan::hexlines_table(&scan::hexlines(p, &l1, (a.l2_min, a.l2_max), a.max_index, run.truncation)?)
        }
        ScanCmd::Regions(a) => {
            let grid = ScanGrid {
                x: Axis::new(a.p2_min, a.p2_max, a.p2_points)?,
                y: Axis::new(a.q_min, a.q_max, a.q_points)?,
            };
            scan::regions_table(&scan::regions(p.p1, geom, &grid)?)
        }
    })
}

fn trajectory_table(t: &crate::dynamics::Trajectory) -> Table {
    let mut tab = Table::new("trajectory", 1, &["t", "x", "y"]);
    for (time, s) in t.t.iter().zip(&t.states) {
        tab.push(vec![(*time).into(), s[0].into(), s[1].into()]);
    }
    tab
}

fn run_system(sys: System, ic: [f64; 2], integ: &Integration) -> Result<Table, CliError> {
    if !(integ.step > 0.0) || integ.steps == 0 {
        return Err(CliError::usage("--step must be > 0 and --steps >= 1"));
    }
    let (traj, escaped) = integrate_until_escape(&sys, ic, integ.step, integ.steps, integ.sample_every)?;
    if let Some(t) = escaped {
        if integ.expect_converge {
            return Err(Error::Diverged { t }.into());
        }
    }
    Ok(trajectory_table(&traj))
}

fn need_r(run: &RunConfig, what: &str) -> Result<f64, CliError> {
    run.r.ok_or_else(|| CliError::usage(format!("--{what} missing: give it or --R to derive it")))
}

fn cmd_simulate(run: &RunConfig, p: &FluidParams, geom: &BoxGeometry, s: &SimCmd) -> Result<Table, CliError> {
    match s {
        SimCmd::Cubic(c) => {
            let (beta, b) = match (c.beta, c.b) {
                (Some(beta), Some(b)) => (beta, b),
                _ => {
                    let rep = classify(p, geom)?;
                    if rep.kind != TransitionKind::SimpleRoll && rep.kind != TransitionKind::SimpleRectangle {
                        return Err(Error::UnsupportedCriticalSet("cubic reduction needs a simple critical mode".into()).into());
                    }
                    let b = match c.b {
                        Some(b) => b,
                        None => rep.full_coefficient.ok_or(Error::ZeroCoefficient("full coefficient"))?,
                    };
                    let beta = match c.beta {
                        Some(beta) => beta,
                        None => leading_growth_rate(rep.critical[0], p, geom, need_r(run, "beta")?)?,
                    };
                    (beta, b)
                }
            };
            run_system(System::Cubic(Cubic1D { beta, b }), [c.x0, 0.0], &c.integ)
        }
        SimCmd::Hex(h) => {
            let (a, b, beta) = match (h.a, h.b, h.beta) {
                (Some(a), Some(b), Some(beta)) => (a, b, beta),
                _ => {
                    let rep = classify(p, geom)?;
                    if rep.kind != TransitionKind::HexagonalPair {
                        return Err(Error::UnsupportedCriticalSet(format!(
                            "{}: not a hexagonal pair",
                            set_string(&rep.critical)
                        ))
                        .into());
                    }
                    let a = h.a.or(rep.a).ok_or(Error::ZeroCoefficient("a"))?;
                    let b = h.b.unwrap_or(rep.b);
                    let beta = match h.beta {
                        Some(beta) => beta,
                        None => leading_growth_rate(rep.critical[0], p, geom, need_r(run, "beta")?)?,
                    };
                    (a, b, beta)
                }
            };
            run_system(System::Hex(HexSystem { a, b, beta }), [h.x0, h.y0], &h.integ)
        }
        SimCmd::Hopf(h) => {
            let (lambda, rho, b) = match (h.lambda, h.rho, h.b) {
                (Some(l), Some(r), Some(b)) => (l, r, b),
                _ => {
                    let rep = hopf_coefficient(p, geom)?;
                    let lambda = match h.lambda {
                        Some(l) => l,
                        None => rep.lambda_prime * (need_r(run, "lambda")? - rep.r_c),
                    };
                    (lambda, h.rho.unwrap_or(rep.rho), h.b.unwrap_or(rep.b))
                }
            };
            run_system(System::Hopf(HopfNormalForm { lambda, rho, b }), [h.x0, h.y0], &h.integ)
        }
        SimCmd::Sector(sa) => {
            if !(sa.beta > 0.0) || !(sa.radius > 0.0) {
                return Err(CliError::usage("--beta and --radius must be > 0"));
            }
            let radius = sa.radius * sa.beta.sqrt();
            let rep = sector_probe(sa.a, sa.b, sa.beta, sa.rays, radius)?;
            let captured = rep.outcomes.iter().filter(|o| **o == RayOutcome::Captured).count();
            let escaped = rep.outcomes.iter().filter(|o| **o == RayOutcome::Escaped).count();
            let mut t = Table::new(
                "sector",
                1,
                &["a", "b", "beta", "rays", "radius", "captured", "escaped", "half_angle_rad", "half_angle_deg", "boundaries"],
            );
            let boundaries = rep.boundaries.iter().map(|x| crate::output::fmt_float(*x)).collect::<Vec<_>>().join(";");
            t.push(vec![
                sa.a.into(),
                sa.b.into(),
                sa.beta.into(),
                sa.rays.into(),
                radius.into(),
                captured.into(),
                escaped.into(),
                rep.half_angle.into(),
                rep.half_angle.map(f64::to_degrees).into(),
                boundaries.into(),
            ]);
            Ok(t)
        }
    }
}

/// Parses `c1*(j,k,l) + c2*(j,k,l) ...`; a bare `(j,k,l)` has weight 1 and
/// an empty string is the empty combination.
pub fn parse_combo(s: &str) -> Result<Vec<(f64, ModeIndex)>, Error> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    let bad = |msg: &str| Error::Parse(format!("combo {s:?}: {msg}"));
    while !rest.is_empty() {
        let mut sign = 1.0;
        if out.is_empty() {
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1.0;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            }
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1.0;
            rest = r;
        } else {
            return Err(bad("expected + or - between terms"));
        }
        let open = rest.find('(').ok_or_else(|| bad("missing '('"))?;
        let coef = match &rest[..open] {
            "" => 1.0,
            c => {
                let c = c.strip_suffix('*').ok_or_else(|| bad("expected '*' before '('"))?;
                c.parse::<f64>().map_err(|_| bad(&format!("bad weight {c:?}")))?
            }
        };
        let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
        if close < open {
            return Err(bad("unbalanced parentheses"));
        }
        let idx: Vec<u32> = rest[open + 1..close]
            .split(',')
            .map(|x| x.parse::<u32>().map_err(|_| bad(&format!("bad index {x:?}"))))
            .collect::<Result<_, _>>()?;
        if idx.len() != 3 {
            return Err(bad("a mode needs three indices"));
        }
        let m = ModeIndex::new(idx[0], idx[1], idx[2]).map_err(|e| bad(&e.to_string()))?;
        let w = sign * coef;
        if !w.is_finite() {
            return Err(bad("weight is not finite"));
        }
        out.push((w, m));
        rest = &rest[close + 1..];
    }
    Ok(out)
}

fn cmd_render(geom: &BoxGeometry, r: &RenderArgs) -> Result<(Table, FieldSnapshot), CliError> {
    let combo = parse_combo(&r.combo)?;
    let snap = pattern_snapshot(&combo, geom, r.z, r.nx, r.ny)?;
    let mut t = Table::new("snapshot", 1, &["x1", "x2", "u1", "u2", "w", "T", "H3"]);
    for i in 0..snap.x1.len() {
        t.push(vec![
            Cell::F(snap.x1[i]),
            Cell::F(snap.x2[i]),
            Cell::F(snap.u1[i]),
            Cell::F(snap.u2[i]),
            Cell::F(snap.w[i]),
            Cell::F(snap.t[i]),
            Cell::F(snap.h3[i]),
        ]);
    }
    Ok((t, snap))
}

/// Arrows of (u1, u2) scaled to the grid spacing, inside the box outline.
pub fn quiver_svg(s: &FieldSnapshot, geom: &BoxGeometry) -> String {
    let size = 600.0;
    let scale = size / geom.l1.max(geom.l2);
    let (w, h) = (geom.l1 * scale, geom.l2 * scale);
    let spacing = (geom.l1 / (s.nx - 1) as f64).min(geom.l2 / (s.ny - 1) as f64) * scale;
    let vmax = s.u1.iter().zip(&s.u2).map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1}\" height=\"{:.1}\" viewBox=\"-10 -10 {:.1} {:.1}\">",
        w + 20.0,
        h + 20.0,
        w + 20.0,
        h + 20.0
    )
    .unwrap();
    writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{w:.1}\" height=\"{h:.1}\" fill=\"none\" stroke=\"black\"/>").unwrap();
    if vmax > 0.0 {
        let k = 0.9 * spacing / vmax;
        for i in 0..s.x1.len() {
            let (x, y) = (s.x1[i] * scale, h - s.x2[i] * scale);
            let (dx, dy) = (s.u1[i] * k, -s.u2[i] * k);
            let len = dx.hypot(dy);
            if len < 1e-3 {
                continue;
            }
            let (ex, ey) = (x + dx, y + dy);
            let (ux, uy) = (dx / len, dy / len);
            let head = (0.3 * len).min(6.0);
            let (lx, ly) = (ex - head * (ux - 0.5 * uy), ey - head * (uy + 0.5 * ux));
            let (rx, ry) = (ex - head * (ux + 0.5 * uy), ey - head * (uy - 0.5 * ux));
            writeln!(
                out,
                "<path d=\"M{x:.2},{y:.2} L{ex:.2},{ey:.2} M{lx:.2},{ly:.2} L{ex:.2},{ey:.2} L{rx:.2},{ry:.2}\" stroke=\"steelblue\" fill=\"none\"/>"
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Entry point for the binary: runs, writes files, returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    match execute(argv) {
        Ok(resp) => {
            print!("{}", resp.stdout);
            for (path, content) in &resp.files {
                if let Err(e) = std::fs::write(path, content) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{}", e.message.trim_end());
            e.code
        }
    }
}
