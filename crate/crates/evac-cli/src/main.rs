//! Command-line surface for the evacuation library: evaluate a schedule's
//! certified competitive ratio, optimize parameters, sweep fault budgets,
//! simulate a single run, verify cross-module guarantees, and render
//! space-time diagrams.
//!
//! Every command is driven by a parameter document: command-line flags merged
//! over an optional flat `key=value` config file, flags winning. All outputs
//! are deterministic given the document (randomized suites take an explicit
//! seed, printed in every report).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use evac_core::adversary;
use evac_core::kinematics;
use evac_core::optimizer;
use evac_core::schedule::{self, TurningPointRef};
use evac_core::sim;
use evac_core::target::TargetSpec;
use evac_core::{tol, ScheduleKind, ScheduleParams};

/// Published lower bounds quoted for comparison in sweep output; these are
/// cited values, not computed by this tool.
const CITED_LOWER_BOUNDS: [(usize, f64); 4] =
    [(1, 5.233069), (2, 4.434326), (3, 4.076343), (4, 3.870110)];

#[derive(Parser)]
#[command(
    name = "evac",
    about = "Evacuation and search schedules on the line: evaluate, optimize, simulate, draw",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the competitive ratio of one schedule.
    Eval(DocArgs),
    /// Optimize schedule parameters for one fault budget.
    Optimize(DocArgs),
    /// Optimize across fault budgets and emit a CSV table.
    Sweep(DocArgs),
    /// Play one run against a concrete target and fault set.
    Simulate(DocArgs),
    /// Run a named cross-check suite: tables, oracle or identities.
    Verify {
        /// Suite name.
        suite: Suite,
        #[command(flatten)]
        doc: DocArgs,
    },
    /// Render the space-time diagram of a schedule as SVG.
    Diagram(DocArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Reproduce the optimized ratio and parameter tables.
    Tables,
    /// Compare simulated runs against closed-form outcomes.
    Oracle,
    /// Check the structural identities of the schedule family.
    Identities,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Debug)]
enum KindArg {
    Proportional,
    Generalized,
}

/// Raw parameter document: flags layered over an optional config file.
#[derive(Args, Default)]
struct DocArgs {
    /// Flat key=value parameter file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Team size (odd).
    #[arg(long)]
    n: Option<usize>,
    /// Fault budget; with --n both must satisfy n = 2f + 1.
    #[arg(long)]
    f: Option<usize>,
    /// Expansion ratio (> 1).
    #[arg(long)]
    r: Option<f64>,
    /// Pacing parameter of the generalized schedule.
    #[arg(long, conflicts_with = "s")]
    q: Option<f64>,
    /// Back-tracking budget; alternative to --q via q = (r + s)/(r - 1).
    #[arg(long)]
    s: Option<f64>,
    /// Sub-turn depth of the generalized schedule.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Schedule family; inferred from the pacing flags when omitted.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Scan window in rounds for certificates and diagrams.
    #[arg(long)]
    window: Option<usize>,
    /// Relative offset used to realize just-beyond targets.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Seed for randomized suites.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker-thread cap; results do not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Target coordinate for simulate (nonzero).
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Crashed agents for simulate, comma-separated labels.
    #[arg(long)]
    faults: Option<String>,
    /// Overlay the meeting cones on the diagram.
    #[arg(long)]
    cones: bool,
}

/// Fully resolved parameter document.
struct Doc {
    n: Option<usize>,
    f: Option<usize>,
    r: Option<f64>,
    q: Option<f64>,
    s: Option<f64>,
    a: Option<f64>,
    kind: Option<KindArg>,
    window: usize,
    epsilon: f64,
    seed: u64,
    out: Option<PathBuf>,
    x: Option<f64>,
    faults: Vec<usize>,
    cones: bool,
}

fn parse_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {} is not key=value: {raw:?}", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn take<T: std::str::FromStr>(map: &mut BTreeMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match map.remove(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|e| anyhow!("config key {key} = {raw:?}: {e}")),
    }
}

fn parse_faults(raw: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for piece in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.push(piece.parse::<usize>().with_context(|| format!("fault label {piece:?}"))?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl DocArgs {
    /// Merge flags over the config file and apply defaults.
    fn resolve(self) -> Result<Doc> {
        let mut cfg = match &self.config {
            Some(path) => parse_config(path)?,
            None => BTreeMap::new(),
        };
        let n = self.n.or(take(&mut cfg, "n")?);
        let f = self.f.or(take(&mut cfg, "f")?);
        let r = self.r.or(take(&mut cfg, "r")?);
        let q = self.q.or(take(&mut cfg, "q")?);
        let s = self.s.or(take(&mut cfg, "s")?);
        let a = self.a.or(take(&mut cfg, "a")?);
        let kind = match self.kind {
            Some(k) => Some(k),
            None => match take::<String>(&mut cfg, "kind")?.as_deref() {
                None => None,
                Some("proportional") => Some(KindArg::Proportional),
                Some("generalized") => Some(KindArg::Generalized),
                Some(other) => bail!("kind must be proportional or generalized, got {other:?}"),
            },
        };
        let window = self.window.or(take(&mut cfg, "window")?).unwrap_or(3);
        let epsilon = self.epsilon.or(take(&mut cfg, "epsilon")?).unwrap_or(tol::JUST_BEYOND_OFFSET);
        let seed = self.seed.or(take(&mut cfg, "seed")?).unwrap_or(0);
        let jobs = self.jobs.or(take(&mut cfg, "jobs")?);
        let out = self.out.or(take::<PathBuf>(&mut cfg, "out")?);
        let x = self.x.or(take(&mut cfg, "x")?);
        let faults = match self.faults.or(take(&mut cfg, "faults")?) {
            Some(raw) => parse_faults(&raw)?,
            None => Vec::new(),
        };
        let cones = self.cones || take::<bool>(&mut cfg, "cones")?.unwrap_or(false);
        if let Some(stray) = cfg.keys().next() {
            bail!("unknown config key {stray:?}");
        }
        if q.is_some() && s.is_some() {
            bail!("--q and --s are mutually exclusive (q = (r + s)/(r - 1) couples them)");
        }
        if let (Some(n), Some(f)) = (n, f) {
            if n != 2 * f + 1 {
                bail!("inconsistent team: n = {n} but f = {f} requires n = {}", 2 * f + 1);
            }
        }
        if let Some(jobs) = jobs {
            if jobs == 0 {
                bail!("--jobs must be at least 1");
            }
            // Build the global pool once; a second init in the same process
            // (tests calling main twice) is harmless and ignored.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
        }
        Ok(Doc { n, f, r, q, s, a, kind, window, epsilon, seed, out, x, faults, cones })
    }
}

impl Doc {
    fn team(&self) -> Result<usize> {
        match (self.n, self.f) {
            (Some(n), _) => Ok(n),
            (None, Some(f)) => Ok(2 * f + 1),
            (None, None) => bail!("a team is required: pass --n or --f"),
        }
    }

    fn budget(&self) -> Result<usize> {
        match (self.f, self.n) {
            (Some(f), _) => Ok(f),
            (None, Some(n)) if n % 2 == 1 && n >= 3 => Ok((n - 1) / 2),
            _ => bail!("a fault budget is required: pass --f or an odd --n"),
        }
    }

    fn kind(&self) -> KindArg {
        match self.kind {
            Some(k) => k,
            None => {
                if self.q.is_some() || self.s.is_some() || self.a.is_some() {
                    KindArg::Generalized
                } else {
                    KindArg::Proportional
                }
            }
        }
    }

    /// Build the schedule this document describes.
    fn params(&self) -> Result<ScheduleParams> {
        let n = self.team()?;
        let r = self.r.ok_or_else(|| anyhow!("an expansion ratio is required: pass --r"))?;
        let params = match self.kind() {
            KindArg::Proportional => {
                if self.q.is_some() || self.s.is_some() || self.a.is_some() {
                    bail!("--q/--s/--a contradict --kind proportional");
                }
                ScheduleParams::proportional(n, r)?
            }
            KindArg::Generalized => {
                let a = self
                    .a
                    .ok_or_else(|| anyhow!("a generalized schedule needs a sub-turn depth: --a"))?;
                match (self.q, self.s) {
                    (Some(q), None) => ScheduleParams::generalized(n, r, q, a)?,
                    (None, Some(s)) => ScheduleParams::generalized_with_s(n, r, s, a)?,
                    (None, None) => bail!("a generalized schedule needs a pacing: --q or --s"),
                    (Some(_), Some(_)) => unreachable!("rejected at resolve time"),
                }
            }
        };
        Ok(params)
    }

    /// Write `text` to `--out` or standard output.
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .with_context(|| format!("cannot write {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify { suite, doc } => cmd_verify(suite, doc),
        Command::Diagram(args) => cmd_diagram(args),
    };
    match outcome {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::FAILURE
        }
    }
}

/// Certify one schedule and print the full certificate.
fn cmd_eval(args: DocArgs) -> Result<ExitCode> {
    let doc = args.resolve()?;
    let params = doc.params()?;
    let cert = adversary::competitive_ratio(&params, doc.window)?;
    if !cert.stabilized {
        bail!(
            "scan over {} rounds did not stabilize (drift {:.3e}); widen --window",
            doc.window,
            cert.drift
        );
    }
    doc.emit(&cert.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn render_opt_result(opt: &optimizer::OptResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", opt.n);
    let _ = writeln!(out, "f: {}", opt.f);
    match opt.u {
        Some(u) => {
            let _ = writeln!(out, "u: {u}");
        }
        None => {
            let _ = writeln!(out, "u: -");
        }
    }
    let _ = writeln!(out, "r: {:.6}", opt.r_star);
    let _ = writeln!(out, "q: {:.6}", opt.q);
    let _ = writeln!(out, "s: {:.6}", opt.s);
    let _ = writeln!(out, "a: {:.6}", opt.a);
    let _ = writeln!(out, "ratio: {:.6}", opt.ratio);
    let _ = writeln!(out, "ratio-certified: {:.6}", opt.ratio_certified);
    out
}

/// Optimize one fault budget: the generalized family by default, the
/// proportional family with `--kind proportional`.
fn cmd_optimize(args: DocArgs) -> Result<ExitCode> {
    let doc = args.resolve()?;
    let f = doc.budget()?;
    let n = doc.team()?;
    let text = match doc.kind.unwrap_or(KindArg::Generalized) {
        KindArg::Proportional => {
            let (r, ratio, evals) = optimizer::proportional_optimum(n)?;
            let mut out = String::new();
            let _ = writeln!(out, "n: {n}");
            let _ = writeln!(out, "f: {f}");
            let _ = writeln!(out, "kind: proportional");
            let _ = writeln!(out, "r: {r:.6}");
            let _ = writeln!(out, "ratio: {ratio:.6}");
            let _ = writeln!(out, "objective-evals: {evals}");
            out
        }
        KindArg::Generalized => {
            let opt =
                if f == 1 { optimizer::optimize_31()? } else { optimizer::optimize_f(n, f)? };
            render_opt_result(&opt)
        }
    };
    doc.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

/// Optimize budgets `1..=f` and emit the comparison table, with the published
/// lower bounds quoted as comment lines for reference.
fn cmd_sweep(args: DocArgs) -> Result<ExitCode> {
    let doc = args.resolve()?;
    let f_max = doc.budget()?;
    let rows = optimizer::sweep(f_max)?;
    let mut out = optimizer::render_csv(&rows);
    for (f, bound) in CITED_LOWER_BOUNDS {
        if f <= f_max {
            let _ = writeln!(out, "# cited-lower-bound,f={f},{bound:.6}");
        }
    }
    doc.emit(&out)?;
    Ok(ExitCode::SUCCESS)
}

/// Play one run and print its headline times plus the full event log.
fn cmd_simulate(args: DocArgs) -> Result<ExitCode> {
    let doc = args.resolve()?;
    let params = doc.params()?;
    let x = doc.x.ok_or_else(|| anyhow!("simulate needs a target coordinate: --x"))?;
    if x == 0.0 || !x.is_finite() {
        bail!("the target coordinate must be finite and nonzero, got {x}");
    }
    let mut config = sim::SimConfig::new(params, x, doc.faults.clone());
    config.epsilon_rel = doc.epsilon;
    let run = sim::run(&config)?;
    let mut out = String::new();
    let _ = writeln!(out, "target: {x:.9}");
    let _ = writeln!(out, "fault-set: {:?}", doc.faults);
    let _ = writeln!(out, "search-time: {:.9}", run.search_time);
    let _ = writeln!(out, "evacuation-time: {:.9}", run.evacuation_time);
    let _ = writeln!(out, "delta: {:.9}", run.delta());
    let _ = writeln!(out, "ratio: {:.9}", run.evacuation_time / x.abs());
    let _ = writeln!(out, "events:");
    out.push_str(&sim::render_log(&run));
    doc.emit(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: Suite, args: DocArgs) -> Result<ExitCode> {
    let doc = args.resolve()?;
    let (report, pass) = match suite {
        Suite::Tables => verify_tables()?,
        Suite::Oracle => verify_oracle(doc.seed)?,
        Suite::Identities => verify_identities(doc.seed)?,
    };
    let mut out = report;
    let _ = writeln!(out, "result: {}", if pass { "pass" } else { "fail" });
    doc.emit(&out)?;
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

/// Reproduce the optimized ratio and parameter tables.
fn verify_tables() -> Result<(String, bool)> {
    let mut out = String::new();
    let mut pass = true;
    let mut check = |out: &mut String, label: &str, got: f64, want: f64, tolerance: f64| {
        let ok = (got - want).abs() <= tolerance;
        pass &= ok;
        let _ = writeln!(
            out,
            "{label}\tgot={got:.6}\twant={want:.6}\ttol={tolerance:.0e}\t{}",
            if ok { "ok" } else { "FAIL" }
        );
    };

    let table: [(usize, usize, f64); 4] =
        [(3, 1, 7.437011), (5, 2, 7.253767), (7, 3, 7.253767), (9, 4, 7.147026)];
    let mut results = Vec::new();
    for (n, f, want) in table {
        let opt = if f == 1 { optimizer::optimize_31()? } else { optimizer::optimize_f(n, f)? };
        check(&mut out, &format!("ratio.n{n}"), opt.ratio, want, 1e-5);
        check(&mut out, &format!("certified.n{n}"), opt.ratio_certified, want, 1e-5);
        results.push(opt);
    }
    let params: [(usize, usize, f64, f64, f64, f64); 4] = [
        (5, 2, 3.58545, 1.45340, 0.17225, 1.67348),
        (7, 3, 5.97532, 1.45340, 1.25582, 1.67348),
        (9, 4, 4.21585, 1.38190, 0.22813, 2.84964),
        (11, 5, 3.22306, 1.44983, 0.0, 2.32740),
    ];
    for (n, f, r, q, s, a) in params {
        let opt = optimizer::optimize_f(n, f)?;
        check(&mut out, &format!("r.n{n}"), opt.r_star, r, 1e-3);
        check(&mut out, &format!("q.n{n}"), opt.q, q, 1e-3);
        check(&mut out, &format!("s.n{n}"), opt.s, s, 1e-3);
        check(&mut out, &format!("a.n{n}"), opt.a, a, 1e-3);
    }
    Ok((out, pass))
}

/// Randomized simulator-versus-closed-form comparison, 200 draws per family.
fn verify_oracle(seed: u64) -> Result<(String, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let _ = writeln!(out, "seed: {seed}");
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    let run_case = |params: ScheduleParams, rng: &mut ChaCha8Rng| -> Result<f64> {
        let r = params.r();
        let magnitude = rng.gen_range((0.4f64).ln()..(r * r * r).ln()).exp();
        let x = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
        let size = rng.gen_range(0..=params.f());
        let mut fault_set: Vec<usize> =
            rand::seq::index::sample(rng, params.n(), size).into_iter().collect();
        fault_set.sort_unstable();
        let closed =
            adversary::evacuation_outcome_with_faults(&params, TargetSpec::Exact(x), &fault_set)?;
        let run = sim::run(&sim::SimConfig::new(params, x, fault_set))?;
        Ok((closed.evacuation_time - run.evacuation_time).abs()
            / closed.evacuation_time.abs().max(1.0))
    };
    for _ in 0..200 {
        let n = 2 * rng.gen_range(1..=5usize) + 1;
        let r = rng.gen_range((1.3f64).ln()..(8.0f64).ln()).exp();
        let deviation = run_case(ScheduleParams::proportional(n, r)?, &mut rng)?;
        worst = worst.max(deviation);
        cases += 1;
    }
    for _ in 0..200 {
        let n = 2 * rng.gen_range(1..=4usize) + 1;
        let r = rng.gen_range((1.5f64).ln()..(8.0f64).ln()).exp();
        let s = rng.gen_range(0.0..(r + 1.0).min(4.0));
        let a = rng.gen_range((s - 1.0).max(0.2)..r);
        let deviation = run_case(ScheduleParams::generalized_with_s(n, r, s, a)?, &mut rng)?;
        worst = worst.max(deviation);
        cases += 1;
    }
    let pass = worst <= tol::ORACLE_REL;
    let _ = writeln!(out, "cases: {cases}");
    let _ = writeln!(out, "worst-relative-deviation: {worst:.3e}");
    let _ = writeln!(out, "tolerance: {:.0e}", tol::ORACLE_REL);
    Ok((out, pass))
}

/// Randomized structural-identity checks at exact-identity tolerance.
fn verify_identities(seed: u64) -> Result<(String, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let _ = writeln!(out, "seed: {seed}");
    let mut pass = true;
    let mut worst_shift = 0.0f64;
    let mut worst_triple = 0.0f64;
    let mut worst_cone = 0.0f64;
    let mut cone_checks = 0usize;
    for _ in 0..1200 {
        let n = 2 * rng.gen_range(1..=5usize) + 1;
        let r = rng.gen_range((1.5f64).ln()..(8.0f64).ln()).exp();
        let s = rng.gen_range(0.0..(r + 1.0).min(4.0));
        let step = evac_core::params::r_pow(r, 1, n);
        let a_lo = (s - 1.0).max(step * 1.001);
        if a_lo >= r * 0.999 {
            continue;
        }
        let a = rng.gen_range(a_lo..r * 0.999);
        let params = ScheduleParams::generalized_with_s(n, r, s, a)?;
        let i = rng.gen_range(-2..5i64);
        let j = rng.gen_range(-1..5i64);

        for ell in [0u8, 1, 2] {
            let here = TurningPointRef { i, j, ell };
            let d = schedule::turning_point(&params, here)?;
            let t = schedule::turn_time(&params, here)?;
            let d_agent = schedule::turning_point(&params, TurningPointRef { i: i + 1, j, ell })?;
            let t_round = schedule::turn_time(&params, TurningPointRef { i, j: j + 1, ell })?;
            let grow = params.r_pow(2);
            worst_shift = worst_shift
                .max((d_agent - grow * d).abs() / d.abs().max(1.0))
                .max((t_round - r * t).abs() / t.abs().max(1.0));
        }

        worst_triple = worst_triple
            .max((params.s() - s).abs() / (1.0 + s))
            .max((params.q() + params.s() - r * (params.q() - 1.0)).abs() / params.q());

        let k = rng.gen_range(1..=params.f());
        if let Ok(meeting) = kinematics::intersection(&params, i, j, k) {
            let slope = kinematics::cone_slope(&params, k, meeting.branch)?;
            if !slope.is_infinite() {
                worst_cone = worst_cone.max(
                    (meeting.time - slope.beta * meeting.position.abs()).abs()
                        / meeting.time.abs().max(1.0),
                );
                cone_checks += 1;
            }
        }
    }
    pass &= worst_shift <= tol::EXACT_IDENTITY;
    pass &= worst_triple <= tol::EXACT_IDENTITY;
    pass &= worst_cone <= tol::EXACT_IDENTITY;
    pass &= cone_checks >= 500;
    let _ = writeln!(out, "worst-shift-identity: {worst_shift:.3e}");
    let _ = writeln!(out, "worst-pacing-triple: {worst_triple:.3e}");
    let _ = writeln!(out, "worst-cone-membership: {worst_cone:.3e}");
    let _ = writeln!(out, "cone-checks: {cone_checks}");
    let _ = writeln!(out, "tolerance: {:.0e}", tol::EXACT_IDENTITY);
    Ok((out, pass))
}

/// Space-time diagram: position horizontal, time vertical (upward), one
/// polyline per agent, meeting cones optionally overlaid.
fn cmd_diagram(args: DocArgs) -> Result<ExitCode> {
    let doc = args.resolve()?;
    let params = doc.params()?;
    if doc.window == 0 {
        bail!("the diagram window must cover at least one round");
    }
    let svg = render_diagram(&params, doc.window, doc.cones)?;
    doc.emit(&svg)?;
    Ok(ExitCode::SUCCESS)
}

const DIAGRAM_COLORS: [&str; 11] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#bcbd22",
    "#7f7f7f", "#e377c2", "#4a6fa5",
];

fn render_diagram(params: &ScheduleParams, window: usize, cones: bool) -> Result<String> {
    let n = params.n();
    // Waypoint chains from two rounds into the shrinking past up to the
    // window's edge; consecutive rounds share their stitch point.
    let j_range = -2i64..window as i64;
    let mut tracks: Vec<Vec<(f64, f64)>> = Vec::with_capacity(n);
    for agent in 0..n {
        let mut points = Vec::new();
        for j in j_range.clone() {
            let chain = schedule::round_waypoints(params, agent as i64, j);
            let upto = if j + 1 == window as i64 { 4 } else { 3 };
            points.extend_from_slice(&chain[..upto]);
        }
        tracks.push(points);
    }
    let mut x_min = 0.0f64;
    let mut x_max = 0.0f64;
    let mut t_max = 0.0f64;
    for track in &tracks {
        for &(t, x) in track {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            t_max = t_max.max(t);
        }
    }
    let (width, height, margin) = (800.0, 600.0, 50.0);
    let sx = (width - 2.0 * margin) / (x_max - x_min);
    let sy = (height - 2.0 * margin) / t_max;
    let px = |x: f64| margin + (x - x_min) * sx;
    let py = |t: f64| height - margin - t * sy;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>");
    // Axes: the origin's vertical world line and the t = 0 base line.
    let _ = writeln!(
        svg,
        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>",
        px(0.0),
        py(0.0),
        px(0.0),
        py(t_max)
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>",
        px(x_min),
        py(0.0),
        px(x_max),
        py(0.0)
    );
    if cones {
        // Rays time = beta * |position| for the outer and first interior
        // meeting families; variants that do not apply to this schedule are
        // skipped.
        for k in [0usize, 1] {
            if k > params.f() {
                continue;
            }
            let variants: &[kinematics::Branch] = match params.kind() {
                ScheduleKind::Proportional => &[kinematics::Branch::Proportional],
                ScheduleKind::Generalized => {
                    &[kinematics::Branch::Circ, kinematics::Branch::Plus]
                }
            };
            for &variant in variants {
                let Ok(slope) = kinematics::cone_slope(params, k, variant) else {
                    continue;
                };
                if slope.is_infinite() || slope.beta <= 0.0 {
                    continue;
                }
                for side in [1.0f64, -1.0] {
                    let x_top = side * t_max / slope.beta;
                    let x_end = x_top.clamp(x_min, x_max);
                    let t_end = slope.beta * x_end.abs();
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" \
                         stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>",
                        px(0.0),
                        py(0.0),
                        px(x_end),
                        py(t_end)
                    );
                }
            }
        }
    }
    for (agent, track) in tracks.iter().enumerate() {
        let mut points = String::new();
        for &(t, x) in track {
            let _ = write!(points, "{:.3},{:.3} ", px(x), py(t));
        }
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
            DIAGRAM_COLORS[agent % DIAGRAM_COLORS.len()],
            points.trim_end()
        );
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
