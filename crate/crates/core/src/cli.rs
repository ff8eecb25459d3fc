//! The `gcenter` command line: recognise classes, compute centres, check
//! properties, generate instances and benchmark solvers.
//!
//! Every command prints JSON lines (or tables with `--human`). Exit codes are
//! 0 for success, 1 when a checked property fails, 2 for bad input and 3 when
//! an internal invariant breaks.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::biphelly::BhImprove;
use crate::bridged::WbImprove;
use crate::cb::{center_cb_traced, CbImprove, TerminalMode};
use crate::descent::{deterministic_descent_01, fpscan_descent, sample_select_descent, BruteImprove, ImproveStep};
use crate::error::Error;
use crate::gen::{self, build_family, gen_family_capped, Family, Instance};
use crate::graph::Graph;
use crate::median::cut_on_best_neighbor_traced;
use crate::oracle::{
    all_pairs_capped, ball_convexity_check, diam_rad_with, gp_unimodal_function, hyperbolicity_capped,
    hyperbolicity_with, is_helly_bruteforce, is_p_weakly_peakless_with, Hyperbolicity, DEFAULT_HYPERBOLICITY_CAP,
    DEFAULT_MATRIX_CAP,
};
use crate::profile::Profile;
use crate::radius::{center_bruteforce_capped, radius_value, DEFAULT_BRUTE_CAP};
use crate::recognize::{recognize, recognize_gp_unimodal_radius_capped, Class, ClassReport, DEFAULT_RECOGNIZE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("method {method} needs a {} graph: {}", .report.class, describe_witness(.report))]
    ClassMismatch { method: &'static str, report: ClassReport },
    #[error("{0}")]
    Usage(String),
}

fn describe_witness(report: &ClassReport) -> String {
    match &report.witness {
        Some(w) => format!("{} at {:?}", w.condition, w.vertices),
        None => "no witness".into(),
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::InvariantViolation(_) | Error::Contract(_) | Error::ClassMismatch(_) | Error::GenerationBug(_) => {
                    EXIT_INTERNAL
                }
                _ => EXIT_INPUT,
            },
            CliError::ClassMismatch { .. } | CliError::Usage(_) => EXIT_INPUT,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "gcenter", version, about = "Weighted graph centres on special graph classes")]
pub struct Cli {
    /// Print tables instead of JSON lines.
    #[arg(long, global = true)]
    pub human: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide membership in a graph class, or G^p-unimodality of all radius functions.
    Recognize(RecognizeArgs),
    /// Compute a central vertex.
    Center(CenterArgs),
    /// Check a property on one profile or on random ones.
    Verify(VerifyArgs),
    /// Generate a certified instance.
    Gen(GenArgs),
    /// Run a method × size matrix and print CSV.
    Bench(BenchArgs),
}

#[derive(clap::Args, Debug)]
pub struct RecognizeArgs {
    pub graph: PathBuf,
    /// A class name, `all`, or `gp-unimodal` (with `--p`).
    pub class: String,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_RECOGNIZE_CAP)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    Bridged,
    Biphelly,
    Median,
    Cb,
    Brute,
    Fpscan,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Bridged => "bridged",
            Method::Biphelly => "biphelly",
            Method::Median => "median",
            Method::Cb => "cb",
            Method::Brute => "brute",
            Method::Fpscan => "fpscan",
        }
    }

    /// Class whose recogniser must accept the graph before the solver runs.
    pub fn required_class(self) -> Option<Class> {
        match self {
            Method::Bridged => Some(Class::WeaklyBridged),
            Method::Biphelly => Some(Class::BipartiteHelly),
            Method::Median => Some(Class::CubeFreeMedian),
            Method::Cb => Some(Class::Cb),
            Method::Auto | Method::Brute | Method::Fpscan => None,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct CenterArgs {
    pub graph: PathBuf,
    pub profile: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Deterministic descent for 0-1 profiles.
    #[arg(long)]
    pub det01: bool,
    /// Largest graph the recognisers run on.
    #[arg(long, default_value_t = DEFAULT_RECOGNIZE_CAP)]
    pub cap: usize,
    #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
    pub brute_cap: usize,
    /// `2δ` for fpscan; computed exactly when omitted.
    #[arg(long)]
    pub delta_twice: Option<u32>,
    /// Search radius of the local steps taken by fpscan.
    #[arg(long, default_value_t = 2)]
    pub fpscan_p: u32,
}

/// Knobs of [`solve`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    pub det01: bool,
    pub recognize_cap: usize,
    pub brute_cap: usize,
    pub delta: Option<Hyperbolicity>,
    pub fpscan_p: u32,
    /// Run the class recogniser before a class solver (when `n ≤ recognize_cap`).
    pub check_class: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            det01: false,
            recognize_cap: DEFAULT_RECOGNIZE_CAP,
            brute_cap: DEFAULT_BRUTE_CAP,
            delta: None,
            fpscan_p: 2,
            check_class: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub method: &'static str,
    pub radius: f64,
    pub center: usize,
    pub steps: usize,
    pub millis: f64,
    pub seed: u64,
    /// Consistency checks that failed; empty on a healthy run.
    pub assertions: Vec<String>,
    /// Notes such as a skipped recogniser.
    pub notes: Vec<String>,
}

/// Picks the most specific solver whose recogniser accepts `g`, falling back to
/// brute force.
pub fn pick_method(g: &Graph, opts: &SolveOptions) -> Result<(Method, Vec<ClassReport>), CliError> {
    let mut reports = Vec::new();
    if g.n() <= opts.recognize_cap {
        for (class, method) in [
            (Class::CubeFreeMedian, Method::Median),
            (Class::Bridged, Method::Bridged),
            (Class::WeaklyBridged, Method::Bridged),
            (Class::BipartiteHelly, Method::Biphelly),
            (Class::Cb, Method::Cb),
        ] {
            let report = recognize(g, class, opts.recognize_cap)?;
            let ok = report.verdict;
            reports.push(report);
            if ok {
                return Ok((method, reports));
            }
        }
    }
    if g.n() <= opts.brute_cap {
        Ok((Method::Brute, reports))
    } else {
        Err(usage(format!("n = {} exceeds both caps; choose a method explicitly", g.n())))
    }
}

/// Runs one solver and re-derives the radius by a BFS at the reported centre.
pub fn solve(g: &Graph, pi: &Profile, method: Method, opts: &SolveOptions) -> Result<RunReport, CliError> {
    if pi.n() != g.n() {
        return Err(usage(format!("profile is for {} vertices, graph has {}", pi.n(), g.n())));
    }
    if opts.det01 && !pi.is_01() {
        return Err(usage("--det01 needs a 0-1 profile"));
    }
    let mut notes = Vec::new();
    let method = if method == Method::Auto {
        let (m, reports) = pick_method(g, opts)?;
        let rejected: Vec<&str> = reports.iter().filter(|r| !r.verdict).map(|r| r.class.name()).collect();
        if !rejected.is_empty() {
            notes.push(format!("not {}", rejected.join(", ")));
        }
        notes.push(format!("auto picked {}", m.name()));
        m
    } else {
        method
    };
    if let Some(class) = method.required_class() {
        if !opts.check_class {
            notes.push(format!("{} not checked", class.name()));
        } else if g.n() <= opts.recognize_cap {
            let report = recognize(g, class, opts.recognize_cap)?;
            if !report.verdict {
                return Err(CliError::ClassMismatch { method: method.name(), report });
            }
        } else {
            notes.push(format!("{} not checked: n > {}", class.name(), opts.recognize_cap));
        }
    }
    if opts.det01 && !matches!(method, Method::Bridged | Method::Biphelly | Method::Cb) {
        return Err(usage("--det01 applies to bridged, biphelly and cb"));
    }
    let start = Instant::now();
    let descend = |step: &dyn ImproveStep| {
        if opts.det01 {
            deterministic_descent_01(g, pi, step)
        } else {
            sample_select_descent(g, pi, step, opts.seed)
        }
    };
    let (center, claimed, steps) = match method {
        Method::Auto => unreachable!("resolved above"),
        Method::Bridged => descend(&WbImprove).map(|(c, t)| (c, t.radius(), t.steps()))?,
        Method::Biphelly => descend(&BhImprove).map(|(c, t)| (c, t.radius(), t.steps()))?,
        Method::Median => {
            let run = cut_on_best_neighbor_traced(g, pi)?;
            (run.center, run.radius, run.rounds.len())
        }
        Method::Cb => {
            let mode = if opts.det01 { TerminalMode::Deterministic01 } else { TerminalMode::Randomized { seed: opts.seed } };
            let run = center_cb_traced(g, pi, mode)?;
            (run.center, run.radius, run.descent_steps + run.shrink_iterations)
        }
        Method::Brute => {
            let (rad, centre) = center_bruteforce_capped(g, pi, opts.brute_cap)?;
            (centre[0], rad, 0)
        }
        Method::Fpscan => {
            if !pi.is_01() {
                return Err(usage("fpscan needs a 0-1 profile"));
            }
            let delta = match opts.delta {
                Some(d) => d,
                None => hyperbolicity_capped(g, DEFAULT_HYPERBOLICITY_CAP)?,
            };
            notes.push(format!("delta = {delta}"));
            let (c, t) = fpscan_descent(g, pi, delta, &BruteImprove { p: opts.fpscan_p })?;
            (c, t.radius(), t.steps())
        }
    };
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let radius = radius_value(g, pi, center);
    let mut assertions = Vec::new();
    if radius != claimed {
        assertions.push(format!("solver reported {claimed}, BFS at {center} gives {radius}"));
    }
    Ok(RunReport { method: method.name(), radius, center, steps, millis, seed: opts.seed, assertions, notes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    /// p-weakly peakless radius functions (`--p` or `--p-hyperbolic`).
    Wp,
    /// G^p-unimodal radius functions.
    Unimodal,
    /// Helly property of balls, brute force.
    HellyProbe,
    /// Convexity of all balls.
    CbBalls,
    /// `2 rad(M) ≥ diam(M) ≥ 2 rad(M) − 2α − 1` on random subsets.
    DiamRad,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    #[arg(value_enum)]
    pub property: Property,
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Number of random profiles (or subsets for diam-rad).
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random profiles are 0-1.
    #[arg(long)]
    pub zero_one: bool,
    #[arg(long)]
    pub p: Option<u32>,
    /// Use `p = 4δ + 1` with the exact hyperbolicity δ.
    #[arg(long)]
    pub p_hyperbolic: bool,
    #[arg(long, default_value_t = 1)]
    pub alpha: u32,
    #[arg(long, default_value_t = DEFAULT_MATRIX_CAP)]
    pub cap: usize,
}

#[derive(clap::Args, Debug)]
pub struct GenArgs {
    /// tree, square_grid, triangular_grid (lozenge), king_grid, hypercube, cycle,
    /// simplex_graph, b_n, b_hat_n, grid_plus_path, hse, pentagon_tail, chordal,
    /// blocks, random_profile.
    pub family: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub side: Option<usize>,
    #[arg(long)]
    pub dim: Option<u32>,
    /// Sets of X for `hse`, e.g. `{1,2};{3}` (elements numbered from 1).
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long)]
    pub universe: Option<usize>,
    /// Block class for `blocks`.
    #[arg(long)]
    pub class: Option<String>,
    /// Graph file for `random_profile`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub zero_one: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Recognisers refuse larger instances.
    #[arg(long, default_value_t = DEFAULT_RECOGNIZE_CAP)]
    pub cap: usize,
    /// Graph file; the profile and manifest go next to it.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    Unit,
    ZeroOne,
    Weighted,
    /// The family's own profile, else unit.
    Family,
}

#[derive(clap::Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated: auto, bridged, biphelly, median, cb, brute, fpscan, and
    /// the single-step timers wb-step, bh-step, cb-step.
    #[arg(long, value_delimiter = ',', default_value = "brute")]
    pub methods: Vec<String>,
    #[arg(long, default_value = "square_grid")]
    pub family: String,
    /// Size parameter per family (grid side, n, k, dim, ...).
    #[arg(long, value_delimiter = ',', default_value = "8,16")]
    pub sizes: Vec<usize>,
    /// Block class for `blocks`.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ProfileKind::Weighted)]
    pub profile: ProfileKind,
    #[arg(long)]
    pub det01: bool,
    /// Vertices timed by the single-step methods.
    #[arg(long, default_value_t = 64)]
    pub step_sample: usize,
    /// Worker threads; 1 keeps timings free of contention.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let human = cli.human;
    let result = match cli.command {
        Command::Recognize(a) => cmd_recognize(&a, human, out),
        Command::Center(a) => cmd_center(&a, human, out),
        Command::Verify(a) => cmd_verify(&a, human, out),
        Command::Gen(a) => cmd_gen(&a, human, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(Graph::parse(&read(path)?)?)
}

pub fn load_profile(path: &Path, n: usize) -> Result<Profile, CliError> {
    Ok(Profile::parse(n, &read(path)?)?)
}

fn emit(out: &mut dyn Write, human: bool, value: &Value, table: impl FnOnce() -> String) -> Result<(), CliError> {
    let line = if human { table() } else { value.to_string() };
    writeln!(out, "{line}").map_err(Error::from)?;
    Ok(())
}

fn profile_json(pi: &Profile) -> Value {
    Value::Array(pi.support().iter().map(|&(v, w)| json!([v, w])).collect())
}

pub fn cmd_recognize(a: &RecognizeArgs, human: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    if a.class == "gp-unimodal" {
        let p = a.p.ok_or_else(|| usage("gp-unimodal needs --p"))?;
        let report = recognize_gp_unimodal_radius_capped(&g, p, a.cap)?;
        let witness = report.witness.as_ref().map(|w| json!({"u": w.u, "v": w.v, "profile": profile_json(&w.profile)}));
        let value = json!({"class": "gp-unimodal", "p": p, "verdict": report.verdict, "witness": witness});
        emit(out, human, &value, || match &report.witness {
            None => format!("G^{p}-unimodal: yes"),
            Some(w) => format!(
                "G^{p}-unimodal: no\n  local minimum {} beaten by {}\n  profile {:?}",
                w.u,
                w.v,
                w.profile.support()
            ),
        })?;
        return Ok(if report.verdict { EXIT_OK } else { EXIT_VIOLATED });
    }
    let classes: Vec<Class> =
        if a.class == "all" { Class::ALL.to_vec() } else { vec![a.class.parse::<Class>()?] };
    let mut all_ok = true;
    for class in &classes {
        let report = recognize(&g, *class, a.cap)?;
        all_ok &= report.verdict;
        let value = serde_json::to_value(&report).expect("serialisable");
        emit(out, human, &value, || {
            let mut s = format!("{:<18} {}", class.name(), if report.verdict { "yes" } else { "no" });
            if let Some(w) = &report.witness {
                let _ = write!(s, "  ({} at {:?})", w.condition, w.vertices);
            }
            s
        })?;
    }
    Ok(if all_ok || classes.len() > 1 { EXIT_OK } else { EXIT_VIOLATED })
}

pub fn cmd_center(a: &CenterArgs, human: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    let pi = load_profile(&a.profile, g.n())?;
    let opts = SolveOptions {
        seed: a.seed,
        det01: a.det01,
        recognize_cap: a.cap,
        brute_cap: a.brute_cap,
        delta: a.delta_twice.map(|twice| Hyperbolicity { twice }),
        fpscan_p: a.fpscan_p,
        check_class: true,
    };
    let report = solve(&g, &pi, a.method, &opts)?;
    let value = serde_json::to_value(&report).expect("serialisable");
    emit(out, human, &value, || {
        let mut s = format!(
            "{:<10} {:>10} {:>8} {:>6} {:>10}\n{:<10} {:>10} {:>8} {:>6} {:>10.3}",
            "method", "radius", "center", "steps", "millis", report.method, report.radius, report.center, report.steps,
            report.millis
        );
        for n in &report.notes {
            let _ = write!(s, "\n  note: {n}");
        }
        for f in &report.assertions {
            let _ = write!(s, "\n  ASSERTION: {f}");
        }
        s
    })?;
    Ok(if report.assertions.is_empty() { EXIT_OK } else { EXIT_INTERNAL })
}

pub fn cmd_verify(a: &VerifyArgs, human: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    let n = g.n();
    let mut value = json!({"property": format!("{:?}", a.property).to_lowercase()});
    let (holds, checked, detail) = match a.property {
        Property::HellyProbe => {
            let w = is_helly_bruteforce(&g)?;
            (w.is_none(), 1, json!({"triple": w}))
        }
        Property::CbBalls => {
            let r = ball_convexity_check(&g)?;
            (r.holds, 1, json!({"counterexample": r.counterexample}))
        }
        Property::DiamRad => {
            let dm = all_pairs_capped(&g, a.cap)?;
            let mut subsets: Vec<Vec<usize>> = Vec::new();
            if let Some(path) = &a.profile {
                subsets.push(load_profile(path, n)?.support_vertices());
            }
            let mut rng = gen::rng(a.seed);
            for _ in 0..a.random.unwrap_or(if subsets.is_empty() { 100 } else { 0 }) {
                let size = rng.gen_range(1..=n.max(2) / 2).min(n);
                let mut s = sample(&mut rng, n, size).into_vec();
                s.sort_unstable();
                subsets.push(s);
            }
            let mut failure = None;
            for s in &subsets {
                let r = diam_rad_with(&dm, s, a.alpha);
                if !r.holds {
                    failure = Some(json!({"subset": s, "diam": r.diam, "rad": r.rad}));
                    break;
                }
            }
            value["alpha"] = json!(a.alpha);
            (failure.is_none(), subsets.len(), json!({"counterexample": failure}))
        }
        Property::Wp | Property::Unimodal => {
            let dm = all_pairs_capped(&g, a.cap)?;
            let p = if a.p_hyperbolic {
                let delta = hyperbolicity_with(&dm);
                value["delta"] = json!(delta.as_f64());
                2 * delta.twice + 1
            } else {
                a.p.ok_or_else(|| usage("--p or --p-hyperbolic is required"))?
            };
            value["p"] = json!(p);
            let profiles = profiles_for(a, n)?;
            let mut failure = None;
            for (i, pi) in profiles.iter().enumerate() {
                let bad = if a.property == Property::Wp {
                    let r = is_p_weakly_peakless_with(&dm, pi, p);
                    r.counterexample.map(|c| json!({"u": c.u, "v": c.v, "explanation": c.explanation}))
                } else {
                    let f = dm.eccentricities(pi);
                    gp_unimodal_function(&dm, &f, p).1.map(|x| json!({"local_min": x, "value": f[x]}))
                };
                if let Some(mut c) = bad {
                    c["profile_index"] = json!(i);
                    c["profile"] = profile_json(pi);
                    failure = Some(c);
                    break;
                }
            }
            (failure.is_none(), profiles.len(), json!({"counterexample": failure}))
        }
    };
    value["checked"] = json!(checked);
    value["holds"] = json!(holds);
    if let (Value::Object(dst), Value::Object(src)) = (&mut value, detail) {
        dst.extend(src);
    }
    emit(out, human, &value, || {
        let mut s = format!("{}: {} ({checked} checked)", value["property"], if holds { "holds" } else { "FAILS" });
        if let Some(d) = value.get("delta") {
            let _ = write!(s, "\n  delta = {d}");
        }
        if let Some(p) = value.get("p") {
            let _ = write!(s, "\n  p = {p}");
        }
        if !holds {
            let _ = write!(s, "\n  counterexample: {}", value["counterexample"]);
        }
        s
    })?;
    Ok(if holds { EXIT_OK } else { EXIT_VIOLATED })
}

fn profiles_for(a: &VerifyArgs, n: usize) -> Result<Vec<Profile>, CliError> {
    let mut out = Vec::new();
    if let Some(path) = &a.profile {
        out.push(load_profile(path, n)?);
    }
    if let Some(k) = a.random {
        out.extend((0..k as u64).map(|i| gen::random_profile(n, a.zero_one, a.seed.wrapping_add(i))));
    }
    if out.is_empty() {
        return Err(usage("give --profile or --random K"));
    }
    Ok(out)
}

/// Parses `{1,2};{3}` into 0-based sets; elements are numbered from 1.
pub fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.split(';')
        .map(|part| {
            let inner = part.trim().trim_start_matches('{').trim_end_matches('}');
            inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(e) if e >= 1 => Ok(e - 1),
                    _ => Err(usage(format!("bad set element {t:?} (elements start at 1)"))),
                })
                .collect()
        })
        .collect()
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{family} needs --{flag}")))
}

/// Family from its CLI name and flags.
pub fn family_from_args(a: &GenArgs) -> Result<Family, CliError> {
    let f = a.family.as_str();
    Ok(match f {
        "tree" => Family::Tree { n: need(a.n, "n", f)? },
        "square_grid" | "grid" => {
            let rows = need(a.rows.or(a.n), "rows", f)?;
            Family::SquareGrid { rows, cols: a.cols.unwrap_or(rows) }
        }
        "triangular_grid" | "lozenge" => Family::TriangularGrid { side: need(a.side.or(a.n), "side", f)? },
        "king_grid" => {
            let rows = need(a.rows.or(a.n), "rows", f)?;
            Family::KingGrid { rows, cols: a.cols.unwrap_or(rows) }
        }
        "hypercube" => Family::Hypercube { dim: need(a.dim, "dim", f)? },
        "cycle" => Family::Cycle { n: need(a.n, "n", f)? },
        "simplex_graph" => Family::SimplexGraph { seed_n: need(a.n, "n", f)? },
        "b_n" => Family::BN { n: need(a.n, "n", f)? },
        "b_hat_n" => Family::BHatN { n: need(a.n, "n", f)? },
        "grid_plus_path" => Family::GridPlusPath { k: need(a.k, "k", f)? },
        "hse" => {
            let x = parse_sets(&need(a.x.clone(), "x", f)?)?;
            let y = parse_sets(&need(a.y.clone(), "y", f)?)?;
            let universe =
                a.universe.unwrap_or_else(|| x.iter().chain(&y).flatten().max().map_or(0, |&m| m + 1));
            Family::Hse { x, y, universe }
        }
        "pentagon_tail" => Family::PentagonTail { n: need(a.n, "n", f)? },
        "chordal" => Family::Chordal { n: need(a.n, "n", f)? },
        "blocks" => Family::Blocks { class: need(a.class.as_deref(), "class", f)?.parse()?, n: need(a.n, "n", f)? },
        "random_profile" => Family::RandomProfile { n: a.n.unwrap_or(0), zero_one: a.zero_one },
        other => return Err(usage(format!("unknown family {other:?}"))),
    })
}

pub fn cmd_gen(a: &GenArgs, human: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let family = family_from_args(a)?;
    if let Family::RandomProfile { zero_one, .. } = family {
        let g = load_graph(&need(a.graph.clone(), "graph", "random_profile")?)?;
        let pi = gen::random_profile(g.n(), zero_one, a.seed);
        let mut value = json!({"family": "random_profile", "n": g.n(), "zero_one": zero_one, "seed": a.seed});
        match &a.output {
            Some(path) => {
                std::fs::write(path, pi.to_text()).map_err(Error::from)?;
                value["profile_file"] = json!(path);
            }
            None => value["profile"] = profile_json(&pi),
        }
        emit(out, human, &value, || pi.to_text().trim_end().to_string())?;
        return Ok(EXIT_OK);
    }
    let inst = gen_family_capped(&family, a.seed, a.cap)?;
    let mut value = serde_json::to_value(&inst.spec).expect("serialisable");
    value["n"] = json!(inst.graph.n());
    value["m"] = json!(inst.graph.m());
    value["distinguished"] = json!(inst.distinguished);
    match &a.output {
        Some(path) => {
            std::fs::write(path, inst.graph.to_text()).map_err(Error::from)?;
            value["graph_file"] = json!(path);
            if let Some(pi) = &inst.profile {
                let pp = path.with_extension("profile");
                std::fs::write(&pp, pi.to_text()).map_err(Error::from)?;
                value["profile_file"] = json!(pp);
            }
            let mp = path.with_extension("manifest.json");
            std::fs::write(&mp, format!("{value}\n")).map_err(Error::from)?;
        }
        None => {
            value["graph"] = json!(inst.graph.to_text());
            if let Some(pi) = &inst.profile {
                value["profile"] = profile_json(pi);
            }
        }
    }
    emit(out, human, &value, || {
        let mut s = format!(
            "{} seed {}: n = {}, m = {}, certified {:?}",
            inst.spec.family.name(),
            a.seed,
            inst.graph.n(),
            inst.graph.m(),
            inst.spec.certified.iter().map(|c| c.name()).collect::<Vec<_>>()
        );
        if let Some(v) = inst.distinguished {
            let _ = write!(s, "\ndistinguished vertex: {v}");
        }
        if a.output.is_none() {
            let _ = write!(s, "\n{}", inst.graph.to_text().trim_end());
        }
        s
    })?;
    Ok(EXIT_OK)
}

/// One CSV row of `bench`.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub method: String,
    pub seed: u64,
    pub radius: f64,
    pub steps: usize,
    pub millis: f64,
}

impl BenchRow {
    pub const HEADER: &'static str = "family,n,m,method,seed,radius,steps,millis";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3}",
            self.family, self.n, self.m, self.method, self.seed, self.radius, self.steps, self.millis
        )
    }
}

/// A method column of `bench`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchMethod {
    Solve(Method),
    /// Times single improvement steps of the given class on sampled vertices.
    Step(&'static str),
}

impl BenchMethod {
    pub fn parse(s: &str) -> Result<BenchMethod, CliError> {
        match s {
            "wb-step" | "bh-step" | "cb-step" => Ok(BenchMethod::Step(match s {
                "wb-step" => "wb-step",
                "bh-step" => "bh-step",
                _ => "cb-step",
            })),
            _ => Method::from_str(s, true).map(BenchMethod::Solve).map_err(|_| usage(format!("unknown method {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::Solve(m) => m.name(),
            BenchMethod::Step(s) => s,
        }
    }
}

/// Family with one size knob, as used by `bench`.
pub fn sized_family(name: &str, size: usize, class: Option<Class>) -> Result<Family, CliError> {
    Ok(match name {
        "tree" => Family::Tree { n: size },
        "square_grid" | "grid" => Family::SquareGrid { rows: size, cols: size },
        "triangular_grid" | "lozenge" => Family::TriangularGrid { side: size },
        "king_grid" => Family::KingGrid { rows: size, cols: size },
        "hypercube" => Family::Hypercube { dim: size as u32 },
        "cycle" => Family::Cycle { n: size },
        "simplex_graph" => Family::SimplexGraph { seed_n: size },
        "b_hat_n" => Family::BHatN { n: size },
        "grid_plus_path" => Family::GridPlusPath { k: size },
        "pentagon_tail" => Family::PentagonTail { n: size },
        "chordal" => Family::Chordal { n: size },
        "blocks" => Family::Blocks { class: class.ok_or_else(|| usage("blocks needs --class"))?, n: size },
        other => return Err(usage(format!("family {other:?} has no size ladder"))),
    })
}

fn bench_profile(inst: &Instance, kind: ProfileKind, seed: u64) -> Profile {
    let n = inst.graph.n();
    match kind {
        ProfileKind::Unit => Profile::unit(n),
        ProfileKind::ZeroOne => gen::random_profile(n, true, seed),
        ProfileKind::Weighted => gen::random_profile(n, false, seed),
        ProfileKind::Family => inst.profile.clone().unwrap_or_else(|| Profile::unit(n)),
    }
}

/// Total time of single improvement steps at `sample` seeded random vertices.
pub fn time_steps(g: &Graph, pi: &Profile, step: &dyn ImproveStep, sample_size: usize, seed: u64) -> Result<(f64, usize, f64), CliError> {
    let k = sample_size.min(g.n());
    let vertices = sample(&mut gen::rng(seed), g.n(), k).into_vec();
    let start = Instant::now();
    let mut moved = Vec::with_capacity(k);
    for &v in &vertices {
        moved.push(step.improve(g, pi, v)?);
    }
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let best = moved.iter().map(|&u| radius_value(g, pi, u)).fold(f64::INFINITY, f64::min);
    Ok((millis, k, best))
}

/// Runs every (size, seed, method) cell; rows come back in cell order.
pub fn bench_rows(
    family: &str,
    sizes: &[usize],
    methods: &[BenchMethod],
    class: Option<Class>,
    kind: ProfileKind,
    seeds: std::ops::Range<u64>,
    opts: &SolveOptions,
    step_sample: usize,
    jobs: usize,
) -> Result<Vec<BenchRow>, CliError> {
    let mut instances = Vec::new();
    for &size in sizes {
        for seed in seeds.clone() {
            let inst = build_family(&sized_family(family, size, class)?, seed)?;
            let pi = bench_profile(&inst, kind, seed);
            instances.push((inst, pi, seed));
        }
    }
    let cells: Vec<(usize, BenchMethod)> =
        (0..instances.len()).flat_map(|i| methods.iter().map(move |&m| (i, m))).collect();
    let run_cell = |&(i, method): &(usize, BenchMethod)| -> Result<BenchRow, CliError> {
        let (inst, pi, seed) = &instances[i];
        let g = &inst.graph;
        let (radius, steps, millis) = match method {
            BenchMethod::Solve(m) => {
                let o = SolveOptions { seed: *seed, check_class: false, ..opts.clone() };
                let r = solve(g, pi, m, &o)?;
                if !r.assertions.is_empty() {
                    return Err(CliError::Core(Error::InvariantViolation(r.assertions.join("; "))));
                }
                (r.radius, r.steps, r.millis)
            }
            BenchMethod::Step(name) => {
                let step: &dyn ImproveStep = match name {
                    "wb-step" => &WbImprove,
                    "bh-step" => &BhImprove,
                    _ => &CbImprove,
                };
                let (millis, steps, best) = time_steps(g, pi, step, step_sample, *seed)?;
                (best, steps, millis)
            }
        };
        Ok(BenchRow {
            family: inst.spec.family.name().to_string(),
            n: g.n(),
            m: g.m(),
            method: method.name().to_string(),
            seed: *seed,
            radius,
            steps,
            millis,
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| usage(format!("thread pool: {e}")))?;
    pool.install(|| cells.par_iter().map(run_cell).collect())
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let methods = a.methods.iter().map(|s| BenchMethod::parse(s)).collect::<Result<Vec<_>, _>>()?;
    let class = a.class.as_deref().map(str::parse::<Class>).transpose()?;
    let opts = SolveOptions { det01: a.det01, ..SolveOptions::default() };
    let rows = bench_rows(
        &a.family,
        &a.sizes,
        &methods,
        class,
        a.profile,
        a.seed..a.seed + a.seeds,
        &opts,
        a.step_sample,
        a.jobs,
    )?;
    let mut csv = String::from(BenchRow::HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.csv());
        csv.push('\n');
    }
    match &a.output {
        Some(path) => std::fs::write(path, &csv).map_err(Error::from)?,
        None => out.write_all(csv.as_bytes()).map_err(Error::from)?,
    }
    Ok(EXIT_OK)
}
