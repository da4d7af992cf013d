use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use heavycrit::amc::{simulate_with, AttributeRule, Particle, ParticleSystem, SimulateOptions};
use heavycrit::analysis::Report;
use heavycrit::config_model::{pair_half_edges, sample_simple_counted, simplicity};
use heavycrit::degrees::{critical_tail_constant, gen_iid_gamma, ReportOptions};
use heavycrit::exploration::{explore_with, weighted_functionals, ExploreOptions};
use heavycrit::io::{
    read_degrees, write_components, write_degrees, write_edges, write_excursions, write_path, write_walk, DegreeHeader,
};
use heavycrit::levy::{excursions, reflect, sample_marks_with_rate, theta_from_powerlaw};
use heavycrit::percolation::{
    percolate_direct, percolate_explosion, window_probability_for, PercolationSpec, RemovalVariant, SweepOptions,
    WindowSnapshot,
};
use heavycrit::{
    compute_nu, dynamic_sweep, gen_deterministic, modified_sweep, sample_path, scaling_constants, DegreeSequence,
    Error, LimitLaw, PowerLawSpec, Result, ScalingConstants, SlowlyVarying, WeightRule, WeightSpec,
};

use crate::experiments::graph_vs_limit;
use crate::manifest::{sha256_file, strip_run_location, Manifest};
use crate::replicate::{run_replicates, threads_from_env};

#[derive(Parser, Debug)]
#[command(name = "heavycrit", version, about = "Critical configuration models with power-law degrees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Master seed; replicate r draws from stream (seed, r).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory; not recorded in the manifest.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Worker threads across replicates [default: $HEAVYCRIT_THREADS or 1].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Also write CSVs shaped for external plotting.
    #[arg(long)]
    pub emit_plot_data: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Model {
    /// Power-law exponent in (3, 4) [default: degree-file header, else 3.5].
    #[arg(long)]
    pub tau: Option<f64>,
    /// Tail constant C_F, or `critical` for the value making the limit ν equal 1.
    #[arg(long, default_value = "1")]
    pub c_f: String,
    /// `const:c` or `log_power:p`.
    #[arg(long, default_value = "const:1")]
    pub slowly_varying: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Method {
    Deterministic,
    Gamma,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Variant {
    /// Explosion, then delete the red vertices.
    Red,
    /// Explosion, then delete uniformly chosen degree-one vertices.
    Uniform,
    /// Configuration model, then keep each edge with probability p.
    Direct,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Rule {
    MassSquared,
    AttributeSquaredHalf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a degree sequence.
    GenDegrees {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, value_enum, default_value = "deterministic")]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Report the degree-sequence diagnostics as JSON.
    CheckAssumptions {
        #[arg(long)]
        degrees: PathBuf,
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 200)]
        k_report: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Pair half-edges uniformly; optionally reject until simple.
    Build {
        #[arg(long)]
        degrees: PathBuf,
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 100_000)]
        max_attempts: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Breadth-first exploration walk and component table.
    Explore {
        #[arg(long)]
        degrees: PathBuf,
        #[command(flatten)]
        model: Model,
        /// `label=rule` with rule `const:c`, `degree_indicator:k` or `file:path`; repeatable.
        #[arg(long)]
        weight: Vec<String>,
        /// Rescaled-walk horizon for plot data.
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Thinned Lévy paths, excursions and marks.
    Levy {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Defaults to the mean of the limiting degree law.
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        k: usize,
        #[arg(long, default_value_t = 30.0)]
        horizon: f64,
        /// Marks are Poisson with mean rate × excursion area.
        #[arg(long, default_value_t = 1.0)]
        mark_rate: f64,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Percolation at a window point.
    Percolate {
        #[arg(long)]
        degrees: PathBuf,
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Retention probability; overrides the window map.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "red")]
        variant: Variant,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Dynamic (or modified) pairing process snapshotted along a λ grid.
    Sweep {
        #[arg(long)]
        degrees: PathBuf,
        #[command(flatten)]
        model: Model,
        /// `a:b:step`.
        #[arg(long, allow_hyphen_values = true)]
        lambda_grid: String,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        #[arg(long, default_value_t = 20)]
        keep_top: usize,
        /// Run the modified process from this λ.
        #[arg(long, allow_negative_numbers = true)]
        modified_start: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Augmented multiplicative coalescent.
    Amc {
        /// Comma-separated masses.
        #[arg(long, conflicts_with = "masses_file")]
        masses: Option<String>,
        /// One `mass[,attribute]` per line.
        #[arg(long)]
        masses_file: Option<PathBuf>,
        /// Comma-separated initial attributes.
        #[arg(long)]
        attributes: Option<String>,
        #[arg(long)]
        duration: f64,
        #[arg(long, default_value_t = 1.0)]
        k1: f64,
        #[arg(long, default_value_t = 0.5)]
        k2: f64,
        #[arg(long, value_enum, default_value = "mass-squared")]
        rule: Rule,
        /// Dump the ordered state every this many time units.
        #[arg(long)]
        dump_every: Option<f64>,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Graph replicates against thinned-Lévy replicates.
    Compare {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: u64,
        /// Window parameter of the generated degree sequence.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Lévy drift parameter [default: c_n(ν_n − 1) of the sequence].
        #[arg(long, allow_negative_numbers = true)]
        levy_lambda: Option<f64>,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 10_000)]
        k: usize,
        #[arg(long, default_value_t = 30.0)]
        horizon: f64,
        /// Significance level for the pass verdict.
        #[arg(long, default_value_t = 1e-3)]
        alpha: f64,
        /// Exit with status 2 when a test rejects.
        #[arg(long = "assert")]
        assert_pass: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a run from its manifest.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
    },
}

/// Parses and runs `argv` (including the program name); returns the exit status.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, &argv) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

struct Out {
    dir: PathBuf,
    hash: String,
}

impl Out {
    fn header(&self) -> Vec<String> {
        vec![format!("manifest={}", self.hash)]
    }

    fn file(&self, name: &str, f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
        let mut buf = Vec::new();
        f(&mut buf)?;
        std::fs::write(self.dir.join(name), buf)?;
        Ok(())
    }

    fn csv(&self, name: &str, columns: &str, rows: impl IntoIterator<Item = String>) -> Result<()> {
        self.file(name, |b| {
            writeln!(b, "# manifest={}", self.hash)?;
            writeln!(b, "{columns}")?;
            for r in rows {
                writeln!(b, "{r}")?;
            }
            Ok(())
        })
    }

    fn json<T: Serialize>(&self, name: &str, data: &T) -> Result<()> {
        #[derive(Serialize)]
        struct Wrapped<'a, T> {
            manifest_hash: &'a str,
            data: &'a T,
        }
        let text = serde_json::to_string_pretty(&Wrapped { manifest_hash: &self.hash, data })
            .map_err(|e| Error::Parse(e.to_string()))?;
        self.file(name, |b| {
            b.extend_from_slice(text.as_bytes());
            b.push(b'\n');
            Ok(())
        })
    }
}

fn input_files(cmd: &Command) -> Vec<PathBuf> {
    match cmd {
        Command::CheckAssumptions { degrees, .. }
        | Command::Build { degrees, .. }
        | Command::Percolate { degrees, .. }
        | Command::Sweep { degrees, .. } => vec![degrees.clone()],
        Command::Explore { degrees, weight, .. } => {
            let mut v = vec![degrees.clone()];
            for w in weight {
                if let Some((_, rule)) = w.split_once('=') {
                    if let Some(p) = rule.strip_prefix("file:") {
                        v.push(PathBuf::from(p));
                    }
                }
            }
            v
        }
        Command::Amc { masses_file: Some(p), .. } => vec![p.clone()],
        _ => Vec::new(),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::GenDegrees { .. } => "gen-degrees",
        Command::CheckAssumptions { .. } => "check-assumptions",
        Command::Build { .. } => "build",
        Command::Explore { .. } => "explore",
        Command::Levy { .. } => "levy",
        Command::Percolate { .. } => "percolate",
        Command::Sweep { .. } => "sweep",
        Command::Amc { .. } => "amc",
        Command::Compare { .. } => "compare",
        Command::Rerun { .. } => "rerun",
    }
}

fn common_of(cmd: &Command) -> Option<&Common> {
    match cmd {
        Command::GenDegrees { common, .. }
        | Command::CheckAssumptions { common, .. }
        | Command::Build { common, .. }
        | Command::Explore { common, .. }
        | Command::Levy { common, .. }
        | Command::Percolate { common, .. }
        | Command::Sweep { common, .. }
        | Command::Amc { common, .. }
        | Command::Compare { common, .. } => Some(common),
        Command::Rerun { .. } => None,
    }
}

fn dispatch(cmd: Command, argv: &[String]) -> Result<Outcome> {
    if let Command::Rerun { manifest, out_dir, threads } = &cmd {
        return rerun(manifest, out_dir, *threads);
    }
    let common = common_of(&cmd).expect("experiment command").clone();
    let mut inputs = BTreeMap::new();
    for p in input_files(&cmd) {
        inputs.insert(p.display().to_string(), sha256_file(&p).map_err(|e| with_path(e, &p))?);
    }
    let manifest = Manifest::new(command_name(&cmd), strip_run_location(&argv[1..]), common.seed, inputs);
    std::fs::create_dir_all(&common.out_dir)?;
    let manifest_text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Parse(e.to_string()))?;
    let manifest_path = common.out_dir.join("manifest.json");
    let out = Out { dir: common.out_dir.clone(), hash: manifest.hash.clone() };
    let threads = common.threads.unwrap_or_else(threads_from_env);
    log::info!("{} manifest {} threads {}", manifest.command, manifest.hash, threads);
    let ctx = Ctx { out, common, threads };
    // written last so a failed run leaves no manifest claiming its outputs
    let outcome = match cmd {
        Command::GenDegrees { model, n, lambda, method, .. } => gen_degrees(&ctx, &model, n, lambda, method),
        Command::CheckAssumptions { degrees, model, k_report, .. } => check(&ctx, &degrees, &model, k_report),
        Command::Build { degrees, simple, max_attempts, .. } => build(&ctx, &degrees, simple, max_attempts),
        Command::Explore { degrees, model, weight, t_max, points, .. } => {
            explore_cmd(&ctx, &degrees, &model, &weight, t_max, points)
        }
        Command::Levy { model, lambda, mu, k, horizon, mark_rate, replicates, top, points, .. } => {
            levy_cmd(&ctx, &model, lambda, mu, k, horizon, mark_rate, replicates, top, points)
        }
        Command::Percolate { degrees, model, lambda, p, variant, replicates, top, .. } => {
            percolate_cmd(&ctx, &degrees, &model, lambda, p, variant, replicates, top)
        }
        Command::Sweep { degrees, model, lambda_grid, replicates, keep_top, modified_start, .. } => {
            sweep_cmd(&ctx, &degrees, &model, &lambda_grid, replicates, keep_top, modified_start)
        }
        Command::Amc { masses, masses_file, attributes, duration, k1, k2, rule, dump_every, replicates, .. } => {
            let sys = particle_system(masses, masses_file, attributes, k1, k2, rule)?;
            amc_cmd(&ctx, &sys, duration, dump_every, replicates)
        }
        Command::Compare { model, n, lambda, levy_lambda, replicates, k, horizon, alpha, assert_pass, .. } => {
            compare_cmd(&ctx, &model, n, lambda, levy_lambda, replicates, k, horizon, alpha, assert_pass)
        }
        Command::Rerun { .. } => unreachable!("handled above"),
    }?;
    std::fs::write(manifest_path, manifest_text + "\n")?;
    Ok(outcome)
}

fn with_path(e: std::io::Error, p: &Path) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", p.display())))
}

fn rerun(manifest: &Path, out_dir: &Path, threads: Option<usize>) -> Result<Outcome> {
    let text = std::fs::read_to_string(manifest).map_err(|e| with_path(e, manifest))?;
    let m: Manifest = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if m.hash != m.compute_hash() {
        return Err(Error::InvalidParameter("manifest hash does not match its contents".into()));
    }
    if m.version != env!("CARGO_PKG_VERSION") {
        log::warn!("manifest written by version {}, running {}", m.version, env!("CARGO_PKG_VERSION"));
    }
    for (path, digest) in &m.inputs {
        let now = sha256_file(Path::new(path)).map_err(|e| with_path(e, Path::new(path)))?;
        if &now != digest {
            return Err(Error::InvalidParameter(format!("input {path} changed since the manifest was written")));
        }
    }
    let mut argv = vec!["heavycrit".to_string()];
    argv.extend(m.args.iter().cloned());
    argv.push("--out-dir".into());
    argv.push(out_dir.display().to_string());
    if let Some(t) = threads {
        argv.push("--threads".into());
        argv.push(t.to_string());
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| Error::Parse(e.to_string()))?;
    if matches!(cli.command, Command::Rerun { .. }) {
        return Err(Error::InvalidParameter("a manifest cannot describe a rerun".into()));
    }
    dispatch(cli.command, &argv)
}

struct Ctx {
    out: Out,
    common: Common,
    threads: usize,
}

fn parse_slowly_varying(s: &str) -> Result<SlowlyVarying> {
    let (kind, v) = s.split_once(':').ok_or_else(|| Error::Parse(format!("slowly varying `{s}`")))?;
    let v: f64 = v.parse().map_err(|_| Error::Parse(format!("slowly varying `{s}`")))?;
    match kind {
        "const" => Ok(SlowlyVarying::Constant(v)),
        "log_power" => Ok(SlowlyVarying::LogPower(v)),
        _ => Err(Error::Parse(format!("unknown slowly varying kind `{kind}`"))),
    }
}

fn model_spec(model: &Model, tau_default: Option<f64>, lambda: f64) -> Result<PowerLawSpec> {
    let tau = model.tau.or(tau_default).unwrap_or(3.5);
    let sv = parse_slowly_varying(&model.slowly_varying)?;
    let c_f = if model.c_f == "critical" {
        critical_tail_constant(tau, sv)?
    } else {
        model.c_f.parse().map_err(|_| Error::Parse(format!("c_f `{}`", model.c_f)))?
    };
    PowerLawSpec::new(tau, c_f, sv, lambda)
}

fn load_degrees(path: &Path) -> Result<(DegreeSequence, Option<DegreeHeader>)> {
    read_degrees(BufReader::new(File::open(path).map_err(|e| with_path(e, path))?))
}

fn load_with_model(path: &Path, model: &Model) -> Result<(DegreeSequence, PowerLawSpec, ScalingConstants)> {
    let (d, h) = load_degrees(path)?;
    let spec = model_spec(model, h.as_ref().map(|h| h.tau), h.as_ref().map(|h| h.lambda).unwrap_or(0.0))?;
    let consts = scaling_constants(&spec, d.n() as u64)?;
    Ok((d, spec, consts))
}

fn gen_degrees(ctx: &Ctx, model: &Model, n: u64, lambda: f64, method: Method) -> Result<Outcome> {
    let spec = model_spec(model, None, lambda)?;
    let d = match method {
        Method::Deterministic => gen_deterministic(&spec, n)?,
        Method::Gamma => gen_iid_gamma(&spec, n, &mut heavycrit::stream(ctx.common.seed, 0))?.0,
    };
    let h = DegreeHeader { n: d.n(), tau: spec.tau, lambda, seed: ctx.common.seed };
    ctx.out.file("degrees.txt", |b| write_degrees(b, &d, &h, &ctx.out.header()))?;
    Ok(Outcome::Pass)
}

fn check(ctx: &Ctx, path: &Path, model: &Model, k_report: usize) -> Result<Outcome> {
    let (d, spec, consts) = load_with_model(path, model)?;
    let r = heavycrit::degrees::check_assumptions_with(
        d.degrees(),
        &spec,
        &consts,
        ReportOptions { k_report, ..Default::default() },
    )?;
    for v in &r.violations {
        log::warn!("{v}");
    }
    ctx.out.json("assumptions.json", &r)?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct BuildSummary {
    is_simple: bool,
    self_loops: u64,
    multi_edge_pairs: u64,
    attempts: usize,
}

fn build(ctx: &Ctx, path: &Path, simple: bool, max_attempts: usize) -> Result<Outcome> {
    let (d, _) = load_degrees(path)?;
    let mut rng = heavycrit::stream(ctx.common.seed, 0);
    let (g, attempts) = if simple { sample_simple_counted(&d, &mut rng, max_attempts)? } else { (pair_half_edges(&d, &mut rng)?, 1) };
    let v = simplicity(&g);
    ctx.out.file("edges.csv", |b| write_edges(b, &g, &ctx.out.header()))?;
    ctx.out.file("components.csv", |b| write_components(b, &g.components(&[]), &ctx.out.header()))?;
    let s = BuildSummary { is_simple: v.is_simple, self_loops: v.self_loops, multi_edge_pairs: v.multi_edge_pairs, attempts };
    ctx.out.json("build.json", &s)?;
    Ok(Outcome::Pass)
}

fn parse_weights(specs: &[String], degrees: &[u32]) -> Result<Vec<WeightSpec>> {
    specs
        .iter()
        .map(|s| {
            let (label, rule) = s.split_once('=').ok_or_else(|| Error::Parse(format!("weight `{s}` is not label=rule")))?;
            let rule: WeightRule = rule.parse()?;
            WeightSpec::from_rule(label, &rule, degrees)
        })
        .collect()
}

#[derive(Serialize)]
struct WeightedTop {
    label: String,
    pairs: Vec<(f64, u64)>,
}

fn explore_cmd(ctx: &Ctx, path: &Path, model: &Model, weights: &[String], t_max: f64, points: usize) -> Result<Outcome> {
    let (d, _, consts) = load_with_model(path, model)?;
    let ws = parse_weights(weights, d.degrees())?;
    let opts = ExploreOptions { weights: ws.clone(), degree_histograms: false };
    let x = explore_with(&d, &mut heavycrit::stream(ctx.common.seed, 0), &opts)?;
    ctx.out.file("walk.csv", |b| write_walk(b, &x.walk, &ctx.out.header()))?;
    ctx.out.file("components.csv", |b| write_components(b, &x.components, &ctx.out.header()))?;
    if !ws.is_empty() {
        let mut tops = Vec::new();
        for w in &ws {
            let v = weighted_functionals(&x.components, &ws, &w.label, &consts)?;
            tops.push(WeightedTop { label: w.label.clone(), pairs: v.pairs.into_iter().take(20).collect() });
        }
        ctx.out.json("weighted.json", &tops)?;
    }
    if ctx.common.emit_plot_data {
        let rows = x.walk.rescaled(&consts, t_max, points).into_iter().map(|(t, v)| format!("{t},{v}"));
        ctx.out.csv("walk_rescaled.csv", "t,value", rows)?;
    }
    Ok(Outcome::Pass)
}

#[allow(clippy::too_many_arguments)]
fn levy_cmd(
    ctx: &Ctx,
    model: &Model,
    lambda: f64,
    mu: Option<f64>,
    k: usize,
    horizon: f64,
    mark_rate: f64,
    replicates: usize,
    top: usize,
    points: usize,
) -> Result<Outcome> {
    let spec = model_spec(model, None, lambda)?;
    let mu = match mu {
        Some(m) => m,
        None => LimitLaw::of(&spec)?.mu,
    };
    let theta = theta_from_powerlaw(&spec, k, mu, horizon, None)?;
    let runs = run_replicates(ctx.threads, ctx.common.seed, replicates.max(1), |_, rng| {
        let path = sample_path(&theta, rng)?;
        let e = excursions(&path);
        let m = sample_marks_with_rate(&e, mark_rate, rng)?;
        Ok((path, e, m.marks))
    })?;
    let (path, e, marks) = &runs[0];
    ctx.out.file("path.csv", |b| write_path(b, path, &theta, &ctx.out.header()))?;
    ctx.out.file("excursions.csv", |b| write_excursions(b, e, Some(marks), &ctx.out.header()))?;
    let rows = runs.iter().enumerate().flat_map(|(r, (_, e, marks))| {
        e.excursions
            .iter()
            .zip(marks)
            .filter(|(x, _)| !x.truncated)
            .take(top)
            .enumerate()
            .map(move |(i, (x, m))| format!("{},{},{},{},{}", r, i + 1, x.length, x.area, m))
            .collect::<Vec<_>>()
    });
    ctx.out.csv("levy_top.csv", "replicate,rank,length,area,marks", rows)?;
    if ctx.common.emit_plot_data {
        let refl = reflect(path);
        let rows = (0..points.max(2)).map(|j| {
            let t = horizon * j as f64 / (points.max(2) - 1) as f64;
            format!("{t},{},{}", path.value_at(t), refl.refl(t))
        });
        ctx.out.csv("path_grid.csv", "t,value,reflected", rows)?;
    }
    Ok(Outcome::Pass)
}

#[allow(clippy::too_many_arguments)]
fn percolate_cmd(
    ctx: &Ctx,
    path: &Path,
    model: &Model,
    lambda: f64,
    p: Option<f64>,
    variant: Variant,
    replicates: usize,
    top: usize,
) -> Result<Outcome> {
    let (d, _, consts) = load_with_model(path, model)?;
    let spec = match p {
        Some(p) => PercolationSpec { lambda: f64::NAN, p_n: p, nu_n: compute_nu(&d)? },
        None => window_probability_for(compute_nu(&d)?, consts.c_n, lambda)?,
    };
    let runs = run_replicates(ctx.threads, ctx.common.seed, replicates.max(1), |_, rng| {
        let res = match variant {
            Variant::Red => percolate_explosion(&d, &spec, rng, RemovalVariant::DeleteRed)?,
            Variant::Uniform => percolate_explosion(&d, &spec, rng, RemovalVariant::DeleteUniformDegreeOne)?,
            Variant::Direct => percolate_direct(&pair_half_edges(&d, rng)?, spec.p_n, rng)?,
        };
        Ok(res.components)
    })?;
    ctx.out.file("components.csv", |b| write_components(b, &runs[0], &ctx.out.header()))?;
    let rows = runs.iter().enumerate().flat_map(|(r, comps)| {
        let mut c: Vec<(u64, u64)> = comps.iter().map(|c| (c.vertices, c.surplus)).collect();
        c.sort_by(|a, b| b.cmp(a));
        c.into_iter()
            .take(top)
            .enumerate()
            .map(move |(i, (v, s))| format!("{},{},{},{},{}", r, i + 1, v, v as f64 / consts.b_n, s))
            .collect::<Vec<_>>()
    });
    ctx.out.csv("percolate.csv", "replicate,rank,size,rescaled_size,surplus", rows)?;
    ctx.out.json("percolation_spec.json", &spec)?;
    Ok(Outcome::Pass)
}

/// `a:b:step`, inclusive of `b` up to rounding.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Parse(format!("lambda grid `{s}` is not a:b:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
    let (a, b, step) = (nums[0], nums[1], nums[2]);
    if step.is_nan() || step <= 0.0 || b < a {
        return Err(bad());
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a + i as f64 * step).collect())
}

#[derive(Serialize)]
struct ModifiedOut {
    s_bar: u64,
    beta_n: f64,
    bad_edges: Vec<u64>,
    bad_surplus_edges: Vec<u64>,
    snapshots: Vec<WindowSnapshot>,
}

fn sweep_cmd(
    ctx: &Ctx,
    path: &Path,
    model: &Model,
    grid: &str,
    replicates: usize,
    keep_top: usize,
    modified_start: Option<f64>,
) -> Result<Outcome> {
    let (d, _, consts) = load_with_model(path, model)?;
    let lambdas = parse_grid(grid)?;
    let opts = SweepOptions { keep_top, ..Default::default() };
    let plot_rows = |snaps: &[Vec<WindowSnapshot>]| -> Vec<String> {
        snaps
            .iter()
            .enumerate()
            .flat_map(|(r, s)| {
                s.iter()
                    .map(move |w| {
                        let sp = w.components.first().map(|c| c.surplus).unwrap_or(0);
                        format!("{},{},{},{},{}", r, w.lambda, w.largest() as f64 / consts.b_n, sp, w.open_ratio)
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    let columns = "replicate,lambda,largest_rescaled,largest_surplus,open_ratio";
    match modified_start {
        None => {
            let runs = run_replicates(ctx.threads, ctx.common.seed, replicates.max(1), |_, rng| {
                dynamic_sweep(&d, &consts, &lambdas, rng, &opts)
            })?;
            ctx.out.json("sweep.json", &runs)?;
            if ctx.common.emit_plot_data {
                ctx.out.csv("sweep_largest.csv", columns, plot_rows(&runs))?;
            }
        }
        Some(start) => {
            let runs = run_replicates(ctx.threads, ctx.common.seed, replicates.max(1), |_, rng| {
                let m = modified_sweep(&d, &consts, start, &lambdas, rng, &opts)?;
                Ok(ModifiedOut {
                    s_bar: m.s_bar,
                    beta_n: m.beta_n,
                    bad_edges: m.bad_edges,
                    bad_surplus_edges: m.bad_surplus_edges,
                    snapshots: m.snapshots,
                })
            })?;
            ctx.out.json("sweep.json", &runs)?;
            if ctx.common.emit_plot_data {
                let snaps: Vec<Vec<WindowSnapshot>> = runs.iter().map(|m| m.snapshots.clone()).collect();
                ctx.out.csv("sweep_largest.csv", columns, plot_rows(&snaps))?;
            }
        }
    }
    Ok(Outcome::Pass)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad {what} `{x}`"))))
        .collect()
}

fn particle_system(
    masses: Option<String>,
    masses_file: Option<PathBuf>,
    attributes: Option<String>,
    k1: f64,
    k2: f64,
    rule: Rule,
) -> Result<ParticleSystem> {
    let mut particles: Vec<Particle> = match (masses, masses_file) {
        (Some(m), _) => parse_list::<f64>(&m, "mass")?
            .into_iter()
            .map(|mass| Particle { mass, weight: 0.0, attribute: 0 })
            .collect(),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(&p).map_err(|e| with_path(e, &p))?;
            let mut v = Vec::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                let mut it = line.split(',');
                let mass = it.next().unwrap_or("").trim().parse().map_err(|_| Error::Parse(format!("bad line `{line}`")))?;
                let attribute = match it.next() {
                    Some(a) => a.trim().parse().map_err(|_| Error::Parse(format!("bad line `{line}`")))?,
                    None => 0,
                };
                v.push(Particle { mass, weight: 0.0, attribute });
            }
            v
        }
        (None, None) => return Err(Error::InvalidParameter("give --masses or --masses-file".into())),
    };
    if let Some(a) = attributes {
        let attrs: Vec<u64> = parse_list(&a, "attribute")?;
        if attrs.len() != particles.len() {
            return Err(Error::LengthMismatch { expected: particles.len(), got: attrs.len() });
        }
        for (p, a) in particles.iter_mut().zip(attrs) {
            p.attribute = a;
        }
    }
    let rule = match rule {
        Rule::MassSquared => AttributeRule::MassSquared,
        Rule::AttributeSquaredHalf => AttributeRule::AttributeSquaredHalf,
    };
    Ok(ParticleSystem { particles, k1, k2, rule })
}

fn amc_cmd(ctx: &Ctx, sys: &ParticleSystem, duration: f64, dump_every: Option<f64>, replicates: usize) -> Result<Outcome> {
    let dump_times: Vec<f64> = match dump_every {
        Some(h) if h > 0.0 => (1..).map(|i| i as f64 * h).take_while(|&t| t < duration).collect(),
        Some(_) => return Err(Error::InvalidParameter("--dump-every must be positive".into())),
        None => Vec::new(),
    };
    let runs = run_replicates(ctx.threads, ctx.common.seed, replicates.max(1), |r, rng| {
        let opts = SimulateOptions { record_events: r == 0, dump_times: if r == 0 { dump_times.clone() } else { Vec::new() } };
        simulate_with(sys, duration, &opts, rng)
    })?;
    #[derive(Serialize)]
    struct TrajectoryOut<'a> {
        events: &'a [heavycrit::AmcEvent],
        dumps: &'a [heavycrit::amc::StateDump],
    }
    ctx.out.json("amc.json", &TrajectoryOut { events: &runs[0].events, dumps: &runs[0].dumps })?;
    let rows = runs.iter().enumerate().map(|(r, t)| {
        let ordered = t.final_state.ordered();
        let (m, a) = ordered.first().map(|p| (p.mass, p.attribute)).unwrap_or((0.0, 0));
        format!("{},{},{},{}", r, m, a, ordered.iter().filter(|p| p.mass > 0.0).count())
    });
    ctx.out.csv("amc_final.csv", "replicate,largest_mass,largest_attribute,particles", rows)?;
    Ok(Outcome::Pass)
}

#[allow(clippy::too_many_arguments)]
fn compare_cmd(
    ctx: &Ctx,
    model: &Model,
    n: u64,
    lambda: f64,
    levy_lambda: Option<f64>,
    replicates: usize,
    k: usize,
    horizon: f64,
    alpha: f64,
    assert_pass: bool,
) -> Result<Outcome> {
    let spec = model_spec(model, None, lambda)?;
    let d = gen_deterministic(&spec, n)?;
    let consts = scaling_constants(&spec, n)?;
    let res = graph_vs_limit(&spec, &d, &consts, &[], replicates, replicates, k, horizon, levy_lambda, ctx.common.seed, ctx.threads)?;
    let c = &res.comparison;
    let ks_pass = c.ks.p_value > alpha;
    let chi_pass = c.joint.p_value > alpha;
    let reports = vec![
        Report {
            test: "ks_largest_rescaled_size".into(),
            statistic: c.ks.statistic,
            p: c.ks.p_value,
            n,
            replicates,
            pass: ks_pass,
        },
        Report {
            test: "chi_square_size_bucket_by_surplus".into(),
            statistic: c.joint.statistic,
            p: c.joint.p_value,
            n,
            replicates,
            pass: chi_pass,
        },
    ];
    ctx.out.json("report.json", &reports)?;
    if ctx.common.emit_plot_data {
        let rows = res.graph.iter().enumerate().map(|(r, g)| {
            let (x, y) = g.vector.get(0);
            format!("{r},{x},{y}")
        });
        ctx.out.csv("graph_largest.csv", "replicate,rescaled_size,surplus", rows)?;
    }
    for r in &reports {
        println!("{}: statistic {:.4} p {:.4e} {}", r.test, r.statistic, r.p, if r.pass { "pass" } else { "FAIL" });
    }
    if assert_pass && !(ks_pass && chi_pass) {
        return Ok(Outcome::Fail);
    }
    Ok(Outcome::Pass)
}
