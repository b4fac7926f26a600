//! `yao` subcommands: gen, yao, radius, verify, plot.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use yao_connectivity::claims::{
    self, metric_suites, upper_bound_trials, y2_family, y3_lower_grid, y3_upper_radius,
    y4_lower_grid, ClaimOutcome,
};
use yao_connectivity::counterexamples::minimal_y2_chain;
use yao_connectivity::instances::{random_connected_instance, InstanceConfig, Model};
use yao_connectivity::io::{EdgeListFile, PointSetFile};
use yao_connectivity::plot::{render_svg, EdgeLayer};
use yao_connectivity::{
    connectivity_radius, disk_graph, generate_family, yao_directed, yao_undirected, Cones,
    ConstructionParams, Family, PointSet, Radius, DEFAULT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNBOUNDED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "yao",
    version,
    about = "Yao subgraphs of disk graphs and their connectivity radii"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a lower-bound construction or a random unit-connected set.
    Gen(GenArgs),
    /// Write the Yao edge list of a point set's disk graph.
    Yao(YaoArgs),
    /// Print the connectivity radius of a point set.
    Radius(RadiusArgs),
    /// Check the connectivity claims and metric properties.
    Verify(VerifyArgs),
    /// Render a point set and edge layers as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    #[value(name = "y4-lb")]
    Y4Lb,
    #[value(name = "y3-lb")]
    Y3Lb,
    #[value(name = "y2-lb")]
    Y2Lb,
    Random,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: GenFamily,
    /// Target radius (lower-bound families).
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Chain length.
    #[arg(long)]
    pub r: Option<usize>,
    /// Point count (random).
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "incremental-disk")]
    pub model: Model,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct YaoArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: f64,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub directed: bool,
}

#[derive(Debug, clap::Args)]
pub struct RadiusArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClaimSet {
    /// Four-cone lower-bound sets.
    #[value(name = "1")]
    FourConeLower,
    /// Four-cone radius bound on random sets.
    #[value(name = "2")]
    FourConeUpper,
    /// Three-cone lower-bound sets.
    #[value(name = "3")]
    ThreeConeLower,
    /// Three-cone radius bound on random sets.
    #[value(name = "4")]
    ThreeConeUpper,
    /// Two-cone sets.
    #[value(name = "y2")]
    TwoCone,
    /// Metric inequalities.
    #[value(name = "lemmas")]
    Metrics,
    All,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long = "theorem", value_enum)]
    pub claims: ClaimSet,
    #[arg(long, default_value_t = claims::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = claims::DEFAULT_N)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sample count for the metric suites.
    #[arg(long, default_value_t = claims::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Write failing instances here instead of printing them.
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct PlotArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Edge list files, drawn in the order given.
    #[arg(long, num_args = 1..)]
    pub edges: Vec<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub labels: bool,
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Yao(a) => yao(a),
        Command::Radius(a) => radius(a),
        Command::Verify(a) => verify(a),
        Command::Plot(a) => plot(a),
    }
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file =
        PointSetFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.to_point_set()
        .with_context(|| format!("loading points from {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cones(k: usize) -> Result<Cones> {
    Ok(Cones::new(k)?)
}

fn gen(a: GenArgs) -> Result<i32> {
    let family = match a.family {
        GenFamily::Y4Lb => Family::Y4Lower,
        GenFamily::Y3Lb => Family::Y3Lower,
        GenFamily::Y2Lb => Family::Y2Lower,
        GenFamily::Random => return gen_random(&a),
    };
    let Some(d) = a.d else {
        bail!("--d is required for {family}");
    };
    let mut params = ConstructionParams::defaults(family, d)?;
    if let Some(eps) = a.eps {
        params.eps = eps;
    }
    if let Some(alpha) = a.alpha {
        params.alpha = alpha;
    }
    match a.r {
        Some(r) => params.r = r,
        None if family == Family::Y2Lower => {
            params.validate()?;
            params.r = minimal_y2_chain(params.d, params.eps, params.alpha)?;
        }
        None => {}
    }
    let s = generate_family(&params)?;
    let file = PointSetFile::from_point_set(&s)
        .with_metadata("family", family.name())
        .with_metadata("k", family.cones().get())
        .with_metadata("d", params.d)
        .with_metadata("eps", params.eps)
        .with_metadata("alpha", params.alpha)
        .with_metadata("r", params.r);
    write(&a.out, &file.to_json())?;
    eprintln!("wrote {} points to {}", s.len(), a.out.display());
    Ok(EXIT_OK)
}

fn gen_random(a: &GenArgs) -> Result<i32> {
    eprintln!("seed: {}", a.seed);
    let cfg = InstanceConfig::new(a.n, a.seed, a.model);
    let s = random_connected_instance(&cfg)?;
    let file = PointSetFile::from_point_set(&s)
        .with_metadata("family", "random")
        .with_metadata("n", cfg.n)
        .with_metadata("seed", cfg.seed)
        .with_metadata("model", cfg.model.name())
        .with_metadata("scale", cfg.scale);
    write(&a.out, &file.to_json())?;
    eprintln!("wrote {} points to {}", s.len(), a.out.display());
    Ok(EXIT_OK)
}

fn yao(a: YaoArgs) -> Result<i32> {
    let s = read_point_set(&a.input)?;
    let g = disk_graph(&s, a.d)?;
    let params = cones(a.k)?.into();
    let y = if a.directed {
        yao_directed(&g, params)?
    } else {
        yao_undirected(&g, params)?
    };
    write(&a.out, &EdgeListFile::from_graph(&y).to_json())?;
    eprintln!(
        "{} {} over {} points",
        y.edge_count(),
        if a.directed { "arcs" } else { "edges" },
        s.len()
    );
    Ok(EXIT_OK)
}

fn radius(a: RadiusArgs) -> Result<i32> {
    let s = read_point_set(&a.input)?;
    let res = connectivity_radius(&s, cones(a.k)?, a.cap)?;
    let (status, value) = match res.radius {
        Radius::Finite(r) => ("finite", Some(r)),
        Radius::UnboundedAboveCap => ("unbounded-above-cap", None),
    };
    let record = json!({
        "k": a.k,
        "n": s.len(),
        "cap": res.cap,
        "status": status,
        "radius": value,
        "witness_edges": res.witness_edges.len(),
        "candidates_examined": res.candidates_examined,
    });
    println!("{record}");
    match value {
        Some(r) => {
            println!(
                "Y_{}[G^d] on {} points is first connected at d = {r} ({} edges, {} candidates examined)",
                a.k,
                s.len(),
                res.witness_edges.len(),
                res.candidates_examined
            );
            Ok(EXIT_OK)
        }
        None => {
            println!(
                "Y_{}[G^d] on {} points is disconnected for every d <= {}",
                a.k,
                s.len(),
                res.cap
            );
            Ok(EXIT_UNBOUNDED)
        }
    }
}

fn verify(a: VerifyArgs) -> Result<i32> {
    eprintln!("seed: {}", a.seed);
    let t = a.claims;
    let wants = |x: ClaimSet| t == x || t == ClaimSet::All;
    let mut outcomes: Vec<ClaimOutcome> = Vec::new();
    if wants(ClaimSet::FourConeLower) {
        outcomes.extend(y4_lower_grid());
    }
    if wants(ClaimSet::FourConeUpper) {
        outcomes.push(upper_bound_trials(
            Cones::FOUR,
            std::f64::consts::SQRT_2,
            a.trials,
            a.n,
            a.seed,
        )?);
    }
    if wants(ClaimSet::ThreeConeLower) {
        outcomes.extend(y3_lower_grid());
    }
    if wants(ClaimSet::ThreeConeUpper) {
        outcomes.push(upper_bound_trials(
            Cones::THREE,
            y3_upper_radius(),
            a.trials,
            a.n,
            a.seed,
        )?);
    }
    if wants(ClaimSet::TwoCone) {
        outcomes.extend(y2_family());
    }
    if wants(ClaimSet::Metrics) {
        outcomes.extend(metric_suites(a.samples, a.seed));
    }

    let mut failures = 0;
    for o in &outcomes {
        println!(
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.claim,
            o.detail
        );
        if o.passed {
            continue;
        }
        failures += 1;
        let Some(s) = &o.instance else { continue };
        let text = PointSetFile::from_point_set(s)
            .with_metadata("claim", o.claim.as_str())
            .to_json();
        match &a.dump_dir {
            Some(dir) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let path = dir.join(format!("failing-{failures}.json"));
                write(&path, &text)?;
                println!("  instance written to {}", path.display());
            }
            None => eprintln!("failing instance:\n{text}"),
        }
    }
    println!(
        "{} of {} claims pass",
        outcomes.len() - failures,
        outcomes.len()
    );
    Ok(if failures == 0 { EXIT_OK } else { EXIT_ERROR })
}

fn plot(a: PlotArgs) -> Result<i32> {
    let s = read_point_set(&a.input)?;
    let mut layers = Vec::new();
    for path in &a.edges {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = EdgeListFile::from_json(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        file.validate_against(&s)
            .with_context(|| format!("{} does not match {}", path.display(), a.input.display()))?;
        let name = path
            .file_stem()
            .map(|x| x.to_string_lossy().into_owned())
            .unwrap_or_default();
        layers.push(EdgeLayer::new(name, file.pairs()).directed(file.directed));
    }
    write(&a.out, &render_svg(&s, &layers, a.labels))?;
    eprintln!("wrote {}", a.out.display());
    Ok(EXIT_OK)
}
