//! Command-line surface over the satpack library.
//!
//! Exit codes for `check`: 0 = holds / no violation found / certified
//! covering, 1 = violated / certified not, 2 = unknown, 3 = malformed file,
//! 4 = precondition failure (e.g. saturation check on a non-packing).
//! Other subcommands: 0 on success, 3 on malformed files, 1 otherwise.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use satpack::bounds::{
    asymptotic_saturation_bound, cluster_covering_bound, cluster_packing_bound, known_constants,
    reference_bound, BoundReport, BoundSide, ConstantValue,
};
use satpack::checker::{check_reduction, check_saturation, CheckConfig, CheckerError, VerdictStatus};
use satpack::constructions::{
    cluster, hex_covering, hex_packing, sheared_covering, sheared_covering_basis, ClusterKind,
    SplitPacking,
};
use satpack::engine::{optimize, Objective, SearchConfig};
use satpack::format::{
    parse_arrangement, parse_cluster, serialize_arrangement, serialize_cluster, serialize_result,
    ArrangementFile, ClusterFile, Outcome, ResultRecord,
};
use satpack::geom::Rect;
use satpack::periodic::{CoverStatus, PackingVerdict};
use satpack::render::{render_arrangement_svg, render_cluster_svg};

#[derive(Parser)]
#[command(name = "satpack", version, about = "Periodic disk packings and coverings: construct, certify, bound, optimize, render")]
struct Cli {
    /// RNG seed recorded in result files and used by stochastic searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Length tolerance for geometric predicates.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Output style: human text or a machine-readable result record.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a ready-made arrangement or cluster.
    Construct(ConstructArgs),
    /// Print the density of an arrangement file.
    Density { file: PathBuf },
    /// Run a packing/covering/saturation/reduction check.
    Check(CheckArgs),
    /// Cluster density bounds and the asymptotic bound.
    Bound(BoundArgs),
    /// Anneal an arrangement toward lower density under its constraint.
    Optimize(OptimizeArgs),
    /// Render an arrangement or cluster file to SVG.
    Render(RenderArgs),
    /// Print the table of named constants.
    Constants,
}

#[derive(Args)]
struct ConstructArgs {
    /// hex-packing | hex-covering | sect5 | split | cluster
    name: String,
    /// Radius surplus for hex-covering.
    #[arg(long, default_value_t = 0.0)]
    inflation: f64,
    /// Lattice parameter for sect5.
    #[arg(long)]
    a: Option<f64>,
    /// Dimension for sect5 (checks run only for d = 2).
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Slide parameter for the split packing.
    #[arg(long)]
    slide: Option<f64>,
    /// Cluster kind: pack2|pack3|pack7|cover3|cover4|cover7.
    #[arg(long)]
    kind: Option<String>,
    /// Cluster scale (covering kinds; packing kinds are fixed at 2).
    #[arg(long)]
    scale: Option<f64>,
    /// Window x0 y0 x1 y1 for split instantiation.
    #[arg(long, num_args = 4, allow_negative_numbers = true)]
    window: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    mode: CheckMode,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Placement grid / initial covering grid step.
    #[arg(long)]
    resolution: Option<f64>,
    /// Override of the (2n+1)-diameter search window.
    #[arg(long)]
    window: Option<f64>,
    /// Covering target radius (defaults to the file's radius).
    #[arg(long)]
    target: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Packing,
    Covering,
    Saturation,
    Reduction,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["cluster", "asymptotic"]))]
struct BoundArgs {
    /// Cluster kind for a cluster bound.
    #[arg(long)]
    cluster: Option<String>,
    /// Evaluate the covering cluster at this scale instead of optimizing.
    #[arg(long)]
    scale: Option<f64>,
    /// Optimize the covering-cluster scale (golden-section after a sweep).
    #[arg(long)]
    optimize_scale: bool,
    /// Asymptotic n-saturation bound instead of a cluster bound.
    #[arg(long)]
    asymptotic: bool,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    volume: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    objective: Obj,
    #[arg(long, default_value_t = 200)]
    iterations: usize,
    #[arg(long, default_value_t = 1)]
    constraint_n: usize,
    #[arg(long, default_value_t = 0.05)]
    resolution: f64,
    #[arg(long, default_value_t = 0.97)]
    cooling: f64,
    /// Where to write the best arrangement.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the audit result record.
    #[arg(long)]
    audit: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Obj {
    MinDensityPacking,
    MinCountCovering,
}

#[derive(Args)]
struct RenderArgs {
    file: PathBuf,
    /// Window x0 y0 x1 y1.
    #[arg(long, num_args = 4, allow_negative_numbers = true)]
    window: Vec<f64>,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_line: Vec<String> = std::env::args().skip(1).collect();
    let ctx = Context {
        command: command_line.join(" "),
        seed: cli.seed,
        format: cli.format,
    };
    let code = match &cli.cmd {
        Cmd::Construct(args) => cmd_construct(&ctx, args),
        Cmd::Density { file } => cmd_density(&ctx, file),
        Cmd::Check(args) => cmd_check(&ctx, args),
        Cmd::Bound(args) => cmd_bound(&ctx, args),
        Cmd::Optimize(args) => cmd_optimize(&ctx, args),
        Cmd::Render(args) => cmd_render(&ctx, args),
        Cmd::Constants => cmd_constants(),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

struct Context {
    command: String,
    seed: u64,
    format: Format,
}

impl Context {
    fn emit(&self, record: &ResultRecord, out: &Option<PathBuf>, text: impl Fn()) -> CliResult<()> {
        match self.format {
            Format::Text => text(),
            Format::Structured => print!("{}", serialize_result(record)),
        }
        if let Some(path) = out {
            std::fs::write(path, serialize_result(record))?;
        }
        Ok(())
    }
}

#[derive(Debug)]
enum CliError {
    Malformed(String),
    Precondition(String),
    Other(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Malformed(m) | CliError::Precondition(m) | CliError::Other(m) => {
                write!(f, "{m}")
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Other(format!("io: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

fn other<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Other(e.to_string())
}

fn read_arrangement(path: &Path) -> CliResult<ArrangementFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    parse_arrangement(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn cmd_construct(ctx: &Context, args: &ConstructArgs) -> CliResult<u8> {
    match args.name.as_str() {
        "hex-packing" => {
            let a = hex_packing();
            let file = ArrangementFile::from_arrangement(&a);
            write_or_print(&serialize_arrangement(&file), &args.out)?;
            println!("density {:.6}", a.density());
        }
        "hex-covering" => {
            let a = hex_covering(args.inflation).map_err(other)?;
            let file = ArrangementFile::from_arrangement(&a);
            write_or_print(&serialize_arrangement(&file), &args.out)?;
            println!("density {:.6}", a.density());
        }
        "sect5" => {
            let param = args
                .a
                .ok_or_else(|| CliError::Other("sect5 requires --a".into()))?;
            if args.d == 2 {
                let a = sheared_covering(param).map_err(other)?;
                let file = ArrangementFile::from_arrangement(&a);
                write_or_print(&serialize_arrangement(&file), &args.out)?;
                println!("density {:.6}", a.density());
            } else {
                let basis = sheared_covering_basis(args.d, param).map_err(other)?;
                let file = ArrangementFile {
                    dim: args.d,
                    basis,
                    motif: vec![vec![0.0; args.d]],
                    radius: 1.0,
                };
                write_or_print(&serialize_arrangement(&file), &args.out)?;
                println!("dim {} lattice written (checks run for d = 2 only)", args.d);
            }
        }
        "split" => {
            let slide = args
                .slide
                .ok_or_else(|| CliError::Other("split requires --slide".into()))?;
            let w = args
                .window
                .clone()
                .unwrap_or_else(|| vec![-10.0, -10.0, 10.0, 10.0]);
            let split = SplitPacking::new(slide).map_err(other)?;
            let centers = split.centers_in_window(Rect::new(w[0], w[1], w[2], w[3]));
            let file = ClusterFile {
                centers: centers.iter().map(|p| [p.x, p.y]).collect(),
            };
            write_or_print(&serialize_cluster(&file), &args.out)?;
            println!("{} centers (unit disks)", file.centers.len());
        }
        "cluster" => {
            let kind: ClusterKind = args
                .kind
                .as_deref()
                .ok_or_else(|| CliError::Other("cluster requires --kind".into()))?
                .parse()
                .map_err(other)?;
            let scale = args
                .scale
                .unwrap_or(if kind.is_packing() { 2.0 } else { 1.0 });
            let c = cluster(kind, scale).map_err(other)?;
            let file = ClusterFile::from_cluster(&c);
            write_or_print(&serialize_cluster(&file), &args.out)?;
            println!("{} centers (unit disks)", file.centers.len());
        }
        unknown => {
            return Err(CliError::Other(format!(
                "unknown generator `{unknown}` (expected hex-packing, hex-covering, sect5, split, cluster)"
            )))
        }
    }
    let _ = ctx;
    Ok(0)
}

fn write_or_print(content: &str, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_density(ctx: &Context, path: &Path) -> CliResult<u8> {
    let file = read_arrangement(path)?;
    let a = file.to_arrangement().map_err(other)?;
    let record = ResultRecord {
        command: ctx.command.clone(),
        inputs: serde_json::json!({ "file": path.display().to_string() }),
        outcome: Outcome::Value { value: a.density() },
        tool_version: satpack::VERSION.into(),
        seed: None,
    };
    ctx.emit(&record, &None, || println!("density {:.6}", a.density()))?;
    Ok(0)
}

fn cmd_check(ctx: &Context, args: &CheckArgs) -> CliResult<u8> {
    let file = read_arrangement(&args.file)?;
    let a = file
        .to_arrangement()
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    let inputs = serde_json::json!({
        "file": args.file.display().to_string(),
        "n": args.n,
        "resolution": args.resolution,
        "window": args.window,
        "target": args.target,
    });
    let (outcome, code, line) = match args.mode {
        CheckMode::Packing => {
            let v = a.is_packing().map_err(other)?;
            match v {
                PackingVerdict::CertifiedYes { min_slack } => (
                    Outcome::Packing {
                        certified: true,
                        dist: None,
                    },
                    0,
                    format!("certified-yes (min slack {min_slack:.3e})"),
                ),
                PackingVerdict::CertifiedNo { dist, .. } => (
                    Outcome::Packing {
                        certified: false,
                        dist: Some(dist),
                    },
                    1,
                    format!("certified-no (centers at distance {dist:.9})"),
                ),
            }
        }
        CheckMode::Covering => {
            let target = args.target.unwrap_or(a.radius());
            let h0 = args.resolution.unwrap_or(a.radius() / 2.0);
            let v = a.covering_check(target, h0).map_err(other)?;
            let code = match v.status {
                CoverStatus::CertifiedYes => 0,
                CoverStatus::CertifiedNo => 1,
                CoverStatus::Unknown => 2,
            };
            let line = format!(
                "{:?} margin {:.3e} resolution {:.3e}",
                v.status, v.margin, v.resolution
            );
            (
                Outcome::Cover {
                    status: v.status,
                    witness: v.witness.map(|p| (p.x, p.y)),
                    margin: v.margin,
                    resolution: v.resolution,
                },
                code,
                line,
            )
        }
        CheckMode::Saturation | CheckMode::Reduction => {
            let mut cfg = CheckConfig::new(args.n).with_seed(ctx.seed);
            if let Some(g) = args.resolution {
                cfg = cfg.with_grid(g);
            }
            if let Some(w) = args.window {
                cfg = cfg.with_window(w);
            }
            let result = if args.mode == CheckMode::Saturation {
                check_saturation(&a, &cfg)
            } else {
                check_reduction(&a, &cfg)
            };
            let v = result.map_err(|e| match e {
                CheckerError::NotAPacking | CheckerError::NotACovering { .. } => {
                    CliError::Precondition(e.to_string())
                }
                e => other(e),
            })?;
            let code = match v.status {
                VerdictStatus::Violated => 1,
                VerdictStatus::CertifiedHolds | VerdictStatus::NoViolationFound => 0,
            };
            let line = match &v.witness {
                Some(w) => format!(
                    "{:?}: remove {} add {} margin {:.3e}",
                    v.status,
                    w.removed.len(),
                    w.added.len(),
                    w.margin
                ),
                None => format!("{:?} (resolution {:.3e})", v.status, v.resolution),
            };
            (
                Outcome::Verdict {
                    status: v.status,
                    witness: v.witness,
                    resolution: v.resolution,
                },
                code,
                line,
            )
        }
    };
    let record = ResultRecord {
        command: ctx.command.clone(),
        inputs,
        outcome,
        tool_version: satpack::VERSION.into(),
        seed: Some(ctx.seed),
    };
    ctx.emit(&record, &args.out, || println!("{line}"))?;
    Ok(code)
}

fn bound_outcome(report: &BoundReport) -> Outcome {
    Outcome::Bound {
        n: report.n,
        side: match report.side {
            BoundSide::PackingLower => "packing-lower".into(),
            BoundSide::CoveringUpper => "covering-upper".into(),
        },
        bound: report.bound,
        area_lower: report.domain_area.lower,
        area_upper: report.domain_area.upper,
        scale: report.scale,
        paper_value: report.paper_value,
        abs_err: report.abs_err,
    }
}

fn cmd_bound(ctx: &Context, args: &BoundArgs) -> CliResult<u8> {
    if args.asymptotic {
        let (d, n) = (
            args.d
                .ok_or_else(|| CliError::Other("--asymptotic requires --d".into()))?,
            args.n
                .ok_or_else(|| CliError::Other("--asymptotic requires --n".into()))?,
        );
        let delta = args
            .delta
            .ok_or_else(|| CliError::Other("--asymptotic requires --delta".into()))?;
        let volume = args
            .volume
            .ok_or_else(|| CliError::Other("--asymptotic requires --volume".into()))?;
        let value = asymptotic_saturation_bound(delta, volume, d, n).map_err(other)?;
        let record = ResultRecord {
            command: ctx.command.clone(),
            inputs: serde_json::json!({"d": d, "n": n, "delta": delta, "volume": volume}),
            outcome: Outcome::Value { value },
            tool_version: satpack::VERSION.into(),
            seed: None,
        };
        ctx.emit(&record, &args.out, || {
            println!("asymptotic bound {value:.5}")
        })?;
        return Ok(0);
    }

    let kind: ClusterKind = args
        .cluster
        .as_deref()
        .expect("clap group guarantees one of cluster/asymptotic")
        .parse()
        .map_err(other)?;
    let report = if kind.is_packing() {
        let c = cluster(kind, 2.0).map_err(other)?;
        cluster_packing_bound(&c).map_err(other)?
    } else {
        let scale = if args.optimize_scale {
            None
        } else {
            Some(args.scale.unwrap_or(1.0))
        };
        cluster_covering_bound(kind, scale).map_err(other)?
    };
    let report = report.with_reference(reference_bound(kind));
    let record = ResultRecord {
        command: ctx.command.clone(),
        inputs: serde_json::json!({
            "cluster": kind.name(),
            "scale": args.scale,
            "optimize_scale": args.optimize_scale,
        }),
        outcome: bound_outcome(&report),
        tool_version: satpack::VERSION.into(),
        seed: None,
    };
    ctx.emit(&record, &args.out, || {
        println!(
            "cluster {} (n = {}, {})",
            kind.name(),
            report.n,
            match report.side {
                BoundSide::PackingLower => "packing lower bound",
                BoundSide::CoveringUpper => "covering upper bound",
            }
        );
        if let Some(s) = report.scale {
            println!("scale {s:.6}");
        }
        println!(
            "domain area [{:.6}, {:.6}]",
            report.domain_area.lower, report.domain_area.upper
        );
        println!("bound {:.5}", report.bound);
        if let (Some(p), Some(e)) = (report.paper_value, report.abs_err) {
            println!("reference {p:.5}  abs err {e:.2e}");
        }
    })?;
    Ok(0)
}

fn cmd_optimize(ctx: &Context, args: &OptimizeArgs) -> CliResult<u8> {
    let file = read_arrangement(&args.file)?;
    let a = file
        .to_arrangement()
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    let objective = match args.objective {
        Obj::MinDensityPacking => Objective::MinDensityPacking,
        Obj::MinCountCovering => Objective::MinCountCovering,
    };
    let mut cfg = SearchConfig::new(ctx.seed, args.iterations);
    cfg.constraint_n = args.constraint_n;
    cfg.resolution = args.resolution;
    cfg.cooling = args.cooling;
    let (best, audit) = optimize(&a, objective, &cfg).map_err(|e| match e {
        satpack::engine::EngineError::InvalidInitialState(m) => CliError::Precondition(m),
        e => other(e),
    })?;
    if let Some(path) = &args.out {
        std::fs::write(
            path,
            serialize_arrangement(&ArrangementFile::from_arrangement(&best)),
        )?;
    }
    let record = ResultRecord {
        command: ctx.command.clone(),
        inputs: serde_json::json!({
            "file": args.file.display().to_string(),
            "iterations": args.iterations,
            "constraint_n": args.constraint_n,
            "resolution": args.resolution,
            "cooling": args.cooling,
        }),
        outcome: Outcome::Audit {
            final_density: best.density(),
            motif_len: best.motif().len(),
            entries: audit.clone(),
        },
        tool_version: satpack::VERSION.into(),
        seed: Some(ctx.seed),
    };
    ctx.emit(&record, &args.audit, || {
        println!(
            "final density {:.6} with {} motif disks after {} accepted moves",
            best.density(),
            best.motif().len(),
            audit.len()
        )
    })?;
    Ok(0)
}

fn cmd_render(ctx: &Context, args: &RenderArgs) -> CliResult<u8> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", args.file.display())))?;
    let w = Rect::new(
        args.window[0],
        args.window[1],
        args.window[2],
        args.window[3],
    );
    let svg = if let Ok(arr) = parse_arrangement(&text) {
        render_arrangement_svg(&arr, w).map_err(other)?
    } else if let Ok(cl) = parse_cluster(&text) {
        render_cluster_svg(&cl, Some(w)).map_err(other)?
    } else {
        return Err(CliError::Malformed(format!(
            "{}: neither an arrangement nor a cluster file",
            args.file.display()
        )));
    };
    std::fs::write(&args.out, svg)?;
    let _ = ctx;
    Ok(0)
}

fn cmd_constants() -> CliResult<u8> {
    for c in known_constants() {
        let value = match c.value {
            ConstantValue::Finite(v) => format!("{v:.6}"),
            ConstantValue::Infinite => "infinite".into(),
            ConstantValue::Symbolic => "symbolic".into(),
        };
        let flag = if c.conjectural { "  (conjectured)" } else { "" };
        println!("{:<14} = {:<10} [{}]{}", c.name, value, c.expression, flag);
    }
    Ok(0)
}
