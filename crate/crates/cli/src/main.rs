//! Command-line front end for the polygon cluster-category engine.
//!
//! Every command prints deterministic output: identical invocations produce
//! byte-identical stdout. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parse error, 3 invalid tilting set, 4 resource limit, 5 I/O.

use std::fmt;
use std::fs;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k0gon::arquiver::ArQuiver;
use k0gon::derived::HomOracle;
use k0gon::intlattice::AbelianGroup;
use k0gon::k0::{
    k0_fan, k0_mesh, verify_cells, GroupReport, MeshK0, TiltingContext,
};
use k0gon::polygon::{
    crosses, Angulation, Diagonal, EnumerationLimits, PolygonModel, ResourceLimit,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TILTING: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_IO: u8 = 5;

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[derive(Parser)]
#[command(name = "k0gon", version, about = "Exact Grothendieck-group computations for the polygon model of higher cluster categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute K_0 of the (d, n) model by a chosen route.
    K0(K0Args),
    /// Recompute K_0 along every route over a rectangle of cells and report.
    Verify(VerifyArgs),
    /// Enumerate the (d+2)-angulations of the polygon.
    Angulations(AngulationsArgs),
    /// Export the AR quiver in DOT format.
    Arquiver(ArquiverArgs),
    /// Index of an object with respect to a tilting set.
    Index(IndexArgs),
    /// Decide rigidity of a diagonal set by both available routes.
    Rigid(RigidArgs),
    /// Hom-space dimension between two objects in a chosen degree.
    Hom(HomArgs),
}

/// Positive cell parameter.
fn positive() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(1..)
}

#[derive(Args)]
struct K0Args {
    #[arg(long, value_parser = positive())]
    d: u32,
    #[arg(long, value_parser = positive())]
    n: u32,
    /// Computation route.
    #[arg(long, value_enum, default_value_t = Method::Mesh)]
    method: Method,
    /// Tilting set `a,b;c,d;...` (only with `--method tilting`).
    #[arg(long)]
    tilting: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Quotient of the split classes by all AR-triangle relations.
    Mesh,
    /// Cokernel of the explicit fan relation matrix.
    Fan,
    /// Index group of a tilting set: Z^n modulo its relation lattice.
    Tilting,
}

#[derive(Args)]
struct VerifyArgs {
    /// Inclusive range `lo..hi` (or a single value) for d.
    #[arg(long)]
    d: RangeArg,
    /// Inclusive range `lo..hi` (or a single value) for n.
    #[arg(long)]
    n: RangeArg,
    /// Report wall-clock milliseconds per cell (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct AngulationsArgs {
    #[arg(long, value_parser = positive())]
    d: u32,
    #[arg(long, value_parser = positive())]
    n: u32,
    /// Print only the number of angulations.
    #[arg(long)]
    count_only: bool,
    /// List at most this many angulations.
    #[arg(long)]
    limit: Option<u64>,
    /// Search budget in backtracking nodes.
    #[arg(long, env = "K0GON_MAX_NODES", default_value_t = EnumerationLimits::default().max_nodes)]
    max_nodes: u64,
}

#[derive(Args)]
struct ArquiverArgs {
    #[arg(long, value_parser = positive())]
    d: u32,
    #[arg(long, value_parser = positive())]
    n: u32,
    /// Output path for the DOT file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct IndexArgs {
    #[arg(long, value_parser = positive())]
    d: u32,
    #[arg(long, value_parser = positive())]
    n: u32,
    /// Tilting set `a,b;c,d;...`; coordinate order follows this list.
    #[arg(long)]
    tilting: String,
    /// Object diagonal `a,b`.
    #[arg(long)]
    object: String,
}

#[derive(Args)]
struct RigidArgs {
    #[arg(long, value_parser = positive())]
    d: u32,
    #[arg(long, value_parser = positive())]
    n: u32,
    /// Diagonal set `a,b;c,d;...` (any size).
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct HomArgs {
    #[arg(long, value_parser = positive())]
    d: u32,
    #[arg(long, value_parser = positive())]
    n: u32,
    /// Source diagonal `a,b`.
    #[arg(long)]
    from: String,
    /// Target diagonal `a,b`.
    #[arg(long)]
    to: String,
    /// Shift degree k: dimension of Hom(from, to[k]).
    #[arg(long, default_value_t = 0)]
    degree: u32,
}

/// Inclusive `lo..hi` range; a bare `k` means `k..k`.
#[derive(Clone, Copy, Debug)]
struct RangeArg {
    lo: u32,
    hi: u32,
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |part: &str| -> Result<u32, String> {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("cannot parse {part:?} as a positive integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let k = parse(s)?;
                (k, k)
            }
        };
        if lo == 0 {
            return Err("cell parameters start at 1".to_string());
        }
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(RangeArg { lo, hi })
    }
}

impl fmt::Display for RangeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::K0(args) => run_k0(args),
        Command::Verify(args) => run_verify(args),
        Command::Angulations(args) => run_angulations(args),
        Command::Arquiver(args) => run_arquiver(args),
        Command::Index(args) => run_index(args),
        Command::Rigid(args) => run_rigid(args),
        Command::Hom(args) => run_hom(args),
    }
}

fn human_group(g: &AbelianGroup) -> String {
    let mut parts: Vec<String> = (0..g.free_rank).map(|_| "Z".to_string()).collect();
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn parse_set(model: &PolygonModel, text: &str) -> Result<Vec<Diagonal>, Failure> {
    model
        .parse_diagonal_set(text)
        .map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn parse_one(model: &PolygonModel, text: &str) -> Result<Diagonal, Failure> {
    model
        .parse_diagonal(text)
        .map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn angulation(model: &PolygonModel, diagonals: Vec<Diagonal>) -> Result<Angulation, Failure> {
    Angulation::new(model, diagonals).map_err(|e| fail(EXIT_TILTING, e.to_string()))
}

fn oracle_for(model: &PolygonModel) -> HomOracle {
    HomOracle::new(model).expect("the orbit quiver matches the polygon model")
}

fn run_k0(args: K0Args) -> Result<(), Failure> {
    let model = PolygonModel::new(args.d, args.n);
    if args.tilting.is_some() && !matches!(args.method, Method::Tilting) {
        return Err(fail(EXIT_USAGE, "--tilting only applies to --method tilting"));
    }
    let group = match args.method {
        Method::Mesh => k0_mesh(&model),
        Method::Fan => k0_fan(&model),
        Method::Tilting => {
            let text = args
                .tilting
                .ok_or_else(|| fail(EXIT_USAGE, "--method tilting requires --tilting"))?;
            let set = parse_set(&model, &text)?;
            let tilting = angulation(&model, set)?;
            let mesh = MeshK0::new(&model);
            TiltingContext::new(&mesh, &tilting)
                .map_err(|e| fail(EXIT_TILTING, e.to_string()))?
                .index_group()
        }
    };
    println!("{}", human_group(&group));
    println!(
        "{}",
        serde_json::to_string(&GroupReport::from(&group)).expect("group serializes")
    );
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let reports = verify_cells(args.d.lo..=args.d.hi, args.n.lo..=args.n.hi, args.timings);
    println!("{}", serde_json::to_string_pretty(&reports).expect("report serializes"));
    let bad: Vec<_> = reports.iter().filter(|cell| !cell.agree).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        for cell in &bad {
            eprintln!("disagreement at d={} n={}", cell.d, cell.n);
        }
        Err(fail(EXIT_VERIFY, format!("{} cell(s) disagree", bad.len())))
    }
}

fn run_angulations(args: AngulationsArgs) -> Result<(), Failure> {
    let model = PolygonModel::new(args.d, args.n);
    let limits = EnumerationLimits { max_nodes: args.max_nodes };
    let over_budget = |e: ResourceLimit| {
        fail(
            EXIT_RESOURCE,
            format!("stopped after {} search nodes; raise --max-nodes", e.nodes),
        )
    };
    if args.count_only {
        let count = model
            .visit_angulations(&limits, |_| ControlFlow::Continue(()))
            .map_err(over_budget)?;
        println!("{count}");
        return Ok(());
    }
    let mut printed = 0u64;
    model
        .visit_angulations(&limits, |set| {
            if args.limit.is_some_and(|lim| printed >= lim) {
                return ControlFlow::Break(());
            }
            let line: Vec<String> = set.iter().map(Diagonal::to_pair_string).collect();
            println!("{}", line.join(";"));
            printed += 1;
            ControlFlow::Continue(())
        })
        .map_err(over_budget)?;
    Ok(())
}

fn run_arquiver(args: ArquiverArgs) -> Result<(), Failure> {
    let model = PolygonModel::new(args.d, args.n);
    let quiver = ArQuiver::build(&model);
    fs::write(&args.out, quiver.to_dot())
        .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", args.out.display())))?;
    println!("vertices: {}", quiver.vertices().len());
    println!("arrows: {}", quiver.arrows().len());
    Ok(())
}

fn run_index(args: IndexArgs) -> Result<(), Failure> {
    let model = PolygonModel::new(args.d, args.n);
    let set = parse_set(&model, &args.tilting)?;
    let object = parse_one(&model, &args.object)?;
    let tilting = angulation(&model, set)?;
    let mesh = MeshK0::new(&model);
    let ctx = TiltingContext::new(&mesh, &tilting)
        .map_err(|e| fail(EXIT_TILTING, e.to_string()))?;
    let index = ctx.index_of(object);
    let verified = ctx.verify_index(&index, object);
    let coords: Vec<i64> = index
        .coords
        .iter()
        .map(|v| i64::try_from(v).expect("index coordinates fit in i64"))
        .collect();
    let psi = ctx.im_psi_lattice();
    let basis: Vec<Vec<i64>> = (0..psi.rows())
        .map(|i| {
            psi.row(i)
                .iter()
                .map(|v| i64::try_from(v).expect("lattice entries fit in i64"))
                .collect()
        })
        .collect();
    let report = serde_json::json!({
        "d": args.d,
        "n": args.n,
        "object": object.to_pair_string(),
        "tilting": tilting.diagonals().iter().map(Diagonal::to_pair_string).collect::<Vec<_>>(),
        "index": coords,
        "im_psi": basis,
        "verified": verified,
    });
    println!("{report}");
    if verified {
        Ok(())
    } else {
        Err(fail(EXIT_VERIFY, "index failed the echo check"))
    }
}

fn run_rigid(args: RigidArgs) -> Result<(), Failure> {
    let model = PolygonModel::new(args.d, args.n);
    let set = parse_set(&model, &args.set)?;
    let crossing_rigid = set
        .iter()
        .enumerate()
        .all(|(i, u)| set[i + 1..].iter().all(|v| !crosses(u, v)));
    let oracle = oracle_for(&model);
    let extension_rigid = set
        .iter()
        .all(|&u| set.iter().all(|&v| oracle.is_rigid_pair(u, v)));
    let verdict = |ok: bool| if ok { "rigid" } else { "not rigid" };
    println!("crossing route: {}", verdict(crossing_rigid));
    println!("extension route: {}", verdict(extension_rigid));
    if crossing_rigid != extension_rigid {
        println!("routes disagree");
        return Err(fail(EXIT_VERIFY, "rigidity routes disagree"));
    }
    println!("{}", verdict(crossing_rigid));
    Ok(())
}

fn run_hom(args: HomArgs) -> Result<(), Failure> {
    let model = PolygonModel::new(args.d, args.n);
    let from = parse_one(&model, &args.from)?;
    let to = parse_one(&model, &args.to)?;
    let oracle = oracle_for(&model);
    println!("{}", oracle.ext_c(from, to, args.degree));
    Ok(())
}
