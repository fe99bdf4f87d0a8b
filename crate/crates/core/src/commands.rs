//! Command-line front end. Every subcommand writes one JSON document (or one
//! JSON line per census entry) to standard output.
//!
//! Exit codes: 0 success, 2 domain error or failed check, 64 usage error,
//! 74 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::birational::{phi_forward, phi_inverse};
use crate::curve::{twist_curve, twist_points, AffinePoint, Curve, CurveWithPoints};
use crate::elkies::{repro_elkies, ElkiesDataset};
use crate::error::Error;
use crate::fiber::{Fiber, GeometryReport};
use crate::low_genus::{
    conic_param, cubic_to_diagonal, fermat_to_weierstrass, weierstrass_from_diagonal, ConicSpec,
    CubicSpec,
};
use crate::manifest::RunManifest;
use crate::projective::ProjectivePoint;
use crate::search::{census, cross_check, BoxKind, Partition, SearchConfig, SearchMode};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "superfiber",
    version,
    about = "Curves y^s = a x^r + b and their fiber curves"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads; with --worker-index, also the partition size.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write a run manifest (JSON) to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    /// Read command input from a JSON file ("-" for standard input).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Recompute the rank-17 example and compare with the printed data.
    ReproElkies,
    /// Defining forms of a fiber.
    FiberEqs {
        #[command(flatten)]
        fiber: FiberArgs,
        /// Use the c*Y_i^s = A_i*Y_1^s - B_i*Y_0^s layout.
        #[arg(long)]
        presented: bool,
    },
    /// Whether a point lies on a fiber.
    VerifyPoint {
        #[command(flatten)]
        fiber: FiberArgs,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Genus, gonality bound and threshold of a fiber shape.
    Genus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: u32,
    },
    /// Twist a curve with points by its base point (input: curve-with-points JSON).
    Twist,
    /// Forward map from a curve with points (input: curve-with-points JSON).
    Map,
    /// Inverse map from a fiber point.
    MapInverse {
        #[command(flatten)]
        fiber: FiberArgs,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Point of alpha X^2 + beta Y^2 - (alpha + beta) Z^2 = 0 at parameter u.
    ParamConic {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, allow_hyphen_values = true)]
        beta: Rational,
        #[arg(long, allow_hyphen_values = true)]
        u: Rational,
    },
    /// Map a point of alpha X^3 + beta Y^3 + gamma Z^3 = 0 to its Weierstrass model.
    CubicToWeierstrass {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, allow_hyphen_values = true)]
        beta: Rational,
        #[command(flatten)]
        point: PointArgs,
        /// Also report the intermediate diagonal-cubic point.
        #[arg(long)]
        via_diagonal: bool,
    },
    /// Census of curves or fiber points up to a height bound (JSON lines).
    Search {
        #[command(flatten)]
        fiber: FiberArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_parser = parse_mode, default_value = "curve-box")]
        mode: SearchMode,
        /// This worker's share of the range, out of --workers.
        #[arg(long)]
        worker_index: Option<usize>,
    },
    /// Run both searches and reconcile them.
    CrossCheck {
        #[command(flatten)]
        fiber: FiberArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Fiber-side bound (default: derived from the curve side).
        #[arg(long)]
        fiber_height: Option<u64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FiberArgs {
    /// Comma-separated x-coordinates alpha_0,...,alpha_n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub alphas: Option<Vec<Rational>>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    /// Comma-separated projective coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub point: Option<Vec<Rational>>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long)]
    pub height: u64,
    #[arg(long = "box", value_parser = parse_box, default_value = "integer")]
    pub box_kind: BoxKind,
}

fn parse_mode(s: &str) -> Result<SearchMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_box(s: &str) -> Result<BoxKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Fields that may appear in an `--input` document. A fiber spec, a point,
/// and a curve-with-points share one flat namespace.
#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    alphas: Option<Vec<Rational>>,
    r: Option<u32>,
    s: Option<u32>,
    point: Option<Vec<Rational>>,
    curve: Option<Curve>,
    points: Option<Vec<AffinePoint>>,
    base_index: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Text for standard output and the exit status it goes with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            exit_code: EXIT_OK,
        }
    }
}

struct Ctx {
    format: Format,
    input: Option<InputDoc>,
}

impl Ctx {
    fn fiber(&self, args: &FiberArgs) -> Result<Fiber, CliError> {
        let doc = self.input.as_ref();
        let alphas = args
            .alphas
            .clone()
            .or_else(|| doc.and_then(|d| d.alphas.clone()))
            .ok_or_else(|| CliError::Usage("missing --alphas".into()))?;
        let r = args
            .r
            .or(doc.and_then(|d| d.r))
            .ok_or_else(|| CliError::Usage("missing --r".into()))?;
        let s = args
            .s
            .or(doc.and_then(|d| d.s))
            .ok_or_else(|| CliError::Usage("missing --s".into()))?;
        Ok(Fiber::from_parts(alphas, r, s)?)
    }

    fn point(&self, args: &PointArgs) -> Result<ProjectivePoint, CliError> {
        let coords = args
            .point
            .clone()
            .or_else(|| self.input.as_ref().and_then(|d| d.point.clone()))
            .ok_or_else(|| CliError::Usage("missing --point".into()))?;
        Ok(ProjectivePoint::new(coords)?)
    }

    fn cwp(&self) -> Result<CurveWithPoints, CliError> {
        let missing =
            || CliError::Usage("a curve-with-points document is required (--input)".into());
        let doc = self.input.as_ref().ok_or_else(missing)?;
        let curve = doc.curve.clone().ok_or_else(missing)?;
        let points = doc.points.clone().ok_or_else(missing)?;
        Ok(CurveWithPoints::with_base(
            curve,
            points,
            doc.base_index.unwrap_or(0),
        )?)
    }

    fn render<T: Serialize>(&self, value: &T) -> String {
        let v = serde_json::to_value(value).expect("serializable");
        match self.format {
            Format::Json => format!("{v}\n"),
            Format::Table => table(&v),
        }
    }
}

fn table(v: &Value) -> String {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, val) in map {
                out.push_str(&format!("{k:width$}  {}\n", scalar(val)));
            }
        }
        Value::Array(items) => items
            .iter()
            .for_each(|i| out.push_str(&format!("{}\n", scalar(i)))),
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
    out
}

fn read_input(path: &PathBuf) -> Result<(Vec<u8>, InputDoc), CliError> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)
            .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?
    };
    let doc = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Domain(format!("invalid input document: {e}")))?;
    Ok((bytes, doc))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::ReproElkies => "repro-elkies",
        Command::FiberEqs { .. } => "fiber-eqs",
        Command::VerifyPoint { .. } => "verify-point",
        Command::Genus { .. } => "genus",
        Command::Twist => "twist",
        Command::Map => "map",
        Command::MapInverse { .. } => "map-inverse",
        Command::ParamConic { .. } => "param-conic",
        Command::CubicToWeierstrass { .. } => "cubic-to-weierstrass",
        Command::Search { .. } => "search",
        Command::CrossCheck { .. } => "cross-check",
    }
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Result<Output, CliError> {
    let out = match &cli.command {
        Command::ReproElkies => {
            let report = repro_elkies(&ElkiesDataset::embedded());
            let text = match ctx.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string(&report).expect("serializable")
                ),
                Format::Table => report.to_string(),
            };
            let exit_code = if report.passed { EXIT_OK } else { EXIT_DOMAIN };
            return Ok(Output {
                stdout: text,
                exit_code,
            });
        }
        Command::FiberEqs { fiber, presented } => {
            let f = ctx.fiber(fiber)?;
            match (ctx.format, presented) {
                (Format::Table, true) => f
                    .presented_equations()
                    .iter()
                    .map(|e| format!("{}\n", e.display(f.s())))
                    .collect(),
                (Format::Table, false) => f
                    .equations()
                    .iter()
                    .map(|e| {
                        format!(
                            "{}*Y_0^{s} + {}*Y_1^{s} + {}*Y_{}^{s} = 0\n",
                            e.c0,
                            e.c1,
                            e.ci,
                            e.i,
                            s = f.s()
                        )
                    })
                    .collect(),
                (Format::Json, true) => ctx.render(&f.presented_equations()),
                (Format::Json, false) => ctx.render(&f.equations()),
            }
        }
        Command::VerifyPoint { fiber, point } => {
            let f = ctx.fiber(fiber)?;
            ctx.render(&f.contains(&ctx.point(point)?)?)
        }
        Command::Genus { n, s } => {
            if *n < 2 || *s < 2 {
                return Err(Error::InvalidFiberShape { n: *n, s: *s }.into());
            }
            ctx.render(&GeometryReport::new(*n, *s)?)
        }
        Command::Twist => {
            let cwp = ctx.cwp()?;
            let twisted = twist_curve(&cwp)?;
            let points = twist_points(&cwp)?;
            ctx.render(&json!({ "twist": twisted, "points": points }))
        }
        Command::Map => {
            let (fiber, point) = phi_forward(&ctx.cwp()?)?;
            ctx.render(&json!({
                "alphas": fiber.alphas(),
                "r": fiber.r(),
                "s": fiber.s(),
                "point": point,
            }))
        }
        Command::MapInverse { fiber, point } => {
            let f = ctx.fiber(fiber)?;
            ctx.render(&phi_inverse(&f, &ctx.point(point)?)?)
        }
        Command::ParamConic { alpha, beta, u } => {
            let spec = ConicSpec::new(alpha.clone(), beta.clone())?;
            ctx.render(&conic_param(&spec, u)?)
        }
        Command::CubicToWeierstrass {
            alpha,
            beta,
            point,
            via_diagonal,
        } => {
            let spec = CubicSpec::new(alpha.clone(), beta.clone())?;
            let p = ctx.point(point)?;
            let w = fermat_to_weierstrass(&spec, &p)?;
            if *via_diagonal {
                let d = cubic_to_diagonal(&spec, &p)?;
                let two_step = weierstrass_from_diagonal(&spec, &d).ok();
                ctx.render(&json!({ "diagonal": d, "weierstrass": w, "two_step": two_step }))
            } else {
                ctx.render(&w)
            }
        }
        Command::Search {
            fiber,
            search,
            mode,
            worker_index,
        } => {
            let f = ctx.fiber(fiber)?;
            let mut cfg = SearchConfig::new(search.height)?
                .with_mode(*mode)
                .with_box(search.box_kind);
            if let Some(index) = worker_index {
                let count = cli
                    .workers
                    .ok_or_else(|| CliError::Usage("--worker-index needs --workers".into()))?;
                cfg = cfg.with_partition(Partition::new(*index, count)?);
            }
            let entries = census(&f, &cfg)?;
            match ctx.format {
                Format::Json => entries
                    .iter()
                    .map(|e| format!("{}\n", serde_json::to_string(e).expect("serializable")))
                    .collect(),
                Format::Table => entries
                    .iter()
                    .map(|e| {
                        format!(
                            "a={} b={} point={} distinct_x={}\n",
                            e.curve.a(),
                            e.curve.b(),
                            e.fiber_point,
                            e.distinct_x_count
                        )
                    })
                    .collect(),
            }
        }
        Command::CrossCheck {
            fiber,
            search,
            fiber_height,
        } => {
            let f = ctx.fiber(fiber)?;
            let mut cfg = SearchConfig::new(search.height)?.with_box(search.box_kind);
            if let Some(h) = fiber_height {
                cfg = cfg.with_fiber_height_bound(*h);
            }
            let report = cross_check(&f, &cfg)?;
            let exit_code = if report.is_bijection() {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            };
            return Ok(Output {
                stdout: ctx.render(&report),
                exit_code,
            });
        }
    };
    Ok(Output::ok(out))
}

/// Parses `args` (including the program name) and runs the command.
///
/// Returns the exit code together with the text for standard output and
/// standard error; nothing is printed.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (code, String::new(), text)
            } else {
                (code, text, String::new())
            };
        }
    };

    if let Err(msg) = ElkiesDataset::embedded().self_check() {
        return (
            EXIT_DOMAIN,
            String::new(),
            format!("embedded dataset self-check failed: {msg}\n"),
        );
    }

    match execute(&cli, &args) {
        Ok(out) => (out.exit_code, out.stdout, String::new()),
        Err(e) => (
            e.exit_code(),
            String::new(),
            format!("error: {}\n", e.message()),
        ),
    }
}

fn execute(cli: &Cli, args: &[OsString]) -> Result<Output, CliError> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        // Fails only if the pool was already built, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let (input_bytes, input) = match &cli.input {
        Some(path) => {
            let (bytes, doc) = read_input(path)?;
            (Some(bytes), Some(doc))
        }
        None => (None, None),
    };
    let ctx = Ctx {
        format: cli.format,
        input,
    };
    let out = dispatch(cli, &ctx)?;

    if let Some(path) = &cli.manifest {
        let arg_strings: Vec<String> = args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect();
        let manifest = RunManifest::new(
            command_name(&cli.command),
            &arg_strings,
            input_bytes.as_deref(),
            json!({ "args": arg_strings, "exit_code": out.exit_code }),
            out.stdout.as_bytes(),
        );
        let text = serde_json::to_string_pretty(&manifest).expect("serializable");
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    }
    Ok(out)
}

/// Entry point for the binary: runs and prints, returning the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, stdout, stderr) = run(args);
    let mut out = std::io::stdout().lock();
    if out
        .write_all(stdout.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return EXIT_IO;
    }
    if !stderr.is_empty() {
        let _ = std::io::stderr().write_all(stderr.as_bytes());
    }
    code
}
