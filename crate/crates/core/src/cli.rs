//! The `carleson` command-line frontend.
//!
//! Exit codes: 0 when the command succeeds and any checked inclusion holds,
//! 1 when a checked inclusion fails, 2 for usage errors, 3 when the analytic
//! verdict and the sampling oracle disagree.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::analysis::{
    self, analytic_verdict, AdmissibleInterval, Inclusion, IntervalKind, DEFAULT_TOL, SQRT3_OVER_2,
};
use crate::geometry::{
    in_set, in_window, prop1_witness, BoundaryPoint, CarlesonSet, CarlesonWindow, Height,
    PlanePoint,
};
use crate::oracle::{check_inclusion, InclusionVerdict, Region, SamplingPlan};
use crate::render::{render_figure, FigureKind, FigureSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "carleson",
    version,
    about = "Inclusions between Carleson sets and Carleson windows"
)]
pub struct Cli {
    /// Emit one JSON document instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,

    /// Place the base point b at this angle (radians) instead of (1, 0).
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    b_angle: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// W(b, h/c) ⊂ S(b, h)
    I,
    /// S(b, h) ⊂ W(b, ch)
    Ii,
    /// both
    Iii,
}

impl Which {
    fn inclusion(self) -> Inclusion {
        match self {
            Which::I => Inclusion::WindowInSet,
            Which::Ii => Inclusion::SetInWindow,
            Which::Iii => Inclusion::Sandwich,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Which::I => "i",
            Which::Ii => "ii",
            Which::Iii => "iii",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, clap::Args)]
struct PlanArgs {
    #[arg(long, default_value_t = 400)]
    radial: usize,
    #[arg(long, default_value_t = 400)]
    angular: usize,
    #[arg(long, default_value_t = 1e-6)]
    margin: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl PlanArgs {
    fn plan(&self) -> SamplingPlan {
        SamplingPlan {
            radial_steps: self.radial,
            angular_steps: self.angular,
            margin: self.margin,
            random_samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissible constants c for one part of the inclusion calculus.
    Interval {
        #[arg(long)]
        h: f64,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Decide an inclusion for given h and c, optionally confirmed by sampling.
    Check {
        #[arg(long)]
        h: f64,
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Also run the sampling oracle.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Crossover height where the cubic and wedge lower bounds meet.
    H0 {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// CSV table of the lower bounds and the combined interval across h.
    Sweep {
        #[arg(long, default_value_t = 0.05)]
        h_min: f64,
        #[arg(long, default_value_t = 0.95)]
        h_max: f64,
        #[arg(long, default_value_t = 19)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// A point of S(b, h) outside W(b, h).
    Witness {
        #[arg(long)]
        h: f64,
    },
    /// Write an SVG figure.
    Render {
        #[arg(long, value_enum)]
        kind: FigureArg,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        c: Option<f64>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 600)]
        canvas: u32,
        #[arg(long)]
        no_labels: bool,
    },
}

/// Rounds to 12 significant digits.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Field {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Num(v) => fmt_num(*v),
            Field::Int(v) => v.to_string(),
            Field::Bool(v) => v.to_string(),
            Field::Text(v) => v.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(v) if v.is_finite() => Value::from(round_sig12(*v)),
            Field::Num(v) => Value::from(fmt_num(*v)),
            Field::Int(v) => Value::from(*v),
            Field::Bool(v) => Value::from(*v),
            Field::Text(v) => Value::from(v.as_str()),
        }
    }
}

fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        let r = round_sig12(v);
        if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
            format!("{r:e}")
        } else {
            r.to_string()
        }
    }
}

/// Flat key-value output of one command.
#[derive(Debug, Default)]
struct OutputRecord {
    fields: Vec<(&'static str, Field)>,
}

impl OutputRecord {
    fn new(command: &str) -> Self {
        let mut r = OutputRecord::default();
        r.text("command", command);
        r
    }

    fn num(&mut self, key: &'static str, v: f64) {
        self.fields.push((key, Field::Num(v)));
    }

    fn int(&mut self, key: &'static str, v: usize) {
        self.fields.push((key, Field::Int(v as u64)));
    }

    fn flag(&mut self, key: &'static str, v: bool) {
        self.fields.push((key, Field::Bool(v)));
    }

    fn text(&mut self, key: &'static str, v: &str) {
        self.fields.push((key, Field::Text(v.to_owned())));
    }

    fn interval(&mut self, iv: &AdmissibleInterval) {
        let kind = match iv.kind() {
            IntervalKind::WindowInSetRay => "ray",
            IntervalKind::SetInWindow | IntervalKind::Sandwich => "interval",
            IntervalKind::Empty => "empty",
        };
        self.text("kind", kind);
        if let (Some(lo), Some(hi)) = (iv.lower(), iv.upper()) {
            self.num("lower", lo);
            self.num("upper", hi);
        }
    }

    fn point(&mut self, kx: &'static str, ky: &'static str, p: PlanePoint) {
        self.num(kx, p.x());
        self.num(ky, p.y());
    }

    fn write(&self, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
        if json {
            let map: Map<String, Value> = self
                .fields
                .iter()
                .map(|(k, v)| ((*k).to_owned(), v.json()))
                .collect();
            writeln!(out, "{}", Value::Object(map))
        } else {
            for (k, v) in &self.fields {
                writeln!(out, "{k}={}", v.text())?;
            }
            Ok(())
        }
    }
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = std::result::Result<(Option<OutputRecord>, i32), Failure>;

fn height(h: f64) -> std::result::Result<Height, Failure> {
    Height::new(h).map_err(Failure::from)
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{}", rendered.ansi())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok((record, code)) => {
            if let Some(record) = record {
                if let Err(e) = record.write(cli.json, out) {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
            }
            code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let base = BoundaryPoint::from_angle(cli.b_angle)?;
    match &cli.command {
        Command::Interval { h, which, tol } => cmd_interval(*h, *which, *tol),
        Command::Check {
            h,
            c,
            which,
            tol,
            oracle,
            plan,
        } => cmd_check(*h, *c, *which, *tol, oracle.then(|| plan.plan()), base),
        Command::H0 { tol } => cmd_h0(*tol),
        Command::Sweep {
            h_min,
            h_max,
            steps,
            tol,
        } => {
            cmd_sweep(*h_min, *h_max, *steps, *tol, out)?;
            Ok((None, EXIT_OK))
        }
        Command::Witness { h } => cmd_witness(*h, base),
        Command::Render {
            kind,
            h,
            c,
            out: path,
            canvas,
            no_labels,
        } => {
            let kind = match kind {
                FigureArg::Fig1 => FigureKind::Fig1,
                FigureArg::Fig2 => FigureKind::Fig2,
                FigureArg::Fig3 => FigureKind::Fig3,
            };
            let spec = FigureSpec {
                kind,
                height: height(*h)?,
                c: *c,
                show_labels: !no_labels,
                canvas_px: *canvas,
                base,
            };
            let svg = render_figure(&spec)?;
            match path {
                Some(path) => {
                    std::fs::write(path, &svg)?;
                    let mut r = OutputRecord::new("render");
                    r.text("figure", &format!("{kind:?}").to_lowercase());
                    r.num("h", *h);
                    if let Some(c) = c {
                        r.num("c", *c);
                    }
                    r.text("out", &path.display().to_string());
                    r.int("bytes", svg.len());
                    Ok((Some(r), EXIT_OK))
                }
                None => {
                    out.write_all(svg.as_bytes())?;
                    Ok((None, EXIT_OK))
                }
            }
        }
    }
}

fn interval_for(which: Which, h: f64, tol: f64) -> crate::Result<AdmissibleInterval> {
    match which {
        Which::I => analysis::window_in_set_ray(h, tol),
        Which::Ii => analysis::set_in_window_interval(h),
        Which::Iii => analysis::sandwich_interval(h, tol),
    }
}

fn cmd_interval(h: f64, which: Which, tol: f64) -> CmdResult {
    height(h)?;
    let iv = interval_for(which, h, tol)?;
    let mut r = OutputRecord::new("interval");
    r.num("h", h);
    r.text("which", which.name());
    r.interval(&iv);
    Ok((Some(r), EXIT_OK))
}

const WINDOW_IN_SET_KEYS: [&str; 4] = [
    "window_in_set_oracle",
    "window_in_set_tested",
    "window_in_set_witness_x",
    "window_in_set_witness_y",
];

const SET_IN_WINDOW_KEYS: [&str; 4] = [
    "set_in_window_oracle",
    "set_in_window_tested",
    "set_in_window_witness_x",
    "set_in_window_witness_y",
];

fn oracle_record(r: &mut OutputRecord, keys: [&'static str; 4], v: &InclusionVerdict) {
    let [outcome, tested, wx, wy] = keys;
    r.text(outcome, if v.holds() { "verified" } else { "refuted" });
    r.int(tested, v.tested_points());
    if let Some(w) = v.witness() {
        r.point(wx, wy, w);
    }
}

fn cmd_check(
    h: f64,
    c: f64,
    which: Which,
    tol: f64,
    plan: Option<SamplingPlan>,
    base: BoundaryPoint,
) -> CmdResult {
    let height_h = height(h)?;
    let analytic = analytic_verdict(which.inclusion(), h, c)?;
    let iv = interval_for(which, h, tol)?;

    let mut r = OutputRecord::new("check");
    r.num("h", h);
    r.num("c", c);
    r.text("which", which.name());
    r.interval(&iv);
    r.flag("analytic", analytic);

    let Some(plan) = plan else {
        let code = if analytic { EXIT_OK } else { EXIT_REFUTED };
        return Ok((Some(r), code));
    };

    let set: Region = CarlesonSet::new(base, height_h).into();
    let mut holds = true;
    let mut skipped = false;
    if matches!(which, Which::I | Which::Iii) {
        let small: Region = CarlesonWindow::new(base, height(h / c)?).into();
        let v = check_inclusion(&small, &set, &plan)?;
        oracle_record(&mut r, WINDOW_IN_SET_KEYS, &v);
        holds &= v.holds();
    }
    if matches!(which, Which::Ii | Which::Iii) {
        match Height::new(h * c) {
            Ok(big) => {
                let big: Region = CarlesonWindow::new(base, big).into();
                let v = check_inclusion(&set, &big, &plan)?;
                oracle_record(&mut r, SET_IN_WINDOW_KEYS, &v);
                holds &= v.holds();
            }
            Err(_) => {
                // W(b, ch) does not exist for ch >= 1
                r.text("set_in_window_oracle", "skipped");
                skipped = true;
            }
        }
    }

    if skipped {
        r.text("oracle", "skipped");
        let code = if analytic { EXIT_OK } else { EXIT_REFUTED };
        return Ok((Some(r), code));
    }
    r.flag("oracle", holds);
    r.flag("agree", holds == analytic);
    let code = match (analytic, holds) {
        (a, o) if a != o => EXIT_DISAGREE,
        (true, _) => EXIT_OK,
        (false, _) => EXIT_REFUTED,
    };
    Ok((Some(r), code))
}

fn cmd_h0(tol: f64) -> CmdResult {
    let root = analysis::solve_crossover(tol)?;
    let mut r = OutputRecord::new("h0");
    r.num("value", root.value);
    r.num("residual", root.residual);
    r.int("iterations", root.iterations);
    Ok((Some(r), EXIT_OK))
}

/// Writes the sweep table as CSV.
fn cmd_sweep(
    h_min: f64,
    h_max: f64,
    steps: usize,
    tol: f64,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    height(h_min)?;
    height(h_max)?;
    if h_min > h_max {
        return Err(Failure(format!("h-min {h_min} exceeds h-max {h_max}")));
    }
    if steps == 0 {
        return Err(Failure("steps must be at least 1".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["h", "f_inv", "k", "g", "lower_iii", "upper_iii", "empty"])?;
    for i in 0..steps {
        let h = if steps == 1 {
            h_min
        } else {
            h_min + (h_max - h_min) * i as f64 / (steps - 1) as f64
        };
        let f_inv = analysis::corner_cubic_inverse(h, tol)?.value;
        let k = analysis::wedge_lower_bound(h)?;
        let g = if h < SQRT3_OVER_2 {
            fmt_num(analysis::combined_lower_bound(h, tol)?)
        } else {
            String::new()
        };
        let iv = analysis::sandwich_interval(h, tol)?;
        let (lo, hi) = match (iv.lower(), iv.upper()) {
            (Some(lo), Some(hi)) => (fmt_num(lo), fmt_num(hi)),
            _ => (String::new(), String::new()),
        };
        let empty = if iv.is_empty() { "1" } else { "0" };
        w.write_record([
            fmt_num(h),
            fmt_num(f_inv),
            fmt_num(k),
            g,
            lo,
            hi,
            empty.into(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_witness(h: f64, base: BoundaryPoint) -> CmdResult {
    let height_h = height(h)?;
    let w = prop1_witness(base, height_h);
    let mut r = OutputRecord::new("witness");
    r.num("h", h);
    r.point("x", "y", w);
    r.flag("in_set", in_set(&CarlesonSet::new(base, height_h), w));
    r.flag(
        "in_window",
        in_window(&CarlesonWindow::new(base, height_h), w),
    );
    Ok((Some(r), EXIT_OK))
}
