//! `hsgeom`: distances, geodesics, group actions, Cayley transport, constants
//! and the randomized verification harness.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 invariant violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hsgeom_core::block2::{j_mat, require_in_group, rho_d, rho_h, u_mat, Block2, FormTag};
use hsgeom_core::cmat::{CMat, Tolerance};
use hsgeom_core::error::GeomError;
use hsgeom_core::geometry::{dist_model, dist_pos, geodesic_pos, ModelGeodesic, PosPoint, DRIFT_TOL};
use hsgeom_core::io::{
    block2_from_value, block2_to_value, cmat_from_value, cmat_to_value, parse_json, point_from_value,
    point_to_value, samples_to_csv, IoError,
};
use hsgeom_core::models::{cayley, cayley_inv, moebius, ModelPoint};
use hsgeom_core::par::Execution;
use hsgeom_core::verify::{run, Suite, VerifyConfig};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "hsgeom", version, about = "Operator half-space and disk geometry over M_n(C)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "D", alias = "d")]
    D,
    Pos,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tag {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "D", alias = "d")]
    D,
}

impl From<Tag> for FormTag {
    fn from(t: Tag) -> Self {
        match t {
            Tag::H => FormTag::H,
            Tag::D => FormTag::D,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    #[value(name = "HtoD")]
    HtoD,
    #[value(name = "DtoH")]
    DtoH,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstName {
    #[value(name = "rhoH")]
    RhoH,
    #[value(name = "rhoD")]
    RhoD,
    #[value(name = "J")]
    J,
    #[value(name = "U")]
    U,
}

#[derive(Subcommand)]
enum Cmd {
    /// Geodesic distance between two points.
    Dist {
        #[arg(long, value_enum)]
        model: Model,
        a: PathBuf,
        b: PathBuf,
        /// Structural tolerance for input validation.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Samples of the geodesic from `a` to `b` at t = j / steps.
    Geodesic {
        #[arg(long, value_enum)]
        model: Model,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Moebius action of a group element on a point.
    Act {
        #[arg(long, value_enum)]
        tag: Tag,
        g: PathBuf,
        p: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Cayley transform between the half-space and the disk.
    Cayley {
        #[arg(long, value_enum)]
        dir: Direction,
        p: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print one of the constant block matrices.
    Const {
        #[arg(long, value_enum)]
        name: ConstName,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Seeded randomized checks of the geometric invariants.
    Verify {
        /// `all` or a comma-separated list of suites.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replaces every per-check limit.
        #[arg(long)]
        tol: Option<f64>,
        /// Run trials on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Verify,
    Parse(String),
    Invariant(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Parse(m) => Failure::Parse(m),
            IoError::Invariant(g) => Failure::Invariant(g.to_string()),
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::InvalidTolerance(m) => Failure::Parse(format!("invalid tolerance: {m}")),
            other => Failure::Invariant(other.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn tolerance(tol: Option<f64>) -> Result<Tolerance, Failure> {
    match tol {
        None => Ok(Tolerance::default()),
        Some(t) => Ok(Tolerance::new(t, Tolerance::default().eps_pos)?),
    }
}

fn read_point(path: &Path, tag: FormTag, tol: &Tolerance) -> Result<ModelPoint, Failure> {
    Ok(point_from_value(&read_json(path)?, Some(tag), tol)?)
}

fn read_pos(path: &Path, tol: &Tolerance) -> Result<PosPoint, Failure> {
    let m = cmat_from_value(&read_json(path)?)?;
    Ok(PosPoint::with_tol(m, tol)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn model_tag(m: Model) -> Option<FormTag> {
    match m {
        Model::H => Some(FormTag::H),
        Model::D => Some(FormTag::D),
        Model::Pos => None,
    }
}

fn cmd_dist(model: Model, a: &Path, b: &Path, tol: Option<f64>) -> CliResult {
    let tol = tolerance(tol)?;
    let d = match model_tag(model) {
        Some(tag) => dist_model(&read_point(a, tag, &tol)?, &read_point(b, tag, &tol)?)?,
        None => dist_pos(&read_pos(a, &tol)?, &read_pos(b, &tol)?)?,
    };
    println!("{d:.15}");
    Ok(())
}

fn cmd_geodesic(model: Model, a: &Path, b: &Path, steps: u32, format: Format, tol: Option<f64>) -> CliResult {
    if steps == 0 {
        return Err(Failure::Parse("--steps must be at least 1".into()));
    }
    let tol = tolerance(tol)?;
    let ts: Vec<f64> = (0..=steps).map(|j| f64::from(j) / f64::from(steps)).collect();
    let mut rows: Vec<(f64, CMat, Value)> = Vec::with_capacity(ts.len());
    match model_tag(model) {
        Some(tag) => {
            let p = read_point(a, tag, &tol)?;
            let q = read_point(b, tag, &tol)?;
            let geo = ModelGeodesic::new(&p, &q)?;
            for (j, &t) in ts.iter().enumerate() {
                let point = if j == 0 {
                    p.clone()
                } else if j == ts.len() - 1 {
                    q.clone()
                } else {
                    let (point, diag) = geo.sample(t)?;
                    if !diag.passes(DRIFT_TOL, &Tolerance::default()) {
                        eprintln!(
                            "warning: reflection drift at t = {t}: eps^2 residual {:.3e}, hermitian residual {:.3e}",
                            diag.square_residual, diag.hermitian_residual
                        );
                    }
                    point
                };
                let mut v = point_to_value(&point);
                v["t"] = Value::from(t);
                rows.push((t, point.matrix().clone(), v));
            }
        }
        None => {
            let p = read_pos(a, &tol)?;
            let q = read_pos(b, &tol)?;
            for (j, &t) in ts.iter().enumerate() {
                let m = if j == 0 {
                    p.matrix().clone()
                } else if j == ts.len() - 1 {
                    q.matrix().clone()
                } else {
                    geodesic_pos(&p, &q, t)?.into_matrix()
                };
                let mut v = cmat_to_value(&m);
                v["t"] = Value::from(t);
                rows.push((t, m, v));
            }
        }
    }
    match format {
        Format::Json => print_json(&Value::Array(rows.into_iter().map(|(_, _, v)| v).collect())),
        Format::Csv => {
            let samples: Vec<(f64, CMat)> = rows.into_iter().map(|(t, m, _)| (t, m)).collect();
            print!("{}", samples_to_csv(&samples));
        }
    }
    Ok(())
}

fn cmd_act(tag: FormTag, g: &Path, p: &Path, tol: Option<f64>) -> CliResult {
    let tol = tolerance(tol)?;
    let g = block2_from_value(&read_json(g)?)?;
    require_in_group(tag, &g, &tol)?;
    let p = read_point(p, tag, &tol)?;
    if g.n() != p.n() {
        return Err(Failure::Invariant(format!("dimension mismatch: group element has n = {}, point has n = {}", g.n(), p.n())));
    }
    print_json(&point_to_value(&moebius(tag, &g, &p, &tol)?));
    Ok(())
}

fn cmd_cayley(dir: Direction, p: &Path, tol: Option<f64>) -> CliResult {
    let tol = tolerance(tol)?;
    let out = match dir {
        Direction::HtoD => match read_point(p, FormTag::H, &tol)? {
            ModelPoint::H(h) => ModelPoint::D(cayley(&h)?),
            ModelPoint::D(_) => unreachable!("read_point enforces the model"),
        },
        Direction::DtoH => match read_point(p, FormTag::D, &tol)? {
            ModelPoint::D(z) => ModelPoint::H(cayley_inv(&z)?),
            ModelPoint::H(_) => unreachable!("read_point enforces the model"),
        },
    };
    print_json(&point_to_value(&out));
    Ok(())
}

fn cmd_const(name: ConstName, n: usize) -> CliResult {
    if n == 0 {
        return Err(Failure::Parse("--n must be at least 1".into()));
    }
    let m: Block2 = match name {
        ConstName::RhoH => rho_h(n),
        ConstName::RhoD => rho_d(n),
        ConstName::J => j_mat(n),
        ConstName::U => u_mat(n),
    };
    print_json(&block2_to_value(&m));
    Ok(())
}

fn cmd_verify(suite: &str, n: usize, trials: u64, seed: u64, tol: Option<f64>, sequential: bool) -> CliResult {
    let suites = Suite::parse_list(suite).map_err(Failure::Parse)?;
    let mut cfg = VerifyConfig::new(n, trials, seed).map_err(|e| Failure::Parse(e.to_string()))?;
    if let Some(t) = tol {
        cfg = cfg.with_tol(t).map_err(|e| Failure::Parse(e.to_string()))?;
    }
    if sequential {
        cfg = cfg.with_exec(Execution::Sequential);
    }
    let report = run(&suites, &cfg);
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Dist { model, a, b, tol } => cmd_dist(model, &a, &b, tol),
        Cmd::Geodesic { model, a, b, steps, format, tol } => cmd_geodesic(model, &a, &b, steps, format, tol),
        Cmd::Act { tag, g, p, tol } => cmd_act(tag.into(), &g, &p, tol),
        Cmd::Cayley { dir, p, tol } => cmd_cayley(dir, &p, tol),
        Cmd::Const { name, n } => cmd_const(name, n),
        Cmd::Verify { suite, n, trials, seed, tol, sequential } => {
            cmd_verify(&suite, n, trials, seed, tol, sequential)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("invariant violation: {m}");
            ExitCode::from(3)
        }
    }
}
