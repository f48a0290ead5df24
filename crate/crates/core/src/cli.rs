//! Command-line front end.
//!
//! Problems are read from JSON, interpolants and reports are written as
//! JSON, grids as CSV. Every float is printed with 17 significant digits.
//!
//! Exit codes: 0 success, 1 invalid input, 2 infeasible, 3 not positive
//! real (`check-pr` only).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::basis::{build_basis, normalize_data, InterpolationData, NodeBasis};
use crate::error::Error;
use crate::families::{
    default_coeffs_with, delta, from_real_params, region_scan, to_real_params, CellStatus,
    DenomCoeffs, Family, Slice, Window,
};
use crate::interp::{
    hat_p_fn, p_fn, r_min_with, solve, Attained, Direction, Interpolant, RMode, SolveOptions,
};
use crate::poly::{Complex, RationalFn, RealPoly};
use crate::prtest::{is_positive_real_with, PrReport, Tolerances};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_NOT_PR: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pr-interp",
    version,
    about = "Positive real interpolation in the left half-plane"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build certified interpolants for every requested family and direction.
    Solve {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        family: Option<FamilySel>,
        #[arg(long, value_enum)]
        direction: Option<DirectionSel>,
        /// `auto` or a fixed value.
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long)]
        margin: Option<f64>,
        #[arg(long)]
        allow_marginal: bool,
    },
    /// Positive realness of num/den (ascending coefficients).
    CheckPr {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        num: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        den: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// PR threshold for one family and direction.
    Rmin {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "zero")]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "direct")]
        direction: DirectionArg,
        /// Coefficient point in the real parametrization.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
    },
    /// Admissibility over a two-coordinate slice of the coefficient space.
    Region {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "one")]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        x_index: usize,
        #[arg(long, default_value_t = 1)]
        y_index: usize,
        /// Values of the fixed coordinates (defaults to the problem's or the
        /// default coefficients).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        base: Option<Vec<f64>>,
        /// `x_min,x_max,y_min,y_max`.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        window: Vec<f64>,
        /// `nx,ny`.
        #[arg(long, value_delimiter = ',', default_values_t = [41usize, 41])]
        resolution: Vec<usize>,
    },
    /// Samples f(iw) on a frequency grid.
    Eval {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        num: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        den: Vec<f64>,
        /// Explicit frequencies; overrides the range.
        #[arg(long, value_delimiter = ',')]
        omega: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 10.0)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Logarithmic spacing (requires `from > 0`).
        #[arg(long)]
        log: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Relative SPR shift.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilySel {
    Zero,
    One,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DirectionSel {
    Direct,
    Reciprocal,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    Zero,
    One,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DirectionArg {
    Direct,
    Reciprocal,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Zero => Family::Zero,
            FamilyArg::One => Family::One,
        }
    }
}

/// A complex number as `{re, im}` or a bare real.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexIn {
    Parts {
        re: f64,
        #[serde(default)]
        im: f64,
    },
    Real(f64),
}

impl From<ComplexIn> for Complex {
    fn from(z: ComplexIn) -> Complex {
        match z {
            ComplexIn::Parts { re, im } => Complex::new(re, im),
            ComplexIn::Real(re) => Complex::new(re, 0.0),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffPoints {
    pub zero: Option<Vec<f64>>,
    pub one: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub cluster: Option<f64>,
    pub spr_epsilon: Option<f64>,
    pub eval_rel: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RSpec {
    Value(f64),
    Word(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub nodes: Vec<ComplexIn>,
    pub targets: Vec<ComplexIn>,
    pub family: Option<String>,
    pub direction: Option<String>,
    #[serde(default)]
    pub coeffs: CoeffPoints,
    pub r: Option<RSpec>,
    pub margin: Option<f64>,
    #[serde(default)]
    pub allow_marginal: bool,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
}

/// A float printed as `{:.16e}`; non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(fmt_num(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().map(|&x| Num(x)).collect()
}

#[derive(Serialize)]
struct ComplexOut {
    re: Num,
    im: Num,
}

#[derive(Serialize)]
struct TolerancesOut {
    cluster: Num,
    spr_epsilon: Num,
    eval_rel: Num,
}

impl From<&Tolerances> for TolerancesOut {
    fn from(t: &Tolerances) -> Self {
        TolerancesOut {
            cluster: Num(t.cluster),
            spr_epsilon: Num(t.spr_epsilon),
            eval_rel: Num(t.eval_rel),
        }
    }
}

#[derive(Serialize)]
struct AttainedOut {
    kind: &'static str,
    omega: Option<Num>,
}

impl From<Attained> for AttainedOut {
    fn from(a: Attained) -> Self {
        match a {
            Attained::Frequency(w) => AttainedOut {
                kind: "frequency",
                omega: Some(Num(w)),
            },
            Attained::ZeroClamp => AttainedOut {
                kind: "zero_clamp",
                omega: None,
            },
            Attained::InfinityLimit => AttainedOut {
                kind: "infinity_limit",
                omega: None,
            },
        }
    }
}

#[derive(Serialize)]
struct AxisPoleOut {
    omega: Num,
    residue: Num,
}

#[derive(Serialize)]
struct ReportOut {
    is_pr: bool,
    is_spr: bool,
    hurwitz: bool,
    relative_degree: i64,
    min_axis_value: Num,
    witness_omega: Option<Num>,
    axis_poles: Vec<AxisPoleOut>,
    tolerance: Num,
    reason: Option<String>,
}

impl From<&PrReport> for ReportOut {
    fn from(r: &PrReport) -> Self {
        ReportOut {
            is_pr: r.is_pr,
            is_spr: r.is_spr,
            hurwitz: r.hurwitz,
            relative_degree: r.relative_degree,
            min_axis_value: Num(r.min_axis_value),
            witness_omega: r.witness_omega.map(Num),
            axis_poles: r
                .axis_poles
                .iter()
                .map(|p| AxisPoleOut {
                    omega: Num(p.omega),
                    residue: Num(p.residue),
                })
                .collect(),
            tolerance: Num(r.tolerance),
            reason: r.reason.clone(),
        }
    }
}

#[derive(Serialize)]
struct EntryOut {
    family: Family,
    direction: Direction,
    coeffs: Vec<Num>,
    numerator: Vec<Num>,
    denominator: Vec<Num>,
    degree: usize,
    r: Num,
    r_min: Option<Num>,
    axis_sup: Option<Num>,
    attained_at: Option<AttainedOut>,
    is_pr: bool,
    is_spr: bool,
    residuals: Vec<Num>,
    max_residual: Num,
    report: ReportOut,
}

#[derive(Serialize)]
struct SkippedOut {
    family: Family,
    direction: Direction,
    reason: String,
}

#[derive(Serialize)]
struct ResultFile {
    conjugates_completed: bool,
    nodes: Vec<ComplexOut>,
    targets: Vec<ComplexOut>,
    tolerances: TolerancesOut,
    margin: Num,
    entries: Vec<EntryOut>,
    skipped: Vec<SkippedOut>,
}

#[derive(Serialize)]
struct RMinOut {
    family: Family,
    direction: Direction,
    coeffs: Vec<Num>,
    r_min: Num,
    axis_sup: Num,
    attained_at: AttainedOut,
    b_positive_certified: bool,
}

/// Failure of a subcommand with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INFEASIBLE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AdmissibleNotFound { .. }
            | Error::InadmissibleCoeffs { .. }
            | Error::DeltaNotSpr
            | Error::UnboundedThreshold
            | Error::ThresholdVerification(_)
            | Error::Tolerance { .. } => EXIT_INFEASIBLE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<u8, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cmd: Command) -> CliResult {
    match cmd {
        Command::Solve {
            problem,
            common,
            family,
            direction,
            r,
            margin,
            allow_marginal,
        } => cmd_solve(
            &problem,
            &common,
            family,
            direction,
            r,
            margin,
            allow_marginal,
        ),
        Command::CheckPr { num, den, common } => cmd_check_pr(num, den, &common),
        Command::Rmin {
            problem,
            common,
            family,
            direction,
            point,
        } => cmd_rmin(&problem, &common, family.into(), direction, point),
        Command::Region {
            problem,
            common,
            family,
            x_index,
            y_index,
            base,
            window,
            resolution,
        } => cmd_region(
            &problem,
            &common,
            family.into(),
            x_index,
            y_index,
            base,
            &window,
            &resolution,
        ),
        Command::Eval {
            num,
            den,
            omega,
            from,
            to,
            points,
            log,
            out,
        } => cmd_eval(num, den, omega, from, to, points, log, out.as_deref()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::invalid(format!("cannot write output: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::invalid(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("invalid problem file: {e}")))
}

fn tolerances(problem: Option<&ProblemFile>, common: &Common) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    if let Some(p) = problem {
        let o = &p.tolerances;
        tol.cluster = o.cluster.unwrap_or(tol.cluster);
        tol.spr_epsilon = o.spr_epsilon.unwrap_or(tol.spr_epsilon);
        tol.eval_rel = o.eval_rel.unwrap_or(tol.eval_rel);
    }
    if let Some(t) = common.tol {
        tol.spr_epsilon = t;
    }
    for (name, v) in [
        ("cluster", tol.cluster),
        ("spr_epsilon", tol.spr_epsilon),
        ("eval_rel", tol.eval_rel),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Failure::invalid(format!(
                "tolerance {name} must be positive, got {v}"
            )));
        }
    }
    Ok(tol)
}

fn problem_data(p: &ProblemFile) -> Result<InterpolationData, Failure> {
    let nodes: Vec<Complex> = p.nodes.iter().map(|&z| z.into()).collect();
    let targets: Vec<Complex> = p.targets.iter().map(|&z| z.into()).collect();
    Ok(normalize_data(&nodes, &targets)?)
}

fn parse_family(s: &str) -> Result<FamilySel, Failure> {
    FamilySel::from_str(s, true).map_err(|_| Failure::invalid(format!("unknown family {s:?}")))
}

fn parse_direction(s: &str) -> Result<DirectionSel, Failure> {
    DirectionSel::from_str(s, true)
        .map_err(|_| Failure::invalid(format!("unknown direction {s:?}")))
}

fn parse_r(spec: &RSpec) -> Result<RMode, Failure> {
    match spec {
        RSpec::Value(v) if v.is_finite() => Ok(RMode::Fixed(*v)),
        RSpec::Word(w) if w == "auto" => Ok(RMode::Auto),
        RSpec::Word(w) => match w.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(RMode::Fixed(v)),
            _ => Err(Failure::invalid(format!(
                "r must be \"auto\" or a number, got {w:?}"
            ))),
        },
        RSpec::Value(v) => Err(Failure::invalid(format!("r must be finite, got {v}"))),
    }
}

fn point_coeffs(
    basis: &NodeBasis,
    family: Family,
    point: Option<&Vec<f64>>,
) -> Result<Option<DenomCoeffs>, Failure> {
    match point {
        None => Ok(None),
        Some(p) => {
            let dc = from_real_params(basis, family, p)?;
            dc.validate(basis)?;
            Ok(Some(dc))
        }
    }
}

fn entry_out(basis: &NodeBasis, e: &Interpolant) -> EntryOut {
    EntryOut {
        family: e.family,
        direction: e.direction,
        coeffs: nums(&to_real_params(basis, &e.dc).unwrap_or_default()),
        numerator: nums(e.f.num().coeffs()),
        denominator: nums(e.f.den().coeffs()),
        degree: e.degree(),
        r: Num(e.r),
        r_min: e.rmin.map(|m| Num(m.r_min)),
        axis_sup: e.rmin.map(|m| Num(m.axis_sup)),
        attained_at: e.rmin.map(|m| m.attained_at.into()),
        is_pr: e.pr_report.is_pr,
        is_spr: e.pr_report.is_spr,
        residuals: nums(&e.residuals),
        max_residual: Num(e.max_residual()),
        report: (&e.pr_report).into(),
    }
}

fn complex_out(v: &[Complex]) -> Vec<ComplexOut> {
    v.iter()
        .map(|z| ComplexOut {
            re: Num(z.re),
            im: Num(z.im),
        })
        .collect()
}

fn cmd_solve(
    path: &Path,
    common: &Common,
    family: Option<FamilySel>,
    direction: Option<DirectionSel>,
    r: Option<String>,
    margin: Option<f64>,
    allow_marginal: bool,
) -> CliResult {
    let problem = read_problem(path)?;
    let tol = tolerances(Some(&problem), common)?;
    let data = problem_data(&problem)?;
    let basis = build_basis(&data);

    let family = match (family, &problem.family) {
        (Some(f), _) => f,
        (None, Some(s)) => parse_family(s)?,
        (None, None) => FamilySel::All,
    };
    let direction = match (direction, &problem.direction) {
        (Some(d), _) => d,
        (None, Some(s)) => parse_direction(s)?,
        (None, None) => DirectionSel::Both,
    };
    let r = match (r, &problem.r) {
        (Some(s), _) => parse_r(&RSpec::Word(s))?,
        (None, Some(spec)) => parse_r(spec)?,
        (None, None) => RMode::Auto,
    };
    let margin = margin.or(problem.margin).unwrap_or(1e-6);
    if !(margin.is_finite() && margin >= 0.0) {
        return Err(Failure::invalid(format!(
            "margin must be finite and >= 0, got {margin}"
        )));
    }

    let opts = SolveOptions {
        families: match family {
            FamilySel::Zero => vec![Family::Zero],
            FamilySel::One => vec![Family::One],
            FamilySel::All => vec![Family::Zero, Family::One],
        },
        directions: match direction {
            DirectionSel::Direct => vec![Direction::Direct],
            DirectionSel::Reciprocal => vec![Direction::Reciprocal],
            DirectionSel::Both => vec![Direction::Direct, Direction::Reciprocal],
        },
        zero_coeffs: point_coeffs(&basis, Family::Zero, problem.coeffs.zero.as_ref())?,
        one_coeffs: point_coeffs(&basis, Family::One, problem.coeffs.one.as_ref())?,
        r,
        margin,
        allow_marginal: allow_marginal || problem.allow_marginal,
        tol,
    };
    let outcome = solve(&data, &opts)?;
    let result = ResultFile {
        conjugates_completed: data.completed(),
        nodes: complex_out(data.nodes()),
        targets: complex_out(data.targets()),
        tolerances: (&tol).into(),
        margin: Num(margin),
        entries: outcome
            .entries
            .iter()
            .map(|e| entry_out(&basis, e))
            .collect(),
        skipped: outcome
            .skipped
            .iter()
            .map(|s| SkippedOut {
                family: s.family,
                direction: s.direction,
                reason: s.reason.clone(),
            })
            .collect(),
    };
    emit(common.out.as_deref(), &to_json(&result)?)?;
    if outcome.entries.is_empty() {
        let reasons: Vec<String> = outcome.skipped.iter().map(|s| s.reason.clone()).collect();
        return Err(Failure::infeasible(format!(
            "no branch succeeded: {}",
            reasons.join("; ")
        )));
    }
    Ok(EXIT_OK)
}

fn rational(num: Vec<f64>, den: Vec<f64>) -> Result<RationalFn, Failure> {
    Ok(RationalFn::new(RealPoly::new(num), RealPoly::new(den))?)
}

fn cmd_check_pr(num: Vec<f64>, den: Vec<f64>, common: &Common) -> CliResult {
    let tol = tolerances(None, common)?;
    let f = rational(num, den)?;
    let report = is_positive_real_with(&f, &tol)?;
    emit(common.out.as_deref(), &to_json(&ReportOut::from(&report))?)?;
    Ok(if report.is_pr { EXIT_OK } else { EXIT_NOT_PR })
}

fn resolve_coeffs(
    problem: &ProblemFile,
    basis: &NodeBasis,
    family: Family,
    point: Option<Vec<f64>>,
    tol: &Tolerances,
) -> Result<DenomCoeffs, Failure> {
    let from_file = match family {
        Family::Zero => problem.coeffs.zero.clone(),
        Family::One => problem.coeffs.one.clone(),
    };
    match point_coeffs(basis, family, point.or(from_file).as_ref())? {
        Some(dc) => Ok(dc),
        None => Ok(default_coeffs_with(basis, family, tol)?),
    }
}

fn cmd_rmin(
    path: &Path,
    common: &Common,
    family: Family,
    direction: DirectionArg,
    point: Option<Vec<f64>>,
) -> CliResult {
    let problem = read_problem(path)?;
    let tol = tolerances(Some(&problem), common)?;
    let data = problem_data(&problem)?;
    let basis = build_basis(&data);
    let dc = resolve_coeffs(&problem, &basis, family, point, &tol)?;
    let (p, direction) = match direction {
        DirectionArg::Direct => (p_fn(&basis, &data, &dc)?, Direction::Direct),
        DirectionArg::Reciprocal => (hat_p_fn(&basis, &data, &dc)?, Direction::Reciprocal),
    };
    let res = r_min_with(&p, &delta(&basis, &dc)?, &tol)?;
    let out = RMinOut {
        family,
        direction,
        coeffs: nums(&to_real_params(&basis, &dc)?),
        r_min: Num(res.r_min),
        axis_sup: Num(res.axis_sup),
        attained_at: res.attained_at.into(),
        b_positive_certified: res.b_positive_certified,
    };
    emit(common.out.as_deref(), &to_json(&out)?)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_region(
    path: &Path,
    common: &Common,
    family: Family,
    x_index: usize,
    y_index: usize,
    base: Option<Vec<f64>>,
    window: &[f64],
    resolution: &[usize],
) -> CliResult {
    if window.len() != 4 || resolution.len() != 2 {
        return Err(Failure::invalid(
            "--window takes 4 values and --resolution takes 2",
        ));
    }
    let problem = read_problem(path)?;
    let tol = tolerances(Some(&problem), common)?;
    let data = problem_data(&problem)?;
    let basis = build_basis(&data);
    let base = match base {
        Some(b) => b,
        None => {
            let dc = resolve_coeffs(&problem, &basis, family, None, &tol)?;
            to_real_params(&basis, &dc)?
        }
    };
    let slice = Slice {
        x_index,
        y_index,
        base,
    };
    let window = Window {
        x_min: window[0],
        x_max: window[1],
        y_min: window[2],
        y_max: window[3],
    };
    let sample = region_scan(
        &basis,
        family,
        &slice,
        window,
        (resolution[0], resolution[1]),
        &tol,
    )?;

    let eps = fmt_num(tol.spr_epsilon);
    let mut csv = String::from("kind,x,y,admissible,status,spr_epsilon\n");
    for cell in &sample.cells {
        let status = match &cell.status {
            CellStatus::Admissible => "admissible",
            CellStatus::Inadmissible => "inadmissible",
            CellStatus::Borderline => "borderline",
            CellStatus::Invalid(_) => "invalid",
        };
        csv.push_str(&format!(
            "cell,{},{},{},{status},{eps}\n",
            fmt_num(cell.x),
            fmt_num(cell.y),
            u8::from(cell.admissible())
        ));
    }
    for b in &sample.boundaries {
        let side = if b.rising { "rising" } else { "falling" };
        csv.push_str(&format!(
            "boundary,{},{},,{side},{eps}\n",
            fmt_num(b.x),
            fmt_num(b.y)
        ));
    }
    emit(common.out.as_deref(), &csv)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    num: Vec<f64>,
    den: Vec<f64>,
    omega: Option<Vec<f64>>,
    from: f64,
    to: f64,
    points: usize,
    log: bool,
    out: Option<&Path>,
) -> CliResult {
    let f = rational(num, den)?;
    let grid = match omega {
        Some(w) => w,
        None => {
            if points < 1 || !(from.is_finite() && to.is_finite()) || from > to {
                return Err(Failure::invalid(
                    "need points >= 1 and a finite range with from <= to",
                ));
            }
            if log && from <= 0.0 {
                return Err(Failure::invalid("logarithmic grid needs from > 0"));
            }
            let step = |k: usize| {
                if points == 1 {
                    0.0
                } else {
                    k as f64 / (points - 1) as f64
                }
            };
            (0..points)
                .map(|k| {
                    if log {
                        (from.ln() + (to.ln() - from.ln()) * step(k)).exp()
                    } else {
                        from + (to - from) * step(k)
                    }
                })
                .collect()
        }
    };
    let mut csv = String::from("omega,re,im\n");
    for w in grid {
        let v = f.eval(Complex::new(0.0, w));
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_num(w),
            fmt_num(v.re),
            fmt_num(v.im)
        ));
    }
    emit(out, &csv)?;
    Ok(EXIT_OK)
}
