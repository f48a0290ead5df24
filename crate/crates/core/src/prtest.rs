//! Positive realness and strict positive realness of real rational functions.
//!
//! `f` is positive real when `Re f(s) >= 0` on the open right half-plane.
//! Off its poles `Re f` is harmonic, so the condition is decided on the
//! boundary: no poles with positive real part, simple poles on the imaginary
//! axis (and at infinity) with positive residues, and `Re f(iw) >= 0`. The
//! last condition is `E(w^2) >= 0` for the polynomial returned by
//! [`real_part_numerator`], since `Re f(iw) = E(w^2) / |den(iw)|^2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{
    nonneg_with_magnitude, positive_real_roots, Complex, RationalFn, RealPoly, CLUSTER_TOL,
    EVAL_REL_TOL,
};

/// Decision tolerances. All of them are relative to a problem scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Root clustering and on-axis classification, relative to
    /// `1 + max |root|`.
    pub cluster: f64,
    /// Shift used as the decidable proxy for "some epsilon > 0" in the SPR
    /// definition, relative to `1 + max |pole or zero|`.
    pub spr_epsilon: f64,
    /// Relative threshold below which a computed polynomial value counts as
    /// negative.
    pub eval_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cluster: CLUSTER_TOL,
            spr_epsilon: 1e-6,
            eval_rel: EVAL_REL_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxisPole {
    pub omega: f64,
    pub residue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrReport {
    pub is_pr: bool,
    pub is_spr: bool,
    /// All denominator roots strictly inside the left half-plane.
    pub hurwitz: bool,
    /// Simple poles on the imaginary axis, `omega >= 0`.
    pub axis_poles: Vec<AxisPole>,
    pub relative_degree: i64,
    /// Infimum of `Re f(iw)` over finite `w` away from axis poles.
    pub min_axis_value: f64,
    /// Frequency of the detected violation, or of the minimum when PR.
    pub witness_omega: Option<f64>,
    /// The SPR shift epsilon the verdict was decided under.
    pub tolerance: f64,
    /// First failed condition when not PR.
    pub reason: Option<String>,
}

/// `E(u)` with `Re[num(iw) * conj(den(iw))] = E(w^2)`.
pub fn real_part_numerator(f: &RationalFn) -> RealPoly {
    cross_real_part(f.num(), f.den())
}

/// `Re[a(iw) * conj(b(iw))]` as a polynomial in `u = w^2`.
pub(crate) fn cross_real_part(a: &RealPoly, b: &RealPoly) -> RealPoly {
    let (ae, ao) = a.axis_parts();
    let (be, bo) = b.axis_parts();
    let u = RealPoly::identity();
    &(&ae * &be) + &(&u * &(&ao * &bo))
}

pub fn is_positive_real(f: &RationalFn) -> Result<PrReport> {
    is_positive_real_with(f, &Tolerances::default())
}

/// PR verdict; `is_spr` is filled in as well, with an undecidable SPR case
/// reported as not SPR.
pub fn is_positive_real_with(f: &RationalFn, tol: &Tolerances) -> Result<PrReport> {
    match is_strictly_positive_real_with(f, tol) {
        Ok(report) => Ok(report),
        Err(Error::Tolerance { epsilon }) => {
            let mut report = pr_core(f, tol)?;
            report.tolerance = epsilon;
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

pub fn is_strictly_positive_real(f: &RationalFn) -> Result<PrReport> {
    is_strictly_positive_real_with(f, &Tolerances::default())
}

/// SPR verdict: `f(s - eps)` must be PR, and independently the denominator
/// must be Hurwitz with margin `eps`, `E(u) > 0` on `u >= 0` and the
/// high-frequency limit of `Re f` must be strictly positive (for relative
/// degree -1, `w^2 Re f(iw)` must tend to a positive limit). The two tests
/// disagreeing means the function sits inside the `eps` band.
pub fn is_strictly_positive_real_with(f: &RationalFn, tol: &Tolerances) -> Result<PrReport> {
    let mut report = pr_core(f, tol)?;
    let red = f.reduced();
    let eps = tol.spr_epsilon * function_scale(&red);
    report.tolerance = eps;
    if !report.is_pr || red.num().is_zero() {
        return Ok(report);
    }
    let shifted = pr_core(&red.shift(-eps), tol)?.is_pr;
    let direct = direct_spr(&red, eps, tol);
    if shifted != direct {
        return Err(Error::Tolerance { epsilon: eps });
    }
    report.is_spr = shifted;
    Ok(report)
}

fn function_scale(red: &RationalFn) -> f64 {
    1.0 + red
        .num()
        .roots()
        .iter()
        .chain(&red.den().roots())
        .fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Trailing coefficients below `rel * |p|_inf` removed.
fn effective(p: &RealPoly, rel: f64) -> RealPoly {
    let cut = rel * p.norm_inf();
    let mut c = p.coeffs().to_vec();
    while c.last().is_some_and(|x| x.abs() <= cut) {
        c.pop();
    }
    RealPoly::new(c)
}

fn direct_spr(red: &RationalFn, eps: f64, tol: &Tolerances) -> bool {
    if red.den().roots().iter().any(|z| z.re >= -eps) {
        return false;
    }
    let (Some(nd), Some(dd)) = (red.num().degree(), red.den().degree()) else {
        return false;
    };
    let rel = nd as i64 - dd as i64;
    if rel == 1 && red.num().leading() / red.den().leading() <= 0.0 {
        return false;
    }
    let e = effective(&real_part_numerator(red), 1e-12);
    let required = match rel {
        1 | 0 => dd,
        -1 if dd >= 1 => dd - 1,
        _ => return false,
    };
    if e.degree() != Some(required) || e.leading() <= 0.0 {
        return false;
    }
    let mag = |u: f64| {
        let w = u.sqrt();
        red.num().magnitude(w) * red.den().magnitude(w)
    };
    if e.coeff(0) <= tol.eval_rel * mag(0.0) {
        return false;
    }
    positive_real_roots(&e).is_empty() && nonneg_with_magnitude(&e, mag, tol.eval_rel).nonneg
}

fn not_pr(mut report: PrReport, reason: &str) -> PrReport {
    report.is_pr = false;
    report.reason = Some(reason.to_string());
    report
}

fn pr_core(f: &RationalFn, tol: &Tolerances) -> Result<PrReport> {
    let red = f.reduced();
    let mut report = PrReport {
        is_pr: true,
        is_spr: false,
        hurwitz: true,
        axis_poles: Vec::new(),
        relative_degree: 0,
        min_axis_value: 0.0,
        witness_omega: None,
        tolerance: tol.spr_epsilon,
        reason: None,
    };
    if red.num().is_zero() {
        return Ok(report);
    }
    let (num, den) = (red.num(), red.den());
    let nd = num.degree().unwrap_or(0);
    let dd = den.degree().unwrap_or(0);
    report.relative_degree = nd as i64 - dd as i64;

    let droots = den.roots();
    let scale = function_scale(&red);
    let axis_tol = tol.cluster * scale;
    report.hurwitz = droots.iter().all(|z| z.re < -axis_tol);

    let (e, min_value, min_at) = axis_minimum(&red);
    report.min_axis_value = min_value;
    report.witness_omega = min_at;

    if droots.iter().any(|z| z.re > axis_tol) {
        report.witness_omega = None;
        return Ok(not_pr(report, "pole in the open right half-plane"));
    }

    let dprime = den.derivative();
    let mut on_axis: Vec<Complex> = droots
        .iter()
        .filter(|z| z.re.abs() <= axis_tol && z.im >= 0.0)
        .copied()
        .collect();
    on_axis.sort_by(|a, b| a.im.total_cmp(&b.im));
    let mut seen: Vec<f64> = Vec::new();
    for z in on_axis {
        if seen.iter().any(|&w| (w - z.im).abs() <= axis_tol) {
            continue;
        }
        seen.push(z.im);
        let at = Complex::new(0.0, z.im);
        let multiplicity = droots
            .iter()
            .filter(|w| (*w - at).norm() <= axis_tol)
            .count();
        if multiplicity > 1 {
            return Ok(not_pr(report, "multiple pole on the imaginary axis"));
        }
        let residue = num.eval(at) / dprime.eval(at);
        if residue.re <= 0.0 || residue.im.abs() > 1e-6 * residue.norm() {
            report.witness_omega = Some(z.im);
            return Ok(not_pr(report, "axis pole with non-positive residue"));
        }
        report.axis_poles.push(AxisPole {
            omega: z.im,
            residue: residue.re,
        });
    }

    if report.relative_degree.abs() > 1 {
        return Ok(not_pr(report, "relative degree outside [-1, 1]"));
    }
    if report.relative_degree == 1 && num.leading() / den.leading() <= 0.0 {
        return Ok(not_pr(report, "pole at infinity with negative residue"));
    }

    let mag = |u: f64| {
        let w = u.sqrt();
        num.magnitude(w) * den.magnitude(w)
    };
    let sign = nonneg_with_magnitude(&e, mag, tol.eval_rel);
    if !sign.nonneg {
        report.witness_omega = sign.witness.map(f64::sqrt);
        return Ok(not_pr(report, "negative real part on the imaginary axis"));
    }
    Ok(report)
}

/// `E`, and the infimum of `E / |den|^2` over `u >= 0` with its frequency
/// (`None` when approached only as `w -> inf`).
fn axis_minimum(red: &RationalFn) -> (RealPoly, f64, Option<f64>) {
    let e = real_part_numerator(red);
    let d2 = cross_real_part(red.den(), red.den());
    let crit = &(&e.derivative() * &d2) - &(&e * &d2.derivative());
    let mut best = (f64::INFINITY, None);
    let d2_floor = 1e-12 * d2.norm_inf();
    for u in std::iter::once(0.0).chain(positive_real_roots(&crit)) {
        let dv = d2.eval_real(u);
        if dv <= d2_floor {
            continue;
        }
        let v = e.eval_real(u) / dv;
        if v < best.0 {
            best = (v, Some(u.sqrt()));
        }
    }
    let limit = match (e.degree(), d2.degree()) {
        (None, _) => 0.0,
        (Some(a), Some(b)) if a < b => 0.0,
        (Some(a), Some(b)) if a == b => e.leading() / d2.leading(),
        _ => e.leading().signum() * f64::INFINITY,
    };
    if limit < best.0 {
        best = (limit, None);
    }
    (e, best.0, best.1)
}
