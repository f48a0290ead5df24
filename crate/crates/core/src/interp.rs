//! Interpolants `f = (nu + r eta) / d` and their reciprocal counterparts
//! `f_hat = d / (nu_hat + r_hat eta)`, the PR threshold in `r`, and the
//! driver that runs every family and direction.

use serde::{Deserialize, Serialize};

use crate::basis::{basis_expand, build_basis, InterpolationData, NodeBasis};
use crate::error::{Error, Result};
use crate::families::{
    default_coeffs_with, delta, denominator, is_admissible_with, DenomCoeffs, Family,
};
use crate::poly::{positive_on_halfline, positive_real_roots, Complex, RationalFn, RealPoly};
use crate::prtest::{cross_real_part, is_positive_real_with, PrReport, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Direct,
    Reciprocal,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Direct => "direct",
            Direction::Reciprocal => "reciprocal",
        })
    }
}

/// Where the supremum of `-A/B` over the imaginary axis is reached.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attained {
    Frequency(f64),
    /// The supremum was negative and `r_min` was clamped to zero.
    ZeroClamp,
    /// Approached only as `w -> inf`.
    InfinityLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RMinResult {
    pub r_min: f64,
    pub attained_at: Attained,
    pub axis_sup: f64,
    pub b_positive_certified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Interpolant {
    pub f: RationalFn,
    pub family: Family,
    pub direction: Direction,
    pub dc: DenomCoeffs,
    pub r: f64,
    /// Absent only for marginal coefficients accepted under the override.
    pub rmin: Option<RMinResult>,
    pub pr_report: PrReport,
    pub residuals: Vec<f64>,
}

impl Interpolant {
    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, &r| m.max(r))
    }
}

/// `sum y_j c_j phi_j`.
pub fn numerator(
    basis: &NodeBasis,
    data: &InterpolationData,
    dc: &DenomCoeffs,
) -> Result<RealPoly> {
    dc.validate(basis)?;
    let weighted: Vec<Complex> = data
        .targets()
        .iter()
        .zip(dc.coeffs())
        .map(|(y, c)| y * c)
        .collect();
    basis_expand(basis, 0.0, &weighted)
}

/// `nu / d`, interpolating the data but not necessarily PR.
pub fn p_fn(basis: &NodeBasis, data: &InterpolationData, dc: &DenomCoeffs) -> Result<RationalFn> {
    RationalFn::new(numerator(basis, data, dc)?, denominator(basis, dc)?)
}

fn check_nonzero_targets(data: &InterpolationData) -> Result<()> {
    match data.targets().iter().position(|y| y.norm() == 0.0) {
        Some(index) => Err(Error::ZeroTarget { index }),
        None => Ok(()),
    }
}

/// `sum (c_j / y_j) phi_j`.
pub fn hat_numerator(
    basis: &NodeBasis,
    data: &InterpolationData,
    dc: &DenomCoeffs,
) -> Result<RealPoly> {
    check_nonzero_targets(data)?;
    dc.validate(basis)?;
    let weighted: Vec<Complex> = data
        .targets()
        .iter()
        .zip(dc.coeffs())
        .map(|(y, c)| c / y)
        .collect();
    basis_expand(basis, 0.0, &weighted)
}

/// `nu_hat / d`, interpolating the reciprocal targets.
pub fn hat_p_fn(
    basis: &NodeBasis,
    data: &InterpolationData,
    dc: &DenomCoeffs,
) -> Result<RationalFn> {
    RationalFn::new(hat_numerator(basis, data, dc)?, denominator(basis, dc)?)
}

pub fn r_min(p: &RationalFn, delta: &RationalFn) -> Result<RMinResult> {
    r_min_with(p, delta, &Tolerances::default())
}

/// Smallest `r >= 0` with `p + r delta` positive real.
///
/// With `A`, `B` the axis real-part numerators of `p` and `delta` over the
/// shared denominator, `Re(p + r delta)(iw) >= 0` for all `w` exactly when
/// `r >= -A(u)/B(u)` for all `u = w^2 >= 0`. The supremum is taken over
/// `u = 0`, the positive critical points (roots of `A'B - AB'`) and the
/// limit `u -> inf`.
pub fn r_min_with(p: &RationalFn, delta: &RationalFn, tol: &Tolerances) -> Result<RMinResult> {
    let d = p.den();
    let diff = (d - delta.den()).norm_inf();
    if diff > 1e-10 * (1.0 + d.norm_inf()) {
        return Err(Error::SharedDenominator);
    }
    let a = cross_real_part(p.num(), d);
    let b = cross_real_part(delta.num(), d);
    if !positive_on_halfline(&b, tol.eval_rel) {
        return Err(Error::DeltaNotSpr);
    }

    let ratio = |u: f64| -a.eval_real(u) / b.eval_real(u);
    let mut best = (ratio(0.0), Attained::Frequency(0.0));
    let crit = critical_numerator(&a, &b);
    for u in positive_real_roots(&crit) {
        let v = ratio(u);
        if v > best.0 {
            best = (v, Attained::Frequency(u.sqrt()));
        }
    }
    let limit = match (a.degree(), b.degree()) {
        (Some(da), Some(db)) if da == db => -a.leading() / b.leading(),
        (Some(da), Some(db)) if da > db => return Err(Error::UnboundedThreshold),
        _ => 0.0,
    };
    if limit > best.0 {
        best = (limit, Attained::InfinityLimit);
    }

    let (axis_sup, at) = best;
    let result = if axis_sup < 0.0 {
        RMinResult {
            r_min: 0.0,
            attained_at: Attained::ZeroClamp,
            axis_sup,
            b_positive_certified: true,
        }
    } else {
        RMinResult {
            r_min: axis_sup,
            attained_at: at,
            axis_sup,
            b_positive_certified: true,
        }
    };
    verify_threshold(p, delta, &result, tol)?;
    Ok(result)
}

/// `A'B - AB'` with leading coefficients dropped while they are below the
/// rounding bound of their own products.
fn critical_numerator(a: &RealPoly, b: &RealPoly) -> RealPoly {
    let abs = |p: &RealPoly| RealPoly::new(p.coeffs().iter().map(|c| c.abs()).collect());
    let (da, db) = (a.derivative(), b.derivative());
    let crit = &(&da * b) - &(a * &db);
    let bound = &(&abs(&da) * &abs(b)) + &(&abs(a) * &abs(&db));
    let mut c = crit.coeffs().to_vec();
    while let Some(k) = c.len().checked_sub(1) {
        if c[k].abs() > 64.0 * f64::EPSILON * bound.coeff(k) {
            break;
        }
        c.pop();
    }
    RealPoly::new(c)
}

fn combine(p: &RationalFn, delta: &RationalFn, r: f64) -> Result<RationalFn> {
    RationalFn::new(p.num() + &delta.num().scale(r), p.den().clone())
}

fn verify_threshold(
    p: &RationalFn,
    delta: &RationalFn,
    res: &RMinResult,
    tol: &Tolerances,
) -> Result<()> {
    let above = res.r_min * (1.0 + 1e-9);
    if !is_positive_real_with(&combine(p, delta, above)?, tol)?.is_pr {
        return Err(Error::ThresholdVerification(format!(
            "not positive real at r = {above:e}"
        )));
    }
    if res.axis_sup > 0.0 {
        let below = res.r_min - 1e-3 * (1.0 + res.r_min);
        if is_positive_real_with(&combine(p, delta, below)?, tol)?.is_pr {
            return Err(Error::ThresholdVerification(format!(
                "still positive real at r = {below:e}"
            )));
        }
    }
    Ok(())
}

fn residuals(f: &RationalFn, data: &InterpolationData) -> Vec<f64> {
    data.nodes()
        .iter()
        .zip(data.targets())
        .map(|(&x, &y)| (f.eval(x) - y).norm())
        .collect()
}

/// Admissibility gate shared by both directions; returns whether `delta`
/// is strictly positive real.
fn gate(
    basis: &NodeBasis,
    dc: &DenomCoeffs,
    allow_marginal: bool,
    tol: &Tolerances,
) -> Result<bool> {
    let admissible = match is_admissible_with(basis, dc, tol) {
        Ok(v) => v,
        Err(Error::Tolerance { .. }) => false,
        Err(e) => return Err(e),
    };
    if !admissible && !allow_marginal {
        return Err(Error::InadmissibleCoeffs {
            family: dc.family(),
        });
    }
    Ok(admissible)
}

fn threshold(
    p: &RationalFn,
    d: &RationalFn,
    admissible: bool,
    tol: &Tolerances,
) -> Result<Option<RMinResult>> {
    match r_min_with(p, d, tol) {
        Ok(res) => Ok(Some(res)),
        Err(e) if admissible => Err(e),
        Err(_) => Ok(None),
    }
}

pub fn interpolant(
    data: &InterpolationData,
    dc: &DenomCoeffs,
    r: f64,
    allow_marginal: bool,
) -> Result<Interpolant> {
    interpolant_with(data, dc, r, allow_marginal, &Tolerances::default())
}

/// `(nu + r eta) / d`.
pub fn interpolant_with(
    data: &InterpolationData,
    dc: &DenomCoeffs,
    r: f64,
    allow_marginal: bool,
    tol: &Tolerances,
) -> Result<Interpolant> {
    if !r.is_finite() {
        return Err(Error::NonFinite("r"));
    }
    let basis = build_basis(data);
    let admissible = gate(&basis, dc, allow_marginal, tol)?;
    let p = p_fn(&basis, data, dc)?;
    let dl = delta(&basis, dc)?;
    let rmin = threshold(&p, &dl, admissible, tol)?;
    let f = combine(&p, &dl, r)?;
    let pr_report = is_positive_real_with(&f, tol)?;
    Ok(Interpolant {
        residuals: residuals(&f, data),
        f,
        family: dc.family(),
        direction: Direction::Direct,
        dc: dc.clone(),
        r,
        rmin,
        pr_report,
    })
}

pub fn hat_interpolant(
    data: &InterpolationData,
    dc: &DenomCoeffs,
    r_hat: f64,
    allow_marginal: bool,
) -> Result<Interpolant> {
    hat_interpolant_with(data, dc, r_hat, allow_marginal, &Tolerances::default())
}

/// `d / (nu_hat + r_hat eta)`.
pub fn hat_interpolant_with(
    data: &InterpolationData,
    dc: &DenomCoeffs,
    r_hat: f64,
    allow_marginal: bool,
    tol: &Tolerances,
) -> Result<Interpolant> {
    if !r_hat.is_finite() {
        return Err(Error::NonFinite("r"));
    }
    check_nonzero_targets(data)?;
    let basis = build_basis(data);
    let admissible = gate(&basis, dc, allow_marginal, tol)?;
    let p = hat_p_fn(&basis, data, dc)?;
    let dl = delta(&basis, dc)?;
    let rmin = threshold(&p, &dl, admissible, tol)?;
    let f = combine(&p, &dl, r_hat)?.reciprocal()?;
    let pr_report = is_positive_real_with(&f, tol)?;
    Ok(Interpolant {
        residuals: residuals(&f, data),
        f,
        family: dc.family(),
        direction: Direction::Reciprocal,
        dc: dc.clone(),
        r: r_hat,
        rmin,
        pr_report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RMode {
    /// `r = r_min (1 + margin)`.
    Auto,
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub families: Vec<Family>,
    pub directions: Vec<Direction>,
    pub zero_coeffs: Option<DenomCoeffs>,
    pub one_coeffs: Option<DenomCoeffs>,
    pub r: RMode,
    pub margin: f64,
    pub allow_marginal: bool,
    pub tol: Tolerances,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            families: vec![Family::Zero, Family::One],
            directions: vec![Direction::Direct, Direction::Reciprocal],
            zero_coeffs: None,
            one_coeffs: None,
            r: RMode::Auto,
            margin: 1e-6,
            allow_marginal: false,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skipped {
    pub family: Family,
    pub direction: Direction,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub entries: Vec<Interpolant>,
    pub skipped: Vec<Skipped>,
}

/// Outcome of one family/direction branch that did not produce an entry
/// but does not invalidate the run.
fn skip_reason(e: &Error) -> Option<String> {
    match e {
        Error::ZeroTarget { .. } => Some("zero target".into()),
        Error::AdmissibleNotFound { .. }
        | Error::InadmissibleCoeffs { .. }
        | Error::DeltaNotSpr
        | Error::UnboundedThreshold
        | Error::ThresholdVerification(_)
        | Error::Tolerance { .. } => Some(e.to_string()),
        _ => None,
    }
}

fn solve_branch(
    data: &InterpolationData,
    basis: &NodeBasis,
    family: Family,
    direction: Direction,
    opts: &SolveOptions,
) -> Result<Interpolant> {
    if direction == Direction::Reciprocal {
        check_nonzero_targets(data)?;
    }
    let supplied = match family {
        Family::Zero => opts.zero_coeffs.clone(),
        Family::One => opts.one_coeffs.clone(),
    };
    let dc = match supplied {
        Some(dc) => dc,
        None => default_coeffs_with(basis, family, &opts.tol)?,
    };
    let build = |r: f64| match direction {
        Direction::Direct => interpolant_with(data, &dc, r, opts.allow_marginal, &opts.tol),
        Direction::Reciprocal => hat_interpolant_with(data, &dc, r, opts.allow_marginal, &opts.tol),
    };
    match opts.r {
        RMode::Fixed(r) => build(r),
        RMode::Auto => {
            let probe = build(0.0)?;
            let rmin = probe.rmin.ok_or_else(|| {
                Error::ThresholdVerification(
                    "threshold unavailable for marginal coefficients".into(),
                )
            })?;
            let r = rmin.r_min * (1.0 + opts.margin);
            if r == 0.0 {
                Ok(probe)
            } else {
                build(r)
            }
        }
    }
}

/// Runs every requested family and direction, in the order ZERO-direct,
/// ONE-direct, ZERO-reciprocal, ONE-reciprocal. Branches that cannot be
/// built for the data are reported in `skipped`.
pub fn solve(data: &InterpolationData, opts: &SolveOptions) -> Result<SolveOutcome> {
    if !(opts.margin.is_finite() && opts.margin >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "margin must be finite and >= 0, got {}",
            opts.margin
        )));
    }
    let basis = build_basis(data);
    let branches: Vec<(Family, Direction)> = [Direction::Direct, Direction::Reciprocal]
        .into_iter()
        .filter(|d| opts.directions.contains(d))
        .flat_map(|d| {
            [Family::Zero, Family::One]
                .into_iter()
                .filter(|f| opts.families.contains(f))
                .map(move |f| (f, d))
        })
        .collect();

    let results: Vec<Result<Interpolant>> = std::thread::scope(|scope| {
        let handles: Vec<_> = branches
            .iter()
            .map(|&(f, d)| {
                let basis = &basis;
                scope.spawn(move || solve_branch(data, basis, f, d, opts))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solve branch panicked"))
            .collect()
    });

    let mut out = SolveOutcome {
        entries: Vec::new(),
        skipped: Vec::new(),
    };
    for ((family, direction), res) in branches.into_iter().zip(results) {
        match res {
            Ok(entry) => out.entries.push(entry),
            Err(e) => match skip_reason(&e) {
                Some(reason) => out.skipped.push(Skipped {
                    family,
                    direction,
                    reason,
                }),
                None => return Err(e),
            },
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::normalize_data;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn data_13(y1: f64, y2: f64) -> InterpolationData {
        normalize_data(&[c(-1.0, 0.0), c(-3.0, 0.0)], &[c(y1, 0.0), c(y2, 0.0)]).unwrap()
    }

    /// ZERO coefficients with `d = s + g`.
    fn zero_gamma(g: f64) -> DenomCoeffs {
        let g1 = (g - 1.0) / 2.0;
        DenomCoeffs::real(Family::Zero, &[g1, 1.0 - g1])
    }

    fn close(a: &RealPoly, b: &[f64], tol: f64) -> bool {
        (a - &RealPoly::new(b.to_vec())).norm_inf() <= tol
    }

    #[test]
    fn numerator_examples() {
        let data = data_13(0.5, -2.0);
        let b = build_basis(&data);
        let (c1, c2) = (1.5, 0.25);
        let nu = numerator(&b, &data, &DenomCoeffs::real(Family::One, &[c1, c2])).unwrap();
        let (y1, y2) = (0.5, -2.0);
        assert!(close(
            &nu,
            &[3.0 * c1 * y1 + c2 * y2, c1 * y1 + c2 * y2],
            1e-14
        ));

        let zero = data_13(0.0, 0.0);
        assert!(
            numerator(&b, &zero, &DenomCoeffs::real(Family::One, &[1.0, 1.0]))
                .unwrap()
                .is_zero()
        );

        let data = data_13(1.0, 3.0);
        let g1 = 0.3;
        let nu = numerator(&b, &data, &DenomCoeffs::real(Family::Zero, &[g1, 1.0 - g1])).unwrap();
        let g2 = 1.0 - g1;
        assert!(close(&nu, &[3.0 * g1 + 3.0 * g2, g1 + 3.0 * g2], 1e-14));
    }

    #[test]
    fn p_examples() {
        let data = data_13(1.0, 3.0);
        let b = build_basis(&data);
        let p = p_fn(&b, &data, &zero_gamma(2.0)).unwrap();
        // 2 - 1/(s+2) = (2s + 3)/(s + 2)
        assert!(close(p.num(), &[3.0, 2.0], 1e-14));
        assert!(close(p.den(), &[2.0, 1.0], 1e-14));

        let data = data_13(4.0, 4.0);
        let p = p_fn(&b, &data, &zero_gamma(2.7)).unwrap().reduced();
        assert!(close(p.num(), &[4.0], 1e-12), "{p}");
    }

    #[test]
    fn hat_numerator_examples() {
        let data = data_13(2.0, 6.0);
        let b = build_basis(&data);
        let nh = hat_numerator(&b, &data, &zero_gamma(2.0)).unwrap();
        assert!(close(&nh, &[5.0 / 6.0, 1.0 / 3.0], 1e-14));

        let ones = data_13(1.0, 1.0);
        let dc = DenomCoeffs::real(Family::One, &[0.7, 2.0]);
        assert_eq!(
            hat_numerator(&b, &ones, &dc).unwrap(),
            numerator(&b, &ones, &dc).unwrap()
        );

        assert!(matches!(
            hat_numerator(&b, &data_13(2.0, 0.0), &dc),
            Err(Error::ZeroTarget { index: 1 })
        ));
    }

    fn rmin_zero(y1: f64, y2: f64, g: f64) -> RMinResult {
        let data = data_13(y1, y2);
        let b = build_basis(&data);
        let dc = zero_gamma(g);
        r_min(&p_fn(&b, &data, &dc).unwrap(), &delta(&b, &dc).unwrap()).unwrap()
    }

    #[test]
    fn rmin_examples() {
        let r = rmin_zero(-1.0, -1.0, 2.0);
        assert!((r.r_min - 2.0 / 3.0).abs() < 1e-9, "{r:?}");
        let r = rmin_zero(-1.0, -1.0, 3.5);
        assert!((r.r_min - 2.0).abs() < 1e-9, "{r:?}");
        assert_eq!(r.attained_at, Attained::InfinityLimit);
        for g in [1.5, 2.0, 2.5] {
            let r = rmin_zero(1.0, 3.0, g);
            assert_eq!(r.r_min, 0.0);
            assert_eq!(r.attained_at, Attained::ZeroClamp);
        }
        assert_eq!(rmin_zero(0.0, 0.0, 2.0).r_min, 0.0);
    }

    #[test]
    fn rmin_rejects_mismatched_denominators() {
        let p = RationalFn::new(RealPoly::constant(1.0), RealPoly::new(vec![1.0, 1.0])).unwrap();
        let d = RationalFn::new(
            RealPoly::new(vec![3.0, 4.0, 1.0]),
            RealPoly::new(vec![2.0, 1.0]),
        )
        .unwrap();
        assert_eq!(r_min(&p, &d), Err(Error::SharedDenominator));
    }

    #[test]
    fn interpolant_examples() {
        for g in [1.5, 2.0, 2.5] {
            let f = interpolant(&data_13(1.0, 3.0), &zero_gamma(g), 0.0, false).unwrap();
            // 4 - g + (g-3)(g-1)/(s+g)
            let num = [(4.0 - g) * g + (g - 3.0) * (g - 1.0), 4.0 - g];
            assert!(close(f.f.num(), &num, 1e-12));
            assert!(close(f.f.den(), &[g, 1.0], 1e-12));
            assert!(f.pr_report.is_pr);
            assert!(f.max_residual() < 1e-12);
        }

        let f = interpolant(&data_13(2.0, 0.0), &zero_gamma(2.5), 0.0, false).unwrap();
        assert!(close(f.f.num(), &[4.5, 1.5], 1e-12));

        let f = interpolant(
            &data_13(-1.0, -1.0),
            &DenomCoeffs::real(Family::One, &[2.0, -6.0]),
            0.0,
            true,
        )
        .unwrap();
        assert!(close(f.f.num(), &[0.0, 4.0], 1e-12));
        assert!(close(f.f.den(), &[3.0, 0.0, 1.0], 1e-12));
        assert!(f.rmin.is_none());
        assert!(f.pr_report.is_pr && !f.pr_report.is_spr);

        assert!(matches!(
            interpolant(
                &data_13(-1.0, -1.0),
                &DenomCoeffs::real(Family::One, &[2.0, -6.0]),
                0.0,
                false
            ),
            Err(Error::InadmissibleCoeffs {
                family: Family::One
            })
        ));
    }

    #[test]
    fn hat_examples() {
        let f = hat_interpolant(
            &data_13(-1.0, -1.0),
            &DenomCoeffs::real(Family::One, &[2.0, -6.0]),
            0.0,
            true,
        )
        .unwrap();
        assert!(close(f.f.num(), &[3.0, 0.0, 1.0], 1e-12));
        assert!(close(f.f.den(), &[0.0, 4.0], 1e-12));
        assert_eq!(f.direction, Direction::Reciprocal);

        let f = hat_interpolant(&data_13(5.0, 5.0), &zero_gamma(2.0), 0.0, false).unwrap();
        let red = f.f.reduced();
        assert_eq!(red.degree(), 0);
        assert!((red.num().coeff(0) - 5.0).abs() < 1e-12);

        assert!(matches!(
            hat_interpolant(&data_13(2.0, 0.0), &zero_gamma(2.0), 0.0, false),
            Err(Error::ZeroTarget { .. })
        ));
    }

    #[test]
    fn pr_matches_threshold() {
        let data = data_13(-1.0, -1.0);
        let dc = zero_gamma(2.0);
        for r in [0.5, 0.66, 0.67, 1.0, 3.0] {
            let f = interpolant(&data, &dc, r, false).unwrap();
            assert_eq!(f.pr_report.is_pr, r >= 2.0 / 3.0, "r = {r}");
        }
    }

    #[test]
    fn solve_examples() {
        let out = solve(&data_13(-1.0, -1.0), &SolveOptions::default()).unwrap();
        assert_eq!(out.entries.len(), 4);
        for e in &out.entries {
            assert!(e.r > 0.0 && e.pr_report.is_pr);
            assert!(e.degree() >= 2);
        }

        let out = solve(&data_13(2.0, 0.0), &SolveOptions::default()).unwrap();
        assert_eq!(out.entries.len(), 2);
        assert_eq!(out.skipped.len(), 2);
        assert!(out.skipped.iter().all(|s| s.reason == "zero target"));

        let out = solve(&data_13(3.0, 3.0), &SolveOptions::default()).unwrap();
        assert!(out.entries.iter().any(|e| e.degree() == 0));
        let order: Vec<_> = out
            .entries
            .iter()
            .map(|e| (e.family, e.direction))
            .collect();
        assert_eq!(
            order,
            vec![
                (Family::Zero, Direction::Direct),
                (Family::One, Direction::Direct),
                (Family::Zero, Direction::Reciprocal),
                (Family::One, Direction::Reciprocal),
            ]
        );
    }

    #[test]
    fn threshold_survives_cancelling_critical_polynomial() {
        let nodes = [
            c(-2.761108224657831, 3.4985999595820854),
            c(-2.761108224657831, -3.4985999595820854),
            c(-0.2, 0.2),
            c(-0.2, -0.2),
            c(-1.1062575656074216, 0.2),
            c(-1.1062575656074216, -0.2),
        ];
        let ys = [1.7768728129621747, -2.998725304201389, -2.809759514074379];
        let targets: Vec<Complex> = ys.iter().flat_map(|&y| [c(y, 0.0), c(y, 0.0)]).collect();
        let data = normalize_data(&nodes, &targets).unwrap();
        let b = build_basis(&data);
        let dc = crate::families::default_coeffs(&b, Family::Zero).unwrap();
        let th = r_min(&p_fn(&b, &data, &dc).unwrap(), &delta(&b, &dc).unwrap()).unwrap();
        assert!(th.r_min > 4.0 && th.r_min < 5.0, "{}", th.r_min);
        assert!(matches!(th.attained_at, Attained::Frequency(w) if w > 0.0));
    }
}
