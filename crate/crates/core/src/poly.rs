//! Real polynomials, rational functions and the numerical kernel shared by
//! the rest of the crate: Horner evaluation, companion-matrix root finding,
//! and sign certification of polynomials on the half-line `u >= 0`.
//!
//! Coefficients are stored in ascending order, `coeffs[k]` multiplies `s^k`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

/// Roots closer than `CLUSTER_TOL * (1 + max |root|)` are treated as one
/// root of higher multiplicity.
pub const CLUSTER_TOL: f64 = 1e-7;

/// A value `v` of a polynomial is treated as negative only when
/// `v < -EVAL_REL_TOL * magnitude`, where the magnitude is the sum of the
/// absolute values of the terms.
pub const EVAL_REL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        RealPoly::new(vec![c])
    }

    /// The polynomial `s`.
    pub fn identity() -> Self {
        RealPoly::new(vec![0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, s: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Sum of the absolute values of the terms at `x`; the natural scale
    /// against which a computed value of the polynomial is judged.
    pub fn magnitude(&self, x: f64) -> f64 {
        let x = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c.abs())
    }

    pub fn scale(&self, k: f64) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> RealPoly {
        RealPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Long division; panics if `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &RealPoly) -> (RealPoly, RealPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (RealPoly::zero(), RealPoly::zero());
        };
        if nd < dd {
            return (RealPoly::zero(), self.clone());
        }
        let mut quot = vec![0.0; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        (RealPoly::new(quot), RealPoly::new(rem))
    }

    /// Returns `q(s) = p(s + a)`.
    pub fn shift(&self, a: f64) -> RealPoly {
        // Horner in polynomial arithmetic: q = (...(c_n (s+a) + c_{n-1})(s+a) ...)
        let lin = RealPoly::new(vec![a, 1.0]);
        let mut acc = RealPoly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &RealPoly::constant(c);
        }
        acc
    }

    /// Splits `p(iw) = even(u) + i*w*odd(u)` with `u = w^2`.
    pub fn axis_parts(&self) -> (RealPoly, RealPoly) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            // i^k = (-1)^(k/2) for even k, i * (-1)^((k-1)/2) for odd k
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even.push(sign * c);
            } else {
                odd.push(sign * c);
            }
        }
        (RealPoly::new(even), RealPoly::new(odd))
    }

    /// All complex roots with multiplicity, sorted by `(re, im)`, with exact
    /// conjugate symmetry. A constant polynomial has no roots.
    pub fn roots(&self) -> Vec<Complex> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let zeros_at_origin = self.coeffs.iter().take_while(|&&c| c == 0.0).count();
        let reduced = &self.coeffs[zeros_at_origin..];
        let mut roots = vec![Complex::new(0.0, 0.0); zeros_at_origin];
        let n = deg - zeros_at_origin;
        match n {
            0 => {}
            1 => roots.push(Complex::new(-reduced[0] / reduced[1], 0.0)),
            _ => {
                let lead = reduced[n];
                let mut companion = DMatrix::<f64>::zeros(n, n);
                for j in 0..n {
                    companion[(0, j)] = -reduced[n - 1 - j] / lead;
                }
                for i in 1..n {
                    companion[(i, i - 1)] = 1.0;
                }
                balance(&mut companion);
                let eig = companion.complex_eigenvalues();
                let deriv = self.derivative();
                roots.extend(eig.iter().map(|&z| polish(self, &deriv, z)));
            }
        }
        let mut roots = enforce_conjugate_symmetry(roots);
        sort_complex(&mut roots);
        roots
    }

    /// Monic real polynomial with exactly the given roots. The multiset must
    /// be closed under conjugation.
    pub fn from_roots(roots: &[Complex]) -> Result<RealPoly> {
        if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("roots"));
        }
        let is_real = |z: &Complex| z.im.abs() <= 1e-12 * (1.0 + z.norm());
        let mut lower: Vec<Complex> = roots
            .iter()
            .copied()
            .filter(|z| !is_real(z) && z.im < 0.0)
            .collect();
        let mut acc = RealPoly::constant(1.0);
        for z in roots {
            if is_real(z) {
                acc = &acc * &RealPoly::new(vec![-z.re, 1.0]);
            } else if z.im > 0.0 {
                let tol = 1e-9 * (1.0 + z.norm());
                let pos = lower
                    .iter()
                    .position(|w| (w.conj() - z).norm() <= tol)
                    .ok_or_else(|| {
                        Error::Conjugation(format!("root {z} has no conjugate partner"))
                    })?;
                let w = lower.swap_remove(pos);
                let re = 0.5 * (z.re + w.re);
                let im = 0.5 * (z.im - w.im);
                acc = &acc * &RealPoly::new(vec![re * re + im * im, -2.0 * re, 1.0]);
            }
        }
        if let Some(w) = lower.first() {
            return Err(Error::Conjugation(format!(
                "root {w} has no conjugate partner"
            )));
        }
        Ok(acc)
    }
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }
}

impl Neg for &RealPoly {
    type Output = RealPoly;
    fn neg(self) -> RealPoly {
        self.scale(-1.0)
    }
}

impl std::fmt::Display for RealPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*s")?,
                _ => write!(f, "{a}*s^{k}")?,
            }
        }
        Ok(())
    }
}

/// Parlett-Reinsch diagonal balancing, radix 2.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// A few Newton steps on the original polynomial, each kept only if it
/// reduces the residual.
fn polish(p: &RealPoly, dp: &RealPoly, mut z: Complex) -> Complex {
    let mut val = p.eval(z).norm();
    for _ in 0..4 {
        let d = dp.eval(z);
        if d.norm() == 0.0 || val == 0.0 {
            break;
        }
        let next = z - p.eval(z) / d;
        let next_val = p.eval(next).norm();
        if next_val.is_nan() || next_val >= val {
            break;
        }
        z = next;
        val = next_val;
    }
    z
}

fn enforce_conjugate_symmetry(roots: Vec<Complex>) -> Vec<Complex> {
    let snap = |z: &Complex| z.im.abs() <= 1e3 * f64::EPSILON * (1.0 + z.norm());
    let mut out = Vec::with_capacity(roots.len());
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for z in roots {
        if snap(&z) {
            out.push(Complex::new(z.re, 0.0));
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    upper.sort_by(|a, b| b.im.total_cmp(&a.im));
    for u in upper {
        let best = lower
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.conj() - u).norm().total_cmp(&(b.conj() - u).norm()))
            .map(|(i, _)| i);
        match best {
            Some(i) => {
                let l = lower.swap_remove(i);
                let re = 0.5 * (u.re + l.re);
                let im = 0.5 * (u.im - l.im);
                out.push(Complex::new(re, im));
                out.push(Complex::new(re, -im));
            }
            None => out.push(Complex::new(u.re, 0.0)),
        }
    }
    out.extend(lower.into_iter().map(|l| Complex::new(l.re, 0.0)));
    out
}

pub(crate) fn sort_complex(v: &mut [Complex]) {
    v.sort_by(|a, b| match a.re.total_cmp(&b.re) {
        Ordering::Equal => a.im.total_cmp(&b.im),
        o => o,
    });
}

/// Outcome of a sign check of a polynomial on `u >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfLineSign {
    pub nonneg: bool,
    /// A point `u >= 0` where the polynomial is certified negative.
    pub witness: Option<f64>,
}

/// Decides whether `p(u) >= 0` for every `u >= 0`.
///
/// The positive real roots of `p` split `[0, inf)` into intervals of constant
/// sign; `p` is sampled once inside each interval. Roots closer than
/// [`CLUSTER_TOL`] are merged, so even-multiplicity roots do not produce a
/// spurious sign change.
pub fn nonneg_on_halfline(p: &RealPoly) -> HalfLineSign {
    nonneg_with_magnitude(p, |u| p.magnitude(u), EVAL_REL_TOL)
}

/// As [`nonneg_on_halfline`], judging each sampled value against a caller
/// supplied magnitude instead of the polynomial's own term sum.
pub(crate) fn nonneg_with_magnitude(
    p: &RealPoly,
    magnitude: impl Fn(f64) -> f64,
    rel_tol: f64,
) -> HalfLineSign {
    if p.is_zero() {
        return HalfLineSign {
            nonneg: true,
            witness: None,
        };
    }
    let mut worst: Option<(f64, f64)> = None;
    for u in sample_points(&positive_real_roots(p)) {
        let v = p.eval_real(u);
        let m = magnitude(u).max(f64::MIN_POSITIVE);
        if v < -rel_tol * m {
            let rel = v / m;
            if worst.is_none_or(|(_, w)| rel < w) {
                worst = Some((u, rel));
            }
        }
    }
    HalfLineSign {
        nonneg: worst.is_none(),
        witness: worst.map(|(u, _)| u),
    }
}

/// Whether `p(u) > 0` on all of `[0, inf)` including the limit: positive at
/// the origin, positive leading coefficient and no real root in `(0, inf)`.
pub(crate) fn positive_on_halfline(p: &RealPoly, rel_tol: f64) -> bool {
    if p.is_zero() {
        return false;
    }
    let scale = p.norm_inf();
    if p.coeff(0) <= rel_tol * scale || p.leading() <= rel_tol * scale {
        return false;
    }
    if !positive_real_roots(p).is_empty() {
        return false;
    }
    nonneg_with_magnitude(p, |u| p.magnitude(u), rel_tol).nonneg
}

/// Cluster centers of the real roots of `p` lying in `(0, inf)`. Tolerances
/// scale with each root's own magnitude.
pub(crate) fn positive_real_roots(p: &RealPoly) -> Vec<f64> {
    let local = |x: f64| CLUSTER_TOL * (1.0 + x.abs());
    let mut reals: Vec<f64> = p
        .roots()
        .iter()
        .filter(|z| z.re > 0.0 && z.im.abs() <= local(z.norm()))
        .map(|z| z.re)
        .collect();
    reals.sort_by(f64::total_cmp);
    let mut clusters: Vec<(f64, usize, f64)> = Vec::new();
    for x in reals {
        match clusters.last_mut() {
            Some((sum, count, last)) if x - *last <= local(x) => {
                *sum += x;
                *count += 1;
                *last = x;
            }
            _ => clusters.push((x, 1, x)),
        }
    }
    clusters
        .into_iter()
        .map(|(sum, count, _)| sum / count as f64)
        .collect()
}

fn sample_points(sorted_roots: &[f64]) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut prev = 0.0;
    for &r in sorted_roots {
        pts.push(0.5 * (prev + r));
        prev = r;
    }
    pts.push(2.0 * prev + 1.0);
    pts
}

/// A real rational function `num / den`. The stored pair is kept as given;
/// [`RationalFn::reduced`] cancels common roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    num: RealPoly,
    den: RealPoly,
}

impl RationalFn {
    pub fn new(num: RealPoly, den: RealPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateFunction("zero denominator".into()));
        }
        if !num.is_finite() || !den.is_finite() {
            return Err(Error::NonFinite("rational function coefficients"));
        }
        Ok(RationalFn { num, den })
    }

    pub fn num(&self) -> &RealPoly {
        &self.num
    }

    pub fn den(&self) -> &RealPoly {
        &self.den
    }

    pub fn eval(&self, s: Complex) -> Complex {
        self.num.eval(s) / self.den.eval(s)
    }

    pub fn reciprocal(&self) -> Result<RationalFn> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    /// `f(s + a)`.
    pub fn shift(&self, a: f64) -> RationalFn {
        RationalFn {
            num: self.num.shift(a),
            den: self.den.shift(a),
        }
    }

    /// Degree of the numerator minus degree of the denominator of the
    /// reduced function; zero for the zero function.
    pub fn relative_degree(&self) -> i64 {
        let r = self.reduced();
        match (r.num.degree(), r.den.degree()) {
            (Some(n), Some(d)) => n as i64 - d as i64,
            _ => 0,
        }
    }

    /// `max(deg num, deg den)` after cancelling common roots.
    pub fn degree(&self) -> usize {
        let r = self.reduced();
        r.num.degree().unwrap_or(0).max(r.den.degree().unwrap_or(0))
    }

    /// Cancels roots shared by numerator and denominator (within the
    /// clustering tolerance) and normalizes the denominator to be monic.
    pub fn reduced(&self) -> RationalFn {
        let lead_d = self.den.leading();
        if self.num.is_zero() {
            return RationalFn {
                num: RealPoly::zero(),
                den: RealPoly::constant(1.0),
            };
        }
        let nr = self.num.roots();
        let dr = self.den.roots();
        let max_mod = nr.iter().chain(&dr).fold(0.0f64, |m, z| m.max(z.norm()));
        let tol = CLUSTER_TOL * (1.0 + max_mod);
        let mut num_left: Vec<Complex> = nr.iter().copied().filter(|z| z.im >= 0.0).collect();
        let mut den_left: Vec<Complex> = Vec::new();
        let mut cancelled = false;
        for z in dr.iter().filter(|z| z.im >= 0.0) {
            let hit = num_left
                .iter()
                .enumerate()
                .filter(|(_, w)| (w.im == 0.0) == (z.im == 0.0))
                .map(|(i, w)| (i, (w - z).norm()))
                .filter(|&(_, dist)| dist <= tol)
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match hit {
                Some((i, _)) => {
                    num_left.swap_remove(i);
                    cancelled = true;
                }
                None => den_left.push(*z),
            }
        }
        if !cancelled {
            return RationalFn {
                num: self.num.scale(1.0 / lead_d),
                den: self.den.scale(1.0 / lead_d),
            };
        }
        let expand = |upper: &[Complex]| -> RealPoly {
            let all: Vec<Complex> = upper
                .iter()
                .flat_map(|z| {
                    if z.im == 0.0 {
                        vec![*z]
                    } else {
                        vec![*z, z.conj()]
                    }
                })
                .collect();
            RealPoly::from_roots(&all).expect("conjugate pairs are constructed explicitly")
        };
        RationalFn {
            num: expand(&num_left).scale(self.num.leading() / lead_d),
            den: expand(&den_left),
        }
    }
}

impl std::fmt::Display for RationalFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
