//! The two denominator families and the functions `delta = eta / d`.
//!
//! * ZERO: `d = sum gamma_j phi_j` with `sum gamma_j = 1`, degree `m - 1`.
//! * ONE: `d = eta + sum c_j phi_j`, degree `m`.
//!
//! Both are monic. A coefficient vector is admissible when `delta` is
//! strictly positive real; admissible sets are convex, and for ONE they are
//! closed under adding nonnegative reals to every coefficient.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::{basis_expand, check_pattern, NodeBasis, NodeKind};
use crate::error::{Error, Result};
use crate::poly::{Complex, RationalFn, RealPoly};
use crate::prtest::{is_positive_real_with, is_strictly_positive_real_with, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Zero,
    One,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Zero => "ZERO",
            Family::One => "ONE",
        })
    }
}

/// Per-node denominator coefficients (`gamma_j` or `c_j`), in the node order
/// of the basis they are used with.
#[derive(Clone, Debug, PartialEq)]
pub struct DenomCoeffs {
    family: Family,
    coeffs: Vec<Complex>,
}

impl DenomCoeffs {
    pub fn new(family: Family, coeffs: Vec<Complex>) -> Self {
        DenomCoeffs { family, coeffs }
    }

    pub fn real(family: Family, coeffs: &[f64]) -> Self {
        DenomCoeffs::new(
            family,
            coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect(),
        )
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Weight of `eta` in the denominator: 0 for ZERO, 1 for ONE.
    pub fn b(&self) -> f64 {
        match self.family {
            Family::Zero => 0.0,
            Family::One => 1.0,
        }
    }

    pub fn validate(&self, basis: &NodeBasis) -> Result<()> {
        if self.coeffs.len() != basis.m() {
            return Err(Error::CoefficientCount {
                expected: basis.m(),
                got: self.coeffs.len(),
            });
        }
        if self
            .coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite("denominator coefficients"));
        }
        if let Some(index) = self.coeffs.iter().position(|c| c.norm() == 0.0) {
            return Err(Error::ZeroCoefficient { index });
        }
        check_pattern(basis.kinds(), &self.coeffs, "coefficient")?;
        if self.family == Family::Zero {
            let sum: Complex = self.coeffs.iter().sum();
            if (sum - 1.0).norm() > 1e-10 {
                return Err(Error::Normalization {
                    sum_re: sum.re,
                    sum_im: sum.im,
                });
            }
        }
        Ok(())
    }
}

pub fn denominator(basis: &NodeBasis, dc: &DenomCoeffs) -> Result<RealPoly> {
    dc.validate(basis)?;
    let d = basis_expand(basis, dc.b(), dc.coeffs())?;
    // the ZERO family is monic up to the rounding in sum gamma_j = 1
    Ok(match dc.family {
        Family::Zero => {
            let mut c = d.coeffs().to_vec();
            c.truncate(basis.m());
            if let Some(last) = c.last_mut() {
                *last = 1.0;
            }
            RealPoly::new(c)
        }
        Family::One => d,
    })
}

/// `eta / d`; vanishes exactly at the nodes.
pub fn delta(basis: &NodeBasis, dc: &DenomCoeffs) -> Result<RationalFn> {
    RationalFn::new(basis.eta().clone(), denominator(basis, dc)?)
}

pub fn is_admissible(basis: &NodeBasis, dc: &DenomCoeffs) -> Result<bool> {
    is_admissible_with(basis, dc, &Tolerances::default())
}

pub fn is_admissible_with(basis: &NodeBasis, dc: &DenomCoeffs, tol: &Tolerances) -> Result<bool> {
    Ok(is_strictly_positive_real_with(&delta(basis, dc)?, tol)?.is_spr)
}

const FALLBACK_ATTEMPTS: usize = 100;

/// `c_j = 1` for ONE, `gamma_j = 1/m` for ZERO, both admissible for any node
/// set in exact arithmetic. When the numerical test still rejects them the
/// coefficients are moved along a fixed path of positive real patterns
/// until one is accepted.
pub fn default_coeffs(basis: &NodeBasis, family: Family) -> Result<DenomCoeffs> {
    default_coeffs_with(basis, family, &Tolerances::default())
}

pub fn default_coeffs_with(
    basis: &NodeBasis,
    family: Family,
    tol: &Tolerances,
) -> Result<DenomCoeffs> {
    let m = basis.m();
    // weights favour nodes far from the imaginary axis
    let depth: Vec<f64> = basis.nodes().iter().map(|x| -x.re).collect();
    let mut last = Vec::new();
    for attempt in 0..=FALLBACK_ATTEMPTS {
        let t = attempt as f64 / FALLBACK_ATTEMPTS as f64;
        let coeffs: Vec<f64> = match family {
            Family::One => vec![1.0 + 10.0 * attempt as f64; m],
            Family::Zero => {
                let w: Vec<f64> = depth.iter().map(|d| d.powf(2.0 * t)).collect();
                let total: f64 = w.iter().sum();
                w.iter().map(|x| x / total).collect()
            }
        };
        let dc = DenomCoeffs::real(family, &coeffs);
        if let Ok(true) = is_admissible_with(basis, &dc, tol) {
            return Ok(dc);
        }
        last = coeffs;
    }
    Err(Error::AdmissibleNotFound {
        family,
        last_attempt: last,
    })
}

/// One real per real node, `(re, im)` of the upper member for each
/// conjugate pair; `m` reals in total.
pub fn to_real_params(basis: &NodeBasis, dc: &DenomCoeffs) -> Result<Vec<f64>> {
    if dc.coeffs.len() != basis.m() {
        return Err(Error::CoefficientCount {
            expected: basis.m(),
            got: dc.coeffs.len(),
        });
    }
    check_pattern(basis.kinds(), &dc.coeffs, "coefficient")?;
    Ok(basis
        .kinds()
        .iter()
        .zip(&dc.coeffs)
        .map(|(kind, c)| match kind {
            NodeKind::Real | NodeKind::Upper => c.re,
            // the upper member's imaginary part sits in the lower slot
            NodeKind::Lower => -c.im,
        })
        .collect())
}

pub fn from_real_params(basis: &NodeBasis, family: Family, point: &[f64]) -> Result<DenomCoeffs> {
    if point.len() != basis.m() {
        return Err(Error::CoefficientCount {
            expected: basis.m(),
            got: point.len(),
        });
    }
    let kinds = basis.kinds();
    let coeffs = (0..point.len())
        .map(|j| match kinds[j] {
            NodeKind::Real => Complex::new(point[j], 0.0),
            NodeKind::Upper => Complex::new(point[j], point[j + 1]),
            NodeKind::Lower => Complex::new(point[j - 1], -point[j]),
        })
        .collect();
    Ok(DenomCoeffs::new(family, coeffs))
}

/// Two coordinates of the real parametrization vary; the others are taken
/// from `base`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Slice {
    pub x_index: usize,
    pub y_index: usize,
    pub base: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Admissible,
    Inadmissible,
    /// Inside the SPR tolerance band.
    Borderline,
    /// The point violates a structural constraint (zero coefficient,
    /// normalization).
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionCell {
    pub x: f64,
    pub y: f64,
    pub status: CellStatus,
}

impl RegionCell {
    pub fn admissible(&self) -> bool {
        self.status == CellStatus::Admissible
    }
}

/// Boundary ordinate on the column `x`, refined by bisection to
/// [`BOUNDARY_RESOLUTION`]. `rising` is true when the points above the
/// boundary are the admissible ones.
///
/// The admissible set and its closure (`delta` positive real) share their
/// boundary; bisection runs on the closure, whose test carries no shift.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub x: f64,
    pub y: f64,
    pub rising: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionSample {
    pub family: Family,
    pub slice: Slice,
    pub window: Window,
    /// Column-major: all cells of the first `x` value, `y` ascending, then
    /// the next column.
    pub cells: Vec<RegionCell>,
    pub boundaries: Vec<BoundaryPoint>,
    pub tolerance: Tolerances,
}

pub const BOUNDARY_RESOLUTION: f64 = 1e-6;

/// Admissibility status of one point of the real parametrization.
pub fn classify(basis: &NodeBasis, family: Family, point: &[f64], tol: &Tolerances) -> CellStatus {
    let dc = match from_real_params(basis, family, point) {
        Ok(dc) => dc,
        Err(e) => return CellStatus::Invalid(e.to_string()),
    };
    match is_admissible_with(basis, &dc, tol) {
        Ok(true) => CellStatus::Admissible,
        Ok(false) => CellStatus::Inadmissible,
        Err(Error::Tolerance { .. }) => CellStatus::Borderline,
        Err(e) => CellStatus::Invalid(e.to_string()),
    }
}

/// Bisects `[lo, hi]` on column `x`; `rising` means the admissible side is
/// `hi`.
#[allow(clippy::too_many_arguments)]
pub fn bisect_boundary(
    basis: &NodeBasis,
    family: Family,
    slice: &Slice,
    x: f64,
    mut lo: f64,
    mut hi: f64,
    rising: bool,
    tol: &Tolerances,
) -> BoundaryPoint {
    let admissible_at = |y: f64| {
        let mut p = slice.base.clone();
        p[slice.x_index] = x;
        p[slice.y_index] = y;
        from_real_params(basis, family, &p)
            .and_then(|dc| delta(basis, &dc))
            .and_then(|f| is_positive_real_with(&f, tol))
            .is_ok_and(|r| r.is_pr)
    };
    while hi - lo > BOUNDARY_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if admissible_at(mid) != rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    BoundaryPoint {
        x,
        y: 0.5 * (lo + hi),
        rising,
    }
}

fn grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| min + (max - min) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Admissibility over an `nx` by `ny` grid of a two-coordinate slice, with
/// each column's admissibility changes refined by bisection. Columns are
/// evaluated on separate threads.
pub fn region_scan(
    basis: &NodeBasis,
    family: Family,
    slice: &Slice,
    window: Window,
    resolution: (usize, usize),
    tol: &Tolerances,
) -> Result<RegionSample> {
    let (nx, ny) = resolution;
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 2 per axis, got {nx}x{ny}"
        )));
    }
    let m = basis.m();
    if slice.base.len() != m
        || slice.x_index >= m
        || slice.y_index >= m
        || slice.x_index == slice.y_index
    {
        return Err(Error::InvalidArgument(format!(
            "slice indices ({}, {}) and base of length {} do not fit {m} coordinates",
            slice.x_index,
            slice.y_index,
            slice.base.len()
        )));
    }
    if !(window.x_min < window.x_max && window.y_min < window.y_max) {
        return Err(Error::InvalidArgument("empty window".into()));
    }
    let xs = grid(window.x_min, window.x_max, nx);
    let ys = grid(window.y_min, window.y_max, ny);

    let column = |x: f64| -> (Vec<RegionCell>, Vec<BoundaryPoint>) {
        let cells: Vec<RegionCell> = ys
            .iter()
            .map(|&y| {
                let mut p = slice.base.clone();
                p[slice.x_index] = x;
                p[slice.y_index] = y;
                RegionCell {
                    x,
                    y,
                    status: classify(basis, family, &p, tol),
                }
            })
            .collect();
        let boundaries = cells
            .windows(2)
            .filter(|w| w[0].admissible() != w[1].admissible())
            .map(|w| {
                bisect_boundary(
                    basis,
                    family,
                    slice,
                    x,
                    w[0].y,
                    w[1].y,
                    w[1].admissible(),
                    tol,
                )
            })
            .collect();
        (cells, boundaries)
    };

    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(nx);
    let chunk = nx.div_ceil(workers);
    let columns: Vec<(Vec<RegionCell>, Vec<BoundaryPoint>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = xs
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().map(|&x| column(x)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("region worker panicked"))
            .collect()
    });

    let mut cells = Vec::with_capacity(nx * ny);
    let mut boundaries = Vec::new();
    for (c, b) in columns {
        cells.extend(c);
        boundaries.extend(b);
    }
    Ok(RegionSample {
        family,
        slice: slice.clone(),
        window,
        cells,
        boundaries,
        tolerance: *tol,
    })
}
