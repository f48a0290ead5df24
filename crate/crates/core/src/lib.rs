//! Interpolation of data in the open left half-plane by rational positive
//! real functions of degree at most `m`.
//!
//! For nodes `x_1..x_m` with `Re x_j < 0` and arbitrary targets `y_j`, the
//! crate builds the node polynomial `eta` and its divisors `phi_j`, picks a
//! denominator from one of two families, and returns
//! `f = (nu + r eta) / d` (or its reciprocal counterpart) together with the
//! smallest `r` that makes `f` positive real.
//!
//! ```
//! use pr_interp::{normalize_data, solve, Complex, SolveOptions};
//!
//! let c = |re| Complex::new(re, 0.0);
//! let data = normalize_data(&[c(-1.0), c(-3.0)], &[c(1.0), c(3.0)]).unwrap();
//! let out = solve(&data, &SolveOptions::default()).unwrap();
//! assert!(out.entries.iter().all(|e| e.pr_report.is_pr));
//! ```

pub mod basis;
pub mod cli;
pub mod error;
pub mod families;
pub mod interp;
pub mod poly;
pub mod prtest;

pub use basis::{build_basis, normalize_data, InterpolationData, NodeBasis, NodeKind};
pub use error::{Error, Result};
pub use families::{
    default_coeffs, delta, denominator, from_real_params, is_admissible, region_scan,
    to_real_params, DenomCoeffs, Family, RegionSample, Slice, Window,
};
pub use interp::{
    hat_interpolant, hat_numerator, interpolant, numerator, p_fn, r_min, solve, Attained,
    Direction, Interpolant, RMinResult, RMode, SolveOptions, SolveOutcome,
};
pub use poly::{nonneg_on_halfline, Complex, RationalFn, RealPoly};
pub use prtest::{
    is_positive_real, is_strictly_positive_real, real_part_numerator, PrReport, Tolerances,
};
