//! Reference checks that share no code with the library: Routh-Hurwitz on
//! denominators, dense sampling of `Re f(iw)`, and a large right half-plane
//! arc. Plus random instance generation.

#![allow(dead_code)]

use pr_interp::{normalize_data, Complex, InterpolationData, RationalFn};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn reals(v: &[f64]) -> Vec<Complex> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}

pub fn horner(coeffs: &[f64], s: Complex) -> Complex {
    coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * s + a)
}

pub fn eval(num: &[f64], den: &[f64], s: Complex) -> Complex {
    horner(num, s) / horner(den, s)
}

/// Routh array on `den` (ascending): `Some(true)` strictly Hurwitz,
/// `Some(false)` some root in the open right half-plane, `None` when a
/// first-column entry vanishes.
pub fn routh_hurwitz(den: &[f64]) -> Option<bool> {
    let mut p: Vec<f64> = den.to_vec();
    while p.last() == Some(&0.0) {
        p.pop();
    }
    let n = match p.len() {
        0 => return None,
        k => k - 1,
    };
    if n == 0 {
        return Some(true);
    }
    // descending, leading coefficient positive
    let mut a: Vec<f64> = p.iter().rev().copied().collect();
    if a[0] < 0.0 {
        a.iter_mut().for_each(|x| *x = -*x);
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut r0: Vec<f64> = a.iter().step_by(2).copied().collect();
    let mut r1: Vec<f64> = a.iter().skip(1).step_by(2).copied().collect();
    let mut column = vec![r0[0]];
    for _ in 0..n {
        let lead = r1.first().copied().unwrap_or(0.0);
        if lead.abs() <= 1e-12 * scale {
            return None;
        }
        column.push(lead);
        let mut next = Vec::with_capacity(r0.len());
        for k in 0..r0.len().saturating_sub(1) {
            let b = r1.get(k + 1).copied().unwrap_or(0.0);
            next.push(r0[k + 1] - r0[0] / lead * b);
        }
        r0 = std::mem::replace(&mut r1, next);
    }
    Some(column.iter().all(|&x| x > 0.0))
}

/// Three-valued verdict: `Some(true)` PR, `Some(false)` not PR, `None`
/// inside the decision band.
pub fn oracle_pr(f: &RationalFn, band: f64) -> Option<bool> {
    let num = f.num().coeffs().to_vec();
    let den = f.den().coeffs().to_vec();
    if num.is_empty() {
        return Some(true);
    }
    if !routh_hurwitz(&den)? {
        return Some(false);
    }
    // Re f and Re(1/f) share their sign; whichever is larger stays away
    // from zero in the tails
    let rel = |s: Complex| {
        let v = eval(&num, &den, s);
        let w = 1.0 / v;
        let a = v.re / (1.0 + v.norm() / (1.0 + s.norm()));
        let b = w.re / (1.0 + w.norm() / (1.0 + s.norm()));
        if a.abs() >= b.abs() || !b.is_finite() {
            a
        } else {
            b
        }
    };
    let mut worst = rel(c(0.0, 0.0));
    let mut worst_w = 0.0;
    let n = 100_000;
    let (lo, hi) = (1e-4f64.ln(), 1e4f64.ln());
    for k in 0..n {
        let w = (lo + (hi - lo) * k as f64 / (n - 1) as f64).exp();
        let v = rel(c(0.0, w));
        if v < worst {
            worst = v;
            worst_w = w;
        }
    }
    // golden-section refinement around the worst sample
    if worst_w > 0.0 {
        let ratio = ((hi - lo) / (n - 1) as f64).exp();
        let (mut a, mut b) = (worst_w / ratio, worst_w * ratio);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let x1 = b - g * (b - a);
            let x2 = a + g * (b - a);
            if rel(c(0.0, x1)) < rel(c(0.0, x2)) {
                b = x2;
            } else {
                a = x1;
            }
        }
        worst = worst.min(rel(c(0.0, 0.5 * (a + b))));
    }
    // large arc in the closed right half-plane
    let radius = 1e6;
    for k in 0..=200 {
        let t = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * k as f64 / 200.0;
        worst = worst.min(rel(Complex::from_polar(radius, t)));
    }
    if worst > band {
        Some(true)
    } else if worst < -band {
        Some(false)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub nodes: Vec<Complex>,
    pub targets: Vec<Complex>,
}

impl Instance {
    pub fn data(&self) -> InterpolationData {
        normalize_data(&self.nodes, &self.targets).expect("generated data is valid")
    }
}

/// Nodes with `Re x in [-4, -0.2]`, `|Im x| in [0.2, 4]` for pairs,
/// mutual distance at least 0.1; conjugate-closed; `m` nodes in total.
pub fn random_nodes(rng: &mut StdRng, m: usize) -> Vec<Complex> {
    loop {
        let mut nodes: Vec<Complex> = Vec::with_capacity(m);
        while nodes.len() < m {
            let re = rng.gen_range(-4.0..-0.2);
            if m - nodes.len() >= 2 && rng.gen_bool(0.5) {
                let im = rng.gen_range(0.2..4.0);
                nodes.push(c(re, im));
                nodes.push(c(re, -im));
            } else {
                nodes.push(c(re, 0.0));
            }
        }
        let separated = nodes
            .iter()
            .enumerate()
            .all(|(i, a)| nodes[..i].iter().all(|b| (a - b).norm() >= 0.1));
        if separated {
            return nodes;
        }
    }
}

/// Targets following the conjugation pattern of `nodes`, nonzero.
pub fn random_targets(rng: &mut StdRng, nodes: &[Complex]) -> Vec<Complex> {
    let mut out = Vec::with_capacity(nodes.len());
    let mut i = 0;
    while i < nodes.len() {
        let mut pick = || {
            let v: f64 = rng.gen_range(0.1..3.0);
            if rng.gen_bool(0.5) {
                v
            } else {
                -v
            }
        };
        if nodes[i].im == 0.0 {
            out.push(c(pick(), 0.0));
            i += 1;
        } else {
            let y = c(pick(), pick());
            out.push(y);
            out.push(y.conj());
            i += 2;
        }
    }
    out
}

pub fn random_instance(rng: &mut StdRng, max_m: usize) -> Instance {
    let m = rng.gen_range(1..=max_m);
    let nodes = random_nodes(rng, m);
    let targets = random_targets(rng, &nodes);
    Instance { nodes, targets }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
