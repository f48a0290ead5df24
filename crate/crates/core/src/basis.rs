//! Interpolation data and the node basis: the node polynomial `eta` with the
//! nodes as roots, and its monic divisors `phi_j = eta / (s - x_j)`.
//!
//! Data is kept closed under conjugation. A non-real node is always stored
//! as an adjacent pair, the member with positive imaginary part first, and
//! every per-node coefficient vector in the crate follows this order.

use crate::error::{Error, Result};
use crate::poly::{Complex, RealPoly};

/// Position of a node inside the conjugation pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Real,
    /// Positive imaginary part; the next node is its conjugate.
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationData {
    nodes: Vec<Complex>,
    targets: Vec<Complex>,
    kinds: Vec<NodeKind>,
    completed: bool,
}

impl InterpolationData {
    pub fn nodes(&self) -> &[Complex] {
        &self.nodes
    }

    pub fn targets(&self) -> &[Complex] {
        &self.targets
    }

    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn m(&self) -> usize {
        self.nodes.len()
    }

    /// True when missing conjugate nodes were appended during normalization.
    pub fn completed(&self) -> bool {
        self.completed
    }

    /// `1 + max |x_j|`, the scale of every node-relative tolerance.
    pub fn scale(&self) -> f64 {
        node_scale(&self.nodes)
    }

    /// Same nodes, new targets. The targets must follow the conjugation
    /// pattern of the nodes.
    pub fn with_targets(&self, targets: Vec<Complex>) -> Result<InterpolationData> {
        if targets.len() != self.m() {
            return Err(Error::LengthMismatch {
                nodes: self.m(),
                targets: targets.len(),
            });
        }
        check_pattern(&self.kinds, &targets, "targets")?;
        Ok(InterpolationData {
            targets,
            ..self.clone()
        })
    }
}

fn node_scale(nodes: &[Complex]) -> f64 {
    1.0 + nodes.iter().fold(0.0f64, |m, x| m.max(x.norm()))
}

fn is_real_value(z: Complex) -> bool {
    z.im.abs() <= 1e-12 * (1.0 + z.norm())
}

/// Validates raw data and closes it under conjugation.
///
/// Node order is preserved except that each non-real node is emitted as an
/// adjacent `(upper, lower)` pair at the position of its first appearance.
pub fn normalize_data(raw_nodes: &[Complex], raw_targets: &[Complex]) -> Result<InterpolationData> {
    if raw_nodes.len() != raw_targets.len() {
        return Err(Error::LengthMismatch {
            nodes: raw_nodes.len(),
            targets: raw_targets.len(),
        });
    }
    if raw_nodes.is_empty() {
        return Err(Error::NoNodes);
    }
    let finite = |z: &Complex| z.re.is_finite() && z.im.is_finite();
    if !raw_nodes.iter().all(finite) {
        return Err(Error::NonFinite("nodes"));
    }
    if !raw_targets.iter().all(finite) {
        return Err(Error::NonFinite("targets"));
    }
    if let Some((index, x)) = raw_nodes
        .iter()
        .enumerate()
        .find(|(_, x)| x.re.is_nan() || x.re >= 0.0)
    {
        return Err(Error::NodeDomain {
            index,
            re: x.re,
            im: x.im,
        });
    }

    let scale = node_scale(raw_nodes);
    let pair_tol = 1e-9 * scale;
    let mut used = vec![false; raw_nodes.len()];
    let mut nodes = Vec::with_capacity(raw_nodes.len() + 1);
    let mut targets = Vec::with_capacity(raw_nodes.len() + 1);
    let mut kinds = Vec::with_capacity(raw_nodes.len() + 1);
    let mut completed = false;

    for i in 0..raw_nodes.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let (x, y) = (raw_nodes[i], raw_targets[i]);
        if x.im.abs() <= 1e-12 * scale {
            if !is_real_value(y) {
                return Err(Error::Conjugation(format!(
                    "real node {} carries non-real target {y}",
                    x.re
                )));
            }
            nodes.push(Complex::new(x.re, 0.0));
            targets.push(Complex::new(y.re, 0.0));
            kinds.push(NodeKind::Real);
            continue;
        }
        let partner = (i + 1..raw_nodes.len())
            .find(|&j| !used[j] && (raw_nodes[j] - x.conj()).norm() <= pair_tol);
        match partner {
            Some(j) => {
                used[j] = true;
                let yj = raw_targets[j];
                if (yj - y.conj()).norm() > 1e-9 * (1.0 + y.norm()) {
                    return Err(Error::Conjugation(format!(
                        "conjugate nodes {x} and {} carry non-conjugate targets {y} and {yj}",
                        raw_nodes[j]
                    )));
                }
            }
            None => completed = true,
        }
        let (xu, yu) = if x.im > 0.0 {
            (x, y)
        } else {
            (x.conj(), y.conj())
        };
        nodes.extend([xu, xu.conj()]);
        targets.extend([yu, yu.conj()]);
        kinds.extend([NodeKind::Upper, NodeKind::Lower]);
    }

    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if (nodes[a] - nodes[b]).norm() <= pair_tol {
                return Err(Error::DuplicateNode {
                    first: a,
                    second: b,
                });
            }
        }
    }

    Ok(InterpolationData {
        nodes,
        targets,
        kinds,
        completed,
    })
}

/// Checks that `values` follow the conjugation pattern `kinds`: real entries
/// at real nodes, conjugate entries at each conjugate pair.
pub(crate) fn check_pattern(kinds: &[NodeKind], values: &[Complex], what: &str) -> Result<()> {
    for (j, kind) in kinds.iter().enumerate() {
        let v = values[j];
        let tol = 1e-10 * (1.0 + v.norm());
        match kind {
            NodeKind::Real if v.im.abs() > tol => {
                return Err(Error::Conjugation(format!(
                    "{what}[{j}] = {v} at a real node must be real"
                )));
            }
            NodeKind::Upper if (values[j + 1] - v.conj()).norm() > tol => {
                return Err(Error::Conjugation(format!(
                    "{what}[{}] = {} is not the conjugate of {what}[{j}] = {v}",
                    j + 1,
                    values[j + 1]
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

/// `eta` and the divisors `phi_j`. A divisor belonging to a non-real node
/// has complex coefficients; only conjugation-respecting combinations of the
/// divisors are real, see [`basis_expand`].
#[derive(Clone, Debug, PartialEq)]
pub struct NodeBasis {
    eta: RealPoly,
    phi: Vec<Vec<Complex>>,
    nodes: Vec<Complex>,
    kinds: Vec<NodeKind>,
}

impl NodeBasis {
    pub fn eta(&self) -> &RealPoly {
        &self.eta
    }

    /// Ascending complex coefficients of `phi_j`.
    pub fn phi(&self, j: usize) -> &[Complex] {
        &self.phi[j]
    }

    /// `phi_j` as a real polynomial; `None` for a divisor of a non-real node.
    pub fn phi_real(&self, j: usize) -> Option<RealPoly> {
        self.phi[j]
            .iter()
            .all(|c| c.im == 0.0)
            .then(|| RealPoly::new(self.phi[j].iter().map(|c| c.re).collect()))
    }

    pub fn eval_phi(&self, j: usize, s: Complex) -> Complex {
        self.phi[j]
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    pub fn nodes(&self) -> &[Complex] {
        &self.nodes
    }

    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn m(&self) -> usize {
        self.nodes.len()
    }

    pub fn scale(&self) -> f64 {
        node_scale(&self.nodes)
    }
}

pub fn build_basis(data: &InterpolationData) -> NodeBasis {
    let nodes = data.nodes().to_vec();
    let eta = RealPoly::from_roots(&nodes).expect("normalized data is conjugate-closed");
    let phi = (0..nodes.len())
        .map(|j| {
            let mut acc = vec![Complex::new(1.0, 0.0)];
            for (k, &x) in nodes.iter().enumerate() {
                if k == j {
                    continue;
                }
                let mut next = vec![Complex::new(0.0, 0.0); acc.len() + 1];
                for (i, &a) in acc.iter().enumerate() {
                    next[i + 1] += a;
                    next[i] -= a * x;
                }
                acc = next;
            }
            // a real node's divisor is a product of real factors and
            // conjugate pairs; strip the rounding residue
            if data.kinds()[j] == NodeKind::Real {
                for c in acc.iter_mut() {
                    c.im = 0.0;
                }
            }
            acc
        })
        .collect();
    NodeBasis {
        eta,
        phi,
        nodes,
        kinds: data.kinds().to_vec(),
    }
}

/// `b * eta + sum_j coeffs[j] * phi_j` as a real polynomial.
///
/// The coefficients must follow the conjugation pattern of the nodes; the
/// imaginary residue of the sum is then rounding noise and is dropped.
pub fn basis_expand(basis: &NodeBasis, b: f64, coeffs: &[Complex]) -> Result<RealPoly> {
    let m = basis.m();
    if coeffs.len() != m {
        return Err(Error::CoefficientCount {
            expected: m,
            got: coeffs.len(),
        });
    }
    check_pattern(&basis.kinds, coeffs, "coefficient")?;
    let mut sum = vec![Complex::new(0.0, 0.0); m + 1];
    let mut magnitude = b.abs() * basis.eta.norm_inf();
    for (k, &e) in basis.eta.coeffs().iter().enumerate() {
        sum[k] += b * e;
    }
    for (j, &c) in coeffs.iter().enumerate() {
        let phi = &basis.phi[j];
        magnitude += c.norm() * phi.iter().fold(0.0f64, |a, p| a.max(p.norm()));
        for (k, &p) in phi.iter().enumerate() {
            sum[k] += c * p;
        }
    }
    let tol = 1e-10 * (1.0 + magnitude);
    if let Some(bad) = sum.iter().find(|z| z.im.abs() > tol) {
        return Err(Error::Conjugation(format!(
            "combination has imaginary coefficient {}",
            bad.im
        )));
    }
    Ok(RealPoly::new(sum.iter().map(|z| z.re).collect()))
}
