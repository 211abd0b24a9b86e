use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::schur::rational_from_parameters;
use crate::error::{Error, Result};

/// Tolerance on `|c| = 1` when reading a product from JSON.
pub const UNIMODULAR_INPUT_TOL: f64 = 1e-9;

/// `B(z) = c prod (z - a_k) / (1 - conj(a_k) z)` with `|a_k| < 1` and `|c| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlaschkeWire", into = "BlaschkeWire")]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    unimodular_constant: Complex64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlaschkeWire {
    zeros: Vec<[f64; 2]>,
    c: [f64; 2],
}

impl TryFrom<BlaschkeWire> for BlaschkeProduct {
    type Error = Error;
    fn try_from(w: BlaschkeWire) -> Result<Self> {
        if w.zeros.len() > crate::series::MAX_DEGREE {
            return Err(Error::format(format!("more than {} zeros", crate::series::MAX_DEGREE)));
        }
        let c = Complex64::new(w.c[0], w.c[1]);
        if !c.norm().is_finite() || (c.norm() - 1.0).abs() > UNIMODULAR_INPUT_TOL {
            return Err(Error::format(format!("constant must be unimodular, |c| = {}", c.norm())));
        }
        BlaschkeProduct::new(w.zeros.iter().map(|z| Complex64::new(z[0], z[1])).collect(), c / c.norm())
    }
}

impl From<BlaschkeProduct> for BlaschkeWire {
    fn from(b: BlaschkeProduct) -> Self {
        let c = b.unimodular_constant;
        BlaschkeWire { zeros: b.zeros.iter().map(|z| [z.re, z.im]).collect(), c: [c.re, c.im] }
    }
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>, unimodular_constant: Complex64) -> Result<Self> {
        if let Some(z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(Error::domain(format!("Blaschke zero {z} is not inside the unit disk")));
        }
        if (unimodular_constant.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("Blaschke constant must have modulus one"));
        }
        Ok(BlaschkeProduct { zeros, unimodular_constant })
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn unimodular_constant(&self) -> Complex64 {
        self.unimodular_constant
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(self.unimodular_constant, |acc, a| acc * (z - a) / (1.0 - a.conj() * z))
    }

    /// Numerator and denominator coefficients, lowest degree first:
    /// `P = c prod (z - a)`, `Q = prod (1 - conj(a) z)`.
    pub fn numerator_denominator(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut p = vec![self.unimodular_constant];
        let mut q = vec![Complex64::new(1.0, 0.0)];
        for a in &self.zeros {
            p = poly_mul(&p, &[-a, Complex64::new(1.0, 0.0)]);
            q = poly_mul(&q, &[Complex64::new(1.0, 0.0), -a.conj()]);
        }
        (p, q)
    }

    /// The product with Schur parameters `gammas` and unimodular stop `tau`.
    pub fn from_parameters(gammas: &[Complex64], tau: Complex64) -> Result<Self> {
        let (num, den) = rational_from_parameters(gammas, tau);
        let zeros = polynomial_roots(&num)?
            .into_iter()
            .map(|a| if a.norm() >= 1.0 { a * ((1.0 - 1e-15) / a.norm()) } else { a })
            .collect::<Vec<_>>();
        // match the constant at the probe point where the factor product is best conditioned
        let probes = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.37, 0.21),
            Complex64::new(-0.29, -0.43),
            Complex64::new(0.05, -0.61),
        ];
        let (z, prod) = probes
            .iter()
            .map(|z| (*z, zeros.iter().fold(Complex64::new(1.0, 0.0), |acc, a| acc * (z - a) / (1.0 - a.conj() * z))))
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .expect("probe list is nonempty");
        let c = horner(&num, z) / horner(&den, z) / prod;
        if !c.norm().is_finite() || c.norm() == 0.0 {
            return Err(Error::domain("could not recover the Blaschke constant"));
        }
        BlaschkeProduct::new(zeros, c / c.norm())
    }
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| acc * z + x)
}

/// Simultaneous Aberth-Ehrlich iteration, used when the companion Schur
/// iteration stalls (it can on spectra symmetric under `z -> -z`).
fn aberth(q: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = q.len() - 1;
    let lead = q[m].norm();
    let bound = 1.0 + q[..m].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    let deriv: Vec<Complex64> = q.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    let mut z: Vec<Complex64> =
        (0..m).map(|k| Complex64::from_polar(0.5 * bound, std::f64::consts::TAU * k as f64 / m as f64 + 0.4)).collect();
    for _ in 0..500 {
        let mut largest: f64 = 0.0;
        for k in 0..m {
            let ratio = horner(q, z[k]) / horner(&deriv, z[k]);
            let repulsion: Complex64 = (0..m).filter(|&l| l != k).map(|l| 1.0 / (z[k] - z[l])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                largest = largest.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if largest < 1e-15 {
            return Ok(z);
        }
    }
    if z.iter().all(|r| r.is_finite()) {
        Ok(z)
    } else {
        Err(Error::domain("polynomial root iteration did not converge"))
    }
}

/// Roots of `sum p_k z^k`: exact zeros at the origin are split off, the rest
/// come from the eigenvalues of the companion matrix, polished by Newton steps.
pub fn polynomial_roots(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let top = p.iter().rposition(|c| *c != Complex64::new(0.0, 0.0));
    let Some(top) = top else {
        return Err(Error::domain("the zero polynomial has no isolated roots"));
    };
    let low = p.iter().position(|c| *c != Complex64::new(0.0, 0.0)).expect("nonzero coefficient exists");
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let q = &p[low..=top];
    let m = q.len() - 1;
    if m == 0 {
        return Ok(roots);
    }
    let lead = q[m];
    let companion = DMatrix::from_fn(m, m, |i, j| {
        if j == m - 1 {
            -q[i] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eigen: Vec<Complex64> = match Schur::try_new(companion, 4.0 * f64::EPSILON, 100_000) {
        Some(schur) => {
            let (_, t) = schur.unpack();
            (0..m).map(|k| t[(k, k)]).collect()
        }
        None => aberth(q)?,
    };
    let deriv: Vec<Complex64> = q.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    for mut z in eigen {
        for _ in 0..3 {
            let d = horner(&deriv, z);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner(q, z) / d;
            let next = z - step;
            if !(horner(q, next).norm() < horner(q, z).norm()) {
                break;
            }
            z = next;
        }
        roots.push(z);
    }
    Ok(roots)
}
