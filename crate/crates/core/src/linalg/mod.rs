//! Quaternion matrix algebra computed through the complex adjoint map.
//!
//! Spectral quantities (operator norm, singular values, maximizing vectors,
//! invertibility) are read off the SVD of `chi(A)`, whose singular values are
//! those of `A`, each repeated twice.

mod chi;
mod complex;
mod matrix;

pub use chi::{chi, unchi, vector_from_complex, vector_to_complex, ChiBlock, STRUCTURE_TOL};
pub use complex::{ComplexMatrix, ComplexSvd};
pub use matrix::{QuatMatrix, QuatVector};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Relative rank threshold: `A` is invertible when `smin > INVERTIBILITY_TOL * max(1, smax)`.
pub const INVERTIBILITY_TOL: f64 = 1e-10;

/// Pairing tolerance for the doubled singular values of `chi(A)`.
pub const PAIRING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Norms {
    pub frobenius: f64,
    pub operator: f64,
}

pub fn norms(a: &QuatMatrix) -> Norms {
    Norms { frobenius: a.frobenius_norm(), operator: operator_norm(a) }
}

pub fn operator_norm(a: &QuatMatrix) -> f64 {
    chi::embed(a).svd().values[0]
}

/// Sorted singular values of `chi(A)` (all `2n` of them).
pub fn chi_singular_values(a: &QuatMatrix) -> Result<Vec<f64>> {
    Ok(chi(a)?.assemble().singular_values())
}

/// Singular values of a square quaternion matrix, descending, without repetition.
pub fn singular_values(a: &QuatMatrix) -> Result<Vec<f64>> {
    pair_doubled(&chi_singular_values(a)?)
}

/// Collapses a descending list in which every value appears twice.
pub fn pair_doubled(doubled: &[f64]) -> Result<Vec<f64>> {
    if !doubled.len().is_multiple_of(2) {
        return Err(Error::domain("doubled spectrum must have even length"));
    }
    let mut s = doubled.to_vec();
    s.sort_by(|x, y| y.total_cmp(x));
    s.chunks(2)
        .map(|p| {
            let (a, b) = (p[0], p[1]);
            if (a - b).abs() > PAIRING_TOL.max(PAIRING_TOL * a) {
                Err(Error::Pairing { a, b })
            } else {
                Ok(0.5 * (a + b))
            }
        })
        .collect()
}

/// A unit vector `x0` with `|A x0| = |A|`, with its first nonzero entry made
/// real and positive by a right unit scalar.
pub fn maximizing_vector(a: &QuatMatrix) -> Result<QuatVector> {
    let svd = chi::embed(a).svd();
    if svd.values[0] == 0.0 {
        return Err(Error::domain("the zero matrix has no maximizing vector"));
    }
    let top = svd.v.column(0);
    let x = vector_from_complex(&top);
    let x = x.scale(1.0 / x.norm());
    Ok(canonicalize(&x))
}

fn canonicalize(x: &QuatVector) -> QuatVector {
    match x.0.iter().find(|q| q.norm() > 1e-10) {
        Some(c) => x.right_scale(c.conj() / c.norm()),
        None => x.clone(),
    }
}

/// Completes a unit vector to an `n x n` unitary matrix whose first column is `v`.
///
/// Gram-Schmidt over the right span, using `<u, v> = v* u`; candidates are the
/// standard basis vectors taken greedily by largest residual.
pub fn unitary_complete(v: &QuatVector, n: usize) -> Result<QuatMatrix> {
    if v.len() != n || n == 0 {
        return Err(Error::domain(format!("vector of length {} cannot seed a {n}x{n} unitary", v.len())));
    }
    let nv = v.norm();
    if !nv.is_finite() || (nv - 1.0).abs() > 1e-10 {
        return Err(Error::domain(format!("unitary completion needs a unit vector, got norm {nv}")));
    }
    let mut basis: Vec<QuatVector> = vec![v.clone()];
    let mut remaining: Vec<usize> = (0..n).collect();
    while basis.len() < n {
        let mut best: Option<(usize, QuatVector, f64)> = None;
        for (slot, &k) in remaining.iter().enumerate() {
            let w = orthogonalize(&QuatVector::basis(n, k), &basis);
            let r = w.norm();
            if best.as_ref().is_none_or(|b| r > b.2 + 1e-12) {
                best = Some((slot, w, r));
            }
        }
        let (slot, w, r) = best.expect("candidate set cannot run out before the basis is complete");
        remaining.remove(slot);
        let w = orthogonalize(&w.scale(1.0 / r), &basis);
        let w = w.scale(1.0 / w.norm());
        basis.push(w);
    }
    Ok(QuatMatrix::from_fn(n, n, |i, j| basis[j].0[i]))
}

/// Two passes of classical Gram-Schmidt against an orthonormal set.
fn orthogonalize(e: &QuatVector, basis: &[QuatVector]) -> QuatVector {
    let mut w = e.clone();
    for _ in 0..2 {
        for u in basis {
            // projection onto the right span of u is u (u* w)
            let coeff: Quaternion = QuatVector::inner(&w, u);
            w = w.sub(&u.right_scale(coeff));
        }
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invertibility {
    pub invertible: bool,
    pub smin: f64,
    pub smax: f64,
    /// `smax / smin`, infinite for singular input.
    pub condition: f64,
}

pub fn is_invertible(a: &QuatMatrix) -> Result<Invertibility> {
    let s = chi_singular_values(a)?;
    let smax = s[0];
    let smin = *s.last().expect("nonempty spectrum");
    let invertible = smin > INVERTIBILITY_TOL * smax.max(1.0);
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    Ok(Invertibility { invertible, smin, smax, condition })
}
