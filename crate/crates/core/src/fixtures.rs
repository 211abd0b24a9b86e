//! Seeded random fixtures: quaternions, unitaries, polynomials and
//! matrix functions whose norm maximum is known by construction.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{operator_norm, QuatMatrix, QuatVector};
use crate::quaternion::Quaternion;
use crate::sampling::chunk_rng;
use crate::series::{MatrixSeries, ScalarSeries};

/// Independent generator for fixture `index` under `seed`.
pub fn fixture_rng(seed: u64, index: usize) -> ChaCha8Rng {
    chunk_rng(seed ^ 0xF1C5_0000_0000_0000, index)
}

/// Quaternion with independent standard normal components.
pub fn gaussian_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

pub fn unit_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    crate::sampling::unit_direction(rng)
}

pub fn gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> QuatMatrix {
    QuatMatrix::from_fn(rows, cols, |_, _| gaussian_quaternion(rng))
}

/// Orthonormalizes the columns of a full-rank square matrix over the right span.
fn orthonormal_columns(m: &QuatMatrix) -> QuatMatrix {
    let n = m.cols();
    let mut cols: Vec<QuatVector> = Vec::with_capacity(n);
    for j in 0..n {
        let mut w = m.column(j);
        for _ in 0..2 {
            for u in &cols {
                w = w.sub(&u.right_scale(QuatVector::inner(&w, u)));
            }
        }
        cols.push(w.scale(1.0 / w.norm()));
    }
    QuatMatrix::from_fn(m.rows(), n, |i, j| cols[j].0[i])
}

/// Unitary matrix from Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> QuatMatrix {
    orthonormal_columns(&gaussian_matrix(n, n, rng))
}

/// Real orthogonal matrix from Gram-Schmidt on a real Gaussian matrix.
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> QuatMatrix {
    let m = QuatMatrix::from_fn(n, n, |_, _| Quaternion::real(rng.sample(StandardNormal)));
    orthonormal_columns(&m)
}

/// Scalar polynomial of the given degree with Gaussian coefficients.
pub fn random_scalar_polynomial<R: Rng>(degree: usize, radius: f64, rng: &mut R) -> ScalarSeries {
    let coeffs = (0..=degree).map(|_| gaussian_quaternion(rng).scale(0.5)).collect();
    ScalarSeries::new(coeffs, radius).expect("finite coefficients and a positive radius")
}

/// `n x n` matrix polynomial of the given degree with Gaussian coefficients.
pub fn random_matrix_polynomial<R: Rng>(n: usize, degree: usize, radius: f64, rng: &mut R) -> MatrixSeries {
    let coeffs = (0..=degree).map(|_| gaussian_matrix(n, n, rng).scale(0.5)).collect();
    MatrixSeries::new(coeffs, radius).expect("finite coefficients and a positive radius")
}

/// A function `F = U diag(1, H(q)) V` on the unit ball with
/// `sum_k |H_k| = h_total < 1`, so that `|F(q)| <= 1 = |F(0)|`.
#[derive(Debug, Clone)]
pub struct NormMaxFixture {
    pub series: MatrixSeries,
    pub u: QuatMatrix,
    pub v: QuatMatrix,
    pub h: MatrixSeries,
}

/// Builds a [`NormMaxFixture`] of size `n >= 2` and the given degree.
///
/// `U = R diag(p, 1, ..., 1)` with `R` real orthogonal and `p` a unit
/// quaternion, `V` a general unitary. Keeping the trailing columns of `U` real
/// makes `U (q^k H_k) = q^k (U H_k)`, so the coefficientwise product is also the
/// pointwise product and the norm bound holds at every point.
pub fn norm_max_fixture<R: Rng>(n: usize, degree: usize, h_total: f64, rng: &mut R) -> NormMaxFixture {
    assert!(n >= 2, "fixture needs n >= 2");
    let r = random_orthogonal(n, rng);
    let mut phase = vec![Quaternion::ONE; n];
    phase[0] = unit_quaternion(rng);
    let u = &r * &QuatMatrix::diag(&phase);
    let v = random_unitary(n, rng);
    let raw: Vec<QuatMatrix> = (0..=degree).map(|_| gaussian_matrix(n - 1, n - 1, rng)).collect();
    let total: f64 = raw.iter().map(operator_norm).sum();
    let h_coeffs: Vec<QuatMatrix> = raw.iter().map(|c| c.scale(h_total / total)).collect();
    let h = MatrixSeries::new(h_coeffs, 1.0).expect("valid coefficients");
    let series = assemble_fixture(&u, &v, &h);
    NormMaxFixture { series, u, v, h }
}

/// Coefficients `U diag(delta_k0, H_k) V`.
pub fn assemble_fixture(u: &QuatMatrix, v: &QuatMatrix, h: &MatrixSeries) -> MatrixSeries {
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, hk)| {
            let top = if k == 0 { Quaternion::ONE } else { Quaternion::ZERO };
            &(u * &QuatMatrix::block_diag(&QuatMatrix::diag(&[top]), hk)) * v
        })
        .collect();
    MatrixSeries::with_center(coeffs, h.radius(), h.center()).expect("valid coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = fixture_rng(1, 0);
        for n in 1..5 {
            let u = random_unitary(n, &mut rng);
            assert!((&u.adjoint() * &u).max_abs_diff(&QuatMatrix::identity(n)) < 1e-13);
            let r = random_orthogonal(n, &mut rng);
            assert!(r.entries().iter().all(|q| q.is_real()));
            assert!((&r.adjoint() * &r).max_abs_diff(&QuatMatrix::identity(n)) < 1e-13);
        }
    }

    #[test]
    fn fixture_matches_its_pointwise_form() {
        let mut rng = fixture_rng(2, 0);
        let fx = norm_max_fixture(3, 3, 0.9, &mut rng);
        for q in crate::sampling::sample(crate::sampling::Region::Ball { radius: 0.99 }, 50, 4).unwrap() {
            let pointwise =
                &(&fx.u * &QuatMatrix::block_diag(&QuatMatrix::identity(1), &fx.h.eval(q).unwrap())) * &fx.v;
            let f = fx.series.eval(q).unwrap();
            assert!(f.max_abs_diff(&pointwise) < 1e-13);
            assert!(operator_norm(&f) <= 1.0 + 1e-12);
        }
    }
}
