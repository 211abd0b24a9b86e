use rayon::prelude::*;
use serde::Serialize;

use super::{derive_seed, vector::hypothesis_slack, MatrixFunction, SamplingConfig};
use crate::error::{Error, Result};
use crate::linalg::{maximizing_vector, operator_norm, unitary_complete, QuatMatrix, QuatVector};
use crate::quaternion::Quaternion;
use crate::series::MatrixSeries;

/// `F(q) = U diag(s, G(q)) V` with constant unitary `U`, `V` and `s = |F(q0)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub q0: Quaternion,
    pub s: f64,
    pub u: QuatMatrix,
    pub v: QuatMatrix,
    /// Coefficients of the lower-right block; absent for `1 x 1` input or
    /// when `F` is not given as a series.
    pub g: Option<MatrixSeries>,
    pub x0: QuatVector,
    pub y0: QuatVector,
    /// Largest entry of the off-diagonal blocks of `U* F(q) V*` over the checked points.
    pub off_diagonal_residual: f64,
    /// Largest `|F(q) - U diag(s, G(q)) V|_F` over the checked points.
    pub reconstruction_residual: f64,
    /// Largest `| |F(q)| - max(s, |G(q)|) |` over the checked points.
    pub norm_residual: f64,
    /// `max(|U* U - I|, |V* V - I|)` entrywise.
    pub unitarity_residual: f64,
    pub checked_points: usize,
}

impl Decomposition {
    /// `U diag(s, G(q)) V`, with `G` taken from its coefficients.
    pub fn reconstruct(&self, q: Quaternion) -> Result<QuatMatrix> {
        let lower = match &self.g {
            Some(g) => Some(g.eval(q)?),
            None if self.u.rows() > 1 => {
                return Err(Error::domain("no coefficient form for G; reconstruction is unavailable"))
            }
            None => None,
        };
        Ok(self.assemble(lower.as_ref()))
    }

    fn assemble(&self, lower: Option<&QuatMatrix>) -> QuatMatrix {
        let top = QuatMatrix::diag(&[Quaternion::real(self.s)]);
        let middle = match lower {
            Some(g) => QuatMatrix::block_diag(&top, g),
            None => top,
        };
        &(&self.u * &middle) * &self.v
    }
}

/// Points at which the constructed decomposition is checked.
pub const DECOMPOSITION_POINTS: usize = 200;

/// Builds the decomposition at a norm maximum `q0` following the constructive
/// proof: `x0` maximizes `F(q0)`, `y0 = F(q0) x0 / s`, `X0`, `Y0` complete them
/// to unitaries, `U = Y0`, `V = X0*` and `G_k` is the lower-right block of
/// `Y0* F_k X0`.
///
/// If some sample beats `|F(q0)|` by more than `cfg.tolerance` the hypothesis
/// fails and the result is `NotApplicable`. Off-diagonal blocks larger than
/// `block_tolerance` at the checked points give a residual error.
pub fn decompose_at_max(
    f: &dyn MatrixFunction,
    q0: Quaternion,
    cfg: &SamplingConfig,
    block_tolerance: f64,
) -> Result<Decomposition> {
    let domain = f.domain();
    if !domain.contains(q0) {
        return Err(Error::domain(format!("q0 = {q0} is outside the domain")));
    }
    let n = f.dim();
    let f_q0 = f.eval(q0)?;
    let s = operator_norm(&f_q0);
    let slack = hypothesis_slack(f, s, cfg)?;
    if slack > cfg.tolerance {
        return Err(Error::NotApplicable(format!(
            "boundary max exceeds |F(q0)| = {s} by {slack:e}; the norm maximum is not attained at q0"
        )));
    }
    if s == 0.0 {
        return Err(Error::domain("F vanishes identically on the samples"));
    }
    let x0 = maximizing_vector(&f_q0)?;
    let y0 = f_q0.mul_vec(&x0).scale(1.0 / s);
    let big_x = unitary_complete(&x0, n)?;
    let big_y = unitary_complete(&y0.scale(1.0 / y0.norm()), n)?;
    let u = big_y.clone();
    let v = big_x.adjoint();
    let y_star = big_y.adjoint();

    let g = match f.as_series() {
        Some(series) if n > 1 => {
            let coeffs = series.coeffs().iter().map(|c| (&(&y_star * c) * &big_x).block(1, 1, n - 1, n - 1)).collect();
            Some(MatrixSeries::with_center(coeffs, series.radius(), series.center())?)
        }
        _ => None,
    };

    let points = domain.sample_interior(DECOMPOSITION_POINTS, derive_seed(cfg.seed, 9))?;
    let identity = QuatMatrix::identity(n);
    let unitarity_residual =
        (&u.adjoint() * &u).max_abs_diff(&identity).max((&v.adjoint() * &v).max_abs_diff(&identity));
    let mut out = Decomposition {
        q0,
        s,
        u,
        v,
        g,
        x0,
        y0,
        off_diagonal_residual: 0.0,
        reconstruction_residual: 0.0,
        norm_residual: 0.0,
        unitarity_residual,
        checked_points: points.len(),
    };
    let per_point: Vec<(f64, f64, f64)> = points
        .par_iter()
        .map(|q| {
            let fq = f.eval(*q)?;
            let inner = &(&y_star * &fq) * &big_x;
            let off = (1..n).map(|k| inner[(0, k)].norm().max(inner[(k, 0)].norm())).fold(0.0, f64::max);
            let lower = match &out.g {
                Some(g) => Some(g.eval(*q)?),
                None if n > 1 => Some(inner.block(1, 1, n - 1, n - 1)),
                None => None,
            };
            let rec = (&fq - &out.assemble(lower.as_ref())).frobenius_norm();
            let lower_norm = lower.as_ref().map_or(0.0, operator_norm);
            Ok((off, rec, (operator_norm(&fq) - s.max(lower_norm)).abs()))
        })
        .collect::<Result<_>>()?;
    for (off, rec, nr) in per_point {
        out.off_diagonal_residual = out.off_diagonal_residual.max(off);
        out.reconstruction_residual = out.reconstruction_residual.max(rec);
        out.norm_residual = out.norm_residual.max(nr);
    }
    if out.off_diagonal_residual > block_tolerance {
        return Err(Error::Residual { residual: out.off_diagonal_residual, tolerance: block_tolerance });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    fn cfg() -> SamplingConfig {
        SamplingConfig { interior: 1000, boundary: 1000, seed: 5, tolerance: 1e-9 }
    }

    #[test]
    fn diag_one_half_q_is_already_decomposed() {
        let f = MatrixSeries::new(
            vec![QuatMatrix::diag(&[Q::ONE, Q::ZERO]), QuatMatrix::diag(&[Q::ZERO, Q::real(0.5)])],
            1.0,
        )
        .unwrap();
        let d = decompose_at_max(&f, Q::ZERO, &cfg(), 1e-9).unwrap();
        assert_eq!(d.s, 1.0);
        assert!(d.u.max_abs_diff(&QuatMatrix::identity(2)) < 1e-15);
        assert!(d.v.max_abs_diff(&QuatMatrix::identity(2)) < 1e-15);
        let g = d.g.as_ref().unwrap();
        assert_eq!(g.coeffs()[1][(0, 0)], Q::real(0.5));
        assert!(d.reconstruction_residual < 1e-15 && d.norm_residual < 1e-15);
    }

    #[test]
    fn constant_unitary() {
        let w = QuatMatrix::new(2, 2, vec![Q::ZERO, Q::K, Q::I, Q::ZERO]).unwrap();
        let f = MatrixSeries::constant(w, 1.0).unwrap();
        let d = decompose_at_max(&f, Q::ZERO, &cfg(), 1e-9).unwrap();
        assert!((d.s - 1.0).abs() < 1e-14);
        let g0 = d.g.as_ref().unwrap().coeffs()[0][(0, 0)];
        assert!((g0.norm() - 1.0).abs() < 1e-14);
        assert!(d.reconstruction_residual < 1e-14 && d.unitarity_residual < 1e-14);
    }

    #[test]
    fn growing_function_is_not_applicable() {
        let f = MatrixSeries::new(vec![QuatMatrix::identity(2), QuatMatrix::identity(2)], 1.0).unwrap();
        let r = decompose_at_max(&f, Q::ZERO, &cfg(), 1e-9);
        assert!(matches!(r, Err(Error::NotApplicable(ref m)) if m.starts_with("boundary max")));
    }
}
