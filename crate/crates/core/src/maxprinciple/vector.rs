use rayon::prelude::*;
use serde::Serialize;

use super::{argmax, derive_seed, MatrixFunction, SamplingConfig};
use crate::error::{Error, Result};
use crate::linalg::{maximizing_vector, operator_norm, QuatVector};
use crate::series::MatrixSeries;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizingVectorReport {
    pub q0: f64,
    /// `|F(q0)|`.
    pub norm: f64,
    pub x0: QuatVector,
    /// `sum_{k >= 1} |F_k x0|^2` for the expansion about `q0`.
    pub leak: f64,
    /// Largest `|F(q) x0 - F(q0) x0|` over the sampled points.
    pub constancy_error: f64,
    /// Largest `|F(q)| - |F(q0)|` seen while certifying the hypothesis.
    pub hypothesis_slack: f64,
    pub leak_tolerance: f64,
    pub constancy_tolerance: f64,
    pub passed: bool,
    pub seed: u64,
}

/// Number of points at which `F(q) x0` is compared with `F(q0) x0`.
pub const CONSTANCY_POINTS: usize = 100;

/// Checks that the maximizing vector of `F(q0)` is annihilated by every
/// higher coefficient of the expansion about the real point `q0`, so that
/// `F(q) x0` is constant.
///
/// The hypothesis `|F(q)| <= |F(q0)|` is certified on samples first; a
/// measured excess above `cfg.tolerance` is a precondition error.
pub fn check_maximizing_vector_theorem(
    f: &MatrixSeries,
    q0: f64,
    cfg: &SamplingConfig,
    leak_tolerance: f64,
    constancy_tolerance: f64,
) -> Result<MaximizingVectorReport> {
    let g = f.recenter(q0)?;
    let f0 = &g.coeffs()[0];
    let norm = operator_norm(f0);
    let hypothesis_slack = hypothesis_slack(&g, norm, cfg)?;
    if hypothesis_slack > cfg.tolerance {
        return Err(Error::Precondition {
            reason: format!("sampled norm exceeds |F(q0)| = {norm} at some point"),
            measured: hypothesis_slack,
        });
    }
    let x0 = maximizing_vector(f0)?;
    let leak: f64 = g.coeffs()[1..].iter().map(|c| c.mul_vec(&x0).norm().powi(2)).sum();
    let image = f0.mul_vec(&x0);
    let points = g.domain().sample_interior(CONSTANCY_POINTS, derive_seed(cfg.seed, 7))?;
    let diffs: Vec<f64> =
        points.par_iter().map(|q| Ok(g.eval(*q)?.mul_vec(&x0).sub(&image).norm())).collect::<Result<_>>()?;
    let constancy_error = diffs.into_iter().fold(0.0, f64::max);
    Ok(MaximizingVectorReport {
        q0,
        norm,
        x0,
        leak,
        constancy_error,
        hypothesis_slack,
        leak_tolerance,
        constancy_tolerance,
        passed: leak <= leak_tolerance && constancy_error <= constancy_tolerance,
        seed: cfg.seed,
    })
}

/// Largest sampled `|F(q)| - bound` over interior and boundary samples.
pub(crate) fn hypothesis_slack(f: &dyn MatrixFunction, bound: f64, cfg: &SamplingConfig) -> Result<f64> {
    let s = super::sample_profiles(f, cfg)?;
    let all = s.interior_profiles.iter().chain(&s.boundary_profiles).map(|p| p.singular_values[0] - bound);
    Ok(argmax(all).1)
}
