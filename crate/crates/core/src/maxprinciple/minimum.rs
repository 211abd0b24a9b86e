use serde::Serialize;

use super::{sample_profiles, NormProfile, SamplingConfig};
use crate::error::{Error, Result};
use crate::linalg::{is_invertible, Invertibility};
use crate::optimize::nelder_mead;
use crate::quaternion::Quaternion;
use crate::series::MatrixSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinVerdict {
    /// All singular values share the minimizer and `F` is singular there.
    Consistent,
    /// All singular values share the minimizer yet `F` is invertible there.
    Violation,
    /// Some singular value is smaller elsewhere; the theorem says nothing.
    HypothesisNotSatisfied,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinSingularReport {
    /// Refined minimizer of the smallest singular value.
    pub q_star: Quaternion,
    pub singular_values: Vec<f64>,
    /// Smallest sampled value of each `s_k`.
    pub sampled_minima: Vec<f64>,
    pub hypothesis_met: bool,
    pub invertibility: Invertibility,
    pub verdict: MinVerdict,
    pub seed: u64,
}

/// Locates the minimizer `q*` of the smallest singular value (best sample,
/// then Nelder-Mead inside the ball) and, if every `s_k` is minimized there
/// within `slack`, checks that `F(q*)` is singular.
pub fn check_min_singular_invertibility(
    f: &MatrixSeries,
    cfg: &SamplingConfig,
    slack: f64,
) -> Result<MinSingularReport> {
    let variation: f64 = f.coeffs()[1..].iter().map(|c| c.frobenius_norm()).sum();
    if variation == 0.0 {
        return Err(Error::Precondition { reason: "F is constant".into(), measured: 0.0 });
    }
    let n = f.dim();
    let s = sample_profiles(f, cfg)?;
    let points: Vec<&Quaternion> = s.interior.iter().chain(&s.boundary).collect();
    let profs: Vec<&NormProfile> = s.interior_profiles.iter().chain(&s.boundary_profiles).collect();
    let smin = |p: &NormProfile| p.singular_values[n - 1];
    let start = (0..profs.len()).fold(0, |b, i| if smin(profs[i]) < smin(profs[b]) { i } else { b });
    let sampled_minima: Vec<f64> =
        (0..n).map(|k| profs.iter().map(|p| p.singular_values[k]).fold(f64::INFINITY, f64::min)).collect();

    let center = Quaternion::real(f.center());
    let limit = 0.999 * f.radius();
    let cost = |x: &[f64; 4]| {
        let q = Quaternion::new(x[0], x[1], x[2], x[3]);
        if (q - center).norm() >= limit {
            return f64::INFINITY;
        }
        f.eval(q).and_then(|m| NormProfile::of(&m)).map_or(f64::INFINITY, |p| p.singular_values[n - 1])
    };
    let p0 = *points[start];
    let (x, _) = nelder_mead(cost, [p0.w, p0.x, p0.y, p0.z], 0.05 * f.radius(), 20_000, 1e-15);
    let refined = Quaternion::new(x[0], x[1], x[2], x[3]);
    let q_star = if cost(&x) <= smin(profs[start]) { refined } else { p0 };

    let m = f.eval(q_star)?;
    let profile = NormProfile::of(&m)?;
    let hypothesis_met =
        profile.singular_values.iter().zip(&sampled_minima).all(|(v, lo)| *v <= lo + slack * lo.abs().max(1.0));
    let invertibility = is_invertible(&m)?;
    let verdict = match (hypothesis_met, invertibility.invertible) {
        (false, _) => MinVerdict::HypothesisNotSatisfied,
        (true, false) => MinVerdict::Consistent,
        (true, true) => MinVerdict::Violation,
    };
    Ok(MinSingularReport {
        q_star,
        singular_values: profile.singular_values,
        sampled_minima,
        hypothesis_met,
        invertibility,
        verdict,
        seed: cfg.seed,
    })
}
