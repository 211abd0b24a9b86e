use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::series::ComplexSeries;

/// `|gamma| >= 1 - UNIMODULAR_TOL` ends the recursion with a unimodular parameter.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Schur parameters `gamma_0, gamma_1, ...` of a function from the disk to
/// its closure; `terminal` holds the unimodular stop value when the recursion
/// ended on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurParameters {
    pub gammas: Vec<Complex64>,
    pub terminal: Option<Complex64>,
}

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Runs `g_{k+1} = (g_k - gamma_k) / (z (1 - conj(gamma_k) g_k))` on the
/// Taylor coefficients, for at most `depth` steps.
///
/// A parameter of modulus above `1 + slack` means `g` is not a Schur function.
pub fn schur_parameters(g: &ComplexSeries, depth: usize, slack: f64) -> Result<SchurParameters> {
    let mut cur: Vec<Complex64> = (0..=depth).map(|k| g.0.get(k).copied().unwrap_or_else(czero)).collect();
    let mut gammas = Vec::with_capacity(depth);
    while gammas.len() < depth {
        let gamma = cur[0];
        let m = gamma.norm();
        if m > 1.0 + slack {
            return Err(Error::domain(format!(
                "Schur parameter {} has modulus {m}; the function leaves the closed disk",
                gammas.len()
            )));
        }
        if m >= 1.0 - UNIMODULAR_TOL {
            return Ok(SchurParameters { gammas, terminal: Some(gamma / m) });
        }
        gammas.push(gamma);
        if cur.len() < 2 {
            break;
        }
        // numerator (g - gamma) / z, denominator 1 - conj(gamma) g
        let num = &cur[1..];
        let den: Vec<Complex64> = cur
            .iter()
            .enumerate()
            .map(|(k, c)| if k == 0 { 1.0 - gamma.conj() * c } else { -gamma.conj() * c })
            .collect();
        let mut next = vec![czero(); num.len()];
        for n in 0..num.len() {
            let mut acc = num[n];
            for k in 1..=n {
                acc -= den[k] * next[n - k];
            }
            next[n] = acc / den[0];
        }
        cur = next;
    }
    Ok(SchurParameters { gammas, terminal: None })
}

/// Numerator and denominator of the degree-`d` function with parameters
/// `gammas` and unimodular stop `tau`:
/// `b <- (gamma + z b) / (1 + conj(gamma) z b)` from `b = tau` backwards.
pub(crate) fn rational_from_parameters(gammas: &[Complex64], tau: Complex64) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut num = vec![tau];
    let mut den = vec![Complex64::new(1.0, 0.0)];
    for gamma in gammas.iter().rev() {
        let len = num.len() + 1;
        let mut n2 = vec![czero(); len];
        let mut d2 = vec![czero(); len];
        for (k, d) in den.iter().enumerate() {
            n2[k] += gamma * d;
            d2[k] += d;
        }
        for (k, n) in num.iter().enumerate() {
            n2[k + 1] += n;
            d2[k + 1] += gamma.conj() * n;
        }
        num = n2;
        den = d2;
    }
    (num, den)
}

/// Evaluates the same recursion pointwise.
pub(crate) fn eval_parameters(gammas: &[Complex64], tau: Complex64, z: Complex64) -> Complex64 {
    gammas.iter().rev().fold(tau, |b, gamma| (gamma + z * b) / (1.0 + gamma.conj() * z * b))
}

/// The unimodular stop used when truncating at depth `d`: `gamma_d / |gamma_d|`, or `1`.
fn stop_value(params: &SchurParameters, d: usize) -> Complex64 {
    match params.gammas.get(d) {
        Some(g) if g.norm() > 0.0 => g / g.norm(),
        Some(_) => Complex64::new(1.0, 0.0),
        None => params.terminal.unwrap_or(Complex64::new(1.0, 0.0)),
    }
}

/// Result of the complex approximation step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexApprox {
    pub blaschke: BlaschkeProduct,
    pub parameters: SchurParameters,
    pub depth: usize,
    /// Sup of `|g - B|` over the check points, measured on the zero form of `B`.
    pub measured_sup: f64,
    /// Sup error of the truncation at each depth tried, in order.
    pub error_trace: Vec<f64>,
}

/// Points where complex errors are measured: the circle `|z| = rho` and a
/// seeded sample of the disk.
pub(crate) fn check_points(rho: f64, count: usize, seed: u64) -> Vec<Complex64> {
    let ring = count / 2;
    let mut pts: Vec<Complex64> =
        (0..ring).map(|k| Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / ring as f64)).collect();
    pts.extend(crate::sampling::sample_disk(rho, count - ring, seed));
    pts
}

/// Options for the complex and quaternionic approximation steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxOptions {
    /// Radius of the compact disk or ball where the error is certified.
    pub rho: f64,
    pub max_depth: usize,
    /// Number of check points.
    pub samples: usize,
    pub seed: u64,
    /// Slack for the Schur-class test.
    pub schur_slack: f64,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions { rho: 0.9, max_depth: 64, samples: 10_000, seed: 0, schur_slack: 1e-9 }
    }
}

/// Approximates a Schur function `g` on `|z| <= rho` by a finite Blaschke
/// product within `target`, raising the Schur truncation depth until the
/// measured error is below the target.
pub fn complex_inner_approx(g: &ComplexSeries, target: f64, opts: &ApproxOptions) -> Result<ComplexApprox> {
    if !(opts.rho > 0.0 && opts.rho < 1.0) {
        return Err(Error::domain(format!("rho must lie in (0, 1), got {}", opts.rho)));
    }
    if !(target > 0.0) {
        return Err(Error::domain("approximation target must be positive"));
    }
    let disk = check_points(0.999, 2048, opts.seed ^ 0x5C);
    let sup = disk.iter().map(|z| g.eval(*z).norm()).fold(0.0, f64::max);
    if sup > 1.0 + opts.schur_slack {
        return Err(Error::domain(format!("function is not Schur: sampled sup |g| = {sup}")));
    }
    let params = schur_parameters(g, opts.max_depth, opts.schur_slack)?;
    let points = check_points(opts.rho, opts.samples.clamp(64, 4096), opts.seed);
    let values: Vec<Complex64> = points.iter().map(|z| g.eval(*z)).collect();
    let sup_error = |f: &dyn Fn(Complex64) -> Complex64| {
        points.iter().zip(&values).map(|(z, v)| (v - f(*z)).norm()).fold(0.0, f64::max)
    };
    let max_d = params.gammas.len();
    let mut trace = Vec::new();
    let mut best = f64::INFINITY;
    for d in 0..=max_d {
        let tau = stop_value(&params, d);
        let gammas = &params.gammas[..d];
        let err = sup_error(&|z| eval_parameters(gammas, tau, z));
        trace.push(err);
        best = best.min(err);
        let exact = d == max_d && params.terminal.is_some();
        if err < target || exact {
            let blaschke = BlaschkeProduct::from_parameters(gammas, tau)?;
            let measured = sup_error(&|z| blaschke.eval(z));
            best = best.min(measured);
            if measured < target {
                return Ok(ComplexApprox {
                    blaschke,
                    parameters: params,
                    depth: d,
                    measured_sup: measured,
                    error_trace: trace,
                });
            }
        }
    }
    Err(Error::Convergence { depth: opts.max_depth, best, target })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Taylor coefficients of (z + a) / (1 + conj(a) z).
    fn mobius(a: Complex64, len: usize) -> ComplexSeries {
        let mut out = vec![a];
        let mut p = c(1.0, 0.0);
        // (1 - |a|^2) (-conj a)^(n-1)
        for _ in 1..len {
            out.push(p * (1.0 - a.norm_sqr()));
            p *= -a.conj();
        }
        ComplexSeries(out)
    }

    #[test]
    fn mobius_terminates_after_one_step() {
        let p = schur_parameters(&mobius(c(0.5, 0.0), 40), 10, 1e-9).unwrap();
        assert_eq!(p.gammas.len(), 1);
        assert!((p.gammas[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((p.terminal.unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn identity_has_parameters_zero_then_one() {
        let p = schur_parameters(&ComplexSeries(vec![c(0.0, 0.0), c(1.0, 0.0)]), 10, 1e-9).unwrap();
        assert_eq!(p.gammas, vec![c(0.0, 0.0)]);
        assert_eq!(p.terminal, Some(c(1.0, 0.0)));
    }

    #[test]
    fn non_schur_is_rejected() {
        assert!(schur_parameters(&ComplexSeries(vec![c(2.0, 0.0)]), 5, 1e-9).is_err());
        let opts = ApproxOptions::default();
        assert!(matches!(
            complex_inner_approx(&ComplexSeries(vec![c(0.0, 0.0), c(2.0, 0.0)]), 1e-3, &opts),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn recursion_matches_rational_form() {
        let gammas = [c(0.3, -0.2), c(0.0, 0.5), c(-0.1, 0.0)];
        let tau = c(0.6, 0.8);
        let (n, d) = rational_from_parameters(&gammas, tau);
        let z = c(0.2, 0.7);
        let eval = |p: &[Complex64]| p.iter().rev().fold(c(0.0, 0.0), |acc, x| acc * z + x);
        assert!((eval(&n) / eval(&d) - eval_parameters(&gammas, tau, z)).norm() < 1e-14);
    }

    #[test]
    fn identity_is_recovered_exactly() {
        let r = complex_inner_approx(&ComplexSeries(vec![c(0.0, 0.0), c(1.0, 0.0)]), 1e-12, &ApproxOptions::default())
            .unwrap();
        assert_eq!(r.depth, 1);
        assert!(r.measured_sup < 1e-15);
    }

    #[test]
    fn mobius_is_recovered_at_depth_one() {
        let g = mobius(c(0.5, 0.0), 65);
        let r = complex_inner_approx(&g, 1e-12, &ApproxOptions::default()).unwrap();
        assert_eq!(r.depth, 1);
        assert!(r.measured_sup < 1e-12, "{}", r.measured_sup);
    }

    #[test]
    fn zero_function_needs_a_high_power() {
        let r = complex_inner_approx(&ComplexSeries(vec![c(0.0, 0.0)]), 2.5e-3, &ApproxOptions::default()).unwrap();
        // |z^d| = 0.9^d on the circle
        assert_eq!(r.depth, 57);
        assert!((r.measured_sup - 0.9f64.powi(57)).abs() < 1e-12);
    }
}
