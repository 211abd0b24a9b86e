//! Approximation of quaternionic Schur functions by rational functions built
//! from finite Blaschke products on one slice, and of `2 x 2` matrix functions
//! of constant unit norm through the decomposition at a norm maximum.

mod blaschke;
mod schur;

pub use blaschke::{polynomial_roots, BlaschkeProduct};
pub use schur::{complex_inner_approx, schur_parameters, ApproxOptions, ComplexApprox, SchurParameters};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, QuatMatrix};
use crate::maxprinciple::{decompose_at_max, sample_profiles, SamplingConfig};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::sampling::{sample, unit_direction, Region};
use crate::series::{regular_extension, split, MatrixSeries, ScalarSeries};

/// Largest degree for which the `h^{-*} * g` normal form is emitted.
pub const NORMAL_FORM_MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchurCheck {
    pub is_schur: bool,
    pub sup: f64,
}

/// Samples `|f|` on the ball of radius `0.999` (half inside, half in the
/// outer shell); Schur iff the sup is at most `1 + slack`.
pub fn is_schur(f: &ScalarSeries, samples: usize, seed: u64, slack: f64) -> Result<SchurCheck> {
    let half = (samples / 2).max(1);
    let mut points = sample(Region::Ball { radius: 0.999 }, half, seed)?;
    points.extend(sample(Region::BoundaryShell { radius: 0.999, thickness: 0.049 }, half, seed ^ 0xB0)?);
    let values: Vec<f64> = points.par_iter().map(|q| f.eval(*q).map(|v| v.norm())).collect::<Result<_>>()?;
    let sup = values.into_iter().fold(0.0, f64::max);
    Ok(SchurCheck { is_schur: sup <= 1.0 + slack, sup })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusStats {
    pub min: f64,
    pub max: f64,
}

/// `r = h^{-*} * g` with polynomial `h` and `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub h: ScalarSeries,
    pub g: ScalarSeries,
}

/// `r(x + yJ) = r1(x + yJ) + r2(x + yJ) K` on the slice `L_J`, extended regularly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuatRationalWire", into = "QuatRationalWire")]
pub struct QuatRationalApprox {
    pub j: ImaginaryUnit,
    pub k: ImaginaryUnit,
    pub r1: BlaschkeProduct,
    pub r2: BlaschkeProduct,
    pub epsilon: f64,
    pub rho: f64,
    pub measured_sup: f64,
    /// Complex sup errors of the two slice components.
    pub r1_error: f64,
    pub r2_error: f64,
    /// `|r(q)|` on sampled points of the unit sphere.
    pub boundary_modulus: Option<ModulusStats>,
    pub normal_form: Option<NormalForm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuatRationalWire {
    #[serde(rename = "type")]
    kind: String,
    #[serde(rename = "J")]
    j: ImaginaryUnit,
    #[serde(rename = "K")]
    k: ImaginaryUnit,
    r1: BlaschkeProduct,
    r2: BlaschkeProduct,
    epsilon: f64,
    rho: f64,
    measured_sup: f64,
    #[serde(default)]
    r1_error: f64,
    #[serde(default)]
    r2_error: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary_modulus: Option<ModulusStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normal_form: Option<NormalForm>,
}

const QUAT_RATIONAL: &str = "quat_rational";

impl TryFrom<QuatRationalWire> for QuatRationalApprox {
    type Error = Error;
    fn try_from(w: QuatRationalWire) -> Result<Self> {
        if w.kind != QUAT_RATIONAL {
            return Err(Error::format(format!("expected type {QUAT_RATIONAL:?}, got {:?}", w.kind)));
        }
        if !w.j.is_orthogonal(&w.k, crate::series::ORTHOGONALITY_TOL) {
            return Err(Error::format("J and K must be orthogonal"));
        }
        if !(w.rho > 0.0 && w.rho < 1.0) || !(w.epsilon > 0.0) || !w.measured_sup.is_finite() {
            return Err(Error::format("rho must lie in (0, 1), epsilon must be positive"));
        }
        Ok(QuatRationalApprox {
            j: w.j,
            k: w.k,
            r1: w.r1,
            r2: w.r2,
            epsilon: w.epsilon,
            rho: w.rho,
            measured_sup: w.measured_sup,
            r1_error: w.r1_error,
            r2_error: w.r2_error,
            boundary_modulus: w.boundary_modulus,
            normal_form: w.normal_form,
        })
    }
}

impl From<QuatRationalApprox> for QuatRationalWire {
    fn from(a: QuatRationalApprox) -> Self {
        QuatRationalWire {
            kind: QUAT_RATIONAL.into(),
            j: a.j,
            k: a.k,
            r1: a.r1,
            r2: a.r2,
            epsilon: a.epsilon,
            rho: a.rho,
            measured_sup: a.measured_sup,
            r1_error: a.r1_error,
            r2_error: a.r2_error,
            boundary_modulus: a.boundary_modulus,
            normal_form: a.normal_form,
        }
    }
}

impl QuatRationalApprox {
    /// `r1(z) + r2(z) K` at `z = x + yJ`, with `z` given as a complex number.
    pub fn eval_on_slice(&self, z: Complex64) -> Quaternion {
        self.j.embed(self.r1.eval(z)) + self.j.embed(self.r2.eval(z)) * self.k.to_quaternion()
    }

    /// Evaluates at `|q| <= 1` through the regular extension.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        if q.norm() > 1.0 + 1e-12 {
            return Err(Error::domain(format!("q = {q} lies outside the closed unit ball")));
        }
        regular_extension(|z| Ok(self.eval_on_slice(z)), self.j, q)
    }

    /// `r = h^{-*} * g` with `h = Q1 Q2` and `g = Q2 P1 + Q1 P2 K` on `L_J`, where
    /// `r1 = P1 / Q1` and `r2 = P2 / Q2`; `None` above [`NORMAL_FORM_MAX_DEGREE`].
    pub fn compute_normal_form(&self) -> Option<NormalForm> {
        if self.r1.degree().max(self.r2.degree()) > NORMAL_FORM_MAX_DEGREE {
            return None;
        }
        let (p1, q1) = self.r1.numerator_denominator();
        let (p2, q2) = self.r2.numerator_denominator();
        let h = blaschke::poly_mul(&q1, &q2);
        let a = blaschke::poly_mul(&q2, &p1);
        let b = blaschke::poly_mul(&q1, &p2);
        let kq = self.k.to_quaternion();
        let h = ScalarSeries::new(h.iter().map(|c| self.j.embed(*c)).collect(), 1.0).ok()?;
        let g =
            ScalarSeries::new(a.iter().zip(&b).map(|(x, y)| self.j.embed(*x) + self.j.embed(*y) * kq).collect(), 1.0)
                .ok()?;
        Some(NormalForm { h, g })
    }
}

/// Check points for quaternionic errors: half in the open ball of radius
/// `rho`, half in the shell just inside it.
fn ball_check_points(rho: f64, count: usize, seed: u64) -> Result<Vec<Quaternion>> {
    let half = (count / 2).max(1);
    let mut pts = sample(Region::Ball { radius: rho }, half, seed)?;
    pts.extend(sample(Region::BoundaryShell { radius: rho, thickness: 0.01 * rho }, count - half, seed ^ 0xA5)?);
    Ok(pts)
}

const SPHERE_POINTS: usize = 256;

fn sphere_modulus(eval: impl Fn(Quaternion) -> Result<f64> + Sync, seed: u64) -> Result<ModulusStats> {
    let mut rng = crate::sampling::chunk_rng(seed ^ 0x5EED, 0);
    let pts: Vec<Quaternion> = (0..SPHERE_POINTS).map(|_| unit_direction(&mut rng)).collect();
    let values: Vec<f64> = pts.par_iter().map(|q| eval(*q)).collect::<Result<_>>()?;
    Ok(ModulusStats {
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(0.0, f64::max),
    })
}

/// Approximates a Schur function `f` on the ball of radius `rho` within
/// `epsilon`: split `f = g + h K` on `L_J`, approximate `g` and `h` by finite
/// Blaschke products within `epsilon / 4`, and extend `r1 + r2 K` regularly.
pub fn approximate_scalar(
    f: &ScalarSeries,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    epsilon: f64,
    opts: &ApproxOptions,
) -> Result<QuatRationalApprox> {
    if f.center() != 0.0 {
        return Err(Error::domain("approximation needs a series about the origin"));
    }
    if !(epsilon > 0.0) {
        return Err(Error::domain("epsilon must be positive"));
    }
    let sp = split(f, j, k)?;
    let check = is_schur(f, opts.samples.max(1000), opts.seed, opts.schur_slack)?;
    if !check.is_schur {
        return Err(Error::domain(format!("f is not a Schur function: sampled sup |f| = {}", check.sup)));
    }
    let a1 = complex_inner_approx(&sp.f, epsilon / 4.0, opts)?;
    let a2 = complex_inner_approx(&sp.g, epsilon / 4.0, opts)?;
    let mut approx = QuatRationalApprox {
        j,
        k,
        r1: a1.blaschke,
        r2: a2.blaschke,
        epsilon,
        rho: opts.rho,
        measured_sup: 0.0,
        r1_error: a1.measured_sup,
        r2_error: a2.measured_sup,
        boundary_modulus: None,
        normal_form: None,
    };
    let points = ball_check_points(opts.rho, opts.samples, opts.seed)?;
    let errs: Vec<f64> =
        points.par_iter().map(|q| Ok((f.eval(*q)? - approx.eval(*q)?).norm())).collect::<Result<_>>()?;
    approx.measured_sup = errs.into_iter().fold(0.0, f64::max);
    if approx.measured_sup > epsilon {
        return Err(Error::Assembly { measured: approx.measured_sup, epsilon });
    }
    approx.boundary_modulus = Some(sphere_modulus(|q| Ok(approx.eval(q)?.norm()), opts.seed)?);
    approx.normal_form = approx.compute_normal_form();
    Ok(approx)
}

/// `A(q) = U diag(s, r(q)) V` approximating a `2 x 2` function of unit norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixApprox {
    #[serde(rename = "U")]
    pub u: QuatMatrix,
    #[serde(rename = "V")]
    pub v: QuatMatrix,
    pub s: f64,
    pub scalar: QuatRationalApprox,
    pub epsilon: f64,
    pub rho: f64,
    /// Sup of `|F(q) - A(q)|` (operator norm) over the check points.
    pub measured_sup: f64,
    /// Unitarity of `A` measured on the unit sphere: range of `|A(q)|`.
    pub boundary_norm: ModulusStats,
}

impl MatrixApprox {
    pub fn eval(&self, q: Quaternion) -> Result<QuatMatrix> {
        let middle = QuatMatrix::diag(&[Quaternion::real(self.s), self.scalar.eval(q)?]);
        Ok(&(&self.u * &middle) * &self.v)
    }
}

/// Approximates a `2 x 2` function with `|F(q)| = 1` throughout the ball:
/// decompose at `q0 = 0`, approximate the scalar block, reassemble.
pub fn approximate_matrix_2x2(
    f: &MatrixSeries,
    epsilon: f64,
    opts: &ApproxOptions,
    norm_tolerance: f64,
    block_tolerance: f64,
) -> Result<MatrixApprox> {
    if f.dim() != 2 {
        return Err(Error::domain(format!("expected a 2x2 function, got {0}x{0}", f.dim())));
    }
    let cfg = SamplingConfig { interior: 2048, boundary: 2048, seed: opts.seed, tolerance: norm_tolerance };
    let s = sample_profiles(f, &cfg)?;
    let deviation = s
        .interior_profiles
        .iter()
        .chain(&s.boundary_profiles)
        .map(|p| (p.singular_values[0] - 1.0).abs())
        .fold(0.0, f64::max);
    if deviation > norm_tolerance {
        return Err(Error::Precondition { reason: "|F(q)| is not identically 1".into(), measured: deviation });
    }
    let d = decompose_at_max(f, Quaternion::ZERO, &cfg, block_tolerance)?;
    let g = d.g.as_ref().expect("2x2 series input yields a coefficient block").entry(0, 0);
    let scalar = approximate_scalar(&g, ImaginaryUnit::J, ImaginaryUnit::K, epsilon, opts)?;
    let mut out = MatrixApprox {
        u: d.u,
        v: d.v,
        s: d.s,
        scalar,
        epsilon,
        rho: opts.rho,
        measured_sup: 0.0,
        boundary_norm: ModulusStats { min: 0.0, max: 0.0 },
    };
    let points = ball_check_points(opts.rho, opts.samples, opts.seed ^ 0x22)?;
    let errs: Vec<f64> =
        points.par_iter().map(|q| Ok(operator_norm(&(&f.eval(*q)? - &out.eval(*q)?)))).collect::<Result<_>>()?;
    out.measured_sup = errs.into_iter().fold(0.0, f64::max);
    if out.measured_sup > epsilon {
        return Err(Error::Assembly { measured: out.measured_sup, epsilon });
    }
    out.boundary_norm = sphere_modulus(|q| Ok(operator_norm(&out.eval(q)?)), opts.seed)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    fn opts() -> ApproxOptions {
        ApproxOptions { samples: 2000, ..ApproxOptions::default() }
    }

    #[test]
    fn schur_examples() {
        let q = ScalarSeries::new(vec![Q::ZERO, Q::ONE], 1.0).unwrap();
        let r = is_schur(&q, 2000, 1, 1e-9).unwrap();
        assert!(r.is_schur && r.sup > 0.99);
        let two_q = ScalarSeries::new(vec![Q::ZERO, Q::real(2.0)], 1.0).unwrap();
        assert!(!is_schur(&two_q, 2000, 1, 1e-9).unwrap().is_schur);
        let half = ScalarSeries::new(vec![Q::real(0.5), Q::ZERO, Q::real(0.5)], 1.0).unwrap();
        assert!(is_schur(&half, 2000, 1, 1e-9).unwrap().is_schur);
    }

    #[test]
    fn identity_is_reproduced() {
        let f = ScalarSeries::new(vec![Q::ZERO, Q::ONE], 1.0).unwrap();
        let a = approximate_scalar(&f, ImaginaryUnit::J, ImaginaryUnit::K, 1e-2, &opts()).unwrap();
        assert_eq!(a.r1.degree(), 1);
        assert!(a.r1_error < 1e-15);
        assert!(a.normal_form.is_none(), "r2 approximates zero by a high power");
    }

    #[test]
    fn q_times_k_splits_into_the_k_component() {
        let f = ScalarSeries::new(vec![Q::ZERO, Q::K], 1.0).unwrap();
        let a = approximate_scalar(&f, ImaginaryUnit::J, ImaginaryUnit::K, 1e-2, &opts()).unwrap();
        assert_eq!(a.r2.degree(), 1);
        assert!(a.r2_error < 1e-15);
        assert!(a.measured_sup <= 1e-2);
    }

    #[test]
    fn json_round_trip() {
        let f = ScalarSeries::new(vec![Q::ZERO, Q::K], 1.0).unwrap();
        let a = approximate_scalar(&f, ImaginaryUnit::J, ImaginaryUnit::K, 1e-2, &opts()).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.starts_with(r#"{"type":"quat_rational","J":"#));
        let back: QuatRationalApprox = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a, "{text}");
    }
}
