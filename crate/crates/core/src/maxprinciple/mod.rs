//! Sampling-based checks of the norm and singular-value maximum principles,
//! the maximizing-vector theorem and the constructive decomposition at a
//! norm maximum.
//!
//! Sampling can refute a maximum principle on a fixture but never prove it.

mod decompose;
mod examples;
mod minimum;
mod vector;

pub use decompose::{decompose_at_max, Decomposition};
pub use examples::{example1_norm, Example1, Example2};
pub use minimum::{check_min_singular_invertibility, MinSingularReport, MinVerdict};
pub use vector::{check_maximizing_vector_theorem, MaximizingVectorReport};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{pair_doubled, QuatMatrix};
use crate::quaternion::Quaternion;
use crate::sampling::{sample, Region};
use crate::series::MatrixSeries;

/// A matrix-valued function that can be sampled over its domain.
pub trait MatrixFunction: Sync {
    fn dim(&self) -> usize;
    fn domain(&self) -> Domain;
    fn eval(&self, q: Quaternion) -> Result<QuatMatrix>;

    /// The coefficient form, when the function is a power series.
    fn as_series(&self) -> Option<&MatrixSeries> {
        None
    }
}

impl MatrixFunction for MatrixSeries {
    fn dim(&self) -> usize {
        MatrixSeries::dim(self)
    }

    fn domain(&self) -> Domain {
        Domain::Ball { center: self.center(), radius: self.radius() }
    }

    fn eval(&self, q: Quaternion) -> Result<QuatMatrix> {
        MatrixSeries::eval(self, q)
    }

    fn as_series(&self) -> Option<&MatrixSeries> {
        Some(self)
    }
}

/// Open domains the harness knows how to split into interior and boundary shells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// `|q - center| < radius` with a real center.
    Ball { center: f64, radius: f64 },
    /// `inner < |q| < outer`.
    Annulus { inner: f64, outer: f64 },
}

const INTERIOR_FRACTION: f64 = 0.95;
const SHELL_OUTER: f64 = 0.999;
const INNER_SHELL: f64 = 1.05;

fn derive_seed(seed: u64, lane: u64) -> u64 {
    seed ^ lane.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17)
}

fn shifted(points: Vec<Quaternion>, center: f64) -> Vec<Quaternion> {
    if center == 0.0 {
        points
    } else {
        points.into_iter().map(|q| q + Quaternion::real(center)).collect()
    }
}

impl Domain {
    pub fn contains(&self, q: Quaternion) -> bool {
        match *self {
            Domain::Ball { center, radius } => (q - Quaternion::real(center)).norm() < radius,
            Domain::Annulus { inner, outer } => {
                let r = q.norm();
                r > inner && r < outer
            }
        }
    }

    /// Points with `|q - c| < 0.95 R`, or `1.05 r <= |q| <= 0.95 R` for an annulus.
    pub fn sample_interior(&self, count: usize, seed: u64) -> Result<Vec<Quaternion>> {
        match *self {
            Domain::Ball { center, radius } => {
                Ok(shifted(sample(Region::Ball { radius: INTERIOR_FRACTION * radius }, count, seed)?, center))
            }
            Domain::Annulus { inner, outer } => {
                let (lo, hi) = (INNER_SHELL * inner, INTERIOR_FRACTION * outer);
                if lo >= hi {
                    return Err(Error::domain(format!("annulus ({inner}, {outer}) is too thin to sample")));
                }
                sample(Region::BoundaryShell { radius: hi, thickness: hi - lo }, count, seed)
            }
        }
    }

    /// Points in the shell `[0.95 R, 0.999 R]`; an annulus also gets its inner
    /// shell `[1.001 r, 1.05 r]`, half of the points each.
    pub fn sample_boundary(&self, count: usize, seed: u64) -> Result<Vec<Quaternion>> {
        let outer_shell = |radius: f64, n: usize, s: u64| {
            sample(
                Region::BoundaryShell {
                    radius: SHELL_OUTER * radius,
                    thickness: (SHELL_OUTER - INTERIOR_FRACTION) * radius,
                },
                n,
                s,
            )
        };
        match *self {
            Domain::Ball { center, radius } => Ok(shifted(outer_shell(radius, count, seed)?, center)),
            Domain::Annulus { inner, outer } => {
                let half = count / 2;
                let mut pts = outer_shell(outer, count - half, seed)?;
                if half > 0 {
                    pts.extend(sample(
                        Region::BoundaryShell { radius: INNER_SHELL * inner, thickness: (INNER_SHELL - 1.001) * inner },
                        half,
                        derive_seed(seed, 2),
                    )?);
                }
                Ok(pts)
            }
        }
    }

    /// A point well inside the domain, used where a base point is needed.
    pub fn reference_point(&self) -> Quaternion {
        match *self {
            Domain::Ball { center, .. } => Quaternion::real(center),
            Domain::Annulus { inner, outer } => Quaternion::real(0.5 * (inner + outer)),
        }
    }
}

/// Which norm of `F(q)` is being maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    Frobenius,
    Operator,
    /// The `k`-th largest singular value, `k >= 1`.
    SingularValue(usize),
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Frobenius => write!(f, "frobenius"),
            NormKind::Operator => write!(f, "operator"),
            NormKind::SingularValue(k) => write!(f, "singular_value({k})"),
        }
    }
}

impl FromStr for NormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frobenius" => Ok(NormKind::Frobenius),
            "operator" => Ok(NormKind::Operator),
            _ => s
                .strip_prefix("singular_value(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|k| *k >= 1)
                .map(NormKind::SingularValue)
                .ok_or_else(|| Error::format(format!("unknown norm kind {s:?}"))),
        }
    }
}

impl Serialize for NormKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Frobenius norm and descending singular values of one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct NormProfile {
    pub frobenius: f64,
    pub singular_values: Vec<f64>,
}

impl NormProfile {
    pub fn of(m: &QuatMatrix) -> Result<Self> {
        let chi = crate::linalg::chi(m)?.assemble();
        Ok(NormProfile { frobenius: m.frobenius_norm(), singular_values: pair_doubled(&chi.singular_values())? })
    }

    pub fn get(&self, kind: NormKind) -> Result<f64> {
        match kind {
            NormKind::Frobenius => Ok(self.frobenius),
            NormKind::Operator => Ok(self.singular_values[0]),
            NormKind::SingularValue(k) => {
                self.singular_values.get(k.wrapping_sub(1)).copied().ok_or_else(|| {
                    Error::domain(format!("no singular value {k} for a {}x{} matrix", self.n(), self.n()))
                })
            }
        }
    }

    pub fn n(&self) -> usize {
        self.singular_values.len()
    }
}

/// Sample sizes, seed and slack for the maximum-principle checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub interior: usize,
    pub boundary: usize,
    pub seed: u64,
    /// A violation needs `interior_max > boundary_max + tolerance`.
    pub tolerance: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { interior: 4096, boundary: 4096, seed: 0, tolerance: 1e-9 }
    }
}

impl SamplingConfig {
    pub const MIN_SAMPLES: usize = 1000;

    fn validate(&self) -> Result<()> {
        if self.interior < Self::MIN_SAMPLES || self.boundary < Self::MIN_SAMPLES {
            return Err(Error::domain(format!(
                "need at least {} interior and boundary samples, got {} and {}",
                Self::MIN_SAMPLES,
                self.interior,
                self.boundary
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxReport {
    pub norm_kind: NormKind,
    pub interior_max: f64,
    pub boundary_max: f64,
    /// Location of the interior maximum.
    pub argmax: Quaternion,
    pub boundary_argmax: Quaternion,
    pub verdict: Verdict,
    pub seed: u64,
    pub interior_samples: usize,
    pub boundary_samples: usize,
}

impl MaxReport {
    /// Where the largest sampled value sits, interior or boundary.
    pub fn overall_argmax(&self) -> Quaternion {
        if self.interior_max > self.boundary_max {
            self.argmax
        } else {
            self.boundary_argmax
        }
    }
}

pub(crate) fn profiles(f: &dyn MatrixFunction, points: &[Quaternion]) -> Result<Vec<NormProfile>> {
    points.par_iter().map(|q| NormProfile::of(&f.eval(*q)?)).collect()
}

/// First index of the largest value.
pub(crate) fn argmax(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values.enumerate().fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
}

pub(crate) struct SampledProfiles {
    pub interior: Vec<Quaternion>,
    pub boundary: Vec<Quaternion>,
    pub interior_profiles: Vec<NormProfile>,
    pub boundary_profiles: Vec<NormProfile>,
}

pub(crate) fn sample_profiles(f: &dyn MatrixFunction, cfg: &SamplingConfig) -> Result<SampledProfiles> {
    cfg.validate()?;
    let domain = f.domain();
    let interior = domain.sample_interior(cfg.interior, cfg.seed)?;
    let boundary = domain.sample_boundary(cfg.boundary, derive_seed(cfg.seed, 1))?;
    let interior_profiles = profiles(f, &interior)?;
    let boundary_profiles = profiles(f, &boundary)?;
    Ok(SampledProfiles { interior, boundary, interior_profiles, boundary_profiles })
}

/// Compares interior and boundary-shell maxima of one norm of `F`.
pub fn check_norm_max(f: &dyn MatrixFunction, kind: NormKind, cfg: &SamplingConfig) -> Result<MaxReport> {
    Ok(check_norm_max_all(f, &[kind], cfg)?.remove(0))
}

/// Same as [`check_norm_max`] for several norms, sharing one set of evaluations.
pub fn check_norm_max_all(f: &dyn MatrixFunction, kinds: &[NormKind], cfg: &SamplingConfig) -> Result<Vec<MaxReport>> {
    let s = sample_profiles(f, cfg)?;
    kinds
        .iter()
        .map(|&kind| {
            let inner: Vec<f64> = s.interior_profiles.iter().map(|p| p.get(kind)).collect::<Result<_>>()?;
            let outer: Vec<f64> = s.boundary_profiles.iter().map(|p| p.get(kind)).collect::<Result<_>>()?;
            let (i, interior_max) = argmax(inner.into_iter());
            let (b, boundary_max) = argmax(outer.into_iter());
            let verdict =
                if interior_max > boundary_max + cfg.tolerance { Verdict::Violation } else { Verdict::Consistent };
            Ok(MaxReport {
                norm_kind: kind,
                interior_max,
                boundary_max,
                argmax: s.interior[i],
                boundary_argmax: s.boundary[b],
                verdict,
                seed: cfg.seed,
                interior_samples: s.interior.len(),
                boundary_samples: s.boundary.len(),
            })
        })
        .collect()
}

/// Every norm kind that makes sense for `n x n` matrices.
pub fn all_norm_kinds(n: usize) -> Vec<NormKind> {
    let mut kinds = vec![NormKind::Frobenius, NormKind::Operator];
    kinds.extend((1..=n).map(NormKind::SingularValue));
    kinds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    fn small() -> SamplingConfig {
        SamplingConfig { interior: 1000, boundary: 1000, seed: 3, tolerance: 1e-9 }
    }

    #[test]
    fn constant_unitary_has_flat_norm() {
        let u = QuatMatrix::new(2, 2, vec![Q::ZERO, Q::J, Q::I, Q::ZERO]).unwrap();
        let f = MatrixSeries::constant(u, 1.0).unwrap();
        let r = check_norm_max(&f, NormKind::Operator, &small()).unwrap();
        assert!((r.interior_max - 1.0).abs() < 1e-14 && (r.boundary_max - 1.0).abs() < 1e-14);
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn diag_q_q2_grows_outward() {
        let f = MatrixSeries::new(
            vec![QuatMatrix::zeros(2, 2), QuatMatrix::diag(&[Q::ONE, Q::ZERO]), QuatMatrix::diag(&[Q::ZERO, Q::ONE])],
            1.0,
        )
        .unwrap();
        let reports = check_norm_max_all(&f, &all_norm_kinds(2), &small()).unwrap();
        for r in &reports {
            assert!(r.boundary_max > r.interior_max, "{r:?}");
            assert_eq!(r.verdict, Verdict::Consistent);
        }
        // Frobenius norm is sqrt(|q|^2 + |q|^4), largest near |q| = 0.999
        let fro = &reports[0];
        let rho = fro.boundary_argmax.norm();
        assert!((fro.boundary_max - (rho * rho + rho.powi(4)).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples_is_a_domain_error() {
        let f = MatrixSeries::constant(QuatMatrix::identity(1), 1.0).unwrap();
        let cfg = SamplingConfig { interior: 10, ..small() };
        assert!(matches!(check_norm_max(&f, NormKind::Frobenius, &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn norm_kind_strings() {
        for k in all_norm_kinds(3) {
            assert_eq!(k.to_string().parse::<NormKind>().unwrap(), k);
        }
        assert!("singular_value(0)".parse::<NormKind>().is_err());
        assert!("spectral".parse::<NormKind>().is_err());
    }

    #[test]
    fn annulus_regions() {
        let d = Domain::Annulus { inner: 0.25, outer: 1.0 };
        for q in d.sample_interior(500, 1).unwrap() {
            assert!(q.norm() >= 0.2625 - 1e-12 && q.norm() <= 0.95 + 1e-12);
        }
        let b = d.sample_boundary(500, 1).unwrap();
        assert!(b.iter().all(|q| d.contains(*q)));
        assert!(b.iter().any(|q| q.norm() < 0.3) && b.iter().any(|q| q.norm() > 0.9));
    }
}
