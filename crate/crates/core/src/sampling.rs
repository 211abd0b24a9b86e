//! Seeded point samplers over balls, shells, slice disks and sigma balls.
//!
//! Points are generated in fixed-size chunks; chunk `c` draws from its own
//! ChaCha stream `c` under the caller's seed, so the output is identical no
//! matter how many worker threads produce it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quaternion::{same_slice, slice_decompose, ImaginaryUnit, Quaternion};

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Open Euclidean ball `|q| < radius`.
    Ball { radius: f64 },
    /// `{ q : sigma(q, center) < radius }`.
    SigmaBall { center: Quaternion, radius: f64 },
    /// Disk of the given radius around `center` inside the slice `L_I`.
    SliceDisk { unit: ImaginaryUnit, center: Quaternion, radius: f64 },
    /// Spherical shell `radius - thickness <= |q| <= radius`.
    BoundaryShell { radius: f64, thickness: f64 },
}

impl Region {
    fn validate(&self) -> Result<()> {
        let ok = |r: f64| r.is_finite() && r > 0.0;
        match *self {
            Region::Ball { radius } if ok(radius) => Ok(()),
            Region::SigmaBall { center, radius } if ok(radius) && center.is_finite() => Ok(()),
            Region::SliceDisk { unit, center, radius } if ok(radius) && center.is_finite() => {
                if same_slice(center, unit.to_quaternion()) {
                    Ok(())
                } else {
                    Err(Error::domain("slice disk center does not lie on the requested slice"))
                }
            }
            Region::BoundaryShell { radius, thickness } if ok(radius) && ok(thickness) && thickness <= radius => Ok(()),
            other => Err(Error::domain(format!("invalid sampling region {other:?}"))),
        }
    }

    /// Membership test matching the sampler's contract.
    pub fn contains(&self, q: Quaternion) -> bool {
        match *self {
            Region::Ball { radius } => q.norm() < radius,
            Region::SigmaBall { center, radius } => crate::quaternion::sigma_distance(q, center) < radius,
            Region::SliceDisk { unit, center, radius } => {
                same_slice(q, unit.to_quaternion()) && (q - center).norm() < radius
            }
            Region::BoundaryShell { radius, thickness } => {
                let r = q.norm();
                r >= radius - thickness && r <= radius
            }
        }
    }
}

/// Draws `count` points from `region`, deterministically in `seed`.
pub fn sample(region: Region, count: usize, seed: u64) -> Result<Vec<Quaternion>> {
    region.validate()?;
    if count == 0 {
        return Err(Error::domain("sample count must be positive"));
    }
    let chunks = count.div_ceil(CHUNK);
    let out: Vec<Vec<Quaternion>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let start = c * CHUNK;
            let end = (start + CHUNK).min(count);
            (start..end).map(|i| draw(&region, &mut rng, i)).collect()
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

/// Uniform samples from the closed complex disk `|z| <= radius`.
pub fn sample_disk(radius: f64, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = chunk_rng(seed, 0);
    (0..count)
        .map(|_| {
            let r = radius * rng.random::<f64>().sqrt();
            Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
        })
        .collect()
}

pub(crate) fn chunk_rng(seed: u64, stream: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

fn gaussian4<R: Rng>(rng: &mut R) -> [f64; 4] {
    loop {
        let v: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        if v.iter().map(|x| x * x).sum::<f64>() > 1e-24 {
            return v;
        }
    }
}

/// Uniform point on the unit 3-sphere.
pub(crate) fn unit_direction<R: Rng>(rng: &mut R) -> Quaternion {
    let v = gaussian4(rng);
    let q = Quaternion::new(v[0], v[1], v[2], v[3]);
    q / q.norm()
}

fn in_ball3<R: Rng>(rng: &mut R, radius: f64) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        if v.iter().map(|x| x * x).sum::<f64>() < 1.0 {
            return [v[0] * radius, v[1] * radius, v[2] * radius];
        }
    }
}

fn shell_point<R: Rng>(rng: &mut R, inner: f64, outer: f64) -> Quaternion {
    let (a, b) = (inner.powi(4), outer.powi(4));
    let r = (a + rng.random::<f64>() * (b - a)).powf(0.25).min(outer);
    unit_direction(rng) * r
}

fn disk_point<R: Rng>(rng: &mut R, unit: ImaginaryUnit, center: Quaternion, radius: f64) -> Quaternion {
    // strict interior
    let r = radius * rng.random::<f64>().sqrt() * (1.0 - 1e-12);
    let z = Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>());
    center + unit.embed(z)
}

fn draw<R: Rng>(region: &Region, rng: &mut R, index: usize) -> Quaternion {
    match *region {
        Region::Ball { radius } => shell_point(rng, 0.0, radius * (1.0 - 1e-12)),
        Region::BoundaryShell { radius, thickness } => shell_point(rng, radius - thickness, radius),
        Region::SliceDisk { unit, center, radius } => disk_point(rng, unit, center, radius),
        Region::SigmaBall { center, radius } => {
            let a = center.imag_norm();
            if a == 0.0 {
                return center + shell_point(rng, 0.0, radius * (1.0 - 1e-12));
            }
            let on_slice = a >= radius || index.is_multiple_of(2);
            if on_slice {
                return disk_point(rng, slice_decompose(center).unit, center, radius);
            }
            // points off the slice of `center`: (dx)^2 + (|Im q| + a)^2 < radius^2
            let span = (radius * radius - a * a).sqrt();
            loop {
                let dx = rng.random_range(-span..span);
                let v = in_ball3(rng, radius - a);
                let s = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if dx * dx + (s + a) * (s + a) < radius * radius {
                    return Quaternion::new(center.w + dx, v[0], v[1], v[2]);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::sigma_distance;

    #[test]
    fn ball_containment_and_determinism() {
        let a = sample(Region::Ball { radius: 1.0 }, 100, 7).unwrap();
        assert_eq!(a.len(), 100);
        assert!(a.iter().all(|q| q.norm() < 1.0));
        let b = sample(Region::Ball { radius: 1.0 }, 100, 7).unwrap();
        assert_eq!(a, b);
        let c = sample(Region::Ball { radius: 1.0 }, 100, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sigma_ball_containment() {
        let center = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        let pts = sample(Region::SigmaBall { center, radius: 0.5 }, 500, 3).unwrap();
        assert!(pts.iter().all(|q| sigma_distance(*q, center) < 0.5));

        // radius larger than |Im center| also produces off-slice points
        let pts = sample(Region::SigmaBall { center, radius: 1.5 }, 500, 3).unwrap();
        assert!(pts.iter().all(|q| sigma_distance(*q, center) < 1.5));
        assert!(pts.iter().any(|q| !same_slice(*q, center)));
    }

    #[test]
    fn shell_and_disk_containment() {
        let region = Region::BoundaryShell { radius: 0.999, thickness: 0.049 };
        let pts = sample(region, 1000, 11).unwrap();
        assert!(pts.iter().all(|q| region.contains(*q)));

        let unit = ImaginaryUnit::from_vector([0.0, 1.0, 1.0]).unwrap();
        let region = Region::SliceDisk { unit, center: Quaternion::real(0.2), radius: 0.3 };
        let pts = sample(region, 300, 5).unwrap();
        assert!(pts.iter().all(|q| region.contains(*q)));
    }

    #[test]
    fn invalid_regions() {
        assert!(sample(Region::Ball { radius: 0.0 }, 10, 1).is_err());
        assert!(sample(Region::Ball { radius: 1.0 }, 0, 1).is_err());
        assert!(sample(Region::BoundaryShell { radius: 1.0, thickness: 2.0 }, 10, 1).is_err());
        let bad = Region::SliceDisk { unit: ImaginaryUnit::I, center: Quaternion::J, radius: 1.0 };
        assert!(sample(bad, 10, 1).is_err());
    }

    #[test]
    fn chunking_is_seamless() {
        // the first 300 points of a larger draw are the 300-point draw
        let a = sample(Region::Ball { radius: 2.0 }, 300, 99).unwrap();
        let b = sample(Region::Ball { radius: 2.0 }, 1000, 99).unwrap();
        assert_eq!(a[..], b[..300]);
    }
}
