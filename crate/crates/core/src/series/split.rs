use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_radius, is_zero, ScalarSeries, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::quaternion::{slice_decompose, ImaginaryUnit, Quaternion};

/// Largest `|<I, J>|` accepted for a splitting pair.
pub const ORTHOGONALITY_TOL: f64 = 1e-13;

/// A complex power series `sum z^n c_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexSeries(pub Vec<Complex64>);

impl ComplexSeries {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `conj(S(conj z))`: the series with conjugated coefficients.
    pub fn conj_coeffs(&self) -> Self {
        ComplexSeries(self.0.iter().map(|c| c.conj()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Mul for &ComplexSeries {
    type Output = ComplexSeries;
    fn mul(self, o: &ComplexSeries) -> ComplexSeries {
        if self.0.is_empty() || o.0.is_empty() {
            return ComplexSeries(Vec::new());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexSeries(out)
    }
}

fn zip_longest(a: &ComplexSeries, b: &ComplexSeries, f: impl Fn(Complex64, Complex64) -> Complex64) -> ComplexSeries {
    let zero = Complex64::new(0.0, 0.0);
    let n = a.0.len().max(b.0.len());
    ComplexSeries((0..n).map(|k| f(a.0.get(k).copied().unwrap_or(zero), b.0.get(k).copied().unwrap_or(zero))).collect())
}

impl Add for &ComplexSeries {
    type Output = ComplexSeries;
    fn add(self, o: &ComplexSeries) -> ComplexSeries {
        zip_longest(self, o, |a, b| a + b)
    }
}

impl Sub for &ComplexSeries {
    type Output = ComplexSeries;
    fn sub(self, o: &ComplexSeries) -> ComplexSeries {
        zip_longest(self, o, |a, b| a - b)
    }
}

/// The restriction of a regular function to the slice `L_I`, written as
/// `F(z) + G(z) J` with holomorphic `F`, `G` and `J` orthogonal to `I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SplitPairWire", into = "SplitPairWire")]
pub struct SplitPair {
    pub slice: ImaginaryUnit,
    pub orth: ImaginaryUnit,
    pub f: ComplexSeries,
    pub g: ComplexSeries,
    radius: f64,
    center: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitPairWire {
    slice: ImaginaryUnit,
    orth: ImaginaryUnit,
    f: ComplexSeries,
    g: ComplexSeries,
    radius: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    center: f64,
}

impl TryFrom<SplitPairWire> for SplitPair {
    type Error = Error;
    fn try_from(w: SplitPairWire) -> Result<Self> {
        if w.f.len().max(w.g.len()) > MAX_DEGREE + 1 {
            return Err(Error::format(format!("series degree exceeds the cap of {MAX_DEGREE}")));
        }
        if w.f.0.iter().chain(&w.g.0).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::format("split coefficients must be finite"));
        }
        SplitPair::new(w.slice, w.orth, w.f, w.g, w.radius, w.center)
    }
}

impl From<SplitPair> for SplitPairWire {
    fn from(s: SplitPair) -> Self {
        SplitPairWire { slice: s.slice, orth: s.orth, f: s.f, g: s.g, radius: s.radius, center: s.center }
    }
}

impl SplitPair {
    pub fn new(
        slice: ImaginaryUnit,
        orth: ImaginaryUnit,
        f: ComplexSeries,
        g: ComplexSeries,
        radius: f64,
        center: f64,
    ) -> Result<Self> {
        check_orthogonal(&slice, &orth)?;
        check_radius(radius)?;
        if !center.is_finite() {
            return Err(Error::domain("series center must be finite"));
        }
        Ok(SplitPair { slice, orth, f, g, radius, center })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Value at `z = x + y I`, with `z` given as a complex number.
    pub fn eval_on_slice(&self, z: Complex64) -> Result<Quaternion> {
        let d = z - self.center;
        if d.norm() >= self.radius {
            return Err(Error::domain(format!("slice point {z} outside the disk of radius {}", self.radius)));
        }
        Ok(self.slice.embed(self.f.eval(d)) + self.slice.embed(self.g.eval(d)) * self.orth.to_quaternion())
    }

    /// Extends the slice values to all of the ball.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        regular_extension(|z| self.eval_on_slice(z), self.slice, q)
    }

    /// Reassembles the quaternion coefficients `a_n = alpha_n + beta_n J`.
    pub fn to_series(&self) -> ScalarSeries {
        let zero = Complex64::new(0.0, 0.0);
        let n = self.f.len().max(self.g.len()).max(1);
        let j = self.orth.to_quaternion();
        let coeffs = (0..n)
            .map(|k| {
                let a = self.f.0.get(k).copied().unwrap_or(zero);
                let b = self.g.0.get(k).copied().unwrap_or(zero);
                self.slice.embed(a) + self.slice.embed(b) * j
            })
            .collect();
        ScalarSeries::from_parts(coeffs, self.radius, self.center)
    }
}

fn check_orthogonal(i: &ImaginaryUnit, j: &ImaginaryUnit) -> Result<()> {
    if i.is_orthogonal(j, ORTHOGONALITY_TOL) {
        Ok(())
    } else {
        Err(Error::domain(format!("units are not orthogonal: <I, J> = {:e}", i.dot(j))))
    }
}

/// Splits `f` on the slice `L_I` along the orthogonal unit `J`.
pub fn split(f: &ScalarSeries, slice: ImaginaryUnit, orth: ImaginaryUnit) -> Result<SplitPair> {
    check_orthogonal(&slice, &orth)?;
    let j = orth.to_quaternion();
    let (fs, gs): (Vec<_>, Vec<_>) = f
        .coeffs()
        .iter()
        .map(|a| {
            let alpha = slice.project(*a);
            // a - alpha lies in span{J, IJ} = L_I J, so beta = -(a - alpha) J
            let beta = slice.project(-((*a - slice.embed(alpha)) * j));
            (alpha, beta)
        })
        .unzip();
    SplitPair::new(slice, orth, ComplexSeries(fs), ComplexSeries(gs), f.radius(), f.center())
}

/// Extends a function known on the slice `L_J` to `q = x + y I` by
/// `f(q) = (f(z) + f(conj z) + I J (f(conj z) - f(z))) / 2` with `z = x + y J`.
///
/// `on_slice` receives points of `L_J` as complex numbers.
pub fn regular_extension(
    on_slice: impl Fn(Complex64) -> Result<Quaternion>,
    slice: ImaginaryUnit,
    q: Quaternion,
) -> Result<Quaternion> {
    let p = slice_decompose(q);
    let z = Complex64::new(p.x, p.y);
    let a = on_slice(z)?;
    if p.y == 0.0 {
        return Ok(a);
    }
    let b = on_slice(z.conj())?;
    let ij = p.unit.to_quaternion() * slice.to_quaternion();
    Ok((a + b + ij * (b - a)).scale(0.5))
}
