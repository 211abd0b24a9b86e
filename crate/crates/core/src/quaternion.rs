//! Hamilton quaternions and the slice geometry of the quaternion algebra.
//!
//! Every quaternion `q` with nonzero imaginary part lies on exactly one complex
//! line `L_I = R + R I`, where `I = Im(q) / |Im(q)|` is a point of the unit
//! 2-sphere of imaginary units. Real quaternions lie on every such line.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on component differences for the same-slice and
/// similarity tests.
pub const SLICE_TOL: f64 = 1e-12;

/// A real quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Real part.
    pub fn re(&self) -> f64 {
        self.w
    }

    /// Imaginary part as a 3-vector `(x, y, z)`.
    pub fn imag(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn imag_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Multiplicative inverse `conj(q) / |q|^2`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::domain("inverse of the zero quaternion"));
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Conjugate, modulus and inverse in one call.
    pub fn conj_mod_inv(&self) -> Result<(Self, f64, Self)> {
        Ok((self.conj(), self.norm(), self.inverse()?))
    }

    /// Maximum absolute component difference.
    pub fn max_abs_diff(&self, other: &Quaternion) -> f64 {
        (self.w - other.w)
            .abs()
            .max((self.x - other.x).abs())
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// Splits `q = z1 + z2 j` with `z1 = w + x i`, `z2 = y + z i`.
    pub fn to_pair(&self) -> ComplexPair {
        ComplexPair { z1: Complex64::new(self.w, self.x), z2: Complex64::new(self.y, self.z) }
    }

    pub fn from_pair(pair: ComplexPair) -> Self {
        Quaternion::new(pair.z1.re, pair.z1.im, pair.z2.re, pair.z2.im)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u32) -> Self {
        let mut base = *self;
        let mut acc = Quaternion::ONE;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl TryFrom<[f64; 4]> for Quaternion {
    type Error = Error;

    fn try_from(v: [f64; 4]) -> Result<Self> {
        let q = Quaternion::new(v[0], v[1], v[2], v[3]);
        if !q.is_finite() {
            return Err(Error::format("quaternion components must be finite"));
        }
        Ok(q)
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product: `ij = k`, `jk = i`, `ki = j`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Sum for Quaternion {
    fn sum<It: Iterator<Item = Quaternion>>(iter: It) -> Quaternion {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

/// The pair `(z1, z2)` of complex numbers with `q = z1 + z2 j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl ComplexPair {
    /// Product in pair form: `(z1 w1 - z2 conj(w2), z1 w2 + z2 conj(w1))`.
    pub fn mul(&self, o: &ComplexPair) -> ComplexPair {
        ComplexPair { z1: self.z1 * o.z1 - self.z2 * o.z2.conj(), z2: self.z1 * o.z2 + self.z2 * o.z1.conj() }
    }
}

/// A unit imaginary quaternion `x1 i + x2 j + x3 k`; it squares to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryUnit {
    x1: f64,
    x2: f64,
    x3: f64,
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit { x1: 1.0, x2: 0.0, x3: 0.0 };
    pub const J: ImaginaryUnit = ImaginaryUnit { x1: 0.0, x2: 1.0, x3: 0.0 };
    pub const K: ImaginaryUnit = ImaginaryUnit { x1: 0.0, x2: 0.0, x3: 1.0 };

    /// Accepts a vector whose length is within `1e-9` of one and renormalizes it.
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let n = (x1 * x1 + x2 * x2 + x3 * x3).sqrt();
        if !n.is_finite() || (n - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("imaginary unit must have length 1, got {n}")));
        }
        Ok(ImaginaryUnit { x1: x1 / n, x2: x2 / n, x3: x3 / n })
    }

    /// Normalizes an arbitrary nonzero 3-vector.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain("cannot normalize a zero or non-finite vector"));
        }
        Ok(ImaginaryUnit { x1: v[0] / n, x2: v[1] / n, x3: v[2] / n })
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn to_quaternion(&self) -> Quaternion {
        Quaternion::new(0.0, self.x1, self.x2, self.x3)
    }

    pub fn dot(&self, other: &ImaginaryUnit) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    pub fn is_orthogonal(&self, other: &ImaginaryUnit, tol: f64) -> bool {
        self.dot(other).abs() <= tol
    }

    /// Identifies `a + b i` in C with `a + b I` on the slice `L_I`.
    pub fn embed(&self, c: Complex64) -> Quaternion {
        Quaternion::new(c.re, c.im * self.x1, c.im * self.x2, c.im * self.x3)
    }

    /// Orthogonal projection of `q` onto `L_I`, read back as a complex number.
    pub fn project(&self, q: Quaternion) -> Complex64 {
        Complex64::new(q.w, q.x * self.x1 + q.y * self.x2 + q.z * self.x3)
    }

    /// Some unit orthogonal to `self`.
    pub fn orthogonal(&self) -> ImaginaryUnit {
        let [a, b, c] = self.components();
        // cross with the basis vector least aligned with self
        let v = if a.abs() <= b.abs() && a.abs() <= c.abs() {
            [0.0, c, -b]
        } else if b.abs() <= c.abs() {
            [-c, 0.0, a]
        } else {
            [b, -a, 0.0]
        };
        ImaginaryUnit::from_vector(v).expect("cross product with a unit vector is nonzero")
    }
}

impl TryFrom<[f64; 3]> for ImaginaryUnit {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        ImaginaryUnit::new(v[0], v[1], v[2])
    }
}

impl From<ImaginaryUnit> for [f64; 3] {
    fn from(u: ImaginaryUnit) -> Self {
        u.components()
    }
}

/// A point `x + y I` on the slice `L_I`, with `y >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePoint {
    pub x: f64,
    pub y: f64,
    pub unit: ImaginaryUnit,
}

impl SlicePoint {
    pub fn realize(&self) -> Quaternion {
        let [a, b, c] = self.unit.components();
        Quaternion::new(self.x, self.y * a, self.y * b, self.y * c)
    }

    /// The point as a complex number under the identification of `L_I` with C.
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// Writes `q = x + y I` with `y = |Im q|`; real inputs get `I = i`.
pub fn slice_decompose(q: Quaternion) -> SlicePoint {
    let y = q.imag_norm();
    let unit = if y == 0.0 { ImaginaryUnit::I } else { ImaginaryUnit { x1: q.x / y, x2: q.y / y, x3: q.z / y } };
    SlicePoint { x: q.w, y, unit }
}

/// True when `p` and `q` lie on a common complex line `L_I` (real points lie on all of them).
pub fn same_slice(p: Quaternion, q: Quaternion) -> bool {
    let [a1, a2, a3] = p.imag();
    let [b1, b2, b3] = q.imag();
    let cross = [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1];
    cross.iter().all(|c| c.abs() <= SLICE_TOL)
}

/// The sigma distance: Euclidean on a common slice, otherwise
/// `sqrt((Re q - Re p)^2 + (|Im q| + |Im p|)^2)`.
pub fn sigma_distance(p: Quaternion, q: Quaternion) -> f64 {
    if same_slice(p, q) {
        (q - p).norm()
    } else {
        let dr = q.re() - p.re();
        let s = q.imag_norm() + p.imag_norm();
        (dr * dr + s * s).sqrt()
    }
}

/// Similar quaternions share real part and imaginary modulus.
pub fn similar(p: Quaternion, q: Quaternion) -> bool {
    (p.re() - q.re()).abs() <= SLICE_TOL && (p.imag_norm() - q.imag_norm()).abs() <= SLICE_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    /// Multiplication through the 4x4 real left-multiplication matrix of `p`.
    fn mul_by_table(p: Quaternion, r: Quaternion) -> Quaternion {
        let (a, b, c, d) = (p.w, p.x, p.y, p.z);
        let m = [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]];
        let v = [r.w, r.x, r.y, r.z];
        let out: Vec<f64> = m.iter().map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
        q(out[0], out[1], out[2], out[3])
    }

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(i * j * k, -Quaternion::ONE);
    }

    #[test]
    fn product_examples() {
        let a = q(1.3, -0.2, 0.7, 2.0);
        assert_eq!(a * Quaternion::ONE, a);
        let p = q(1.0, 1.0, 0.0, 0.0) * q(1.0, 0.0, 1.0, 0.0);
        assert_eq!(p, mul_by_table(q(1.0, 1.0, 0.0, 0.0), q(1.0, 0.0, 1.0, 0.0)));
        assert_eq!(p, q(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_mod_inv_examples() {
        let (c, m, inv) = Quaternion::I.conj_mod_inv().unwrap();
        assert_eq!(c, -Quaternion::I);
        assert_eq!(m, 1.0);
        assert_eq!(inv, -Quaternion::I);
        assert_eq!(q(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
        assert!(matches!(Quaternion::ZERO.inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn slice_decompose_examples() {
        let s = slice_decompose(q(2.0, 3.0, 0.0, 0.0));
        assert_eq!((s.x, s.y, s.unit), (2.0, 3.0, ImaginaryUnit::I));

        let s = slice_decompose(Quaternion::real(5.0));
        assert_eq!((s.x, s.y, s.unit), (5.0, 0.0, ImaginaryUnit::I));

        let s = slice_decompose(q(1.0, 0.0, 1.0, 1.0));
        assert!((s.y - 2f64.sqrt()).abs() < 1e-15);
        let h = 1.0 / 2f64.sqrt();
        let [a, b, c] = s.unit.components();
        assert!(a == 0.0 && (b - h).abs() < 1e-15 && (c - h).abs() < 1e-15);
        assert!(s.realize().max_abs_diff(&q(1.0, 0.0, 1.0, 1.0)) <= 1e-15);
    }

    #[test]
    fn sigma_examples() {
        let p = q(1.0, 1.0, 0.0, 0.0);
        assert!((sigma_distance(p, q(2.0, 2.0, 0.0, 0.0)) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sigma_distance(p, p), 0.0);
        assert_eq!(sigma_distance(p, q(1.0, 0.0, 1.0, 0.0)), 2.0);
        // conjugate points share a slice
        assert!((sigma_distance(p, p.conj()) - 2.0).abs() < 1e-15);
        // real points share every slice
        assert_eq!(sigma_distance(Quaternion::real(3.0), q(3.0, 0.0, 4.0, 0.0)), 4.0);
    }

    #[test]
    fn similarity_examples() {
        assert!(similar(Quaternion::I, Quaternion::J));
        assert!(!similar(q(1.0, 1.0, 0.0, 0.0), q(2.0, 1.0, 0.0, 0.0)));
        let s = q(0.3, -1.2, 0.5, 2.0);
        let x = q(0.7, 0.1, -0.4, 0.9);
        let conj = s.inverse().unwrap() * x * s;
        assert!(similar(conj, x));
    }

    #[test]
    fn unit_embedding_and_projection() {
        let u = ImaginaryUnit::from_vector([1.0, 2.0, -2.0]).unwrap();
        let z = Complex64::new(0.4, -1.5);
        let e = u.embed(z);
        assert!((u.project(e) - z).norm() < 1e-15);
        let uq = u.to_quaternion();
        assert!((uq * uq).max_abs_diff(&-Quaternion::ONE) < 1e-15);
        let o = u.orthogonal();
        assert!(u.is_orthogonal(&o, 1e-15));
        assert!(ImaginaryUnit::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn json_is_a_four_array() {
        let s = serde_json::to_string(&q(1.0, -2.0, 0.5, 0.0)).unwrap();
        assert_eq!(s, "[1.0,-2.0,0.5,0.0]");
        let back: Quaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(1.0, -2.0, 0.5, 0.0));
        assert!(serde_json::from_str::<Quaternion>("[1,2,3]").is_err());
        let u: ImaginaryUnit = serde_json::from_str("[0,0,1]").unwrap();
        assert_eq!(u, ImaginaryUnit::K);
    }
}
