use super::{Domain, MatrixFunction};
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, singular_values, QuatMatrix};
use crate::quaternion::Quaternion;

/// `F(q) = [[q - 1, 2], [0, 1/q]]` on the annulus `r < |q| < R`: regular, with
/// its norm maximum on the inner boundary rather than inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example1 {
    pub r: f64,
    pub big_r: f64,
}

impl Example1 {
    pub fn new(r: f64, big_r: f64) -> Result<Self> {
        if !(r.is_finite() && big_r.is_finite() && 0.0 < r && r < big_r) {
            return Err(Error::domain(format!("annulus needs 0 < r < R, got r = {r}, R = {big_r}")));
        }
        Ok(Example1 { r, big_r })
    }

    /// The largest singular value of `F(q)` from its closed form
    /// `s^2 = (T + sqrt(T^2 - 4D)) / 2`, `T = |q - 1|^2 + 4 + 1/|q|^2`, `D = |q - 1|^2 / |q|^2`.
    pub fn norm_closed_form(q: Quaternion) -> f64 {
        let a = (q - Quaternion::ONE).norm_sqr();
        let b = 1.0 / q.norm_sqr();
        let t = a + 4.0 + b;
        ((t + (t * t - 4.0 * a * b).sqrt()) / 2.0).sqrt()
    }

    /// The closed form as printed with the example, kept for comparison.
    pub fn norm_printed_form(q: Quaternion) -> f64 {
        let a = (q - Quaternion::ONE).norm_sqr();
        let t = a + 4.0 + 1.0 / q.norm_sqr();
        (t + (t * t - 4.0 * a).sqrt()).sqrt() / 2.0
    }
}

impl MatrixFunction for Example1 {
    fn dim(&self) -> usize {
        2
    }

    fn domain(&self) -> Domain {
        Domain::Annulus { inner: self.r, outer: self.big_r }
    }

    fn eval(&self, q: Quaternion) -> Result<QuatMatrix> {
        if !self.domain().contains(q) {
            return Err(Error::domain(format!("q = {q} is outside the annulus {} < |q| < {}", self.r, self.big_r)));
        }
        QuatMatrix::new(2, 2, vec![q - Quaternion::ONE, Quaternion::real(2.0), Quaternion::ZERO, q.inverse()?])
    }
}

/// `(computed, printed)`: the operator norm via the complex adjoint, and the
/// closed form printed with the example.
pub fn example1_norm(q: Quaternion, r: f64, big_r: f64) -> Result<(f64, f64)> {
    let f = Example1::new(r, big_r)?;
    let m = f.eval(q)?;
    Ok((operator_norm(&m), Example1::norm_printed_form(q)))
}

/// `F(q) = diag(x0 + x2 j, 1)` on the unit ball, where `q = x0 + x1 i + x2 j + x3 k`.
/// Not regular; its largest singular value is `1` throughout the ball.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Example2;

impl Example2 {
    pub fn at(x0: f64, x2: f64) -> QuatMatrix {
        QuatMatrix::diag(&[Quaternion::new(x0, 0.0, x2, 0.0), Quaternion::ONE])
    }

    pub fn singular_values(x0: f64, x2: f64) -> Result<Vec<f64>> {
        singular_values(&Self::at(x0, x2))
    }
}

impl MatrixFunction for Example2 {
    fn dim(&self) -> usize {
        2
    }

    fn domain(&self) -> Domain {
        Domain::Ball { center: 0.0, radius: 1.0 }
    }

    fn eval(&self, q: Quaternion) -> Result<QuatMatrix> {
        if !self.domain().contains(q) {
            return Err(Error::domain(format!("q = {q} is outside the unit ball")));
        }
        Ok(Self::at(q.w, q.y))
    }
}
