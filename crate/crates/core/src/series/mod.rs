//! Left slice-regular functions represented by finite power series
//! `f(q) = sum (q - c)^n a_n` about a real center `c`, coefficients on the right.

mod algebra;
mod split;

pub use algebra::{
    regular_conjugate, regular_reciprocal, star_eval_pointwise, star_product, star_product_via_splitting,
    symmetrization, Reciprocal, RECIPROCAL_SINGULAR_TOL,
};
pub use split::{regular_extension, split, ComplexSeries, SplitPair, ORTHOGONALITY_TOL};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QuatMatrix;
use crate::quaternion::Quaternion;

/// Largest degree accepted from serialized input.
pub const MAX_DEGREE: usize = 64;

fn check_radius(radius: f64) -> Result<()> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("series radius must be positive and finite, got {radius}")))
    }
}

fn check_center(center: f64) -> Result<()> {
    if center.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("series center must be finite"))
    }
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

/// Binomial recentering weights: `b_m = sum_{n>=m} C(n, m) s^(n-m) a_n` for a real shift `s`.
#[allow(clippy::needless_range_loop)]
fn recenter_weights(len: usize, shift: f64) -> Vec<Vec<f64>> {
    let mut w = vec![vec![0.0; len]; len];
    for n in 0..len {
        let mut binom = 1.0;
        for m in (0..=n).rev() {
            // C(n, m) s^(n-m) built from the top down
            w[m][n] = binom * shift.powi((n - m) as i32);
            binom = binom * m as f64 / (n - m + 1) as f64;
        }
    }
    w
}

/// A quaternion-valued power series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScalarSeriesWire", into = "ScalarSeriesWire")]
pub struct ScalarSeries {
    coeffs: Vec<Quaternion>,
    radius: f64,
    center: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarSeriesWire {
    radius: f64,
    coeffs: Vec<Quaternion>,
    #[serde(default, skip_serializing_if = "is_zero")]
    center: f64,
}

impl TryFrom<ScalarSeriesWire> for ScalarSeries {
    type Error = Error;
    fn try_from(w: ScalarSeriesWire) -> Result<Self> {
        if w.coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::format(format!("series degree exceeds the cap of {MAX_DEGREE}")));
        }
        ScalarSeries::with_center(w.coeffs, w.radius, w.center)
    }
}

impl From<ScalarSeries> for ScalarSeriesWire {
    fn from(s: ScalarSeries) -> Self {
        ScalarSeriesWire { radius: s.radius, coeffs: s.coeffs, center: s.center }
    }
}

impl ScalarSeries {
    /// Series about the origin.
    pub fn new(coeffs: Vec<Quaternion>, radius: f64) -> Result<Self> {
        Self::with_center(coeffs, radius, 0.0)
    }

    pub fn with_center(coeffs: Vec<Quaternion>, radius: f64, center: f64) -> Result<Self> {
        check_radius(radius)?;
        check_center(center)?;
        if coeffs.is_empty() {
            return Err(Error::format("series needs at least one coefficient"));
        }
        if coeffs.iter().any(|q| !q.is_finite()) {
            return Err(Error::format("series coefficients must be finite"));
        }
        Ok(ScalarSeries { coeffs, radius, center })
    }

    pub fn constant(a: Quaternion, radius: f64) -> Result<Self> {
        Self::new(vec![a], radius)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn in_domain(&self, q: Quaternion) -> bool {
        (q - Quaternion::real(self.center)).norm() < self.radius
    }

    /// Horner evaluation of `sum (q - c)^n a_n`.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        if !self.in_domain(q) {
            return Err(Error::domain(format!(
                "point {q} outside the ball of radius {} about {}",
                self.radius, self.center
            )));
        }
        Ok(self.eval_unchecked(q))
    }

    pub(crate) fn eval_unchecked(&self, q: Quaternion) -> Quaternion {
        let d = q - Quaternion::real(self.center);
        let mut acc = *self.coeffs.last().expect("nonempty");
        for a in self.coeffs.iter().rev().skip(1) {
            acc = *a + d * acc;
        }
        acc
    }

    /// Re-expands about another real center; the new ball is the largest one
    /// inside the old ball.
    pub fn recenter(&self, center: f64) -> Result<Self> {
        let radius = self.radius - (center - self.center).abs();
        check_radius(radius)?;
        let w = recenter_weights(self.coeffs.len(), center - self.center);
        let coeffs = w.iter().map(|row| row.iter().zip(&self.coeffs).map(|(s, a)| a.scale(*s)).sum()).collect();
        Ok(ScalarSeries { coeffs, radius, center })
    }

    pub(crate) fn from_parts(coeffs: Vec<Quaternion>, radius: f64, center: f64) -> Self {
        ScalarSeries { coeffs, radius, center }
    }
}

/// A series with `n x n` quaternion matrix coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixSeriesWire", into = "MatrixSeriesWire")]
pub struct MatrixSeries {
    coeffs: Vec<QuatMatrix>,
    radius: f64,
    center: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixSeriesWire {
    radius: f64,
    coeffs: Vec<QuatMatrix>,
    #[serde(default, skip_serializing_if = "is_zero")]
    center: f64,
}

impl TryFrom<MatrixSeriesWire> for MatrixSeries {
    type Error = Error;
    fn try_from(w: MatrixSeriesWire) -> Result<Self> {
        if w.coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::format(format!("series degree exceeds the cap of {MAX_DEGREE}")));
        }
        MatrixSeries::with_center(w.coeffs, w.radius, w.center)
    }
}

impl From<MatrixSeries> for MatrixSeriesWire {
    fn from(s: MatrixSeries) -> Self {
        MatrixSeriesWire { radius: s.radius, coeffs: s.coeffs, center: s.center }
    }
}

impl MatrixSeries {
    pub fn new(coeffs: Vec<QuatMatrix>, radius: f64) -> Result<Self> {
        Self::with_center(coeffs, radius, 0.0)
    }

    pub fn with_center(coeffs: Vec<QuatMatrix>, radius: f64, center: f64) -> Result<Self> {
        check_radius(radius)?;
        check_center(center)?;
        let first = coeffs.first().ok_or_else(|| Error::format("series needs at least one coefficient"))?;
        if !first.is_square() {
            return Err(Error::format("matrix series coefficients must be square"));
        }
        let n = first.rows();
        if coeffs.iter().any(|c| c.rows() != n || c.cols() != n) {
            return Err(Error::format("matrix series coefficients must share one shape"));
        }
        Ok(MatrixSeries { coeffs, radius, center })
    }

    pub fn constant(a: QuatMatrix, radius: f64) -> Result<Self> {
        Self::new(vec![a], radius)
    }

    /// Assembles a matrix series from scalar entry series (row-major, `n*n` of them).
    pub fn from_entries(n: usize, entries: &[ScalarSeries]) -> Result<Self> {
        if entries.len() != n * n || n == 0 {
            return Err(Error::format("entry count does not match the matrix size"));
        }
        let radius = entries.iter().map(|e| e.radius).fold(f64::INFINITY, f64::min);
        let center = entries[0].center;
        if entries.iter().any(|e| e.center != center) {
            return Err(Error::domain("entry series must share a center"));
        }
        let len = entries.iter().map(|e| e.coeffs.len()).max().unwrap_or(1);
        let coeffs = (0..len)
            .map(|k| {
                QuatMatrix::from_fn(n, n, |i, j| entries[i * n + j].coeffs.get(k).copied().unwrap_or(Quaternion::ZERO))
            })
            .collect();
        Self::with_center(coeffs, radius, center)
    }

    pub fn coeffs(&self) -> &[QuatMatrix] {
        &self.coeffs
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn in_domain(&self, q: Quaternion) -> bool {
        (q - Quaternion::real(self.center)).norm() < self.radius
    }

    pub fn eval(&self, q: Quaternion) -> Result<QuatMatrix> {
        if !self.in_domain(q) {
            return Err(Error::domain(format!(
                "point {q} outside the ball of radius {} about {}",
                self.radius, self.center
            )));
        }
        let d = q - Quaternion::real(self.center);
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = c + &acc.left_scale(d);
        }
        Ok(acc)
    }

    /// The `(i, j)` entry as a scalar series.
    pub fn entry(&self, i: usize, j: usize) -> ScalarSeries {
        ScalarSeries::from_parts(self.coeffs.iter().map(|c| c[(i, j)]).collect(), self.radius, self.center)
    }

    pub fn recenter(&self, center: f64) -> Result<Self> {
        let radius = self.radius - (center - self.center).abs();
        check_radius(radius)?;
        let w = recenter_weights(self.coeffs.len(), center - self.center);
        let n = self.dim();
        let coeffs = w
            .iter()
            .map(|row| row.iter().zip(&self.coeffs).fold(QuatMatrix::zeros(n, n), |acc, (s, c)| &acc + &c.scale(*s)))
            .collect();
        Ok(MatrixSeries { coeffs, radius, center })
    }

    /// Applies `A -> L A R` to every coefficient.
    pub fn conjugate_by(&self, left: &QuatMatrix, right: &QuatMatrix) -> Self {
        MatrixSeries {
            coeffs: self.coeffs.iter().map(|c| &(left * c) * right).collect(),
            radius: self.radius,
            center: self.center,
        }
    }

    /// Copies the `size x size` diagonal block starting at `offset` from every coefficient.
    pub fn diagonal_block(&self, offset: usize, size: usize) -> Self {
        MatrixSeries {
            coeffs: self.coeffs.iter().map(|c| c.block(offset, offset, size, size)).collect(),
            radius: self.radius,
            center: self.center,
        }
    }
}

/// Either kind of series, as accepted by evaluation front ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnySeries {
    Scalar(ScalarSeries),
    Matrix(MatrixSeries),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    #[test]
    fn constant_evaluates_to_itself() {
        let f = ScalarSeries::constant(Q::ONE, 1.0).unwrap();
        assert_eq!(f.eval(Q::new(0.1, 0.2, -0.3, 0.4)).unwrap(), Q::ONE);
    }

    #[test]
    fn coefficients_multiply_on_the_right() {
        // f(q) = q i at q = j gives j i = -k
        let f = ScalarSeries::new(vec![Q::ZERO, Q::I], 2.0).unwrap();
        assert_eq!(f.eval(Q::J).unwrap(), -Q::K);
    }

    #[test]
    fn square_at_one_plus_i() {
        let f = ScalarSeries::new(vec![Q::ZERO, Q::ZERO, Q::ONE], 2.0).unwrap();
        let q = Q::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(f.eval(q).unwrap(), q * q);
        assert_eq!(f.eval(q).unwrap(), Q::new(0.0, 2.0, 0.0, 0.0));
    }

    #[test]
    fn outside_radius_is_rejected() {
        let f = ScalarSeries::new(vec![Q::ONE], 1.0).unwrap();
        assert!(matches!(f.eval(Q::real(1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn recentering_preserves_values() {
        let f =
            ScalarSeries::new(vec![Q::I, Q::new(0.5, 0.0, 1.0, 0.0), Q::K, Q::new(0.1, 0.2, 0.3, 0.4)], 1.0).unwrap();
        let g = f.recenter(0.3).unwrap();
        assert!((g.radius() - 0.7).abs() < 1e-15);
        let q = Q::new(0.35, 0.2, -0.1, 0.3);
        assert!(f.eval(q).unwrap().max_abs_diff(&g.eval(q).unwrap()) < 1e-14);
        assert!(f.recenter(1.5).is_err());
    }

    #[test]
    fn matrix_series_left_powers() {
        let f = MatrixSeries::new(vec![QuatMatrix::zeros(1, 1), QuatMatrix::diag(&[Q::I])], 2.0).unwrap();
        assert_eq!(f.eval(Q::J).unwrap()[(0, 0)], -Q::K);
    }

    #[test]
    fn matrix_series_rejects_ragged_shapes() {
        let r = MatrixSeries::new(vec![QuatMatrix::identity(2), QuatMatrix::identity(3)], 1.0);
        assert!(matches!(r, Err(Error::Format(_))));
    }

    #[test]
    fn json_forms() {
        let f: ScalarSeries = serde_json::from_str(r#"{"radius":1,"coeffs":[[0,0,0,0],[1,0,0,0]]}"#).unwrap();
        assert_eq!(f.degree(), 1);
        let any: AnySeries =
            serde_json::from_str(r#"{"radius":1,"coeffs":[{"rows":1,"cols":1,"entries":[[1,0,0,0]]}]}"#).unwrap();
        assert!(matches!(any, AnySeries::Matrix(_)));
        let too_long = format!(r#"{{"radius":1,"coeffs":[{}]}}"#, vec!["[0,0,0,0]"; 66].join(","));
        assert!(serde_json::from_str::<ScalarSeries>(&too_long).is_err());
        assert!(serde_json::from_str::<ScalarSeries>(r#"{"radius":-1,"coeffs":[[0,0,0,0]]}"#).is_err());
    }
}
