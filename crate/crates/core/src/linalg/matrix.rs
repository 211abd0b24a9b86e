use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Dense row-major matrix over the quaternions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuatMatrixWire", into = "QuatMatrixWire")]
pub struct QuatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuatMatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl TryFrom<QuatMatrixWire> for QuatMatrix {
    type Error = Error;
    fn try_from(w: QuatMatrixWire) -> Result<Self> {
        QuatMatrix::new(w.rows, w.cols, w.entries)
    }
}

impl From<QuatMatrix> for QuatMatrixWire {
    fn from(m: QuatMatrix) -> Self {
        QuatMatrixWire { rows: m.rows, cols: m.cols, entries: m.data }
    }
}

impl QuatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::format("matrix dimensions must be positive"));
        }
        if rows.checked_mul(cols) != Some(entries.len()) {
            return Err(Error::format(format!("expected {rows}x{cols} entries, got {}", entries.len())));
        }
        if entries.iter().any(|q| !q.is_finite()) {
            return Err(Error::format("matrix entries must be finite"));
        }
        Ok(QuatMatrix { rows, cols, data: entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![Quaternion::ONE; n])
    }

    pub fn diag(d: &[Quaternion]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, &q) in d.iter().enumerate() {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QuatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        QuatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        QuatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.scale(s)).collect() }
    }

    /// `q A`, scalar on the left of every entry.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        QuatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| q * *a).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &QuatMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> QuatVector {
        QuatVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn row(&self, i: usize) -> QuatVector {
        QuatVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        QuatMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Block-diagonal `diag(a, b)`.
    pub fn block_diag(a: &QuatMatrix, b: &QuatMatrix) -> Self {
        let (r, c) = (a.rows + b.rows, a.cols + b.cols);
        QuatMatrix::from_fn(r, c, |i, j| {
            if i < a.rows && j < a.cols {
                a[(i, j)]
            } else if i >= a.rows && j >= a.cols {
                b[(i - a.rows, j - a.cols)]
            } else {
                Quaternion::ZERO
            }
        })
    }

    pub fn mul_vec(&self, v: &QuatVector) -> QuatVector {
        assert_eq!(v.len(), self.cols, "shape mismatch in matrix-vector product");
        QuatVector(
            (0..self.rows)
                .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(&v.0).map(|(a, x)| *a * *x).sum())
                .collect(),
        )
    }
}

impl Index<(usize, usize)> for QuatMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QuatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QuatMatrix {
    type Output = QuatMatrix;
    fn mul(self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in quaternion matmul");
        let mut out = QuatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &QuatMatrix {
    type Output = QuatMatrix;
    fn add(self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl Sub for &QuatMatrix {
    type Output = QuatMatrix;
    fn sub(self, o: &QuatMatrix) -> QuatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

/// Column vector in the left quaternionic vector space `H^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuatVector(pub Vec<Quaternion>);

impl QuatVector {
    pub fn zeros(n: usize) -> Self {
        QuatVector(vec![Quaternion::ZERO; n])
    }

    /// Standard basis vector `e_k`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[k] = Quaternion::ONE;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<u, v> = v* u`.
    pub fn inner(u: &QuatVector, v: &QuatVector) -> Quaternion {
        v.0.iter().zip(&u.0).map(|(a, b)| a.conj() * *b).sum()
    }

    /// `v q`, scalar on the right.
    pub fn right_scale(&self, q: Quaternion) -> Self {
        QuatVector(self.0.iter().map(|a| *a * q).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        QuatVector(self.0.iter().map(|a| a.scale(s)).collect())
    }

    pub fn sub(&self, o: &QuatVector) -> Self {
        QuatVector(self.0.iter().zip(&o.0).map(|(a, b)| *a - *b).collect())
    }

    pub fn max_abs_diff(&self, o: &QuatVector) -> f64 {
        self.0.iter().zip(&o.0).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }
}
