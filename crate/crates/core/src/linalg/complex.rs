//! Dense complex matrices and a one-sided (Hestenes) Jacobi SVD.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;
const JACOBI_EPS: f64 = 1e-15;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrixWire", into = "ComplexMatrixWire")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexMatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<ComplexMatrixWire> for ComplexMatrix {
    type Error = Error;
    fn try_from(w: ComplexMatrixWire) -> Result<Self> {
        let data = w.entries.iter().map(|e| Complex64::new(e[0], e[1])).collect();
        ComplexMatrix::new(w.rows, w.cols, data)
    }
}

impl From<ComplexMatrix> for ComplexMatrixWire {
    fn from(m: ComplexMatrix) -> Self {
        ComplexMatrixWire { rows: m.rows, cols: m.cols, entries: m.data.iter().map(|c| [c.re, c.im]).collect() }
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::format("matrix dimensions must be positive"));
        }
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::format(format!("expected {rows}x{cols} entries, got {}", data.len())));
        }
        if data.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::format("matrix entries must be finite"));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c.conj()).collect() }
    }

    pub fn neg(&self) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| -c).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Copies the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        ComplexMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Singular value decomposition by one-sided Jacobi rotations.
    pub fn svd(&self) -> ComplexSvd {
        jacobi_svd(self)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.svd().values
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, o: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in complex matmul");
        let mut out = ComplexMatrix::zeros(self.rows, o.cols);
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

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, o: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, o: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `A V = U diag(values)` with `values` descending and `V` unitary.
///
/// `u` has one column per singular value; columns belonging to zero singular
/// values are left zero.
#[derive(Debug, Clone)]
pub struct ComplexSvd {
    pub values: Vec<f64>,
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
    pub sweeps: usize,
}

fn jacobi_svd(m: &ComplexMatrix) -> ComplexSvd {
    let (rows, n) = (m.rows, m.cols);
    // work column-major for cache-friendly column rotations
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = a[p].iter().map(|c| c.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|c| c.norm_sqr()).sum();
                let gamma: Complex64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= JACOBI_EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 { 1.0 } else { zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt()) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = a.iter().map(|col| col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let vm = ComplexMatrix::from_fn(n, n, |i, j| v[order[j]][i]);
    let um = ComplexMatrix::from_fn(rows, n, |i, j| {
        let k = order[j];
        if norms[k] > 0.0 {
            a[k][i] / norms[k]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    ComplexSvd { values, u: um, v: vm, sweeps }
}

fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let ap = *x;
        let aq = *y * phase;
        *x = ap * c - aq * s;
        *y = ap * s + aq * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_svd() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0)]).unwrap();
        let s = m.svd();
        assert_eq!(s.values, vec![3.0, 1.0]);
    }

    #[test]
    fn svd_reconstructs() {
        let m =
            ComplexMatrix::from_fn(4, 4, |i, j| c((i * 3 + j) as f64 * 0.37 - 1.1, ((i + 2 * j) % 5) as f64 * 0.21));
        let s = m.svd();
        // A V = U S
        let av = &m * &s.v;
        let us = ComplexMatrix::from_fn(4, 4, |i, j| s.u[(i, j)] * s.values[j]);
        assert!(av.max_abs_diff(&us) < 1e-13);
        let vhv = &s.v.adjoint() * &s.v;
        assert!(vhv.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-14);
        assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rank_deficient() {
        // second column twice the first
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 2.0), c(0.5, 0.0), c(1.0, 0.0)]).unwrap();
        let s = m.svd();
        assert!(s.values[1] < 1e-15);
        assert!((s.values[0] - m.frobenius_norm()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"rows":1,"cols":1,"entries":[[1,2,3]]}"#).is_err());
        let m: ComplexMatrix = serde_json::from_str(r#"{"rows":1,"cols":2,"entries":[[1,2],[3,4]]}"#).unwrap();
        assert_eq!(m[(0, 1)], c(3.0, 4.0));
    }
}
