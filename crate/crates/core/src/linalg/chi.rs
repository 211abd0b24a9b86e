//! The complex adjoint map `A = A1 + A2 j  ->  [[A1, A2], [-conj(A2), conj(A1)]]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::complex::ComplexMatrix;
use super::matrix::{QuatMatrix, QuatVector};
use crate::error::{Error, Result};
use crate::quaternion::{ComplexPair, Quaternion};

/// Relative tolerance for accepting a complex matrix as a complex adjoint.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// The two `n x n` blocks of a complex adjoint matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrix", into = "ComplexMatrix")]
pub struct ChiBlock {
    pub a1: ComplexMatrix,
    pub a2: ComplexMatrix,
}

impl ChiBlock {
    pub fn n(&self) -> usize {
        self.a1.rows()
    }

    /// The assembled `2n x 2n` complex matrix.
    pub fn assemble(&self) -> ComplexMatrix {
        assemble(&self.a1, &self.a2)
    }

    /// Reads the blocks back from an assembled matrix, rejecting matrices
    /// whose lower blocks disagree with the upper ones beyond tolerance.
    pub fn from_assembled(m: &ComplexMatrix) -> Result<Self> {
        if m.rows() != m.cols() || !m.rows().is_multiple_of(2) {
            return Err(Error::format(format!("complex adjoint must be 2n x 2n, got {}x{}", m.rows(), m.cols())));
        }
        let n = m.rows() / 2;
        let a1 = m.block(0, 0, n, n);
        let a2 = m.block(0, n, n, n);
        let lower_left = m.block(n, 0, n, n);
        let lower_right = m.block(n, n, n, n);
        let scale = m.entries().iter().map(|c| c.norm()).fold(1.0, f64::max);
        let err = lower_left.max_abs_diff(&a2.conj().neg()).max(lower_right.max_abs_diff(&a1.conj()));
        if err > STRUCTURE_TOL * scale {
            return Err(Error::format(format!("not a complex adjoint matrix: block structure violated by {err:e}")));
        }
        Ok(ChiBlock { a1, a2 })
    }
}

impl TryFrom<ComplexMatrix> for ChiBlock {
    type Error = Error;
    fn try_from(m: ComplexMatrix) -> Result<Self> {
        ChiBlock::from_assembled(&m)
    }
}

impl From<ChiBlock> for ComplexMatrix {
    fn from(b: ChiBlock) -> Self {
        b.assemble()
    }
}

fn split(a: &QuatMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let pairs: Vec<ComplexPair> = a.entries().iter().map(|q| q.to_pair()).collect();
    let c = a.cols();
    let a1 = ComplexMatrix::from_fn(a.rows(), c, |i, j| pairs[i * c + j].z1);
    let a2 = ComplexMatrix::from_fn(a.rows(), c, |i, j| pairs[i * c + j].z2);
    (a1, a2)
}

fn assemble(a1: &ComplexMatrix, a2: &ComplexMatrix) -> ComplexMatrix {
    let (r, c) = (a1.rows(), a1.cols());
    ComplexMatrix::from_fn(2 * r, 2 * c, |i, j| match (i < r, j < c) {
        (true, true) => a1[(i, j)],
        (true, false) => a2[(i, j - c)],
        (false, true) => -a2[(i - r, j)].conj(),
        (false, false) => a1[(i - r, j - c)].conj(),
    })
}

/// Complex adjoint of a square quaternion matrix.
pub fn chi(a: &QuatMatrix) -> Result<ChiBlock> {
    if !a.is_square() {
        return Err(Error::domain(format!("complex adjoint needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let (a1, a2) = split(a);
    Ok(ChiBlock { a1, a2 })
}

/// The same block construction for rectangular matrices (`2m x 2n`).
pub(crate) fn embed(a: &QuatMatrix) -> ComplexMatrix {
    let (a1, a2) = split(a);
    assemble(&a1, &a2)
}

/// Inverse of [`chi`].
pub fn unchi(block: &ChiBlock) -> QuatMatrix {
    let n = block.n();
    QuatMatrix::from_fn(n, block.a1.cols(), |i, j| {
        Quaternion::from_pair(ComplexPair { z1: block.a1[(i, j)], z2: block.a2[(i, j)] })
    })
}

/// Vector `x = x1 + x2 j` goes to `(x1, -conj(x2))`, so that
/// `chi(A) to_complex(x) = to_complex(A x)` and norms are preserved.
pub fn vector_to_complex(x: &QuatVector) -> Vec<Complex64> {
    let pairs: Vec<ComplexPair> = x.0.iter().map(|q| q.to_pair()).collect();
    pairs.iter().map(|p| p.z1).chain(pairs.iter().map(|p| -p.z2.conj())).collect()
}

/// Inverse of [`vector_to_complex`]; the input length must be even.
pub fn vector_from_complex(v: &[Complex64]) -> QuatVector {
    let n = v.len() / 2;
    QuatVector((0..n).map(|i| Quaternion::from_pair(ComplexPair { z1: v[i], z2: -v[n + i].conj() })).collect())
}
