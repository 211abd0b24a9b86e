use super::split::{split, SplitPair};
use super::ScalarSeries;
use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};

/// `|f^s(q)|` at or below this makes the reciprocal undefined.
pub const RECIPROCAL_SINGULAR_TOL: f64 = 1e-12;

fn shared_ball(f: &ScalarSeries, g: &ScalarSeries) -> Result<(f64, f64)> {
    if f.center() != g.center() {
        return Err(Error::domain(format!(
            "star product needs series about one center, got {} and {}",
            f.center(),
            g.center()
        )));
    }
    Ok((f.radius().min(g.radius()), f.center()))
}

/// Regular product: `(f * g)_n = sum_{k <= n} a_k b_{n-k}`.
pub fn star_product(f: &ScalarSeries, g: &ScalarSeries) -> Result<ScalarSeries> {
    let (radius, center) = shared_ball(f, g)?;
    let (a, b) = (f.coeffs(), g.coeffs());
    let mut out = vec![Quaternion::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    Ok(ScalarSeries::from_parts(out, radius, center))
}

/// The regular product assembled from splittings `f = F + G J`, `g = H + K J`
/// on `L_I`: `F H - G conj(K(conj z)) + (F K + G conj(H(conj z))) J`.
pub fn star_product_via_splitting(
    f: &ScalarSeries,
    g: &ScalarSeries,
    slice: ImaginaryUnit,
    orth: ImaginaryUnit,
) -> Result<SplitPair> {
    let (radius, center) = shared_ball(f, g)?;
    let sf = split(f, slice, orth)?;
    let sg = split(g, slice, orth)?;
    let first = &(&sf.f * &sg.f) - &(&sf.g * &sg.g.conj_coeffs());
    let second = &(&sf.f * &sg.g) + &(&sf.g * &sg.f.conj_coeffs());
    SplitPair::new(slice, orth, first, second, radius, center)
}

/// `f^c`: conjugated coefficients.
pub fn regular_conjugate(f: &ScalarSeries) -> ScalarSeries {
    ScalarSeries::from_parts(f.coeffs().iter().map(|a| a.conj()).collect(), f.radius(), f.center())
}

/// `f^s = f * f^c`, whose coefficients are real.
pub fn symmetrization(f: &ScalarSeries) -> ScalarSeries {
    star_product(f, &regular_conjugate(f)).expect("a series and its conjugate share a center")
}

/// Precomputed `f^s` and `f^c` for evaluating `f^{-*}(q) = f^s(q)^{-1} f^c(q)`.
#[derive(Debug, Clone)]
pub struct Reciprocal {
    symm: ScalarSeries,
    conj: ScalarSeries,
}

impl Reciprocal {
    pub fn new(f: &ScalarSeries) -> Self {
        Reciprocal { symm: symmetrization(f), conj: regular_conjugate(f) }
    }

    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        let s = self.symm.eval(q)?;
        let modulus = s.norm();
        if modulus <= RECIPROCAL_SINGULAR_TOL {
            return Err(Error::Singular { point: q, modulus });
        }
        Ok(s.inverse()? * self.conj.eval(q)?)
    }
}

/// Regular reciprocal of `f` evaluated at `q`.
pub fn regular_reciprocal(f: &ScalarSeries, q: Quaternion) -> Result<Quaternion> {
    Reciprocal::new(f).eval(q)
}

/// Value of `f * g` at `q` from values of the factors:
/// `f(q) g(f(q)^{-1} q f(q))`, and zero where `f(q) = 0`.
pub fn star_eval_pointwise(
    f_at_q: Quaternion,
    g: impl Fn(Quaternion) -> Result<Quaternion>,
    q: Quaternion,
) -> Result<Quaternion> {
    if f_at_q == Quaternion::ZERO {
        return Ok(Quaternion::ZERO);
    }
    let p = f_at_q.inverse()? * q * f_at_q;
    Ok(f_at_q * g(p)?)
}
