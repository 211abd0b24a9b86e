//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the report is always printed; exits non-zero on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use sliceregular::approx::{approximate_matrix_2x2, approximate_scalar, complex_inner_approx, ApproxOptions};
use sliceregular::fixtures::{fixture_rng, gaussian_matrix, random_scalar_polynomial, unit_quaternion};
use sliceregular::linalg::{chi, operator_norm, singular_values, unchi};
use sliceregular::maxprinciple::{
    all_norm_kinds, check_maximizing_vector_theorem, check_norm_max, check_norm_max_all, decompose_at_max, Example1,
    Example2, MatrixFunction, NormKind, SamplingConfig,
};
use sliceregular::sampling::{sample, Region};
use sliceregular::series::{
    split, star_eval_pointwise, star_product, star_product_via_splitting, symmetrization, Reciprocal, ScalarSeries,
};
use sliceregular::{ComplexMatrix, Error, ImaginaryUnit, QuatMatrix, Quaternion};
use sliceregular_cli::suites::{
    corollary_fixture, cubic_schur, mobius_series, norm_max_fixture_at, polynomial_fixture,
};

const SEED: u64 = 7;
const MATRICES: usize = 500;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

/// The complex adjoint built entrywise from `q = (w + x i) + (y + z i) j`.
fn chi_oracle(a: &QuatMatrix) -> DMatrix<Complex64> {
    let n = a.rows();
    DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let q = a[(r % n, c % n)];
        let (a1, a2) = (Complex64::new(q.w, q.x), Complex64::new(q.y, q.z));
        match (r < n, c < n) {
            (true, true) => a1,
            (true, false) => a2,
            (false, true) => -a2.conj(),
            (false, false) => a1.conj(),
        }
    })
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn corpus() -> Vec<QuatMatrix> {
    (0..MATRICES)
        .map(|i| {
            let n = 1 + i % 5;
            gaussian_matrix(n, n, &mut fixture_rng(SEED, i))
        })
        .collect()
}

fn random_poly(seed: u64, index: usize, max_degree: usize) -> ScalarSeries {
    random_scalar_polynomial(1 + index % max_degree, 1.0, &mut fixture_rng(seed, index))
}

fn random_unit(seed: u64, index: usize) -> ImaginaryUnit {
    let q = unit_quaternion(&mut fixture_rng(seed, index));
    ImaginaryUnit::from_vector([q.x, q.y, q.z]).expect("nonzero imaginary part")
}

fn sampling(seed: u64, samples: usize) -> SamplingConfig {
    SamplingConfig { interior: samples, boundary: samples, seed, tolerance: 1e-9 }
}

fn chi_suite() -> Outcome {
    let start = Instant::now();
    let mats = corpus();
    let (mut hom, mut round) = (0.0f64, 0.0f64);
    for (i, a) in mats.iter().enumerate() {
        // same size five places on
        let b = &mats[(i + 5) % MATRICES];
        let ca = to_nalgebra(&chi(a).unwrap().assemble());
        let cb = to_nalgebra(&chi(b).unwrap().assemble());
        hom = hom.max(max_diff(&to_nalgebra(&chi(&(a + b)).unwrap().assemble()), &(&ca + &cb)));
        hom = hom.max(max_diff(&to_nalgebra(&chi(&(a * b)).unwrap().assemble()), &(&ca * &cb)));
        hom = hom.max(max_diff(&to_nalgebra(&chi(&a.adjoint()).unwrap().assemble()), &ca.adjoint()));
        hom = hom.max(max_diff(&ca, &chi_oracle(a)));
    }
    for a in &mats {
        round = round.max(unchi(&chi(a).unwrap()).max_abs_diff(a));
    }
    let elapsed = start.elapsed();
    outcome(
        hom <= 1e-12 && round <= 1e-15 && elapsed <= Duration::from_secs(5),
        format!("homomorphism err {hom:.2e}, round trip {round:.2e}, {:.2}s", elapsed.as_secs_f64()),
    )
}

fn norm_identities() -> Outcome {
    let (mut frob, mut op) = (0.0f64, 0.0f64);
    for a in corpus() {
        let c = chi_oracle(&a);
        let cf = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        frob = frob.max((2f64.sqrt() * a.frobenius_norm() - cf).abs() / cf);
        let co = c.singular_values().max();
        op = op.max((operator_norm(&a) - co).abs() / co);
    }
    outcome(frob <= 1e-12 && op <= 1e-10, format!("Frobenius rel err {frob:.2e}, operator rel err {op:.2e}"))
}

fn singular_value_doubling() -> Outcome {
    let mut worst = 0.0f64;
    for a in corpus() {
        let mut oracle: Vec<f64> = chi_oracle(&a).singular_values().iter().copied().collect();
        oracle.sort_by(|x, y| y.total_cmp(x));
        let scale = oracle[0];
        for (k, s) in singular_values(&a).unwrap().iter().enumerate() {
            worst = worst.max((s - oracle[2 * k]).abs() / scale).max((s - oracle[2 * k + 1]).abs() / scale);
        }
    }
    outcome(worst <= 1e-9, format!("max relative pairing error {worst:.2e}"))
}

fn example2() -> Outcome {
    let a = Example2::singular_values(0.6, 0.8).unwrap();
    let b = Example2::singular_values(0.3, 0.4).unwrap();
    let gap = (a[0] - 1.0).abs().max((a[1] - 1.0).abs()).max((b[0] - 1.0).abs()).max((b[1] - 0.5).abs());
    let r = check_norm_max(&Example2, NormKind::Operator, &sampling(SEED, 4096)).unwrap();
    let s_max_dev = (r.interior_max - 1.0).abs().max((r.boundary_max - 1.0).abs());
    let (p, q) = (Quaternion::new(0.1, 0.0, 0.2, 0.0), Quaternion::new(0.5, 0.0, -0.3, 0.0));
    let non_constant = Example2.eval(p).unwrap().max_abs_diff(&Example2.eval(q).unwrap()) > 0.1;
    outcome(
        gap <= 1e-12 && s_max_dev <= 1e-12 && non_constant,
        format!("{a:?} and {b:?}; sampled s_max deviation from 1 {s_max_dev:.1e}; F non-constant {non_constant}"),
    )
}

fn star_dual_path() -> Outcome {
    let mut worst = 0.0f64;
    for pair in 0..50 {
        let f = random_poly(SEED ^ 0x51, 2 * pair, 9);
        let g = random_poly(SEED ^ 0x51, 2 * pair + 1, 9);
        let i = random_unit(SEED ^ 0x52, pair);
        let conv = star_product(&f, &g).unwrap();
        let via = star_product_via_splitting(&f, &g, i, i.orthogonal()).unwrap();
        for q in sample(Region::Ball { radius: 0.99 }, 100, SEED + pair as u64).unwrap() {
            worst = worst.max((conv.eval(q).unwrap() - via.eval(q).unwrap()).norm());
        }
    }
    let linear = |a: Quaternion| ScalarSeries::new(vec![-a, Quaternion::ONE], 2.0).unwrap();
    let ij = star_product(&linear(Quaternion::I), &linear(Quaternion::J)).unwrap();
    let ji = star_product(&linear(Quaternion::J), &linear(Quaternion::I)).unwrap();
    let diff: Vec<Quaternion> = ij.coeffs().iter().zip(ji.coeffs()).map(|(a, b)| *a - *b).collect();
    let witness = diff == [Quaternion::K.scale(2.0), Quaternion::ZERO, Quaternion::ZERO];
    outcome(worst <= 1e-11 && witness, format!("max dual-path gap {worst:.2e}; difference {diff:?}"))
}

fn reciprocal_identity() -> Outcome {
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for index in 0..20 {
        let f = random_poly(SEED ^ 0x61, index, 8);
        let (inv, symm) = (Reciprocal::new(&f), symmetrization(&f));
        let mut checked = 0;
        let mut round = 0;
        while checked < 100 {
            for q in sample(Region::Ball { radius: 0.99 }, 100, SEED * 1000 + (index * 100 + round) as u64).unwrap() {
                if checked == 100 {
                    break;
                }
                if symm.eval(q).unwrap().norm() < 1e-3 {
                    skipped += 1;
                    continue;
                }
                let one = star_eval_pointwise(f.eval(q).unwrap(), |p| inv.eval(p), q).unwrap();
                worst = worst.max((one - Quaternion::ONE).norm());
                checked += 1;
            }
            round += 1;
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max |f * f^-* - 1| {worst:.2e} over 2000 points, {skipped} near-zero points skipped"),
    )
}

fn extension_round_trip() -> Outcome {
    let mut worst = 0.0f64;
    for index in 0..20 {
        let f = random_poly(SEED ^ 0x71, index, 9);
        for s in 0..5 {
            let i = random_unit(SEED ^ 0x72, 5 * index + s);
            let pair = split(&f, i, i.orthogonal()).unwrap();
            for q in sample(Region::Ball { radius: 0.99 }, 100, (100 * index + s) as u64).unwrap() {
                worst = worst.max((pair.eval(q).unwrap() - f.eval(q).unwrap()).norm());
            }
        }
    }
    outcome(worst <= 1e-12, format!("max |ext(f_J) - f| {worst:.2e}"))
}

fn maximizing_vector() -> Outcome {
    let (mut leak, mut constancy, mut failures) = (0.0f64, 0.0f64, 0);
    for index in 0..20 {
        let (_, f) = norm_max_fixture_at(SEED, index);
        match check_maximizing_vector_theorem(&f, 0.0, &sampling(SEED, 4096), 1e-20, 1e-10) {
            Ok(r) => {
                leak = leak.max(r.leak);
                constancy = constancy.max(r.constancy_error);
            }
            Err(e) => {
                eprintln!("maximizing vector fixture {index}: {e}");
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0 && leak <= 1e-20 && constancy <= 1e-10,
        format!("max leak {leak:.2e}, max constancy error {constancy:.2e}, {failures} errors"),
    )
}

fn decomposition() -> Outcome {
    let (mut recon, mut unit, mut norm, mut failures) = (0.0f64, 0.0f64, 0.0f64, 0);
    for index in 0..20 {
        let (_, f) = norm_max_fixture_at(SEED, index);
        let d = match decompose_at_max(&f, Quaternion::ZERO, &sampling(SEED, 4096), 1e-9) {
            Ok(d) => d,
            Err(e) => {
                eprintln!("decomposition fixture {index}: {e}");
                failures += 1;
                continue;
            }
        };
        let n = d.u.rows();
        let id = QuatMatrix::identity(n);
        unit = unit.max((&d.u.adjoint() * &d.u).max_abs_diff(&id)).max((&d.v.adjoint() * &d.v).max_abs_diff(&id));
        let g = d.g.as_ref().unwrap();
        for q in sample(Region::Ball { radius: 0.999 }, 200, SEED + index as u64).unwrap() {
            let fq = f.eval(q).unwrap();
            recon = recon.max((&fq - &d.reconstruct(q).unwrap()).frobenius_norm());
            norm = norm.max((d.s.max(operator_norm(&g.eval(q).unwrap())) - operator_norm(&fq)).abs());
        }
    }
    outcome(
        failures == 0 && recon <= 1e-9 && unit <= 1e-12 && norm <= 1e-10,
        format!("reconstruction {recon:.2e}, unitarity {unit:.2e}, norm preservation {norm:.2e}, {failures} errors"),
    )
}

fn example1() -> Outcome {
    let f = Example1::new(0.25, 1.0).unwrap();
    let mut moduli = Vec::new();
    let mut not_applicable = true;
    for seed in 0..10 {
        let cfg = sampling(seed, 4096);
        let r = check_norm_max(&f, NormKind::Operator, &cfg).unwrap();
        moduli.push(r.overall_argmax().norm());
        not_applicable &= matches!(decompose_at_max(&f, r.argmax, &cfg, 1e-9), Err(Error::NotApplicable(_)));
    }
    let in_shell = moduli.iter().all(|m| (0.25..=0.2625).contains(m));
    // F(0.5) = [[-0.5, 2], [0, 2]]
    let oracle: f64 = Matrix2::new(-0.5, 2.0, 0.0, 2.0).singular_values().max();
    let computed = operator_norm(&f.eval(Quaternion::real(0.5)).unwrap());
    let printed = Example1::norm_printed_form(Quaternion::real(0.5));
    let gap = (computed - oracle).abs();
    let max_modulus = moduli.iter().copied().fold(0.0, f64::max);
    outcome(
        in_shell && not_applicable && gap <= 1e-12,
        format!(
            "argmax |q| <= {max_modulus:.4}, NotApplicable {not_applicable}, norm at 0.5 {computed:.12} vs oracle gap {gap:.1e}, printed formula {printed:.6} (off by {:.3})",
            printed - computed
        ),
    )
}

fn max_principle_sampling() -> Outcome {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    let mut checks = 0;
    for index in 0..20 {
        let (_, f) = polynomial_fixture(SEED, index);
        for r in check_norm_max_all(&f, &all_norm_kinds(f.dim()), &sampling(SEED, 4096)).unwrap() {
            worst = worst.max(r.interior_max - r.boundary_max);
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed <= Duration::from_secs(60),
        format!("{checks} norm checks, max(interior - shell) {worst:.2e}, {:.2}s", elapsed.as_secs_f64()),
    )
}

fn approximation() -> Outcome {
    let opts = ApproxOptions { seed: SEED, ..ApproxOptions::default() };
    let f = cubic_schur();
    let a = approximate_scalar(&f, ImaginaryUnit::J, ImaginaryUnit::K, 1e-2, &opts).unwrap();
    let sp = split(&f, ImaginaryUnit::J, ImaginaryUnit::K).unwrap();
    let depth = [&sp.f, &sp.g].iter().map(|g| complex_inner_approx(g, 2.5e-3, &opts).unwrap().depth).max().unwrap();
    let modulus = [&a.r1, &a.r2]
        .iter()
        .flat_map(|b| {
            (0..1024).map(move |k| {
                (b.eval(Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 1024.0)).norm() - 1.0).abs()
            })
        })
        .fold(0.0, f64::max);
    let mut mobius = 0.0f64;
    let mut depth_one = true;
    for m in [Complex64::new(0.5, 0.0), Complex64::new(0.3, 0.4), Complex64::new(0.0, -0.7)] {
        let r = complex_inner_approx(&mobius_series(m), 1e-12, &opts).unwrap();
        depth_one &= r.depth == 1;
        mobius = mobius.max(r.measured_sup);
    }
    let corollary = approximate_matrix_2x2(&corollary_fixture(SEED), 1e-2, &opts, 1e-9, 1e-9);
    let corollary_sup = corollary.as_ref().map(|m| m.measured_sup).unwrap_or(f64::INFINITY);
    outcome(
        a.measured_sup <= 1e-2
            && depth <= 64
            && depth_one
            && mobius <= 1e-12
            && modulus <= 1e-10
            && corollary_sup <= 1e-2,
        format!(
            "scalar sup {:.2e} at depth {depth}, Mobius {mobius:.1e} (depth one {depth_one}), circle modulus {modulus:.1e}, 2x2 sup {corollary_sup:.2e}",
            a.measured_sup
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sliceregular"))
            .args(["verify", "all", "--seed", "7"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        identical && a.status.success(),
        format!("{} bytes, identical {identical}, exit {:?}", a.stdout.len(), a.status.code()),
    )
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("complex adjoint suite", chi_suite),
        ("norm identities", norm_identities),
        ("singular value doubling", singular_value_doubling),
        ("non-regular diagonal example", example2),
        ("regular product dual path", star_dual_path),
        ("regular reciprocal", reciprocal_identity),
        ("slice extension round trip", extension_round_trip),
        ("maximizing vector", maximizing_vector),
        ("decomposition", decomposition),
        ("annulus example", example1),
        ("max principle sampling", max_principle_sampling),
        ("rational inner approximation", approximation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.passed);
        println!("criterion {:>2} {} {name}: {}", k + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
