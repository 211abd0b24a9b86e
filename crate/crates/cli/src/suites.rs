//! Verification suites: seeded fixtures run through the library checks, one
//! report per fixture and norm.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use sliceregular::approx::{
    approximate_matrix_2x2, approximate_scalar, complex_inner_approx, ApproxOptions, BlaschkeProduct,
};
use sliceregular::fixtures::{
    assemble_fixture, fixture_rng, norm_max_fixture, random_matrix_polynomial, random_unitary,
};
use sliceregular::linalg::operator_norm;
use sliceregular::maxprinciple::{
    check_maximizing_vector_theorem, check_min_singular_invertibility, check_norm_max, check_norm_max_all,
    decompose_at_max, Example1, Example2, MatrixFunction, MinVerdict, NormKind, SamplingConfig, Verdict,
};
use sliceregular::series::{ComplexSeries, MatrixSeries, ScalarSeries};
use sliceregular::{Error, ImaginaryUnit, QuatMatrix, Quaternion};

use crate::config::RunConfig;

/// Number of random fixtures per suite.
pub const FIXTURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    FrobeniusMax,
    OperatorMax,
    MaximizingVector,
    Decomposition,
    SingularMax,
    SingularMin,
    Example1,
    Example2,
    Approximation,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub theorem: String,
    pub fixture: String,
    pub seed: u64,
    pub interior_max: Option<f64>,
    pub boundary_max: Option<f64>,
    pub verdict: String,
    pub passed: bool,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Envelope {
    pub config: RunConfig,
    pub passed: bool,
    pub reports: Vec<Report>,
}

impl Report {
    fn error(theorem: &str, fixture: String, seed: u64, e: &Error) -> Report {
        Report {
            theorem: theorem.into(),
            fixture,
            seed,
            interior_max: None,
            boundary_max: None,
            verdict: format!("error: {e}"),
            passed: false,
            details: Value::Null,
        }
    }
}

pub fn run(suite: Suite, cfg: &RunConfig) -> Envelope {
    let reports = match suite {
        Suite::FrobeniusMax => norm_max(cfg, &[NormKind::Frobenius]),
        Suite::OperatorMax => norm_max(cfg, &[NormKind::Operator]),
        Suite::SingularMax => {
            norm_max(cfg, &[NormKind::SingularValue(1), NormKind::SingularValue(2), NormKind::SingularValue(3)])
        }
        Suite::MaximizingVector => maximizing_vector(cfg),
        Suite::Decomposition => decomposition(cfg),
        Suite::SingularMin => singular_min(cfg),
        Suite::Example1 => example1(cfg),
        Suite::Example2 => example2(cfg),
        Suite::Approximation => approximation(cfg),
        Suite::All => [
            Suite::FrobeniusMax,
            Suite::OperatorMax,
            Suite::MaximizingVector,
            Suite::Decomposition,
            Suite::SingularMax,
            Suite::SingularMin,
            Suite::Example1,
            Suite::Example2,
            Suite::Approximation,
        ]
        .into_iter()
        .flat_map(|s| run(s, cfg).reports)
        .collect(),
    };
    Envelope { config: cfg.clone(), passed: reports.iter().all(|r| r.passed), reports }
}

fn sampling(cfg: &RunConfig) -> SamplingConfig {
    SamplingConfig { interior: cfg.samples, boundary: cfg.samples, seed: cfg.seed, tolerance: cfg.tolerances.max_slack }
}

/// Random polynomial fixture `index` on the unit ball: size 2 or 3, degree 1 to 4.
pub fn polynomial_fixture(seed: u64, index: usize) -> (String, MatrixSeries) {
    let (n, degree) = (2 + index % 2, 1 + index % 4);
    let f = random_matrix_polynomial(n, degree, 1.0, &mut fixture_rng(seed, index));
    (format!("random_polynomial[{index}] n={n} degree={degree}"), f)
}

/// `U diag(1, H(q)) V` fixture `index` with `sum |H_k| = 0.9`.
pub fn norm_max_fixture_at(seed: u64, index: usize) -> (String, MatrixSeries) {
    let (n, degree) = (2 + index % 2, 1 + index % 4);
    let fx = norm_max_fixture(n, degree, 0.9, &mut fixture_rng(seed ^ 0x4D41_5856, index));
    (format!("unitary_block[{index}] n={n} degree={degree}"), fx.series)
}

fn norm_max(cfg: &RunConfig, kinds: &[NormKind]) -> Vec<Report> {
    let sc = sampling(cfg);
    let mut out = Vec::new();
    for index in 0..FIXTURES {
        let (name, f) = polynomial_fixture(cfg.seed, index);
        let kinds: Vec<NormKind> =
            kinds.iter().copied().filter(|k| !matches!(k, NormKind::SingularValue(j) if *j > f.dim())).collect();
        match check_norm_max_all(&f, &kinds, &sc) {
            Ok(reports) => out.extend(reports.into_iter().map(|r| Report {
                theorem: format!("{}-max", r.norm_kind),
                fixture: name.clone(),
                seed: r.seed,
                interior_max: Some(r.interior_max),
                boundary_max: Some(r.boundary_max),
                verdict: r.verdict.to_string(),
                passed: r.verdict == Verdict::Consistent,
                details: json!({
                    "norm": r.norm_kind,
                    "argmax": r.argmax,
                    "boundary_argmax": r.boundary_argmax,
                    "interior_samples": r.interior_samples,
                    "boundary_samples": r.boundary_samples,
                    "tolerance": sc.tolerance,
                }),
            })),
            Err(e) => out.push(Report::error("norm-max", name, cfg.seed, &e)),
        }
    }
    out
}

fn maximizing_vector(cfg: &RunConfig) -> Vec<Report> {
    let sc = sampling(cfg);
    let tol = &cfg.tolerances;
    (0..FIXTURES)
        .map(|index| {
            let (name, f) = norm_max_fixture_at(cfg.seed, index);
            match check_maximizing_vector_theorem(&f, 0.0, &sc, tol.leak, tol.constancy) {
                Ok(r) => Report {
                    theorem: "maximizing-vector".into(),
                    fixture: name,
                    seed: r.seed,
                    interior_max: Some(r.norm),
                    boundary_max: None,
                    verdict: if r.passed { "consistent" } else { "violation" }.into(),
                    passed: r.passed,
                    details: json!({
                        "q0": r.q0,
                        "x0": r.x0,
                        "leak": r.leak,
                        "leak_tolerance": r.leak_tolerance,
                        "constancy_error": r.constancy_error,
                        "constancy_tolerance": r.constancy_tolerance,
                        "hypothesis_slack": r.hypothesis_slack,
                    }),
                },
                Err(e) => Report::error("maximizing-vector", name, cfg.seed, &e),
            }
        })
        .collect()
}

fn decomposition(cfg: &RunConfig) -> Vec<Report> {
    let sc = sampling(cfg);
    let tol = &cfg.tolerances;
    (0..FIXTURES)
        .map(|index| {
            let (name, f) = norm_max_fixture_at(cfg.seed, index);
            match decompose_at_max(&f, Quaternion::ZERO, &sc, tol.block) {
                Ok(d) => {
                    let passed = d.reconstruction_residual <= tol.reconstruction
                        && d.unitarity_residual <= tol.unitarity
                        && d.norm_residual <= tol.norm_preservation;
                    Report {
                        theorem: "decomposition".into(),
                        fixture: name,
                        seed: cfg.seed,
                        interior_max: Some(d.s),
                        boundary_max: None,
                        verdict: if passed { "consistent" } else { "violation" }.into(),
                        passed,
                        details: json!({
                            "q0": d.q0,
                            "s": d.s,
                            "off_diagonal_residual": d.off_diagonal_residual,
                            "reconstruction_residual": d.reconstruction_residual,
                            "norm_residual": d.norm_residual,
                            "unitarity_residual": d.unitarity_residual,
                            "checked_points": d.checked_points,
                        }),
                    }
                }
                Err(e) => Report::error("decomposition", name, cfg.seed, &e),
            }
        })
        .collect()
}

fn singular_min_fixtures(seed: u64) -> Vec<(String, MatrixSeries)> {
    let series = |c: Vec<QuatMatrix>| MatrixSeries::new(c, 1.0).expect("valid fixture");
    let (zero, one, half) = (Quaternion::ZERO, Quaternion::ONE, Quaternion::real(0.5));
    let mut out = vec![
        ("diag(q, q)".to_string(), series(vec![QuatMatrix::zeros(2, 2), QuatMatrix::identity(2)])),
        ("diag(q, 1)".to_string(), series(vec![QuatMatrix::diag(&[zero, one]), QuatMatrix::diag(&[one, zero])])),
        ("diag(q, 1 + q/2)".to_string(), series(vec![QuatMatrix::diag(&[zero, one]), QuatMatrix::diag(&[one, half])])),
    ];
    for (index, a) in [0.25, -0.4, 0.1].into_iter().enumerate() {
        let mut rng = fixture_rng(seed ^ 0x4D494E, index);
        let n = 2 + index % 2;
        let w = &random_unitary(n, &mut rng) * &random_unitary(n, &mut rng);
        out.push((format!("(q - a) W, a = {a}, W unitary [{index}] n={n}"), series(vec![w.scale(-a), w])));
    }
    for index in 0..4 {
        let (name, f) = polynomial_fixture(seed ^ 0x4D494E, index);
        out.push((name, f));
    }
    out
}

fn singular_min(cfg: &RunConfig) -> Vec<Report> {
    let sc = sampling(cfg);
    singular_min_fixtures(cfg.seed)
        .into_iter()
        .map(|(name, f)| match check_min_singular_invertibility(&f, &sc, cfg.tolerances.min_slack) {
            Ok(r) => Report {
                theorem: "singular-min".into(),
                fixture: name,
                seed: r.seed,
                interior_max: None,
                boundary_max: None,
                verdict: match r.verdict {
                    MinVerdict::Consistent => "consistent",
                    MinVerdict::Violation => "violation",
                    MinVerdict::HypothesisNotSatisfied => "hypothesis_not_satisfied",
                }
                .into(),
                passed: r.verdict != MinVerdict::Violation,
                details: json!({
                    "q_star": r.q_star,
                    "singular_values": r.singular_values,
                    "sampled_minima": r.sampled_minima,
                    "hypothesis_met": r.hypothesis_met,
                    "invertibility": r.invertibility,
                }),
            },
            Err(e) => Report::error("singular-min", name, cfg.seed, &e),
        })
        .collect()
}

fn example1(cfg: &RunConfig) -> Vec<Report> {
    let name = format!("annulus r={} R={}", cfg.r, cfg.big_r);
    let f = match Example1::new(cfg.r, cfg.big_r) {
        Ok(f) => f,
        Err(e) => return vec![Report::error("example1", name, cfg.seed, &e)],
    };
    let result = (|| -> sliceregular::Result<Report> {
        let sc = sampling(cfg);
        let max = check_norm_max(&f, NormKind::Operator, &sc)?;
        let argmax = max.overall_argmax();
        let in_inner_shell = (cfg.r..=1.05 * cfg.r).contains(&argmax.norm());
        let decomposition = decompose_at_max(&f, max.argmax, &sc, cfg.tolerances.block);
        let half = Quaternion::real(0.5);
        let q = if f.domain().contains(half) { half } else { f.domain().reference_point() };
        let computed = operator_norm(&f.eval(q)?);
        let closed = Example1::norm_closed_form(q);
        let printed = Example1::norm_printed_form(q);
        let oracle_gap = (computed - closed).abs();
        let not_applicable = matches!(decomposition, Err(Error::NotApplicable(_)));
        let verdict = match &decomposition {
            Err(e @ Error::NotApplicable(_)) => e.to_string(),
            Err(e) => format!("error: {e}"),
            Ok(_) => "decomposition constructed".into(),
        };
        Ok(Report {
            theorem: "example1".into(),
            fixture: name.clone(),
            seed: cfg.seed,
            interior_max: Some(max.interior_max),
            boundary_max: Some(max.boundary_max),
            verdict,
            passed: not_applicable && in_inner_shell && oracle_gap <= cfg.tolerances.fixture * closed.max(1.0),
            details: json!({
                "argmax": argmax,
                "argmax_modulus": argmax.norm(),
                "argmax_in_inner_shell": in_inner_shell,
                "probe": q,
                "norm_chi": computed,
                "norm_closed_form": closed,
                "norm_printed_form": printed,
                "printed_form_discrepancy": printed - computed,
            }),
        })
    })();
    vec![result.unwrap_or_else(|e| Report::error("example1", name, cfg.seed, &e))]
}

fn example2(cfg: &RunConfig) -> Vec<Report> {
    let result = (|| -> sliceregular::Result<Vec<Report>> {
        let tol = cfg.tolerances.fixture;
        let mut out = Vec::new();
        for ((x0, x2), expected) in [((0.6, 0.8), [1.0, 1.0]), ((0.3, 0.4), [1.0, 0.5])] {
            let sv = Example2::singular_values(x0, x2)?;
            let gap = sv.iter().zip(expected).map(|(s, e)| (s - e).abs()).fold(0.0, f64::max);
            out.push(Report {
                theorem: "example2-singular-values".into(),
                fixture: format!("diag(x0 + x2 j, 1) at (x0, x2) = ({x0}, {x2})"),
                seed: cfg.seed,
                interior_max: None,
                boundary_max: None,
                verdict: if gap <= tol { "match" } else { "mismatch" }.into(),
                passed: gap <= tol,
                details: json!({ "singular_values": sv, "expected": expected, "error": gap }),
            });
        }
        let sc = sampling(cfg);
        let f = Example2;
        let s1 = check_norm_max(&f, NormKind::Operator, &sc)?;
        let s2 = check_norm_max(&f, NormKind::SingularValue(2), &sc)?;
        let deviation = (s1.interior_max - 1.0).abs().max((s1.boundary_max - 1.0).abs());
        let non_constant = f.eval(s2.argmax)?.max_abs_diff(&f.eval(Quaternion::ZERO)?) > 0.0;
        let passed = deviation <= tol && non_constant;
        out.push(Report {
            theorem: "example2-constant-norm".into(),
            fixture: "diag(x0 + x2 j, 1) on the unit ball".into(),
            seed: cfg.seed,
            interior_max: Some(s1.interior_max),
            boundary_max: Some(s1.boundary_max),
            verdict: if passed { "s_max constant on a non-constant, non-regular F" } else { "unexpected" }.into(),
            passed,
            details: json!({
                "s_max_deviation": deviation,
                "non_constant": non_constant,
                "s_min_interior_max": s2.interior_max,
                "s_min_boundary_max": s2.boundary_max,
            }),
        });
        Ok(out)
    })();
    result.unwrap_or_else(|e| vec![Report::error("example2", "diag(x0 + x2 j, 1)".into(), cfg.seed, &e)])
}

/// `(q + q^3) / 2`, a Schur function on the unit ball.
pub fn cubic_schur() -> ScalarSeries {
    let h = Quaternion::real(0.5);
    ScalarSeries::new(vec![Quaternion::ZERO, h, Quaternion::ZERO, h], 1.0).expect("valid series")
}

/// Taylor coefficients of `(z + a) / (1 + conj(a) z)`, truncated at degree 64.
pub fn mobius_series(a: Complex64) -> ComplexSeries {
    let mut coeffs = vec![a];
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 1..=64 {
        coeffs.push(p * (1.0 - a.norm_sqr()));
        p *= -a.conj();
    }
    ComplexSeries(coeffs)
}

/// `U diag(1, (q + q^3) / 2) V` with `U` real up to a phase in its first column.
pub fn corollary_fixture(seed: u64) -> MatrixSeries {
    let fx = norm_max_fixture(2, 1, 0.5, &mut fixture_rng(seed ^ 0x325832, 0));
    let h = MatrixSeries::new(cubic_schur().coeffs().iter().map(|c| QuatMatrix::diag(&[*c])).collect(), 1.0)
        .expect("valid series");
    assemble_fixture(&fx.u, &fx.v, &h)
}

fn circle_modulus_error(b: &BlaschkeProduct) -> f64 {
    (0..1024)
        .map(|k| (b.eval(Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 1024.0)).norm() - 1.0).abs())
        .fold(0.0, f64::max)
}

fn approximation(cfg: &RunConfig) -> Vec<Report> {
    let tol = &cfg.tolerances;
    let opts = ApproxOptions { rho: cfg.rho, seed: cfg.seed, schur_slack: tol.schur_slack, ..ApproxOptions::default() };
    let mut out = Vec::new();

    let name = "(q + q^3) / 2, J = j, K = k".to_string();
    out.push(match approximate_scalar(&cubic_schur(), ImaginaryUnit::J, ImaginaryUnit::K, cfg.epsilon, &opts) {
        Ok(a) => {
            let modulus = circle_modulus_error(&a.r1).max(circle_modulus_error(&a.r2));
            let passed = a.measured_sup <= cfg.epsilon && modulus <= tol.blaschke_modulus;
            Report {
                theorem: "approximation-scalar".into(),
                fixture: name,
                seed: cfg.seed,
                interior_max: None,
                boundary_max: None,
                verdict: if passed { "pass" } else { "fail" }.into(),
                passed,
                details: json!({
                    "epsilon": a.epsilon,
                    "rho": a.rho,
                    "measured_sup": a.measured_sup,
                    "r1_degree": a.r1.degree(),
                    "r2_degree": a.r2.degree(),
                    "r1_error": a.r1_error,
                    "r2_error": a.r2_error,
                    "blaschke_circle_modulus_error": modulus,
                    "quaternionic_sphere_modulus": a.boundary_modulus,
                }),
            }
        }
        Err(e) => Report::error("approximation-scalar", name, cfg.seed, &e),
    });

    for a in [Complex64::new(0.5, 0.0), Complex64::new(0.3, 0.4), Complex64::new(0.0, -0.7)] {
        let name = format!("(z + a) / (1 + conj(a) z), a = {a}");
        out.push(match complex_inner_approx(&mobius_series(a), tol.exact_recovery, &opts) {
            Ok(r) => {
                let passed = r.depth == 1 && r.measured_sup <= tol.exact_recovery;
                Report {
                    theorem: "approximation-mobius".into(),
                    fixture: name,
                    seed: cfg.seed,
                    interior_max: None,
                    boundary_max: None,
                    verdict: if passed { "exact at depth 1" } else { "fail" }.into(),
                    passed,
                    details: json!({ "depth": r.depth, "measured_sup": r.measured_sup, "zeros": r.blaschke.zeros() }),
                }
            }
            Err(e) => Report::error("approximation-mobius", name, cfg.seed, &e),
        });
    }

    let name = "U diag(1, (q + q^3) / 2) V".to_string();
    let f = corollary_fixture(cfg.seed);
    out.push(match approximate_matrix_2x2(&f, cfg.epsilon, &opts, tol.norm_one, tol.block) {
        Ok(m) => {
            let passed = m.measured_sup <= cfg.epsilon;
            Report {
                theorem: "approximation-2x2".into(),
                fixture: name,
                seed: cfg.seed,
                interior_max: None,
                boundary_max: None,
                verdict: if passed { "pass" } else { "fail" }.into(),
                passed,
                details: json!({
                    "epsilon": m.epsilon,
                    "rho": m.rho,
                    "measured_sup": m.measured_sup,
                    "s": m.s,
                    "scalar_measured_sup": m.scalar.measured_sup,
                    "sphere_operator_norm": m.boundary_norm,
                }),
            }
        }
        Err(e) => Report::error("approximation-2x2", name, cfg.seed, &e),
    });
    out
}
