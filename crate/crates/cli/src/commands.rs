//! Argument parsing and command dispatch.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use sliceregular::approx::{approximate_matrix_2x2, approximate_scalar, ApproxOptions};
use sliceregular::codec::{self, DecodeError};
use sliceregular::linalg::{chi, chi_singular_values, norms, singular_values, unchi};
use sliceregular::maxprinciple::{decompose_at_max, SamplingConfig};
use sliceregular::quaternion::{same_slice, sigma_distance, similar};
use sliceregular::series::{
    regular_conjugate, regular_reciprocal, star_product, symmetrization, AnySeries, MatrixSeries, ScalarSeries,
    SplitPair,
};
use sliceregular::{Error, ImaginaryUnit, Quaternion};

use crate::config::{ConfigError, RunConfig};
use crate::output::to_json;
use crate::suites::{self, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "sliceregular",
    version,
    about = "Quaternionic slice-regular functions: evaluate, decompose, approximate, verify"
)]
pub struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, env = "SLICEREGULAR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Interior and boundary sample counts for the max-principle checks.
    #[arg(long, global = true, default_value_t = 4096)]
    pub samples: usize,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Radius of the compact ball on which approximation errors are measured.
    #[arg(long, global = true, default_value_t = 0.9)]
    pub rho: f64,
    /// Approximation target.
    #[arg(long, global = true, default_value_t = 1e-2)]
    pub epsilon: f64,
    /// Inner radius of the annulus example.
    #[arg(long = "r", global = true, default_value_t = 0.25)]
    pub r: f64,
    /// Outer radius of the annulus example.
    #[arg(long = "R", global = true, default_value_t = 1.0)]
    pub big_r: f64,
    /// JSON input file; standard input when absent.
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a series at a point: {"f": series, "q": [w,x,y,z]}.
    Eval,
    /// Complex adjoint of a quaternion matrix.
    Chi,
    /// Quaternion matrix from its complex adjoint.
    Unchi,
    /// Frobenius and operator norms of a matrix.
    Norms,
    /// Singular values of a square matrix.
    Svd,
    /// Regular product of two scalar series: {"f": series, "g": series}.
    Star,
    /// Regular conjugate of a scalar series.
    Conj,
    /// Symmetrization of a scalar series.
    Symm,
    /// Regular reciprocal at a point: {"f": series, "q": [w,x,y,z]}.
    Recip,
    /// Regular extension of a split pair: {"split": {...}, "q": [w,x,y,z]}.
    Extend,
    /// Sigma distance and slice relations: {"p": [..], "q": [..]}.
    Sigma,
    /// Decomposition at a norm maximum: {"f": matrix series, "q0": [w,x,y,z]}.
    Decompose,
    /// Rational approximation of a scalar Schur function: {"f": series, "J": [..], "K": [..]}.
    ApproxScalar,
    /// Rational approximation of a 2x2 function of unit norm (matrix series).
    Approx2x2,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("invalid JSON input: {0}")]
    Decode(#[from] DecodeError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Compute(#[from] Error),
}

impl CliError {
    /// 2 for bad input, 1 for a computation that ran and failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(Error::Domain(_) | Error::Format(_)) => 2,
            CliError::Compute(_) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let body = match self {
            CliError::Decode(e) => json!({"kind": "decode", "message": e.message, "line": e.line, "column": e.column}),
            CliError::Config(e) => json!({"kind": "usage", "message": e.to_string()}),
            CliError::Io(e) => json!({"kind": "io", "message": e.to_string()}),
            CliError::Compute(e) => json!({"kind": compute_kind(e), "message": e.to_string()}),
        };
        to_json(&json!({ "error": body })).expect("error JSON serializes")
    }
}

fn compute_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Format(_) => "format",
        Error::Singular { .. } => "singular",
        Error::Precondition { .. } => "precondition",
        Error::NotApplicable(_) => "not_applicable",
        Error::Residual { .. } => "residual",
        Error::Pairing { .. } => "pairing",
        Error::Convergence { .. } => "convergence",
        Error::Assembly { .. } => "assembly",
    }
}

/// What a command produced: JSON text and whether it counts as a pass.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesAt {
    f: AnySeries,
    q: Quaternion,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarAt {
    f: ScalarSeries,
    q: Quaternion,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesPair {
    f: ScalarSeries,
    g: ScalarSeries,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtendInput {
    split: SplitPair,
    q: Option<Quaternion>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointPair {
    p: Quaternion,
    q: Quaternion,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecomposeInput {
    f: MatrixSeries,
    q0: Option<Quaternion>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApproxInput {
    f: ScalarSeries,
    #[serde(rename = "J")]
    j: Option<ImaginaryUnit>,
    #[serde(rename = "K")]
    k: Option<ImaginaryUnit>,
}

impl Cli {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig {
            seed: self.seed,
            samples: self.samples,
            rho: self.rho,
            epsilon: self.epsilon,
            r: self.r,
            big_r: self.big_r,
            out: self.out.as_ref().map(|p| p.display().to_string()),
            ..RunConfig::default()
        };
        for entry in &self.tol {
            cfg.tolerances.apply(entry)?;
        }
        Ok(cfg)
    }

    fn read_input(&self) -> Result<String, CliError> {
        Ok(match &self.input {
            Some(path) => std::fs::read_to_string(path)?,
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            }
        })
    }

    fn approx_options(&self, cfg: &RunConfig) -> ApproxOptions {
        ApproxOptions {
            rho: cfg.rho,
            seed: cfg.seed,
            schur_slack: cfg.tolerances.schur_slack,
            ..ApproxOptions::default()
        }
    }

    pub fn execute(&self) -> Result<Outcome, CliError> {
        let cfg = self.config()?;
        if let Command::Verify { suite } = self.command {
            let envelope = suites::run(suite, &cfg);
            return Ok(Outcome { passed: envelope.passed, text: emit(&envelope) });
        }
        let input = self.read_input()?;
        let text = match self.command {
            Command::Eval => {
                let SeriesAt { f, q } = codec::decode(&input)?;
                match f {
                    AnySeries::Scalar(f) => emit(&json!({ "value": f.eval(q)? })),
                    AnySeries::Matrix(f) => emit(&json!({ "value": f.eval(q)? })),
                }
            }
            Command::Chi => emit(&chi(&codec::decode_matrix(&input)?)?),
            Command::Unchi => emit(&unchi(&codec::decode_chi(&input)?)),
            Command::Norms => emit(&norms(&codec::decode_matrix(&input)?)),
            Command::Svd => {
                let a = codec::decode_matrix(&input)?;
                emit(&json!({
                    "singular_values": singular_values(&a)?,
                    "chi_singular_values": chi_singular_values(&a)?,
                }))
            }
            Command::Star => {
                let SeriesPair { f, g } = codec::decode(&input)?;
                emit(&star_product(&f, &g)?)
            }
            Command::Conj => emit(&regular_conjugate(&codec::decode_scalar_series(&input)?)),
            Command::Symm => emit(&symmetrization(&codec::decode_scalar_series(&input)?)),
            Command::Recip => {
                let ScalarAt { f, q } = codec::decode(&input)?;
                emit(&json!({ "value": regular_reciprocal(&f, q)? }))
            }
            Command::Extend => {
                let ExtendInput { split, q } = codec::decode(&input)?;
                let value = q.map(|q| split.eval(q)).transpose()?;
                emit(&json!({ "series": split.to_series(), "value": value }))
            }
            Command::Sigma => {
                let PointPair { p, q } = codec::decode(&input)?;
                emit(&json!({
                    "sigma_distance": sigma_distance(p, q),
                    "same_slice": same_slice(p, q),
                    "similar": similar(p, q),
                }))
            }
            Command::Decompose => {
                let DecomposeInput { f, q0 } = codec::decode(&input)?;
                let sc = SamplingConfig {
                    interior: cfg.samples,
                    boundary: cfg.samples,
                    seed: cfg.seed,
                    tolerance: cfg.tolerances.max_slack,
                };
                let q0 = q0.unwrap_or(Quaternion::real(f.center()));
                emit(&json!({ "config": cfg, "decomposition": decompose_at_max(&f, q0, &sc, cfg.tolerances.block)? }))
            }
            Command::ApproxScalar => {
                let a: ApproxInput = codec::decode(&input)?;
                let j = a.j.unwrap_or(ImaginaryUnit::J);
                let k = a.k.unwrap_or_else(|| if a.j.is_some() { j.orthogonal() } else { ImaginaryUnit::K });
                emit(&approximate_scalar(&a.f, j, k, cfg.epsilon, &self.approx_options(&cfg))?)
            }
            Command::Approx2x2 => {
                let f = codec::decode_matrix_series(&input)?;
                let tol = &cfg.tolerances;
                emit(&json!({
                    "type": "matrix_2x2_rational",
                    "approximant": approximate_matrix_2x2(&f, cfg.epsilon, &self.approx_options(&cfg), tol.norm_one, tol.block)?,
                }))
            }
            Command::Verify { .. } => unreachable!("handled above"),
        };
        Ok(Outcome { text, passed: true })
    }
}

fn emit<T: Serialize + ?Sized>(value: &T) -> String {
    to_json(value).expect("results serialize to JSON")
}
