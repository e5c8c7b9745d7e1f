//! Batch drivers: many seeded trials of one check, run in parallel and
//! collected in trial order so the output never depends on scheduling.

use rayon::prelude::*;

use crate::error::Error;
use crate::polynomial::{random_polynomial, CoefficientDistribution};
use crate::report::InequalityReport;
use crate::rng::Stream;
use crate::seqspace::{ComplexVector, MagnitudeVector};

use super::checks::{
    check_bds, check_ellq_sum, check_even_bound, check_general_bound, check_hyper_q2,
    check_hypercontractive, check_mixed_multilinear, check_tetra_bound, CheckContext,
};

/// Which check a batch runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchCheck {
    Tetra,
    Even,
    General,
    Bds,
    Hyper,
    Mixed,
    Ellq,
    HyperQ2,
}

impl BatchCheck {
    pub fn name(self) -> &'static str {
        match self {
            BatchCheck::Tetra => "tetra",
            BatchCheck::Even => "even",
            BatchCheck::General => "general",
            BatchCheck::Bds => "bds",
            BatchCheck::Hyper => "hyper",
            BatchCheck::Mixed => "mixed",
            BatchCheck::Ellq => "ellq",
            BatchCheck::HyperQ2 => "hyperq2",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "tetra" => BatchCheck::Tetra,
            "even" => BatchCheck::Even,
            "general" => BatchCheck::General,
            "bds" => BatchCheck::Bds,
            "hyper" => BatchCheck::Hyper,
            "mixed" => BatchCheck::Mixed,
            "ellq" => BatchCheck::Ellq,
            "hyperq2" => BatchCheck::HyperQ2,
            _ => return None,
        })
    }
}

/// Instance-size limits and constants for a batch.
#[derive(Debug, Clone)]
pub struct BatchParams {
    /// Degree for polynomial checks; maximum index order for exact checks.
    pub m: u32,
    /// Dimension for polynomial checks; maximum dimension for exact checks.
    pub n: usize,
    pub r_choices: Vec<f64>,
    pub eps_choices: Vec<f64>,
    /// Cap for the ratio-mode checks.
    pub cap: f64,
}

impl Default for BatchParams {
    fn default() -> Self {
        BatchParams {
            m: 3,
            n: 6,
            r_choices: vec![1.25, 1.5, 2.0],
            eps_choices: vec![0.5, 1.0],
            cap: 1.0,
        }
    }
}

fn pick(stream: &mut Stream, choices: &[f64]) -> f64 {
    choices[(stream.next_u64() % choices.len() as u64) as usize]
}

fn random_decreasing(stream: &mut Stream, len: usize) -> MagnitudeVector {
    let mut v: Vec<f64> = (0..len).map(|_| stream.next_f64() * 2.0).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    MagnitudeVector::dense(v)
}

fn random_complex(stream: &mut Stream, len: usize) -> ComplexVector {
    ComplexVector::dense(
        (0..len)
            .map(|_| {
                num_complex::Complex64::new(stream.next_normal(), stream.next_normal())
                    * std::f64::consts::FRAC_1_SQRT_2
            })
            .collect(),
    )
}

/// Runs `trials` seeded instances of `check`, each drawn from a per-trial
/// substream of `seed`. Reports come back ordered by trial index with `seed`
/// and `trial` stamped.
pub fn run_batch(
    check: BatchCheck,
    params: &BatchParams,
    trials: u32,
    seed: u64,
    ctx: &CheckContext,
) -> Result<Vec<InequalityReport>, Error> {
    run_batch_range(check, params, 0..trials, seed, ctx)
}

/// Runs the trials in `range` only. Per-trial seeds depend on the trial
/// index alone, so splitting a batch into ranges (for streamed emission)
/// changes nothing about its records.
pub fn run_batch_range(
    check: BatchCheck,
    params: &BatchParams,
    range: std::ops::Range<u32>,
    seed: u64,
    ctx: &CheckContext,
) -> Result<Vec<InequalityReport>, Error> {
    let results: Vec<Result<Vec<InequalityReport>, Error>> = range
        .into_par_iter()
        .map(|trial| {
            let mut stream = Stream::substream(seed, trial as u64);
            let trial_seed = stream.next_u64();
            let mut ctx = *ctx;
            ctx.optimize.seed = trial_seed;
            let mut reports = match check {
                BatchCheck::Tetra => {
                    let n_dim =
                        2 + (stream.next_u64() as usize) % params.n.saturating_sub(1).max(1);
                    let order = 1 + (stream.next_u64() % params.m as u64) as u32;
                    let r = pick(&mut stream, &params.r_choices);
                    let eps = pick(&mut stream, &params.eps_choices);
                    let z = random_decreasing(&mut stream, n_dim);
                    vec![check_tetra_bound(&z, order, n_dim, r, eps, &ctx)?]
                }
                BatchCheck::Even => {
                    let n_dim =
                        2 + (stream.next_u64() as usize) % params.n.saturating_sub(1).max(1);
                    let order = 2 * (1 + (stream.next_u64() % (params.m as u64 / 2).max(1)) as u32);
                    let r = pick(&mut stream, &params.r_choices);
                    let z = random_decreasing(&mut stream, n_dim);
                    vec![check_even_bound(&z, order, n_dim, r, &ctx)?]
                }
                BatchCheck::General => {
                    let n_dim =
                        2 + (stream.next_u64() as usize) % params.n.saturating_sub(1).max(1);
                    let order = 1 + (stream.next_u64() % params.m as u64) as u32;
                    let r = pick(&mut stream, &params.r_choices);
                    let eps = pick(&mut stream, &params.eps_choices);
                    let z = random_decreasing(&mut stream, n_dim);
                    vec![check_general_bound(&z, order, n_dim, r, eps, &ctx)?]
                }
                BatchCheck::Bds => {
                    let r = pick(&mut stream, &params.r_choices);
                    let p = random_polynomial(
                        params.m,
                        params.n,
                        CoefficientDistribution::ComplexGaussian,
                        trial_seed,
                        ctx.budget,
                    )?;
                    check_bds(&p, r, &ctx)?
                }
                BatchCheck::Hyper => {
                    let r = pick(&mut stream, &params.r_choices);
                    let eps = pick(&mut stream, &params.eps_choices);
                    let p = random_polynomial(
                        params.m,
                        params.n,
                        CoefficientDistribution::ComplexGaussian,
                        trial_seed,
                        ctx.budget,
                    )?;
                    let z = random_decreasing(&mut stream, params.n);
                    vec![check_hypercontractive(&p, &z, r, eps, &ctx)?]
                }
                BatchCheck::Mixed => {
                    let r = pick(&mut stream, &params.r_choices);
                    let p = random_polynomial(
                        params.m,
                        params.n,
                        CoefficientDistribution::ComplexGaussian,
                        trial_seed,
                        ctx.budget,
                    )?;
                    let vectors: Vec<ComplexVector> = (0..params.m)
                        .map(|_| random_complex(&mut stream, params.n))
                        .collect();
                    let k = 1 + (stream.next_u64() as usize) % (params.m as usize - 1).max(1);
                    vec![check_mixed_multilinear(&p, &vectors, k, r, &ctx)?]
                }
                BatchCheck::Ellq => {
                    let r = pick(&mut stream, &params.r_choices);
                    let p = random_polynomial(
                        params.m,
                        params.n,
                        CoefficientDistribution::ComplexGaussian,
                        trial_seed,
                        ctx.budget,
                    )?;
                    let z = random_complex(&mut stream, params.n);
                    vec![check_ellq_sum(&p, &z, r, params.cap, &ctx)?]
                }
                BatchCheck::HyperQ2 => {
                    let r = pick(&mut stream, &params.r_choices);
                    let p = random_polynomial(
                        params.m.max(3),
                        params.n,
                        CoefficientDistribution::ComplexGaussian,
                        trial_seed,
                        ctx.budget,
                    )?;
                    let z = random_decreasing(&mut stream, params.n);
                    vec![check_hyper_q2(&p, &z, r, params.cap, &ctx)?]
                }
            };
            for report in &mut reports {
                report.seed = seed;
                report.trial = trial as u64;
            }
            Ok(reports)
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
