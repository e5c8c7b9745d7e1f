//! Desk-scale asymptotics: mixed unconditionality constants, growth-region
//! classification, log–log exponent fits, Bohr-radius proxies, and multiplier
//! trend checks.

use rayon::prelude::*;

use crate::error::Error;
use crate::exponent::Exponent;
use crate::harness::CheckContext;
use crate::multiindex::{exponent_bundle, MultiIndex};
use crate::polynomial::{
    all_plus_polynomial, polynomial_to_string, random_polynomial, random_sign_polynomial,
    sup_norm_estimate, sup_norm_upper_bound, CoefficientDistribution, HomogeneousPolynomial,
    OptimizeOptions,
};
use crate::rng::Stream;
use crate::seqspace::{lorentz_quasinorm, LorentzParams, MagnitudeVector};

/// Growth regions for the mixed unconditionality constant in the
/// `(1/r, 1/s)` square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Copy)]
pub struct RegionLabel {
    pub region: Region,
    /// Predicted exponent of the polynomial growth in `n` (0 in region I).
    pub predicted_exponent: f64,
}

/// Classifies `(r, s, m)` into its growth region and predicted exponent.
///
/// Conditions are evaluated in the order I, II, III, so boundary points go to
/// the earliest matching region. The right edge `1/r = 1` is not covered by
/// the strict inequality in the third condition block; the classifier closes
/// region III there, which keeps the exponent formula continuous and makes
/// the three regions partition the whole square.
pub fn region_classify(r: Exponent, s: Exponent, m: u32) -> RegionLabel {
    assert!(m >= 1);
    let inv_r = r.reciprocal();
    let inv_s = s.reciprocal();
    let mf = m as f64;

    let region_i = (inv_r + (mf - 1.0) / (2.0 * mf) <= inv_s && inv_r <= 0.5)
        || ((mf - 1.0) / mf + inv_r / mf < inv_s && 0.5 <= inv_r);
    if region_i {
        return RegionLabel {
            region: Region::I,
            predicted_exponent: 0.0,
        };
    }
    let region_ii = inv_r + (mf - 1.0) / (2.0 * mf) >= inv_s && inv_r <= 0.5;
    if region_ii {
        return RegionLabel {
            region: Region::II,
            predicted_exponent: mf * (inv_r - inv_s + 0.5) - 0.5,
        };
    }
    debug_assert!(1.0 - 1.0 / mf + inv_r / mf >= inv_s && 0.5 < inv_r && inv_r <= 1.0);
    RegionLabel {
        region: Region::III,
        predicted_exponent: (mf - 1.0) * (1.0 - inv_s) + inv_r - inv_s,
    }
}

/// A certified lower estimate of the mixed unconditionality constant
/// `χ_{r,s}` on degree-`m` polynomials in `n` variables.
#[derive(Debug, Clone)]
pub struct ChiEstimate {
    pub m: u32,
    pub n: usize,
    pub value: f64,
    /// Serialized polynomial attaining the best ratio.
    pub witness: String,
    pub trials: u32,
    pub seed: u64,
}

/// Ratio for one candidate: certified lower bound of the modulus-polynomial
/// sup-norm on the `ℓ_s` ball over certified upper bound of the polynomial
/// sup-norm on the `ℓ_r` ball, so the result is a true lower bound for χ.
/// The denominator never needs the ascent.
fn chi_ratio(
    p: &HomogeneousPolynomial,
    r: Exponent,
    s: Exponent,
    optimize: OptimizeOptions,
) -> f64 {
    let numerator = sup_norm_estimate(&p.absolute(), s, optimize).lower;
    let denominator = sup_norm_upper_bound(p, r);
    if denominator == 0.0 {
        return 0.0;
    }
    numerator / denominator
}

/// Maximizes the χ ratio over a polynomial family: the single monomial
/// `z₁^m`, the all-plus pattern, random sign patterns, and random Gaussian
/// coefficients (half of `trials` each).
pub fn chi_estimate(
    m: u32,
    n: usize,
    r: Exponent,
    s: Exponent,
    trials: u32,
    seed: u64,
    ctx: &CheckContext,
) -> Result<ChiEstimate, Error> {
    assert!(m >= 1 && n >= 1);
    let monomial = HomogeneousPolynomial::monomial(
        MultiIndex::single(0, m, n),
        num_complex::Complex64::new(1.0, 0.0),
    );
    let all_plus = all_plus_polynomial(m, n, ctx.budget)?;
    let mut best = (chi_ratio(&monomial, r, s, ctx.optimize), monomial.clone());
    let plus_ratio = chi_ratio(&all_plus, r, s, ctx.optimize);
    if plus_ratio > best.0 {
        best = (plus_ratio, all_plus);
    }

    let budget = ctx.budget;
    let optimize = ctx.optimize;
    let runs: Vec<(u32, f64, u64, CoefficientDistribution)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_seed = Stream::substream(seed, trial as u64).next_u64();
            let dist = if trial % 2 == 0 {
                CoefficientDistribution::ComplexGaussian
            } else {
                CoefficientDistribution::UniformModulus
            };
            let p = if trial % 4 < 2 {
                random_sign_polynomial(m, n, trial_seed, budget).expect("budget pre-checked")
            } else {
                random_polynomial(m, n, dist, trial_seed, budget).expect("budget pre-checked")
            };
            let opts = OptimizeOptions {
                seed: trial_seed,
                ..optimize
            };
            (trial, chi_ratio(&p, r, s, opts), trial_seed, dist)
        })
        .collect();
    for (trial, ratio, trial_seed, dist) in runs {
        if ratio > best.0 {
            let p = if trial % 4 < 2 {
                random_sign_polynomial(m, n, trial_seed, budget)?
            } else {
                random_polynomial(m, n, dist, trial_seed, budget)?
            };
            best = (ratio, p);
        }
    }
    Ok(ChiEstimate {
        m,
        n,
        value: best.0,
        witness: polynomial_to_string(&best.1),
        trials,
        seed,
    })
}

/// Least-squares power-law fit in log–log coordinates.
#[derive(Debug, Clone)]
pub struct FitResult {
    /// Slope of `log value` against `log n`.
    pub exponent: f64,
    /// Intercept, i.e. the fitted `log c` in `value ≈ c·n^exponent`.
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: Vec<(usize, f64)>,
}

/// Fits `value ≈ c·n^a`. Needs at least 3 points with strictly increasing
/// `n` and positive values.
pub fn fit_exponent(points: &[(usize, f64)]) -> Result<FitResult, Error> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if !points.windows(2).all(|w| w[0].0 < w[1].0) {
        return Err(Error::DegenerateInput(
            "n must be strictly increasing".into(),
        ));
    }
    if points.iter().any(|&(_, v)| v <= 0.0) {
        return Err(Error::DegenerateInput("values must be positive".into()));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, v)| ((n as f64).ln(), v.ln()))
        .collect();
    let k = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    let denom = k * sxx - sx * sx;
    let exponent = (k * sxy - sx * sy) / denom;
    let intercept = (sy - exponent * sx) / k;
    let residual = (logs
        .iter()
        .map(|&(x, y)| {
            let e = y - (exponent * x + intercept);
            e * e
        })
        .sum::<f64>()
        / k)
        .sqrt();
    Ok(FitResult {
        exponent,
        intercept,
        residual,
        points: points.to_vec(),
    })
}

/// A Bohr-radius proxy from χ estimates across degrees.
#[derive(Debug, Clone)]
pub struct BohrEstimate {
    /// `1 / max_{m ≤ m_max} χ(m)^{1/m}`. χ is estimated from below, so this
    /// leans above the true radius.
    pub value: f64,
    /// `(m, χ estimate)` per degree.
    pub per_degree: Vec<(u32, f64)>,
}

/// Estimates the mixed Bohr radius for `(ℓ_p, ℓ_q)` in dimension `n`.
pub fn bohr_radius_estimate(
    p: Exponent,
    q: Exponent,
    n: usize,
    m_max: u32,
    trials: u32,
    seed: u64,
    ctx: &CheckContext,
) -> Result<BohrEstimate, Error> {
    assert!(m_max >= 1);
    let mut per_degree = Vec::with_capacity(m_max as usize);
    let mut sup = 0.0f64;
    for m in 1..=m_max {
        let chi = chi_estimate(m, n, p, q, trials, seed.wrapping_add(m as u64), ctx)?;
        sup = sup.max(chi.value.powf(1.0 / m as f64));
        per_degree.push((m, chi.value));
    }
    Ok(BohrEstimate {
        value: 1.0 / sup,
        per_degree,
    })
}

/// Truncated-norm trends for the multiplier weight `n^{−σ_m}`.
#[derive(Debug, Clone)]
pub struct MultiplierReport {
    pub sigma_m: f64,
    pub q: f64,
    /// `(N, ‖(z_n/n^{σ_m})_{n≤N}‖_{q,r})` per grid point: bounded along the
    /// grid when `z ∈ ℓ_r`.
    pub positive: Vec<(usize, f64)>,
    /// Consecutive increments of the positive-direction norms.
    pub positive_increments: Vec<f64>,
    /// Membership verdict for the weighted sequence in `ℓ_{q,r}`: inside
    /// when the truncated norms form a Cauchy trend on the grid (final
    /// increment below [`MULTIPLIER_INCREMENT_TOL`]).
    pub positive_verdict: crate::harness::MembershipVerdict,
    /// `(N, ‖(z⁰_n/n^{σ_m−ε})_{n≤N}‖_{q,∞})` for the witness sequence
    /// `z⁰_n = n^{−1/r} log(n+1)^{−2/r}`: divergent along the grid.
    pub optimality: Vec<(usize, f64)>,
    pub optimality_strictly_increasing: bool,
    /// Total growth factor of the optimality quasi-norm across the grid.
    pub optimality_growth: f64,
}

/// Final-increment threshold below which the truncated Lorentz norms of the
/// positive direction read as convergent.
pub const MULTIPLIER_INCREMENT_TOL: f64 = 0.05;

/// Runs both multiplier trend checks for degree `m` on `ℓ_r`.
///
/// `family` supplies the positive-direction sequence (must lie in `ℓ_r`);
/// `eps > 0` weakens the optimality exponent to `σ_m − ε`.
pub fn multiplier_check(
    r: f64,
    m: u32,
    family: &crate::harness::SequenceFamily,
    n_grid: &[usize],
    eps: f64,
) -> MultiplierReport {
    assert!(r > 1.0 && r < 2.0 || r == 2.0, "r must lie in (1, 2]");
    assert!(m >= 2);
    assert!(n_grid.len() >= 2 && n_grid.windows(2).all(|w| w[0] < w[1]));
    let bundle = exponent_bundle(m, r);
    let sigma = bundle.sigma_m;
    let q = Exponent::finite(bundle.q);
    let qr = LorentzParams::new(q, Exponent::finite(r));
    let qinf = LorentzParams::new(q, Exponent::Infinity);

    let max_n = *n_grid.last().unwrap();
    let weighted: Vec<f64> = (1..=max_n)
        .map(|n| family.term(n) / (n as f64).powf(sigma))
        .collect();
    let positive: Vec<(usize, f64)> = n_grid
        .iter()
        .map(|&n| {
            let v = MagnitudeVector::dense(weighted[..n].to_vec());
            (n, lorentz_quasinorm(&v, qr))
        })
        .collect();
    let positive_increments: Vec<f64> = positive.windows(2).map(|w| w[1].1 - w[0].1).collect();
    let final_increment = positive_increments.last().copied().unwrap_or(0.0);
    let positive_verdict = crate::harness::MembershipVerdict {
        space: crate::harness::MembershipSpace::Lorentz { q: bundle.q, s: r },
        value: positive.last().unwrap().1,
        threshold: MULTIPLIER_INCREMENT_TOL,
        verdict: if final_increment < MULTIPLIER_INCREMENT_TOL {
            crate::harness::Verdict::Inside
        } else {
            crate::harness::Verdict::Outside
        },
    };

    let witness: Vec<f64> = (1..=max_n)
        .map(|n| {
            let nf = n as f64;
            nf.powf(-1.0 / r) * (nf + 1.0).ln().powf(-2.0 / r) / nf.powf(sigma - eps)
        })
        .collect();
    let optimality: Vec<(usize, f64)> = n_grid
        .iter()
        .map(|&n| {
            let v = MagnitudeVector::dense(witness[..n].to_vec());
            (n, lorentz_quasinorm(&v, qinf))
        })
        .collect();
    let optimality_strictly_increasing = optimality.windows(2).all(|w| w[1].1 > w[0].1);
    let optimality_growth = optimality.last().unwrap().1 / optimality.first().unwrap().1;

    MultiplierReport {
        sigma_m: sigma,
        q: bundle.q,
        positive,
        positive_increments,
        positive_verdict,
        optimality,
        optimality_strictly_increasing,
        optimality_growth,
    }
}
