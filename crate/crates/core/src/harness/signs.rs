//! Search over random sign patterns for low-norm polynomials.
//!
//! With coefficients `±m!/α!`, most sign patterns have far smaller sup-norm
//! than the all-plus pattern (`n^{m/r'}`); the search draws `trials` random
//! patterns, estimates each norm, and reports the smallest certified upper
//! and best lower estimates together with their ratio to the reference
//! envelope `(log m · m!)^{1−1/r} n^{1−1/r}`.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::Error;
use crate::exponent::Exponent;
use crate::multiindex::ln_factorial;
use crate::polynomial::{
    polynomial_to_string, random_sign_polynomial, sup_norm_estimate, OptimizeOptions,
};

/// Result of a sign-pattern search.
#[derive(Debug, Clone)]
pub struct SignSearchOutcome {
    pub m: u32,
    pub n: usize,
    pub r: f64,
    pub trials: u32,
    pub seed: u64,
    /// Smallest certified upper norm across trials: some sign pattern
    /// provably has norm at most this.
    pub min_upper: f64,
    /// Smallest optimizer lower estimate across trials (best point estimate
    /// of the smallest attained norm).
    pub min_lower: f64,
    /// Trial index attaining `min_upper`.
    pub best_trial: u32,
    /// Reference envelope `(log m · m!)^{1−1/r} n^{1−1/r}` (for `m = 1` the
    /// exact linear-form norm `n^{1−1/r}`).
    pub bound: f64,
    pub ratio_upper: f64,
    pub ratio_lower: f64,
    /// The polynomial attaining `min_upper`, serialized.
    pub witness: String,
}

/// Reference envelope for the minimum sign-pattern norm.
pub fn sign_bound(m: u32, n: usize, r: f64) -> f64 {
    let n_part = (n as f64).powf(1.0 - 1.0 / r);
    if m <= 1 {
        return n_part;
    }
    ((m as f64).ln() * ln_factorial(m as u64).exp()).powf(1.0 - 1.0 / r) * n_part
}

/// Runs the search. Trials execute in parallel with per-trial substreams and
/// merge deterministically (ties prefer the lower trial index).
pub fn sign_polynomial_search(
    m: u32,
    n: usize,
    r: f64,
    trials: u32,
    seed: u64,
    budget: Budget,
    optimize: OptimizeOptions,
) -> Result<SignSearchOutcome, Error> {
    assert!(trials >= 1);
    // probe the enumeration budget once up front
    drop(random_sign_polynomial(m, n, seed, budget)?);
    let runs: Vec<(u32, f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_seed = crate::rng::Stream::substream(seed, trial as u64).next_u64();
            let p = random_sign_polynomial(m, n, trial_seed, budget).expect("budget pre-checked");
            let est = sup_norm_estimate(
                &p,
                Exponent::finite(r),
                OptimizeOptions {
                    seed: trial_seed,
                    ..optimize
                },
            );
            (trial, est.lower, est.upper)
        })
        .collect();

    let mut min_upper = f64::INFINITY;
    let mut min_lower = f64::INFINITY;
    let mut best_trial = 0u32;
    for &(trial, lower, upper) in &runs {
        if upper < min_upper {
            min_upper = upper;
            best_trial = trial;
        }
        if lower < min_lower {
            min_lower = lower;
        }
    }
    let bound = sign_bound(m, n, r);
    let best_seed = crate::rng::Stream::substream(seed, best_trial as u64).next_u64();
    let witness_poly = random_sign_polynomial(m, n, best_seed, budget)?;
    Ok(SignSearchOutcome {
        m,
        n,
        r,
        trials,
        seed,
        min_upper,
        min_lower,
        best_trial,
        bound,
        ratio_upper: min_upper / bound,
        ratio_lower: min_lower / bound,
        witness: polynomial_to_string(&witness_poly),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> OptimizeOptions {
        OptimizeOptions {
            restarts: 6,
            max_iters: 500,
            seed: 42,
        }
    }

    #[test]
    fn linear_forms_ignore_signs() {
        // every sign choice of Σ ε_k z_k has norm n^{1/r'}
        let out = sign_polynomial_search(1, 8, 2.0, 10, 42, Budget::default(), opts()).unwrap();
        let expect = 8f64.sqrt();
        assert!(
            (out.min_lower - expect).abs() < 1e-6 * expect,
            "{}",
            out.min_lower
        );
        assert!((out.bound - expect).abs() < 1e-12);
    }

    #[test]
    fn signs_beat_all_plus() {
        // the all-plus pattern has norm n^{m/r'}; random signs do much better
        let out = sign_polynomial_search(2, 8, 2.0, 20, 42, Budget::default(), opts()).unwrap();
        let all_plus_norm = 8.0f64;
        assert!(
            out.min_upper < all_plus_norm * 0.8,
            "min_upper {}",
            out.min_upper
        );
        assert!(out.min_lower <= out.min_upper * (1.0 + 1e-9));
    }

    #[test]
    fn deterministic_in_seed() {
        let a = sign_polynomial_search(2, 4, 1.5, 8, 7, Budget::default(), opts()).unwrap();
        let b = sign_polynomial_search(2, 4, 1.5, 8, 7, Budget::default(), opts()).unwrap();
        assert_eq!(a.min_upper.to_bits(), b.min_upper.to_bits());
        assert_eq!(a.min_lower.to_bits(), b.min_lower.to_bits());
        assert_eq!(a.best_trial, b.best_trial);
        assert_eq!(a.witness, b.witness);
    }
}
