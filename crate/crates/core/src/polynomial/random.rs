//! Seeded random polynomial generators.
//!
//! Coefficients are drawn in the canonical graded-colex enumeration order from
//! the counter-based stream, so the same seed reproduces the same polynomial
//! in any implementation of the generator.

use num_complex::Complex64;

use crate::budget::Budget;
use crate::error::Error;
use crate::multiindex::{enumerate_lambda, multinomial_card};
use crate::rng::Stream;

use super::HomogeneousPolynomial;

/// `Σ_α (m!/α!) z^α = (z₁ + … + z_n)^m`.
pub fn all_plus_polynomial(
    m: u32,
    n: usize,
    budget: Budget,
) -> Result<HomogeneousPolynomial, Error> {
    let entries = enumerate_lambda(m, n, budget)?.map(|alpha| {
        let card = multinomial_card(&alpha).as_f64();
        (alpha, Complex64::new(card, 0.0))
    });
    Ok(HomogeneousPolynomial::new(
        m,
        n,
        entries.collect::<Vec<_>>(),
    ))
}

/// `Σ_α ε_α (m!/α!) z^α` with independent uniform signs `ε_α ∈ {−1, +1}`
/// drawn in enumeration order from the seeded stream.
pub fn random_sign_polynomial(
    m: u32,
    n: usize,
    seed: u64,
    budget: Budget,
) -> Result<HomogeneousPolynomial, Error> {
    let mut stream = Stream::new(seed);
    let entries: Vec<_> = enumerate_lambda(m, n, budget)?
        .map(|alpha| {
            let card = multinomial_card(&alpha).as_f64();
            let sign = stream.next_sign();
            (alpha, Complex64::new(sign * card, 0.0))
        })
        .collect();
    Ok(HomogeneousPolynomial::new(m, n, entries))
}

/// Coefficient laws for [`random_polynomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientDistribution {
    /// Standard complex Gaussian: re and im independent `N(0, 1/2)`, so
    /// `E|c|² = 1` and `E|c| = √π/2`.
    ComplexGaussian,
    /// Modulus uniform on `[0,1]`, phase uniform on `[0, 2π)`; `E|c| = 1/2`.
    UniformModulus,
}

impl CoefficientDistribution {
    /// Mean modulus of a single draw.
    pub fn mean_modulus(self) -> f64 {
        match self {
            CoefficientDistribution::ComplexGaussian => std::f64::consts::PI.sqrt() / 2.0,
            CoefficientDistribution::UniformModulus => 0.5,
        }
    }

    /// Standard deviation of the modulus of a single draw.
    pub fn modulus_std(self) -> f64 {
        match self {
            // |c| is Rayleigh(1/√2): Var = 1 − π/4
            CoefficientDistribution::ComplexGaussian => (1.0 - std::f64::consts::PI / 4.0).sqrt(),
            CoefficientDistribution::UniformModulus => (1.0f64 / 12.0).sqrt(),
        }
    }

    fn draw(self, stream: &mut Stream) -> Complex64 {
        match self {
            CoefficientDistribution::ComplexGaussian => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                Complex64::new(stream.next_normal() * s, stream.next_normal() * s)
            }
            CoefficientDistribution::UniformModulus => {
                let rho = stream.next_f64();
                let t = 2.0 * std::f64::consts::PI * stream.next_f64();
                Complex64::new(rho * t.cos(), rho * t.sin())
            }
        }
    }
}

/// A polynomial with i.i.d. coefficients from the given distribution, one
/// draw per index in enumeration order.
pub fn random_polynomial(
    m: u32,
    n: usize,
    distribution: CoefficientDistribution,
    seed: u64,
    budget: Budget,
) -> Result<HomogeneousPolynomial, Error> {
    let mut stream = Stream::new(seed);
    let entries: Vec<_> = enumerate_lambda(m, n, budget)?
        .map(|alpha| (alpha, distribution.draw(&mut stream)))
        .collect();
    Ok(HomogeneousPolynomial::new(m, n, entries))
}
