//! Sparse m-homogeneous polynomials on `ℂⁿ`.
//!
//! A polynomial is a map `Λ(m,n) → ℂ` of nonzero coefficients, kept in graded
//! colex order so every iteration, serialization, and report is reproducible.
//! Coefficients can be addressed through a multi-index `α` or the associated
//! nondecreasing tuple `j`; both name the same stored value.

mod io;
mod optimize;
mod random;

pub use io::{
    format_f64, parse_polynomial, polynomial_to_string, read_polynomial, write_polynomial,
};
pub use optimize::{sup_norm_estimate, sup_norm_upper_bound, NormEstimate, OptimizeOptions};
pub use random::{
    all_plus_polynomial, random_polynomial, random_sign_polynomial, CoefficientDistribution,
};

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::budget::Budget;
use crate::error::Error;
use crate::multiindex::{alpha_to_j, enumerate_lambda, multinomial_card, JTuple, MultiIndex};
use crate::seqspace::{decreasing_rearrangement, ComplexVector, MagnitudeVector};

/// An m-homogeneous polynomial in `n` complex variables with sparse
/// coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPolynomial {
    degree: u32,
    dimension: usize,
    coefficients: BTreeMap<MultiIndex, Complex64>,
}

impl HomogeneousPolynomial {
    /// Builds a polynomial from `(α, c)` pairs, dropping zero coefficients.
    /// Panics if any key has the wrong order or dimension.
    pub fn new(
        degree: u32,
        dimension: usize,
        entries: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Self {
        let mut coefficients = BTreeMap::new();
        for (alpha, c) in entries {
            assert_eq!(alpha.order(), degree, "coefficient key has wrong order");
            assert_eq!(
                alpha.dimension(),
                dimension,
                "coefficient key has wrong dimension"
            );
            if c != Complex64::new(0.0, 0.0) {
                coefficients.insert(alpha, c);
            }
        }
        HomogeneousPolynomial {
            degree,
            dimension,
            coefficients,
        }
    }

    pub fn zero(degree: u32, dimension: usize) -> Self {
        HomogeneousPolynomial {
            degree,
            dimension,
            coefficients: BTreeMap::new(),
        }
    }

    /// The single monomial `c·z^α`.
    pub fn monomial(alpha: MultiIndex, c: Complex64) -> Self {
        let degree = alpha.order();
        let dimension = alpha.dimension();
        HomogeneousPolynomial::new(degree, dimension, [(alpha, c)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coefficients.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficient `c_α` (zero when absent).
    pub fn coefficient(&self, alpha: &MultiIndex) -> Complex64 {
        self.coefficients
            .get(alpha)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coefficient `c_j` for a tuple `j ∈ J(m,n)` — the same stored value as
    /// the associated multi-index.
    pub fn coefficient_j(&self, j: &JTuple) -> Result<Complex64, Error> {
        let alpha = crate::multiindex::j_to_alpha(j, self.dimension)?;
        Ok(self.coefficient(&alpha))
    }

    /// The polynomial scaled by `λ`.
    pub fn scaled(&self, lambda: Complex64) -> Self {
        HomogeneousPolynomial::new(
            self.degree,
            self.dimension,
            self.coefficients
                .iter()
                .map(|(a, c)| (a.clone(), c * lambda)),
        )
    }

    /// The polynomial with coefficients `|c_α|`.
    pub fn absolute(&self) -> Self {
        HomogeneousPolynomial::new(
            self.degree,
            self.dimension,
            self.coefficients
                .iter()
                .map(|(a, c)| (a.clone(), Complex64::new(c.norm(), 0.0))),
        )
    }

    fn check_dimension(&self, z_dim: usize) -> Result<(), Error> {
        if z_dim != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: z_dim,
            });
        }
        Ok(())
    }
}

/// `z^α = Π z_k^{α_k}` for a slice of entries.
fn monomial_value(entries: &[Complex64], alpha: &MultiIndex) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (k, &e) in alpha.exponents().iter().enumerate() {
        if e > 0 {
            acc *= entries[k].powu(e);
        }
    }
    acc
}

/// `|z|^α` for magnitudes.
fn monomial_abs_value(mags: &[f64], alpha: &MultiIndex) -> f64 {
    let mut acc = 1.0;
    for (k, &e) in alpha.exponents().iter().enumerate() {
        if e > 0 {
            acc *= mags[k].powi(e as i32);
        }
    }
    acc
}

/// Evaluates `P(z) = Σ_α c_α z^α`.
pub fn eval(p: &HomogeneousPolynomial, z: &ComplexVector) -> Result<Complex64, Error> {
    p.check_dimension(z.ambient_dim())?;
    let mut entries = z.entries().to_vec();
    entries.resize(p.dimension, Complex64::new(0.0, 0.0));
    Ok(p.coefficients
        .iter()
        .map(|(alpha, c)| c * monomial_value(&entries, alpha))
        .sum())
}

/// The gradient `(∂P/∂z_k)_k`.
pub fn gradient(p: &HomogeneousPolynomial, z: &ComplexVector) -> Result<ComplexVector, Error> {
    p.check_dimension(z.ambient_dim())?;
    let mut entries = z.entries().to_vec();
    entries.resize(p.dimension, Complex64::new(0.0, 0.0));
    let mut grad = vec![Complex64::new(0.0, 0.0); p.dimension];
    for (alpha, c) in &p.coefficients {
        for (k, &e) in alpha.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            // ∂(z^α)/∂z_k = α_k z^{α − e_k}
            let mut term = c * e as f64;
            for (i, &ei) in alpha.exponents().iter().enumerate() {
                let pow = if i == k { ei - 1 } else { ei };
                if pow > 0 {
                    term *= entries[i].powu(pow);
                }
            }
            grad[k] += term;
        }
    }
    Ok(ComplexVector::dense(grad))
}

/// The absolute monomial sum `S(P, z) = Σ_α |c_α| |z|^α`; depends on `z` only
/// through the moduli of its entries.
pub fn monomial_abs_sum(p: &HomogeneousPolynomial, z: &ComplexVector) -> Result<f64, Error> {
    p.check_dimension(z.ambient_dim())?;
    let mut mags: Vec<f64> = z.entries().iter().map(|c| c.norm()).collect();
    mags.resize(p.dimension, 0.0);
    Ok(p.coefficients
        .iter()
        .map(|(alpha, c)| c.norm() * monomial_abs_value(&mags, alpha))
        .sum())
}

/// `S(P, z*)` — the absolute monomial sum against the decreasing
/// rearrangement of `z`.
pub fn monomial_abs_sum_star(p: &HomogeneousPolynomial, z: &MagnitudeVector) -> Result<f64, Error> {
    let star = decreasing_rearrangement(z);
    let mut mags = star.entries().to_vec();
    if mags.len() < p.dimension {
        mags.resize(p.dimension, 0.0);
    }
    if mags.len() != p.dimension {
        return Err(Error::DimensionMismatch {
            expected: p.dimension,
            got: mags.len(),
        });
    }
    Ok(p.coefficients
        .iter()
        .map(|(alpha, c)| c.norm() * monomial_abs_value(&mags, alpha))
        .sum())
}

/// The mixed absolute sum
/// `Σ_{j∈J(m,n)} |c_j · v^{(1)}_{j_1} ⋯ v^{(k)}_{j_k} · v^{(k+1)*}_{j_{k+1}} ⋯ v^{(m)*}_{j_m}|`:
/// one vector per factor slot, with every slot past `star_from` replaced by
/// its decreasing rearrangement.
pub fn mixed_abs_sum(
    p: &HomogeneousPolynomial,
    vectors: &[ComplexVector],
    star_from: usize,
) -> Result<f64, Error> {
    let m = p.degree as usize;
    if vectors.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: vectors.len(),
        });
    }
    assert!(star_from <= m, "star_from must be at most the degree");
    let mut slot_mags: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (i, v) in vectors.iter().enumerate() {
        p.check_dimension(v.ambient_dim())?;
        let mags = if i < star_from {
            v.magnitudes()
        } else {
            decreasing_rearrangement(v)
        };
        let mut mm = mags.entries().to_vec();
        mm.resize(p.dimension, 0.0);
        slot_mags.push(mm);
    }
    let mut total = 0.0;
    for (alpha, c) in &p.coefficients {
        let j = alpha_to_j(alpha);
        let mut prod = c.norm();
        for (slot, &idx) in j.indices().iter().enumerate() {
            prod *= slot_mags[slot][idx as usize - 1];
        }
        total += prod;
    }
    Ok(total)
}

/// The tail coefficient norm
/// `(Σ_{k=i_{m−1}}^{n} |c_{(i,k)}|^{r'})^{1/r'}` for `i ∈ J(m−1, n)`.
pub fn coeff_tail_norm(p: &HomogeneousPolynomial, i: &JTuple, r: f64) -> Result<f64, Error> {
    if i.len() + 1 != p.degree as usize {
        return Err(Error::DimensionMismatch {
            expected: p.degree as usize - 1,
            got: i.len(),
        });
    }
    let r_conj = r / (r - 1.0);
    let start = i.last_or_one();
    let mut acc = 0.0;
    for k in start..=p.dimension as u32 {
        let c = p.coefficient_j(&i.extended(k))?;
        let a = c.norm();
        if a > 0.0 {
            acc += a.powf(r_conj);
        }
    }
    Ok(acc.powf(1.0 / r_conj))
}

/// Recovers the coefficients of an m-homogeneous black-box evaluator by
/// averaging over the grid of `(m+1)`-th roots of unity per coordinate:
/// `c_α = mean_w f(w) · w^{−α}`. Exact for polynomials up to roundoff.
///
/// The grid has `(m+1)^n` points, checked against the budget.
pub fn extract_coefficients<F>(
    f: F,
    m: u32,
    n: usize,
    budget: Budget,
) -> Result<HomogeneousPolynomial, Error>
where
    F: Fn(&ComplexVector) -> Complex64,
{
    let base = m as u128 + 1;
    let grid_size = (0..n).try_fold(1u128, |acc, _| {
        acc.checked_mul(base)
            .filter(|&v| v <= u64::MAX as u128)
            .ok_or(Error::BudgetExceeded {
                required: u128::MAX,
                budget: budget.0,
            })
    })?;
    budget.check(grid_size)?;

    // primitive (m+1)-th roots of unity
    let omega: Vec<Complex64> = (0..=m as usize)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / base as f64;
            Complex64::new(t.cos(), t.sin())
        })
        .collect();

    // f(w) over the full grid, indexed by base-(m+1) digits
    let mut values = Vec::with_capacity(grid_size as usize);
    let mut digits = vec![0u32; n];
    loop {
        let w = ComplexVector::dense(digits.iter().map(|&d| omega[d as usize]).collect());
        values.push(f(&w));
        // increment base-(m+1) counter
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            digits[pos] += 1;
            if digits[pos] < base as u32 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }

    let mut entries = Vec::new();
    let mut max_abs: f64 = 0.0;
    for alpha in enumerate_lambda(m, n, budget)? {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut digits = vec![0u32; n];
        for value in &values {
            // w^{−α} for unimodular w is Π conj(ω_{d_k})^{α_k}
            let mut phase = Complex64::new(1.0, 0.0);
            for (k, &d) in digits.iter().enumerate() {
                let e = alpha.exponents()[k];
                if e > 0 {
                    phase *= omega[d as usize].conj().powu(e);
                }
            }
            acc += value * phase;
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < base as u32 {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
        let c = acc / grid_size as f64;
        max_abs = max_abs.max(c.norm());
        entries.push((alpha, c));
    }
    // discard numerically-zero coefficients from the averaging noise
    let threshold = max_abs * 1e-12;
    Ok(HomogeneousPolynomial::new(
        m,
        n,
        entries.into_iter().filter(|(_, c)| c.norm() > threshold),
    ))
}

/// The per-monomial Lagrange supremum of `|z^α|` on the unit `ℓ_r` sphere:
/// `(α^α / m^m)^{1/r}` for finite `r` (with `0^0 = 1`), and `1` at `r = ∞`.
pub fn lagrange_monomial_sup(alpha: &MultiIndex, r: crate::exponent::Exponent) -> f64 {
    match r {
        crate::exponent::Exponent::Infinity => 1.0,
        crate::exponent::Exponent::Finite(r) => {
            let m = alpha.order();
            if m == 0 {
                return 1.0;
            }
            let mf = m as f64;
            let ln = alpha
                .exponents()
                .iter()
                .filter(|&&e| e > 0)
                .map(|&e| e as f64 * (e as f64).ln())
                .sum::<f64>()
                - mf * mf.ln();
            (ln / r).exp()
        }
    }
}

/// `Σ_α |c_α|² / |[α]|` — squared Frobenius norm of the symmetric coefficient
/// tensor; its square root bounds the sup-norm on the Euclidean ball.
pub(crate) fn symmetric_frobenius_sq(p: &HomogeneousPolynomial) -> f64 {
    p.coefficients
        .iter()
        .map(|(alpha, c)| c.norm_sqr() / multinomial_card(alpha).as_f64())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::rng::Stream;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z1z2() -> HomogeneousPolynomial {
        HomogeneousPolynomial::monomial(MultiIndex::new(vec![1, 1]), c(1.0, 0.0))
    }

    #[test]
    fn eval_examples() {
        let p = z1z2();
        let z = ComplexVector::dense(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(eval(&p, &z).unwrap(), c(0.0, 1.0));

        let pm = HomogeneousPolynomial::monomial(MultiIndex::new(vec![4]), c(1.0, 0.0));
        let e1 = ComplexVector::dense(vec![c(1.0, 0.0)]);
        assert_eq!(eval(&pm, &e1).unwrap(), c(1.0, 0.0));

        let wrong = ComplexVector::dense(vec![c(1.0, 0.0)]);
        assert!(eval(&p, &wrong).is_err());
    }

    #[test]
    fn eval_homogeneity() {
        let mut stream = Stream::new(9);
        let p = random_polynomial(
            3,
            4,
            CoefficientDistribution::ComplexGaussian,
            11,
            Budget::default(),
        )
        .unwrap();
        for _ in 0..20 {
            let z = ComplexVector::dense(
                (0..4)
                    .map(|_| c(stream.next_normal(), stream.next_normal()))
                    .collect(),
            );
            let lambda = c(2.0, 0.0);
            let scaled = ComplexVector::dense(z.entries().iter().map(|w| w * lambda).collect());
            let lhs = eval(&p, &scaled).unwrap();
            let rhs = lambda.powu(3) * eval(&p, &z).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn gradient_examples() {
        let p = HomogeneousPolynomial::monomial(MultiIndex::new(vec![2]), c(1.0, 0.0));
        let z = ComplexVector::dense(vec![c(3.0, 0.0)]);
        assert_eq!(gradient(&p, &z).unwrap().entries(), &[c(6.0, 0.0)]);

        let p = z1z2();
        let z = ComplexVector::dense(vec![c(2.0, 0.0), c(5.0, 0.0)]);
        assert_eq!(
            gradient(&p, &z).unwrap().entries(),
            &[c(5.0, 0.0), c(2.0, 0.0)]
        );
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = random_polynomial(
            4,
            3,
            CoefficientDistribution::ComplexGaussian,
            5,
            Budget::default(),
        )
        .unwrap();
        let mut stream = Stream::new(3);
        let z = ComplexVector::dense(
            (0..3)
                .map(|_| c(stream.next_normal(), stream.next_normal()))
                .collect(),
        );
        let grad = gradient(&p, &z).unwrap();
        let h = 1e-5;
        for k in 0..3 {
            let mut plus = z.entries().to_vec();
            let mut minus = z.entries().to_vec();
            plus[k] += c(h, 0.0);
            minus[k] -= c(h, 0.0);
            let fd = (eval(&p, &ComplexVector::dense(plus)).unwrap()
                - eval(&p, &ComplexVector::dense(minus)).unwrap())
                / c(2.0 * h, 0.0);
            let err = (fd - grad.entries()[k]).norm() / grad.entries()[k].norm().max(1.0);
            assert!(err <= 1e-6, "coordinate {k}: err {err}");
        }
    }

    #[test]
    fn euler_identity() {
        // Σ_k z_k ∂P/∂z_k = m·P(z)
        let mut stream = Stream::new(8);
        for seed in 0..10 {
            let p = random_polynomial(
                3,
                4,
                CoefficientDistribution::ComplexGaussian,
                seed,
                Budget::default(),
            )
            .unwrap();
            let z = ComplexVector::dense(
                (0..4)
                    .map(|_| c(stream.next_normal(), stream.next_normal()))
                    .collect(),
            );
            let grad = gradient(&p, &z).unwrap();
            let sum: Complex64 = z
                .entries()
                .iter()
                .zip(grad.entries())
                .map(|(zi, gi)| zi * gi)
                .sum();
            let expect = eval(&p, &z).unwrap() * 3.0;
            assert!((sum - expect).norm() <= 1e-10 * expect.norm().max(1.0));
        }
    }

    #[test]
    fn abs_sum_examples() {
        // P = z1² + z1 z2 at z = (1,1) → 2
        let p = HomogeneousPolynomial::new(
            2,
            2,
            [
                (MultiIndex::new(vec![2, 0]), c(1.0, 0.0)),
                (MultiIndex::new(vec![1, 1]), c(1.0, 0.0)),
            ],
        );
        let z = ComplexVector::dense(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((monomial_abs_sum(&p, &z).unwrap() - 2.0).abs() < 1e-15);

        // all-plus coefficients: S(P, z) = (Σ z_i)^m on nonnegative z
        let p = all_plus_polynomial(2, 2, Budget::default()).unwrap();
        assert!((monomial_abs_sum(&p, &z).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn abs_sum_phase_invariance() {
        let p = random_polynomial(
            3,
            3,
            CoefficientDistribution::ComplexGaussian,
            2,
            Budget::default(),
        )
        .unwrap();
        let mut stream = Stream::new(4);
        let mags: Vec<f64> = (0..3).map(|_| stream.next_f64()).collect();
        let plain = ComplexVector::dense(mags.iter().map(|&x| c(x, 0.0)).collect());
        let phased = ComplexVector::dense(
            mags.iter()
                .map(|&x| {
                    let t = 2.0 * std::f64::consts::PI * stream.next_f64();
                    c(x * t.cos(), x * t.sin())
                })
                .collect(),
        );
        let a = monomial_abs_sum(&p, &plain).unwrap();
        let b = monomial_abs_sum(&p, &phased).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn starred_abs_sum_ignores_entry_order() {
        // S(P, z*) only sees the rearranged magnitudes
        let p = random_polynomial(
            3,
            4,
            CoefficientDistribution::ComplexGaussian,
            13,
            Budget::default(),
        )
        .unwrap();
        let z = crate::seqspace::MagnitudeVector::dense(vec![0.3, 1.1, 0.0, 0.7]);
        let shuffled = crate::seqspace::MagnitudeVector::dense(vec![0.7, 0.0, 1.1, 0.3]);
        let a = monomial_abs_sum_star(&p, &z).unwrap();
        let b = monomial_abs_sum_star(&p, &shuffled).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn abs_sum_monotone_in_moduli() {
        let p = random_polynomial(
            3,
            4,
            CoefficientDistribution::ComplexGaussian,
            6,
            Budget::default(),
        )
        .unwrap();
        let mut stream = Stream::new(12);
        for _ in 0..50 {
            let w: Vec<f64> = (0..4).map(|_| stream.next_f64()).collect();
            let z: Vec<f64> = w.iter().map(|&x| x * stream.next_f64()).collect();
            let zs = ComplexVector::from_reals(&z);
            let ws = ComplexVector::from_reals(&w);
            assert!(
                monomial_abs_sum(&p, &zs).unwrap()
                    <= monomial_abs_sum(&p, &ws).unwrap() * (1.0 + 1e-12)
            );
        }
    }

    #[test]
    fn mixed_abs_sum_reductions() {
        let p = random_polynomial(
            3,
            4,
            CoefficientDistribution::ComplexGaussian,
            7,
            Budget::default(),
        )
        .unwrap();
        let mut stream = Stream::new(5);
        let z = ComplexVector::dense(
            (0..4)
                .map(|_| c(stream.next_normal(), stream.next_normal()))
                .collect(),
        );
        // all slots equal and starred from 0 → S(P, z*) = S(P, z)
        let vecs = vec![z.clone(), z.clone(), z.clone()];
        let starred = mixed_abs_sum(&p, &vecs, 0).unwrap();
        let plain = monomial_abs_sum(&p, &z).unwrap();
        assert!((starred - plain).abs() <= 1e-12 * plain.max(1.0));

        // degree 1: Σ_j |c_j z_j|
        let p1 = random_polynomial(
            1,
            4,
            CoefficientDistribution::ComplexGaussian,
            8,
            Budget::default(),
        )
        .unwrap();
        let direct = mixed_abs_sum(&p1, std::slice::from_ref(&z), 1).unwrap();
        let expect = monomial_abs_sum(&p1, &z).unwrap();
        assert!((direct - expect).abs() <= 1e-12 * expect.max(1.0));
    }

    #[test]
    fn mixed_abs_sum_hand_case() {
        // P = z₁z₂ with v⁽¹⁾ = (a, 0), v⁽²⁾ starred: only j = (1,2)
        // contributes |c| · |v⁽¹⁾_1| · v⁽²⁾*_2
        let p = z1z2();
        let v1 = ComplexVector::dense(vec![c(3.0, 0.0), c(0.0, 0.0)]);
        let v2 = ComplexVector::dense(vec![c(0.0, 0.0), c(5.0, 0.0)]);
        let got = mixed_abs_sum(&p, &[v1, v2], 1).unwrap();
        // v⁽²⁾* = (5, 0), position j₂ = 2 reads 0
        assert!((got - 0.0).abs() < 1e-15);

        let v1 = ComplexVector::dense(vec![c(3.0, 0.0), c(0.0, 0.0)]);
        let v2 = ComplexVector::dense(vec![c(5.0, 0.0), c(2.0, 0.0)]);
        let got = mixed_abs_sum(&p, &[v1, v2], 1).unwrap();
        assert!((got - 3.0 * 2.0).abs() < 1e-15);
    }

    #[test]
    fn coeff_tail_norm_examples() {
        // P = z1²: i = (1), tail over k ∈ {1} → |c_(1,1)| = 1
        let p = HomogeneousPolynomial::monomial(MultiIndex::new(vec![2]), c(1.0, 0.0));
        let i = JTuple::new(vec![1]);
        assert!((coeff_tail_norm(&p, &i, 2.0).unwrap() - 1.0).abs() < 1e-15);

        // P = z1z2 + z1z3: i = (1), r = 2 → √2
        let p = HomogeneousPolynomial::new(
            2,
            3,
            [
                (MultiIndex::new(vec![1, 1, 0]), c(1.0, 0.0)),
                (MultiIndex::new(vec![1, 0, 1]), c(1.0, 0.0)),
            ],
        );
        let i = JTuple::new(vec![1]);
        let got = coeff_tail_norm(&p, &i, 2.0).unwrap();
        assert!((got - 2.0_f64.sqrt()).abs() < 1e-15);

        // zero polynomial
        let p = HomogeneousPolynomial::zero(2, 3);
        assert_eq!(coeff_tail_norm(&p, &i, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn extract_simple_products() {
        let f = |w: &ComplexVector| w.entries()[0] * w.entries()[1];
        let p = extract_coefficients(f, 2, 2, Budget::default()).unwrap();
        assert_eq!(p.num_terms(), 1);
        let got = p.coefficient(&MultiIndex::new(vec![1, 1]));
        assert!((got - c(1.0, 0.0)).norm() < 1e-12);

        let f = |w: &ComplexVector| (w.entries()[0] + w.entries()[1]).powu(2);
        let p = extract_coefficients(f, 2, 2, Budget::default()).unwrap();
        assert!((p.coefficient(&MultiIndex::new(vec![2, 0])) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((p.coefficient(&MultiIndex::new(vec![1, 1])) - c(2.0, 0.0)).norm() < 1e-12);
        assert!((p.coefficient(&MultiIndex::new(vec![0, 2])) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn extract_round_trip() {
        for seed in 0..6 {
            let m = 1 + seed % 3;
            let p = random_polynomial(
                m,
                4,
                CoefficientDistribution::ComplexGaussian,
                seed as u64,
                Budget::default(),
            )
            .unwrap();
            let q =
                extract_coefficients(|w| eval(&p, w).unwrap(), m, 4, Budget::default()).unwrap();
            assert_eq!(p.num_terms(), q.num_terms());
            for (alpha, cv) in p.coefficients() {
                assert!((q.coefficient(alpha) - cv).norm() <= 1e-10, "α={alpha:?}");
            }
        }
    }

    #[test]
    fn extract_budget_error() {
        let f = |_: &ComplexVector| c(0.0, 0.0);
        assert!(extract_coefficients(f, 10, 12, Budget(1000)).is_err());
    }

    #[test]
    fn lagrange_sup_values() {
        // single variable: (m^m/m^m)^{1/r} = 1
        assert_eq!(
            lagrange_monomial_sup(&MultiIndex::new(vec![3]), Exponent::finite(1.5)),
            1.0
        );
        // z1z2 on ℓ₂: (1/4)^{1/2}
        let got = lagrange_monomial_sup(&MultiIndex::new(vec![1, 1]), Exponent::finite(2.0));
        assert!((got - 0.5).abs() < 1e-15);
        assert_eq!(
            lagrange_monomial_sup(&MultiIndex::new(vec![1, 1]), Exponent::Infinity),
            1.0
        );
    }
}
