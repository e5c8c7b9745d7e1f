//! Certified sup-norm estimation on `ℓ_r` balls.
//!
//! [`sup_norm_estimate`] returns an interval `[lower, upper]` that always
//! contains `sup_{‖z‖_r ≤ 1} |P(z)|`, with a witness attaining the lower end.
//!
//! The lower bound comes from multi-start projected gradient ascent on
//! `|P(z)|²` over the real/imaginary coordinates, renormalizing to the unit
//! `ℓ_r` sphere after each step (the objective is homogeneous, so only the
//! direction matters). Both deterministic starts (the Lagrange witness of the
//! strongest monomial and the uniform vector) and seeded random starts are
//! used; restarts run in parallel with per-restart substreams and merge by
//! maximum, so results are independent of scheduling.
//!
//! The upper bound is the smallest of three certified estimates, derived in
//! `docs/norm-bounds.md`:
//! - Lagrange: `Σ_α |c_α| (α^α/m^m)^{1/r}` (any `r`);
//! - symmetric-tensor Frobenius: `(Σ_α |c_α|²/|[α]|)^{1/2}` (valid for
//!   `r ≤ 2` since the `ℓ_r` ball sits inside the Euclidean ball);
//! - exact spectral norm of the coefficient matrix for degree 2 (valid for
//!   `r ≤ 2`, and equal to the sup-norm at `r = 2`).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::exponent::Exponent;
use crate::rng::Stream;
use crate::seqspace::{ell_norm, ComplexVector};

use super::{eval, gradient, lagrange_monomial_sup, symmetric_frobenius_sq, HomogeneousPolynomial};

/// A certified interval for the sup-norm, with the witness attaining `lower`.
#[derive(Debug, Clone)]
pub struct NormEstimate {
    pub lower: f64,
    pub upper: f64,
    /// Point on the unit `ℓ_r` sphere with `|P(witness)| = lower`.
    pub witness: ComplexVector,
    pub restarts_used: u32,
    /// Total ascent iterations across all starts.
    pub iterations: u64,
}

/// Knobs for [`sup_norm_estimate`].
#[derive(Debug, Clone, Copy)]
pub struct OptimizeOptions {
    pub restarts: u32,
    pub max_iters: u32,
    pub seed: u64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            restarts: 50,
            max_iters: 2000,
            seed: 42,
        }
    }
}

const REL_IMPROVEMENT_STOP: f64 = 1e-12;

/// Certified Lagrange upper bound `Σ_α |c_α| (α^α/m^m)^{1/r}`.
pub(crate) fn lagrange_upper(p: &HomogeneousPolynomial, r: Exponent) -> f64 {
    p.coefficients()
        .map(|(alpha, c)| c.norm() * lagrange_monomial_sup(alpha, r))
        .sum()
}

/// Best certified upper bound available for the exponent, without running
/// the ascent (the `upper` field of [`sup_norm_estimate`] equals this).
pub fn sup_norm_upper_bound(p: &HomogeneousPolynomial, r: Exponent) -> f64 {
    certified_upper(p, r)
}

fn certified_upper(p: &HomogeneousPolynomial, r: Exponent) -> f64 {
    let mut upper = lagrange_upper(p, r);
    let euclidean_ball_valid = match r {
        Exponent::Finite(v) => v <= 2.0,
        Exponent::Infinity => false,
    };
    if euclidean_ball_valid && p.degree() >= 1 {
        upper = upper.min(symmetric_frobenius_sq(p).sqrt());
        if p.degree() == 2 {
            upper = upper.min(quadratic_spectral_norm(p) * (1.0 + 1e-12));
        }
    }
    upper
}

/// Spectral norm of the symmetric coefficient matrix of a degree-2
/// polynomial: `A_kk = c_{2e_k}`, `A_kl = c_{e_k+e_l}/2`. Over the complex
/// Euclidean ball `sup |zᵀAz| = σ_max(A)` exactly.
#[allow(clippy::needless_range_loop)]
fn quadratic_spectral_norm(p: &HomogeneousPolynomial) -> f64 {
    let n = p.dimension();
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (alpha, &c) in p.coefficients() {
        let nz: Vec<usize> = alpha
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k)
            .collect();
        match nz.as_slice() {
            [k] => a[*k][*k] = c,
            [k, l] => {
                a[*k][*l] = c / 2.0;
                a[*l][*k] = c / 2.0;
            }
            _ => unreachable!("degree-2 index has one or two nonzero entries"),
        }
    }
    // H = AᴴA is Hermitian PSD; σ_max = √λ_max(H)
    let mut h = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, row) in a.iter().enumerate() {
                acc += row[i].conj() * a[k][j];
            }
            h[i][j] = acc;
        }
    }
    hermitian_eigenvalues(&mut h)
        .into_iter()
        .fold(0.0f64, f64::max)
        .max(0.0)
        .sqrt()
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Destroys the input. Converges quadratically; runs sweeps until the
/// off-diagonal mass is below `1e-30` times the squared Frobenius norm.
#[allow(clippy::needless_range_loop)]
pub(crate) fn hermitian_eigenvalues(h: &mut [Vec<Complex64>]) -> Vec<f64> {
    let n = h.len();
    if n == 0 {
        return Vec::new();
    }
    let frob_sq: f64 = h.iter().flatten().map(|c| c.norm_sqr()).sum();
    let stop = frob_sq * 1e-30 + f64::MIN_POSITIVE;
    for _sweep in 0..60 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| h[i][j].norm_sqr())
            .sum();
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = h[p][q];
                let abs = hpq.norm();
                if abs == 0.0 {
                    continue;
                }
                let u = hpq / abs; // phase of the pivot
                let app = h[p][p].re;
                let aqq = h[q][q].re;
                let beta = (aqq - app) / (2.0 * abs);
                // smaller-magnitude root of t² − 2βt − 1 = 0
                let t = if beta >= 0.0 {
                    -1.0 / (beta + (beta * beta + 1.0).sqrt())
                } else {
                    1.0 / (-beta + (beta * beta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // rotate rows/columns p and q: new p = c·p − s·ū·q, new q = s·u·p + c·q
                for i in 0..n {
                    let hip = h[i][p];
                    let hiq = h[i][q];
                    h[i][p] = hip * c + hiq * s * u.conj();
                    h[i][q] = -hip * s * u + hiq * c;
                }
                for j in 0..n {
                    let hpj = h[p][j];
                    let hqj = h[q][j];
                    h[p][j] = hpj * c + hqj * s * u;
                    h[q][j] = -hpj * s * u.conj() + hqj * c;
                }
                // clean the pivot and enforce real diagonal against roundoff
                h[p][q] = Complex64::new(0.0, 0.0);
                h[q][p] = Complex64::new(0.0, 0.0);
                h[p][p] = Complex64::new(h[p][p].re, 0.0);
                h[q][q] = Complex64::new(h[q][q].re, 0.0);
            }
        }
    }
    (0..n).map(|i| h[i][i].re).collect()
}

fn normalize(z: &mut [Complex64], r: Exponent) {
    let norm = ell_norm(&ComplexVector::dense(z.to_vec()), r);
    if norm > 0.0 {
        for v in z.iter_mut() {
            *v /= norm;
        }
    }
}

fn objective(p: &HomogeneousPolynomial, z: &[Complex64]) -> f64 {
    eval(p, &ComplexVector::dense(z.to_vec()))
        .unwrap()
        .norm_sqr()
}

/// One projected-ascent run from the given unit-sphere start.
fn ascend(
    p: &HomogeneousPolynomial,
    start: Vec<Complex64>,
    r: Exponent,
    max_iters: u32,
) -> (f64, Vec<Complex64>, u64) {
    let mut z = start;
    let mut value = objective(p, &z);
    let mut iterations = 0u64;
    for _ in 0..max_iters {
        iterations += 1;
        let grad = gradient(p, &ComplexVector::dense(z.to_vec())).unwrap();
        let pz = eval(p, &ComplexVector::dense(z.to_vec())).unwrap();
        // steepest ascent of |P|² in the real 2n coordinates is along
        // P(z) · conj(∇P)
        let mut dir: Vec<Complex64> = grad.entries().iter().map(|g| pz * g.conj()).collect();
        let dir_norm = dir.iter().map(|d| d.norm_sqr()).sum::<f64>().sqrt();
        if dir_norm == 0.0 {
            break;
        }
        for d in dir.iter_mut() {
            *d /= dir_norm;
        }
        // backtracking line search on the renormalized candidate
        let mut step = 1.0;
        let mut improved = false;
        for _ in 0..45 {
            let mut cand: Vec<Complex64> =
                z.iter().zip(&dir).map(|(zi, di)| zi + di * step).collect();
            normalize(&mut cand, r);
            let cand_value = objective(p, &cand);
            if cand_value > value {
                let gain = (cand_value - value) / value.max(f64::MIN_POSITIVE);
                z = cand;
                value = cand_value;
                improved = gain > REL_IMPROVEMENT_STOP;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (value, z, iterations)
}

/// Start at the Lagrange maximizer of the strongest monomial:
/// `z_k = (α_k/m)^{1/r}`, or the indicator of the support at `r = ∞`.
fn lagrange_start(p: &HomogeneousPolynomial, r: Exponent) -> Option<Vec<Complex64>> {
    let (alpha, _) = p
        .coefficients()
        .map(|(a, c)| (a, c.norm() * lagrange_monomial_sup(a, r)))
        .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
    let m = p.degree() as f64;
    let z: Vec<Complex64> = alpha
        .exponents()
        .iter()
        .map(|&e| {
            let mag = match r {
                Exponent::Infinity => {
                    if e > 0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                Exponent::Finite(r) => {
                    if e > 0 {
                        (e as f64 / m).powf(1.0 / r)
                    } else {
                        0.0
                    }
                }
            };
            Complex64::new(mag, 0.0)
        })
        .collect();
    Some(z)
}

/// Multi-start certified sup-norm estimate of `P` on the unit `ℓ_r` ball.
pub fn sup_norm_estimate(
    p: &HomogeneousPolynomial,
    r: Exponent,
    options: OptimizeOptions,
) -> NormEstimate {
    let n = p.dimension();
    let upper = certified_upper(p, r);
    if p.is_zero() || upper == 0.0 {
        return NormEstimate {
            lower: 0.0,
            upper: 0.0,
            witness: ComplexVector::dense(vec![Complex64::new(0.0, 0.0); n]),
            restarts_used: 0,
            iterations: 0,
        };
    }

    // deterministic starts first; they already settle monomials and
    // positive-coefficient polynomials, in which case random restarts are
    // skipped entirely
    let mut deterministic: Vec<Vec<Complex64>> = Vec::new();
    if let Some(s) = lagrange_start(p, r) {
        deterministic.push(s);
    }
    let uniform_mag = match r {
        Exponent::Infinity => 1.0,
        Exponent::Finite(r) => (n as f64).powf(-1.0 / r),
    };
    deterministic.push(vec![Complex64::new(uniform_mag, 0.0); n]);

    let mut best_value = f64::NEG_INFINITY;
    let mut best_witness: Option<Vec<Complex64>> = None;
    let mut total_iterations = 0u64;
    for mut start in deterministic {
        normalize(&mut start, r);
        let (value, witness, iters) = ascend(p, start, r, options.max_iters);
        total_iterations += iters;
        if value > best_value {
            best_value = value;
            best_witness = Some(witness);
        }
    }

    let mut restarts_used = 0u32;
    let tight = |value: f64| value.sqrt() >= upper * (1.0 - 1e-12);
    if !tight(best_value) {
        restarts_used = options.restarts.max(1);
        let runs: Vec<(f64, Vec<Complex64>, u64)> = (0..restarts_used)
            .into_par_iter()
            .map(|index| {
                let mut stream = Stream::substream(options.seed, index as u64);
                let mut start: Vec<Complex64> = (0..n)
                    .map(|_| {
                        Complex64::new(stream.next_normal(), stream.next_normal())
                            * std::f64::consts::FRAC_1_SQRT_2
                    })
                    .collect();
                normalize(&mut start, r);
                ascend(p, start, r, options.max_iters)
            })
            .collect();
        for (value, witness, iters) in runs {
            total_iterations += iters;
            if value > best_value {
                best_value = value;
                best_witness = Some(witness);
            }
        }
    }

    let mut witness = best_witness.unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); n]);
    normalize(&mut witness, r);
    let witness = ComplexVector::dense(witness);
    let lower = eval(p, &witness).unwrap().norm().min(upper);
    NormEstimate {
        lower,
        upper,
        witness,
        restarts_used,
        iterations: total_iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::multiindex::MultiIndex;
    use crate::polynomial::{all_plus_polynomial, random_polynomial, CoefficientDistribution};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn opts(restarts: u32) -> OptimizeOptions {
        OptimizeOptions {
            restarts,
            ..OptimizeOptions::default()
        }
    }

    #[test]
    fn jacobi_diagonal_matrix() {
        let mut h = vec![
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ];
        let mut eig = hermitian_eigenvalues(&mut h);
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eig[0] + 1.0).abs() < 1e-14);
        assert!((eig[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_known_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let mut h = vec![
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ];
        let mut eig = hermitian_eigenvalues(&mut h);
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eig[0] - 1.0).abs() < 1e-12, "{eig:?}");
        assert!((eig[1] - 3.0).abs() < 1e-12, "{eig:?}");
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn jacobi_random_hermitian_invariants() {
        let mut stream = crate::rng::Stream::new(77);
        for n in [3usize, 6, 10] {
            let mut h = vec![vec![c(0.0, 0.0); n]; n];
            for i in 0..n {
                h[i][i] = c(stream.next_normal(), 0.0);
                for j in (i + 1)..n {
                    let v = c(stream.next_normal(), stream.next_normal());
                    h[i][j] = v;
                    h[j][i] = v.conj();
                }
            }
            let trace: f64 = (0..n).map(|i| h[i][i].re).sum();
            let frob_sq: f64 = h.iter().flatten().map(|x| x.norm_sqr()).sum();
            // Rayleigh quotients bound λ_max from below
            let mut rayleigh_max = f64::NEG_INFINITY;
            for _ in 0..20 {
                let v: Vec<Complex64> = (0..n)
                    .map(|_| c(stream.next_normal(), stream.next_normal()))
                    .collect();
                let vn: f64 = v.iter().map(|x| x.norm_sqr()).sum();
                let mut hv = vec![c(0.0, 0.0); n];
                for (i, hvi) in hv.iter_mut().enumerate() {
                    for j in 0..n {
                        *hvi += h[i][j] * v[j];
                    }
                }
                let quad: f64 = v
                    .iter()
                    .zip(&hv)
                    .map(|(vi, hvi)| (vi.conj() * hvi).re)
                    .sum();
                rayleigh_max = rayleigh_max.max(quad / vn);
            }
            let eig = hermitian_eigenvalues(&mut h);
            let eig_trace: f64 = eig.iter().sum();
            let eig_frob: f64 = eig.iter().map(|x| x * x).sum();
            assert!((eig_trace - trace).abs() < 1e-10 * trace.abs().max(1.0));
            assert!((eig_frob - frob_sq).abs() < 1e-9 * frob_sq.max(1.0));
            let lambda_max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            assert!(lambda_max >= rayleigh_max - 1e-10);
        }
    }

    #[test]
    fn monomial_norm_is_one() {
        let p = HomogeneousPolynomial::monomial(MultiIndex::new(vec![3, 0]), c(1.0, 0.0));
        let est = sup_norm_estimate(&p, Exponent::finite(2.0), opts(4));
        assert!((est.upper - 1.0).abs() < 1e-12);
        assert!((est.lower - 1.0).abs() < 1e-9, "lower {}", est.lower);
    }

    #[test]
    fn product_monomial_matches_lagrange() {
        // P = z1 z2 on ℓ₂: norm 1/2
        let p = HomogeneousPolynomial::monomial(MultiIndex::new(vec![1, 1]), c(1.0, 0.0));
        let est = sup_norm_estimate(&p, Exponent::finite(2.0), opts(4));
        assert!((est.upper - 0.5).abs() < 1e-12, "upper {}", est.upper);
        assert!(est.lower >= 0.5 - 1e-6);
        assert!(est.lower <= est.upper);
    }

    #[test]
    fn all_plus_reaches_uniform_maximum() {
        // norm n^{m/r'} attained at n^{-1/r}(1,…,1)
        let p = all_plus_polynomial(2, 4, Budget::default()).unwrap();
        let est = sup_norm_estimate(&p, Exponent::finite(2.0), opts(4));
        assert!((est.upper - 4.0).abs() < 1e-9, "upper {}", est.upper);
        assert!((est.lower - 4.0).abs() < 1e-6, "lower {}", est.lower);
    }

    #[test]
    fn estimate_sandwich_and_witness_contract() {
        for seed in 0..8u64 {
            let p = random_polynomial(
                3,
                4,
                CoefficientDistribution::ComplexGaussian,
                seed,
                Budget::default(),
            )
            .unwrap();
            for r in [
                Exponent::finite(1.5),
                Exponent::finite(2.0),
                Exponent::Infinity,
            ] {
                let est = sup_norm_estimate(&p, r, opts(6));
                assert!(est.lower <= est.upper);
                let at_witness = eval(&p, &est.witness).unwrap().norm();
                assert!((at_witness - est.lower).abs() <= 1e-10 * est.lower.max(1e-300));
                let wn = ell_norm(&est.witness, r);
                assert!((wn - 1.0).abs() <= 1e-12, "witness norm {wn}");
            }
        }
    }

    #[test]
    fn scaling_by_two_is_exact() {
        let p = random_polynomial(
            2,
            3,
            CoefficientDistribution::ComplexGaussian,
            5,
            Budget::default(),
        )
        .unwrap();
        let doubled = p.scaled(c(2.0, 0.0));
        let a = sup_norm_estimate(&p, Exponent::finite(2.0), opts(3));
        let b = sup_norm_estimate(&doubled, Exponent::finite(2.0), opts(3));
        assert_eq!(b.upper, 2.0 * a.upper);
        assert_eq!(b.lower, 2.0 * a.lower);
    }

    #[test]
    fn quadratic_spectral_beats_lagrange_on_dense_forms() {
        // random ± quadratic form: Frobenius/spectral bound ~ n, Lagrange ~ n²/2
        let p = crate::polynomial::random_sign_polynomial(2, 8, 1, Budget::default()).unwrap();
        let lag = lagrange_upper(&p, Exponent::finite(2.0));
        let est = sup_norm_estimate(&p, Exponent::finite(2.0), opts(2));
        assert!(
            est.upper < lag * 0.7,
            "upper {} vs lagrange {lag}",
            est.upper
        );
        // spectral upper is the exact norm at r=2: ascent should approach it
        assert!(
            est.lower >= est.upper * 0.9,
            "lower {} upper {}",
            est.lower,
            est.upper
        );
    }

    #[test]
    fn linear_forms_have_dual_norm() {
        // Σ ε_k z_k on ℓ_r has norm n^{1/r'} regardless of signs
        let p = crate::polynomial::random_sign_polynomial(1, 6, 3, Budget::default()).unwrap();
        for r in [1.5, 2.0] {
            let est = sup_norm_estimate(&p, Exponent::finite(r), opts(8));
            let expect = 6.0_f64.powf(1.0 - 1.0 / r);
            assert!(
                (est.lower - expect).abs() <= 1e-6 * expect,
                "r={r}: lower {} vs {expect}",
                est.lower
            );
            assert!(est.upper >= expect * (1.0 - 1e-12));
        }
    }
}
