//! Numerical toolkit for monomial-convergence experiments on `ℓ_r` spaces,
//! `1 < r ≤ 2`.
//!
//! The crate is organised around six subsystems:
//!
//! - [`seqspace`]: finite magnitude/complex vectors, decreasing rearrangements,
//!   `ℓ_r` / Lorentz / Marcinkiewicz norms, and the injection-induced
//!   operators `T_σ`, `S_σ`.
//! - [`multiindex`]: multi-indices `Λ(m,n)`, nondecreasing index tuples
//!   `J(m,n)`, multinomial counts, the tetrahedral/even decomposition, integer
//!   partitions, and the exponent calculus (`q`, `σ_m`, `s(m)`, `θ(m)`).
//! - [`polynomial`]: sparse m-homogeneous polynomials, evaluation and
//!   gradients, coefficient extraction from a black-box evaluator, seeded
//!   random instances, and certified sup-norm estimates on `ℓ_r` balls.
//! - [`harness`]: ternary (Verified / Inconclusive / Violated) verification of
//!   explicit coefficient inequalities, plus membership predicates for
//!   Marcinkiewicz-type monomial-convergence sets.
//! - [`asymptotics`]: mixed unconditionality-constant estimation, region
//!   classification with predicted growth exponents, log–log exponent fitting,
//!   Bohr-radius proxies, and multiplier trend checks.
//! - [`report`]: the line-oriented report schema shared with the CLI.
//!
//! All randomness flows through the counter-based generator in [`rng`], so
//! every run is reproducible from its seed alone. See `docs/` in the
//! repository root for the report schema, the polynomial file format, and the
//! derivations behind the certified norm bounds and assembled constants.

pub mod asymptotics;
pub mod budget;
pub mod error;
pub mod exponent;
pub mod harness;
pub mod multiindex;
pub mod polynomial;
pub mod report;
pub mod rng;
pub mod seqspace;

pub use error::Error;
pub use exponent::Exponent;
