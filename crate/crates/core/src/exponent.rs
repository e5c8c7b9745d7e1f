//! Extended exponents for `ℓ_r` and Lorentz indices.
//!
//! `∞` is a distinguished variant rather than a floating sentinel, so conjugate
//! arithmetic like `1' = ∞` and `∞' = 1` is exact.

use std::fmt;

/// An exponent in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// Constructs a finite exponent, panicking outside `[1, ∞)`.
    pub fn finite(v: f64) -> Self {
        assert!(
            v >= 1.0 && v.is_finite(),
            "exponent must lie in [1, ∞), got {v}"
        );
        Exponent::Finite(v)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// `1/r`, with the convention `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(v) => 1.0 / v,
            Exponent::Infinity => 0.0,
        }
    }

    /// The conjugate exponent `r'` with `1/r + 1/r' = 1`.
    ///
    /// `1' = ∞` and `∞' = 1` exactly; finite `r > 1` maps to `r/(r-1)`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(v) => Exponent::Finite(v / (v - 1.0)),
        }
    }

    /// Finite value, panicking on `∞`.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(v) => v,
            Exponent::Infinity => panic!("expected a finite exponent"),
        }
    }
}

impl From<f64> for Exponent {
    fn from(v: f64) -> Self {
        if v.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::finite(v)
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}
