//! Membership predicates for the monomial-convergence sets.
//!
//! Finite vectors always sit inside the Marcinkiewicz space; the interesting
//! verdicts are for parametric families (bounded-vs-divergent partial-sum
//! ratios over a geometric grid) and for the two explicit sets sandwiching
//! the bounded-holomorphic monomial-convergence set: the lower set
//! `2e ‖id‖^r L^r + ‖z‖_r^r < 1` and the upper set `{‖z‖_r < 1, L ≤ 1}`,
//! where `L` is the limsup of `Σ_{k≤n} z*_k / log(n+1)^{1−1/r}`.
//!
//! A limsup cannot be certified from finite data, so for infinite families
//! the caller supplies it (for finitely supported vectors it is zero).

use crate::exponent::Exponent;
use crate::seqspace::{ell_norm, marcinkiewicz_norm, MagnitudeVector, MarcinkiewiczSymbol};

use super::constants;

/// Which set a verdict refers to.
#[derive(Debug, Clone, PartialEq)]
pub enum MembershipSpace {
    MarcinkiewiczPsi { r: f64 },
    HinfLowerSet { r: f64 },
    HinfUpperSet { r: f64 },
    Lorentz { q: f64, s: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Inside,
    Outside,
    BoundaryInconclusive,
}

#[derive(Debug, Clone)]
pub struct MembershipVerdict {
    pub space: MembershipSpace,
    /// The defining norm or limsup proxy.
    pub value: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

/// Relative width of the boundary band that yields `BoundaryInconclusive`.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

fn against_threshold(value: f64, threshold: f64) -> Verdict {
    if value < threshold * (1.0 - BOUNDARY_TOLERANCE) {
        Verdict::Inside
    } else if value > threshold * (1.0 + BOUNDARY_TOLERANCE) {
        Verdict::Outside
    } else {
        Verdict::BoundaryInconclusive
    }
}

/// A closed-form sequence `n ↦ z_n ≥ 0`, nonincreasing on its domain.
pub struct SequenceFamily {
    label: String,
    term: Box<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl SequenceFamily {
    pub fn new(
        label: impl Into<String>,
        term: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SequenceFamily {
            label: label.into(),
            term: Box::new(term),
        }
    }

    /// `z_n = log(n+1)^{1/r'} − log(n)^{1/r'}`: partial sums telescope to
    /// `Ψ_r(n)` exactly, so the Marcinkiewicz ratio is identically 1.
    pub fn telescoping(r: f64) -> Self {
        assert!(r > 1.0 && r <= 2.0);
        let w = 1.0 - 1.0 / r;
        SequenceFamily::new(format!("telescoping(r={r})"), move |n| {
            let nf = n as f64;
            (nf + 1.0).ln().powf(w) - nf.ln().max(0.0).powf(w)
        })
    }

    /// `z_n = 1/n`, whose partial sums outgrow every `Ψ_r`.
    pub fn harmonic() -> Self {
        SequenceFamily::new("harmonic", |n| 1.0 / n as f64)
    }

    /// `z_n = n^{−a} log(n+1)^{−b}`.
    pub fn power_log(a: f64, b: f64) -> Self {
        SequenceFamily::new(format!("power_log(a={a}, b={b})"), move |n| {
            let nf = n as f64;
            nf.powf(-a) * (nf + 1.0).ln().powf(-b)
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn term(&self, n: usize) -> f64 {
        (self.term)(n)
    }

    /// The first `len` terms as a vector.
    pub fn truncate(&self, len: usize) -> MagnitudeVector {
        MagnitudeVector::dense((1..=len).map(|n| self.term(n)).collect())
    }
}

/// Marcinkiewicz membership for an explicit finite vector: the norm is
/// finite, so the verdict is always `Inside` with the norm as value.
pub fn hb_membership(z: &MagnitudeVector, r: f64) -> MembershipVerdict {
    let value = marcinkiewicz_norm(z, &MarcinkiewiczSymbol::psi_r(r));
    MembershipVerdict {
        space: MembershipSpace::MarcinkiewiczPsi { r },
        value,
        threshold: f64::INFINITY,
        verdict: Verdict::Inside,
    }
}

/// Partial-sum ratio trend of a family over a geometric grid.
#[derive(Debug, Clone)]
pub struct FamilyTrend {
    pub verdict: MembershipVerdict,
    /// `(n, Σ_{k≤n} z_k / Ψ_r(n))` per grid point.
    pub ratios: Vec<(usize, f64)>,
    /// Ratio of the last to the first grid value.
    pub growth: f64,
}

/// Marcinkiewicz membership trend for a parametric family: the ratio
/// `Σ_{k≤n} z_k / Ψ_r(n)` is sampled on the grid, and a total growth factor
/// at or above `growth_threshold` reads as divergence (outside).
pub fn hb_membership_family(
    family: &SequenceFamily,
    r: f64,
    n_grid: &[usize],
    growth_threshold: f64,
) -> FamilyTrend {
    assert!(n_grid.len() >= 2 && n_grid.windows(2).all(|w| w[0] < w[1]));
    let max_n = *n_grid.last().unwrap();
    let mut ratios = Vec::with_capacity(n_grid.len());
    let mut partial = 0.0;
    let mut grid_iter = n_grid.iter().peekable();
    for n in 1..=max_n {
        partial += family.term(n);
        if grid_iter.peek() == Some(&&n) {
            grid_iter.next();
            ratios.push((n, partial / crate::seqspace::psi_r(n, r)));
        }
    }
    let first = ratios.first().unwrap().1;
    let last = ratios.last().unwrap().1;
    let max_ratio = ratios.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    let growth = last / first;
    let verdict = if growth >= growth_threshold {
        Verdict::Outside
    } else {
        Verdict::Inside
    };
    FamilyTrend {
        verdict: MembershipVerdict {
            space: MembershipSpace::MarcinkiewiczPsi { r },
            value: max_ratio,
            threshold: growth_threshold,
            verdict,
        },
        ratios,
        growth,
    }
}

/// The verdict pair for the two explicit sets around the bounded-holomorphic
/// monomial-convergence set, plus the scaled-ball constant
/// `K = (2e ‖id‖^r + 1)^{1/r}`.
#[derive(Debug, Clone)]
pub struct HinfVerdicts {
    pub lower: MembershipVerdict,
    pub upper: MembershipVerdict,
    pub k_constant: f64,
    pub embedding_upper: f64,
}

/// Evaluates both inclusion predicates for `z` with caller-supplied limsup
/// `L` (zero for finitely supported input). `embedding_bound` overrides the
/// cached embedding-constant upper bound when given.
pub fn hinf_membership(
    z: &MagnitudeVector,
    r: f64,
    limsup_value: f64,
    embedding_bound: Option<f64>,
) -> HinfVerdicts {
    assert!(r > 1.0 && r <= 2.0);
    assert!(limsup_value >= 0.0);
    let embedding = embedding_bound.unwrap_or_else(|| constants::embedding_upper(r));
    let lower_value = hinf_lower_set_value(z, r, limsup_value, embedding, 1.0);
    let ell = ell_norm(z, Exponent::finite(r));
    let upper_value = ell.max(limsup_value);
    let k_constant = (2.0 * std::f64::consts::E * embedding.powf(r) + 1.0).powf(1.0 / r);
    HinfVerdicts {
        lower: MembershipVerdict {
            space: MembershipSpace::HinfLowerSet { r },
            value: lower_value,
            threshold: 1.0,
            verdict: against_threshold(lower_value, 1.0),
        },
        upper: MembershipVerdict {
            space: MembershipSpace::HinfUpperSet { r },
            value: upper_value,
            threshold: 1.0,
            verdict: against_threshold(upper_value, 1.0),
        },
        k_constant,
        embedding_upper: embedding,
    }
}

/// The lower-set functional for a ball of the given radius:
/// `(2e ‖id‖^r L^r + ‖z‖_r^r) / radius^r`. Membership means value < 1;
/// dilating `(z, radius) ↦ (t z, t·radius)` leaves the value unchanged.
pub fn hinf_lower_set_value(
    z: &MagnitudeVector,
    r: f64,
    limsup_value: f64,
    embedding: f64,
    radius: f64,
) -> f64 {
    assert!(radius > 0.0);
    let ell = ell_norm(z, Exponent::finite(r));
    (2.0 * std::f64::consts::E * embedding.powf(r) * limsup_value.powf(r) + ell.powf(r))
        / radius.powf(r)
}
