//! Numerical verification of the explicit coefficient inequalities, with
//! ternary outcomes, plus membership predicates for monomial-convergence
//! sets.
//!
//! Soundness convention: `Violated` is only reported when the left side
//! exceeds the right side computed from a *certified upper* norm bound, so a
//! Violated record always falsifies the inequality it checks, not the
//! optimizer. Exact checks (both sides in closed form) are two-sided and
//! never Inconclusive.

pub mod batch;
pub mod checks;
pub mod constants;
pub mod membership;
pub mod signs;

pub use batch::{run_batch, run_batch_range, BatchCheck, BatchParams};
pub use checks::{
    check_bds, check_ellq_sum, check_even_bound, check_general_bound, check_hyper_q2,
    check_hypercontractive, check_mixed_multilinear, check_tetra_bound, impossibility_growth,
    CheckContext,
};
pub use membership::{
    hb_membership, hb_membership_family, hinf_lower_set_value, hinf_membership, FamilyTrend,
    HinfVerdicts, MembershipSpace, MembershipVerdict, SequenceFamily, Verdict,
};
pub use signs::{sign_bound, sign_polynomial_search, SignSearchOutcome};
