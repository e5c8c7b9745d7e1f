//! Enumeration budgets.
//!
//! Index-set sizes grow combinatorially; every enumeration entry point checks
//! its cardinality against a budget first so a CLI typo cannot wedge a run.

use crate::error::Error;

/// Default cap on enumerated items (multi-indices, grid points).
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable consulted by the CLI to override [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "MONCONV_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn check(self, required: u128) -> Result<(), Error> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}
