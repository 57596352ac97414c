//! Search limits shared by the atom tests and the witness searches.

use crate::upoly::DEFAULT_DEGREE_CAP;

/// Bounds for every search that could otherwise run forever. Running out of
/// budget is reported as "not found", never as a negative answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest denominator of monoid atoms tried.
    pub atom_denominator_bound: u64,
    /// Largest number of factors in a split or descent.
    pub factor_depth_bound: usize,
    /// Largest degree of a candidate multiplier.
    pub multiplier_degree_bound: usize,
    /// Largest bit precision for real enclosures.
    pub precision_cap: u32,
    /// Largest degree handed to the integer polynomial factorizer.
    pub factor_degree_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            atom_denominator_bound: 100,
            factor_depth_bound: 8,
            multiplier_degree_bound: 8,
            precision_cap: 256,
            factor_degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}
