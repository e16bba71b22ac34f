//! One entry point over all solvers, as used by the binary and the bench.

use std::fmt;
use std::str::FromStr;

use crate::approx::greedy_max_discount;
use crate::error::SolverError;
use crate::exact::fstar::{fstar_unit_price_min_cost, DEFAULT_MAX_SHOPS as FSTAR_MAX_SHOPS};
use crate::exact::matching2::matching2_min_cost;
use crate::exact::price_dp::{price_vector_dp, PriceDpLimits};
use crate::exact::subset_dp::{subset_dp_min_cost, DEFAULT_MAX_BOOKS};
use crate::model::{Instance, Money, SolveResult};
use crate::oracle::{brute_force_min_cost, DEFAULT_MAX_ASSIGNMENTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Oracle,
    SubsetDp,
    PriceDp,
    Matching2,
    Fstar,
    Greedy,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Oracle,
        Algorithm::SubsetDp,
        Algorithm::PriceDp,
        Algorithm::Matching2,
        Algorithm::Fstar,
        Algorithm::Greedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::SubsetDp => "subset-dp",
            Algorithm::PriceDp => "price-dp",
            Algorithm::Matching2 => "matching2",
            Algorithm::Fstar => "fstar",
            Algorithm::Greedy => "greedy",
        }
    }

    /// Exact algorithms return a minimum-cost assignment.
    pub fn is_exact(self) -> bool {
        self != Algorithm::Greedy
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_assignments: u64,
    pub max_books: usize,
    pub price_dp: PriceDpLimits,
    pub fstar_max_shops: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_assignments: DEFAULT_MAX_ASSIGNMENTS,
            max_books: DEFAULT_MAX_BOOKS,
            price_dp: PriceDpLimits::default(),
            fstar_max_shops: FSTAR_MAX_SHOPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub result: SolveResult,
    /// `cost ≤ budget`, when a budget applies.
    pub within_budget: Option<bool>,
}

/// Runs `algorithm`. The budget is `budget` if given, else the instance's.
pub fn solve(
    instance: &Instance,
    algorithm: Algorithm,
    budget: Option<Money>,
    limits: &Limits,
) -> Result<SolveOutcome, SolverError> {
    let budget = budget.or(instance.budget());
    let result = match algorithm {
        Algorithm::Oracle => brute_force_min_cost(instance, limits.max_assignments)?,
        Algorithm::SubsetDp => subset_dp_min_cost(instance, limits.max_books)?,
        Algorithm::PriceDp => {
            // without a budget the decision is trivially yes and the witness is optimal
            let k = budget.unwrap_or_else(|| instance.total_offer_value());
            price_vector_dp(instance, k, limits.price_dp)?.best
        }
        Algorithm::Matching2 => matching2_min_cost(instance)?,
        Algorithm::Fstar => fstar_unit_price_min_cost(instance, limits.fstar_max_shops)?,
        Algorithm::Greedy => greedy_max_discount(instance)?,
    };
    Ok(SolveOutcome {
        within_budget: budget.map(|k| result.total_cost <= k),
        result,
    })
}
