//! Hardness reductions turned into certified instance generators.
//!
//! Every generator returns the instance together with the budget the
//! reduction prescribes and, when the source problem is small enough to
//! brute-force, the answer the instance must reproduce.

use thiserror::Error;

use crate::model::{Instance, Money};

pub mod bin_packing;
pub mod max3sat;
pub mod partition;
pub mod perfect_code;
pub mod random;
pub mod x3c;

pub use bin_packing::from_bin_packing;
pub use max3sat::{from_max3sat, CnfFormula};
pub use partition::from_partition;
pub use perfect_code::{from_perfect_code, SimpleGraph};
pub use random::{random_instance, RandomParams};
pub use x3c::{x3c_or_composition, X3CInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("empty input")]
    EmptyInput,
    #[error("weights sum to {sum}, expected bins x capacity = {expected}")]
    WeightSumMismatch { sum: Money, expected: Money },
    #[error("component {index} has {got} items, expected {expected}")]
    ItemCountMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("item {item} of component {index} occurs in {count} sets, expected 3")]
    NotExactly3Occurrences {
        index: usize,
        item: usize,
        count: usize,
    },
    #[error("literal {literal} occurs {count} times, expected exactly 2")]
    LiteralOccurrenceViolation { literal: i32, count: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
}

/// An instance plus what its source problem says about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    /// Carries `target_budget` as its budget.
    pub instance: Instance,
    pub target_budget: Money,
    /// Source-problem answer, `None` when the brute force was out of reach.
    pub expected_answer: Option<bool>,
    /// Source object name paired with the book or shop label it became.
    pub witness_map: Vec<(String, String)>,
    /// Set by generators whose source fixes the optimum discount.
    pub expected_max_discount: Option<Money>,
    /// Free-form facts worth recording next to the instance.
    pub notes: Vec<String>,
}

impl GeneratedInstance {
    fn new(instance: Instance, target_budget: Money) -> Self {
        Self {
            instance: instance.with_budget(Some(target_budget)),
            target_budget,
            expected_answer: None,
            witness_map: Vec::new(),
            expected_max_discount: None,
            notes: Vec::new(),
        }
    }

    /// `#` lines describing the certificate, for instance file headers.
    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("target budget {}", self.target_budget)];
        match self.expected_answer {
            Some(a) => lines.push(format!("expected answer {}", if a { "yes" } else { "no" })),
            None => lines.push("expected answer unknown".to_string()),
        }
        if let Some(d) = self.expected_max_discount {
            lines.push(format!("expected max discount {d}"));
        }
        lines.extend(self.notes.iter().cloned());
        lines
    }
}
