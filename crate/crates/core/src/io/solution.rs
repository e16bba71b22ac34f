//! Solution files: one `ASSIGN <book> <shop>` line per book in ascending book
//! order, then `COST <value>`. The declared cost is only a claim; checking
//! always re-evaluates the assignment.

use std::fmt::Write;

use thiserror::Error;

use super::{content_lines, expect_arity, parse_int, ParseError};
use crate::model::{
    evaluate_assignment, Assignment, EvaluationError, Instance, Money, SolveResult,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub assignment: Assignment,
    pub declared_cost: Money,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub result: SolveResult,
    /// `cost ≤ budget`, when a budget was given.
    pub within_budget: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Evaluation(#[from] EvaluationError),
    #[error("declared cost {declared} differs from the actual cost {actual}")]
    DeclaredCostMismatch { declared: Money, actual: Money },
}

pub fn serialize_solution(result: &SolveResult) -> String {
    let mut out = String::new();
    for (b, &s) in result.assignment.choices().iter().enumerate() {
        let _ = writeln!(out, "ASSIGN {} {}", b + 1, s + 1);
    }
    let _ = writeln!(out, "COST {}", result.total_cost);
    out
}

/// `num_books` fixes how many `ASSIGN` lines are required.
pub fn parse_solution(text: &str, num_books: usize) -> Result<SolutionFile, ParseError> {
    let mut choice: Vec<Option<usize>> = vec![None; num_books];
    let mut cost = None;
    for (n, t) in content_lines(text) {
        match t[0] {
            "ASSIGN" => {
                expect_arity(n, &t, 3)?;
                let book: usize = parse_int(n, t[1], "book")?;
                let shop: usize = parse_int(n, t[2], "shop")?;
                if book == 0 || book > num_books {
                    return Err(ParseError::at(
                        n,
                        format!("book {book} out of range 1..={num_books}"),
                    ));
                }
                if shop == 0 {
                    return Err(ParseError::at(n, "shop ids start at 1"));
                }
                if choice[book - 1].replace(shop - 1).is_some() {
                    return Err(ParseError::at(n, format!("book b{book} assigned twice")));
                }
            }
            "COST" => {
                expect_arity(n, &t, 2)?;
                if cost.replace(parse_int(n, t[1], "cost")?).is_some() {
                    return Err(ParseError::at(n, "COST given twice"));
                }
            }
            other => return Err(ParseError::at(n, format!("unknown keyword `{other}`"))),
        }
    }
    let choice = choice
        .into_iter()
        .enumerate()
        .map(|(b, s)| s.ok_or_else(|| ParseError::whole(format!("book b{} unassigned", b + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let declared_cost = cost.ok_or_else(|| ParseError::whole("missing COST"))?;
    Ok(SolutionFile {
        assignment: Assignment::new(choice),
        declared_cost,
    })
}

pub fn check_solution(
    instance: &Instance,
    text: &str,
    budget: Option<Money>,
) -> Result<CheckReport, CheckError> {
    let file = parse_solution(text, instance.num_books())?;
    let result = evaluate_assignment(instance, &file.assignment)?;
    if file.declared_cost != result.total_cost {
        return Err(CheckError::DeclaredCostMismatch {
            declared: file.declared_cost,
            actual: result.total_cost,
        });
    }
    Ok(CheckReport {
        within_budget: budget.map(|k| result.total_cost <= k),
        result,
    })
}
