//! Greedy approximation for maximizing the total discount on fixed-price
//! instances. If every shop sells at most `k` books, the greedy discount is
//! at least `1/k` of the optimum.

use crate::error::SolverError;
use crate::model::{evaluate_assignment, Assignment, Instance, Money, SolveResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub result: SolveResult,
    /// Shops handed their books in the greedy phase, in visiting order.
    pub claimed: Vec<usize>,
}

/// Visits shops by decreasing discount (lower index first on ties) and hands
/// a shop all of its still-unassigned books whenever their price sum reaches
/// its threshold. Zero-threshold shops earn their discount regardless and are
/// handed nothing. Leftover books go to their lowest-index shop.
pub fn greedy_max_discount(instance: &Instance) -> Result<SolveResult, SolverError> {
    greedy_solve(instance).map(|o| o.result)
}

pub fn greedy_solve(instance: &Instance) -> Result<GreedyOutcome, SolverError> {
    let price = instance
        .fixed_prices()
        .map_err(|(book, _)| SolverError::NotFixedPrice(book))?;
    let n = instance.num_books();
    let m = instance.num_shops();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&s| (std::cmp::Reverse(instance.rule(s).discount), s));

    let mut choice: Vec<Option<usize>> = vec![None; n];
    let mut claimed = Vec::new();
    for s in order {
        let threshold = instance.rule(s).threshold;
        if threshold == 0 {
            continue;
        }
        let available: Vec<usize> = instance
            .offers_of_shop(s)
            .iter()
            .map(|&(b, _)| b)
            .filter(|&b| choice[b].is_none())
            .collect();
        let spend: Money = available.iter().map(|&b| price[b]).sum();
        if spend >= threshold {
            for b in available {
                choice[b] = Some(s);
            }
            claimed.push(s);
        }
    }
    let choice = choice
        .into_iter()
        .enumerate()
        .map(|(b, s)| s.unwrap_or_else(|| instance.offers_of_book(b)[0].0))
        .collect();
    let result =
        evaluate_assignment(instance, &Assignment::new(choice)).expect("built from offers");
    Ok(GreedyOutcome { result, claimed })
}
