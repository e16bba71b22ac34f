//! Exhaustive ground-truth solvers.
//!
//! Both searches walk the full Cartesian product of each book's offers in
//! lexicographic order of the shop sequence (book 0 most significant) and
//! keep the first strictly better assignment, so the returned optimum is the
//! lexicographically smallest one. No pruning.

use crate::error::SolverError;
use crate::model::{discount_earned, result_from_spend, Assignment, Instance, Money, SolveResult};

/// Default cap on the number of enumerated assignments.
pub const DEFAULT_MAX_ASSIGNMENTS: u64 = 10_000_000;

/// Number of complete assignments of `instance`, saturating.
pub fn search_space(instance: &Instance) -> u128 {
    (0..instance.num_books())
        .map(|b| instance.offers_of_book(b).len() as u128)
        .fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// Minimum total cost by full enumeration.
pub fn brute_force_min_cost(instance: &Instance, cap: u64) -> Result<SolveResult, SolverError> {
    exhaustive(instance, cap, |gross, discount| gross - discount)
}

/// Maximum total discount by full enumeration; fixed-price instances only.
pub fn brute_force_max_discount(instance: &Instance, cap: u64) -> Result<SolveResult, SolverError> {
    instance
        .fixed_prices()
        .map_err(|(book, _)| SolverError::NotFixedPrice(book))?;
    exhaustive(instance, cap, |_, discount| -discount)
}

fn exhaustive<F>(instance: &Instance, cap: u64, score: F) -> Result<SolveResult, SolverError>
where
    F: Fn(Money, Money) -> Money,
{
    let count = search_space(instance);
    if count > cap as u128 {
        return Err(SolverError::SearchSpaceTooLarge(count));
    }

    let n = instance.num_books();
    let rules = instance.rules();
    let offers: Vec<&[(usize, Money)]> = (0..n).map(|b| instance.offers_of_book(b)).collect();

    let mut cursor = vec![0usize; n];
    let mut spend = vec![0 as Money; instance.num_shops()];
    let mut gross: Money = 0;
    for list in &offers {
        spend[list[0].0] += list[0].1;
        gross += list[0].1;
    }
    let mut discount: Money = spend
        .iter()
        .zip(rules)
        .map(|(&x, &r)| discount_earned(r, x))
        .sum();

    let mut best_score = score(gross, discount);
    let mut best = cursor.clone();

    // Odometer over the offer lists, last book spinning fastest.
    'outer: loop {
        let mut b = n;
        loop {
            if b == 0 {
                break 'outer;
            }
            b -= 1;
            let list = offers[b];
            let (old_shop, old_price) = list[cursor[b]];
            let next = if cursor[b] + 1 == list.len() {
                0
            } else {
                cursor[b] + 1
            };
            let (new_shop, new_price) = list[next];
            cursor[b] = next;

            discount -= discount_earned(rules[old_shop], spend[old_shop]);
            spend[old_shop] -= old_price;
            discount += discount_earned(rules[old_shop], spend[old_shop]);

            discount -= discount_earned(rules[new_shop], spend[new_shop]);
            spend[new_shop] += new_price;
            discount += discount_earned(rules[new_shop], spend[new_shop]);

            gross += new_price - old_price;
            if next != 0 {
                break;
            }
        }
        let s = score(gross, discount);
        if s < best_score {
            best_score = s;
            best.copy_from_slice(&cursor);
        }
    }

    let choice: Vec<usize> = best
        .iter()
        .enumerate()
        .map(|(b, &i)| offers[b][i].0)
        .collect();
    let mut per_shop = vec![0; instance.num_shops()];
    for (b, &s) in choice.iter().enumerate() {
        per_shop[s] += offers[b][best[b]].1;
    }
    Ok(result_from_spend(
        instance,
        Assignment::new(choice),
        per_shop,
    ))
}
