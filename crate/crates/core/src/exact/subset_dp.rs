//! Dynamic program over (shop prefix, book subset), `O(m 3^n)`.
//!
//! `best[j][B']` is the cheapest way to buy exactly the books of `B'` from
//! shops `0..=j`, where shop `j` receives some subset `B'' ⊆ B'`. A shop that
//! lacks a book of `B''` makes that split infeasible, represented by `None`.

use crate::error::SolverError;
use crate::model::{
    discount_earned, evaluate_assignment, Assignment, Instance, Money, SolveResult,
};

pub const DEFAULT_MAX_BOOKS: usize = 20;

pub fn subset_dp_min_cost(
    instance: &Instance,
    max_books: usize,
) -> Result<SolveResult, SolverError> {
    let n = instance.num_books();
    if n > max_books || n > 30 {
        return Err(SolverError::TooManyBooks(n));
    }
    let m = instance.num_shops();
    let full: usize = (1usize << n) - 1;
    let size = 1usize << n;

    // best[B'] for the current shop prefix; choice[j][B'] is the B'' given to shop j.
    let mut best: Vec<Option<Money>> = vec![None; size];
    let mut next: Vec<Option<Money>> = vec![None; size];
    let mut choice: Vec<Vec<u32>> = Vec::with_capacity(m);
    let mut spend = vec![0 as Money; size];

    for j in 0..m {
        let rule = instance.rule(j);
        let mut avail = 0usize;
        let mut price = vec![0 as Money; n];
        for &(b, p) in instance.offers_of_shop(j) {
            avail |= 1 << b;
            price[b] = p;
        }
        // spend[B''] for every B'' ⊆ avail, ascending so B'' minus its lowest bit is ready.
        spend[0] = 0;
        let mut sub = 0usize;
        while sub != avail {
            sub = sub.wrapping_sub(avail) & avail;
            let low = sub.trailing_zeros() as usize;
            spend[sub] = spend[sub & (sub - 1)] + price[low];
        }
        let shop_cost = |sub: usize| spend[sub] - discount_earned(rule, spend[sub]);

        let mut pick = vec![0u32; size];
        for set in 0..size {
            let mut cheapest: Option<Money> = None;
            let mut arg = 0usize;
            let usable = set & avail;
            let mut sub = usable;
            loop {
                let rest = set & !sub;
                let prev = if j == 0 {
                    if rest == 0 {
                        Some(0)
                    } else {
                        None
                    }
                } else {
                    best[rest]
                };
                if let Some(prev) = prev {
                    let total = prev + shop_cost(sub);
                    if cheapest.is_none_or(|c| total < c) {
                        cheapest = Some(total);
                        arg = sub;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & usable;
            }
            next[set] = cheapest;
            pick[set] = arg as u32;
        }
        std::mem::swap(&mut best, &mut next);
        choice.push(pick);
    }

    let optimum = if m == 0 { Some(0) } else { best[full] };
    let optimum = optimum.expect("every book has an offer");

    let mut shop_of = vec![usize::MAX; n];
    let mut set = full;
    for j in (0..m).rev() {
        let sub = choice[j][set] as usize;
        for (b, slot) in shop_of.iter_mut().enumerate() {
            if sub >> b & 1 == 1 {
                *slot = j;
            }
        }
        set &= !sub;
    }
    debug_assert_eq!(set, 0);

    let result = evaluate_assignment(instance, &Assignment::new(shop_of))
        .expect("reconstructed from offers");
    debug_assert_eq!(result.total_cost, optimum);
    Ok(result)
}
