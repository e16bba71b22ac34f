//! Reachability over per-shop spend vectors.
//!
//! Layer `i` holds every spend tuple `(p_1, .., p_m)` reachable by buying
//! books `0..i`. Only reachable tuples are stored, each with a back-pointer
//! to its predecessor in layer `i - 1`, so a witness can be rebuilt. A final
//! tuple is accepted iff `Σ p_s − Σ_{p_s ≥ t_s} d_s ≤ K`.

use indexmap::IndexMap;

use crate::error::SolverError;
use crate::model::{
    discount_earned, evaluate_assignment, Assignment, Instance, Money, SolveResult,
};

pub const DEFAULT_MAX_SHOPS: usize = 4;
pub const DEFAULT_MAX_STATES: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceDpOutcome {
    pub feasible: bool,
    /// Cheapest reachable solution, kept on a "no" as well.
    pub best: SolveResult,
    pub states: usize,
}

impl PriceDpOutcome {
    /// Witness for a "yes" answer.
    pub fn witness(&self) -> Option<&SolveResult> {
        self.feasible.then_some(&self.best)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PriceDpLimits {
    pub max_shops: usize,
    pub max_states: usize,
}

impl Default for PriceDpLimits {
    fn default() -> Self {
        Self {
            max_shops: DEFAULT_MAX_SHOPS,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// Spend tuple to (predecessor index, shop) for one book prefix.
type Layer = IndexMap<Box<[Money]>, (usize, usize)>;

pub fn price_vector_dp(
    instance: &Instance,
    budget: Money,
    limits: PriceDpLimits,
) -> Result<PriceDpOutcome, SolverError> {
    let m = instance.num_shops();
    if m > limits.max_shops {
        return Err(SolverError::TooManyShops(m));
    }
    let n = instance.num_books();

    // layers[i]: spend tuple -> (index of predecessor in layers[i - 1], shop).
    let mut layers: Vec<Layer> = Vec::with_capacity(n + 1);
    let mut first = IndexMap::new();
    first.insert(vec![0; m].into_boxed_slice(), (usize::MAX, usize::MAX));
    layers.push(first);
    let mut states = 1usize;

    for book in 0..n {
        let prev = layers.last().expect("non-empty");
        let mut layer: IndexMap<Box<[Money]>, (usize, usize)> = IndexMap::with_capacity(prev.len());
        for (idx, paid) in prev.keys().enumerate() {
            for &(shop, price) in instance.offers_of_book(book) {
                let mut key = paid.clone();
                key[shop] += price;
                layer.entry(key).or_insert((idx, shop));
            }
        }
        states += layer.len();
        if states > limits.max_states {
            return Err(SolverError::StateSpaceTooLarge(limits.max_states));
        }
        layers.push(layer);
    }

    let rules = instance.rules();
    let cost_of = |paid: &[Money]| -> Money {
        paid.iter()
            .zip(rules)
            .map(|(&p, &r)| p - discount_earned(r, p))
            .sum()
    };
    let last = layers.last().expect("non-empty");
    let (best_idx, best_cost) = last
        .keys()
        .enumerate()
        .map(|(i, paid)| (i, cost_of(paid)))
        .min_by_key(|&(i, c)| (c, i))
        .expect("at least one reachable state");

    let mut choice = vec![0usize; n];
    let mut idx = best_idx;
    for book in (0..n).rev() {
        let (_, &(prev, shop)) = layers[book + 1].get_index(idx).expect("valid back-pointer");
        choice[book] = shop;
        idx = prev;
    }
    let best = evaluate_assignment(instance, &Assignment::new(choice)).expect("built from offers");
    debug_assert_eq!(best.total_cost, best_cost);

    Ok(PriceDpOutcome {
        feasible: best_cost <= budget,
        best,
        states,
    })
}

/// Decision only: does some assignment cost at most `budget`?
pub fn price_vector_decide(
    instance: &Instance,
    budget: Money,
    limits: PriceDpLimits,
) -> Result<bool, SolverError> {
    price_vector_dp(instance, budget, limits).map(|o| o.feasible)
}
