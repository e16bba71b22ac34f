//! Polynomial solver when every shop sells at most two books.
//!
//! An auxiliary graph over books and shops encodes each way of claiming a
//! shop's discount as an edge whose weight is the saving against buying the
//! involved books at their cheapest prices:
//!
//! * `{b, s}` if `b` alone reaches `t_s`, weight `d_s + p(b) − w(b, s)`;
//! * `{b1, b2}` if both books of `s` together reach `t_s`, weight
//!   `d_s + p(b1) − w(b1, s) + p(b2) − w(b2, s)`.
//!
//! A maximum-weight matching of weight `W` then yields an optimal purchase of
//! cost `Σ p(b) − W`. Shops with a zero threshold grant their discount
//! whatever is bought, so they contribute a constant and no edges.

use crate::error::SolverError;
use crate::exact::matching::{max_weight_matching, Matching, WeightedGraph};
use crate::model::{evaluate_assignment, Assignment, Instance, Money, SolveResult};

#[derive(Debug, Clone)]
pub struct Matching2Outcome {
    pub result: SolveResult,
    /// Vertices `0..n` are books, `n..n + m` are shops.
    pub graph: WeightedGraph,
    pub matching: Matching,
    /// `Σ_b p(b)`.
    pub sum_min_prices: Money,
    /// Discounts of zero-threshold shops, earned unconditionally.
    pub unconditional_discount: Money,
}

/// Builds the auxiliary graph. Edge tags name the originating shop.
pub fn derived_graph(instance: &Instance) -> Result<WeightedGraph, SolverError> {
    let n = instance.num_books();
    let m = instance.num_shops();
    let p: Vec<Money> = (0..n)
        .map(|b| instance.min_price(b).expect("validated"))
        .collect();
    let mut graph = WeightedGraph::new(n + m);
    for s in 0..m {
        let offers = instance.offers_of_shop(s);
        if offers.len() > 2 {
            return Err(SolverError::DegreeTooHigh(s));
        }
        let rule = instance.rule(s);
        if rule.threshold == 0 {
            continue;
        }
        for &(b, w) in offers {
            if w >= rule.threshold {
                graph.add_edge(b, n + s, rule.discount + p[b] - w, Some(s));
            }
        }
        if let [(b1, w1), (b2, w2)] = *offers {
            if w1 + w2 >= rule.threshold {
                let weight = rule.discount + p[b1] - w1 + p[b2] - w2;
                graph.add_edge(b1, b2, weight, Some(s));
            }
        }
    }
    Ok(graph)
}

pub fn matching2_solve(instance: &Instance) -> Result<Matching2Outcome, SolverError> {
    let n = instance.num_books();
    let graph = derived_graph(instance)?;
    let matching = max_weight_matching(&graph);

    let mut choice: Vec<usize> = (0..n).map(|b| instance.cheapest_shop(b)).collect();
    for &k in &matching.edges {
        let e = graph.edges()[k];
        let shop = e.tag.expect("every derived edge is tagged");
        // u < v, so u is always a book
        choice[e.u] = shop;
        if e.v < n {
            choice[e.v] = shop;
        }
    }
    let result =
        evaluate_assignment(instance, &Assignment::new(choice)).expect("built from offers");

    let sum_min_prices: Money = (0..n)
        .map(|b| instance.min_price(b).expect("validated"))
        .sum();
    let unconditional_discount: Money = instance
        .rules()
        .iter()
        .filter(|r| r.threshold == 0)
        .map(|r| r.discount)
        .sum();
    debug_assert_eq!(
        result.total_cost,
        sum_min_prices - matching.weight - unconditional_discount
    );
    Ok(Matching2Outcome {
        result,
        graph,
        matching,
        sum_min_prices,
        unconditional_discount,
    })
}

pub fn matching2_min_cost(instance: &Instance) -> Result<SolveResult, SolverError> {
    matching2_solve(instance).map(|o| o.result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::five_shops;
    use crate::model::{DiscountRule, RawInstance};
    use crate::oracle::{brute_force_min_cost, DEFAULT_MAX_ASSIGNMENTS};
    use crate::reductions::random::{random_instance, RandomParams};

    #[test]
    fn five_shops_graph_and_matching() {
        let inst = five_shops();
        let out = matching2_solve(&inst).unwrap();
        assert_eq!(out.sum_min_prices, 40);
        assert_eq!(out.matching.weight, 6);
        assert_eq!(out.result.total_cost, 34);
        assert_eq!(out.result.assignment.choices(), &[0, 2, 3, 3, 4]);

        let weights: Vec<(usize, usize, Money)> = out
            .graph
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.weight))
            .collect();
        // b1-s1 3, b1-b2 2, b2-s1 2, b2-b3 1 (s3 beats s2's 0), b2-s3 1, b3-b4 2, b3-b5 -1
        let n = 5;
        let mut expected = vec![
            (0, n, 3),
            (1, n, 2),
            (0, 1, 2),
            (1, 2, 1),
            (1, n + 2, 1),
            (2, 3, 2),
            (2, 4, -1),
        ];
        let mut got = weights.clone();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        let b2b3 = out
            .graph
            .edges()
            .iter()
            .find(|e| (e.u, e.v) == (1, 2))
            .unwrap();
        assert_eq!(b2b3.tag, Some(2));
    }

    #[test]
    fn rejects_degree_three() {
        let mut raw = RawInstance::new(3, vec![DiscountRule::new(1, 1)]);
        raw.offer(0, 0, 1).offer(1, 0, 1).offer(2, 0, 1);
        assert_eq!(
            matching2_min_cost(&raw.validate().unwrap()).map(|r| r.total_cost),
            Err(SolverError::DegreeTooHigh(0))
        );
    }

    #[test]
    fn unreachable_thresholds_give_sum_of_min_prices() {
        let mut raw = RawInstance::new(2, vec![DiscountRule::new(5, 100); 3]);
        raw.offer(0, 0, 4).offer(0, 1, 3).offer(1, 2, 6);
        let out = matching2_solve(&raw.validate().unwrap()).unwrap();
        assert!(out.matching.edges.is_empty());
        assert_eq!(out.result.total_cost, 9);
    }

    #[test]
    fn zero_threshold_shops_are_free() {
        let mut raw = RawInstance::new(2, vec![DiscountRule::new(2, 0), DiscountRule::new(3, 5)]);
        raw.offer(0, 0, 4).offer(0, 1, 5).offer(1, 1, 1);
        let inst = raw.validate().unwrap();
        let out = matching2_solve(&inst).unwrap();
        let oracle = brute_force_min_cost(&inst, 100).unwrap();
        assert_eq!(out.result.total_cost, oracle.total_cost);
        assert_eq!(out.unconditional_discount, 2);
    }

    #[test]
    fn random_degree_two_sweep() {
        for seed in 0..30 {
            let params = RandomParams {
                n: 1 + (seed as usize % 10),
                m: 5 + (seed as usize % 6),
                max_price: 10,
                shop_degree_cap: Some(2),
                ..RandomParams::default()
            };
            let inst = random_instance(&params, seed).unwrap();
            let out = matching2_solve(&inst).unwrap();
            let oracle = brute_force_min_cost(&inst, DEFAULT_MAX_ASSIGNMENTS).unwrap();
            assert_eq!(out.result.total_cost, oracle.total_cost, "seed {seed}");
            assert!(out.matching.weight >= 0);
            assert_eq!(
                out.result.total_cost,
                out.sum_min_prices - out.matching.weight - out.unconditional_discount
            );
        }
    }
}
