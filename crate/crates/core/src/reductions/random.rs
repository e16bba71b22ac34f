//! Seeded random instances for sweeps and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ReductionError;
use crate::model::{DiscountRule, Instance, Money, RawInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    /// Prices are drawn from `1..=max_price`.
    pub max_price: Money,
    /// Most offers any single shop may have.
    pub shop_degree_cap: Option<usize>,
    /// Every price is 1.
    pub unit_prices: bool,
    /// A book costs the same at every shop selling it.
    pub fixed_prices: bool,
    /// Discounts are drawn from `0..=max_discount`.
    pub max_discount: Money,
    /// Probability of each offer beyond the one guaranteeing coverage.
    pub density: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            n: 6,
            m: 4,
            max_price: 10,
            shop_degree_cap: None,
            unit_prices: false,
            fixed_prices: false,
            max_discount: 5,
            density: 0.4,
        }
    }
}

/// Each book first gets one offer at a uniformly chosen shop with spare
/// capacity, then every other pair is offered with probability `density`.
/// A shop's threshold is uniform in `0..=` its catalogue value, so it is
/// reachable but not always met.
pub fn random_instance(params: &RandomParams, seed: u64) -> Result<Instance, ReductionError> {
    let RandomParams { n, m, .. } = *params;
    if n == 0 || m == 0 {
        return Err(ReductionError::InfeasibleParameters(
            "need at least one book and one shop".into(),
        ));
    }
    if params.max_price < 1 || params.max_discount < 0 || !(0.0..=1.0).contains(&params.density) {
        return Err(ReductionError::InfeasibleParameters(
            "price, discount or density out of range".into(),
        ));
    }
    let cap = params.shop_degree_cap.unwrap_or(n);
    if cap.saturating_mul(m) < n {
        return Err(ReductionError::InfeasibleParameters(format!(
            "{m} shops of degree at most {cap} cannot cover {n} books"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let book_price: Vec<Money> = (0..n).map(|_| draw_price(params, &mut rng)).collect();
    let mut offered = vec![vec![false; m]; n];
    let mut degree = vec![0usize; m];
    for row in offered.iter_mut() {
        let open: Vec<usize> = (0..m).filter(|&s| degree[s] < cap).collect();
        // cap·m ≥ n keeps `open` non-empty
        let s = open[rng.random_range(0..open.len())];
        row[s] = true;
        degree[s] += 1;
    }
    for row in offered.iter_mut() {
        for s in 0..m {
            if !row[s] && degree[s] < cap && rng.random_bool(params.density) {
                row[s] = true;
                degree[s] += 1;
            }
        }
    }

    let mut offers = Vec::new();
    let mut value = vec![0 as Money; m];
    for (b, row) in offered.iter().enumerate() {
        for (s, _) in row.iter().enumerate().filter(|(_, &o)| o) {
            let price = if params.fixed_prices || params.unit_prices {
                book_price[b]
            } else {
                draw_price(params, &mut rng)
            };
            value[s] += price;
            offers.push((b, s, price));
        }
    }
    let rules = value
        .iter()
        .map(|&v| {
            DiscountRule::new(
                rng.random_range(0..=params.max_discount),
                rng.random_range(0..=v),
            )
        })
        .collect();
    let mut raw = RawInstance::new(n, rules);
    for (b, s, p) in offers {
        raw.offer(b, s, p);
    }
    Ok(raw.validate().expect("well-formed by construction"))
}

fn draw_price(params: &RandomParams, rng: &mut ChaCha8Rng) -> Money {
    if params.unit_prices {
        1
    } else {
        rng.random_range(1..=params.max_price)
    }
}
