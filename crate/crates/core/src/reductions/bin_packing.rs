//! Bin Packing with exactly filled bins: `m` identical shops `(1, W)`.

use super::{GeneratedInstance, ReductionError};
use crate::model::{DiscountRule, Money, RawInstance};

/// Upper bound on `m^n` for computing the source answer.
const MAX_CERTIFIED_SPACE: u128 = 50_000_000;

/// Requires `Σ w = m·W`. Every item is sold by every shop at its weight;
/// budget `m(W − 1)`, reachable iff every bin is filled to exactly `W`.
pub fn from_bin_packing(
    weights: &[Money],
    bins: usize,
    capacity: Money,
) -> Result<GeneratedInstance, ReductionError> {
    if weights.is_empty() || bins == 0 {
        return Err(ReductionError::EmptyInput);
    }
    if let Some(w) = weights.iter().find(|&&w| w <= 0) {
        return Err(ReductionError::Malformed(format!(
            "weight {w} is not positive"
        )));
    }
    if capacity < 0 {
        return Err(ReductionError::Malformed(format!(
            "capacity {capacity} is negative"
        )));
    }
    let sum: Money = weights.iter().sum();
    let expected = bins as Money * capacity;
    if sum != expected {
        return Err(ReductionError::WeightSumMismatch { sum, expected });
    }
    let mut raw = RawInstance::new(weights.len(), vec![DiscountRule::new(1, capacity); bins]);
    for (b, &w) in weights.iter().enumerate() {
        for s in 0..bins {
            raw.offer(b, s, w);
        }
    }
    let instance = raw.validate().expect("well-formed by construction");
    let mut g = GeneratedInstance::new(instance, bins as Money * (capacity - 1));
    g.witness_map = (0..weights.len())
        .map(|i| (format!("item{}", i + 1), format!("b{}", i + 1)))
        .chain((0..bins).map(|j| (format!("bin{}", j + 1), format!("s{}", j + 1))))
        .collect();
    let space = (bins as u128)
        .checked_pow(weights.len() as u32)
        .unwrap_or(u128::MAX);
    if space <= MAX_CERTIFIED_SPACE {
        g.expected_answer = Some(packable(weights, bins, capacity));
    }
    Ok(g)
}

/// Can the items be placed into `bins` bins of the given capacity?
pub fn packable(weights: &[Money], bins: usize, capacity: Money) -> bool {
    fn place(i: usize, weights: &[Money], load: &mut [Money], capacity: Money) -> bool {
        if i == weights.len() {
            return true;
        }
        for j in 0..load.len() {
            // bins with equal load are interchangeable
            if load[..j].contains(&load[j]) {
                continue;
            }
            if load[j] + weights[i] <= capacity {
                load[j] += weights[i];
                if place(i + 1, weights, load, capacity) {
                    return true;
                }
                load[j] -= weights[i];
            }
        }
        false
    }
    place(0, weights, &mut vec![0; bins], capacity)
}
