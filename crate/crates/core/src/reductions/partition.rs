//! Partition: two identical shops each paying 1 once half the total is spent.

use super::{GeneratedInstance, ReductionError};
use crate::model::{DiscountRule, Money, RawInstance};

/// Largest input for which the source answer is computed.
const MAX_CERTIFIED_ITEMS: usize = 24;

/// Items become books sold by both shops at their weight. Rule `(1, ⌈T/2⌉)`,
/// budget `T − 2`. For odd `T` both discounts would need `2⌈T/2⌉ > T`, so
/// the answer is no.
pub fn from_partition(weights: &[Money]) -> Result<GeneratedInstance, ReductionError> {
    if weights.is_empty() {
        return Err(ReductionError::EmptyInput);
    }
    if let Some(w) = weights.iter().find(|&&w| w <= 0) {
        return Err(ReductionError::Malformed(format!(
            "weight {w} is not positive"
        )));
    }
    let total: Money = weights.iter().sum();
    let half = (total + 1) / 2;
    let mut raw = RawInstance::new(weights.len(), vec![DiscountRule::new(1, half); 2]);
    for (b, &w) in weights.iter().enumerate() {
        raw.offer(b, 0, w).offer(b, 1, w);
    }
    let instance = raw.validate().expect("well-formed by construction");
    let mut g = GeneratedInstance::new(instance, total - 2);
    g.witness_map = (0..weights.len())
        .map(|i| (format!("a{}", i + 1), format!("b{}", i + 1)))
        .collect();
    if weights.len() <= MAX_CERTIFIED_ITEMS {
        g.expected_answer = Some(is_partitionable(weights));
    }
    Ok(g)
}

/// Subset-sum reachability: can the weights be split into equal halves?
pub fn is_partitionable(weights: &[Money]) -> bool {
    let total: Money = weights.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &w in weights {
        let w = w as usize;
        for s in (w..=half).rev() {
            reach[s] |= reach[s - w];
        }
    }
    reach[half]
}
