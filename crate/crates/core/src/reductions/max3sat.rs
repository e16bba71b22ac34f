//! Max-3-SAT with every literal occurring exactly twice, as a Max-Discount
//! gadget with unit prices.
//!
//! Books are the `3m` literal occurrences followed by one book per variable.
//! Shops are the `m` clause shops `(1, 1)` followed by `t_i, f_i` `(2, 3)`
//! for each variable. An occurrence is sold by its clause shop and by `t_i`
//! (positive) or `f_i` (negative); the variable book by both `t_i` and
//! `f_i`. Optimum discount is `2n + k*`, `k*` the most satisfiable clauses.

use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::{GeneratedInstance, ReductionError};
use crate::model::{DiscountRule, Money, RawInstance};

/// Largest variable count for the truth-table certificate.
const MAX_CERTIFIED_VARIABLES: usize = 20;

/// Clauses of three signed 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    /// Checks that every literal occurs exactly twice, which forces `4n = 3m`.
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self, ReductionError> {
        let mut count = vec![[0usize; 2]; num_vars];
        for lit in clauses.iter().flatten() {
            let var = lit.unsigned_abs() as usize;
            if *lit == 0 || var > num_vars {
                return Err(ReductionError::Malformed(format!(
                    "literal {lit} outside 1..={num_vars}"
                )));
            }
            count[var - 1][usize::from(*lit < 0)] += 1;
        }
        if num_vars == 0 {
            return Err(ReductionError::LiteralOccurrenceViolation {
                literal: 1,
                count: 0,
            });
        }
        for (v, c) in count.iter().enumerate() {
            for (neg, &k) in c.iter().enumerate() {
                if k != 2 {
                    let literal = (v as i32 + 1) * if neg == 1 { -1 } else { 1 };
                    return Err(ReductionError::LiteralOccurrenceViolation { literal, count: k });
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Uniform shuffle of the `4n` literal slots into clauses with three
    /// distinct variables. Needs `n` divisible by 3.
    pub fn random_exactly_twice(num_vars: usize, seed: u64) -> Result<Self, ReductionError> {
        if num_vars == 0 || !num_vars.is_multiple_of(3) {
            return Err(ReductionError::InfeasibleParameters(format!(
                "{num_vars} variables cannot give 4n = 3m"
            )));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<i32> = (1..=num_vars as i32).flat_map(|v| [v, v, -v, -v]).collect();
        for _ in 0..10_000 {
            slots.shuffle(&mut rng);
            let clauses: Vec<[i32; 3]> = slots.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
            let distinct = clauses.iter().all(|c| {
                c[0].abs() != c[1].abs() && c[0].abs() != c[2].abs() && c[1].abs() != c[2].abs()
            });
            if distinct {
                return Self::new(num_vars, clauses);
            }
        }
        Err(ReductionError::InfeasibleParameters(
            "no clause layout found".to_string(),
        ))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Satisfied clause count under `assignment` (bit `v` is variable `v + 1`).
    pub fn satisfied(&self, assignment: u64) -> usize {
        self.clauses
            .iter()
            .filter(|c| {
                c.iter().any(|&l| {
                    let value = assignment >> (l.unsigned_abs() - 1) & 1 == 1;
                    value == (l > 0)
                })
            })
            .count()
    }

    /// Truth-table maximum of satisfied clauses.
    pub fn max_satisfiable(&self) -> usize {
        (0..1u64 << self.num_vars)
            .map(|a| self.satisfied(a))
            .max()
            .unwrap_or(0)
    }
}

pub fn from_max3sat(formula: &CnfFormula) -> Result<GeneratedInstance, ReductionError> {
    let n = formula.num_vars();
    let m = formula.clauses().len();
    let t_shop = |v: usize| m + 2 * v;
    let f_shop = |v: usize| m + 2 * v + 1;

    let mut rules = vec![DiscountRule::new(1, 1); m];
    rules.extend(std::iter::repeat_n(DiscountRule::new(2, 3), 2 * n));
    let mut raw = RawInstance::new(3 * m + n, rules);
    for (i, clause) in formula.clauses().iter().enumerate() {
        for (j, &lit) in clause.iter().enumerate() {
            let book = 3 * i + j;
            let var = lit.unsigned_abs() as usize - 1;
            raw.offer(book, i, 1);
            raw.offer(book, if lit > 0 { t_shop(var) } else { f_shop(var) }, 1);
        }
    }
    for v in 0..n {
        raw.offer(3 * m + v, t_shop(v), 1)
            .offer(3 * m + v, f_shop(v), 1);
    }
    let instance = raw
        .validate()
        .map_err(|e| ReductionError::Malformed(e.to_string()))?;

    let books = (3 * m + n) as Money;
    let mut g = GeneratedInstance::new(instance, books - 2 * n as Money - m as Money);
    for i in 0..m {
        g.witness_map
            .push((format!("C{}", i + 1), format!("s{}", i + 1)));
        for j in 0..3 {
            g.witness_map.push((
                format!("l{}.{}", i + 1, j + 1),
                format!("b{}", 3 * i + j + 1),
            ));
        }
    }
    for v in 0..n {
        g.witness_map
            .push((format!("x{}", v + 1), format!("b{}", 3 * m + v + 1)));
        g.witness_map
            .push((format!("t{}", v + 1), format!("s{}", t_shop(v) + 1)));
        g.witness_map
            .push((format!("f{}", v + 1), format!("s{}", f_shop(v) + 1)));
    }
    g.notes
        .push(format!("shops {} books {}", m + 2 * n, 3 * m + n));
    if n <= MAX_CERTIFIED_VARIABLES {
        let k = formula.max_satisfiable();
        g.expected_max_discount = Some(2 * n as Money + k as Money);
        g.expected_answer = Some(k == m);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_max_discount, DEFAULT_MAX_ASSIGNMENTS};

    fn example() -> CnfFormula {
        CnfFormula::new(3, vec![[1, 2, 3], [1, 2, 3], [-1, -2, -3], [-1, -2, -3]]).unwrap()
    }

    #[test]
    fn example_gadget() {
        let g = from_max3sat(&example()).unwrap();
        assert_eq!(g.instance.num_shops(), 10);
        assert_eq!(g.instance.num_books(), 15);
        assert_eq!(g.expected_max_discount, Some(10));
        let opt = brute_force_max_discount(&g.instance, DEFAULT_MAX_ASSIGNMENTS).unwrap();
        assert_eq!(opt.total_discount, 10);
    }

    #[test]
    fn structure() {
        for seed in 0..10 {
            let f = CnfFormula::random_exactly_twice(6, seed).unwrap();
            let g = from_max3sat(&f).unwrap();
            for s in 0..g.instance.num_shops() {
                assert_eq!(g.instance.offers_of_shop(s).len(), 3);
            }
            for b in 0..g.instance.num_books() {
                assert_eq!(g.instance.offers_of_book(b).len(), 2);
            }
        }
    }

    #[test]
    fn occurrence_rules() {
        assert!(matches!(
            CnfFormula::new(3, vec![]),
            Err(ReductionError::LiteralOccurrenceViolation {
                literal: 1,
                count: 0
            })
        ));
        assert!(matches!(
            CnfFormula::new(0, vec![]),
            Err(ReductionError::LiteralOccurrenceViolation { .. })
        ));
        assert!(matches!(
            CnfFormula::new(1, vec![[1, 2, 3]]),
            Err(ReductionError::Malformed(_))
        ));
        assert!(CnfFormula::random_exactly_twice(4, 0).is_err());
    }

    #[test]
    fn random_formulas_are_deterministic() {
        let a = CnfFormula::random_exactly_twice(9, 3).unwrap();
        assert_eq!(a, CnfFormula::random_exactly_twice(9, 3).unwrap());
        assert_eq!(a.clauses().len(), 12);
    }

    #[test]
    fn truth_table() {
        let f = example();
        assert_eq!(f.satisfied(0b000), 2);
        assert_eq!(f.satisfied(0b001), 4);
        assert_eq!(f.max_satisfiable(), 4);
    }
}
