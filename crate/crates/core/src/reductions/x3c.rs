//! Or-composition of Exact Cover by 3-Sets instances into one instance.
//!
//! Every price is `T + 1` and every shop of degree `k` has rule
//! `(k, k(T + 1))`, so a budget of `T·n'` forces each visited shop to be
//! bought out. Component shops also sell identifier books selected by a
//! binary key of their component; selector shops `σ_j` sell the remaining
//! identifier books, so only one component's shops can be combined.
//!
//! Layout: `L = ⌈log₂ t⌉` key bits, `J = {0,1} × [L]` indexed `b·L + j`.
//! Shops are `σ_0..σ_{2L}` then every component's sets in order. Books are
//! the `n` items then `x^i_j` at `n + 2L·i + j`. Component `h` (0-based) has
//! key `{(bit j of h, j)}`, least significant bit first.

use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::{GeneratedInstance, ReductionError};
use crate::model::{DiscountRule, Money, RawInstance};

pub const DEFAULT_T: Money = 42;

/// Items `0..num_items`, each set three distinct items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3CInstance {
    num_items: usize,
    sets: Vec<[usize; 3]>,
}

impl X3CInstance {
    pub fn new(num_items: usize, sets: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        if num_items == 0 || !num_items.is_multiple_of(3) {
            return Err(ReductionError::Malformed(format!(
                "{num_items} items is not a positive multiple of 3"
            )));
        }
        for s in &sets {
            if s.iter().any(|&x| x >= num_items) || s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
                return Err(ReductionError::Malformed(format!(
                    "set {s:?} is not a 3-set of the items"
                )));
            }
        }
        Ok(Self { num_items, sets })
    }

    /// Random instance in which every item lies in exactly three sets.
    pub fn random_exactly_three(num_items: usize, seed: u64) -> Result<Self, ReductionError> {
        if num_items == 0 || !num_items.is_multiple_of(3) {
            return Err(ReductionError::InfeasibleParameters(format!(
                "{num_items} items is not a positive multiple of 3"
            )));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<usize> = (0..num_items).flat_map(|x| [x, x, x]).collect();
        for _ in 0..10_000 {
            slots.shuffle(&mut rng);
            let sets: Vec<[usize; 3]> = slots.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
            if let Ok(inst) = Self::new(num_items, sets) {
                return Ok(inst);
            }
        }
        Err(ReductionError::InfeasibleParameters(
            "no set layout found".to_string(),
        ))
    }

    pub fn num_items(&self) -> usize {
        self.num_items
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Item with an occurrence count other than 3, with that count.
    fn occurrence_violation(&self) -> Option<(usize, usize)> {
        let mut count = vec![0; self.num_items];
        for x in self.sets.iter().flatten() {
            count[*x] += 1;
        }
        count
            .iter()
            .enumerate()
            .find(|&(_, &c)| c != 3)
            .map(|(x, &c)| (x, c))
    }

    /// Backtracking search for a subcollection covering every item once.
    pub fn has_exact_cover(&self) -> bool {
        let masks: Vec<u64> = self
            .sets
            .iter()
            .map(|s| s.iter().fold(0, |m, &x| m | 1 << x))
            .collect();
        let all = if self.num_items == 64 {
            !0
        } else {
            (1u64 << self.num_items) - 1
        };
        fn go(covered: u64, all: u64, masks: &[u64]) -> bool {
            if covered == all {
                return true;
            }
            let item = (!covered).trailing_zeros();
            masks
                .iter()
                .filter(|&&m| m >> item & 1 == 1 && m & covered == 0)
                .any(|&m| go(covered | m, all, masks))
        }
        self.num_items <= 64 && go(0, all, &masks)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct X3cOptions {
    /// Prices are `t_const + 1`.
    pub t_const: Money,
    /// Enforce the exactly-three-occurrences restriction.
    pub require_exactly_three: bool,
}

impl Default for X3cOptions {
    fn default() -> Self {
        Self {
            t_const: DEFAULT_T,
            require_exactly_three: true,
        }
    }
}

/// Number of key bits for `t` components.
pub fn key_bits(t: usize) -> usize {
    if t <= 1 {
        0
    } else {
        (usize::BITS - (t - 1).leading_zeros()) as usize
    }
}

pub fn x3c_or_composition(
    instances: &[X3CInstance],
    options: X3cOptions,
) -> Result<GeneratedInstance, ReductionError> {
    let Some(first) = instances.first() else {
        return Err(ReductionError::EmptyInput);
    };
    if options.t_const < 0 {
        return Err(ReductionError::Malformed(
            "T must be non-negative".to_string(),
        ));
    }
    let n = first.num_items();
    for (index, inst) in instances.iter().enumerate() {
        if inst.num_items() != n {
            return Err(ReductionError::ItemCountMismatch {
                index,
                expected: n,
                got: inst.num_items(),
            });
        }
        if options.require_exactly_three {
            if let Some((item, count)) = inst.occurrence_violation() {
                return Err(ReductionError::NotExactly3Occurrences { index, item, count });
            }
        }
    }

    let t = instances.len();
    let bits = key_bits(t);
    let width = 2 * bits;
    let price = options.t_const + 1;
    let num_books = n * (width + 1);
    let x_book = |i: usize, j: usize| n + width * i + j;

    // offers per shop, shop order as documented above
    let mut shop_books: Vec<Vec<usize>> = (0..width)
        .map(|j| (0..n).map(|i| x_book(i, j)).collect())
        .collect();
    let mut witness_map: Vec<(String, String)> = (0..width)
        .map(|j| {
            (
                format!("sigma({},{})", j / bits.max(1), j % bits.max(1) + 1),
                format!("s{}", j + 1),
            )
        })
        .collect();
    for (h, inst) in instances.iter().enumerate() {
        let key: Vec<usize> = (0..bits).map(|j| (h >> j & 1) * bits + j).collect();
        for (c, set) in inst.sets().iter().enumerate() {
            let mut books: Vec<usize> = Vec::with_capacity(3 * (1 + bits));
            for &i in set {
                books.push(i);
                books.extend(key.iter().map(|&j| x_book(i, j)));
            }
            witness_map.push((
                format!("I{}.C{}", h + 1, c + 1),
                format!("s{}", shop_books.len() + 1),
            ));
            shop_books.push(books);
        }
    }

    let rules = shop_books
        .iter()
        .map(|books| {
            let k = books.len() as Money;
            DiscountRule::new(k, k * price)
        })
        .collect();
    let mut raw = RawInstance::new(num_books, rules);
    for (s, books) in shop_books.iter().enumerate() {
        for &b in books {
            raw.offer(b, s, price);
        }
    }
    let instance = raw
        .validate()
        .map_err(|e| ReductionError::Malformed(e.to_string()))?;

    let mut g = GeneratedInstance::new(instance, options.t_const * num_books as Money);
    witness_map.extend((0..n).map(|i| (format!("item{}", i + 1), format!("b{}", i + 1))));
    g.witness_map = witness_map;
    g.expected_answer = Some(instances.iter().any(X3CInstance::has_exact_cover));
    g.notes.push(format!(
        "key of component h: bit j of h-1, least significant first, over {bits} bits; T = {}",
        options.t_const
    ));
    Ok(g)
}
