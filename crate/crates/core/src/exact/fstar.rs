//! Equal-price solver parameterized by the number of shops.
//!
//! With every price equal to `c`, claiming the discounts of a shop set `S'`
//! is possible iff each `s ∈ S'` can be given `⌈t_s / c⌉` distinct books.
//! That is a degree-constrained subgraph question (books capacity 1, shops
//! capacity `f(s)`), answered here by unit-capacity max-flow. The optimum is
//! `c·n − max d_{S'}` over feasible `S'`.

use crate::error::SolverError;
use crate::model::{evaluate_assignment, Assignment, Instance, Money, SolveResult};

pub const DEFAULT_MAX_SHOPS: usize = 20;

/// Book/shop availability edges of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvailabilityGraph {
    pub num_books: usize,
    pub num_shops: usize,
    /// `(book, shop)` pairs.
    pub edges: Vec<(usize, usize)>,
}

impl AvailabilityGraph {
    pub fn of(instance: &Instance) -> Self {
        Self {
            num_books: instance.num_books(),
            num_shops: instance.num_shops(),
            edges: instance.offers().map(|o| (o.book, o.shop)).collect(),
        }
    }
}

/// Degree capacities: every book 1, shop `s` at most `shop[s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDegreeBound {
    pub shop: Vec<usize>,
}

impl StarDegreeBound {
    /// `f(s) = t_s` for `s ∈ chosen`, 0 elsewhere.
    pub fn for_shops(thresholds: &[usize], chosen: &[usize]) -> Self {
        let mut shop = vec![0; thresholds.len()];
        for &s in chosen {
            shop[s] = thresholds[s];
        }
        Self { shop }
    }
}

/// Maximum-cardinality subgraph with book degree ≤ 1 and shop degree ≤ `f(s)`.
///
/// Every component of such a subgraph is a star centred on a shop. Returned
/// edges are sorted by `(book, shop)`.
pub fn max_fstar_subgraph(
    graph: &AvailabilityGraph,
    bound: &StarDegreeBound,
) -> Vec<(usize, usize)> {
    let n = graph.num_books;
    let m = graph.num_shops;
    let source = 0;
    let sink = n + m + 1;
    let mut flow = Dinic::new(n + m + 2);
    for b in 0..n {
        flow.add_edge(source, 1 + b, 1);
    }
    let mut book_edges = Vec::with_capacity(graph.edges.len());
    for &(b, s) in &graph.edges {
        if bound.shop[s] > 0 {
            book_edges.push((flow.add_edge(1 + b, 1 + n + s, 1), b, s));
        }
    }
    for (s, &cap) in bound.shop.iter().enumerate() {
        if cap > 0 {
            flow.add_edge(1 + n + s, sink, cap as i64);
        }
    }
    flow.max_flow(source, sink);
    let mut chosen: Vec<(usize, usize)> = book_edges
        .into_iter()
        .filter(|&(e, _, _)| flow.flow_on(e) > 0)
        .map(|(_, b, s)| (b, s))
        .collect();
    chosen.sort_unstable();
    chosen
}

#[derive(Debug, Clone)]
pub struct FstarOutcome {
    pub result: SolveResult,
    /// Shops whose discount the solution is built to claim, ascending.
    pub claimed: Vec<usize>,
    /// The star subgraph certifying `claimed`.
    pub subgraph: Vec<(usize, usize)>,
}

/// Unit-price solver: enumerates every shop subset.
pub fn fstar_unit_price_min_cost(
    instance: &Instance,
    max_shops: usize,
) -> Result<SolveResult, SolverError> {
    fstar_unit_price_solve(instance, max_shops).map(|o| o.result)
}

pub fn fstar_unit_price_solve(
    instance: &Instance,
    max_shops: usize,
) -> Result<FstarOutcome, SolverError> {
    if let Some(o) = instance.offers().find(|o| o.price != 1) {
        return Err(SolverError::NotUnitPrice {
            book: o.book,
            shop: o.shop,
        });
    }
    enumerate_claims(instance, 1, max_shops)
}

/// Same enumeration for any common price.
pub fn fstar_uniform_price_solve(
    instance: &Instance,
    max_shops: usize,
) -> Result<FstarOutcome, SolverError> {
    let price = uniform_price(instance)?;
    enumerate_claims(instance, price, max_shops)
}

/// Branch-and-bound over claimable shop sets, for instances with a common
/// price and too many shops to enumerate. Feasibility is monotone under
/// removal, so only feasible sets are extended, and a branch is cut once its
/// remaining discounts cannot beat the incumbent. Exact; no shop cap.
pub fn fstar_search_solve(instance: &Instance) -> Result<FstarOutcome, SolverError> {
    let price = uniform_price(instance)?;
    let ctx = ClaimContext::new(instance, price);
    let m = instance.num_shops();

    let mut base: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    for s in 0..m {
        match ctx.need[s] {
            Some(0) => base.push(s),
            Some(_) if instance.rule(s).discount > 0 => order.push(s),
            _ => {}
        }
    }
    order.sort_by_key(|&s| (std::cmp::Reverse(instance.rule(s).discount), s));
    let mut suffix = vec![0 as Money; order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix[i] = suffix[i + 1] + instance.rule(order[i]).discount;
    }

    struct Search<'a> {
        ctx: &'a ClaimContext<'a>,
        order: Vec<usize>,
        suffix: Vec<Money>,
        best: Money,
        best_set: Vec<usize>,
        current: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, pos: usize, discount: Money, need: usize) {
            if discount > self.best {
                self.best = discount;
                self.best_set = self.current.clone();
            }
            if pos == self.order.len() || discount + self.suffix[pos] <= self.best {
                return;
            }
            let s = self.order[pos];
            let extra = self.ctx.need[s].expect("claimable");
            if need + extra <= self.ctx.instance.num_books() {
                self.current.push(s);
                if self.ctx.feasible(&self.current) {
                    let d = self.ctx.instance.rule(s).discount;
                    self.go(pos + 1, discount + d, need + extra);
                }
                self.current.pop();
            }
            self.go(pos + 1, discount, need);
        }
    }

    let base_discount: Money = base.iter().map(|&s| instance.rule(s).discount).sum();
    let mut search = Search {
        ctx: &ctx,
        order,
        suffix,
        best: 0,
        best_set: Vec::new(),
        current: Vec::new(),
    };
    search.go(0, 0, 0);
    let mut claimed = base;
    claimed.extend(search.best_set);
    claimed.sort_unstable();
    let outcome = ctx.build(&claimed);
    debug_assert_eq!(
        outcome.result.total_cost,
        price * instance.num_books() as Money - base_discount - search.best
    );
    Ok(outcome)
}

fn uniform_price(instance: &Instance) -> Result<Money, SolverError> {
    let mut offers = instance.offers();
    let Some(first) = offers.next() else {
        return Ok(1);
    };
    match offers.find(|o| o.price != first.price) {
        Some(o) => Err(SolverError::NonUniformPrice {
            book: o.book,
            shop: o.shop,
        }),
        None => Ok(first.price),
    }
}

struct ClaimContext<'a> {
    instance: &'a Instance,
    graph: AvailabilityGraph,
    /// Books shop `s` must receive to reach its threshold; `None` if it never can.
    need: Vec<Option<usize>>,
}

impl<'a> ClaimContext<'a> {
    fn new(instance: &'a Instance, price: Money) -> Self {
        let need = (0..instance.num_shops())
            .map(|s| {
                let t = instance.rule(s).threshold;
                let books = if t == 0 {
                    0
                } else if price == 0 {
                    return None;
                } else {
                    ((t + price - 1) / price) as usize
                };
                (books <= instance.offers_of_shop(s).len()).then_some(books)
            })
            .collect();
        Self {
            instance,
            graph: AvailabilityGraph::of(instance),
            need,
        }
    }

    fn bound(&self, chosen: &[usize]) -> StarDegreeBound {
        let mut shop = vec![0; self.instance.num_shops()];
        for &s in chosen {
            shop[s] = self.need[s].expect("claimable");
        }
        StarDegreeBound { shop }
    }

    fn feasible(&self, chosen: &[usize]) -> bool {
        let target: usize = chosen
            .iter()
            .map(|&s| self.need[s].expect("claimable"))
            .sum();
        max_fstar_subgraph(&self.graph, &self.bound(chosen)).len() == target
    }

    /// Books in the star go to its centre, the rest to their lowest-index shop.
    fn build(&self, claimed: &[usize]) -> FstarOutcome {
        let subgraph = max_fstar_subgraph(&self.graph, &self.bound(claimed));
        let mut choice: Vec<usize> = (0..self.instance.num_books())
            .map(|b| self.instance.offers_of_book(b)[0].0)
            .collect();
        for &(b, s) in &subgraph {
            choice[b] = s;
        }
        let result = evaluate_assignment(self.instance, &Assignment::new(choice))
            .expect("built from offers");
        FstarOutcome {
            result,
            claimed: claimed.to_vec(),
            subgraph,
        }
    }
}

/// True iff the sorted index list of `a` precedes that of `b`.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let x = diff.trailing_zeros();
    let above = if x >= 63 { 0 } else { !0u64 << (x + 1) };
    if a >> x & 1 == 1 {
        // a has x where b has a larger element, or b ended
        b & above != 0
    } else {
        a & above == 0
    }
}

fn enumerate_claims(
    instance: &Instance,
    price: Money,
    max_shops: usize,
) -> Result<FstarOutcome, SolverError> {
    let m = instance.num_shops();
    if m > max_shops || m > 63 {
        return Err(SolverError::TooManyShops(m));
    }
    let n = instance.num_books();
    let ctx = ClaimContext::new(instance, price);
    let usable: u64 = (0..m)
        .filter(|&s| ctx.need[s].is_some())
        .fold(0, |acc, s| acc | 1 << s);

    let gross = price * n as Money;
    let mut best_cost = gross;
    let mut best_mask = 0u64;
    let mut chosen = Vec::with_capacity(m);
    for mask in 0..(1u64 << m) {
        if mask & !usable != 0 {
            continue;
        }
        chosen.clear();
        chosen.extend((0..m).filter(|&s| mask >> s & 1 == 1));
        let discount: Money = chosen.iter().map(|&s| instance.rule(s).discount).sum();
        let cost = gross - discount;
        if cost > best_cost || (cost == best_cost && !lex_less(mask, best_mask)) {
            continue;
        }
        let need: usize = chosen.iter().map(|&s| ctx.need[s].expect("usable")).sum();
        if need > n || !ctx.feasible(&chosen) {
            continue;
        }
        best_cost = cost;
        best_mask = mask;
    }

    let claimed: Vec<usize> = (0..m).filter(|&s| best_mask >> s & 1 == 1).collect();
    let outcome = ctx.build(&claimed);
    debug_assert_eq!(outcome.result.total_cost, best_cost);
    Ok(outcome)
}

/// Dinic max-flow on small integer networks.
struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Self {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    /// Returns the id of the forward arc.
    fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn flow_on(&self, id: usize) -> i64 {
        self.cap[id ^ 1]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: i64) -> i64 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.head[u].len() {
            let e = self.head[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DiscountRule, RawInstance};
    use crate::oracle::{brute_force_min_cost, DEFAULT_MAX_ASSIGNMENTS};
    use crate::reductions::perfect_code::{code_graph_example, from_perfect_code};
    use crate::reductions::random::{random_instance, RandomParams};

    /// Largest degree-feasible edge subset, by enumerating all subsets.
    fn brute_force(graph: &AvailabilityGraph, bound: &StarDegreeBound) -> usize {
        let e = graph.edges.len();
        let mut best = 0;
        for mask in 0u32..(1 << e) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let mut book_deg = vec![0; graph.num_books];
            let mut shop_deg = vec![0; graph.num_shops];
            for (i, &(b, s)) in graph.edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    book_deg[b] += 1;
                    shop_deg[s] += 1;
                }
            }
            if book_deg.iter().all(|&d| d <= 1)
                && shop_deg.iter().zip(&bound.shop).all(|(d, f)| d <= f)
            {
                best = size;
            }
        }
        best
    }

    #[test]
    fn star_centred_on_shop() {
        let g = AvailabilityGraph {
            num_books: 3,
            num_shops: 1,
            edges: vec![(0, 0), (1, 0), (2, 0)],
        };
        let sub = max_fstar_subgraph(&g, &StarDegreeBound { shop: vec![2] });
        assert_eq!(sub.len(), 2);
        assert!(max_fstar_subgraph(&g, &StarDegreeBound { shop: vec![0] }).is_empty());
    }

    #[test]
    fn bound_for_shops() {
        let b = StarDegreeBound::for_shops(&[3, 1, 2], &[0, 2]);
        assert_eq!(b.shop, vec![3, 0, 2]);
    }

    #[test]
    fn lexicographic_order_on_sets() {
        assert!(lex_less(0b001, 0b011)); // {0} < {0,1}
        assert!(!lex_less(0b011, 0b001));
        assert!(lex_less(0b010, 0b100)); // {1} < {2}
        assert!(lex_less(0b011, 0b010)); // {0,1} < {1}
        assert!(lex_less(0b101, 0b110)); // {0,2} < {1,2}
        assert!(lex_less(0, 0b1)); // {} < {0}
        assert!(!lex_less(0b1, 0b1));
    }

    #[test]
    fn code_graph_costs_three() {
        let g = from_perfect_code(&code_graph_example(), 2).unwrap();
        let out = fstar_unit_price_solve(&g.instance, DEFAULT_MAX_SHOPS).unwrap();
        assert_eq!(out.result.total_cost, 3);
        assert_eq!(out.claimed, vec![0, 4]);
        for &s in &out.claimed {
            let deg = out.subgraph.iter().filter(|&&(_, x)| x == s).count();
            assert_eq!(deg as i64, g.instance.rule(s).threshold);
        }
        let searched = fstar_search_solve(&g.instance).unwrap();
        assert_eq!(searched.result.total_cost, 3);
    }

    #[test]
    fn no_discounts_costs_n() {
        let mut raw = RawInstance::new(3, vec![DiscountRule::new(0, 1); 2]);
        raw.offer(0, 0, 1).offer(1, 0, 1).offer(2, 1, 1);
        let out = fstar_unit_price_solve(&raw.validate().unwrap(), DEFAULT_MAX_SHOPS).unwrap();
        assert_eq!(out.result.total_cost, 3);
        assert!(out.claimed.is_empty());
    }

    #[test]
    fn rejects_non_unit_prices_and_shop_cap() {
        let mut raw = RawInstance::new(1, vec![DiscountRule::new(1, 1); 2]);
        raw.offer(0, 0, 1).offer(0, 1, 2);
        let inst = raw.validate().unwrap();
        assert!(matches!(
            fstar_unit_price_min_cost(&inst, DEFAULT_MAX_SHOPS),
            Err(SolverError::NotUnitPrice { book: 0, shop: 1 })
        ));
        assert!(matches!(
            fstar_search_solve(&inst),
            Err(SolverError::NonUniformPrice { book: 0, shop: 1 })
        ));
        let mut raw = RawInstance::new(1, vec![DiscountRule::new(1, 1); 3]);
        raw.offer(0, 0, 1);
        assert!(matches!(
            fstar_unit_price_min_cost(&raw.validate().unwrap(), 2),
            Err(SolverError::TooManyShops(3))
        ));
    }

    #[test]
    fn uniform_price_scales_thresholds() {
        // price 5, threshold 11 -> three books needed
        let mut raw = RawInstance::new(4, vec![DiscountRule::new(4, 11), DiscountRule::new(1, 5)]);
        for b in 0..4 {
            raw.offer(b, 0, 5);
        }
        raw.offer(3, 1, 5);
        let inst = raw.validate().unwrap();
        let out = fstar_uniform_price_solve(&inst, DEFAULT_MAX_SHOPS).unwrap();
        let oracle = brute_force_min_cost(&inst, 1000).unwrap();
        assert_eq!(out.result.total_cost, oracle.total_cost);
        assert_eq!(out.result.total_cost, 20 - 5);
    }

    #[test]
    fn random_unit_price_sweep() {
        for seed in 0..30 {
            let params = RandomParams {
                n: 1 + (seed as usize % 8),
                m: 1 + (seed as usize % 6),
                unit_prices: true,
                ..RandomParams::default()
            };
            let inst = random_instance(&params, seed).unwrap();
            let oracle = brute_force_min_cost(&inst, DEFAULT_MAX_ASSIGNMENTS).unwrap();
            let out = fstar_unit_price_solve(&inst, DEFAULT_MAX_SHOPS).unwrap();
            assert_eq!(out.result.total_cost, oracle.total_cost, "seed {seed}");
            assert_eq!(
                fstar_search_solve(&inst).unwrap().result.total_cost,
                oracle.total_cost
            );
        }
    }

    #[test]
    fn random_subgraphs_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let nb = rng.random_range(1..=6);
            let ns = rng.random_range(1..=6);
            let mut edges = Vec::new();
            for b in 0..nb {
                for s in 0..ns {
                    if edges.len() < 14 && rng.random_bool(0.4) {
                        edges.push((b, s));
                    }
                }
            }
            let g = AvailabilityGraph {
                num_books: nb,
                num_shops: ns,
                edges,
            };
            let bound = StarDegreeBound {
                shop: (0..ns).map(|_| rng.random_range(0..=3)).collect(),
            };
            assert_eq!(
                max_fstar_subgraph(&g, &bound).len(),
                brute_force(&g, &bound)
            );
        }
    }
}
