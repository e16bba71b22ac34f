//! Instances, assignments and the threshold-discount cost model.
//!
//! Every money value (price, discount, threshold, budget) is an integer
//! number of money units. Books and shops are addressed by dense 0-based
//! indices; the 1-based ids used in files and messages are a presentation
//! concern handled by [`crate::io`].

use std::fmt;

use thiserror::Error;

/// Integer money units. Costs can be negative when discounts exceed spend.
pub type Money = i64;

/// Discount `discount` is granted by a shop iff the pre-discount spend there
/// reaches `threshold` (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscountRule {
    pub discount: Money,
    pub threshold: Money,
}

impl DiscountRule {
    pub const fn new(discount: Money, threshold: Money) -> Self {
        Self {
            discount,
            threshold,
        }
    }

    /// Discount earned for a given pre-discount spend.
    #[inline]
    pub fn earned(&self, spend: Money) -> Money {
        discount_earned(*self, spend)
    }
}

/// Step function of the threshold rule: `rule.discount` iff `spend >= rule.threshold`.
#[inline]
pub fn discount_earned(rule: DiscountRule, spend: Money) -> Money {
    if spend >= rule.threshold {
        rule.discount
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Offer {
    pub book: usize,
    pub shop: usize,
    pub price: Money,
}

impl Offer {
    pub const fn new(book: usize, shop: usize, price: Money) -> Self {
        Self { book, shop, price }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Book,
    Shop,
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexKind::Book => f.write_str("book"),
            IndexKind::Shop => f.write_str("shop"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("book b{} has no offer", .0 + 1)]
    BookUncovered(usize),
    #[error("duplicate offer for book b{} at shop s{}", .book + 1, .shop + 1)]
    DuplicateOffer { book: usize, shop: usize },
    #[error("negative value in {0}")]
    NegativeValue(String),
    #[error("{kind} index {} out of range", .index + 1)]
    DanglingIndex { kind: IndexKind, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvaluationError {
    #[error("book b{} is not offered by shop s{}", .book + 1, .shop + 1)]
    OfferMissing { book: usize, shop: usize },
    #[error("assignment covers {got} books, instance has {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Unvalidated instance data, as produced by parsers and generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub num_books: usize,
    pub book_names: Vec<Option<String>>,
    pub shops: Vec<DiscountRule>,
    pub offers: Vec<Offer>,
    pub budget: Option<Money>,
}

impl RawInstance {
    pub fn new(num_books: usize, shops: Vec<DiscountRule>) -> Self {
        Self {
            num_books,
            book_names: Vec::new(),
            shops,
            offers: Vec::new(),
            budget: None,
        }
    }

    pub fn offer(&mut self, book: usize, shop: usize, price: Money) -> &mut Self {
        self.offers.push(Offer::new(book, shop, price));
        self
    }

    pub fn with_budget(mut self, budget: Money) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn validate(self) -> Result<Instance, ValidationError> {
        validate_instance(self)
    }
}

/// A validated shopping instance.
///
/// Offers are stored twice: per book sorted by shop, and per shop sorted by
/// book. Both views are immutable after validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    book_names: Vec<Option<String>>,
    shops: Vec<DiscountRule>,
    by_book: Vec<Vec<(usize, Money)>>,
    by_shop: Vec<Vec<(usize, Money)>>,
    budget: Option<Money>,
}

/// Checks every instance invariant and builds the indexed [`Instance`].
///
/// Violations are reported in a fixed order: dangling indices, negative
/// values, duplicate offers, uncovered books.
pub fn validate_instance(raw: RawInstance) -> Result<Instance, ValidationError> {
    let n = raw.num_books;
    let m = raw.shops.len();

    for offer in &raw.offers {
        if offer.book >= n {
            return Err(ValidationError::DanglingIndex {
                kind: IndexKind::Book,
                index: offer.book,
            });
        }
        if offer.shop >= m {
            return Err(ValidationError::DanglingIndex {
                kind: IndexKind::Shop,
                index: offer.shop,
            });
        }
    }
    if raw.book_names.len() > n {
        return Err(ValidationError::DanglingIndex {
            kind: IndexKind::Book,
            index: n,
        });
    }

    for (s, rule) in raw.shops.iter().enumerate() {
        if rule.discount < 0 {
            return Err(ValidationError::NegativeValue(format!(
                "discount of shop s{}",
                s + 1
            )));
        }
        if rule.threshold < 0 {
            return Err(ValidationError::NegativeValue(format!(
                "threshold of shop s{}",
                s + 1
            )));
        }
    }
    for offer in &raw.offers {
        if offer.price < 0 {
            return Err(ValidationError::NegativeValue(format!(
                "price of book b{} at shop s{}",
                offer.book + 1,
                offer.shop + 1
            )));
        }
    }
    if let Some(k) = raw.budget {
        if k < 0 {
            return Err(ValidationError::NegativeValue("budget".into()));
        }
    }

    let mut by_book: Vec<Vec<(usize, Money)>> = vec![Vec::new(); n];
    for offer in &raw.offers {
        let list = &mut by_book[offer.book];
        match list.binary_search_by_key(&offer.shop, |&(s, _)| s) {
            Ok(_) => {
                return Err(ValidationError::DuplicateOffer {
                    book: offer.book,
                    shop: offer.shop,
                })
            }
            Err(pos) => list.insert(pos, (offer.shop, offer.price)),
        }
    }
    if let Some(b) = by_book.iter().position(Vec::is_empty) {
        return Err(ValidationError::BookUncovered(b));
    }

    let mut by_shop: Vec<Vec<(usize, Money)>> = vec![Vec::new(); m];
    for (b, list) in by_book.iter().enumerate() {
        for &(s, price) in list {
            by_shop[s].push((b, price));
        }
    }

    let mut book_names = raw.book_names;
    book_names.resize(n, None);

    Ok(Instance {
        book_names,
        shops: raw.shops,
        by_book,
        by_shop,
        budget: raw.budget,
    })
}

impl Instance {
    pub fn num_books(&self) -> usize {
        self.by_book.len()
    }

    pub fn num_shops(&self) -> usize {
        self.shops.len()
    }

    pub fn num_offers(&self) -> usize {
        self.by_book.iter().map(Vec::len).sum()
    }

    pub fn budget(&self) -> Option<Money> {
        self.budget
    }

    pub fn with_budget(mut self, budget: Option<Money>) -> Self {
        self.budget = budget;
        self
    }

    pub fn book_name(&self, book: usize) -> Option<&str> {
        self.book_names.get(book).and_then(|n| n.as_deref())
    }

    pub fn rule(&self, shop: usize) -> DiscountRule {
        self.shops[shop]
    }

    pub fn rules(&self) -> &[DiscountRule] {
        &self.shops
    }

    /// Offers of `book` as `(shop, price)`, sorted by shop.
    pub fn offers_of_book(&self, book: usize) -> &[(usize, Money)] {
        &self.by_book[book]
    }

    /// Offers of `shop` as `(book, price)`, sorted by book.
    pub fn offers_of_shop(&self, shop: usize) -> &[(usize, Money)] {
        &self.by_shop[shop]
    }

    pub fn price(&self, book: usize, shop: usize) -> Option<Money> {
        let list = self.by_book.get(book)?;
        list.binary_search_by_key(&shop, |&(s, _)| s)
            .ok()
            .map(|i| list[i].1)
    }

    /// All offers sorted by (book, shop).
    pub fn offers(&self) -> impl Iterator<Item = Offer> + '_ {
        self.by_book
            .iter()
            .enumerate()
            .flat_map(|(b, list)| list.iter().map(move |&(s, price)| Offer::new(b, s, price)))
    }

    /// Sum of every offer price.
    pub fn total_offer_value(&self) -> Money {
        self.offers().map(|o| o.price).sum()
    }

    /// Cheapest price of `book` over all shops selling it.
    pub fn min_price(&self, book: usize) -> Result<Money, ValidationError> {
        min_price(self, book)
    }

    /// Lowest-index shop among those selling `book` at its minimum price.
    pub fn cheapest_shop(&self, book: usize) -> usize {
        let list = &self.by_book[book];
        let mut best = list[0];
        for &offer in &list[1..] {
            if offer.1 < best.1 {
                best = offer;
            }
        }
        best.0
    }

    /// `Some(w_b)` for every book if each book has one price across its shops.
    pub fn fixed_prices(&self) -> Result<Vec<Money>, (usize, usize)> {
        self.by_book
            .iter()
            .enumerate()
            .map(|(b, list)| {
                let p = list[0].1;
                match list.iter().find(|&&(_, q)| q != p) {
                    Some(&(s, _)) => Err((b, s)),
                    None => Ok(p),
                }
            })
            .collect()
    }

    /// Back to unvalidated form, offers sorted by (book, shop).
    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            num_books: self.num_books(),
            book_names: self.book_names.clone(),
            shops: self.shops.clone(),
            offers: self.offers().collect(),
            budget: self.budget,
        }
    }
}

pub fn min_price(instance: &Instance, book: usize) -> Result<Money, ValidationError> {
    let list = instance
        .by_book
        .get(book)
        .ok_or(ValidationError::DanglingIndex {
            kind: IndexKind::Book,
            index: book,
        })?;
    Ok(list.iter().map(|&(_, p)| p).min().expect("validated"))
}

/// A shop choice for every book.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    choice: Vec<usize>,
}

impl Assignment {
    pub fn new(choice: Vec<usize>) -> Self {
        Self { choice }
    }

    pub fn shop_of(&self, book: usize) -> usize {
        self.choice[book]
    }

    pub fn choices(&self) -> &[usize] {
        &self.choice
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    /// Assignment buying every book at its cheapest shop.
    pub fn cheapest(instance: &Instance) -> Self {
        Self::new(
            (0..instance.num_books())
                .map(|b| instance.cheapest_shop(b))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub assignment: Assignment,
    pub total_cost: Money,
    pub total_discount: Money,
    /// Pre-discount spend per shop.
    pub per_shop_spend: Vec<Money>,
}

impl SolveResult {
    pub fn gross(&self) -> Money {
        self.per_shop_spend.iter().sum()
    }

    /// Shops whose threshold is met by the purchase.
    pub fn claimed_shops<'a>(&'a self, instance: &'a Instance) -> impl Iterator<Item = usize> + 'a {
        self.per_shop_spend
            .iter()
            .enumerate()
            .filter(move |&(s, &spend)| spend >= instance.rule(s).threshold)
            .map(|(s, _)| s)
    }
}

/// Cost of buying each book at its assigned shop, discounts included.
pub fn evaluate_assignment(
    instance: &Instance,
    assignment: &Assignment,
) -> Result<SolveResult, EvaluationError> {
    if assignment.len() != instance.num_books() {
        return Err(EvaluationError::LengthMismatch {
            expected: instance.num_books(),
            got: assignment.len(),
        });
    }
    let mut spend = vec![0; instance.num_shops()];
    for (book, &shop) in assignment.choices().iter().enumerate() {
        let price = instance
            .price(book, shop)
            .ok_or(EvaluationError::OfferMissing { book, shop })?;
        spend[shop] += price;
    }
    Ok(result_from_spend(instance, assignment.clone(), spend))
}

pub(crate) fn result_from_spend(
    instance: &Instance,
    assignment: Assignment,
    per_shop_spend: Vec<Money>,
) -> SolveResult {
    let total_discount: Money = per_shop_spend
        .iter()
        .zip(instance.rules())
        .map(|(&spend, &rule)| discount_earned(rule, spend))
        .sum();
    let gross: Money = per_shop_spend.iter().sum();
    SolveResult {
        assignment,
        total_cost: gross - total_discount,
        total_discount,
        per_shop_spend,
    }
}
