use thiserror::Error;

/// Failures shared by the solvers: unmet preconditions and exceeded caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search space of {0} assignments exceeds the configured cap")]
    SearchSpaceTooLarge(u128),
    #[error("{0} books exceed the configured cap")]
    TooManyBooks(usize),
    #[error("{0} shops exceed the configured cap")]
    TooManyShops(usize),
    #[error("more than {0} reachable spend states")]
    StateSpaceTooLarge(usize),
    #[error("book b{} has differing prices across shops", .0 + 1)]
    NotFixedPrice(usize),
    #[error("offer of book b{} at shop s{} is not priced 1", .book + 1, .shop + 1)]
    NotUnitPrice { book: usize, shop: usize },
    #[error("offer of book b{} at shop s{} differs from the common price", .book + 1, .shop + 1)]
    NonUniformPrice { book: usize, shop: usize },
    #[error("shop s{} sells more than two books", .0 + 1)]
    DegreeTooHigh(usize),
}

impl SolverError {
    /// True for cap overruns, false for unmet preconditions.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            SolverError::SearchSpaceTooLarge(_)
                | SolverError::TooManyBooks(_)
                | SolverError::TooManyShops(_)
                | SolverError::StateSpaceTooLarge(_)
        )
    }
}
