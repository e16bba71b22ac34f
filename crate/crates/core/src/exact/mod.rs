//! Exact algorithms beyond exhaustive search.

pub mod fstar;
pub mod matching;
pub mod matching2;
pub mod price_dp;
pub mod subset_dp;
