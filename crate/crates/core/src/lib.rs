//! Solvers for buying every book of a list from shops that each grant a
//! fixed discount once the amount spent there reaches a threshold.
//!
//! [`model`] defines instances and the cost function, [`oracle`] enumerates
//! assignments exhaustively, [`exact`] holds the faster exact algorithms,
//! [`approx`] the greedy discount maximizer and [`reductions`] generators of
//! instances with known answers. [`io`] reads and writes the text formats
//! used by the `clevershop` binary.

pub mod approx;
pub mod error;
pub mod exact;
pub mod io;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod solve;

pub use error::SolverError;
pub use model::{
    discount_earned, evaluate_assignment, Assignment, DiscountRule, Instance, Money, Offer,
    RawInstance, SolveResult, ValidationError,
};
