//! Exact closed forms and inequality predicates.

pub mod binom;
pub mod bounds;
pub mod closed;

pub use binom::binom;
pub use bounds::{check_theorem, BoundVerdict, Relation, Theorem};
