//! Exact constructions, measurements and brute-force verification for
//! intersecting uniform set families.
//!
//! Elements are 0-indexed in memory. Family JSON files and the command line
//! use 1-indexed elements; conversion happens only in [`io`] and
//! [`Family::from_one_based`] / [`Family::to_one_based`].

pub mod canon;
pub mod codegree;
pub mod constructions;
pub mod error;
pub mod family;
pub mod formulas;
pub mod io;
pub mod kset;
pub mod lex;
pub mod rational;
pub mod search;
pub mod sweep;

pub use canon::{canonical_form, is_isomorphic};
pub use error::{Error, Result};
pub use family::{cross_intersecting, Family, TraceSpec};
pub use formulas::{BoundVerdict, Theorem};
pub use kset::{KSet, MAX_N};
pub use rational::{BigCount, Rational};
pub use search::{SearchOptions, SearchResult};
