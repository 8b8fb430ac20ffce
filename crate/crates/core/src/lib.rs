//! Combinatorics of finite function classes: shattering-based dimensions,
//! net construction and exact covering numbers, the k-Natarajan dimension
//! with its cardinality bound, reductions from biclique-partitioned graphs,
//! and pattern complexity of words.
//!
//! Every exact search in the crate is budgeted and every bound is evaluated
//! in exact integer arithmetic; brute-force oracles used in the test suites
//! live with the tests, not here.

pub mod binom;
pub mod bound;
pub mod class;
pub mod error;
pub mod graph;
pub mod io;
pub mod natarajan;
pub mod net;
pub mod sample;
pub mod word;

pub use class::{PartialClass, PartialFunction, Symbol, TotalClass, TotalFunction};
pub use error::{Error, Result};
