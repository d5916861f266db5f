//! Analysis of k-automatic and k-regular sequences.
//!
//! Sequences are generated from automata, morphisms and arithmetic
//! definitions ([`sequences`]), their unbordered factors are counted by brute
//! force ([`factors`]), k-regular sequences are evaluated from exact linear
//! representations ([`linrep`]), and linear recurrences among kernel
//! subsequences are verified or discovered mechanically ([`relations`]).
//! [`theorems`] bundles the executable checks built on top.

pub mod cli;
pub mod error;
pub mod factors;
pub mod linrep;
pub mod relations;
pub mod sequences;
pub mod theorems;
pub mod words;

pub use error::{Error, Result};
