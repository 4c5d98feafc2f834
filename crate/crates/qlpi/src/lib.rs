//! Linked partition ideals in exact arithmetic.
//!
//! From a declarative description of a partition class under a
//! difference-at-a-distance theme, this crate builds the transfer system of
//! tail-indexed generating functions, eliminates it to a single q-difference
//! equation, derives coefficient recurrences, expands Andrews-style
//! multi-sums, and certifies equality of the two coefficient sequences —
//! with a brute-force partition enumerator as the independent oracle at
//! every stage.

pub mod data;
pub mod elim;
pub mod partitions;
pub mod transfer;
pub mod qalg;
