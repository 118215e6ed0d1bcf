//! MSTD sets built from bidirectional ballot sequences.
//!
//! A set `S ⊆ [0, n − 1]` is MSTD ("more sums than differences") when
//! `|S + S| > |S − S|`. The family constructed in [`construction`] glues two
//! fixed end blocks to a middle set whose membership bits form a
//! bidirectional ballot sequence, so its size is the count `B(n − 22)`
//! computed exactly in [`bbs`].

pub mod asymptotics;
pub mod bbs;
pub mod binomial;
pub mod construction;
pub mod density;
pub mod error;
pub mod intset;
pub mod walks;

pub use error::{Error, Result};
pub use intset::{IntSet, SignedIntSet};
pub use walks::{BigCount, BitSeq, Walk};
