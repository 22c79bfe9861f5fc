//! Vincular (generalized) pattern avoidance for permutations.
//!
//! The crate is organised bottom-up:
//!
//! - [`pattern`]: permutations, dashed patterns, containment and occurrences.
//! - [`symmetry`]: the reverse/complement action and symmetry classes.
//! - [`enumerate`]: pruned depth-first counting and listing of avoiders,
//!   plus a naive `n!` filter used as an oracle.
//! - [`sequences`]: the closed-form families seen in avoidance tables and a
//!   matcher that identifies which one a counting sequence follows.
//! - [`lemmas`]: exhaustive checks of closure, containment and structure
//!   statements up to a bounded length.
//! - [`tables`] and [`classify`]: embedded table data, replay of every
//!   table row, and classification of all `k`-subsets of the twelve
//!   length-three patterns.
//! - [`report`] and [`cli`]: run configuration, JSON/CSV/text reports and the
//!   command-line front end.

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod lemmas;
pub mod pattern;
pub mod report;
pub mod sequences;
pub mod symmetry;
pub mod tables;

pub use enumerate::{
    count_avoiders, count_avoiders_naive, counting_sequence, list_avoiders, CountingSequence,
};
pub use error::{Error, PatternParseError, Result};
pub use pattern::{avoids_all, contains, occurrences, standardize, PatternSet, Permutation, VincularPattern};
pub use sequences::{family_value, match_sequence, Identification, SequenceFamily};
pub use symmetry::{symmetry_class, SymmetryClass, SymmetryOp};
