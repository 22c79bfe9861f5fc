//! Reverse / complement action on permutations, patterns and pattern sets.
//!
//! The four operations form the Klein four-group. Inverse is not part of
//! the action: adjacency constraints do not survive it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pattern::{PatternSet, Permutation, VincularPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryOp {
    Identity,
    Reverse,
    Complement,
    ReverseComplement,
}

impl SymmetryOp {
    pub const ALL: [SymmetryOp; 4] = [
        SymmetryOp::Identity,
        SymmetryOp::Reverse,
        SymmetryOp::Complement,
        SymmetryOp::ReverseComplement,
    ];

    fn flags(self) -> (bool, bool) {
        match self {
            SymmetryOp::Identity => (false, false),
            SymmetryOp::Reverse => (true, false),
            SymmetryOp::Complement => (false, true),
            SymmetryOp::ReverseComplement => (true, true),
        }
    }

    fn from_flags(reverse: bool, complement: bool) -> Self {
        match (reverse, complement) {
            (false, false) => SymmetryOp::Identity,
            (true, false) => SymmetryOp::Reverse,
            (false, true) => SymmetryOp::Complement,
            (true, true) => SymmetryOp::ReverseComplement,
        }
    }

    /// `self` after `other`. The group is abelian, so order does not matter.
    pub fn compose(self, other: SymmetryOp) -> SymmetryOp {
        let (r1, c1) = self.flags();
        let (r2, c2) = other.flags();
        SymmetryOp::from_flags(r1 ^ r2, c1 ^ c2)
    }

    pub fn apply_to_permutation(self, perm: &Permutation) -> Permutation {
        Permutation::from_values_unchecked(self.apply_to_word(perm.values()))
    }

    fn apply_to_word(self, values: &[u8]) -> Vec<u8> {
        let (reverse, complement) = self.flags();
        let top = values.len() as u8 + 1;
        let mut out: Vec<u8> = if complement {
            values.iter().map(|v| top - v).collect()
        } else {
            values.to_vec()
        };
        if reverse {
            out.reverse();
        }
        out
    }

    /// Reverse reads letters and dashes right to left; complement maps each
    /// letter `l` to `k + 1 - l` and leaves the dashes where they are.
    pub fn apply_to_pattern(self, pattern: &VincularPattern) -> VincularPattern {
        let letters = self.apply_to_word(pattern.letters());
        let mut blocks = pattern.block_sizes().to_vec();
        if self.flags().0 {
            blocks.reverse();
        }
        VincularPattern::new(letters, blocks).expect("symmetry preserves pattern validity")
    }

    pub fn apply_to_set(self, set: &PatternSet) -> PatternSet {
        set.iter().map(|p| self.apply_to_pattern(p)).collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            SymmetryOp::Identity => "identity",
            SymmetryOp::Reverse => "reverse",
            SymmetryOp::Complement => "complement",
            SymmetryOp::ReverseComplement => "reverse_complement",
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The orbit of a pattern set under the four symmetry operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryClass {
    /// Smallest member, comparing sets as sorted lists of pattern strings.
    pub canonical: PatternSet,
    /// Distinct images, sorted.
    pub members: Vec<PatternSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl SymmetryClass {
    pub fn contains(&self, set: &PatternSet) -> bool {
        self.members.binary_search(set).is_ok()
    }
}

pub fn symmetry_class(set: &PatternSet) -> SymmetryClass {
    let mut members: Vec<PatternSet> = SymmetryOp::ALL.iter().map(|op| op.apply_to_set(set)).collect();
    members.sort();
    members.dedup();
    SymmetryClass {
        canonical: members[0].clone(),
        members,
        name: None,
    }
}

/// Canonical representative only.
pub fn canonical(set: &PatternSet) -> PatternSet {
    SymmetryOp::ALL
        .iter()
        .map(|op| op.apply_to_set(set))
        .min()
        .expect("four images")
}
