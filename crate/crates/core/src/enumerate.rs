//! Counting and listing `S_n(P)`.
//!
//! The search builds permutations left to right over unused values. After
//! each append only occurrences that end on the new rightmost entry need
//! checking: anything earlier was already ruled out, and an occurrence in a
//! prefix survives any extension, so the branch is cut at the first hit.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{self, avoids_all, PatternSet, Permutation, VincularPattern, MAX_PERMUTATION_LEN};

pub const MAX_LIST_LEN: usize = 12;
pub const MAX_NAIVE_LEN: usize = 8;
pub const MAX_SEQUENCE_LEN: usize = 12;

/// Below this length the search runs on the calling thread.
const PARALLEL_FROM: usize = 8;

/// `|S_n(P)|` for `n = 1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingSequence {
    pub pattern_set: PatternSet,
    /// `counts[i]` is `|S_{i+1}(P)|`.
    pub counts: Vec<u64>,
}

impl CountingSequence {
    pub fn max_n(&self) -> usize {
        self.counts.len()
    }

    /// `|S_n(P)|`, 1-based.
    pub fn at(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.counts.get(i).copied())
    }

    /// First length with no avoiders, if any.
    pub fn first_zero(&self) -> Option<usize> {
        self.counts.iter().position(|&c| c == 0).map(|i| i + 1)
    }
}

/// Occurrence test specialised to the last position of a growing word.
#[derive(Debug, Clone)]
enum Check {
    /// `x-yz`: `y`, `z` are the last two entries, `x` anywhere before.
    GapThenPair { lt_xy: bool, lt_xz: bool, lt_yz: bool },
    /// `xy-z`: `z` is the last entry, `xy` adjacent anywhere before.
    PairThenGap { lt_xy: bool, lt_xz: bool, lt_yz: bool },
    General(VincularPattern),
}

impl Check {
    fn compile(pattern: &VincularPattern) -> Check {
        let l = pattern.letters();
        if pattern.is_length_three_split() {
            let (lt_xy, lt_xz, lt_yz) = (l[0] < l[1], l[0] < l[2], l[1] < l[2]);
            if pattern.block_sizes() == [1, 2] {
                return Check::GapThenPair { lt_xy, lt_xz, lt_yz };
            }
            return Check::PairThenGap { lt_xy, lt_xz, lt_yz };
        }
        Check::General(pattern.clone())
    }

    #[inline]
    fn hits_last(&self, word: &[u8]) -> bool {
        let m = word.len();
        match *self {
            Check::GapThenPair { lt_xy, lt_xz, lt_yz } => {
                if m < 3 {
                    return false;
                }
                let (y, z) = (word[m - 2], word[m - 1]);
                if (y < z) != lt_yz {
                    return false;
                }
                word[..m - 2].iter().any(|&x| (x < y) == lt_xy && (x < z) == lt_xz)
            }
            Check::PairThenGap { lt_xy, lt_xz, lt_yz } => {
                if m < 3 {
                    return false;
                }
                let z = word[m - 1];
                word[..m - 1]
                    .windows(2)
                    .any(|w| (w[0] < w[1]) == lt_xy && (w[0] < z) == lt_xz && (w[1] < z) == lt_yz)
            }
            Check::General(ref p) => pattern::word_contains_ending_at_last(word, p),
        }
    }
}

/// Compiled form of a pattern set, reusable across lengths.
#[derive(Debug, Clone)]
pub struct Avoiders {
    checks: Vec<Check>,
}

struct Walk<'a, F> {
    checks: &'a [Check],
    n: usize,
    word: Vec<u8>,
    used: u32,
    leaf: F,
}

impl<F: FnMut(&[u8])> Walk<'_, F> {
    fn descend(&mut self) {
        if self.word.len() == self.n {
            (self.leaf)(&self.word);
            return;
        }
        for v in 1..=self.n as u8 {
            if self.used & (1 << v) != 0 {
                continue;
            }
            self.word.push(v);
            if !self.checks.iter().any(|c| c.hits_last(&self.word)) {
                self.used |= 1 << v;
                self.descend();
                self.used &= !(1 << v);
            }
            self.word.pop();
        }
    }
}

impl Avoiders {
    pub fn new(set: &PatternSet) -> Self {
        Avoiders {
            checks: set.iter().map(Check::compile).collect(),
        }
    }

    /// Runs the search below a fixed first value.
    fn walk_from<F: FnMut(&[u8])>(&self, n: usize, first: u8, leaf: F) {
        let mut walk = Walk {
            checks: &self.checks,
            n,
            word: Vec::with_capacity(n),
            used: 0,
            leaf,
        };
        walk.word.push(first);
        if self.checks.iter().any(|c| c.hits_last(&walk.word)) {
            return;
        }
        walk.used = 1 << first;
        walk.descend();
    }

    pub fn count(&self, n: usize) -> Result<u64> {
        check_range(n, 1, MAX_PERMUTATION_LEN)?;
        let count_root = |first: u8| {
            let mut total = 0u64;
            self.walk_from(n, first, |_| total += 1);
            total
        };
        Ok(if n >= PARALLEL_FROM {
            (1..=n as u8).into_par_iter().map(count_root).sum()
        } else {
            (1..=n as u8).map(count_root).sum()
        })
    }

    pub fn list(&self, n: usize) -> Result<Vec<Permutation>> {
        check_range(n, 1, MAX_LIST_LEN)?;
        let list_root = |first: u8| {
            let mut out = Vec::new();
            self.walk_from(n, first, |w| out.push(Permutation::from_values_unchecked(w.to_vec())));
            out
        };
        let roots: Vec<Vec<Permutation>> = if n >= PARALLEL_FROM {
            (1..=n as u8).into_par_iter().map(list_root).collect()
        } else {
            (1..=n as u8).map(list_root).collect()
        };
        Ok(roots.into_iter().flatten().collect())
    }

    /// Visits avoiders of length `n` in lexicographic order on this thread.
    pub fn for_each(&self, n: usize, mut visit: impl FnMut(&[u8])) -> Result<()> {
        check_range(n, 1, MAX_PERMUTATION_LEN)?;
        for first in 1..=n as u8 {
            self.walk_from(n, first, &mut visit);
        }
        Ok(())
    }
}

fn check_range(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::LengthOutOfRange { n, min, max });
    }
    Ok(())
}

/// `|S_n(P)|` by pruned search, `1 <= n <= 20`.
pub fn count_avoiders(n: usize, set: &PatternSet) -> Result<u64> {
    Avoiders::new(set).count(n)
}

/// `S_n(P)` in lexicographic order, `1 <= n <= 12`.
pub fn list_avoiders(n: usize, set: &PatternSet) -> Result<Vec<Permutation>> {
    Avoiders::new(set).list(n)
}

/// Filters all `n!` permutations through [`avoids_all`]. Oracle only.
pub fn count_avoiders_naive(n: usize, set: &PatternSet) -> Result<u64> {
    check_range(n, 1, MAX_NAIVE_LEN)?;
    Ok((1..=n as u8)
        .permutations(n)
        .filter(|values| avoids_all(&Permutation::from_values_unchecked(values.clone()), set))
        .count() as u64)
}

/// Counts for `n = 1..=max_n`; once a count hits zero the rest are zero.
pub fn counting_sequence(max_n: usize, set: &PatternSet) -> Result<CountingSequence> {
    check_range(max_n, 1, MAX_SEQUENCE_LEN)?;
    let avoiders = Avoiders::new(set);
    let mut counts = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let c = if counts.last() == Some(&0) { 0 } else { avoiders.count(n)? };
        counts.push(c);
    }
    Ok(CountingSequence {
        pattern_set: set.clone(),
        counts,
    })
}
