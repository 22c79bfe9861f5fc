//! Permutations, vincular patterns and containment.
//!
//! A vincular pattern is a permutation of `1..=k` split into blocks by
//! dashes. Letters inside a block must land on adjacent positions of the
//! host permutation; a dash allows any gap. `216-4-53` has blocks
//! `216`, `4`, `53` and type `(3, 1, 2)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, PatternParseError, Result};

/// Longest permutation the crate accepts.
pub const MAX_PERMUTATION_LEN: usize = 20;

/// The twelve length-three patterns of type `(1,2)` or `(2,1)`.
pub const LENGTH_THREE: [&str; 12] = [
    "1-23", "12-3", "1-32", "13-2", "3-12", "31-2", "2-13", "21-3", "2-31", "23-1", "3-21", "32-1",
];

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        if n > MAX_PERMUTATION_LEN {
            return Err(Error::LengthOutOfRange {
                n,
                min: 0,
                max: MAX_PERMUTATION_LEN,
            });
        }
        let mut seen = 0u32;
        for &v in &values {
            if v == 0 || usize::from(v) > n || seen & (1 << v) != 0 {
                return Err(Error::Permutation {
                    text: render_values(&values),
                    reason: format!("not a permutation of 1..{n}"),
                });
            }
            seen |= 1 << v;
        }
        Ok(Permutation(values))
    }

    /// Wraps values already known to be a permutation of `1..=n`.
    pub(crate) fn from_values_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u8> {
        self.0
    }
}

fn render_values(values: &[u8]) -> String {
    if values.len() <= 9 {
        values.iter().map(|v| char::from(b'0' + v)).collect()
    } else {
        values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_values(&self.0))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit strings (`153426`) for short permutations, comma-separated
    /// integers (`10,2,...`) otherwise.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |reason: String| Error::Permutation {
            text: text.to_string(),
            reason,
        };
        let values: Vec<u8> = if text.contains(',') {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u8>()
                        .map_err(|_| bad(format!("{:?} is not an integer", part.trim())))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .enumerate()
                .map(|(i, c)| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| bad(format!("unexpected {c:?} at position {}", i + 1)))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| match e {
            Error::Permutation { reason, .. } => bad(reason),
            other => other,
        })
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Returns the permutation of `1..=len` order-isomorphic to `word`.
pub fn standardize<T: Ord + Copy + Into<i64>>(word: &[T]) -> Result<Permutation> {
    if word.len() > MAX_PERMUTATION_LEN {
        return Err(Error::LengthOutOfRange {
            n: word.len(),
            min: 0,
            max: MAX_PERMUTATION_LEN,
        });
    }
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    if let Some(pair) = order.windows(2).find(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::DuplicateEntry(word[pair[0]].into()));
    }
    let mut values = vec![0u8; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u8 + 1;
    }
    Ok(Permutation(values))
}

/// A permutation of `1..=k` partitioned into dash-separated blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VincularPattern {
    letters: Vec<u8>,
    blocks: Vec<u8>,
}

impl VincularPattern {
    /// Builds a pattern from its letters and block sizes (its type).
    pub fn new(letters: Vec<u8>, block_sizes: Vec<u8>) -> Result<Self> {
        let text = format!("{letters:?}/{block_sizes:?}");
        let k = letters.len();
        if k == 0 {
            return Err(Error::Pattern {
                text,
                source: PatternParseError::Empty,
            });
        }
        if k > 9
            || block_sizes.contains(&0)
            || block_sizes.iter().map(|&b| usize::from(b)).sum::<usize>() != k
        {
            return Err(Error::Pattern {
                text,
                source: PatternParseError::InvalidBlocks,
            });
        }
        check_letters(&letters, |i| i + 1).map_err(|source| Error::Pattern { text, source })?;
        Ok(VincularPattern {
            letters,
            blocks: block_sizes,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_pattern(text).map_err(|source| Error::Pattern {
            text: text.to_string(),
            source,
        })
    }

    /// Letters in left-to-right order, dashes dropped.
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// Block sizes, i.e. the type `(t1, ..., t_{h+1})`.
    pub fn block_sizes(&self) -> &[u8] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(first pattern index, length)` per block.
    pub(crate) fn block_spans(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.iter().scan(0usize, |start, &len| {
            let span = (*start, usize::from(len));
            *start += usize::from(len);
            Some(span)
        })
    }

    /// Whether this is one of the twelve type-(1,2)/(2,1) patterns of length three.
    pub fn is_length_three_split(&self) -> bool {
        self.letters.len() == 3 && (self.blocks == [1, 2] || self.blocks == [2, 1])
    }
}

fn check_letters(
    letters: &[u8],
    position_of: impl Fn(usize) -> usize,
) -> std::result::Result<(), PatternParseError> {
    let k = letters.len();
    let mut seen = [false; 10];
    for (i, &l) in letters.iter().enumerate() {
        if l == 0 || usize::from(l) > k || seen[usize::from(l)] {
            return Err(PatternParseError::NotAPermutation {
                position: position_of(i),
                letter: l,
                len: k,
            });
        }
        seen[usize::from(l)] = true;
    }
    Ok(())
}

fn parse_pattern(text: &str) -> std::result::Result<VincularPattern, PatternParseError> {
    let chars: Vec<char> = text.chars().collect();
    if chars.is_empty() {
        return Err(PatternParseError::Empty);
    }
    let mut letters = Vec::new();
    let mut letter_positions = Vec::new();
    let mut blocks = Vec::new();
    let mut current = 0u8;
    for (i, &c) in chars.iter().enumerate() {
        let position = i + 1;
        match c {
            '-' if i == 0 => return Err(PatternParseError::LeadingDash { position }),
            '-' if chars[i - 1] == '-' => {
                return Err(PatternParseError::ConsecutiveDashes { position: i })
            }
            '-' if i + 1 == chars.len() => return Err(PatternParseError::TrailingDash { position }),
            '-' => {
                blocks.push(current);
                current = 0;
            }
            '1'..='9' => {
                letters.push(c as u8 - b'0');
                letter_positions.push(position);
                current += 1;
            }
            _ => return Err(PatternParseError::InvalidCharacter { position, found: c }),
        }
    }
    blocks.push(current);
    check_letters(&letters, |i| letter_positions[i])?;
    Ok(VincularPattern { letters, blocks })
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rest = self.letters.iter();
        for (b, &size) in self.blocks.iter().enumerate() {
            if b > 0 {
                f.write_str("-")?;
            }
            for l in rest.by_ref().take(usize::from(size)) {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VincularPattern({self})")
    }
}

impl FromStr for VincularPattern {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        VincularPattern::parse(text)
    }
}

// Patterns order by their dashed text, so sets of patterns order like the
// sorted lists of their strings.
impl Ord for VincularPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for VincularPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for VincularPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VincularPattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A deduplicated, unordered set of patterns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PatternSet(BTreeSet<VincularPattern>);

impl PatternSet {
    pub fn new() -> Self {
        PatternSet::default()
    }

    /// The twelve patterns of [`LENGTH_THREE`].
    pub fn length_three() -> Self {
        LENGTH_THREE
            .iter()
            .map(|t| VincularPattern::parse(t).expect("static pattern"))
            .collect()
    }

    /// Parses a comma-separated list; blank input gives the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        text.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(VincularPattern::parse)
            .collect()
    }

    pub fn from_strs<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items.iter().map(|s| VincularPattern::parse(s.as_ref())).collect()
    }

    pub fn insert(&mut self, pattern: VincularPattern) -> bool {
        self.0.insert(pattern)
    }

    pub fn with(&self, pattern: VincularPattern) -> Self {
        let mut out = self.clone();
        out.insert(pattern);
        out
    }

    pub fn contains(&self, pattern: &VincularPattern) -> bool {
        self.0.contains(pattern)
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &PatternSet) -> PatternSet {
        PatternSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        PatternSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &VincularPattern> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether every member is one of the twelve length-three split patterns.
    pub fn within_length_three(&self) -> bool {
        self.0.iter().all(VincularPattern::is_length_three_split)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl FromIterator<VincularPattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = VincularPattern>>(iter: I) -> Self {
        PatternSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a VincularPattern;
    type IntoIter = std::collections::btree_set::Iter<'a, VincularPattern>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_strings().join(", "))
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet{self}")
    }
}

impl FromStr for PatternSet {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        PatternSet::parse(text)
    }
}

impl Serialize for PatternSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PatternSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        PatternSet::from_strs(&items).map_err(serde::de::Error::custom)
    }
}

/// Backtracking matcher: one start position per block, order-isomorphism
/// checked as each letter is placed.
struct Matcher<'a, T> {
    word: &'a [T],
    letters: &'a [u8],
    spans: Vec<(usize, usize)>,
    positions: Vec<usize>,
    anchored: bool,
}

impl<'a, T: Ord> Matcher<'a, T> {
    fn new(word: &'a [T], pattern: &'a VincularPattern, anchored: bool) -> Self {
        Matcher {
            word,
            letters: &pattern.letters,
            spans: pattern.block_spans().collect(),
            positions: vec![0; pattern.len()],
            anchored,
        }
    }

    fn fits(&self, index: usize, position: usize) -> bool {
        let value = &self.word[position];
        let letter = self.letters[index];
        (0..index).all(|i| (self.letters[i] < letter) == (self.word[self.positions[i]] < *value))
    }

    fn run<F>(&mut self, block: usize, min_start: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if block == self.spans.len() {
            return visit(&self.positions);
        }
        let (first, len) = self.spans[block];
        let tail: usize = self.spans[block..].iter().map(|s| s.1).sum();
        if self.word.len() < min_start + tail {
            return ControlFlow::Continue(());
        }
        let max_start = self.word.len() - tail;
        let lowest = if self.anchored && block + 1 == self.spans.len() {
            max_start
        } else {
            min_start
        };
        for start in lowest..=max_start {
            let mut ok = true;
            for t in 0..len {
                if !self.fits(first + t, start + t) {
                    ok = false;
                    break;
                }
                self.positions[first + t] = start + t;
            }
            if ok {
                self.run(block + 1, start + len, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every occurrence of `pattern` in a word of distinct values, as
/// 0-based position tuples in lexicographic order.
pub(crate) fn for_each_occurrence<T: Ord, F>(word: &[T], pattern: &VincularPattern, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let _ = Matcher::new(word, pattern, false).run(0, 0, &mut visit);
}

pub(crate) fn word_contains<T: Ord>(word: &[T], pattern: &VincularPattern) -> bool {
    let mut found = false;
    for_each_occurrence(word, pattern, |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

/// Whether `word` has an occurrence whose final letter sits on the last position.
pub(crate) fn word_contains_ending_at_last<T: Ord>(word: &[T], pattern: &VincularPattern) -> bool {
    let mut found = false;
    let _ = Matcher::new(word, pattern, true).run(0, 0, &mut |_: &[usize]| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

/// True iff `perm` contains `pattern` with every block on adjacent positions.
pub fn contains(perm: &Permutation, pattern: &VincularPattern) -> bool {
    word_contains(perm.values(), pattern)
}

/// All occurrences as 1-based, strictly increasing position tuples in
/// lexicographic order.
pub fn occurrences(perm: &Permutation, pattern: &VincularPattern) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_occurrence(perm.values(), pattern, |positions| {
        out.push(positions.iter().map(|p| p + 1).collect());
        ControlFlow::Continue(())
    });
    out
}

pub fn avoids_all(perm: &Permutation, set: &PatternSet) -> bool {
    set.iter().all(|p| !contains(perm, p))
}
