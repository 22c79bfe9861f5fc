//! Reference implementations written without the library's matcher.
#![allow(dead_code)]

use itertools::Itertools;
use vincular::{PatternSet, Permutation, VincularPattern};

/// Tries every position tuple; blocks must be contiguous and the chosen
/// entries must rank like the pattern's letters.
pub fn brute_occurrences(perm: &[u8], pattern: &VincularPattern) -> Vec<Vec<usize>> {
    let k = pattern.len();
    let letters = pattern.letters();
    let mut starts = Vec::new();
    let mut at = 0;
    for &b in pattern.block_sizes() {
        starts.push((at, b as usize));
        at += b as usize;
    }
    (0..perm.len())
        .combinations(k)
        .filter(|pos| {
            let adjacent = starts
                .iter()
                .all(|&(s, len)| (s + 1..s + len).all(|i| pos[i] == pos[i - 1] + 1));
            let same_order = (0..k).all(|a| (0..k).all(|b| (perm[pos[a]] < perm[pos[b]]) == (letters[a] < letters[b])));
            adjacent && same_order
        })
        .map(|pos| pos.into_iter().map(|p| p + 1).collect())
        .collect()
}

pub fn brute_contains(perm: &[u8], pattern: &VincularPattern) -> bool {
    !brute_occurrences(perm, pattern).is_empty()
}

/// `|S_n(P)|` from all `n!` permutations and the brute matcher.
pub fn brute_count(n: usize, set: &PatternSet) -> u64 {
    (1..=n as u8)
        .permutations(n)
        .filter(|p| set.iter().all(|q| !brute_contains(p, q)))
        .count() as u64
}

pub fn brute_list(n: usize, set: &PatternSet) -> Vec<Permutation> {
    (1..=n as u8)
        .permutations(n)
        .filter(|p| set.iter().all(|q| !brute_contains(p, q)))
        .map(|p| Permutation::new(p).unwrap())
        .collect()
}

pub fn set(text: &str) -> PatternSet {
    PatternSet::parse(text).unwrap()
}

pub fn pat(text: &str) -> VincularPattern {
    text.parse().unwrap()
}

pub fn perm(text: &str) -> Permutation {
    text.parse().unwrap()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
