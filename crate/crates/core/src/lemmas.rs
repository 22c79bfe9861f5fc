//! Bounded exhaustive checks of three kinds of statement:
//!
//! - closure: every avoider of `A` also avoids `q`, so `S(A) = S(A ∪ {q})`;
//! - containment implication: every permutation containing `p` contains `q`;
//! - structure: each set built from a column choice is avoided by exactly an
//!   explicit family of permutations.
//!
//! Checks stop at a length bound and every record carries that bound.
//! Counterexamples are the lexicographically least permutation of the least
//! failing length.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::Avoiders;
use crate::error::{Error, Result};
use crate::pattern::{self, PatternSet, Permutation, VincularPattern};

/// Largest length the lemma checks accept.
pub const MAX_LEMMA_LEN: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Permutation>,
    pub checked_up_to: usize,
}

fn check_bound(max_n: usize) -> Result<()> {
    if max_n == 0 || max_n > MAX_LEMMA_LEN {
        return Err(Error::LengthOutOfRange {
            n: max_n,
            min: 1,
            max: MAX_LEMMA_LEN,
        });
    }
    Ok(())
}

/// First avoider of `avoid` (by length, then lexicographically) that
/// contains `target`.
fn first_avoider_containing(
    avoid: &PatternSet,
    target: &VincularPattern,
    max_n: usize,
) -> Result<Option<Permutation>> {
    let avoiders = Avoiders::new(avoid);
    for n in 1..=max_n {
        let mut witness = None;
        avoiders.for_each(n, |w| {
            if witness.is_none() && pattern::word_contains(w, target) {
                witness = Some(w.to_vec());
            }
        })?;
        if let Some(values) = witness {
            return Ok(Some(Permutation::new(values)?));
        }
    }
    Ok(None)
}

/// Does avoiding `base` force avoiding `extra` for every length up to `max_n`?
pub fn verify_closure(base: &PatternSet, extra: &VincularPattern, max_n: usize) -> Result<Verdict> {
    check_bound(max_n)?;
    let witness = first_avoider_containing(base, extra, max_n)?;
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
        checked_up_to: max_n,
    })
}

/// Does every permutation of length `<= max_n` that contains `from` also
/// contain `to`? Equivalently, does every avoider of `to` avoid `from`.
pub fn verify_containment_implication(
    from: &VincularPattern,
    to: &VincularPattern,
    max_n: usize,
) -> Result<Verdict> {
    check_bound(max_n)?;
    let avoid_to: PatternSet = std::iter::once(to.clone()).collect();
    let witness = first_avoider_containing(&avoid_to, from, max_n)?;
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
        checked_up_to: max_n,
    })
}

/// Explicit avoider families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureTemplate {
    /// `n ... 2 1` and `(n-1) ... 2 1 n`
    DecreasingPair,
    /// `n ... 2 1` and `(n-1) n (n-2) ... 2 1`
    DecreasingOrSwappedTop,
    /// `n ... 2 1` and `1 2 ... n`
    DecreasingOrIdentity,
    /// `1 n 2 (n-1) ...` and `n 1 (n-1) 2 ...`
    ZigzagPair,
    /// `n ... 2 1` and `1 n (n-1) ... 2`
    DecreasingOrOneThenDecreasing,
    /// `n ... 2 1` and `n (n-1) ... 3 1 2`
    DecreasingOrSwappedBottom,
    /// `n ... 2 1` alone
    SingletonDecreasing,
}

impl StructureTemplate {
    pub const ALL: [StructureTemplate; 7] = [
        StructureTemplate::DecreasingPair,
        StructureTemplate::DecreasingOrSwappedTop,
        StructureTemplate::DecreasingOrIdentity,
        StructureTemplate::ZigzagPair,
        StructureTemplate::DecreasingOrOneThenDecreasing,
        StructureTemplate::DecreasingOrSwappedBottom,
        StructureTemplate::SingletonDecreasing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureTemplate::DecreasingPair => "decreasing-pair",
            StructureTemplate::DecreasingOrSwappedTop => "decreasing-or-swapped-top",
            StructureTemplate::DecreasingOrIdentity => "decreasing-or-identity",
            StructureTemplate::ZigzagPair => "zigzag-pair",
            StructureTemplate::DecreasingOrOneThenDecreasing => "decreasing-or-one-then-decreasing",
            StructureTemplate::DecreasingOrSwappedBottom => "decreasing-or-swapped-bottom",
            StructureTemplate::SingletonDecreasing => "singleton-decreasing",
        }
    }
}

impl fmt::Display for StructureTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureTemplate {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let wanted = text.trim().replace([' ', '_'], "-").to_ascii_lowercase();
        StructureTemplate::ALL
            .into_iter()
            .find(|t| t.name() == wanted)
            .ok_or_else(|| Error::UnknownTemplate(text.to_string()))
    }
}

/// Alternates smallest and largest remaining values.
fn zigzag(n: usize, low_first: bool) -> Vec<u8> {
    let (mut lo, mut hi) = (1u8, n as u8);
    let mut take_low = low_first;
    let mut out = Vec::with_capacity(n);
    while lo <= hi {
        if take_low {
            out.push(lo);
            lo += 1;
        } else {
            out.push(hi);
            hi -= 1;
        }
        take_low = !take_low;
    }
    out
}

/// The permutations `template` describes at length `n >= 3`, sorted.
pub fn expected_structure(template: StructureTemplate, n: usize) -> Result<Vec<Permutation>> {
    if !(3..=pattern::MAX_PERMUTATION_LEN).contains(&n) {
        return Err(Error::LengthOutOfRange {
            n,
            min: 3,
            max: pattern::MAX_PERMUTATION_LEN,
        });
    }
    let top = n as u8;
    let decreasing: Vec<u8> = (1..=top).rev().collect();
    let second: Option<Vec<u8>> = match template {
        StructureTemplate::DecreasingPair => Some((1..top).rev().chain([top]).collect()),
        StructureTemplate::DecreasingOrSwappedTop => {
            Some([top - 1, top].into_iter().chain((1..top - 1).rev()).collect())
        }
        StructureTemplate::DecreasingOrIdentity => Some((1..=top).collect()),
        StructureTemplate::ZigzagPair => {
            let mut pair = vec![zigzag(n, true), zigzag(n, false)];
            pair.sort();
            return pair.into_iter().map(Permutation::new).collect();
        }
        StructureTemplate::DecreasingOrOneThenDecreasing => {
            Some([1].into_iter().chain((2..=top).rev()).collect())
        }
        StructureTemplate::DecreasingOrSwappedBottom => {
            Some((3..=top).rev().chain([1, 2]).collect())
        }
        StructureTemplate::SingletonDecreasing => None,
    };
    let mut out = vec![Permutation::new(decreasing)?];
    if let Some(values) = second {
        out.push(Permutation::new(values)?);
    }
    out.sort();
    Ok(out)
}

/// Pattern sets formed by choosing one pattern from each column, plus the
/// `extra` patterns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossProduct {
    pub columns: Vec<Vec<VincularPattern>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<VincularPattern>,
}

impl CrossProduct {
    pub fn expand(&self) -> Vec<PatternSet> {
        self.columns
            .iter()
            .map(|c| c.iter())
            .multi_cartesian_product()
            .map(|choice| choice.into_iter().chain(&self.extra).cloned().collect())
            .collect()
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(Vec::len).product()
    }
}

impl fmt::Display for CrossProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| c.iter().map(ToString::to_string).join(" or "))
            .collect();
        write!(f, "[{}]", cols.join("] x ["))?;
        if !self.extra.is_empty() {
            write!(f, " + {}", self.extra.iter().join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureMismatch {
    pub set: PatternSet,
    pub n: usize,
    pub expected: Vec<Permutation>,
    pub found: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureVerdict {
    pub holds: bool,
    pub sets_checked: usize,
    pub checked_up_to: usize,
    /// First mismatch per failing set.
    pub mismatches: Vec<StructureMismatch>,
}

/// Checks `S_n(P) = expected_structure(template, n)` for every generated
/// `P` and every `3 <= n <= max_n`.
pub fn verify_structure(
    template: StructureTemplate,
    generator: &CrossProduct,
    max_n: usize,
) -> Result<StructureVerdict> {
    check_bound(max_n)?;
    let sets = generator.expand();
    let expected: Vec<Vec<Permutation>> = (3..=max_n)
        .map(|n| expected_structure(template, n))
        .collect::<Result<_>>()?;
    let outcomes: Vec<Option<StructureMismatch>> = sets
        .par_iter()
        .map(|set| -> Result<Option<StructureMismatch>> {
            let avoiders = Avoiders::new(set);
            for (n, want) in (3..=max_n).zip(&expected) {
                let found = avoiders.list(n)?;
                if &found != want {
                    return Ok(Some(StructureMismatch {
                        set: set.clone(),
                        n,
                        expected: want.clone(),
                        found,
                    }));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let mismatches: Vec<StructureMismatch> = outcomes.into_iter().flatten().collect();
    Ok(StructureVerdict {
        holds: mismatches.is_empty(),
        sets_checked: sets.len(),
        checked_up_to: max_n,
        mismatches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaKind {
    Closure,
    ContainmentImplication,
    Structure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Pattern(VincularPattern),
    Structure(StructureTemplate),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Pattern(p) => write!(f, "{p}"),
            Conclusion::Structure(t) => write!(f, "{t}"),
        }
    }
}

/// One checked statement and its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub id: String,
    pub kind: LemmaKind,
    /// Closure: the avoided set. Implication: the contained pattern.
    /// Structure: the extra patterns added to every column choice.
    pub premise: PatternSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<CrossProduct>,
    pub conclusion: Conclusion,
    pub verified_up_to: usize,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Permutation>,
}

impl LemmaRecord {
    pub fn closure(id: &str, base: &PatternSet, extra: &VincularPattern, max_n: usize) -> Result<Self> {
        let verdict = verify_closure(base, extra, max_n)?;
        Ok(LemmaRecord {
            id: id.to_string(),
            kind: LemmaKind::Closure,
            premise: base.clone(),
            generator: None,
            conclusion: Conclusion::Pattern(extra.clone()),
            verified_up_to: verdict.checked_up_to,
            holds: verdict.holds,
            witness: verdict.witness,
        })
    }

    pub fn implication(id: &str, from: &VincularPattern, to: &VincularPattern, max_n: usize) -> Result<Self> {
        let verdict = verify_containment_implication(from, to, max_n)?;
        Ok(LemmaRecord {
            id: id.to_string(),
            kind: LemmaKind::ContainmentImplication,
            premise: std::iter::once(from.clone()).collect(),
            generator: None,
            conclusion: Conclusion::Pattern(to.clone()),
            verified_up_to: verdict.checked_up_to,
            holds: verdict.holds,
            witness: verdict.witness,
        })
    }

    pub fn structure(
        id: &str,
        generator: &CrossProduct,
        template: StructureTemplate,
        max_n: usize,
    ) -> Result<Self> {
        let verdict = verify_structure(template, generator, max_n)?;
        let witness = verdict.mismatches.first().map(|m| {
            m.found
                .iter()
                .find(|p| !m.expected.contains(p))
                .or_else(|| m.expected.iter().find(|p| !m.found.contains(p)))
                .cloned()
                .expect("mismatch differs somewhere")
        });
        Ok(LemmaRecord {
            id: id.to_string(),
            kind: LemmaKind::Structure,
            premise: generator.extra.iter().cloned().collect(),
            generator: Some(generator.clone()),
            conclusion: Conclusion::Structure(template),
            verified_up_to: verdict.checked_up_to,
            holds: verdict.holds,
            witness,
        })
    }
}

/// Every closure, implication and structure statement in `data`, checked
/// up to `max_n`, in file order.
pub fn verify_statements(data: &crate::tables::TableData, max_n: usize) -> Result<Vec<LemmaRecord>> {
    let mut out = Vec::new();
    for c in &data.closures {
        out.push(LemmaRecord::closure(&c.id, &c.premise, &c.conclusion, max_n)?);
    }
    for i in &data.implications {
        out.push(LemmaRecord::implication(&i.id, &i.from, &i.to, max_n)?);
    }
    for s in &data.structures {
        out.push(LemmaRecord::structure(&s.id, &s.generator, s.template, max_n)?);
    }
    Ok(out)
}

/// Statements that must fail, with the counterexample they fail on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeControl {
    pub record: LemmaRecord,
    pub expected_witness: Permutation,
}

impl NegativeControl {
    pub fn confirmed(&self) -> bool {
        !self.record.holds && self.record.witness.as_ref() == Some(&self.expected_witness)
    }
}

/// `{1-23}` alone does not force avoiding `12-3` (fails at 2314), and
/// containing `2-31` does not force containing `23-1` (fails at 3142).
pub fn negative_controls(max_n: usize) -> Result<Vec<NegativeControl>> {
    let p = |t: &str| VincularPattern::parse(t).expect("static pattern");
    let w = |t: &str| t.parse::<Permutation>().expect("static permutation");
    Ok(vec![
        NegativeControl {
            record: LemmaRecord::closure("X1", &std::iter::once(p("1-23")).collect(), &p("12-3"), max_n)?,
            expected_witness: w("2314"),
        },
        NegativeControl {
            record: LemmaRecord::implication("X2", &p("2-31"), &p("23-1"), max_n)?,
            expected_witness: w("3142"),
        },
    ])
}
