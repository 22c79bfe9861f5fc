//! Classification of `k`-subsets of the twelve length-three patterns, and
//! row-by-row replay of the table data.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{count_avoiders_naive, counting_sequence, list_avoiders, MAX_NAIVE_LEN};
use crate::error::{Error, Result};
use crate::lemmas::{expected_structure, verify_closure, MAX_LEMMA_LEN};
use crate::pattern::{PatternSet, Permutation, VincularPattern};
use crate::sequences::{match_sequence, Identification, MIN_WINDOW_END};
use crate::symmetry::{canonical, symmetry_class, SymmetryClass, SymmetryOp};
use crate::tables::{Claim, ClaimedFamily, RowInstance, TableData};

pub const MAX_SUBSET_SIZE: usize = 6;
pub const MAX_CLASSIFY_LEN: usize = 12;

/// All `k`-subsets of the twelve patterns, grouped into symmetry classes
/// and sorted by canonical representative.
pub fn partition_into_symmetry_classes(k: usize) -> Result<Vec<SymmetryClass>> {
    if k == 0 || k > MAX_SUBSET_SIZE {
        return Err(Error::SubsetSize { k, max: MAX_SUBSET_SIZE });
    }
    let all: Vec<VincularPattern> = PatternSet::length_three().iter().cloned().collect();
    let mut classes: BTreeMap<PatternSet, SymmetryClass> = BTreeMap::new();
    for subset in all.into_iter().combinations(k) {
        let set: PatternSet = subset.into_iter().collect();
        let key = canonical(&set);
        classes.entry(key).or_insert_with(|| symmetry_class(&set));
    }
    Ok(classes.into_values().collect())
}

/// A table row that falls in a class. Sets from structure statements use
/// table id 0 and the statement id as label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRef {
    pub label: String,
    pub table_id: u32,
    pub claimed: ClaimedFamily,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedClass {
    pub class: SymmetryClass,
    pub counts: Vec<u64>,
    pub identification: Identification,
    pub table_rows: Vec<TableRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
}

impl ClassifiedClass {
    /// Every table row in the class agrees with the counts.
    pub fn consistent(&self) -> bool {
        self.table_rows.iter().all(|r| r.agrees) && self.oracle_agrees != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub k: usize,
    pub max_n: usize,
    pub classes: Vec<ClassifiedClass>,
}

impl ClassificationReport {
    /// Total number of subsets covered; equals `C(12, k)`.
    pub fn subsets_covered(&self) -> usize {
        self.classes.iter().map(|c| c.class.members.len()).sum()
    }
}

fn check_classify_len(max_n: usize) -> Result<()> {
    if !(MIN_WINDOW_END..=MAX_CLASSIFY_LEN).contains(&max_n) {
        return Err(Error::LengthOutOfRange {
            n: max_n,
            min: MIN_WINDOW_END,
            max: MAX_CLASSIFY_LEN,
        });
    }
    Ok(())
}

/// Zero claims only need the counts to die out within the window; any
/// other claim must be identified exactly.
fn claim_holds(claimed: &ClaimedFamily, counts: &[u64], found: &Identification) -> bool {
    if claimed.confirmed_by(found) {
        return true;
    }
    claimed.is_zero() && matches!(claimed.claim, Claim::Constant { threshold: None, .. }) && {
        let first = counts.iter().position(|&c| c == 0);
        first.is_some_and(|i| counts[i..].iter().all(|&c| c == 0))
    }
}

fn oracle_agrees(set: &PatternSet, counts: &[u64]) -> Result<bool> {
    for (i, &c) in counts.iter().enumerate().take(MAX_NAIVE_LEN) {
        if count_avoiders_naive(i + 1, set)? != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counts one representative per class up to `max_n` and identifies its
/// family. Table rows (if `data` is given) are attached to the class they
/// fall in.
pub fn classify_all(
    k: usize,
    max_n: usize,
    data: Option<&TableData>,
    oracle: bool,
) -> Result<ClassificationReport> {
    check_classify_len(max_n)?;
    let mut classes = partition_into_symmetry_classes(k)?;
    let mut rows_by_class: BTreeMap<PatternSet, Vec<(String, u32, ClaimedFamily)>> = BTreeMap::new();
    if let Some(data) = data {
        for inst in data.instances().filter(|i| i.patterns.len() == k) {
            let entry = (inst.label.clone(), inst.table_id, inst.claimed.clone());
            rows_by_class.entry(canonical(&inst.patterns)).or_default().push(entry);
        }
        // Structure statements claim a constant: the size of the explicit family.
        for statement in &data.structures {
            let value = expected_structure(statement.template, 3)?.len() as u64;
            let claimed = ClaimedFamily {
                text: format!("{{{value}}}_{{n>=k}}"),
                claim: Claim::Constant { value, threshold: None },
            };
            for (j, set) in statement.generator.expand().into_iter().enumerate() {
                if set.len() == k {
                    let entry = (format!("{}.{}", statement.id, j + 1), 0, claimed.clone());
                    rows_by_class.entry(canonical(&set)).or_default().push(entry);
                }
            }
        }
    }
    for class in &mut classes {
        class.name = rows_by_class
            .get(&class.canonical)
            .and_then(|rows| rows.first())
            .map(|r| r.0.clone());
    }
    let classified = classes
        .into_par_iter()
        .map(|class| -> Result<ClassifiedClass> {
            let seq = counting_sequence(max_n, &class.canonical)?;
            let identification = match_sequence(&seq)?;
            let table_rows = rows_by_class
                .get(&class.canonical)
                .map(|rows| {
                    rows.iter()
                        .map(|(label, table_id, claimed)| TableRef {
                            label: label.clone(),
                            table_id: *table_id,
                            claimed: claimed.clone(),
                            agrees: claim_holds(claimed, &seq.counts, &identification),
                        })
                        .collect()
                })
                .unwrap_or_default();
            let oracle_agrees = if oracle {
                Some(oracle_agrees(&class.canonical, &seq.counts)?)
            } else {
                None
            };
            Ok(ClassifiedClass {
                class,
                counts: seq.counts,
                identification,
                table_rows,
                oracle_agrees,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        k,
        max_n,
        classes: classified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationCheck {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proposition: Option<String>,
    pub base_label: String,
    pub base: PatternSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added: Option<VincularPattern>,
    /// `base ∪ {added}` is the row's set.
    pub union_ok: bool,
    /// Avoiding `base` forces avoiding `added` (only for cited closures).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_counts_equal: Option<bool>,
    /// The cited statement's premise lies in `base` and its conclusion is
    /// `added`. A mismatch is reported, not failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation_ok: Option<bool>,
}

impl DerivationCheck {
    pub fn holds(&self) -> bool {
        self.union_ok && self.closure_holds != Some(false) && self.base_counts_equal != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub label: String,
    pub table_id: u32,
    pub row: usize,
    pub patterns: PatternSet,
    pub counts: Vec<u64>,
    pub identification: Identification,
    pub claimed: ClaimedFamily,
    pub family_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<DerivationCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Permutation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.family_ok
            && self.derivation.as_ref().is_none_or(DerivationCheck::holds)
            && self.structure_ok != Some(false)
            && self.oracle_ok != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub table_id: u32,
    pub max_n: usize,
    pub rows: Vec<RowCheck>,
}

impl TableCheck {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(RowCheck::passed)
    }
}

fn check_derivation(
    data: &TableData,
    inst: &RowInstance,
    counts: &[u64],
    max_n: usize,
    notes: &mut Vec<String>,
    witness: &mut Option<Permutation>,
) -> Result<Option<DerivationCheck>> {
    let Some(d) = &inst.derivation else {
        return Ok(None);
    };
    let union_ok = d.added.as_ref().is_some_and(|a| d.base.with(a.clone()) == inst.patterns);
    if !union_ok {
        notes.push(format!("{} plus one pattern is not {}", d.base, inst.patterns));
    }
    let mut check = DerivationCheck {
        proposition: d.proposition.clone(),
        base_label: d.base_label.clone(),
        base: d.base.clone(),
        added: d.added.clone(),
        union_ok,
        closure_holds: None,
        base_counts_equal: None,
        citation_ok: None,
    };
    let (Some(cited), Some(added)) = (&d.proposition, &d.added) else {
        return Ok(Some(check));
    };
    let verdict = verify_closure(&d.base, added, max_n.min(MAX_LEMMA_LEN))?;
    check.closure_holds = Some(verdict.holds);
    if witness.is_none() {
        *witness = verdict.witness;
    }
    let base_counts = counting_sequence(max_n, &d.base)?.counts;
    check.base_counts_equal = Some(base_counts == counts);

    let statement = data.closure(cited).ok_or_else(|| Error::Data(format!("unknown proposition {cited}")))?;
    let applies = |c: &crate::tables::ClosureStatement| c.premise.is_subset(&d.base) && &c.conclusion == added;
    let citation_ok = applies(statement);
    check.citation_ok = Some(citation_ok);
    if !citation_ok {
        let fitting: Vec<&str> = data.closures.iter().filter(|c| applies(c)).map(|c| c.id.as_str()).collect();
        notes.push(format!(
            "cites {cited} ({} => {}) but adds {added}; fitting statement: {}",
            statement.premise,
            statement.conclusion,
            if fitting.is_empty() { "none".to_string() } else { fitting.join(", ") }
        ));
    }
    Ok(Some(check))
}

fn check_row(data: &TableData, inst: &RowInstance, max_n: usize, oracle: bool) -> Result<RowCheck> {
    let seq = counting_sequence(max_n, &inst.patterns)?;
    let identification = match_sequence(&seq)?;
    let family_ok = claim_holds(&inst.claimed, &seq.counts, &identification);
    let mut notes = Vec::new();
    let mut witness = None;
    if !family_ok {
        notes.push(format!("claimed {} but counts give {identification}", inst.claimed));
    }
    notes.extend(inst.remark.clone());
    let derivation = check_derivation(data, inst, &seq.counts, max_n, &mut notes, &mut witness)?;

    let structure_ok = match inst.structure {
        None => None,
        Some(template) => {
            let mut ok = true;
            for n in 3..=max_n.min(MAX_LEMMA_LEN) {
                let found = list_avoiders(n, &inst.patterns)?;
                let expected = expected_structure(template, n)?;
                if found != expected {
                    notes.push(format!("n = {n}: avoiders differ from {template}"));
                    if witness.is_none() {
                        witness = found.iter().find(|p| !expected.contains(p)).cloned();
                    }
                    ok = false;
                    break;
                }
            }
            Some(ok)
        }
    };
    let oracle_ok = if oracle {
        Some(oracle_agrees(&inst.patterns, &seq.counts)?)
    } else {
        None
    };
    Ok(RowCheck {
        label: inst.label.clone(),
        table_id: inst.table_id,
        row: inst.row,
        patterns: inst.patterns.clone(),
        counts: seq.counts,
        identification,
        claimed: inst.claimed.clone(),
        family_ok,
        derivation,
        structure_ok,
        oracle_ok,
        witness,
        notes,
    })
}

/// Replays every set of one table: counts, family, derivation, structure
/// and (optionally) the naive oracle for `n <= 8`.
pub fn verify_table(data: &TableData, table_id: u32, max_n: usize, oracle: bool) -> Result<TableCheck> {
    check_classify_len(max_n)?;
    let table = data.table(table_id)?;
    let rows = table
        .instances
        .par_iter()
        .map(|inst| check_row(data, inst, max_n, oracle))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableCheck { table_id, max_n, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duplicate {
    pub label: String,
    pub same_class_as: String,
    pub row: usize,
    pub first_row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedupeReport {
    pub table_id: u32,
    pub raw: usize,
    pub distinct: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_distinct: Option<usize>,
    pub duplicates: Vec<Duplicate>,
    /// Rows any duplicate came from (either side of the pair).
    pub duplicate_rows: BTreeSet<usize>,
}

/// Counts the sets a cross-product table expands to and how many symmetry
/// classes they represent.
pub fn dedupe_cross_product_classes(data: &TableData, table_id: u32) -> Result<DedupeReport> {
    let table = data.table(table_id)?;
    let mut first_seen: BTreeMap<PatternSet, &RowInstance> = BTreeMap::new();
    let mut duplicates = Vec::new();
    let mut duplicate_rows = BTreeSet::new();
    for inst in &table.instances {
        let key = canonical(&inst.patterns);
        match first_seen.get(&key) {
            Some(first) => {
                duplicate_rows.insert(first.row);
                duplicate_rows.insert(inst.row);
                duplicates.push(Duplicate {
                    label: inst.label.clone(),
                    same_class_as: first.label.clone(),
                    row: inst.row,
                    first_row: first.row,
                });
            }
            None => {
                first_seen.insert(key, inst);
            }
        }
    }
    Ok(DedupeReport {
        table_id,
        raw: table.instances.len(),
        distinct: first_seen.len(),
        claimed_distinct: table.claimed_classes,
        duplicates,
        duplicate_rows,
    })
}

/// Canonical classes of size `k` with no table row, and table rows of size
/// `k` whose class holds more than one row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub k: usize,
    pub classes: usize,
    pub rows: usize,
    pub unlisted_classes: Vec<PatternSet>,
    pub shared_classes: Vec<Vec<String>>,
}

impl Coverage {
    pub fn exact(&self) -> bool {
        self.unlisted_classes.is_empty() && self.shared_classes.is_empty()
    }
}

/// Matches the listed size-`k` rows of `tables` against the computed
/// symmetry classes.
pub fn table_coverage(data: &TableData, k: usize, tables: &[u32]) -> Result<Coverage> {
    let classes = partition_into_symmetry_classes(k)?;
    let mut by_class: BTreeMap<PatternSet, Vec<String>> = BTreeMap::new();
    let mut rows = 0;
    for id in tables {
        for inst in &data.table(*id)?.instances {
            if inst.patterns.len() == k {
                rows += 1;
                by_class.entry(canonical(&inst.patterns)).or_default().push(inst.label.clone());
            }
        }
    }
    Ok(Coverage {
        k,
        classes: classes.len(),
        rows,
        unlisted_classes: classes
            .iter()
            .filter(|c| !by_class.contains_key(&c.canonical))
            .map(|c| c.canonical.clone())
            .collect(),
        shared_classes: by_class.into_values().filter(|labels| labels.len() > 1).collect(),
    })
}

/// Outcome of one seeded random check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomCheck {
    pub id: String,
    pub kind: String,
    pub set: PatternSet,
    pub counts: Vec<u64>,
    pub ok: bool,
}

/// `count` subsets of the twelve patterns, each pattern kept with
/// probability 1/2. The same seed always gives the same subsets.
pub fn random_subsets(seed: u64, count: usize) -> Vec<PatternSet> {
    let all: Vec<VincularPattern> = PatternSet::length_three().iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| all.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect())
        .collect()
}

/// Pruned counts against the naive filter for `n <= max_n` (at most 8).
pub fn random_oracle_checks(seed: u64, count: usize, max_n: usize) -> Result<Vec<RandomCheck>> {
    let max_n = max_n.min(MAX_NAIVE_LEN);
    random_subsets(seed, count)
        .into_par_iter()
        .enumerate()
        .map(|(i, set)| {
            let counts = counting_sequence(max_n, &set)?.counts;
            let ok = oracle_agrees(&set, &counts)?;
            Ok(RandomCheck {
                id: format!("oracle/{i}"),
                kind: "oracle".into(),
                set,
                counts,
                ok,
            })
        })
        .collect()
}

/// All four symmetry images give the same counts for `n <= max_n`.
pub fn symmetry_invariance_checks(seed: u64, count: usize, max_n: usize) -> Result<Vec<RandomCheck>> {
    random_subsets(seed ^ SYMMETRY_STREAM, count)
        .into_par_iter()
        .enumerate()
        .map(|(i, set)| {
            let counts = counting_sequence(max_n, &set)?.counts;
            let mut ok = true;
            for op in SymmetryOp::ALL {
                ok &= counting_sequence(max_n, &op.apply_to_set(&set))?.counts == counts;
            }
            Ok(RandomCheck {
                id: format!("symmetry/{i}"),
                kind: "symmetry".into(),
                set,
                counts,
                ok,
            })
        })
        .collect()
}

/// Keeps the symmetry sample independent of the oracle sample.
const SYMMETRY_STREAM: u64 = 0x5eed_5eed;

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn partitions_cover_every_subset() {
        for k in 1..=MAX_SUBSET_SIZE {
            let classes = partition_into_symmetry_classes(k).unwrap();
            let covered: usize = classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(covered, binomial(12, k), "k = {k}");
            assert!(classes.windows(2).all(|w| w[0].canonical < w[1].canonical));
        }
        assert_eq!(partition_into_symmetry_classes(3).unwrap().len(), 55);
        assert!(partition_into_symmetry_classes(0).is_err());
        assert!(partition_into_symmetry_classes(7).is_err());
    }

    #[test]
    fn three_pattern_rows_cover_the_classes() {
        let data = TableData::embedded();
        let cov = table_coverage(&data, 3, &[1, 2]).unwrap();
        assert_eq!(cov.rows, 55);
        assert!(cov.exact(), "{cov:?}");
    }

    #[test]
    fn dedupe_of_constant_two_table() {
        let data = TableData::embedded();
        let report = dedupe_cross_product_classes(&data, 7).unwrap();
        assert_eq!((report.raw, report.distinct), (52, 42));
        assert_eq!(report.claimed_distinct, Some(42));
        // Nine repeats inside box-row 3, plus one complement pair in box-row 4.
        assert_eq!(report.duplicate_rows, BTreeSet::from([3, 4]));
        let in_four: Vec<_> = report.duplicates.iter().filter(|d| d.row == 4).collect();
        assert_eq!(in_four.len(), 1);
        assert_eq!((in_four[0].label.as_str(), in_four[0].same_class_as.as_str()), ("T7.4.3", "T7.4.2"));
    }

    #[test]
    fn small_table_replays() {
        let data = TableData::embedded();
        let check = verify_table(&data, 4, 8, false).unwrap();
        assert_eq!(check.rows.len(), 10);
        assert!(check.all_passed(), "{:?}", check.rows.iter().find(|r| !r.passed()));
        assert!(verify_table(&data, 4, 6, false).is_err());
        assert!(verify_table(&data, 42, 8, false).is_err());
    }
}
