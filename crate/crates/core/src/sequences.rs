//! Closed-form counting families and a matcher for counting sequences.
//!
//! Counts at `n = 1, 2` are forced (1 and 2) for any set of length-three
//! patterns, so non-constant families are compared from `n = 3` on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::CountingSequence;
use crate::error::{Error, Result};

/// First index at which families are evaluated and compared.
pub const WINDOW_START: usize = 3;
/// Shortest sequence (`N`) the matcher accepts.
pub const MIN_WINDOW_END: usize = 7;

// Seeds frozen from the calibration run in `tests::calibration`: the
// Fibonacci family is F(1) = 1, F(2) = 2 (so F(3..=6) = 3, 5, 8, 13, equal to
// the counts of {1-23, 2-13, 1-32}); the Motzkin family is the standard
// M(0) = M(1) = 1 indexing (M(3..=6) = 4, 9, 21, 51, equal to the counts of
// {1-23, 12-3, 21-3}).
const FIBONACCI_SEEDS: [u64; 2] = [1, 2];
const MOTZKIN_SEEDS: [u64; 2] = [1, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "FamilyRecord", try_from = "FamilyRecord")]
pub enum SequenceFamily {
    /// `value` for every `n >= from`.
    Constant { value: u64, from: usize },
    /// `n`
    Linear,
    Fibonacci,
    Motzkin,
    /// `2^(n-1)`
    PowerOfTwo,
    /// `2^(n-2) + 1`
    PowerOfTwoPlusOne,
    /// `1 + C(n, 2)`
    OnePlusBinomial,
    /// `C(n, ceil(n/2))`
    CentralBinomial,
}

impl SequenceFamily {
    /// Every non-constant family.
    pub const GROWING: [SequenceFamily; 7] = [
        SequenceFamily::Linear,
        SequenceFamily::Fibonacci,
        SequenceFamily::Motzkin,
        SequenceFamily::PowerOfTwo,
        SequenceFamily::PowerOfTwoPlusOne,
        SequenceFamily::OnePlusBinomial,
        SequenceFamily::CentralBinomial,
    ];

    pub fn kind(&self) -> &'static str {
        match self {
            SequenceFamily::Constant { .. } => "constant",
            SequenceFamily::Linear => "linear_n",
            SequenceFamily::Fibonacci => "fibonacci",
            SequenceFamily::Motzkin => "motzkin",
            SequenceFamily::PowerOfTwo => "pow2_shift1",
            SequenceFamily::PowerOfTwoPlusOne => "pow2_shift2_plus1",
            SequenceFamily::OnePlusBinomial => "one_plus_binom2",
            SequenceFamily::CentralBinomial => "central_binomial",
        }
    }

    /// First index at which the family is defined.
    pub fn start(&self) -> usize {
        match *self {
            SequenceFamily::Constant { from, .. } => from.max(WINDOW_START),
            _ => WINDOW_START,
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceFamily::Constant { value, from } => write!(f, "{{{value}}}_{{n>={from}}}"),
            SequenceFamily::Linear => f.write_str("{n}"),
            SequenceFamily::Fibonacci => f.write_str("{F_n}"),
            SequenceFamily::Motzkin => f.write_str("{M_n}"),
            SequenceFamily::PowerOfTwo => f.write_str("{2^(n-1)}"),
            SequenceFamily::PowerOfTwoPlusOne => f.write_str("{2^(n-2)+1}"),
            SequenceFamily::OnePlusBinomial => f.write_str("{1+C(n,2)}"),
            SequenceFamily::CentralBinomial => f.write_str("{C(n,ceil(n/2))}"),
        }
    }
}

/// Report form: `{kind, constant?, threshold?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<usize>,
}

impl From<SequenceFamily> for FamilyRecord {
    fn from(family: SequenceFamily) -> Self {
        let (constant, threshold) = match family {
            SequenceFamily::Constant { value, from } => (Some(value), Some(from)),
            _ => (None, None),
        };
        FamilyRecord {
            kind: family.kind().to_string(),
            constant,
            threshold,
        }
    }
}

impl TryFrom<FamilyRecord> for SequenceFamily {
    type Error = Error;
    fn try_from(record: FamilyRecord) -> Result<Self> {
        if record.kind == "constant" {
            return match (record.constant, record.threshold) {
                (Some(value), Some(from)) => Ok(SequenceFamily::Constant { value, from }),
                _ => Err(Error::UnknownFamily("constant without value/threshold".into())),
            };
        }
        SequenceFamily::GROWING
            .into_iter()
            .find(|f| f.kind() == record.kind)
            .ok_or(Error::UnknownFamily(record.kind))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn fibonacci(n: usize) -> u64 {
    let [mut a, mut b] = FIBONACCI_SEEDS;
    for _ in 1..n {
        (a, b) = (b, a + b);
    }
    a
}

fn motzkin(n: usize) -> u64 {
    let mut m = vec![MOTZKIN_SEEDS[0], MOTZKIN_SEEDS[1]];
    for i in 2..=n {
        let conv: u64 = (0..=i - 2).map(|j| m[j] * m[i - 2 - j]).sum();
        m.push(m[i - 1] + conv);
    }
    m[n]
}

/// Value of `family` at `n >= 3` (and at or past a constant's threshold).
pub fn family_value(family: SequenceFamily, n: usize) -> Result<u64> {
    if n < family.start() {
        return Err(Error::IndexOutOfRange {
            n,
            min: family.start(),
        });
    }
    let m = n as u64;
    Ok(match family {
        SequenceFamily::Constant { value, .. } => value,
        SequenceFamily::Linear => m,
        SequenceFamily::Fibonacci => fibonacci(n),
        SequenceFamily::Motzkin => motzkin(n),
        SequenceFamily::PowerOfTwo => 1 << (n - 1),
        SequenceFamily::PowerOfTwoPlusOne => (1 << (n - 2)) + 1,
        SequenceFamily::OnePlusBinomial => 1 + binomial(m, 2),
        SequenceFamily::CentralBinomial => binomial(m, m.div_ceil(2)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "families", rename_all = "snake_case")]
pub enum Identification {
    Match(SequenceFamily),
    /// Several families agree on the window; a longer sequence is needed.
    Ambiguous(Vec<SequenceFamily>),
    Unknown,
}

impl Identification {
    pub fn family(&self) -> Option<SequenceFamily> {
        match self {
            Identification::Match(f) => Some(*f),
            _ => None,
        }
    }
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::Match(family) => write!(f, "{family}"),
            Identification::Ambiguous(all) => {
                let names: Vec<String> = all.iter().map(ToString::to_string).collect();
                write!(f, "ambiguous: {}", names.join(" | "))
            }
            Identification::Unknown => f.write_str("unknown"),
        }
    }
}

/// Smallest `k` such that `counts[n]` is constant for all `n >= k`,
/// provided at least three terms agree.
fn constant_tail(counts: &[u64]) -> Option<SequenceFamily> {
    let last = *counts.last()?;
    let stable = counts.iter().rev().take_while(|&&c| c == last).count();
    (stable >= 3).then(|| SequenceFamily::Constant {
        value: last,
        from: counts.len() - stable + 1,
    })
}

/// Identifies the family followed by `seq` on `n = 3..=N` (`N >= 7`).
pub fn match_sequence(seq: &CountingSequence) -> Result<Identification> {
    let n_max = seq.max_n();
    if n_max < MIN_WINDOW_END {
        return Err(Error::WindowTooShort {
            required: MIN_WINDOW_END,
            got: n_max,
        });
    }
    let mut found: Vec<SequenceFamily> = SequenceFamily::GROWING
        .into_iter()
        .filter(|&f| {
            (WINDOW_START..=n_max).all(|n| family_value(f, n).ok() == seq.at(n))
        })
        .collect();
    found.extend(constant_tail(&seq.counts));
    Ok(match found.len() {
        0 => Identification::Unknown,
        1 => Identification::Match(found[0]),
        _ => Identification::Ambiguous(found),
    })
}
