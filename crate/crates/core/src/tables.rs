//! Table data: claimed counting families for sets of three, four and five
//! length-three patterns, together with the closure, implication and
//! structure statements used to derive them.
//!
//! The data ships inside the crate (`data/tables.toml`) and can be replaced
//! at run time with a file of the same shape. Rows that stand for several
//! sets are expanded into [`RowInstance`]s on load.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemmas::{CrossProduct, StructureTemplate};
use crate::pattern::{PatternSet, VincularPattern};
use crate::sequences::{Identification, SequenceFamily};

pub const EMBEDDED_TABLES: &str = include_str!("../data/tables.toml");

const FORMAT_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// Claimed families.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    Growing { family: SequenceFamily },
    /// `threshold` is `None` when the table leaves it unspecified.
    Constant { value: u64, threshold: Option<usize> },
}

/// A family as printed in a table, plus its parsed meaning.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedFamily {
    pub text: String,
    pub claim: Claim,
}

impl ClaimedFamily {
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let growing = |family| Claim::Growing { family };
        let claim = match compact.as_str() {
            "{n}" => growing(SequenceFamily::Linear),
            "{F_n}" => growing(SequenceFamily::Fibonacci),
            "{M_n}" => growing(SequenceFamily::Motzkin),
            "{2^{n-1}}" => growing(SequenceFamily::PowerOfTwo),
            // Printed without the caret in one table.
            "{2^{n-2}+1}" | "{2{n-2}+1}" => growing(SequenceFamily::PowerOfTwoPlusOne),
            "{1+C(n,2)}" => growing(SequenceFamily::OnePlusBinomial),
            "{C(n,ceil(n/2))}" => growing(SequenceFamily::CentralBinomial),
            other => parse_constant(other).ok_or_else(|| Error::UnknownFamily(text.to_string()))?,
        };
        Ok(ClaimedFamily {
            text: text.to_string(),
            claim,
        })
    }

    /// Does a matcher result confirm this claim?
    pub fn confirmed_by(&self, found: &Identification) -> bool {
        match (self.claim, found) {
            (Claim::Growing { family }, Identification::Match(f)) => family == *f,
            (Claim::Constant { value, threshold }, Identification::Match(SequenceFamily::Constant { value: v, from })) => {
                value == *v && threshold.is_none_or(|t| t == *from)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.claim, Claim::Constant { value: 0, .. })
    }
}

impl fmt::Display for ClaimedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// `{c}_{n>=k}` where `k` is a number or the literal letter `k`.
fn parse_constant(text: &str) -> Option<Claim> {
    let (value, threshold) = text.strip_prefix('{')?.split_once("}_{n>=")?;
    let threshold = threshold.strip_suffix('}')?;
    let value = value.parse().ok()?;
    let threshold = match threshold {
        "k" => None,
        t => Some(t.parse().ok()?),
    };
    Some(Claim::Constant { value, threshold })
}

// ---------------------------------------------------------------------------
// Raw file layout.

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    #[serde(default)]
    closure: Vec<RawClosure>,
    #[serde(default)]
    implication: Vec<RawImplication>,
    #[serde(default)]
    structure: Vec<RawStructure>,
    #[serde(default)]
    table: Vec<RawTable>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClosure {
    id: String,
    premise: PatternSet,
    conclusion: VincularPattern,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImplication {
    id: String,
    from: VincularPattern,
    to: VincularPattern,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    id: String,
    columns: Vec<Vec<VincularPattern>>,
    #[serde(default)]
    extra: Vec<VincularPattern>,
    template: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    id: u32,
    arity: usize,
    caption: String,
    family: Option<String>,
    classes: Option<usize>,
    rows: Vec<RawRow>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    name: Option<String>,
    family: Option<String>,
    proposition: Option<String>,
    patterns: Option<PatternSet>,
    base: Option<String>,
    bases: Option<Vec<PatternSet>>,
    add: Option<VincularPattern>,
    choose: Option<Vec<VincularPattern>>,
    columns: Option<Vec<Vec<VincularPattern>>>,
    structure: Option<String>,
    remark: Option<String>,
}

// ---------------------------------------------------------------------------
// Loaded model.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureStatement {
    pub id: String,
    pub premise: PatternSet,
    pub conclusion: VincularPattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationStatement {
    pub id: String,
    pub from: VincularPattern,
    pub to: VincularPattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureStatement {
    pub id: String,
    pub generator: CrossProduct,
    pub template: StructureTemplate,
}

/// How a row's set was obtained from an earlier one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    /// Closure statement cited, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proposition: Option<String>,
    pub base_label: String,
    pub base: PatternSet,
    /// `row \ base` when that is a single pattern.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub added: Option<VincularPattern>,
}

/// One concrete pattern set from a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowInstance {
    pub label: String,
    pub table_id: u32,
    /// 1-based row of the table this set comes from.
    pub row: usize,
    pub patterns: PatternSet,
    pub claimed: ClaimedFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<Derivation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureTemplate>,
    /// Free-text remark attached to the row in the data file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remark: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub id: u32,
    pub arity: usize,
    pub caption: String,
    /// Number of rows as printed (generator rows count once).
    pub printed_rows: usize,
    /// Number of distinct symmetry classes the table is said to hold.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_classes: Option<usize>,
    pub instances: Vec<RowInstance>,
    /// Cross-product generator per printed row, for tables built that way.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<CrossProduct>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableData {
    pub closures: Vec<ClosureStatement>,
    pub implications: Vec<ImplicationStatement>,
    pub structures: Vec<StructureStatement>,
    pub tables: Vec<Table>,
}

fn data_err(msg: impl Into<String>) -> Error {
    Error::Data(msg.into())
}

impl TableData {
    /// The data compiled into the crate.
    pub fn embedded() -> Self {
        TableData::parse(EMBEDDED_TABLES).expect("embedded table data is valid")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        TableData::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| data_err(e.to_string()))?;
        if raw.format_version != FORMAT_VERSION {
            return Err(data_err(format!(
                "format_version {} (expected {FORMAT_VERSION})",
                raw.format_version
            )));
        }
        let closures: Vec<ClosureStatement> = raw
            .closure
            .into_iter()
            .map(|c| ClosureStatement {
                id: c.id,
                premise: c.premise,
                conclusion: c.conclusion,
            })
            .collect();
        let implications = raw
            .implication
            .into_iter()
            .map(|i| ImplicationStatement {
                id: i.id,
                from: i.from,
                to: i.to,
            })
            .collect();
        let structures: Vec<StructureStatement> = raw
            .structure
            .into_iter()
            .map(|s| {
                Ok(StructureStatement {
                    id: s.id,
                    generator: CrossProduct {
                        columns: s.columns,
                        extra: s.extra,
                    },
                    template: s.template.parse()?,
                })
            })
            .collect::<Result<_>>()?;

        let mut named: BTreeMap<String, PatternSet> = BTreeMap::new();
        let mut tables = Vec::with_capacity(raw.table.len());
        let mut raw_tables = raw.table;
        raw_tables.sort_by_key(|t| t.id);
        for raw_table in raw_tables {
            let table = build_table(raw_table, &mut named, &closures, &structures)?;
            tables.push(table);
        }
        Ok(TableData {
            closures,
            implications,
            structures,
            tables,
        })
    }

    pub fn table(&self, id: u32) -> Result<&Table> {
        self.tables.iter().find(|t| t.id == id).ok_or(Error::MissingTable(id))
    }

    pub fn table_ids(&self) -> Vec<u32> {
        self.tables.iter().map(|t| t.id).collect()
    }

    pub fn instances(&self) -> impl Iterator<Item = &RowInstance> + '_ {
        self.tables.iter().flat_map(|t| t.instances.iter())
    }

    pub fn closure(&self, id: &str) -> Option<&ClosureStatement> {
        self.closures.iter().find(|c| c.id == id)
    }

    pub fn structure(&self, id: &str) -> Option<&StructureStatement> {
        self.structures.iter().find(|s| s.id == id)
    }
}

fn lookup<'a>(named: &'a BTreeMap<String, PatternSet>, name: &str) -> Result<&'a PatternSet> {
    named.get(name).ok_or_else(|| data_err(format!("unknown base {name:?}")))
}

fn derivation(proposition: Option<String>, base_label: String, base: PatternSet, row: &PatternSet) -> Derivation {
    let diff = row.difference(&base);
    let added = (diff.len() == 1).then(|| diff.iter().next().cloned()).flatten();
    Derivation {
        proposition,
        base_label,
        base,
        added,
    }
}

fn build_table(
    raw: RawTable,
    named: &mut BTreeMap<String, PatternSet>,
    closures: &[ClosureStatement],
    structures: &[StructureStatement],
) -> Result<Table> {
    let table_id = raw.id;
    let ctx = |row: usize, msg: &str| data_err(format!("table {table_id} row {row}: {msg}"));
    let mut instances = Vec::new();
    let mut generators = Vec::new();

    for (i, row) in raw.rows.into_iter().enumerate() {
        let row_no = i + 1;
        let family_text = row
            .family
            .as_deref()
            .or(raw.family.as_deref())
            .ok_or_else(|| ctx(row_no, "no family"))?;
        let claimed = ClaimedFamily::parse(family_text)?;
        if let Some(p) = &row.proposition {
            if !closures.iter().any(|c| &c.id == p) {
                return Err(ctx(row_no, &format!("unknown proposition {p:?}")));
            }
        }
        let remark = row.remark.clone();
        let mut push = |label: String, patterns: PatternSet, derivation: Option<Derivation>, structure| {
            instances.push(RowInstance {
                label,
                table_id,
                row: row_no,
                patterns,
                claimed: claimed.clone(),
                derivation,
                structure,
                remark: remark.clone(),
            });
        };

        if let Some(patterns) = row.patterns {
            let label = row.name.clone().unwrap_or_else(|| format!("T{table_id}.{row_no}"));
            let deriv = match &row.base {
                Some(b) => Some(derivation(row.proposition.clone(), b.clone(), lookup(named, b)?.clone(), &patterns)),
                None => None,
            };
            if let Some(name) = &row.name {
                named.insert(name.clone(), patterns.clone());
            }
            push(label, patterns, deriv, None);
        } else if let Some(columns) = row.columns {
            let structure_id = row.structure.ok_or_else(|| ctx(row_no, "columns without structure"))?;
            let statement = structures
                .iter()
                .find(|s| s.id == structure_id)
                .ok_or_else(|| ctx(row_no, &format!("unknown structure {structure_id:?}")))?;
            let generator = CrossProduct { columns, extra: vec![] };
            for (j, set) in generator.expand().into_iter().enumerate() {
                push(format!("T{table_id}.{row_no}.{}", j + 1), set, None, Some(statement.template));
            }
            generators.push(generator);
        } else if let Some(choose) = row.choose {
            let base_name = row.base.ok_or_else(|| ctx(row_no, "choose without base"))?;
            let base = lookup(named, &base_name)?.clone();
            for p in choose {
                let set = base.with(p.clone());
                let label = format!("{base_name}+{p}");
                let deriv = derivation(row.proposition.clone(), base_name.clone(), base.clone(), &set);
                push(label, set, Some(deriv), None);
            }
        } else if let Some(bases) = row.bases {
            let add = row.add.ok_or_else(|| ctx(row_no, "bases without add"))?;
            for (j, base) in bases.into_iter().enumerate() {
                let set = base.with(add.clone());
                let label = format!("T{table_id}.{row_no}.{}", j + 1);
                let deriv = derivation(row.proposition.clone(), base.to_string(), base, &set);
                push(label, set, Some(deriv), None);
            }
        } else if let Some(add) = row.add {
            let base_name = row.base.ok_or_else(|| ctx(row_no, "add without base"))?;
            let base = lookup(named, &base_name)?.clone();
            let set = base.with(add.clone());
            let label = row.name.clone().unwrap_or_else(|| format!("{base_name}+{add}"));
            if let Some(name) = &row.name {
                named.insert(name.clone(), set.clone());
            }
            let deriv = derivation(row.proposition.clone(), base_name, base, &set);
            push(label, set, Some(deriv), None);
        } else {
            return Err(ctx(row_no, "row has no pattern source"));
        }
    }

    for inst in &instances {
        if inst.patterns.len() != raw.arity {
            return Err(data_err(format!(
                "{}: {} has {} patterns, table arity is {}",
                inst.label,
                inst.patterns,
                inst.patterns.len(),
                raw.arity
            )));
        }
        if !inst.patterns.within_length_three() {
            return Err(data_err(format!("{}: pattern outside the twelve", inst.label)));
        }
    }

    Ok(Table {
        id: table_id,
        arity: raw.arity,
        caption: raw.caption,
        printed_rows: instances.iter().map(|i| i.row).max().unwrap_or(0),
        claimed_classes: raw.classes,
        instances,
        generators,
    })
}
