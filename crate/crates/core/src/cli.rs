//! Command-line front end.
//!
//! Exit codes: 0 when everything checked passes, 1 when a verification
//! fails, 2 for usage, parse or range errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::classify::{
    classify_all, dedupe_cross_product_classes, partition_into_symmetry_classes, random_oracle_checks,
    symmetry_invariance_checks, table_coverage, verify_table,
};
use crate::enumerate::{counting_sequence, list_avoiders};
use crate::error::{Error, Result};
use crate::lemmas::{negative_controls, verify_statements, MAX_LEMMA_LEN};
use crate::pattern::{occurrences, PatternSet, Permutation, VincularPattern};
use crate::report::{OutputFormat, Report, ResultRecord, RunConfig, Status, DEFAULT_MAX_N};
use crate::sequences::{match_sequence, MIN_WINDOW_END};
use crate::tables::TableData;

/// Overrides the default worker count.
pub const JOBS_ENV: &str = "VINCULAR_JOBS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Seeded subsets sampled by `verify all`.
pub const RANDOM_ORACLE_SUBSETS: usize = 200;
pub const RANDOM_SYMMETRY_SUBSETS: usize = 100;
const RANDOM_MAX_N: usize = 8;
/// Subset sizes swept by `verify all`.
pub const CLASSIFY_SIZES: [usize; 3] = [3, 4, 5];

#[derive(Debug, Parser)]
#[command(name = "vincular", version, about = "Vincular pattern avoidance: counting, classification and table verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Largest permutation length.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    /// text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    pub format: OutputFormat,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Skip the naive n! cross-check.
    #[arg(long, global = true)]
    pub no_oracle: bool,
    /// Table data file replacing the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    pub data: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Does a permutation contain a pattern? Lists occurrences.
    Check { permutation: String, pattern: String },
    /// Counts avoiders for n = 1..=max-n and names the family.
    Count {
        /// Comma-separated patterns; "" for none.
        #[arg(long, allow_hyphen_values = true)]
        patterns: String,
    },
    /// Lists avoiders of one length.
    List {
        #[arg(long, allow_hyphen_values = true)]
        patterns: String,
        #[arg(long)]
        n: usize,
    },
    /// Symmetry classes of k-subsets of the twelve length-three patterns.
    Classes {
        #[arg(long)]
        k: usize,
    },
    /// Counts and identifies every symmetry class of k-subsets.
    Classify {
        #[arg(long)]
        k: usize,
    },
    /// Verifies lemmas, tables or everything.
    #[command(args_conflicts_with_subcommands = true)]
    Verify {
        #[command(subcommand)]
        scope: Option<VerifyScope>,
        /// Shorthand for `verify table ID`.
        #[arg(long, value_name = "ID")]
        table: Option<u32>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum VerifyScope {
    /// Closure, implication and structure statements plus negative controls.
    Lemmas,
    /// Every row of one table.
    Table {
        #[arg(value_name = "ID", required_unless_present = "table")]
        id: Option<u32>,
        #[arg(long, conflicts_with = "id")]
        table: Option<u32>,
    },
    /// Symmetry-class deduplication of the constant-2 table.
    Dedupe7,
    /// Everything above, all tables, coverage and seeded random checks.
    All,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        let defaults = RunConfig::default();
        RunConfig {
            max_n: self.max_n,
            oracle_check: !self.no_oracle,
            workers: self.jobs.unwrap_or(defaults.workers),
            output_format: self.format,
            seed: self.seed,
        }
    }

    fn load_data(&self) -> Result<TableData> {
        match &self.data {
            Some(path) => TableData::from_path(path),
            None => Ok(TableData::embedded()),
        }
    }
}

/// Either a finished report or a plain payload for the lookup commands.
enum Output {
    Report(Report),
    Plain { text: String, json: serde_json::Value },
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    permutation: &'a Permutation,
    pattern: &'a VincularPattern,
    contains: bool,
    /// 1-based positions.
    occurrences: Vec<Vec<usize>>,
}

fn cmd_check(perm: &str, pattern: &str) -> Result<Output> {
    let perm: Permutation = perm.parse()?;
    let pattern: VincularPattern = pattern.parse()?;
    let occ = occurrences(&perm, &pattern);
    let mut text = if occ.is_empty() {
        format!("{perm} avoids {pattern}\n")
    } else {
        format!("{perm} contains {pattern}\n")
    };
    for o in &occ {
        let pos: Vec<String> = o.iter().map(ToString::to_string).collect();
        text.push_str(&format!("  ({})\n", pos.join(",")));
    }
    let json = serde_json::to_value(CheckOutput {
        permutation: &perm,
        pattern: &pattern,
        contains: !occ.is_empty(),
        occurrences: occ,
    })
    .expect("serializable");
    Ok(Output::Plain { text, json })
}

fn cmd_count(config: &RunConfig, patterns: &str) -> Result<Output> {
    let set = PatternSet::parse(patterns)?;
    let seq = counting_sequence(config.max_n, &set)?;
    let mut record = ResultRecord::new(set.to_string(), "count", Status::Pass);
    record.pattern_sets = vec![set];
    record.counts = seq.counts.clone();
    if seq.max_n() >= MIN_WINDOW_END {
        record.family = Some(match_sequence(&seq)?);
    }
    Ok(Output::Report(Report::new(config.clone(), vec![record])))
}

fn cmd_list(patterns: &str, n: usize) -> Result<Output> {
    let set = PatternSet::parse(patterns)?;
    let listed = list_avoiders(n, &set)?;
    let mut text = String::new();
    for p in &listed {
        text.push_str(&format!("{p}\n"));
    }
    text.push_str(&format!("{} permutations of length {n} avoid {set}\n", listed.len()));
    let json = serde_json::json!({ "n": n, "patterns": set, "avoiders": listed });
    Ok(Output::Plain { text, json })
}

fn cmd_classes(k: usize) -> Result<Output> {
    let classes = partition_into_symmetry_classes(k)?;
    let mut text = String::new();
    for c in &classes {
        let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
        text.push_str(&format!("{}\n", members.join("  ")));
    }
    text.push_str(&format!("{} classes of {k}-subsets\n", classes.len()));
    let json = serde_json::to_value(&classes).expect("serializable");
    Ok(Output::Plain { text, json })
}

fn cmd_classify(config: &RunConfig, data: &TableData, k: usize) -> Result<Output> {
    let report = classify_all(k, config.max_n, Some(data), config.oracle_check)?;
    let results = report.classes.iter().map(ResultRecord::from_class).collect();
    Ok(Output::Report(Report::new(config.clone(), results)))
}

fn lemma_results(config: &RunConfig, data: &TableData) -> Result<Vec<ResultRecord>> {
    let n = config.max_n.min(MAX_LEMMA_LEN);
    let mut out: Vec<ResultRecord> = verify_statements(data, n)?.iter().map(ResultRecord::from_lemma).collect();
    out.extend(negative_controls(n)?.iter().map(ResultRecord::from_negative_control));
    Ok(out)
}

fn table_results(config: &RunConfig, data: &TableData, id: u32) -> Result<Vec<ResultRecord>> {
    let check = verify_table(data, id, config.max_n, config.oracle_check)?;
    Ok(check.rows.iter().map(ResultRecord::from_row).collect())
}

fn cmd_verify(config: &RunConfig, data: &TableData, scope: &VerifyScope) -> Result<Output> {
    let mut results = Vec::new();
    match scope {
        VerifyScope::Lemmas => results = lemma_results(config, data)?,
        VerifyScope::Table { id, table } => {
            let id = id.or(*table).expect("clap requires one");
            results = table_results(config, data, id)?;
        }
        VerifyScope::Dedupe7 => results.push(ResultRecord::from_dedupe(&dedupe_cross_product_classes(data, 7)?)),
        VerifyScope::All => {
            results.extend(lemma_results(config, data)?);
            for id in data.table_ids() {
                results.extend(table_results(config, data, id)?);
            }
            results.push(ResultRecord::from_dedupe(&dedupe_cross_product_classes(data, 7)?));
            results.push(ResultRecord::from_coverage(&table_coverage(data, 3, &[1, 2])?));
            for k in CLASSIFY_SIZES {
                let report = classify_all(k, config.max_n.max(MIN_WINDOW_END), Some(data), config.oracle_check)?;
                results.extend(report.classes.iter().map(ResultRecord::from_class));
            }
            let n = config.max_n.min(RANDOM_MAX_N);
            if config.oracle_check {
                let checks = random_oracle_checks(config.seed, RANDOM_ORACLE_SUBSETS, n)?;
                results.extend(checks.iter().map(ResultRecord::from_random));
            }
            let checks = symmetry_invariance_checks(config.seed, RANDOM_SYMMETRY_SUBSETS, n)?;
            results.extend(checks.iter().map(ResultRecord::from_random));
        }
    }
    Ok(Output::Report(Report::new(config.clone(), results)))
}

fn execute(cli: &Cli, config: &RunConfig) -> Result<Output> {
    match &cli.command {
        Command::Check { permutation, pattern } => cmd_check(permutation, pattern),
        Command::Count { patterns } => cmd_count(config, patterns),
        Command::List { patterns, n } => cmd_list(patterns, *n),
        Command::Classes { k } => cmd_classes(*k),
        Command::Classify { k } => cmd_classify(config, &cli.global.load_data()?, *k),
        Command::Verify { scope, table } => {
            let scope = match (scope, table) {
                (Some(scope), _) => scope.clone(),
                (None, Some(id)) => VerifyScope::Table { id: Some(*id), table: None },
                (None, None) => {
                    return Err(Error::Usage("verify needs a scope: lemmas, table ID, dedupe7 or all".into()))
                }
            };
            cmd_verify(config, &cli.global.load_data()?, &scope)
        }
    }
}

fn render_plain(format: OutputFormat, text: String, json: serde_json::Value) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&json).expect("serializable") + "\n",
        _ => text,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// to `out` / `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    let config = cli.global.config();
    if let Err(e) = config.validate() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(&cli, &config)) {
        Ok(Output::Report(report)) => {
            let _ = out.write_all(report.render().as_bytes());
            if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Ok(Output::Plain { text, json }) => {
            let _ = out.write_all(render_plain(config.output_format, text, json).as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
