use vincular::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use vincular::report::Report;

fn vincular(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("vincular").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn check_reports_occurrences() {
    let (code, out, _) = vincular(&["check", "153426", "32-14"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("contains") && out.contains("(2,3,5,6)"), "{out}");
    let (code, out, _) = vincular(&["check", "12", "1-23"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("avoids"));
    let (_, out, _) = vincular(&["check", "153426", "3-214", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["contains"], true);
}

#[test]
fn parse_errors_exit_two() {
    let (code, _, err) = vincular(&["check", "1x3", "1-23"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("position 2"), "{err}");
    assert_eq!(vincular(&["check", "123", "1--2"]).0, EXIT_USAGE);
    assert_eq!(vincular(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(vincular(&["count", "--patterns", "1-23", "--max-n", "11"]).0, EXIT_USAGE);
    assert_eq!(vincular(&["count", "--patterns", "1-23", "--max-n", "13", "--no-oracle"]).0, EXIT_USAGE);
    assert_eq!(vincular(&["verify", "table", "11"]).0, EXIT_USAGE);
    assert_eq!(vincular(&["classes", "--k", "7"]).0, EXIT_USAGE);
    assert_eq!(vincular(&["verify", "lemmas", "--data", "/nonexistent/tables.toml"]).0, EXIT_USAGE);
    assert_eq!(vincular(&["--help"]).0, EXIT_OK);
}

#[test]
fn count_names_the_family() {
    let (code, out, _) = vincular(&["count", "--max-n", "8", "--patterns", "1-23,2-13,3-12"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("[1, 2, 3, 4, 5, 6, 7, 8]") && out.contains("{n}"), "{out}");
    let (_, out, _) = vincular(&["count", "--max-n", "6", "--patterns", ""]);
    assert!(out.contains("[1, 2, 6, 24, 120, 720]"), "{out}");
    let (_, out, _) = vincular(&["count", "--max-n", "8", "--patterns", "1-23,23-1,3-12"]);
    assert!(out.contains("[1, 2, 3, 5, 9, 17, 33, 65]") && out.contains("{2^(n-2)+1}"), "{out}");
}

#[test]
fn list_and_classes() {
    let (code, out, _) = vincular(&["list", "--n", "5", "--patterns", "12-3,2-13,2-31,32-1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().take(2).collect::<Vec<_>>(), ["15243", "51423"]);
    let (_, out, _) = vincular(&["classes", "--k", "3"]);
    assert!(out.trim_end().ends_with("55 classes of 3-subsets"));
}

#[test]
fn verify_scopes() {
    let (code, out, _) = vincular(&["verify", "lemmas"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("summary: 21 pass, 0 fail"));
    let (code, out, _) = vincular(&["verify", "table", "3", "--no-oracle"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("summary: 38 pass, 0 fail"));
    let (code, _, _) = vincular(&["verify", "--table", "4"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = vincular(&["verify", "dedupe7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("52 raw sets, 42 distinct symmetry classes"));
    // The two misprinted rows make this table fail.
    let (code, out, _) = vincular(&["verify", "table", "9", "--no-oracle"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("summary: 72 pass, 2 fail"), "{out}");
}

#[test]
fn classify_k3_passes() {
    let (code, out, _) = vincular(&["classify", "--k", "3", "--format", "json", "--no-oracle"]);
    assert_eq!(code, EXIT_OK);
    let report = Report::from_json(&out).unwrap();
    assert_eq!(report.results.len(), 55);
    assert_eq!(report.summary.pass, 55);
}

#[test]
fn jobs_come_from_flag_or_environment() {
    let (_, out, _) = vincular(&["count", "--patterns", "1-23", "--max-n", "7", "--jobs", "3", "--format", "json"]);
    assert_eq!(Report::from_json(&out).unwrap().config.workers, 3);
    assert_eq!(vincular(&["count", "--patterns", "1-23", "--jobs", "0"]).0, EXIT_USAGE);
}

#[test]
fn csv_has_a_row_per_length() {
    let (_, out, _) = vincular(&["count", "--patterns", "1-23,2-13,3-12", "--max-n", "7", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "id,kind,status,pattern_sets,family,n,count");
    assert_eq!(lines.len(), 8);
    assert!(lines[7].ends_with(",7,7"));
}
