mod common;

use common::{brute_list, pat, perm, set};
use vincular::lemmas::{
    expected_structure, negative_controls, verify_closure, verify_containment_implication, verify_statements,
    StructureTemplate,
};
use vincular::tables::TableData;
use vincular::SymmetryOp;

#[test]
fn every_statement_holds_to_nine() {
    let data = TableData::embedded();
    let records = verify_statements(&data, 9).unwrap();
    assert_eq!(records.len(), 8 + 4 + 7);
    for r in &records {
        assert!(r.holds, "{} fails with {:?}", r.id, r.witness);
        assert_eq!(r.verified_up_to, 9);
    }
}

#[test]
fn negative_controls_fail_at_the_documented_witnesses() {
    let controls = negative_controls(9).unwrap();
    assert!(controls.iter().all(|c| c.confirmed()));
    // 2314: the 1-23 class admits it, and 23 followed by 4 is a 12-3.
    let w = perm("2314");
    assert!(vincular::avoids_all(&w, &set("1-23")));
    assert!(vincular::contains(&w, &pat("12-3")));
    // 3142: contains 2-31 at (1,3,4) and has no 23-1.
    let w = perm("3142");
    assert!(vincular::occurrences(&w, &pat("2-31")).contains(&vec![1, 3, 4]));
    assert!(!vincular::contains(&w, &pat("23-1")));
}

#[test]
fn witnesses_are_least_by_brute_force() {
    // Nothing shorter or lexicographically smaller breaks the statement.
    let base = set("1-23");
    let fails = |p: &vincular::Permutation| vincular::contains(p, &pat("12-3"));
    for n in 1..=3 {
        assert!(!brute_list(n, &base).iter().any(fails));
    }
    let first = brute_list(4, &base).into_iter().find(fails).unwrap();
    assert_eq!(verify_closure(&base, &pat("12-3"), 8).unwrap().witness, Some(first));

    let q = set("23-1");
    let breaks = |p: &vincular::Permutation| vincular::contains(p, &pat("2-31"));
    let first = (1..=6).find_map(|n| brute_list(n, &q).into_iter().find(breaks)).unwrap();
    assert_eq!(verify_containment_implication(&pat("2-31"), &pat("23-1"), 8).unwrap().witness, Some(first));
}

#[test]
fn closures_transport_under_symmetry() {
    let data = TableData::embedded();
    for c in &data.closures {
        for op in SymmetryOp::ALL {
            let premise = op.apply_to_set(&c.premise);
            let conclusion = op.apply_to_pattern(&c.conclusion);
            assert!(verify_closure(&premise, &conclusion, 8).unwrap().holds, "{} under {op}", c.id);
        }
    }
}

#[test]
fn implications_are_images_of_each_other() {
    let data = TableData::embedded();
    let first = &data.implications[0];
    let mut images: Vec<(String, String)> = SymmetryOp::ALL
        .iter()
        .map(|op| (op.apply_to_pattern(&first.from).to_string(), op.apply_to_pattern(&first.to).to_string()))
        .collect();
    let mut listed: Vec<(String, String)> =
        data.implications.iter().map(|i| (i.from.to_string(), i.to.to_string())).collect();
    images.sort();
    listed.sort();
    assert_eq!(images, listed);
}

#[test]
fn structures_match_brute_force_listing() {
    let data = TableData::embedded();
    for s in &data.structures {
        for p in s.generator.expand() {
            for n in 3..=7 {
                assert_eq!(brute_list(n, &p), expected_structure(s.template, n).unwrap(), "{} {p} n={n}", s.id);
            }
        }
    }
}

#[test]
fn zigzag_shapes() {
    let text = |n| -> Vec<String> {
        expected_structure(StructureTemplate::ZigzagPair, n).unwrap().iter().map(ToString::to_string).collect()
    };
    assert_eq!(text(3), ["132", "312"]);
    assert_eq!(text(6), ["162534", "615243"]);
    assert_eq!(text(7), ["1726354", "7162534"]);
}
