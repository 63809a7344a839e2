//! Runs the bundled corpus end to end and checks the harness itself flags
//! wrong expectations.

use std::path::Path;

use intermul::corpus;
use intermul::dsl::Overrides;

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

#[test]
fn every_corpus_entry_passes() {
    let entries = corpus::load_dir(corpus_dir()).unwrap();
    assert!(entries.len() >= 35, "corpus unexpectedly small: {}", entries.len());
    for entry in &entries {
        assert!(!entry.expects.is_empty(), "{} has no expectations", entry.id);
        let out = corpus::run_entry(entry, &Overrides::default());
        assert!(out.pass, "{} failed: {:?}", entry.id, out.mismatches);
    }
}

#[test]
fn corpus_ids_are_unique_and_tagged() {
    let entries = corpus::load_dir(corpus_dir()).unwrap();
    let mut ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
    let before = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), before, "duplicate corpus ids");
    for e in &entries {
        assert!(!e.cite.is_empty(), "{} has an empty citation", e.id);
    }
}

#[test]
fn harness_flags_a_wrong_expectation() {
    let text = "# id: selftest\n\
                # source: definition\n\
                # cite: harness self-test with a deliberately wrong value\n\
                # expect: {\"chi\": 99}\n\
                ring S = QQ[x, y, z, w] grevlex;\n\
                chi(coker [[x, y]], coker [[z, w]]);\n";
    let entry = corpus::parse_entry(text, "selftest").unwrap();
    let out = corpus::run_entry(&entry, &Overrides::default());
    assert!(!out.pass);
    assert_eq!(out.mismatches.len(), 1);
    assert!(out.mismatches[0].contains("expected"));
}

#[test]
fn corpus_runs_are_deterministic() {
    let entries = corpus::load_dir(corpus_dir()).unwrap();
    for entry in entries.iter().filter(|e| e.id.starts_with("cm/")) {
        let a = corpus::run_entry(entry, &Overrides::default());
        let b = corpus::run_entry(entry, &Overrides::default());
        let fmt = |recs: &[serde_json::Value]| {
            recs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
        };
        assert_eq!(fmt(&a.records), fmt(&b.records), "{} is not deterministic", entry.id);
    }
}
