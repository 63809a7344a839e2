//! Bundled example corpus: `.sm` programs with tagged expected outcomes,
//! loaded from a directory tree and compared record-by-record against engine
//! output.

use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::dsl::{self, Overrides};
use crate::error::{EngineError, Result};

/// One corpus program: its id, provenance tag, citation, source text and the
/// expected (partial) JSON records, one per command in order.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub source_tag: String,
    pub cite: String,
    pub program: String,
    pub expects: Vec<Value>,
}

const SOURCE_TAGS: [&str; 3] = ["literature", "derived", "definition"];

/// Parses the `# key: value` header of a corpus file. Untagged entries are
/// rejected.
pub fn parse_entry(text: &str, origin: &str) -> Result<CorpusEntry> {
    let mut id = None;
    let mut source_tag = None;
    let mut cite = None;
    let mut expects = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        let Some(rest) = line.strip_prefix('#') else { continue };
        let rest = rest.trim_start();
        if let Some(v) = rest.strip_prefix("id:") {
            id = Some(v.trim().to_string());
        } else if let Some(v) = rest.strip_prefix("source:") {
            source_tag = Some(v.trim().to_string());
        } else if let Some(v) = rest.strip_prefix("cite:") {
            cite = Some(v.trim().to_string());
        } else if let Some(v) = rest.strip_prefix("expect:") {
            let val: Value = serde_json::from_str(v.trim()).map_err(|e| {
                EngineError::Config(format!("{origin}: bad expect line: {e}"))
            })?;
            expects.push(val);
        }
    }
    let id = id.ok_or_else(|| EngineError::Config(format!("{origin}: missing '# id:' tag")))?;
    let source_tag = source_tag
        .ok_or_else(|| EngineError::Config(format!("{origin}: missing '# source:' tag")))?;
    if !SOURCE_TAGS.contains(&source_tag.as_str()) {
        return Err(EngineError::Config(format!(
            "{origin}: source tag must be one of {SOURCE_TAGS:?}"
        )));
    }
    let cite =
        cite.ok_or_else(|| EngineError::Config(format!("{origin}: missing '# cite:' tag")))?;
    Ok(CorpusEntry { id, source_tag, cite, program: text.to_string(), expects })
}

/// Loads every `.sm` file under `dir` (recursively), sorted by id.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    if !dir.is_dir() {
        return Err(EngineError::Config(format!(
            "corpus directory not found: {}",
            dir.display()
        )));
    }
    let mut entries = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        let rd = fs::read_dir(&d)
            .map_err(|e| EngineError::Config(format!("{}: {e}", d.display())))?;
        for item in rd {
            let item = item.map_err(|e| EngineError::Config(e.to_string()))?;
            let path = item.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().map(|e| e == "sm") == Some(true) {
                let text = fs::read_to_string(&path)
                    .map_err(|e| EngineError::Config(format!("{}: {e}", path.display())))?;
                entries.push(parse_entry(&text, &path.display().to_string())?);
            }
        }
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(entries)
}

/// True when every field of `expect` is present and equal in `got`
/// (recursively for nested objects; arrays and scalars compare exactly).
pub fn matches_expectation(expect: &Value, got: &Value) -> bool {
    match (expect, got) {
        (Value::Object(e), Value::Object(g)) => e
            .iter()
            .all(|(k, v)| g.get(k).map(|gv| matches_expectation(v, gv)) == Some(true)),
        _ => expect == got,
    }
}

/// Outcome of running one corpus entry.
#[derive(Debug, Clone)]
pub struct EntryOutcome {
    pub id: String,
    pub cite: String,
    pub pass: bool,
    pub mismatches: Vec<String>,
    pub records: Vec<Value>,
}

pub fn run_entry(entry: &CorpusEntry, overrides: &Overrides) -> EntryOutcome {
    let session = match dsl::parse_program(&entry.program, overrides) {
        Ok(s) => s,
        Err(e) => {
            return EntryOutcome {
                id: entry.id.clone(),
                cite: entry.cite.clone(),
                pass: false,
                mismatches: vec![format!("parse failure: {e}")],
                records: Vec::new(),
            }
        }
    };
    let out = dsl::run_session(&session);
    let mut mismatches = Vec::new();
    if entry.expects.len() != out.records.len() {
        mismatches.push(format!(
            "expected {} records, got {}",
            entry.expects.len(),
            out.records.len()
        ));
    } else {
        for (i, (e, g)) in entry.expects.iter().zip(&out.records).enumerate() {
            if !matches_expectation(e, g) {
                mismatches.push(format!("record {i}: expected {e}, got {g}"));
            }
        }
    }
    EntryOutcome {
        id: entry.id.clone(),
        cite: entry.cite.clone(),
        pass: mismatches.is_empty(),
        mismatches,
        records: out.records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn untagged_entries_are_rejected() {
        let text = "# id: demo\nring S = QQ[x] grevlex;\ndim(coker [[x]]);\n";
        assert!(parse_entry(text, "demo").is_err());
    }

    #[test]
    fn expectation_matching_is_a_subset_check() {
        let got = json!({"cmd": "chi", "chi": 2, "extra": [1, 2]});
        assert!(matches_expectation(&json!({"chi": 2}), &got));
        assert!(matches_expectation(&json!({}), &got));
        assert!(!matches_expectation(&json!({"chi": 3}), &got));
        assert!(!matches_expectation(&json!({"missing": 1}), &got));
    }

    #[test]
    fn entries_run_and_compare() {
        let text = "# id: demo\n\
                    # source: definition\n\
                    # cite: transverse coordinate planes\n\
                    # expect: {\"chi\": 1}\n\
                    ring S = QQ[x, y, z, w] grevlex;\n\
                    chi(coker [[x, y]], coker [[z, w]]);\n";
        let entry = parse_entry(text, "demo").unwrap();
        let out = run_entry(&entry, &Overrides::default());
        assert!(out.pass, "{:?}", out.mismatches);
    }

    #[test]
    fn wrong_expectations_are_reported() {
        let text = "# id: demo\n\
                    # source: definition\n\
                    # cite: transverse coordinate planes\n\
                    # expect: {\"chi\": 5}\n\
                    ring S = QQ[x, y, z, w] grevlex;\n\
                    chi(coker [[x, y]], coker [[z, w]]);\n";
        let entry = parse_entry(text, "demo").unwrap();
        let out = run_entry(&entry, &Overrides::default());
        assert!(!out.pass);
        assert_eq!(out.mismatches.len(), 1);
    }
}
