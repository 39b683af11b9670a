//! The checked-in table must match what the generator produces, so edits
//! to either side cannot drift apart silently.

use std::process::Command;

#[test]
fn bundled_table_matches_generator_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("regen.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_tablegen"))
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let generated = std::fs::read_to_string(&out).unwrap();
    let bundled = include_str!("../../core/data/knot_table.csv");
    assert_eq!(generated, bundled, "run `make table` and commit the result");
}
