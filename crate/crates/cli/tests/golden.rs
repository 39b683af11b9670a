//! Every subcommand against its checked-in output.  Regenerate the files
//! with `make golden` after an intentional output change.

use std::io::Write;

use assert_cmd::Command;
use predicates::str::contains;

fn bin() -> Command {
    let mut c = Command::cargo_bin("knotcover").unwrap();
    c.env_remove("KNOT_TABLE_PATH");
    c
}

#[test]
fn commands_match_golden_output() {
    let cases: &[(&[&str], &str)] = &[
        (&["alexander", "--dt", "4 6 2"], include_str!("golden/alexander_dt.txt")),
        (
            &["alexander", "--pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"],
            include_str!("golden/alexander_pd.txt"),
        ),
        (&["alexander", "--braid", "2; 1 1 1"], include_str!("golden/alexander_braid.txt")),
        (&["alexander", "--seifert", "[3, 2, 1, 0]"], include_str!("golden/alexander_seifert.txt")),
        (
            &["alexander", "--seifert", "[3, 2, 1, 0]", "--json"],
            include_str!("golden/alexander_seifert_json.txt"),
        ),
        (
            &["alexander", "--presentation", "tests/fixtures/exterior_presentation.txt"],
            include_str!("golden/alexander_presentation.txt"),
        ),
        (&["screen", "9_46"], include_str!("golden/screen_946.txt")),
        (&["screen", "9_46", "--json"], include_str!("golden/screen_946_json.txt")),
        (&["screen", "6_1"], include_str!("golden/screen_61.txt")),
        (&["screen", "9_46 # 9_46"], include_str!("golden/screen_sum.txt")),
        (&["scan-table"], include_str!("golden/scan_table.txt")),
        (&["scan-table", "--json"], include_str!("golden/scan_table_json.txt")),
        (&["present", "cover"], include_str!("golden/present_cover.txt")),
        (&["present", "exterior"], include_str!("golden/present_exterior.txt")),
        (&["present", "family", "--fill"], include_str!("golden/present_family_fill.txt")),
        (&["verify-946"], include_str!("golden/verify_946.txt")),
        (&["verify-946", "--json"], include_str!("golden/verify_946_json.txt")),
        (&["obstruction", "tests/fixtures/position.json"], include_str!("golden/obstruction.txt")),
        (
            &["obstruction", "tests/fixtures/position.json", "--json"],
            include_str!("golden/obstruction_json.txt"),
        ),
        (&["growth", "tests/fixtures/position.json", "--m", "4"], include_str!("golden/growth.txt")),
        (
            &["growth", "tests/fixtures/position.json", "--m", "4", "--json"],
            include_str!("golden/growth_json.txt"),
        ),
    ];
    for (args, want) in cases {
        bin().args(*args).assert().success().stdout(*want);
    }
}

#[test]
fn output_is_identical_across_runs() {
    let first = bin().args(["scan-table", "--json"]).output().unwrap();
    let second = bin().args(["scan-table", "--json"]).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn inline_json_and_file_agree() {
    let text = include_str!("fixtures/position.json");
    bin()
        .args(["obstruction", text])
        .assert()
        .success()
        .stdout(include_str!("golden/obstruction.txt"));
}

#[test]
fn assert_unique_passes_on_bundled_table() {
    bin().args(["scan-table", "--assert-unique"]).assert().success();
    // compatibility spelling
    bin().args(["scan-table", "--assert-paper"]).assert().success();
}

#[test]
fn assert_unique_fails_without_the_survivor() {
    let mut table = tempfile::NamedTempFile::new().unwrap();
    write!(
        table,
        "name,crossings,dt,alternating,genus,fibred,seifert\n\
         6_1,6,8 12 10 2 4 6,true,1,false,\"[1, 1, 0, -2]\"\n"
    )
    .unwrap();
    bin()
        .args(["scan-table", "--assert-unique"])
        .env("KNOT_TABLE_PATH", table.path())
        .assert()
        .code(1)
        .stderr(contains("unique survivor"));
}

#[test]
fn table_override_is_honoured() {
    let mut table = tempfile::NamedTempFile::new().unwrap();
    write!(
        table,
        "name,crossings,dt,alternating,genus,fibred,seifert\n\
         3_1,3,4 6 2,true,1,true,\"[-1, 1, 0, -1]\"\n"
    )
    .unwrap();
    // 9_46 exists only in the bundled table, so the override must lose it
    bin()
        .args(["screen", "9_46"])
        .env("KNOT_TABLE_PATH", table.path())
        .assert()
        .code(2);
    bin()
        .args(["screen", "3_1"])
        .env("KNOT_TABLE_PATH", table.path())
        .assert()
        .success()
        .stdout(contains("YES_FIBRED"));
}

#[test]
fn bad_input_exits_two() {
    bin().args(["alexander", "--dt", "4 6"]).assert().code(2);
    bin().args(["alexander", "--braid", "1 2 3"]).assert().code(2);
    bin().args(["screen", "99_999"]).assert().code(2);
    bin().args(["obstruction", "{\"beta1_X\": -1}"]).assert().code(2);
    bin()
        .args(["growth", "tests/fixtures/position.json", "--m", "0"])
        .assert()
        .code(2);
}

#[test]
fn usage_errors_exit_two_and_print_the_grammar() {
    bin().arg("no-such-command").assert().code(2).stderr(contains("Usage"));
    bin().arg("alexander").assert().code(2).stderr(contains("Usage"));
    // two input forms at once
    bin()
        .args(["alexander", "--dt", "4 6 2", "--braid", "2; 1 1 1"])
        .assert()
        .code(2);
}
