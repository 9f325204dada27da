use std::io::Write;
use std::process::{Command, Output};

fn cox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cox")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cartan_window_is_lower_triangle() {
    let o = cox(&["cartan", "--family", "a-infinity", "--window", "0..7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<String>> = text
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect();
    // Header row and column carry the vertex names.
    assert_eq!(rows.len(), 9);
    for (i, row) in rows[1..].iter().enumerate() {
        let values: Vec<&str> = row[1..].iter().map(String::as_str).collect();
        let expected: Vec<&str> = (0..8).map(|j| if j <= i { "1" } else { "0" }).collect();
        assert_eq!(values, expected, "row {i}");
    }
}

#[test]
fn inverse_suite_on_d_infinity() {
    let o = cox(&[
        "verify",
        "--family",
        "d-infinity",
        "--window",
        "-1..4",
        "--suite",
        "inverse",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "OK: left and right inverse identities hold on window"
    );
}

#[test]
fn coxeter_shift_on_za_infinity() {
    let o = cox(&[
        "apply",
        "--family",
        "z-a-infinity",
        "--vector",
        "1@0,2@3",
        "--direction",
        "forward",
        "--eval",
        "-2..6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1@1,2@4");
}

#[test]
fn every_suite_passes_on_families() {
    for family in ["a-infinity", "z-a-infinity", "d-infinity"] {
        for suite in ["inverse", "coxeter", "tau", "euler"] {
            let o = cox(&["verify", "--family", family, "--suite", suite]);
            assert_eq!(o.status.code(), Some(0), "{family} {suite}: {}", stdout(&o));
        }
    }
    for family in ["garland 1", "garland 2"] {
        let o = cox(&["verify", "--family", family, "--suite", "mobius"]);
        assert_eq!(o.status.code(), Some(0), "{family}: {}", stdout(&o));
    }
}

#[test]
fn input_errors_exit_with_two() {
    let o = cox(&["cartan", "--family", "no-such-family"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let mut file = std::env::temp_dir();
    file.push(format!("cox-cycle-{}.txt", std::process::id()));
    std::fs::File::create(&file)
        .unwrap()
        .write_all(b"kind quiver\narrow 0 1\narrow 1 0\n")
        .unwrap();
    let o = cox(&["cartan", "--file", file.to_str().unwrap()]);
    std::fs::remove_file(&file).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));

    let o = cox(&["apply", "--family", "a-infinity", "--vector", "1@@0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn translate_and_mesh_of_interval() {
    let o = cox(&[
        "tau",
        "--family",
        "a-infinity",
        "--interval",
        "1,3",
        "--direction",
        "inverse",
    ]);
    assert_eq!(stdout(&o).trim(), "1@0,1@1,1@2\tI[0,2]");
    let o = cox(&[
        "mesh",
        "--family",
        "a-infinity",
        "--interval",
        "1,2",
        "--end",
        "starting-from",
    ]);
    assert_eq!(stdout(&o).trim(), "0 -> I[1,2] -> I[0,2] + I[1,1] -> I[0,1] -> 0");
}

#[test]
fn knit_is_deterministic_and_dot_is_well_formed() {
    let args = ["knit", "--family", "a-infinity", "--steps", "6", "--format", "dot"];
    let a = stdout(&cox(&args));
    let b = stdout(&cox(&args));
    assert_eq!(a, b);
    assert!(a.starts_with("digraph"));
    assert!(a.trim_end().ends_with('}'));
    assert_eq!(a.matches('{').count(), a.matches('}').count());
}

#[test]
fn json_lines_parse() {
    let o = cox(&[
        "knit",
        "--family",
        "d-infinity",
        "--steps",
        "3",
        "--format",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn resolution_length_of_garland_junction() {
    let o = cox(&[
        "resolve",
        "--family",
        "garland 2",
        "--vertex",
        "1",
        "--side",
        "left",
        "--max-degree",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let degrees: Vec<&str> = text.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(degrees.last(), Some(&"3"));
}
