use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_central-fourier"))
        .args(args)
        .env_remove("CENTRAL_FOURIER_FIXTURES")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn documented_outputs() {
    let o = run(&["am", "dihedral:16", "--which", "za"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "43/16 (2.687500000000)");

    let o = run(&["verify", "sym:3", "thm-2.2"]);
    assert_eq!(stdout(&o).trim(), "applicable: yes; closed=7/3 direct_za=7/3 direct_zl=7/3 equal=yes");

    let text = stdout(&run(&["am", "sym:3", "--which", "all"]));
    for want in ["AMZA", "7/3", "AMZL", "ass", "5/3"] {
        assert!(text.contains(want), "{text}");
    }
}

#[test]
fn exit_codes_and_single_line_errors() {
    for (args, code, tag) in [
        (vec!["am", "bogus:3"], 2, "error[E_"),
        (vec!["nosuch"], 2, "error[E_USAGE]"),
        (vec!["am", "sym:3", "--which", "nope"], 2, "error[E_USAGE]"),
        (vec!["am", "aff:4"], 1, "error[E_"),
        (vec!["--max-order", "10", "am", "sym:4"], 1, "error[E_"),
        (vec!["chartab", "perm:does-not-exist.perm.json"], 1, "error[E_"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        let err = stderr(&o);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with(tag), "{args:?}: {err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["chartab", "sl2:3"], vec!["--format", "json", "am", "heisenberg:3"], vec!["verify", "dihedral:8"]] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_and_csv_modes() {
    let o = run(&["--format", "json", "am", "sl2:3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["amza"]["exact"], "39/8");
    assert_eq!(v["amzl"]["exact"], "5/1");

    let o = run(&["--format", "json", "verify", "sym:3", "thm-2.2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["applicable"], true);

    let o = run(&["--format", "csv", "survey", "sym:3", "dihedral:8"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("label,order,amza,amzl,ass,equal_flag"));
    assert_eq!(lines.next(), Some("sym:3,6,7/3,7/3,5/3,true"));
    assert_eq!(lines.next(), Some("dihedral:8,8,7/4,7/4,11/8,true"));
}

#[test]
fn config_file_and_fixture_paths() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cf.toml");
    std::fs::write(
        &cfg,
        format!("format = \"json\"\ntolerance_exponent = 40\nfixture_paths = [{:?}]\n", fixtures().display().to_string()),
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = run(&["--config", cfg, "am", "perm:sg_32_43.perm.json", "--which", "za"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exact"], "83/32");

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "tolerance_exponent = 3\n").unwrap();
    let o = run(&["--config", bad.to_str().unwrap(), "am", "sym:3"]);
    assert_eq!(o.status.code(), Some(2));

    let unknown = dir.path().join("unknown.toml");
    std::fs::write(&unknown, "colour = 1\n").unwrap();
    assert_eq!(run(&["--config", unknown.to_str().unwrap(), "am", "sym:3"]).status.code(), Some(2));
}

#[test]
fn quotient_and_hypergroup_commands() {
    let fixture = fixtures().join("sg_192_1022.perm.json");
    let o = run(&["quotient", fixture.to_str().unwrap(), "--marked", "N"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("497/32") && text.contains("529/64") && text.contains("1727/128"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let ctbl = dir.path().join("sl2.ctbl.json");
    let t = central_fourier::chartab::character_table(&central_fourier::group::make_group("sl2:3").unwrap()).unwrap();
    central_fourier::catalog::save_chartable(&t, &ctbl).unwrap();
    let path = ctbl.to_str().unwrap();
    assert!(stdout(&run(&["hypergroup", path, "--construction", "conj"])).contains("AM = 5 "));
    assert!(stdout(&run(&["hypergroup", path, "--construction", "dual"])).contains("AM = 39/8"));
}

#[test]
fn survey_appends_to_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("runs.jsonl");
    let s = store.to_str().unwrap();
    assert!(run(&["survey", "sym:3", "--out", s]).status.success());
    assert!(run(&["survey", "quaternion:8", "sl2:3", "--out", s]).status.success());
    let records = central_fourier::catalog::read_records(Path::new(&store)).unwrap();
    let labels: Vec<&str> = records.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, ["sym:3", "quaternion:8", "sl2:3"]);
    assert!(!records[2].equal_flag);
}
