use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use oshlab_cli::{FamilyDocument, SuiteReport};

fn oshlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oshlab"))
        .args(args)
        .env_remove("OSHLAB_MAX_GROUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn closures_examples() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"n":2,"sets":[[1],[2]]}"#);
    let o = oshlab(&["closures", "osh-shift", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"n\":2,\"sets\":[[],[2]]}\n");
    assert_eq!(
        stdout(&oshlab(&["closures", "osh-direct", &f])),
        "{\"n\":2,\"sets\":[[],[2]]}\n"
    );
    assert_eq!(
        stdout(&oshlab(&["closures", "st", &f])),
        "{\"n\":2,\"sets\":[[]]}\n"
    );
    let p2 = write(
        dir.path(),
        "p2.json",
        r#"{"n":2,"sets":[[],[1],[2],[1,2]]}"#,
    );
    assert_eq!(
        stdout(&oshlab(&["closures", "sh", &p2])),
        "{\"n\":2,\"sets\":[[],[1],[2],[1,2]]}\n"
    );
    assert_eq!(
        stdout(&oshlab(&["closures", "sh", &p2, "--bitmask"])),
        "{\"n\":2,\"masks\":[0,1,2,3]}\n"
    );
}

#[test]
fn output_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let text = "{\"n\":3,\"sets\":[[],[1],[3],[1,3]]}\n";
    let f = write(dir.path(), "f.json", text);
    let out = dir.path().join("out.json");
    let o = oshlab(&["closures", "osh-shift", &f, "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: FamilyDocument = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.n, 3);
    assert_eq!(doc.sets.len(), 4);
    // A canonical downset is its own closure, byte for byte.
    let again = oshlab(&["closures", "osh-shift", out.to_str().unwrap()]);
    assert_eq!(stdout(&again), fs::read_to_string(&out).unwrap());
}

#[test]
fn bad_documents_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_of_range = write(dir.path(), "a.json", r#"{"n":2,"sets":[[3]]}"#);
    let o = oshlab(&["closures", "sh", &out_of_range]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("element 3"));
    let dup = write(dir.path(), "b.json", r#"{"n":2,"sets":[[1],[1]]}"#);
    assert_eq!(oshlab(&["closures", "sh", &dup]).status.code(), Some(1));
    let broken = write(dir.path(), "c.json", "{\"n\":2,\n\"sets\":[[1],]}");
    let o = oshlab(&["closures", "sh", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn max_ground_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"n":5,"sets":[[1]]}"#);
    assert_eq!(
        oshlab(&["closures", "osh-direct", &f, "--max-ground", "4"])
            .status
            .code(),
        Some(1)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_oshlab"))
        .args(["closures", "osh-direct", &f])
        .env("OSHLAB_MAX_GROUND", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        oshlab(&["closures", "osh-direct", &f]).status.code(),
        Some(0)
    );
}

#[test]
fn sperner_commands() {
    let o = oshlab(&["sperner", "criterion", "--set", "2,3", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(
        text.contains("sum = 1/1") && text.contains("criterion fails"),
        "{text}"
    );
    let o = oshlab(&[
        "sperner",
        "criterion",
        "--set",
        "2",
        "--ell",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"set\":[2],\"ell\":1,\"sum\":\"1/2\",\"holds\":true}\n"
    );

    let o = oshlab(&["sperner", "construct", "--set", "2", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"n\":2,\"sets\":[[1],[2]]}\n");
    let o = oshlab(&["sperner", "construct", "--set", "2,3", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1/1"));
}

#[test]
fn twolevel_commands() {
    let o = oshlab(&["twolevel", "minimal", "--n", "6", "--a", "1", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let sets: Vec<&str> = text
        .lines()
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(sets, vec!["∅", "{2}", "{2,3}", "{2,3,4}"]);

    let o = oshlab(&[
        "twolevel", "member", "--n", "6", "--a", "1", "--d", "2", "--set", "3,5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("true\tvia {2,3}"));
    let o = oshlab(&[
        "twolevel", "member", "--n", "6", "--a", "1", "--d", "2", "--set", "1,4",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let o = oshlab(&[
        "twolevel",
        "consecutive",
        "--n",
        "5",
        "--k",
        "2",
        "--ell",
        "1",
    ]);
    let doc: FamilyDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.sets.len(), 10);
    let o = oshlab(&["twolevel", "minimal", "--n", "4", "--a", "2", "--d", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn shift_trace_stages() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"n":2,"sets":[[1],[2]]}"#);
    let o = oshlab(&["shift", "trace", &f, "--format", "json"]);
    assert_eq!(
        stdout(&o),
        "{\"n\":2,\"stages\":[[[1],[2]],[[],[2]],[[],[2]]]}\n"
    );
}

#[test]
fn verify_reports_and_determinism() {
    let args = [
        "verify",
        "cardinality-law",
        "--n",
        "8",
        "--trials",
        "60",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a: SuiteReport = serde_json::from_str(&stdout(&oshlab(&args))).unwrap();
    let b: SuiteReport = serde_json::from_str(&stdout(&oshlab(&args))).unwrap();
    assert!(a.ok());
    assert_eq!(a.passed, 60);
    assert_eq!(
        (a.passed, a.failed, &a.params),
        (b.passed, b.failed, &b.params)
    );

    let o = oshlab(&["verify", "shift-equals-osh", "--n", "3", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("passed=256"));
    assert_eq!(oshlab(&["verify", "no-such-suite"]).status.code(), Some(1));
    assert_eq!(
        oshlab(&["verify", "two-level-closed-form", "--n-max", "8"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn replay_reruns_the_embedded_family() {
    let dir = tempfile::tempdir().unwrap();
    let report = r#"{"suite":"cardinality-law","params":{"n_min":2,"n_max":2,"trials":1,"seed":0,
        "exhaustive":false,"density":0.5,"max_ground":24},"passed":0,"failed":1,"skipped":0,
        "counterexample":{"family":{"n":2,"sets":[[1],[2]]},"target":null,"detail":"x"},"wall_time_secs":0.0}"#;
    let path = write(dir.path(), "r.json", report);
    let o = oshlab(&["verify", "cardinality-law", "--replay", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("not reproduced"));
}
