mod common;

use std::collections::BTreeSet;
use std::process::Command;

use common::fixture_path;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mnf_lab(args: &[&str]) -> Run {
    mnf_lab_env(args, &[])
}

fn mnf_lab_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mnf-lab"));
    cmd.args(args).env_remove("MNFLAB_ENUM_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

fn keys(v: &Value) -> BTreeSet<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

#[test]
fn exit_codes() {
    let matrix: &[(&[&str], i32)] = &[
        (&["check", "ex1.cfg"], 0),
        (&["check", "ex2.cfg"], 0),
        (&["check", "ex3.cfg"], 0),
        (&["check", "anbn.cfg"], 1),
        (&["check", "cycle.cfg"], 1),
        (&["check", "malformed.cfg"], 2),
        (&["check", "missing.cfg"], 2),
        (&["synth", "ex1.cfg"], 0),
        (&["synth", "ex2.cfg"], 0),
        (&["synth", "ex3.cfg"], 0),
        (&["synth", "anbn.cfg"], 1),
        (&["synth", "malformed.cfg"], 2),
        (&["verify", "ex1.cfg", "--synth"], 0),
        (&["verify", "ex2.cfg", "--synth", "--max-len", "6"], 0),
        (&["verify", "ex3.cfg", "--synth", "--max-len", "6"], 0),
        (
            &["verify", "anbn.cfg", "--regex", "a* b*", "--max-len", "4"],
            1,
        ),
        (&["verify", "anbn.cfg", "--synth"], 1),
        (&["verify", "ex1.cfg", "--regex", "(a"], 2),
        (&["verify", "ex1.cfg"], 2),
        (&["verify", "malformed.cfg", "--synth"], 2),
        (&["search", "ex1.cfg", "--depth", "0"], 0),
        (&["search", "unfoldable.cfg", "--depth", "2"], 0),
        (&["search", "anbn.cfg", "--depth", "3"], 1),
        (&["search", "anbn.cfg", "--max-candidates", "0"], 2),
        (&["search", "malformed.cfg"], 2),
        (&["frobnicate", "ex1.cfg"], 2),
    ];
    for (args, expected) in matrix {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        if args.len() > 1 {
            args[1] = path(&args[1]);
        }
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = mnf_lab(&argv);
        assert_eq!(
            run.code, *expected,
            "{args:?}\nstdout: {}\nstderr: {}",
            run.stdout, run.stderr
        );
    }
}

#[test]
fn budget_exhaustion_exits_3() {
    let run = mnf_lab_env(
        &["verify", &path("ex1.cfg"), "--synth"],
        &[("MNFLAB_ENUM_CAP", "5")],
    );
    assert_eq!(run.code, 3, "{}", run.stderr);
    assert!(run.stderr.contains("5"));
}

#[test]
fn malformed_input_reports_position() {
    let run = mnf_lab(&["check", &path("malformed.cfg")]);
    assert!(run.stderr.contains("2:3"), "{}", run.stderr);
    assert!(run.stdout.is_empty());
}

#[test]
fn check_json_keys() {
    for name in ["ex1.cfg", "anbn.cfg", "cycle.cfg"] {
        let v = json(&mnf_lab(&["check", &path(name), "--json"]));
        assert_eq!(
            keys(&v),
            BTreeSet::from([
                "is_mnf",
                "looking_forward",
                "cycle",
                "partitions",
                "offenders"
            ])
        );
        for p in v["partitions"].as_object().unwrap().values() {
            assert_eq!(keys(p), BTreeSet::from(["left", "right", "const"]));
        }
    }
}

#[test]
fn verify_json_keys() {
    for args in [
        vec!["verify", "ex1.cfg", "--synth", "--json"],
        vec![
            "verify",
            "anbn.cfg",
            "--regex",
            "a* b*",
            "--max-len",
            "4",
            "--json",
        ],
    ] {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        args[1] = path(&args[1]);
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let v = json(&mnf_lab(&argv));
        assert_eq!(
            keys(&v),
            BTreeSet::from(["equivalent", "counterexample", "side", "bound"])
        );
    }
}

#[test]
fn search_json_keys() {
    for name in ["unfoldable.cfg", "anbn.cfg"] {
        let v = json(&mnf_lab(&["search", &path(name), "--json"]));
        assert_eq!(
            keys(&v),
            BTreeSet::from(["found", "grammar", "regex", "stats"])
        );
        assert_eq!(
            keys(&v["stats"]),
            BTreeSet::from(["explored", "depth", "deduped"])
        );
    }
}

#[test]
fn text_and_json_agree() {
    let cases: &[&[&str]] = &[
        &["check", "ex1.cfg"],
        &["check", "anbn.cfg"],
        &["check", "cycle.cfg"],
        &["verify", "ex1.cfg", "--synth"],
        &["verify", "anbn.cfg", "--regex", "a* b*", "--max-len", "4"],
        &["verify", "anbn.cfg", "--regex", "(a b)*", "--max-len", "1"],
        &["search", "unfoldable.cfg"],
        &["search", "anbn.cfg"],
    ];
    for args in cases {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        args[1] = path(&args[1]);
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = mnf_lab(&argv);
        let mut with_json = argv.clone();
        with_json.push("--json");
        let js = mnf_lab(&with_json);
        assert_eq!(text.code, js.code, "{args:?}");
        let v = json(&js);
        let (text_yes, json_yes) = match argv[0] {
            "check" => (text.stdout.starts_with("MNF: yes"), v["is_mnf"] == true),
            "verify" => (
                text.stdout.starts_with("equivalent"),
                v["equivalent"] == true,
            ),
            _ => (text.stdout.starts_with("found: yes"), v["found"] == true),
        };
        assert_eq!(text_yes, json_yes, "{args:?}");
        assert_eq!(text_yes, text.code == 0, "{args:?}");
    }
}

#[test]
fn verify_counterexample() {
    let run = mnf_lab(&[
        "verify",
        &path("anbn.cfg"),
        "--regex",
        "a* b*",
        "--max-len",
        "4",
    ]);
    assert_eq!(
        run.stdout,
        "not equivalent up to length 4: counterexample \"a\" (in-right-only)\n"
    );
    let v = json(&mnf_lab(&[
        "verify",
        &path("anbn.cfg"),
        "--regex",
        "a* b*",
        "--max-len",
        "4",
        "--json",
    ]));
    assert_eq!(v["counterexample"], serde_json::json!(["a"]));
    assert_eq!(v["side"], "in-right-only");
    assert_eq!(v["bound"], 4);
}

#[test]
fn synth_outputs() {
    let run = mnf_lab(&["synth", &path("ex1.cfg")]);
    assert_eq!(run.stdout, "(a b c)* (g h i + eps) (d e f)*\n");
    let v = json(&mnf_lab(&["synth", &path("ex3.cfg"), "--json"]));
    assert_eq!(
        v["regex"],
        "(u* m u*)* (u* i u* x* r x* + z + eps) (x* n x*)*"
    );
    let refused = mnf_lab(&["synth", &path("anbn.cfg")]);
    assert!(refused.stdout.starts_with("MNF: no"));
}

#[test]
fn check_prune_and_strict() {
    let dir = std::env::temp_dir().join(format!("mnf-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let useless = dir.join("useless.cfg");
    std::fs::write(&useless, "start: S\nS -> a | B\nB -> b B c\n").unwrap();
    let file = useless.to_str().unwrap();
    assert_eq!(mnf_lab(&["check", file]).code, 1);
    assert_eq!(mnf_lab(&["check", file, "--prune"]).code, 0);

    let looped = dir.join("looped.cfg");
    std::fs::write(&looped, "start: S\nS -> S | a\n").unwrap();
    let file = looped.to_str().unwrap();
    let lax = mnf_lab(&["check", file]);
    assert!(lax.stderr.contains("warning"), "{}", lax.stderr);
    let strict = mnf_lab(&["check", file, "--strict", "--json"]);
    assert_eq!(
        json(&strict)["partitions"]["S"]["left"],
        serde_json::json!(["eps"])
    );

    let dangling = dir.join("dangling.cfg");
    std::fs::write(&dangling, "start: S\nS -> a B\n").unwrap();
    let file = dangling.to_str().unwrap();
    assert_eq!(mnf_lab(&["check", file]).code, 2);
    assert_eq!(mnf_lab(&["check", file, "--allow-empty"]).code, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
