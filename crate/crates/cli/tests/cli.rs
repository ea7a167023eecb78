use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use spfr::io::{Container, Persist};
use spfr::AnyPerm;

fn spfr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spfr")).args(args).output().expect("spawn spfr")
}

fn ok(args: &[&str]) -> String {
    let out = spfr(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_is_deterministic() {
    let a = ok(&["gen", "func", "--n", "500", "--seed", "9"]);
    let b = ok(&["gen", "func", "--n", "500", "--seed", "9"]);
    let c = ok(&["gen", "func", "--n", "500", "--seed", "10"]);
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(ok(&["gen", "perm", "--n", "64", "--seed", "1"]), ok(&["gen", "perm", "--n", "64", "--seed", "1"]));
}

#[test]
fn quad19_function_queries() {
    let dir = tempfile::tempdir().unwrap();
    let (txt, rep) = (p(dir.path(), "f.txt"), p(dir.path(), "f.spfr"));
    let gen = ok(&["gen", "func", "--n", "19", "--formula", "quad19"]);
    let want: Vec<usize> = (0..19).map(|x| (x * x + 2 * x + 18) % 19).collect();
    let got: Vec<usize> = gen.split_whitespace().skip(2).map(|t| t.parse().unwrap()).collect();
    assert_eq!(got, want);
    std::fs::write(&txt, gen).unwrap();
    let built = ok(&["build", "func", "--in", s(&txt), "--out", s(&rep)]);
    let sections = built.lines().find(|l| l.starts_with("sections")).unwrap();
    assert!(sections.contains("FNC1") && sections.contains("BPT1"));
    assert_eq!(ok(&["query", "finv", "--rep", s(&rep), "--i", "18", "--k", "1"]).trim(), "0 17");
    assert_eq!(ok(&["query", "fpow", "--rep", s(&rep), "--x", "0", "--k", "2"]).trim(), want[want[0]].to_string());
    assert!(ok(&["verify", "--rep", s(&rep), "--in", s(&txt)]).starts_with("PASS"));
}

#[test]
fn permutation_queries() {
    let dir = tempfile::tempdir().unwrap();
    let c7 = p(dir.path(), "c7.txt");
    std::fs::write(&c7, "7\n1 2 3 4 5 6 0\n").unwrap();
    let rep = p(dir.path(), "c7.spfr");
    ok(&["build", "shortcut", "--t", "3", "--in", s(&c7), "--out", s(&rep)]);
    assert_eq!(ok(&["query", "inverse", "--rep", s(&rep), "--x", "1", "--count"]).trim(), "0 evals=4");

    let p5 = p(dir.path(), "p5.txt");
    std::fs::write(&p5, "5\n1 2 0 4 3\n").unwrap();
    let rep = p(dir.path(), "p5.spfr");
    ok(&["build", "powers", "--in", s(&p5), "--out", s(&rep)]);
    assert_eq!(ok(&["query", "power", "--rep", s(&rep), "--x", "0", "--k", "5"]).trim(), "2");
    assert_eq!(ok(&["query", "power", "--rep", s(&rep), "--x", "3", "--k", "-3"]).trim(), "4");
}

#[test]
fn benes_payload_and_tamper_detection() {
    let dir = tempfile::tempdir().unwrap();
    let txt = p(dir.path(), "p.txt");
    std::fs::write(&txt, ok(&["gen", "perm", "--n", "1024", "--seed", "4"])).unwrap();
    let rep = p(dir.path(), "p.spfr");
    let built = ok(&["build", "benes", "--t", "1", "--in", s(&txt), "--out", s(&rep)]);
    assert!(built.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["payload", "9728", "bits"]), "{built}");
    assert!(ok(&["verify", "--rep", s(&rep), "--in", s(&txt)]).starts_with("PASS"));

    let c = Container::load(&rep).unwrap();
    let AnyPerm::Benes(mut b) = AnyPerm::from_container(&c).unwrap() else { panic!("not a benes container") };
    b.flip_switch(0, 3);
    let bad = p(dir.path(), "bad.spfr");
    AnyPerm::Benes(b).to_container().save(&bad).unwrap();
    let out = spfr(&["verify", "--rep", s(&bad), "--in", s(&txt)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL"));
}

#[test]
fn trees_and_range_functions() {
    let dir = tempfile::tempdir().unwrap();
    let t = p(dir.path(), "t.txt");
    std::fs::write(&t, "(()(()()))\n").unwrap();
    let rep = p(dir.path(), "t.spfr");
    ok(&["build", "tree", "--in", s(&t), "--out", s(&rep)]);
    assert_eq!(ok(&["tree", "query", "--op", "findclose", "--rep", s(&rep), "--x", "3"]).trim(), "8");
    assert_eq!(ok(&["tree", "query", "--op", "levelancestor", "--rep", s(&rep), "--x", "4", "--k", "2"]).trim(), "0");
    assert_eq!(ok(&["tree", "query", "--op", "parent", "--rep", s(&rep), "--x", "0"]).trim(), "none");

    for (n, m) in [(600, 200), (200, 600)] {
        let txt = p(dir.path(), "r.txt");
        std::fs::write(&txt, ok(&["gen", "func", "--n", &n.to_string(), "--m", &m.to_string(), "--seed", "3"])).unwrap();
        let rep = p(dir.path(), "r.spfr");
        ok(&["build", "func", "--in", s(&txt), "--out", s(&rep)]);
        assert!(ok(&["verify", "--rep", s(&rep), "--in", s(&txt)]).starts_with("PASS"));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(spfr(&["query", "fpow"]).status.code(), Some(2));
    assert_eq!(spfr(&["build", "func", "--in", "/nonexistent/x", "--out", "/tmp/y"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let junk = p(dir.path(), "junk.spfr");
    std::fs::write(&junk, b"nope").unwrap();
    assert_eq!(spfr(&["space", "--rep", s(&junk)]).status.code(), Some(2));
}
