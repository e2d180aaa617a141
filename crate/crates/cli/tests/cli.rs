use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpsurgery")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn nodal_builtin() {
    let o = run(&["builtin", "nodal", "d1=2", "d2=4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[Z + Z_2] H1 of the complement"));
}

#[test]
fn tori_one_one_is_trivial() {
    let o = run(&["--format", "machine", "builtin", "tori", "m=1", "n=1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("H1 of the complement\t0\t"));
    assert!(out.contains("pi1 of the complement = 0\tisomorphic\t"));
}

#[test]
fn scenario_file_matches_builtin() {
    for format in ["text", "machine"] {
        let a = run(&["--format", format, "builtin", "rational", "p=1", "q=3", "k=1"]);
        let b = run(&["--format", format, "scenario", &data("rational.yaml")]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn emitted_scenario_reproduces_builtin() {
    let yaml = stdout(&run(&["builtin", "theorem-1-1", "case=ii", "count=3", "--emit-scenario"]));
    let dir = std::env::temp_dir().join(format!("dpsurgery-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t11.yaml");
    std::fs::write(&path, yaml).unwrap();
    let a = run(&["builtin", "theorem-1-1", "case=ii", "count=3"]);
    let b = run(&["scenario", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn gcd_violation_fails() {
    let o = run(&["--format", "machine", "scenario", &data("bad_gcd.yaml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(a) group preserved\tfail\t"));
}

#[test]
fn empty_checks_give_empty_report() {
    let o = run(&["--format", "machine", "scenario", &data("empty.yaml")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn parse_errors_name_the_line() {
    let o = run(&["scenario", &data("typo.yaml")]);
    assert_eq!(o.status.code(), Some(4));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("grup"), "{err}");
    let o = run(&["scenario", &data("missing.yaml")]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn parameter_ranges_are_checked() {
    for args in [&["builtin", "nodal", "d1=0"][..], &["builtin", "theorem-1-1"], &["builtin", "knot"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(4), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn inconclusive_has_its_own_status() {
    let o = run(&["--bounds-cosets", "2", "builtin", "spheres", "m=3", "n=3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[inconclusive]"));
}

#[test]
fn explicit_configuration_refuses_to_distinguish() {
    let o = run(&["--format", "machine", "scenario", &data("explicit.yaml")]);
    let out = stdout(&o);
    assert!(out.contains("pi1 of the complement = 0\tisomorphic"));
    assert!(out.contains("not-distinguished"));
    assert!(out.contains("two double points"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn machine_lines_have_three_fields() {
    let o = run(&["--format", "machine", "builtin", "theorem-7-2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.split('\t').count() == 3));
    assert!(out.lines().last().unwrap().starts_with("action(m=3, n=2, k=1, N=5)\tpass\t"));
}

#[test]
fn subcommands() {
    let o = run(&["verify", "gens: a b ; rels: [a,b] , a^2 , b^3 ;", "Z_6"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "gens: a b ; rels: a a , b b , (a b)^3 ;", "Z_2"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["--format", "machine", "alexander", "B3: 1 -2 1 -2"]);
    assert_eq!(stdout(&o), "B3: 1 -2 1 -2\t-t^-1 + 3 - t\tcoefficients {-1, -1, 3}; determinant 5\n");
    let o = run(&["alexander", "B2: 1 1"]);
    assert_eq!(o.status.code(), Some(4));

    let o = run(&["--format", "machine", "snf", "2 4; 6 8"]);
    assert_eq!(stdout(&o), "smith normal form\tdiag(2, 4)\trank 2; cokernel Z_2 + Z_4\n");

    let o = run(&["distinguish", "B2: 1 1 1", "B2: 1 1 1 1 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[smoothly-inequivalent]"));

    let o = run(&["--format", "machine", "actions", "3", "2", "3", "--count", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(b) cover is standard\tfail"));
    let o = run(&["actions", "4", "2", "1"]);
    assert_eq!(o.status.code(), Some(4));

    let o = run(&["surgery", "f3", "m=3", "n=2", "k=1", "--knot", "B3: 1 -2 1 -2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--format", "machine", "surgery", "f2", "p=1", "q=4", "k=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("F2(p=1, q=4, k=1): hypothesis\tfails"));
}
