//! End-to-end driver tests: subcommand behavior, exit codes, and
//! byte-determinism of reports.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nilforms"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_catalog_entry() {
    let out = run(&[
        "verify",
        "catalog:etabeta5",
        "--check",
        "integrable",
        "--check",
        "nilpotent",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("check=integrable verdict=certified"));
    assert!(text.contains("check=nilpotent verdict=certified"));
}

#[test]
fn structure_certifies_displayed_form() {
    let out = run(&[
        "structure",
        "catalog:etabeta5",
        "--kind",
        "pkahler",
        "--p",
        "3",
        "--form",
        "Omega_star",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict=certified"));
}

#[test]
fn transverse_reports_are_deterministic() {
    let args = [
        "transverse",
        "catalog:etabeta5",
        "--form",
        "Omega_star",
        "--method",
        "minimize",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    assert!(stdout(&a).starts_with("transverse method=minimize outcome=certified min="));
}

#[test]
fn transverse_sample_refutes() {
    // a negative multiple of the volume-positivity pattern is refuted by
    // sampling with an exact witness
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.struct");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "dimension 2").unwrap();
    writeln!(f, "form W (1,1) = -sigma(1)*phi[1;1] - sigma(1)*phi[2;2]").unwrap();
    drop(f);
    let out = run(&[
        "transverse",
        path.to_str().unwrap(),
        "--form",
        "W",
        "--method",
        "sample",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("outcome=refuted"));
}

#[test]
fn cohomology_numbers() {
    let out = run(&[
        "cohomology",
        "catalog:etabeta5",
        "--theory",
        "derham",
        "--bidegree",
        "1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "theory=derham k=1 dim=8\n");

    let out = run(&[
        "cohomology",
        "catalog:torus2",
        "--theory",
        "dolbeault",
        "--bidegree",
        "1,1",
    ]);
    assert_eq!(stdout(&out), "theory=dolbeault p=1 q=1 dim=4\n");
}

#[test]
fn class_exit_codes() {
    // the 3-Kahler form is a nonzero Aeppli class: "is zero" is refuted
    let out = run(&[
        "class",
        "catalog:etabeta5",
        "--form",
        "Omega_star",
        "--theory",
        "aeppli",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // a non-closed form gives unknown, exit 3
    let out = run(&[
        "class",
        "catalog:iwasawa",
        "--form",
        "phi[3]",
        "--theory",
        "derham",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn deform_expectation_gate() {
    let obstructed = run(&[
        "deform",
        "--curve",
        "catalog:etabeta5.psi11",
        "--omega",
        "Omega",
        "--expect-curve",
    ]);
    assert_eq!(obstructed.status.code(), Some(1));
    assert!(stdout(&obstructed).contains("class=refuted"));

    let fine = run(&[
        "deform",
        "--curve",
        "catalog:etabeta5.psi11",
        "--omega",
        "Omega_star",
        "--expect-curve",
    ]);
    assert_eq!(fine.status.code(), Some(0));
    assert!(stdout(&fine).contains("maurer_cartan=certified"));
}

#[test]
fn deform_from_curve_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.struct");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(
        f,
        "dimension 5\n\
         d phi5 = -phi[1,3] - phi[2,4]\n\
         vform theta1 bar1 = 1\n\
         vform theta2 bar2 = 1\n\
         curve linear\n\
         form W (3,3) = sigma(3)*(phi[1,2,3;1,2,3] + phi[1,2,4;1,2,4])\n"
    )
    .unwrap();
    drop(f);
    let out = run(&[
        "deform",
        "--curve",
        path.to_str().unwrap(),
        "--omega",
        "W",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("maurer_cartan=certified"));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["verify", "catalog:etabeta5", "--check", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "catalog:no_such_entry"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diff_on_file_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heis.struct");
    std::fs::write(&path, "dimension 3\nd phi3 = phi[1,2]\n").unwrap();
    let out = run(&[
        "diff",
        path.to_str().unwrap(),
        "--form",
        "phi[3]",
        "--op",
        "d",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("result=(1)*phi[1,2;]"));
}

#[test]
fn catalog_selftest_passes() {
    let out = run(&["catalog", "selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() > 40);
    assert!(!text.contains("pass=false"));
}
