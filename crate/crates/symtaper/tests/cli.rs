//! End-to-end checks of the symtaper binary: subcommands, output files, and
//! exit codes.

mod common;

use std::process::Command;

use common::fixture;

fn symtaper() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symtaper"))
}

#[test]
fn taper_writes_report_and_reduced_hamiltonian() {
    let out = std::env::temp_dir().join(format!("symtaper_test_{}.pauli", std::process::id()));
    let output = symtaper()
        .args(["taper", "--fcidump"])
        .arg(fixture("h2.fcidump"))
        .arg("--symmetries")
        .arg(fixture("h2_sym.json"))
        .arg("--out")
        .arg(&out)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let report = String::from_utf8(output.stdout).unwrap();
    assert!(report.contains("qubits before: 4"));
    assert!(report.contains("qubits after: 1"));

    let text = std::fs::read_to_string(&out).unwrap();
    let reduced = symtaper::PauliSum::from_text(&text).unwrap();
    assert_eq!(reduced.n_qubits(), 1);
    std::fs::remove_file(&out).ok();
}

#[test]
fn verify_passes_on_h2() {
    let output = symtaper()
        .args(["verify", "--fcidump"])
        .arg(fixture("h2.fcidump"))
        .arg("--symmetries")
        .arg(fixture("h2_sym.json"))
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let report = String::from_utf8(output.stdout).unwrap();
    assert!(report.contains("status: PASS"));
}

#[test]
fn symmetries_reports_extra_pointgroup_strings() {
    let output = symtaper()
        .args(["symmetries", "--fcidump"])
        .arg(fixture("beh2.fcidump"))
        .arg("--symmetries")
        .arg(fixture("beh2_sym.json"))
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let report = String::from_utf8(output.stdout).unwrap();
    assert!(report.contains("kernel symmetries (input basis): 4"));
    assert!(report.contains("sigma_xy: extra symmetry"));
    // the diagonal reflections were already visible to the kernel search
    assert!(report.contains("sigma_xz: matches a kernel symmetry"));
    assert!(report.contains("sigma_yz: matches a kernel symmetry"));
}

#[test]
fn sector_scan_flag_prints_the_table() {
    let output = symtaper()
        .args(["taper", "--sector-scan", "--fcidump"])
        .arg(fixture("h2.fcidump"))
        .arg("--symmetries")
        .arg(fixture("h2_sym.json"))
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let report = String::from_utf8(output.stdout).unwrap();
    assert!(report.contains("sector scan (8 sectors):"));
    assert!(report.contains("sector selection: exhaustive scan"));
}

#[test]
fn usage_error_exits_2() {
    let output = symtaper()
        .args(["taper", "--no-auto-z2", "--fcidump"])
        .arg(fixture("h2.fcidump"))
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn parse_error_exits_3() {
    let bad = std::env::temp_dir().join(format!("symtaper_bad_{}.fcidump", std::process::id()));
    std::fs::write(&bad, "this is not an FCIDUMP file\n").unwrap();
    let output = symtaper()
        .args(["taper", "--fcidump"])
        .arg(&bad)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(3));
    std::fs::remove_file(&bad).ok();
}

#[test]
fn invariance_failure_exits_4() {
    // a sign flip on a single H2 orbital is not a symmetry of the integrals
    let bad = std::env::temp_dir().join(format!("symtaper_sym_{}.json", std::process::id()));
    std::fs::write(
        &bad,
        r#"{"n_spatial": 2, "operations": [{"name": "bogus", "perm": [0, 1], "signs": [1, -1]}]}"#,
    )
    .unwrap();
    let output = symtaper()
        .args(["taper", "--fcidump"])
        .arg(fixture("h2.fcidump"))
        .arg("--symmetries")
        .arg(&bad)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(4));
    std::fs::remove_file(&bad).ok();
}
