use std::path::PathBuf;

use axial_cli::{run, EXIT_FAIL, EXIT_REJECTED};

fn axial(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("axial").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("axial-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_exit_codes() {
    for entry in [
        "FiveThree",
        "ThreeEvX",
        "FourEvX",
        "BarFourTwo",
        "SixThree",
        "Seven",
        "SevenX",
    ] {
        let (code, out, _) = axial(&["verify", entry]);
        assert_eq!(code, 0, "{entry}: {out}");
        assert!(out.contains("PASS"));
    }
    assert_eq!(
        axial(&["verify", "SixThree", "--field", "q", "--eta", "3"]).0,
        EXIT_FAIL
    );
    assert_eq!(
        axial(&["verify", "FourEv", "--field", "q", "--eta", "-1"]).0,
        EXIT_REJECTED
    );
    assert_eq!(
        axial(&["verify", "SevenX", "--field", "gf:7"]).0,
        EXIT_REJECTED
    );
    assert_eq!(
        axial(&["verify", "FiveThree", "--field", "gf:2"]).0,
        EXIT_REJECTED
    );
    assert_eq!(axial(&["verify", "NoSuchEntry"]).0, EXIT_REJECTED);
    assert_eq!(axial(&["frobnicate"]).0, EXIT_REJECTED);
}

#[test]
fn verify_selected_checks_as_json() {
    let (code, out, _) = axial(&["verify", "Seven", "--check", "fusion,relations", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let report = &doc["report"];
    assert_eq!(report["relation"]["adim"], 7);
    let statuses: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert_eq!(
        statuses
            .iter()
            .filter(|s| s.eq_ignore_ascii_case("skipped"))
            .count(),
        2
    );
}

#[test]
fn emitted_file_verifies() {
    let path = scratch("fivethree.json");
    let (code, text, _) = axial(&[
        "catalog",
        "emit",
        "FiveThree",
        "--field",
        "q",
        "--eta",
        "3/5",
    ]);
    assert_eq!(code, 0);
    std::fs::write(&path, text).unwrap();
    assert_eq!(axial(&["verify", path.to_str().unwrap()]).0, 0);
}

#[test]
fn quotient_and_isomorphism() {
    let (code, text, _) = axial(&[
        "quotient",
        "FiveThree",
        "--field",
        "q",
        "--eta",
        "-1/3",
        "--ideal",
        "am2 + am1 + a0 + a1 + a2",
        "--json",
    ]);
    assert_eq!(code, 0);
    let path = scratch("fivethree-quotient.json");
    std::fs::write(&path, text).unwrap();
    let map = "am1=am1,a0=a0,a1=a1,a2=a2";
    let (code, out, err) = axial(&["isom", path.to_str().unwrap(), "FourEvX", map]);
    assert_eq!(code, 0, "{out}{err}");
    assert_eq!(
        axial(&["quotient", "ThreeEv", "--field", "q", "--eta", "-1/3", "--ideal", "p1"]).0,
        0
    );
    assert_eq!(
        axial(&["quotient", "ThreeEv", "--ideal", "p1"]).0,
        EXIT_FAIL
    );
    assert_eq!(
        axial(&["quotient", "ThreeEv", "--ideal", "p1 +"]).0,
        EXIT_REJECTED
    );
}

#[test]
fn catalog_listing_and_claims() {
    let (code, out, _) = axial(&["catalog", "list", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(doc.to_string().contains("SevenX"));
    let (_, first, _) = axial(&["catalog", "claims", "--json"]);
    let (_, second, _) = axial(&["catalog", "claims", "--json"]);
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains("duration_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&first), strip(&second));
}
