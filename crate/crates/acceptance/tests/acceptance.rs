//! One PASS/FAIL line per acceptance criterion. Arithmetic is exact, so every
//! comparison has zero tolerance; the only pinned tolerance is the catalogue
//! runtime budget.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use axial_core::catalog::{check_claims, instantiate, CatalogError, EntryName};
use axial_core::exactfield::Field;
use axial_core::format::AlgebraFile;
use axial_core::verify::{verify_instance, CheckKind, Status, VerificationReport};

#[path = "../../core/tests/suites/mod.rs"]
mod suites;

const CATALOG_BUDGET: Duration = Duration::from_secs(10);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            details: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.details.push(what.into());
        }
    }
}

/// Entries at their stated parameters.
fn stated(name: EntryName) -> VerificationReport {
    let q = Field::rationals();
    let inst = match name {
        EntryName::ThreeEvX | EntryName::FourEvX => instantiate(name, Some(&q), Some("-1/3"), None),
        EntryName::BarFourTwo => instantiate(name, Some(&q), Some("2"), None),
        EntryName::Seven => instantiate(name, Some(&q), Some("4/3"), None),
        EntryName::SevenX => instantiate(name, Some(&Field::prime(5).unwrap()), None, None),
        _ => instantiate(name, None, None, None),
    }
    .unwrap();
    verify_instance(&inst, &CheckKind::ALL)
}

fn failures(report: &VerificationReport, kind: CheckKind) -> String {
    let check = report.check(kind).unwrap();
    format!("{} {kind}: {}", report.name, check.details.join("; "))
}

fn catalog_existence() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let reports: Vec<VerificationReport> = EntryName::ALL.into_iter().map(stated).collect();
    let elapsed = start.elapsed();
    for r in &reports {
        for kind in [CheckKind::Fusion, CheckKind::Dihedral] {
            out.require(
                r.check(kind).unwrap().status == Status::Pass,
                failures(r, kind),
            );
        }
    }
    out.require(elapsed < CATALOG_BUDGET, format!("took {elapsed:?}"));
    out
}

fn negative_controls() -> Outcome {
    let mut out = Outcome::new();
    let q = Field::rationals();
    let rejected =
        |r: Result<_, CatalogError>| matches!(r, Err(CatalogError::ConstraintViolation(_)));

    let six = instantiate(EntryName::SixThree, Some(&q), Some("3"), None).unwrap();
    let fusion = verify_instance(&six, &[CheckKind::Fusion])
        .check(CheckKind::Fusion)
        .unwrap()
        .status;
    out.require(
        fusion == Status::Fail,
        "SixThree over Q at eta = 3 passes fusion",
    );

    out.require(
        rejected(instantiate(EntryName::FourEv, Some(&q), Some("-1"), None)),
        "FourEv accepts eta = -1",
    );

    let mut others = vec![q.clone()];
    others.extend([3, 7, 11, 13].map(|p| Field::prime(p).unwrap()));
    for f in &others {
        out.require(
            rejected(instantiate(EntryName::SevenX, Some(f), None, None)),
            format!("SevenX accepts {f}"),
        );
    }

    out.require(Field::prime(2).is_err(), "GF(2) constructs");
    let file = r#"{"field":{"kind":"prime","p":2},"eta":"1","basis":["e"],"products":[]}"#;
    out.require(
        AlgebraFile::from_json(file)
            .unwrap()
            .instantiate(None)
            .is_err(),
        "characteristic-2 file loads",
    );
    out.require(
        run_cli(&["verify", "FiveThree", "--field", "gf:2"]).0 == axial_cli::EXIT_REJECTED,
        "CLI accepts gf:2",
    );
    out
}

fn relation_cases() -> Outcome {
    let mut out = Outcome::new();
    for (name, adim, parity) in [
        (EntryName::ThreeEv, 3, "even"),
        (EntryName::FourEv, 4, "even"),
        (EntryName::FiveThree, 5, "odd"),
        (EntryName::SixThree, 6, "odd"),
        (EntryName::Seven, 7, "odd"),
        (EntryName::BarFourTwo, 4, "odd"),
    ] {
        let r = stated(name);
        let relations = r.check(CheckKind::Relations).unwrap();
        out.require(
            relations.status == Status::Pass,
            failures(&r, CheckKind::Relations),
        );
        match &r.relation {
            Some(rel) => out.require(
                rel.adim == adim && rel.parity == parity,
                format!(
                    "{name}: got ({}, {}), want ({adim}, {parity})",
                    rel.adim, rel.parity
                ),
            ),
            None => out.require(false, format!("{name}: no relation computed")),
        }
    }
    out
}

fn identity_suite() -> Outcome {
    let mut out = Outcome::new();
    for name in EntryName::ALL {
        let r = stated(name);
        out.require(
            r.check(CheckKind::Identities).unwrap().status == Status::Pass,
            failures(&r, CheckKind::Identities),
        );
        if let Some(dim) = r.scalars.get("two_axis_subalgebra_dim") {
            out.require(
                r.dimension <= 3 || dim == "3",
                format!(
                    "{name}: dim <a0, a1> = {dim} in ambient dimension {}",
                    r.dimension
                ),
            );
        }
    }
    out
}

fn quotient_claims() -> Outcome {
    let mut out = Outcome::new();
    let claims = check_claims();
    for id in [
        "threeev-p1-ideal",
        "fourev-p1-ideal",
        "seven-p1-ideal",
        "fivethree-quotient",
        "barfourtwo-quotient",
    ] {
        match claims.iter().find(|c| c.id == id) {
            Some(c) => out.require(c.holds, format!("{id}: {}", c.details.join("; "))),
            None => out.require(false, format!("{id}: missing")),
        }
    }
    out
}

fn property_suites() -> Outcome {
    let mut out = Outcome::new();
    for (name, suite) in suites::ALL {
        let ok = catch_unwind(AssertUnwindSafe(suite)).is_ok();
        out.require(ok, format!("{name} failed"));
    }
    out
}

fn run_cli(args: &[&str]) -> (u8, Vec<u8>) {
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let argv = std::iter::once("axial").chain(args.iter().copied());
    (axial_cli::run(argv, &mut stdout, &mut stderr), stdout)
}

fn determinism() -> Outcome {
    let mut out = Outcome::new();
    let canonical = |bytes: Vec<u8>| -> Vec<u8> {
        let text = String::from_utf8(bytes).unwrap();
        text.lines()
            .filter(|l| !l.contains("\"duration_ms\""))
            .flat_map(|l| l.bytes().chain(*b"\n"))
            .collect()
    };
    let (first_code, first) = run_cli(&["catalog", "claims", "--json"]);
    let (second_code, second) = run_cli(&["catalog", "claims", "--json"]);
    out.require(first_code == second_code, "exit codes differ");
    out.require(!first.is_empty(), "no output");
    out.require(canonical(first) == canonical(second), "outputs differ");
    out
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("catalog existence", catalog_existence),
        ("negative controls", negative_controls),
        ("axial dimensions and relation cases", relation_cases),
        ("identity suite", identity_suite),
        ("quotient and isomorphism claims", quotient_claims),
        ("property suites", property_suites),
        ("determinism", determinism),
    ];
    let mut stdout = std::io::stdout();
    let mut failed = Vec::new();
    for (i, (title, criterion)) in criteria.into_iter().enumerate() {
        let outcome = criterion();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        writeln!(stdout, "criterion {} [{verdict}] {title}", i + 1).unwrap();
        for d in &outcome.details {
            writeln!(stdout, "    {d}").unwrap();
        }
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
