//! Command-line front end: verification, catalogue export, isomorphism
//! and quotient tests.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use axial_core::algebra::{extend_from_generators, parse_vector, render_vector, Extension};
use axial_core::catalog::{
    check_claims, instantiate, parse_field_spec, CatalogError, EntryName, STUBS,
};
use axial_core::exactfield::{Field, FieldError};
use axial_core::format::{entry_constraints, AlgebraFile, FormatError};
use axial_core::verify::{verify_instance, CheckKind, Instance, Status, VerificationReport};

#[derive(Parser)]
#[command(
    name = "axial",
    version,
    about = "Exact verification of axial algebras with dihedral symmetry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a catalogue entry or an algebra file.
    Verify {
        /// Entry name or path to a JSON algebra file.
        target: String,
        /// Field: q, gf:P, qeta, nf:c0,c1,... (entries only).
        #[arg(long)]
        field: Option<String>,
        /// Value of eta (entries only).
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        /// Comma-separated checks: fusion, dihedral, relations, identities, all.
        #[arg(long, default_value = "all")]
        check: String,
        /// Half-width of the cached axis window (default: dim + 2).
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Browse the catalogue.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Test whether a label map extends to an isomorphism between two algebras.
    Isom {
        source: String,
        target: String,
        /// Images of generators, e.g. "a0=b0,a1=b1 - b0".
        map: String,
        /// Field and eta for a catalogue entry given as source.
        #[arg(long)]
        source_field: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        source_eta: Option<String>,
        /// Field and eta for a catalogue entry given as target.
        #[arg(long)]
        target_field: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target_eta: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Form the quotient by an ideal given by spanning vectors.
    Quotient {
        source: String,
        /// Spanning vector of the ideal (repeatable).
        #[arg(long, required = true, allow_hyphen_values = true)]
        ideal: Vec<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries with their parameter constraints.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print an entry as an algebra file.
    Emit {
        name: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Check the cross-entry statements.
    Claims {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<axial_core::algebra::AlgebraError> for CliError {
    fn from(e: axial_core::algebra::AlgebraError) -> Self {
        CliError::Format(e.into())
    }
}

/// Exit codes besides 0 (all selected checks pass).
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_REJECTED: u8 = 2;

/// Parse `args` (including the program name), run the command and return
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_REJECTED } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(true) => 0,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_REJECTED
        }
    }
}

fn load(
    target: &str,
    field: Option<&str>,
    eta: Option<&str>,
    window: Option<usize>,
) -> Result<Instance, CliError> {
    if let Ok(name) = target.parse::<EntryName>() {
        let field = field
            .map(|s| parse_field_spec(s).and_then(Field::new))
            .transpose()?;
        return Ok(instantiate(name, field.as_ref(), eta, window)?);
    }
    if field.is_some() || eta.is_some() {
        return Err(CliError::Usage(
            "--field and --eta apply only to catalogue entries".into(),
        ));
    }
    let text = std::fs::read_to_string(target).map_err(|source| CliError::Io {
        path: target.into(),
        source,
    })?;
    Ok(AlgebraFile::from_json(&text)?.instantiate(window)?)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            target,
            field,
            eta,
            check,
            window,
            json,
        } => {
            let checks = CheckKind::parse(&check)
                .ok_or_else(|| CliError::Usage(format!("unknown check list {check:?}")))?;
            let inst = load(&target, field.as_deref(), eta.as_deref(), window)?;
            let start = Instant::now();
            let report = verify_instance(&inst, &checks);
            let elapsed = start.elapsed().as_millis() as u64;
            if json {
                let doc = json!({ "report": report, "duration_ms": elapsed });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serialisable")
                )?;
            } else {
                print_report(&report, elapsed, out)?;
            }
            Ok(report.passed())
        }
        Command::Catalog { action } => catalog(action, out),
        Command::Isom {
            source,
            target,
            map,
            source_field,
            source_eta,
            target_field,
            target_eta,
            json,
        } => {
            let src = load(
                &source,
                source_field.as_deref(),
                source_eta.as_deref(),
                None,
            )?;
            let tgt = load(
                &target,
                target_field.as_deref(),
                target_eta.as_deref(),
                None,
            )?;
            let mut pairs = Vec::new();
            for part in map.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (g, h) = part.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!("map entry {part:?} needs the form x=y"))
                })?;
                let g = parse_vector(&src.algebra, g, &[("eta", src.eta.clone())])?;
                let h = parse_vector(&tgt.algebra, h, &[("eta", tgt.eta.clone())])?;
                pairs.push((g, h));
            }
            let extension = if src.algebra.dim() != tgt.algebra.dim() {
                None
            } else {
                Some(extend_from_generators(&src.algebra, &pairs, &tgt.algebra)?)
            };
            let (ok, verdict, matrix) = match extension {
                None => (
                    false,
                    format!(
                        "dimensions differ ({} vs {})",
                        src.algebra.dim(),
                        tgt.algebra.dim()
                    ),
                    Vec::new(),
                ),
                Some(extension) => match extension {
                    Extension::Map(m) if m.is_bijective() => {
                        let images: Vec<String> = (0..src.algebra.dim())
                            .map(|k| {
                                let img = m
                                    .apply(&src.algebra.basis_vector(k))
                                    .expect("dimensions match");
                                format!(
                                    "{} -> {}",
                                    src.algebra.labels()[k],
                                    render_vector(&tgt.algebra, &img)
                                )
                            })
                            .collect();
                        (true, "isomorphism".to_string(), images)
                    }
                    Extension::Map(_) => (false, "homomorphism, not bijective".into(), Vec::new()),
                    Extension::Inconsistent { word } => (
                        false,
                        format!("not multiplicative (conflict at {word})"),
                        Vec::new(),
                    ),
                    Extension::NotGenerating { dim } => (
                        false,
                        format!("generators span dimension {dim}"),
                        Vec::new(),
                    ),
                },
            };
            if json {
                let doc = json!({ "isomorphism": ok, "verdict": verdict, "images": matrix });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serialisable")
                )?;
            } else {
                writeln!(out, "{verdict}")?;
                for line in matrix {
                    writeln!(out, "  {line}")?;
                }
            }
            Ok(ok)
        }
        Command::Quotient {
            source,
            ideal,
            field,
            eta,
            json,
        } => {
            let src = load(&source, field.as_deref(), eta.as_deref(), None)?;
            let bindings = [("eta", src.eta.clone())];
            let vs = ideal
                .iter()
                .map(|t| parse_vector(&src.algebra, t, &bindings))
                .collect::<Result<Vec<_>, _>>()?;
            let span = src.algebra.span(&vs)?;
            let obstructions = src.algebra.ideal_obstructions(&span)?;
            if !obstructions.is_empty() {
                let shown: Vec<String> = obstructions
                    .iter()
                    .take(5)
                    .map(|v| render_vector(&src.algebra, v))
                    .collect();
                if json {
                    writeln!(out, "{}", json!({ "ideal": false, "obstructions": shown }))?;
                } else {
                    writeln!(out, "not an ideal; products escaping it (mod the span):")?;
                    for s in shown {
                        writeln!(out, "  {s}")?;
                    }
                }
                return Ok(false);
            }
            let (quotient, projection) = src.algebra.quotient(&span)?;
            let seed = src.seed.as_ref().map(|s| {
                let axes = s
                    .axes
                    .iter()
                    .map(|v| projection.apply(v).expect("dimensions match"))
                    .collect();
                axial_core::axial::DihedralSeed::new(s.lo, axes)
            });
            let inst = Instance::new(
                &format!("{}/I", src.name),
                quotient,
                src.eta.clone(),
                seed,
                None,
            );
            let file = AlgebraFile::from_instance(&inst, None);
            if json {
                writeln!(out, "{}", file.to_json().trim_end())?;
            } else {
                writeln!(
                    out,
                    "ideal of dimension {}, quotient of dimension {}",
                    span.dim(),
                    inst.algebra.dim()
                )?;
                write!(out, "{}", file.to_json())?;
            }
            Ok(true)
        }
    }
}

fn catalog(action: CatalogAction, out: &mut dyn Write) -> Result<bool, CliError> {
    match action {
        CatalogAction::List { json } => {
            let entries: Vec<_> = EntryName::ALL
                .iter()
                .map(|e| {
                    let info = e.info();
                    json!({
                        "name": e.as_str(),
                        "summary": info.summary,
                        "constraints": info.constraint_text(),
                        "axial_dimension": info.adim,
                        "relation_case": info.case.number(),
                    })
                })
                .collect();
            let stubs: Vec<_> = STUBS
                .iter()
                .map(|(n, s)| json!({ "name": n, "summary": s }))
                .collect();
            if json {
                let doc = json!({ "entries": entries, "listed_without_tables": stubs });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serialisable")
                )?;
            } else {
                for e in EntryName::ALL {
                    let info = e.info();
                    writeln!(
                        out,
                        "{:<11} adim {}  {}  [{}]",
                        e.as_str(),
                        info.adim,
                        info.summary,
                        info.constraint_text()
                    )?;
                }
                writeln!(out, "listed without tables:")?;
                for (n, s) in STUBS {
                    writeln!(out, "  {n:<18} {s}")?;
                }
            }
            Ok(true)
        }
        CatalogAction::Emit { name, field, eta } => {
            let entry: EntryName = name.parse()?;
            let inst = load(&name, field.as_deref(), eta.as_deref(), None)?;
            write!(
                out,
                "{}",
                AlgebraFile::from_instance(&inst, entry_constraints(entry)).to_json()
            )?;
            Ok(true)
        }
        CatalogAction::Claims { json } => {
            let start = Instant::now();
            let claims = check_claims();
            let elapsed = start.elapsed().as_millis() as u64;
            let ok = claims.iter().all(|c| c.holds);
            if json {
                let doc = json!({ "claims": claims, "duration_ms": elapsed });
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serialisable")
                )?;
            } else {
                for c in &claims {
                    writeln!(
                        out,
                        "{} {}: {}",
                        if c.holds { "HOLDS" } else { "FAILS" },
                        c.id,
                        c.statement
                    )?;
                    for d in &c.details {
                        writeln!(out, "    {d}")?;
                    }
                }
            }
            Ok(ok)
        }
    }
}

fn print_report(r: &VerificationReport, elapsed: u64, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{} over {} with eta = {} (dimension {})",
        r.name, r.field, r.eta, r.dimension
    )?;
    for c in &r.checks {
        writeln!(
            out,
            "  {:<11} {}",
            c.check.to_string(),
            match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            }
        )?;
        for d in &c.details {
            writeln!(out, "      {d}")?;
        }
    }
    if let Some(d) = r.eigenspace_dims {
        writeln!(
            out,
            "  eigenspace dimensions at a_0 (0, 1, eta+, eta-): {d:?}"
        )?;
    }
    if let Some(rel) = &r.relation {
        writeln!(
            out,
            "  axial dimension {}, relation case {} ({}), coefficients [{}]",
            rel.adim,
            rel.case,
            rel.parity,
            rel.coefficients.join(", ")
        )?;
    }
    for (k, v) in &r.scalars {
        writeln!(out, "  {k} = {v}")?;
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}")?;
    }
    writeln!(
        out,
        "  {} in {elapsed} ms",
        if r.passed() { "PASS" } else { "FAIL" }
    )?;
    Ok(())
}
