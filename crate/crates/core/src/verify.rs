//! Running the checks on an instantiated algebra and collecting a report.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{extend_from_generators, AlgebraRef, Extension};
use crate::axial::{
    axial_dimension, check_dihedral, check_fusion, formal_relation, identity_suite,
    relation_transform, split_eigenspace, DihedralBuildError, DihedralData, DihedralSeed,
    RelationCase, RelationWitness, TransformMode,
};
use crate::exactfield::FieldElement;
use crate::linalg::Matrix;

/// An algebra with its η and (when it can be built) its dihedral data.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub algebra: AlgebraRef,
    pub eta: FieldElement,
    pub seed: Option<DihedralSeed>,
    pub dihedral: Option<Result<DihedralData, DihedralBuildError>>,
    /// Documented relation, compared against the computed one.
    pub expected_relation: Option<ExpectedRelation>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRelation {
    pub adim: usize,
    pub case: RelationCase,
    pub coefficients: Vec<FieldElement>,
}

pub const DEFAULT_WINDOW_MARGIN: usize = 2;

impl Instance {
    pub fn new(
        name: &str,
        algebra: AlgebraRef,
        eta: FieldElement,
        seed: Option<DihedralSeed>,
        window: Option<usize>,
    ) -> Self {
        let window = window.unwrap_or(algebra.dim() + DEFAULT_WINDOW_MARGIN);
        let dihedral = seed
            .clone()
            .map(|s| DihedralData::from_seed(&algebra, &eta, s, window));
        Instance {
            name: name.into(),
            algebra,
            eta,
            seed,
            dihedral,
            expected_relation: None,
            notes: Vec::new(),
        }
    }

    pub fn dihedral_data(&self) -> Option<&DihedralData> {
        self.dihedral.as_ref().and_then(|r| r.as_ref().ok())
    }

    /// `τ₀`, taken from the dihedral data or, failing that, from the flip
    /// pairs of the seed alone.
    pub fn flip_matrix(&self) -> Result<Matrix, String> {
        if let Some(dd) = self.dihedral_data() {
            return Ok(dd.flip().matrix().clone());
        }
        let seed = self.seed.as_ref().ok_or("no dihedral data")?;
        let pairs: Vec<_> = if seed.flip_images.is_empty() {
            (seed.lo..=seed.hi())
                .filter_map(|i| Some((seed.axis(i)?.clone(), seed.axis(-i)?.clone())))
                .collect()
        } else {
            seed.flip_images.clone()
        };
        match extend_from_generators(&self.algebra, &pairs, &self.algebra) {
            Ok(Extension::Map(m)) => Ok(m.matrix().clone()),
            Ok(Extension::Inconsistent { word }) => {
                Err(format!("flip does not extend (conflict at {word})"))
            }
            Ok(Extension::NotGenerating { dim }) => {
                Err(format!("flip generators span dimension {dim}"))
            }
            Err(e) => Err(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Fusion,
    Dihedral,
    Relations,
    Identities,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [
        CheckKind::Fusion,
        CheckKind::Dihedral,
        CheckKind::Relations,
        CheckKind::Identities,
    ];

    pub fn parse(text: &str) -> Option<Vec<CheckKind>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match part {
                "all" => out.extend(Self::ALL),
                "fusion" => out.push(CheckKind::Fusion),
                "dihedral" => out.push(CheckKind::Dihedral),
                "relations" => out.push(CheckKind::Relations),
                "identities" => out.push(CheckKind::Identities),
                _ => return None,
            }
        }
        out.sort();
        out.dedup();
        Some(out)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Fusion => "fusion",
            CheckKind::Dihedral => "dihedral",
            CheckKind::Relations => "relations",
            CheckKind::Identities => "identities",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub status: Status,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationSummary {
    pub adim: usize,
    pub case: u8,
    pub parity: String,
    pub coefficients: Vec<String>,
}

impl RelationSummary {
    pub fn from_witness(w: &RelationWitness) -> Self {
        RelationSummary {
            adim: w.adim,
            case: w.case.number(),
            parity: w.parity().into(),
            coefficients: w.coefficients.iter().map(FieldElement::render).collect(),
        }
    }
}

/// Deterministic verification result; all scalars are canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub field: String,
    pub eta: String,
    pub dimension: usize,
    pub status: Status,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenspace_dims: Option<[usize; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationSummary>,
    pub scalars: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, kind: CheckKind) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == kind)
    }
}

/// Run the selected checks; the others are reported as skipped.
pub fn verify_instance(inst: &Instance, checks: &[CheckKind]) -> VerificationReport {
    let mut report = VerificationReport {
        name: inst.name.clone(),
        field: inst.algebra.field().to_string(),
        eta: inst.eta.render(),
        dimension: inst.algebra.dim(),
        status: Status::Pass,
        checks: Vec::new(),
        eigenspace_dims: None,
        relation: None,
        scalars: BTreeMap::new(),
        notes: inst.notes.clone(),
    };
    for kind in CheckKind::ALL {
        let outcome = match kind {
            _ if !checks.contains(&kind) => CheckOutcome {
                check: kind,
                status: Status::Skipped,
                details: Vec::new(),
            },
            CheckKind::Fusion => fusion_check(inst, &mut report),
            CheckKind::Dihedral => dihedral_check(inst),
            CheckKind::Relations => relations_check(inst, &mut report),
            CheckKind::Identities => identities_check(inst, &mut report),
        };
        report.checks.push(outcome);
    }
    report.status = Status::from_bool(report.checks.iter().all(|c| c.status != Status::Fail));
    report
}

fn outcome(check: CheckKind, details: Vec<String>, ok: bool) -> CheckOutcome {
    CheckOutcome {
        check,
        status: Status::from_bool(ok),
        details,
    }
}

fn axis_zero(inst: &Instance) -> Option<crate::linalg::Vector> {
    inst.dihedral_data()
        .map(|dd| dd.axis(0))
        .or_else(|| inst.seed.as_ref()?.axis(0).cloned())
}

fn fusion_check(inst: &Instance, report: &mut VerificationReport) -> CheckOutcome {
    let kind = CheckKind::Fusion;
    let Some(a0) = axis_zero(inst) else {
        return outcome(kind, vec!["no axis a_0 given".into()], false);
    };
    let tau = match inst.flip_matrix() {
        Ok(t) => t,
        Err(e) => return outcome(kind, vec![e], false),
    };
    let dec = match split_eigenspace(&inst.algebra, &a0, &inst.eta, &tau) {
        Ok(d) => d,
        Err(e) => return outcome(kind, vec![format!("a_0: {e}")], false),
    };
    report.eigenspace_dims = Some(dec.dims());
    match check_fusion(&inst.algebra, &dec) {
        Ok(v) if v.is_empty() => outcome(kind, Vec::new(), true),
        Ok(v) => {
            let details = v
                .iter()
                .map(|f| {
                    format!(
                        "parts ({}, {}): product {} escapes",
                        f.left,
                        f.right,
                        crate::algebra::render_vector(&inst.algebra, &f.product)
                    )
                })
                .collect();
            outcome(kind, details, false)
        }
        Err(e) => outcome(kind, vec![e.to_string()], false),
    }
}

fn dihedral_check(inst: &Instance) -> CheckOutcome {
    let kind = CheckKind::Dihedral;
    match &inst.dihedral {
        None => outcome(kind, vec!["no dihedral data".into()], false),
        Some(Err(e)) => outcome(kind, vec![format!("{}: {e}", e.condition())], false),
        Some(Ok(dd)) => match check_dihedral(dd) {
            Ok(v) if v.is_empty() => outcome(kind, Vec::new(), true),
            Ok(v) => outcome(
                kind,
                v.iter()
                    .map(|x| format!("{}: {}", x.condition, x.detail))
                    .collect(),
                false,
            ),
            Err(e) => outcome(kind, vec![e.to_string()], false),
        },
    }
}

/// Agreement of the closed-form transforms with formal flip/shift
/// application, and vanishing of the transformed relation in the algebra.
pub fn transform_consistency(dd: &DihedralData, witness: &RelationWitness) -> Vec<String> {
    let modes: &[TransformMode] = match witness.case {
        RelationCase::OddShifted => &[
            TransformMode::FlipDifference,
            TransformMode::FlipDifferenceSpread,
        ],
        RelationCase::EvenCentered => &[
            TransformMode::ShiftDifference,
            TransformMode::ShiftThenFlipDifference,
            TransformMode::ShiftThenFlipDifferenceSpread,
        ],
        _ => &[],
    };
    let mut problems = Vec::new();
    let relation = witness.combination();
    if !dd.evaluate(&relation).is_zero() {
        problems.push("relation does not vanish".into());
    }
    for &mode in modes {
        let alphas: Vec<FieldElement> = (0..=witness.k).map(|i| witness.alpha(i)).collect();
        debug_assert_eq!(formal_relation(&alphas, mode), relation);
        let transformed = mode.apply_formally(&relation);
        if !dd.evaluate(&transformed).is_zero() {
            problems.push(format!("{mode:?}: transformed relation does not vanish"));
        }
        let closed = relation_transform(&alphas, mode);
        match mode.read_coefficients(&transformed) {
            Some(read) => {
                let zero = dd.eta().field().zero();
                let len = read.len().max(closed.len());
                let at = |v: &[FieldElement], i: usize| {
                    v.get(i).cloned().unwrap_or_else(|| zero.clone())
                };
                if (0..len).any(|i| at(&read, i) != at(&closed, i)) {
                    problems.push(format!(
                        "{mode:?}: closed form disagrees with formal application"
                    ));
                }
            }
            None => problems.push(format!(
                "{mode:?}: transformed relation has an unexpected shape"
            )),
        }
    }
    problems
}

fn relations_check(inst: &Instance, report: &mut VerificationReport) -> CheckOutcome {
    let kind = CheckKind::Relations;
    let Some(dd) = inst.dihedral_data() else {
        let why = match &inst.dihedral {
            Some(Err(e)) => format!("no shift/flip: {e}"),
            _ => "no dihedral data".into(),
        };
        return outcome(kind, vec![why], false);
    };
    let witness = match axial_dimension(dd) {
        Ok(w) => w,
        Err(e) => return outcome(kind, vec![e.to_string()], false),
    };
    report.relation = Some(RelationSummary::from_witness(&witness));
    let mut problems = Vec::new();
    if let Some(expected) = &inst.expected_relation {
        if expected.adim != witness.adim {
            problems.push(format!(
                "axial dimension {} differs from documented {}",
                witness.adim, expected.adim
            ));
        }
        if expected.case != witness.case {
            problems.push(format!(
                "relation case {} differs from documented {}",
                witness.case.number(),
                expected.case.number()
            ));
        } else if expected.coefficients != witness.coefficients {
            problems.push("relation coefficients differ from documented ones".into());
        }
    }
    problems.extend(transform_consistency(dd, &witness));
    let ok = problems.is_empty();
    outcome(kind, problems, ok)
}

fn identities_check(inst: &Instance, report: &mut VerificationReport) -> CheckOutcome {
    let kind = CheckKind::Identities;
    let Some(dd) = inst.dihedral_data() else {
        return outcome(kind, vec!["no dihedral data".into()], false);
    };
    let ids = match identity_suite(dd) {
        Ok(r) => r,
        Err(e) => return outcome(kind, vec![e.to_string()], false),
    };
    for (i, l) in ids.lambdas.iter().enumerate() {
        report
            .scalars
            .insert(format!("lambda{}", i + 1), l.render());
    }
    for (name, v) in [
        ("mu", &ids.mu),
        ("nu", &ids.nu),
        ("rho", &ids.rho),
        ("pi", &ids.pi),
    ] {
        if let Some(v) = v {
            report.scalars.insert(name.into(), v.render());
        }
    }
    report.scalars.insert(
        "two_axis_subalgebra_dim".into(),
        ids.two_generated_dim.to_string(),
    );
    let details = ids
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} fails: {}", c.name, c.detail))
        .collect();
    outcome(kind, details, ids.all_hold())
}
