//! Named algebras with their admissible parameters, instantiated over a
//! chosen field.

pub mod claims;
pub mod entries;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{parse_vector, AlgebraDef, AlgebraError};
use crate::axial::{DihedralSeed, RelationCase};
use crate::exactfield::{parse_scalar_bound, Field, FieldDescriptor, FieldElement, FieldError};
use crate::linalg::Vector;
use crate::verify::{ExpectedRelation, Instance};

pub use claims::{check_claims, ClaimResult};
pub use entries::{axis_label, Recipe};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalogue entry {0:?}")]
    UnknownEntry(String),
    #[error("parameter rejected: {0}")]
    ConstraintViolation(String),
    #[error("a structure constant has a vanishing denominator at this parameter")]
    DenominatorVanishes,
    #[error(transparent)]
    Field(FieldError),
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl From<FieldError> for CatalogError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::DivisionByZero | FieldError::DenominatorVanishes => {
                CatalogError::DenominatorVanishes
            }
            other => CatalogError::Field(other),
        }
    }
}

impl From<AlgebraError> for CatalogError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Field(f) => f.into(),
            other => CatalogError::Algebra(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntryName {
    ThreeEv,
    ThreeEvX,
    FourEv,
    FourEvX,
    BarFourTwo,
    FiveThree,
    SixThree,
    Seven,
    SevenX,
}

impl EntryName {
    pub const ALL: [EntryName; 9] = [
        EntryName::ThreeEv,
        EntryName::ThreeEvX,
        EntryName::FourEv,
        EntryName::FourEvX,
        EntryName::BarFourTwo,
        EntryName::FiveThree,
        EntryName::SixThree,
        EntryName::Seven,
        EntryName::SevenX,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntryName::ThreeEv => "ThreeEv",
            EntryName::ThreeEvX => "ThreeEvX",
            EntryName::FourEv => "FourEv",
            EntryName::FourEvX => "FourEvX",
            EntryName::BarFourTwo => "BarFourTwo",
            EntryName::FiveThree => "FiveThree",
            EntryName::SixThree => "SixThree",
            EntryName::Seven => "Seven",
            EntryName::SevenX => "SevenX",
        }
    }

    pub fn recipe(self) -> Recipe {
        match self {
            EntryName::ThreeEv => entries::three_ev(),
            EntryName::ThreeEvX => entries::three_ev_x(),
            EntryName::FourEv => entries::four_ev(),
            EntryName::FourEvX => entries::four_ev_x(),
            EntryName::BarFourTwo => entries::bar_four_two(),
            EntryName::FiveThree => entries::five_three(),
            EntryName::SixThree => entries::six_three(),
            EntryName::Seven => entries::seven(),
            EntryName::SevenX => entries::seven_x(),
        }
    }

    pub fn info(self) -> EntryInfo {
        let rf = FieldDescriptor::RationalFunctions {
            variable: "eta".into(),
        };
        let q = FieldDescriptor::Rationals;
        let generic = |exclude: &'static [&'static str]| EtaRule::Generic { exclude };
        let (summary, eta, default_field, relation) = match self {
            EntryName::ThreeEv => (
                "3-dim axes a_-1, a_0, a_1 plus p1",
                generic(&[]),
                rf,
                (3, RelationCase::EvenShifted, &["-2*eta", "1"][..]),
            ),
            EntryName::ThreeEvX => (
                "quotient of ThreeEv at eta = -1/3 by p1",
                EtaRule::Fixed("-1/3"),
                q,
                (3, RelationCase::OddShifted, &["0", "1"][..]),
            ),
            EntryName::FourEv => (
                "4 axes a_-1..a_2 plus p1",
                generic(&["-1"]),
                rf,
                (
                    4,
                    RelationCase::EvenCentered,
                    &["-2*eta/(eta+1)", "-2*eta/(eta+1)", "1"][..],
                ),
            ),
            EntryName::FourEvX => (
                "quotient of FourEv at eta = -1/3 by p1",
                EtaRule::Fixed("-1/3"),
                q,
                (4, RelationCase::EvenCentered, &["1", "1", "1"][..]),
            ),
            EntryName::BarFourTwo => (
                "7-dim algebra at eta = 2 with p1, p20, p21",
                EtaRule::Fixed("2"),
                q,
                (4, RelationCase::OddCentered, &["0", "1"][..]),
            ),
            EntryName::FiveThree => (
                "5 axes with a_i a_j = -eta/4 (sum) + eta (a_i + a_j)",
                generic(&[]),
                rf,
                (5, RelationCase::OddShifted, &["0", "0", "1"][..]),
            ),
            EntryName::SixThree => (
                "6 axes plus p1, eta a root of eta^2 + 2 eta - 1",
                EtaRule::RootOf(&[-1, 2, 1]),
                FieldDescriptor::NumberField {
                    minpoly: vec![-1, 2, 1],
                    variable: "eta".into(),
                },
                (6, RelationCase::OddCentered, &["0", "0", "1"][..]),
            ),
            EntryName::Seven => (
                "8-dim algebra at eta = 4/3 with p1",
                EtaRule::Fixed("4/3"),
                q,
                (7, RelationCase::OddShifted, &["0", "1", "1", "1"][..]),
            ),
            EntryName::SevenX => (
                "quotient of Seven over GF(5) by p1",
                EtaRule::Fixed("4/3"),
                FieldDescriptor::Prime { p: 5 },
                (7, RelationCase::OddShifted, &["0", "1", "1", "1"][..]),
            ),
        };
        let (characteristic, excluded_characteristics): (Option<u64>, &'static [u64]) = match self {
            EntryName::SevenX => (Some(5), &[]),
            EntryName::Seven => (None, &[3]),
            EntryName::ThreeEvX | EntryName::FourEvX => (None, &[3]),
            _ => (None, &[]),
        };
        EntryInfo {
            name: self,
            summary,
            eta,
            default_field,
            characteristic,
            excluded_characteristics,
            adim: relation.0,
            case: relation.1,
            coefficients: relation.2,
        }
    }
}

impl fmt::Display for EntryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntryName {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntryName::ALL
            .into_iter()
            .find(|e| e.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownEntry(s.to_string()))
    }
}

/// How η is constrained for an entry.
#[derive(Clone, Copy, Debug)]
pub enum EtaRule {
    /// Free parameter, apart from 0, 1, 1/2 and the listed values.
    Generic {
        exclude: &'static [&'static str],
    },
    Fixed(&'static str),
    /// η must satisfy the monic polynomial (integer coefficients, low first).
    RootOf(&'static [i64]),
}

#[derive(Clone, Debug)]
pub struct EntryInfo {
    pub name: EntryName,
    pub summary: &'static str,
    pub eta: EtaRule,
    pub default_field: FieldDescriptor,
    pub characteristic: Option<u64>,
    pub excluded_characteristics: &'static [u64],
    pub adim: usize,
    pub case: RelationCase,
    pub coefficients: &'static [&'static str],
}

impl EntryInfo {
    /// Parameter constraints in plain text, for listings.
    pub fn constraint_text(&self) -> String {
        let mut parts = Vec::new();
        match self.eta {
            EtaRule::Generic { exclude } => {
                let mut ex = vec!["0", "1", "1/2"];
                ex.extend(exclude);
                parts.push(format!("eta not in {{{}}}", ex.join(", ")));
            }
            EtaRule::Fixed(v) => parts.push(format!("eta = {v}")),
            EtaRule::RootOf(m) => {
                let poly = crate::exactfield::QPoly::from_integers(m);
                parts.push(format!("{} = 0", poly.render("eta")));
            }
        }
        if let Some(p) = self.characteristic {
            parts.push(format!("characteristic {p}"));
        }
        if !self.excluded_characteristics.is_empty() {
            let list: Vec<String> = self
                .excluded_characteristics
                .iter()
                .map(u64::to_string)
                .collect();
            parts.push(format!("characteristic not in {{2, {}}}", list.join(", ")));
        }
        parts.join("; ")
    }
}

/// Specialisations of 2-generated algebras with distinct eigenvalues,
/// listed by type and parameters only (no tables).
pub const STUBS: [(&str, &str); 8] = [
    ("JordanType", "primitive axial algebras of Jordan type"),
    ("ThreeEtaEtaZero", "type 3 with parameters (eta, eta, 0)"),
    (
        "ThreeEtaEtaZeroX",
        "type 3 with parameters (-1/3, -1/3, 0), quotient form",
    ),
    ("FourOneQuarter", "type 4_1 with parameters (1/4, 1/4)"),
    ("FourTwoTwoHalf", "type 4_2 with parameters (2, 2, 1/2)"),
    (
        "FourTwoXi",
        "type 4_2 with parameters (xi, (1-xi^2)/2, -1/(xi+1)), xi^2 + 2 xi - 1 = 0",
    ),
    ("FiveOneMinusThird", "type 5_1 with parameters (-1/3, -1/3)"),
    ("SixTwoFourNinths", "type 6_2 with parameters (4/9, 4/9)"),
];

/// Parse a CLI field spec: `q`, `gf:P`, `qeta`, `nf:c0,c1,…`.
pub fn parse_field_spec(spec: &str) -> Result<FieldDescriptor, FieldError> {
    let spec = spec.trim();
    let bad = || FieldError::InvalidDescriptor(format!("unrecognised field {spec:?}"));
    if spec.eq_ignore_ascii_case("q") {
        return Ok(FieldDescriptor::Rationals);
    }
    if spec.eq_ignore_ascii_case("qeta") {
        return Ok(FieldDescriptor::RationalFunctions {
            variable: "eta".into(),
        });
    }
    if let Some(p) = spec.strip_prefix("gf:") {
        return Ok(FieldDescriptor::Prime {
            p: p.trim().parse().map_err(|_| bad())?,
        });
    }
    if let Some(cs) = spec.strip_prefix("nf:") {
        let minpoly = cs
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        return Ok(FieldDescriptor::NumberField {
            minpoly,
            variable: "eta".into(),
        });
    }
    Err(bad())
}

/// Resolve and validate η for an entry over `field`.
pub fn resolve_eta(
    info: &EntryInfo,
    field: &Field,
    eta: Option<&str>,
) -> Result<(FieldElement, Vec<String>), CatalogError> {
    let mut notes = Vec::new();
    let p = field.characteristic();
    if let Some(required) = info.characteristic {
        if p != required {
            return Err(CatalogError::ConstraintViolation(format!(
                "{} requires characteristic {required}, got {field}",
                info.name
            )));
        }
    }
    if info.excluded_characteristics.contains(&p) {
        return Err(CatalogError::ConstraintViolation(format!(
            "{} is undefined in characteristic {p}",
            info.name
        )));
    }
    let given = eta
        .map(|text| parse_scalar_bound(text, field, &[]))
        .transpose()?;
    let value = match info.eta {
        EtaRule::Fixed(text) => {
            let fixed = parse_scalar_bound(text, field, &[])?;
            if let Some(g) = &given {
                if g != &fixed {
                    return Err(CatalogError::ConstraintViolation(format!(
                        "{} is defined only for eta = {text}",
                        info.name
                    )));
                }
            }
            fixed
        }
        EtaRule::Generic { exclude } => {
            let value = match given {
                Some(v) => v,
                None => field.generator().map_err(|_| {
                    CatalogError::ConstraintViolation(format!(
                        "{} needs --eta over {field}",
                        info.name
                    ))
                })?,
            };
            let half = field.one().checked_div(&field.from_integer(2))?;
            if value.is_zero() || value.is_one() || value == half {
                return Err(CatalogError::ConstraintViolation(format!(
                    "eta = {} is excluded",
                    value.render()
                )));
            }
            for text in exclude {
                if value == parse_scalar_bound(text, field, &[])? {
                    return Err(CatalogError::ConstraintViolation(format!(
                        "{} is undefined at eta = {text}",
                        info.name
                    )));
                }
            }
            value
        }
        EtaRule::RootOf(poly) => {
            if matches!(
                field.descriptor(),
                FieldDescriptor::RationalFunctions { .. }
            ) {
                return Err(CatalogError::ConstraintViolation(format!(
                    "{} needs eta to be a root of a fixed polynomial; a transcendental eta is not allowed",
                    info.name
                )));
            }
            let value = match given {
                Some(v) => v,
                None => field.generator().map_err(|_| {
                    CatalogError::ConstraintViolation(format!(
                        "{} needs --eta over {field}",
                        info.name
                    ))
                })?,
            };
            if value.is_zero() || value.is_one() {
                return Err(CatalogError::ConstraintViolation(format!(
                    "eta = {} is excluded",
                    value.render()
                )));
            }
            let mut residual = field.zero();
            for (k, c) in poly.iter().enumerate() {
                residual = &residual + &(&field.from_integer(*c) * &value.pow(k as u32));
            }
            if !residual.is_zero() {
                notes.push(format!(
                    "eta = {} is not a root of {}; the table is evaluated anyway",
                    value.render(),
                    crate::exactfield::QPoly::from_integers(poly).render("eta")
                ));
            }
            value
        }
    };
    Ok((value, notes))
}

/// Evaluate a recipe over `field` with `eta` bound.
pub fn build_algebra(
    recipe: &Recipe,
    field: &Field,
    eta: &FieldElement,
) -> Result<Arc<AlgebraDef>, CatalogError> {
    let bindings = [("eta", eta.clone())];
    let n = recipe.labels.len();
    let mut products = Vec::new();
    for (left, right, terms) in recipe.products() {
        let mut v = Vector::zeros(field, n);
        for (label, coeff) in terms {
            let k = recipe
                .labels
                .iter()
                .position(|l| *l == label)
                .expect("recipe labels are consistent");
            v.set(k, parse_scalar_bound(&coeff, field, &bindings)?);
        }
        let i = recipe.labels.iter().position(|l| *l == left).unwrap();
        let j = recipe.labels.iter().position(|l| *l == right).unwrap();
        products.push((i, j, v));
    }
    Ok(Arc::new(AlgebraDef::new(
        field,
        recipe.labels.clone(),
        products,
    )?))
}

pub fn build_seed(
    recipe: &Recipe,
    alg: &AlgebraDef,
    eta: &FieldElement,
) -> Result<DihedralSeed, CatalogError> {
    let bindings = [("eta", eta.clone())];
    let axes = recipe
        .seed_axes
        .iter()
        .map(|s| parse_vector(alg, s, &bindings))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DihedralSeed::new(recipe.seed_lo, axes))
}

/// Instantiate an entry over `field` (default: the entry's own field).
pub fn instantiate(
    name: EntryName,
    field: Option<&Field>,
    eta: Option<&str>,
    window: Option<usize>,
) -> Result<Instance, CatalogError> {
    let info = name.info();
    let field = match field {
        Some(f) => f.clone(),
        None => Field::new(info.default_field.clone())?,
    };
    let (eta, notes) = resolve_eta(&info, &field, eta)?;
    let recipe = name.recipe();
    let alg = build_algebra(&recipe, &field, &eta)?;
    let seed = build_seed(&recipe, &alg, &eta)?;
    let mut inst = Instance::new(name.as_str(), alg, eta.clone(), Some(seed), window);
    inst.notes = notes;
    let coefficients = info
        .coefficients
        .iter()
        .map(|c| parse_scalar_bound(c, &field, &[("eta", eta.clone())]))
        .collect::<Result<Vec<_>, _>>()?;
    inst.expected_relation = Some(ExpectedRelation {
        adim: info.adim,
        case: info.case,
        coefficients,
    });
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_instance, CheckKind};

    #[test]
    fn names_round_trip() {
        for e in EntryName::ALL {
            assert_eq!(e.as_str().parse::<EntryName>().unwrap(), e);
        }
        assert!("Nope".parse::<EntryName>().is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!(
            parse_field_spec("gf:7").unwrap(),
            FieldDescriptor::Prime { p: 7 }
        );
        assert_eq!(
            parse_field_spec("nf:-1,2,1").unwrap(),
            FieldDescriptor::NumberField {
                minpoly: vec![-1, 2, 1],
                variable: "eta".into()
            }
        );
        assert!(parse_field_spec("r").is_err());
    }

    #[test]
    fn parameter_constraints() {
        let q = Field::rationals();
        let rejected = |name: EntryName, field: &Field, eta: Option<&str>| {
            matches!(
                instantiate(name, Some(field), eta, None),
                Err(CatalogError::ConstraintViolation(_))
            )
        };
        assert!(rejected(EntryName::FiveThree, &q, Some("1/2")));
        assert!(rejected(EntryName::FiveThree, &q, Some("0")));
        assert!(rejected(EntryName::FiveThree, &q, None));
        assert!(rejected(EntryName::FourEv, &q, Some("-1")));
        assert!(rejected(EntryName::Seven, &q, Some("2")));
        assert!(rejected(EntryName::SevenX, &q, None));
        assert!(rejected(
            EntryName::SixThree,
            &Field::rational_functions("eta").unwrap(),
            None
        ));
        assert!(rejected(EntryName::Seven, &Field::prime(3).unwrap(), None));
        assert!(
            instantiate(EntryName::SixThree, Some(&q), Some("3"), None)
                .unwrap()
                .notes
                .len()
                == 1
        );
    }

    #[test]
    fn verified_entries_pass() {
        for name in [
            EntryName::FiveThree,
            EntryName::ThreeEvX,
            EntryName::FourEvX,
            EntryName::BarFourTwo,
        ] {
            let inst = instantiate(name, None, None, None).unwrap();
            let report = verify_instance(&inst, &CheckKind::ALL);
            assert!(report.passed(), "{name}: {report:#?}");
        }
    }

    #[test]
    fn three_ev_shift_does_not_extend() {
        let inst = instantiate(EntryName::ThreeEv, None, None, None).unwrap();
        let report = verify_instance(&inst, &[CheckKind::Dihedral]);
        assert!(!report.passed());
        assert!(report.check(CheckKind::Dihedral).unwrap().details[0].starts_with("D2"));
    }
}
