//! Randomised invariants, 1000 cases each with a fixed seed. Shared with the
//! acceptance checks.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use axial_core::algebra::{AlgebraDef, AlgebraMap, AlgebraRef};
use axial_core::axial::{
    axial_dimension, formal_relation, miyamoto, relation_transform, split_eigenspace, DihedralData,
    RelationCase, TransformMode,
};
use axial_core::catalog::{instantiate, EntryName};
use axial_core::exactfield::{Field, FieldElement, QPoly};
use axial_core::linalg::{kernel, Matrix, Vector};

const CASES: u32 = 1000;
const SEED: [u8; 32] = *b"axial-property-suite-fixed-seed!";

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED));
    if let Err(e) = runner.run(&strategy, test) {
        panic!("{e}");
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Raw material for one element: six small rationals.
type Raw = Vec<(i64, i64)>;

fn raw() -> impl Strategy<Value = Raw> {
    prop::collection::vec((-30i64..=30, 1i64..=12), 6)
}

fn fields() -> Vec<Field> {
    vec![
        Field::rationals(),
        Field::prime(3).unwrap(),
        Field::prime(7).unwrap(),
        Field::prime(101).unwrap(),
        Field::number_field(&[-1, 2, 1], "eta").unwrap(),
        Field::number_field(&[-2, 0, 0, 1], "eta").unwrap(),
        Field::rational_functions("eta").unwrap(),
    ]
}

fn poly(raw: &[(i64, i64)]) -> QPoly {
    QPoly::from_coeffs(raw.iter().map(|&(n, d)| rat(n, d)).collect())
}

/// Element of `field` built from raw data.
fn element(field: &Field, raw: &Raw) -> FieldElement {
    match field.descriptor() {
        axial_core::exactfield::FieldDescriptor::Rationals => {
            field.from_rational(&rat(raw[0].0, raw[0].1)).unwrap()
        }
        axial_core::exactfield::FieldDescriptor::Prime { .. } => {
            field.from_integer(raw[0].0 * 37 + raw[1].0)
        }
        axial_core::exactfield::FieldDescriptor::NumberField { .. } => {
            let eta = field.generator().unwrap();
            let mut acc = field.zero();
            for (k, &(n, d)) in raw[..3].iter().enumerate() {
                acc = &acc + &(&field.from_rational(&rat(n, d)).unwrap() * &eta.pow(k as u32));
            }
            acc
        }
        axial_core::exactfield::FieldDescriptor::RationalFunctions { .. } => {
            let den = poly(&raw[3..5]);
            let den = if den.is_zero() { QPoly::one() } else { den };
            field.rational_function(poly(&raw[..3]), den).unwrap()
        }
    }
}

pub fn field_laws_hold_in_every_kind() {
    let fs = fields();
    check((0..fs.len(), raw(), raw(), raw()), |(k, rx, ry, rz)| {
        let f = &fs[k];
        let (x, y, z) = (element(f, &rx), element(f, &ry), element(f, &rz));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &f.zero(), x.clone());
        prop_assert_eq!(&x * &f.one(), x.clone());
        prop_assert!((&x - &x.clone()).is_zero());
        prop_assert_eq!(&x + &(-&x), f.zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
        } else {
            prop_assert!(x.checked_div(&y).is_err());
        }
        Ok(())
    });
}

pub fn rendering_parses_back() {
    let fs = fields();
    check((0..fs.len(), raw()), |(k, r)| {
        let x = element(&fs[k], &r);
        prop_assert_eq!(fs[k].parse(&x.render()).unwrap(), x);
        Ok(())
    });
}

pub fn specialisation_is_a_homomorphism() {
    let rf = Field::rational_functions("eta").unwrap();
    let targets = [
        Field::rationals(),
        Field::prime(7).unwrap(),
        Field::prime(13).unwrap(),
    ];
    check(
        (raw(), raw(), -20i64..=20, 1i64..=9, 0..targets.len()),
        |(rx, ry, n, d, t)| {
            let target = &targets[t];
            let value = match target.characteristic() {
                0 => target.from_rational(&rat(n, d)).unwrap(),
                _ => target.from_integer(n),
            };
            let (x, y) = (element(&rf, &rx), element(&rf, &ry));
            let (Ok(sx), Ok(sy)) = (x.specialize(&value), y.specialize(&value)) else {
                return Ok(());
            };
            // The sum and product have denominators dividing the product of the
            // inputs' denominators, so they specialise as well.
            prop_assert_eq!((&x + &y).specialize(&value).unwrap(), &sx + &sy);
            prop_assert_eq!((&x * &y).specialize(&value).unwrap(), &sx * &sy);
            Ok(())
        },
    );
}

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=5, 1usize..=5, 0usize..3).prop_flat_map(|(r, c, k)| {
        (
            Just(k),
            prop::collection::vec(prop::collection::vec(-4i64..=4, c), r),
        )
    })
}

fn matrix_over(field: &Field, rows: &[Vec<i64>]) -> Matrix {
    let cols = rows[0].len();
    let rows: Vec<Vector> = rows
        .iter()
        .map(|r| Vector::new(field, r.iter().map(|&v| field.from_integer(v)).collect()).unwrap())
        .collect();
    Matrix::from_rows(field, cols, &rows).unwrap()
}

pub fn rref_rank_and_kernel() {
    let fs = [
        Field::rationals(),
        Field::prime(5).unwrap(),
        Field::number_field(&[-1, 2, 1], "eta").unwrap(),
    ];
    check(small_matrix(), |(k, rows)| {
        let f = &fs[k];
        let m = matrix_over(f, &rows);
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(&twice.pivots, &once.pivots);
        let ker = kernel(&m);
        prop_assert_eq!(m.rank() + ker.dim(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in ker.basis() {
            prop_assert!(m.apply(v).unwrap().is_zero());
        }
        Ok(())
    });
}

fn random_vector(field: &Field, coeffs: &[i64], dim: usize) -> Vector {
    Vector::new(
        field,
        (0..dim)
            .map(|i| field.from_integer(coeffs[i % coeffs.len()]))
            .collect(),
    )
    .unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 8)
}

fn quotients() -> Vec<(AlgebraRef, AlgebraMap)> {
    let q = Field::rationals();
    let gf5 = Field::prime(5).unwrap();
    let span = |alg: &AlgebraRef, texts: &[&str]| {
        let vs: Vec<Vector> = texts
            .iter()
            .map(|t| axial_core::algebra::parse_vector(alg, t, &[]).unwrap())
            .collect();
        alg.span(&vs).unwrap()
    };
    let mut out = Vec::new();
    for (name, field, eta, ideal) in [
        (EntryName::ThreeEv, &q, Some("-1/3"), vec!["p1"]),
        (EntryName::FourEv, &q, Some("-1/3"), vec!["p1"]),
        (EntryName::Seven, &gf5, None, vec!["p1"]),
        (
            EntryName::FiveThree,
            &q,
            Some("-1/3"),
            vec!["am2 + am1 + a0 + a1 + a2"],
        ),
        (
            EntryName::BarFourTwo,
            &q,
            None,
            vec![
                "p20 + p1 + 2*(a2+a0) + a1 + am1",
                "p21 + p1 + a2 + a0 + 2*(a1+am1)",
            ],
        ),
    ] {
        let alg = instantiate(name, Some(field), eta, None).unwrap().algebra;
        let ideal = span(&alg, &ideal);
        let (quotient, projection) = alg.quotient(&ideal).unwrap();
        assert_eq!(projection.target().dim(), quotient.dim());
        out.push((alg, projection));
    }
    out
}

pub fn quotient_projection_is_multiplicative() {
    let qs = quotients();
    check((0..qs.len(), coeffs(), coeffs()), |(k, cx, cy)| {
        let (alg, proj) = &qs[k];
        let (x, y) = (
            random_vector(alg.field(), &cx, alg.dim()),
            random_vector(alg.field(), &cy, alg.dim()),
        );
        let lhs = proj.apply(&alg.mul(&x, &y)).unwrap();
        let rhs = proj
            .target()
            .mul(&proj.apply(&x).unwrap(), &proj.apply(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
}

/// Entries that build dihedral data, at concrete parameters.
fn dihedral_entries() -> Vec<DihedralData> {
    let q = Field::rationals();
    [
        (EntryName::FiveThree, Some(&q), Some("3/5")),
        (EntryName::ThreeEvX, None, None),
        (EntryName::FourEvX, None, None),
        (EntryName::BarFourTwo, None, None),
        (EntryName::SixThree, None, None),
        (EntryName::Seven, None, None),
        (EntryName::SevenX, None, None),
    ]
    .into_iter()
    .map(|(name, field, eta)| {
        let inst = instantiate(name, field, eta, None).unwrap();
        inst.dihedral_data().expect("dihedral data").clone()
    })
    .collect()
}

struct Involutions {
    alg: AlgebraRef,
    shift: Matrix,
    /// Miyamoto maps of `a_j`, `j = -2..=3`.
    maps: Vec<Matrix>,
}

fn involutions() -> Vec<Involutions> {
    dihedral_entries()
        .into_iter()
        .map(|dd| {
            let alg: AlgebraRef = dd.algebra().clone();
            let maps = (-2..=3)
                .map(|j| {
                    let tau = dd.tau(j).unwrap();
                    let dec = split_eigenspace(&alg, &dd.axis(j), dd.eta(), &tau).unwrap();
                    let m = miyamoto(&alg, &dec).unwrap().matrix().clone();
                    assert_eq!(
                        m, tau,
                        "Miyamoto map of a_{j} differs from the conjugated flip"
                    );
                    m
                })
                .collect();
            Involutions {
                alg,
                shift: dd.shift().matrix().clone(),
                maps,
            }
        })
        .collect()
}

pub fn miyamoto_involutions_are_coherent() {
    let inv = involutions();
    check(
        (0..inv.len(), 0usize..5, coeffs(), coeffs()),
        |(k, j, cx, cy)| {
            let Involutions { alg, shift, maps } = &inv[k];
            let (x, y) = (
                random_vector(alg.field(), &cx, alg.dim()),
                random_vector(alg.field(), &cy, alg.dim()),
            );
            let tau = &maps[j];
            let tx = tau.apply(&x).unwrap();
            prop_assert_eq!(tau.apply(&tx).unwrap(), x.clone());
            prop_assert_eq!(
                tau.apply(&alg.mul(&x, &y)).unwrap(),
                alg.mul(&tx, &tau.apply(&y).unwrap())
            );
            // f₁ τ(a_j) = τ(a_{j+1}) f₁
            let lhs = shift.apply(&tx).unwrap();
            let rhs = maps[j + 1].apply(&shift.apply(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    );
}

fn alphas() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 1..=6)
}

pub fn relation_transforms_match_formal_application() {
    let q = Field::rationals();
    check((alphas(), 0..TransformMode::ALL.len()), |(raw, m)| {
        let mode = TransformMode::ALL[m];
        let a: Vec<FieldElement> = raw
            .iter()
            .map(|&(n, d)| q.from_rational(&rat(n, d)).unwrap())
            .collect();
        let formal = mode.apply_formally(&formal_relation(&a, mode));
        let read = mode.read_coefficients(&formal).expect("shape preserved");
        let closed = relation_transform(&a, mode);
        let len = read.len().max(closed.len());
        let at = |v: &[FieldElement], i: usize| v.get(i).cloned().unwrap_or_else(|| q.zero());
        for i in 0..len {
            prop_assert_eq!(at(&read, i), at(&closed, i), "{:?} index {}", mode, i);
        }
        Ok(())
    });
}

pub fn transformed_relations_vanish_on_entries() {
    let cases: Vec<(DihedralData, Vec<FieldElement>, &[TransformMode])> = dihedral_entries()
        .into_iter()
        .filter_map(|dd| {
            let w = axial_dimension(&dd).unwrap();
            let modes: &[TransformMode] = match w.case {
                RelationCase::OddShifted => &[
                    TransformMode::FlipDifference,
                    TransformMode::FlipDifferenceSpread,
                ],
                RelationCase::EvenCentered => &[
                    TransformMode::ShiftDifference,
                    TransformMode::ShiftThenFlipDifference,
                    TransformMode::ShiftThenFlipDifferenceSpread,
                ],
                _ => return None,
            };
            let a = (0..=w.k).map(|i| w.alpha(i)).collect();
            Some((dd, a, modes))
        })
        .collect();
    assert!(
        cases.len() >= 4,
        "expected several entries with relations of shape 1 or 4"
    );
    check(
        (0..cases.len(), 0usize..3, -3i64..=3, -6i64..=6),
        |(k, m, s, c)| {
            let (dd, a, modes) = &cases[k];
            let mode = modes[m % modes.len()];
            let field = dd.eta().field();
            let scaled: Vec<FieldElement> = a.iter().map(|x| x * &field.from_integer(c)).collect();
            let closed = relation_transform(&scaled, mode);
            // Rebuild the transformed relation from the closed-form coefficients.
            let mut combo = axial_core::axial::AxisCombination::new(field);
            for (i, coeff) in closed.iter().enumerate() {
                let i = i as i64;
                if mode == TransformMode::ShiftDifference {
                    combo.add_term(i + 1, coeff);
                    combo.add_term(-i, &-coeff);
                } else if i != 0 {
                    combo.add_term(i, coeff);
                    combo.add_term(-i, &-coeff);
                }
            }
            prop_assert_eq!(
                &combo,
                &mode.apply_formally(&formal_relation(&scaled, mode))
            );
            prop_assert!(dd.evaluate(&combo.shift(s)).is_zero());
            prop_assert!(dd.evaluate(&combo.flip()).is_zero());
            Ok(())
        },
    );
}

pub fn symbolic_tables_specialise_to_concrete_ones() {
    let symbolic = instantiate(EntryName::FiveThree, None, None, None)
        .unwrap()
        .algebra;
    let four = instantiate(EntryName::FourEv, None, None, None)
        .unwrap()
        .algebra;
    let q = Field::rationals();
    check(
        (-40i64..=40, 1i64..=15, any::<bool>()),
        |(n, d, use_four)| {
            let value = q.from_rational(&rat(n, d)).unwrap();
            let (sym, name) = if use_four {
                (&four, EntryName::FourEv)
            } else {
                (&symbolic, EntryName::FiveThree)
            };
            let Ok(concrete) = instantiate(name, Some(&q), Some(&value.render()), None) else {
                return Ok(());
            };
            let conc: Arc<AlgebraDef> = concrete.algebra;
            for i in 0..sym.dim() {
                for j in 0..sym.dim() {
                    for (s, c) in sym
                        .basis_product(i, j)
                        .coords()
                        .iter()
                        .zip(conc.basis_product(i, j).coords())
                    {
                        prop_assert_eq!(&s.specialize(&value).unwrap(), c);
                    }
                }
            }
            Ok(())
        },
    );
}

#[allow(dead_code)] // read by the acceptance checks
pub const ALL: [(&str, fn()); 9] = [
    (
        "field_laws_hold_in_every_kind",
        field_laws_hold_in_every_kind,
    ),
    ("rendering_parses_back", rendering_parses_back),
    (
        "specialisation_is_a_homomorphism",
        specialisation_is_a_homomorphism,
    ),
    ("rref_rank_and_kernel", rref_rank_and_kernel),
    (
        "quotient_projection_is_multiplicative",
        quotient_projection_is_multiplicative,
    ),
    (
        "miyamoto_involutions_are_coherent",
        miyamoto_involutions_are_coherent,
    ),
    (
        "relation_transforms_match_formal_application",
        relation_transforms_match_formal_application,
    ),
    (
        "transformed_relations_vanish_on_entries",
        transformed_relations_vanish_on_entries,
    ),
    (
        "symbolic_tables_specialise_to_concrete_ones",
        symbolic_tables_specialise_to_concrete_ones,
    ),
];
