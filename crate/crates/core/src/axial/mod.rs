//! Axes of Majorana type: eigenspace splitting, fusion, Miyamoto involutions,
//! dihedral data and the relations between consecutive axes.

mod dihedral;
mod identities;
mod relation;

pub use dihedral::{
    axial_dimension, check_dihedral, p_vector, DihedralBuildError, DihedralData, DihedralSeed,
    DihedralViolation, RelationCase, RelationWitness,
};
pub use identities::{
    identity_suite, two_generated_closure, uncorrected_p20_p21_residual, IdentityCheck,
    IdentityReport, TwoGenerated,
};
pub use relation::{formal_relation, relation_transform, AxisCombination, TransformMode};

use thiserror::Error;

use crate::algebra::{is_homomorphism, AlgebraDef, AlgebraError, AlgebraMap, AlgebraRef};
use crate::exactfield::{FieldElement, FieldError};
use crate::linalg::{is_direct_sum, kernel, solve_in_span, LinalgError, Matrix, Subspace, Vector};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AxialError {
    #[error("eta must differ from 0 and 1")]
    InvalidEta,
    #[error("axis is not idempotent")]
    NotIdempotent,
    #[error("involution mismatch: {0}")]
    InvolutionMismatch(String),
    #[error("eigenspaces (dims {dims:?}) do not exhaust the ambient space of dimension {ambient}")]
    NotSemisimple { dims: [usize; 4], ambient: usize },
    #[error("the Miyamoto map is not an automorphism")]
    MiyamotoNotAutomorphism,
    #[error("axis spans did not stabilise within the window")]
    NoStabilization,
    #[error("inconsistent data: {0}")]
    DataInconsistency(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<LinalgError> for AxialError {
    fn from(e: LinalgError) -> Self {
        AxialError::Algebra(e.into())
    }
}

impl From<FieldError> for AxialError {
    fn from(e: FieldError) -> Self {
        AxialError::Algebra(e.into())
    }
}

/// The Majorana-type fusion law with labels 0, 1, 2, 3 and eigenvalues
/// 0, 1, η, η; labels 2 and 3 are the τ-even and τ-odd parts of the
/// η-eigenspace.
#[derive(Clone, Debug)]
pub struct FusionTable {
    eta: FieldElement,
}

impl FusionTable {
    pub fn majorana(eta: &FieldElement) -> Result<Self, AxialError> {
        if eta.is_zero() || eta.is_one() {
            return Err(AxialError::InvalidEta);
        }
        Ok(FusionTable { eta: eta.clone() })
    }

    pub fn eta(&self) -> &FieldElement {
        &self.eta
    }

    pub fn eigenvalue(&self, label: usize) -> FieldElement {
        match label {
            0 => self.eta.field().zero(),
            1 => self.eta.field().one(),
            2 | 3 => self.eta.clone(),
            _ => panic!("fusion labels are 0..=3"),
        }
    }

    /// Labels allowed in the product of parts `i` and `j`.
    pub fn allowed(i: usize, j: usize) -> &'static [usize] {
        match (i.min(j), i.max(j)) {
            (0, 0) => &[0],
            (0, 1) => &[],
            (0, 2) | (1, 2) => &[2],
            (0, 3) | (1, 3) => &[3],
            (1, 1) => &[1],
            (2, 2) => &[0, 1],
            (2, 3) => &[3],
            (3, 3) => &[0, 1, 2],
            _ => panic!("fusion labels are 0..=3"),
        }
    }
}

/// `M = M⁰ ⊕ M¹ ⊕ M² ⊕ M³` relative to one axis.
#[derive(Clone, Debug)]
pub struct AxisDecomposition {
    pub axis: Vector,
    pub parts: [Subspace; 4],
    pub table: FusionTable,
}

impl AxisDecomposition {
    pub fn dims(&self) -> [usize; 4] {
        [
            self.parts[0].dim(),
            self.parts[1].dim(),
            self.parts[2].dim(),
            self.parts[3].dim(),
        ]
    }

    /// Basis ordered as axis, M⁰, M², M³.
    fn adapted_basis(&self) -> Vec<Vector> {
        std::iter::once(self.axis.clone())
            .chain(self.parts[0].basis().iter().cloned())
            .chain(self.parts[2].basis().iter().cloned())
            .chain(self.parts[3].basis().iter().cloned())
            .collect()
    }
}

/// Decompose the algebra with respect to the axis `a`, splitting the
/// η-eigenspace by the involution `tau`.
pub fn split_eigenspace(
    alg: &AlgebraDef,
    a: &Vector,
    eta: &FieldElement,
    tau: &Matrix,
) -> Result<AxisDecomposition, AxialError> {
    let table = FusionTable::majorana(eta)?;
    if &alg.multiply(a, a)? != a {
        return Err(AxialError::NotIdempotent);
    }
    if &tau.apply(a)? != a {
        return Err(AxialError::InvolutionMismatch(
            "tau does not fix the axis".into(),
        ));
    }
    if !tau.mul(tau)?.is_identity() {
        return Err(AxialError::InvolutionMismatch(
            "tau is not an involution".into(),
        ));
    }
    let field = alg.field();
    let n = alg.dim();
    let ad = alg.adjoint_matrix(a)?;
    let m0 = kernel(&ad);
    let m1 = alg.span(std::slice::from_ref(a))?;
    let eigen = kernel(&ad.shift_diagonal(eta));
    let plus = kernel(&tau.shift_diagonal(&field.one()));
    let minus = kernel(&tau.shift_diagonal(&-field.one()));
    let m2 = eigen.intersection(&plus)?;
    let m3 = eigen.intersection(&minus)?;
    let dims = [m0.dim(), m1.dim(), m2.dim(), m3.dim()];
    if dims.iter().sum::<usize>() != n || !is_direct_sum(&[&m0, &m1, &m2, &m3])? {
        return Err(AxialError::NotSemisimple { dims, ambient: n });
    }
    Ok(AxisDecomposition {
        axis: a.clone(),
        parts: [m0, m1, m2, m3],
        table,
    })
}

/// Dimension of the 1-eigenspace of `ad(a)`; primitive axes give 1.
pub fn one_eigenspace_dim(alg: &AlgebraDef, a: &Vector) -> Result<usize, AxialError> {
    let ad = alg.adjoint_matrix(a)?;
    Ok(kernel(&ad.shift_diagonal(&alg.field().one())).dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionViolation {
    pub left: usize,
    pub right: usize,
    pub product: Vector,
}

/// Products of eigenvectors that leave the allowed parts.
pub fn check_fusion(
    alg: &AlgebraDef,
    dec: &AxisDecomposition,
) -> Result<Vec<FusionViolation>, AxialError> {
    let mut violations = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            let mut allowed = Subspace::zero(alg.field(), alg.dim());
            for &k in FusionTable::allowed(i, j) {
                allowed = allowed.sum(&dec.parts[k])?;
            }
            for x in dec.parts[i].basis() {
                for y in dec.parts[j].basis() {
                    let product = alg.multiply(x, y)?;
                    if !allowed.contains(&product)? {
                        violations.push(FusionViolation {
                            left: i,
                            right: j,
                            product,
                        });
                    }
                }
            }
        }
    }
    Ok(violations)
}

/// The linear map that is 1 on M⁰ ⊕ M¹ ⊕ M² and −1 on M³, required to be an
/// automorphism.
pub fn miyamoto(alg: &AlgebraRef, dec: &AxisDecomposition) -> Result<AlgebraMap, AxialError> {
    let field = alg.field();
    let n = alg.dim();
    let mut cols = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for (label, part) in dec.parts.iter().enumerate() {
        for b in part.basis() {
            cols.push(b.clone());
            signs.push(if label == 3 {
                -field.one()
            } else {
                field.one()
            });
        }
    }
    let basis = Matrix::from_columns(field, n, &cols)?;
    let inv = basis.inverse().ok_or_else(|| AxialError::NotSemisimple {
        dims: dec.dims(),
        ambient: n,
    })?;
    let mut diag = Matrix::zeros(field, n, n);
    for (i, s) in signs.into_iter().enumerate() {
        diag.set(i, i, s);
    }
    let matrix = basis.mul(&diag)?.mul(&inv)?;
    let map = AlgebraMap::new(alg.clone(), alg.clone(), matrix)?;
    if !is_homomorphism(&map)? {
        return Err(AxialError::MiyamotoNotAutomorphism);
    }
    Ok(map)
}

/// Coefficient of the axis when `target` is written in the basis adapted to
/// the decomposition (axis, M⁰, M², M³).
pub fn lambda_coefficient(
    dec: &AxisDecomposition,
    target: &Vector,
) -> Result<FieldElement, AxialError> {
    let basis = dec.adapted_basis();
    let coeffs = solve_in_span(target, &basis)?
        .ok_or_else(|| AxialError::DataInconsistency("decomposition does not span".into()))?;
    Ok(coeffs[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fusion_table_is_symmetric() {
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(FusionTable::allowed(i, j), FusionTable::allowed(j, i));
            }
        }
        assert_eq!(FusionTable::allowed(3, 3), &[0, 1, 2]);
        assert!(FusionTable::allowed(0, 1).is_empty());
    }

    #[test]
    fn eta_must_be_admissible() {
        let q = crate::exactfield::Field::rationals();
        assert!(matches!(
            FusionTable::majorana(&q.zero()),
            Err(AxialError::InvalidEta)
        ));
        assert!(matches!(
            FusionTable::majorana(&q.one()),
            Err(AxialError::InvalidEta)
        ));
    }
}
