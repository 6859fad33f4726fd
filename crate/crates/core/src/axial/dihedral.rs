use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{
    check_fusion, miyamoto, one_eigenspace_dim, split_eigenspace, AxialError, AxisCombination,
};
use crate::algebra::{
    extend_from_generators, homomorphism_defect, AlgebraError, AlgebraMap, AlgebraRef, Extension,
};
use crate::exactfield::FieldElement;
use crate::linalg::{kernel, Matrix, Subspace, Vector};

/// Axes `a_lo, a_{lo+1}, …` plus optional explicit images for the shift and
/// the flip. Without explicit images the shift is `a_i ↦ a_{i+1}` and the flip
/// `a_i ↦ a_{-i}` on the listed axes.
#[derive(Clone, Debug)]
pub struct DihedralSeed {
    pub lo: i64,
    pub axes: Vec<Vector>,
    pub shift_images: Vec<(Vector, Vector)>,
    pub flip_images: Vec<(Vector, Vector)>,
}

impl DihedralSeed {
    pub fn new(lo: i64, axes: Vec<Vector>) -> Self {
        DihedralSeed {
            lo,
            axes,
            shift_images: Vec::new(),
            flip_images: Vec::new(),
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.axes.len() as i64 - 1
    }

    pub fn axis(&self, i: i64) -> Option<&Vector> {
        usize::try_from(i - self.lo)
            .ok()
            .and_then(|k| self.axes.get(k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DihedralBuildError {
    MissingAxisZero,
    ShiftInconsistent { word: String },
    ShiftNotGenerating { dim: usize },
    ShiftNotInvertible,
    FlipInconsistent { word: String },
    FlipNotGenerating { dim: usize },
    Algebra(AlgebraError),
}

impl fmt::Display for DihedralBuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingAxisZero => write!(f, "seed window does not contain a_0"),
            Self::ShiftInconsistent { word } => {
                write!(
                    f,
                    "a_i -> a_(i+1) does not extend to an algebra map (conflict at word {word})"
                )
            }
            Self::ShiftNotGenerating { dim } => {
                write!(f, "shift generators span a subalgebra of dimension {dim}")
            }
            Self::ShiftNotInvertible => write!(f, "shift is not invertible"),
            Self::FlipInconsistent { word } => {
                write!(
                    f,
                    "a_i -> a_(-i) does not extend to an algebra map (conflict at word {word})"
                )
            }
            Self::FlipNotGenerating { dim } => {
                write!(f, "flip generators span a subalgebra of dimension {dim}")
            }
            Self::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl DihedralBuildError {
    /// Which dihedral condition the failure belongs to.
    pub fn condition(&self) -> &'static str {
        match self {
            Self::ShiftInconsistent { .. }
            | Self::ShiftNotGenerating { .. }
            | Self::ShiftNotInvertible => "D2",
            Self::FlipInconsistent { .. } | Self::FlipNotGenerating { .. } => "D3",
            Self::MissingAxisZero | Self::Algebra(_) => "D1",
        }
    }
}

impl From<AlgebraError> for DihedralBuildError {
    fn from(e: AlgebraError) -> Self {
        DihedralBuildError::Algebra(e)
    }
}

/// The axis sequence `a_i = f₁^i(a_0)` with the shift `f₁` and flip `τ₀`.
#[derive(Clone, Debug)]
pub struct DihedralData {
    alg: AlgebraRef,
    eta: FieldElement,
    shift: AlgebraMap,
    shift_inv: Matrix,
    flip: AlgebraMap,
    seed: DihedralSeed,
    window: i64,
    axes: BTreeMap<i64, Vector>,
}

impl DihedralData {
    /// Build from a seed; `window` is the half-width `N` of the cached axis
    /// range `[-N, N+1]`.
    pub fn from_seed(
        alg: &AlgebraRef,
        eta: &FieldElement,
        seed: DihedralSeed,
        window: usize,
    ) -> Result<Self, DihedralBuildError> {
        let a0 = seed
            .axis(0)
            .ok_or(DihedralBuildError::MissingAxisZero)?
            .clone();
        let shift_pairs = if seed.shift_images.is_empty() {
            (seed.lo..seed.hi())
                .map(|i| {
                    (
                        seed.axis(i).unwrap().clone(),
                        seed.axis(i + 1).unwrap().clone(),
                    )
                })
                .collect()
        } else {
            seed.shift_images.clone()
        };
        let shift = match extend_from_generators(alg, &shift_pairs, alg)? {
            Extension::Map(m) => m,
            Extension::Inconsistent { word } => {
                return Err(DihedralBuildError::ShiftInconsistent { word })
            }
            Extension::NotGenerating { dim } => {
                return Err(DihedralBuildError::ShiftNotGenerating { dim })
            }
        };
        let shift_inv = shift
            .matrix()
            .inverse()
            .ok_or(DihedralBuildError::ShiftNotInvertible)?;
        let flip_pairs = if seed.flip_images.is_empty() {
            (seed.lo..=seed.hi())
                .filter_map(|i| Some((seed.axis(i)?.clone(), seed.axis(-i)?.clone())))
                .collect()
        } else {
            seed.flip_images.clone()
        };
        let flip = match extend_from_generators(alg, &flip_pairs, alg)? {
            Extension::Map(m) => m,
            Extension::Inconsistent { word } => {
                return Err(DihedralBuildError::FlipInconsistent { word })
            }
            Extension::NotGenerating { dim } => {
                return Err(DihedralBuildError::FlipNotGenerating { dim })
            }
        };
        let window = window as i64;
        let mut axes = BTreeMap::new();
        axes.insert(0, a0.clone());
        let mut up = a0.clone();
        let mut down = a0;
        for i in 1..=window + 1 {
            up = shift.apply(&up)?;
            axes.insert(i, up.clone());
            if i <= window {
                down = shift_inv.apply(&down).map_err(AlgebraError::from)?;
                axes.insert(-i, down.clone());
            }
        }
        Ok(DihedralData {
            alg: alg.clone(),
            eta: eta.clone(),
            shift,
            shift_inv,
            flip,
            seed,
            window,
            axes,
        })
    }

    /// Same algebra with every index moved by one: `a'_i = a_{i+1}` and
    /// `τ'_0 = τ_1`.
    pub fn relabel_by_shift(&self) -> Result<Self, AxialError> {
        let flip = AlgebraMap::new(self.alg.clone(), self.alg.clone(), self.tau(1)?)?;
        let range = -self.window..=self.window + 1;
        let axes: BTreeMap<i64, Vector> = range.clone().map(|i| (i, self.axis(i + 1))).collect();
        let seed = DihedralSeed::new(-self.window, range.map(|i| axes[&i].clone()).collect());
        Ok(DihedralData {
            flip,
            axes,
            seed,
            ..self.clone()
        })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn eta(&self) -> &FieldElement {
        &self.eta
    }

    pub fn shift(&self) -> &AlgebraMap {
        &self.shift
    }

    pub fn flip(&self) -> &AlgebraMap {
        &self.flip
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn seed(&self) -> &DihedralSeed {
        &self.seed
    }

    /// `a_i` for any integer `i`.
    pub fn axis(&self, i: i64) -> Vector {
        if let Some(v) = self.axes.get(&i) {
            return v.clone();
        }
        let (start, step, mat) = if i > 0 {
            (self.window + 1, 1, self.shift.matrix())
        } else {
            (-self.window, -1, &self.shift_inv)
        };
        let mut v = self.axes[&start].clone();
        let mut k = start;
        while k != i {
            v = mat.apply(&v).expect("square map");
            k += step;
        }
        v
    }

    /// Cached axes `a_{-N} … a_{N+1}`.
    pub fn window_axes(&self) -> Vec<Vector> {
        self.axes.values().cloned().collect()
    }

    /// `τ_j = f₁^j τ₀ f₁^{-j}`.
    pub fn tau(&self, j: i64) -> Result<Matrix, AxialError> {
        let fj = self.shift_power(j);
        let fmj = self.shift_power(-j);
        Ok(fj.mul(self.flip.matrix())?.mul(&fmj)?)
    }

    pub fn shift_power(&self, j: i64) -> Matrix {
        let base = if j >= 0 {
            self.shift.matrix()
        } else {
            &self.shift_inv
        };
        let mut acc = Matrix::identity(self.alg.field(), self.alg.dim());
        for _ in 0..j.unsigned_abs() {
            acc = acc.mul(base).expect("square maps");
        }
        acc
    }

    /// Evaluate a formal combination of axes.
    pub fn evaluate(&self, combo: &AxisCombination) -> Vector {
        let terms: Vec<(FieldElement, Vector)> = combo
            .terms()
            .map(|(i, c)| (c.clone(), self.axis(i)))
            .collect();
        let refs: Vec<(FieldElement, &Vector)> =
            terms.iter().map(|(c, v)| (c.clone(), v)).collect();
        Vector::combination(self.alg.field(), self.alg.dim(), &refs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DihedralViolation {
    pub condition: String,
    pub detail: String,
}

impl DihedralViolation {
    fn new(condition: &str, detail: impl Into<String>) -> Self {
        DihedralViolation {
            condition: condition.into(),
            detail: detail.into(),
        }
    }
}

/// Check (D1) generation by the axes, (D2) the shift is an automorphism,
/// (D3) each `τ_j` is the Miyamoto involution of `a_j`.
pub fn check_dihedral(dd: &DihedralData) -> Result<Vec<DihedralViolation>, AxialError> {
    let alg = dd.algebra();
    let n = alg.dim();
    let mut out = Vec::new();

    let generated = alg.generated_subalgebra(&dd.window_axes())?;
    if generated.dim() != n {
        out.push(DihedralViolation::new(
            "D1",
            format!(
                "axes generate a subalgebra of dimension {}",
                generated.dim()
            ),
        ));
    }

    if let Some((i, j)) = homomorphism_defect(dd.shift())? {
        out.push(DihedralViolation::new(
            "D2",
            format!("shift is not multiplicative on basis pair ({i}, {j})"),
        ));
    }
    if !dd.shift().is_bijective() {
        out.push(DihedralViolation::new("D2", "shift is not bijective"));
    }
    for i in dd.seed.lo..dd.seed.hi() {
        let (Some(a), Some(b)) = (dd.seed.axis(i), dd.seed.axis(i + 1)) else {
            continue;
        };
        if &dd.shift().apply(a)? != b {
            out.push(DihedralViolation::new(
                "D2",
                format!("shift does not send a_{i} to a_{}", i + 1),
            ));
        }
    }

    if let Some((i, j)) = homomorphism_defect(dd.flip())? {
        out.push(DihedralViolation::new(
            "D3",
            format!("flip is not multiplicative on basis pair ({i}, {j})"),
        ));
    }
    for i in -dd.window..=dd.window {
        if dd.flip().apply(&dd.axis(i))? != dd.axis(-i) {
            out.push(DihedralViolation::new(
                "D3",
                format!("flip does not send a_{i} to a_{}", -i),
            ));
            break;
        }
    }

    // All τ_j are conjugate under the shift, so a few consecutive indices
    // exercise both conjugacy classes of reflections.
    for j in -1..=2 {
        let a = dd.axis(j);
        let tau = dd.tau(j)?;
        let dec = match split_eigenspace(alg, &a, dd.eta(), &tau) {
            Ok(dec) => dec,
            Err(e) => {
                out.push(DihedralViolation::new("D3", format!("axis a_{j}: {e}")));
                continue;
            }
        };
        let dim1 = one_eigenspace_dim(alg, &a)?;
        if dim1 != 1 {
            out.push(DihedralViolation::new(
                "D3",
                format!("axis a_{j} is not primitive (1-eigenspace dim {dim1})"),
            ));
        }
        let violations = check_fusion(alg, &dec)?;
        if let Some(v) = violations.first() {
            out.push(DihedralViolation::new(
                "D3",
                format!(
                    "axis a_{j}: fusion fails for parts ({}, {}), {} products",
                    v.left,
                    v.right,
                    violations.len()
                ),
            ));
            continue;
        }
        match miyamoto(alg, &dec) {
            Ok(m) if m.matrix() == &tau => {}
            Ok(_) => out.push(DihedralViolation::new(
                "D3",
                format!("tau_{j} differs from the Miyamoto involution of a_{j}"),
            )),
            Err(e) => out.push(DihedralViolation::new("D3", format!("axis a_{j}: {e}"))),
        }
    }
    Ok(out)
}

/// `p_{i,j} = a_j a_{i+j} − η (a_j + a_{i+j})`.
pub fn p_vector(dd: &DihedralData, i: i64, j: i64) -> Vector {
    let alg = dd.algebra();
    let (x, y) = (dd.axis(j), dd.axis(i + j));
    let prod = alg.mul(&x, &y);
    &prod - &(&x + &y).scale(dd.eta())
}

/// The four shapes of a minimal relation between consecutive axes:
/// 1. `Σ_{i=1}^k α_i (a_i + a_{-i}) + α_0 a_0 = 0`, adim `2k`;
/// 2. `Σ_{i=1}^k α_i (a_i − a_{-i}) = 0`, adim `2k`;
/// 3. `Σ_{i=0}^k α_i (a_{i+1} + a_{-i}) = 0`, adim `2k+1`;
/// 4. `Σ_{i=0}^k α_i (a_{i+1} − a_{-i}) = 0`, adim `2k+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationCase {
    EvenCentered,
    OddCentered,
    EvenShifted,
    OddShifted,
}

impl RelationCase {
    pub fn number(self) -> u8 {
        match self {
            Self::EvenCentered => 1,
            Self::OddCentered => 2,
            Self::EvenShifted => 3,
            Self::OddShifted => 4,
        }
    }

    /// "even" for relations fixed by the reflection, "odd" for negated ones.
    pub fn parity(self) -> &'static str {
        match self {
            Self::EvenCentered | Self::EvenShifted => "even",
            Self::OddCentered | Self::OddShifted => "odd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationWitness {
    pub adim: usize,
    pub case: RelationCase,
    pub k: usize,
    /// Case 2 lists `α_1..α_k`; the other cases `α_0..α_k`. Normalised so
    /// that `α_k = 1`.
    pub coefficients: Vec<FieldElement>,
}

impl RelationWitness {
    pub fn parity(&self) -> &'static str {
        self.case.parity()
    }

    /// `α_i`, zero outside the stored range.
    pub fn alpha(&self, i: usize) -> FieldElement {
        let offset = usize::from(self.case == RelationCase::OddCentered);
        i.checked_sub(offset)
            .and_then(|k| self.coefficients.get(k).cloned())
            .unwrap_or_else(|| self.coefficients[0].field().zero())
    }

    /// The vanishing combination of axes.
    pub fn combination(&self) -> AxisCombination {
        let field = self.coefficients[0].field().clone();
        let mut combo = AxisCombination::new(&field);
        for i in 0..=self.k {
            let c = self.alpha(i);
            let ii = i as i64;
            match self.case {
                RelationCase::EvenCentered if i == 0 => combo.add_term(0, &c),
                RelationCase::EvenCentered => {
                    combo.add_term(ii, &c);
                    combo.add_term(-ii, &c);
                }
                RelationCase::OddCentered => {
                    combo.add_term(ii, &c);
                    combo.add_term(-ii, &-&c);
                }
                RelationCase::EvenShifted => {
                    combo.add_term(ii + 1, &c);
                    combo.add_term(-ii, &c);
                }
                RelationCase::OddShifted => {
                    combo.add_term(ii + 1, &c);
                    combo.add_term(-ii, &-&c);
                }
            }
        }
        combo
    }
}

/// Axial dimension and the minimal relation among consecutive axes.
pub fn axial_dimension(dd: &DihedralData) -> Result<RelationWitness, AxialError> {
    let alg = dd.algebra();
    let field = alg.field();
    let span_of = |m: i64| -> Result<usize, AxialError> {
        let vs: Vec<Vector> = (-m..=m + 1).map(|i| dd.axis(i)).collect();
        Ok(Subspace::span(field, alg.dim(), &vs)?.dim())
    };
    let limit = alg.dim() as i64 + 3;
    let mut dims = vec![span_of(0)?];
    let adim = loop {
        let m = dims.len() as i64;
        if m > limit {
            return Err(AxialError::NoStabilization);
        }
        dims.push(span_of(m)?);
        let l = dims.len();
        if l >= 3 && dims[l - 1] == dims[l - 2] && dims[l - 2] == dims[l - 3] {
            break dims[l - 1];
        }
    };

    let (k, indices, reflect): (usize, Vec<i64>, fn(i64) -> i64) = if adim % 2 == 0 {
        let k = adim / 2;
        (k, (-(k as i64)..=k as i64).collect(), |i| -i)
    } else {
        let k = (adim - 1) / 2;
        (k, (-(k as i64)..=k as i64 + 1).collect(), |i| 1 - i)
    };
    let cols: Vec<Vector> = indices.iter().map(|&i| dd.axis(i)).collect();
    let ker = kernel(&Matrix::from_columns(field, alg.dim(), &cols)?);
    if ker.dim() == 0 {
        return Err(AxialError::DataInconsistency(
            "no relation among the minimal window of axes".into(),
        ));
    }
    let position = |i: i64| {
        indices
            .iter()
            .position(|&x| x == i)
            .expect("index in window")
    };
    // Split the relation space into reflection-symmetric and -antisymmetric parts.
    let mut sym = Vec::new();
    let mut anti = Vec::new();
    for r in ker.basis() {
        let reflected: Vec<FieldElement> = indices
            .iter()
            .map(|&i| r.get(position(reflect(i))).clone())
            .collect();
        let reflected = Vector::new(field, reflected)?;
        let s = r + &reflected;
        let a = r - &reflected;
        if !s.is_zero() {
            sym.push(s);
        }
        if !a.is_zero() {
            anti.push(a);
        }
    }
    let sym_space = ker.intersection(&Subspace::span(field, indices.len(), &sym)?)?;
    let anti_space = ker.intersection(&Subspace::span(field, indices.len(), &anti)?)?;
    let (relation, symmetric) = match (sym_space.dim(), anti_space.dim()) {
        (0, 0) => {
            return Err(AxialError::DataInconsistency(
                "relation is neither symmetric nor antisymmetric".into(),
            ))
        }
        (_, 0) => (smallest_support(sym_space.basis()), true),
        (0, _) => (smallest_support(anti_space.basis()), false),
        _ => {
            return Err(AxialError::DataInconsistency(
                "symmetric and antisymmetric relations coexist in the minimal window".into(),
            ))
        }
    };
    let coeff = |i: i64| relation.get(position(i)).clone();
    let (case, raw): (RelationCase, Vec<FieldElement>) = match (adim % 2 == 0, symmetric) {
        (true, true) => (
            RelationCase::EvenCentered,
            (0..=k as i64).map(coeff).collect(),
        ),
        (true, false) => (
            RelationCase::OddCentered,
            (1..=k as i64).map(coeff).collect(),
        ),
        (false, true) => (
            RelationCase::EvenShifted,
            (0..=k as i64).map(|i| coeff(i + 1)).collect(),
        ),
        (false, false) => (
            RelationCase::OddShifted,
            (0..=k as i64).map(|i| coeff(i + 1)).collect(),
        ),
    };
    let lead = raw.last().cloned().unwrap_or_else(|| field.zero());
    if lead.is_zero() {
        return Err(AxialError::DataInconsistency(
            "leading relation coefficient vanishes".into(),
        ));
    }
    let inv = lead.inverse()?;
    let coefficients = raw.iter().map(|c| c * &inv).collect();
    Ok(RelationWitness {
        adim,
        case,
        k,
        coefficients,
    })
}

fn smallest_support(vs: &[Vector]) -> Vector {
    vs.iter()
        .min_by_key(|v| v.coords().iter().filter(|c| !c.is_zero()).count())
        .cloned()
        .expect("nonempty basis")
}
