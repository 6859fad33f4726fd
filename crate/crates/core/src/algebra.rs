//! Commutative nonassociative algebras given by structure constants.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use num_bigint::BigUint;

use crate::exactfield::parse::{parse_with, Semantics};
use crate::exactfield::{Field, FieldElement, FieldError};
use crate::linalg::{solve_in_span, LinalgError, Matrix, Subspace, Vector};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("product of {0:?} and {1:?} given twice")]
    DuplicateProduct(String, String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("source and target algebras are over different fields")]
    FieldMismatch,
    #[error("bad vector literal: {0}")]
    BadVectorLiteral(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Structure constants over a fixed basis. Products are stored densely and
/// symmetrically; unlisted pairs multiply to zero.
#[derive(Clone, Debug)]
pub struct AlgebraDef {
    field: Field,
    labels: Vec<String>,
    table: Vec<Vector>,
}

pub type AlgebraRef = Arc<AlgebraDef>;

impl PartialEq for AlgebraDef {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.labels == other.labels && self.table == other.table
    }
}

impl AlgebraDef {
    pub fn new(
        field: &Field,
        labels: Vec<String>,
        products: Vec<(usize, usize, Vector)>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        let mut table: Vec<Option<Vector>> = vec![None; n * n];
        for (i, j, v) in products {
            if i >= n || j >= n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    got: i.max(j) + 1,
                });
            }
            if v.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            if v.field() != field {
                return Err(FieldError::DescriptorMismatch.into());
            }
            if table[i * n + j].is_some() {
                return Err(AlgebraError::DuplicateProduct(
                    labels[i].clone(),
                    labels[j].clone(),
                ));
            }
            table[i * n + j] = Some(v.clone());
            table[j * n + i] = Some(v);
        }
        let zero = Vector::zeros(field, n);
        let table = table
            .into_iter()
            .map(|v| v.unwrap_or_else(|| zero.clone()))
            .collect();
        Ok(AlgebraDef {
            field: field.clone(),
            labels,
            table,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Result<usize, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.into()))
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(&self.field, self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zeros(&self.field, self.dim())
    }

    /// Product of basis elements `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector, AlgebraError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            if v.field() != &self.field {
                return Err(FieldError::DescriptorMismatch.into());
            }
        }
        let mut out = self.zero_vector();
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                out.add_scaled(&(xi * yj), self.basis_product(i, j));
            }
        }
        Ok(out)
    }

    /// Panicking form of [`multiply`](Self::multiply) for vectors known to
    /// belong to this algebra.
    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.multiply(x, y).expect("operands belong to the algebra")
    }

    /// Matrix of `x ↦ a·x`.
    pub fn adjoint_matrix(&self, a: &Vector) -> Result<Matrix, AlgebraError> {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|j| self.multiply(a, &self.basis_vector(j)))
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_columns(&self.field, self.dim(), &cols)?)
    }

    pub fn span(&self, vectors: &[Vector]) -> Result<Subspace, AlgebraError> {
        Ok(Subspace::span(&self.field, self.dim(), vectors)?)
    }

    /// Smallest subalgebra containing `generators`.
    pub fn generated_subalgebra(&self, generators: &[Vector]) -> Result<Subspace, AlgebraError> {
        let mut current = self.span(generators)?;
        loop {
            let basis = current.basis().to_vec();
            let mut grown = current.clone();
            for (i, x) in basis.iter().enumerate() {
                for y in &basis[i..] {
                    let p = self.multiply(x, y)?;
                    if !grown.contains(&p)? {
                        grown = grown.sum(&self.span(&[p])?)?;
                    }
                }
            }
            if grown.dim() == current.dim() {
                return Ok(current);
            }
            current = grown;
        }
    }

    pub fn is_ideal(&self, ideal: &Subspace) -> Result<bool, AlgebraError> {
        Ok(self.ideal_obstructions(ideal)?.is_empty())
    }

    /// Residues modulo `ideal` of the products `e_k · b` that escape it.
    pub fn ideal_obstructions(&self, ideal: &Subspace) -> Result<Vec<Vector>, AlgebraError> {
        if ideal.ambient() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: ideal.ambient(),
            });
        }
        let mut out = Vec::new();
        for k in 0..self.dim() {
            let e = self.basis_vector(k);
            for b in ideal.basis() {
                let r = ideal.reduce(&self.multiply(&e, b)?)?;
                if !r.is_zero() {
                    out.push(r);
                }
            }
        }
        Ok(out)
    }

    /// `A/I`, with basis the cosets of the non-pivot coordinates of `I`'s
    /// reduced basis, together with the projection.
    pub fn quotient(
        self: &Arc<Self>,
        ideal: &Subspace,
    ) -> Result<(AlgebraRef, AlgebraMap), AlgebraError> {
        if !self.is_ideal(ideal)? {
            return Err(AlgebraError::NotAnIdeal);
        }
        let keep: Vec<usize> = (0..self.dim())
            .filter(|c| !ideal.pivots().contains(c))
            .collect();
        let m = keep.len();
        let project = |v: &Vector| -> Result<Vector, AlgebraError> {
            let r = ideal.reduce(v)?;
            Ok(Vector::new(
                &self.field,
                keep.iter().map(|&k| r.get(k).clone()).collect(),
            )?)
        };
        let mut products = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a) {
                let p = project(self.basis_product(i, j))?;
                if !p.is_zero() {
                    products.push((a, b, p));
                }
            }
        }
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        let target = Arc::new(AlgebraDef::new(&self.field, labels, products)?);
        let cols: Vec<Vector> = (0..self.dim())
            .map(|k| project(&self.basis_vector(k)))
            .collect::<Result<_, _>>()?;
        let matrix = Matrix::from_columns(&self.field, m, &cols)?;
        Ok((
            target.clone(),
            AlgebraMap::new(self.clone(), target, matrix)?,
        ))
    }
}

/// A linear map between algebras, as a `target_dim × source_dim` matrix.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: AlgebraRef,
    target: AlgebraRef,
    matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(
        source: AlgebraRef,
        target: AlgebraRef,
        matrix: Matrix,
    ) -> Result<Self, AlgebraError> {
        if source.field() != target.field() {
            return Err(AlgebraError::FieldMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: target.dim() * source.dim(),
                got: matrix.rows() * matrix.cols(),
            });
        }
        Ok(AlgebraMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(alg: &AlgebraRef) -> Self {
        AlgebraMap {
            source: alg.clone(),
            target: alg.clone(),
            matrix: Matrix::identity(alg.field(), alg.dim()),
        }
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector, AlgebraError> {
        Ok(self.matrix.apply(x)?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> Result<AlgebraMap, AlgebraError> {
        AlgebraMap::new(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix)?,
        )
    }

    pub fn inverse(&self) -> Option<AlgebraMap> {
        let m = self.matrix.inverse()?;
        Some(AlgebraMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: m,
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.rank() == self.source.dim()
    }
}

/// Whether `m(e_i e_j) = m(e_i) m(e_j)` for every basis pair.
pub fn is_homomorphism(m: &AlgebraMap) -> Result<bool, AlgebraError> {
    Ok(homomorphism_defect(m)?.is_none())
}

/// First basis pair `(i, j)` where multiplicativity fails.
pub fn homomorphism_defect(m: &AlgebraMap) -> Result<Option<(usize, usize)>, AlgebraError> {
    let n = m.source.dim();
    let images: Vec<Vector> = (0..n)
        .map(|i| m.apply(&m.source.basis_vector(i)))
        .collect::<Result<_, _>>()?;
    for i in 0..n {
        for j in i..n {
            let lhs = m.apply(m.source.basis_product(i, j))?;
            let rhs = m.target.multiply(&images[i], &images[j])?;
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Outcome of [`extend_from_generators`].
#[derive(Clone, Debug)]
pub enum Extension {
    Map(AlgebraMap),
    /// Two words agree in the source but their prescribed images differ.
    Inconsistent {
        word: String,
    },
    /// The generators span a proper subalgebra of this dimension.
    NotGenerating {
        dim: usize,
    },
}

impl Extension {
    pub fn map(self) -> Option<AlgebraMap> {
        match self {
            Extension::Map(m) => Some(m),
            _ => None,
        }
    }
}

/// Extend `generator ↦ image` pairs multiplicatively to a homomorphism.
///
/// Words are built breadth-first: generators in the given order, then the
/// products `w_i w_j` (`i ≤ j`) of the spanning words in order of `j`.
/// Every product is checked, including those that are linearly dependent on
/// earlier words, so a returned map is always multiplicative.
pub fn extend_from_generators(
    source: &AlgebraRef,
    pairs: &[(Vector, Vector)],
    target: &AlgebraRef,
) -> Result<Extension, AlgebraError> {
    if source.field() != target.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    let mut srcs: Vec<Vector> = Vec::new();
    let mut imgs: Vec<Vector> = Vec::new();
    let mut names: Vec<String> = Vec::new();

    // Returns false on an inconsistent dependency.
    let mut admit =
        |src: Vector, img: Vector, name: String, srcs: &mut Vec<Vector>, imgs: &mut Vec<Vector>| {
            match solve_in_span(&src, srcs)? {
                None => {
                    srcs.push(src);
                    imgs.push(img);
                    names.push(name);
                    Ok::<_, AlgebraError>(None)
                }
                Some(coeffs) => {
                    let terms: Vec<_> = coeffs.into_iter().zip(imgs.iter()).collect();
                    let expected = Vector::combination(target.field(), target.dim(), &terms);
                    Ok(if expected == img { None } else { Some(name) })
                }
            }
        };

    for (k, (g, h)) in pairs.iter().enumerate() {
        if g.len() != source.dim() || h.len() != target.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: source.dim(),
                got: g.len(),
            });
        }
        if let Some(word) = admit(g.clone(), h.clone(), format!("g{k}"), &mut srcs, &mut imgs)? {
            return Ok(Extension::Inconsistent { word });
        }
    }
    let mut j = 0;
    while j < srcs.len() {
        for i in 0..=j {
            let src = source.multiply(&srcs[i], &srcs[j])?;
            let img = target.multiply(&imgs[i], &imgs[j])?;
            let name = format!("(w{i}*w{j})");
            if let Some(word) = admit(src, img, name, &mut srcs, &mut imgs)? {
                return Ok(Extension::Inconsistent { word });
            }
        }
        j += 1;
    }
    if srcs.len() < source.dim() {
        return Ok(Extension::NotGenerating { dim: srcs.len() });
    }
    let s = Matrix::from_columns(source.field(), source.dim(), &srcs)?;
    let t = Matrix::from_columns(target.field(), target.dim(), &imgs)?;
    let s_inv = s.inverse().expect("spanning words form a basis");
    let map = AlgebraMap::new(source.clone(), target.clone(), t.mul(&s_inv)?)?;
    if let Some((a, b)) = homomorphism_defect(&map)? {
        return Ok(Extension::Inconsistent {
            word: format!("{}*{}", source.labels[a], source.labels[b]),
        });
    }
    Ok(Extension::Map(map))
}

/// Sparse description of a vector by label, for diagnostics.
pub fn describe(alg: &AlgebraDef, v: &Vector) -> BTreeMap<String, String> {
    v.coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (alg.labels[i].clone(), c.render()))
        .collect()
}

/// Human-readable `c*label + ...` form (a valid vector literal).
pub fn render_vector(alg: &AlgebraDef, v: &Vector) -> String {
    let mut out = String::new();
    for (i, c) in v.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let text = c.render();
        let (negative, mag) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, text),
        };
        let term = if mag == "1" {
            alg.labels[i].clone()
        } else if mag.contains(' ') {
            format!("({mag})*{}", alg.labels[i])
        } else {
            format!("{mag}*{}", alg.labels[i])
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

enum Lin {
    Scalar(FieldElement),
    Vector(Vector),
}

struct VectorSemantics<'a> {
    alg: &'a AlgebraDef,
    bindings: &'a [(&'a str, FieldElement)],
}

impl VectorSemantics<'_> {
    fn as_vector(&self, v: Lin) -> Result<Vector, AlgebraError> {
        match v {
            Lin::Vector(v) => Ok(v),
            Lin::Scalar(s) if s.is_zero() => Ok(self.alg.zero_vector()),
            Lin::Scalar(s) => Err(AlgebraError::BadVectorLiteral(format!(
                "scalar {s} used as a vector"
            ))),
        }
    }

    fn additive(&self, a: Lin, b: Lin, negate: bool) -> Result<Lin, AlgebraError> {
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(if negate {
                x.checked_sub(&y)?
            } else {
                x.checked_add(&y)?
            })),
            (a, b) => {
                let (x, y) = (self.as_vector(a)?, self.as_vector(b)?);
                Ok(Lin::Vector(if negate {
                    x.checked_sub(&y)?
                } else {
                    x.checked_add(&y)?
                }))
            }
        }
    }
}

impl Semantics for VectorSemantics<'_> {
    type Value = Lin;
    type Error = AlgebraError;

    fn integer(&self, n: &BigUint) -> Result<Lin, AlgebraError> {
        Ok(Lin::Scalar(self.alg.field.from_bigint(&n.clone().into())))
    }

    fn symbol(&self, name: &str) -> Result<Lin, AlgebraError> {
        if let Ok(i) = self.alg.label_index(name) {
            return Ok(Lin::Vector(self.alg.basis_vector(i)));
        }
        if let Some((_, v)) = self.bindings.iter().find(|(k, _)| *k == name) {
            return Ok(Lin::Scalar(v.clone()));
        }
        if self.alg.field.variable() == Some(name) {
            return Ok(Lin::Scalar(self.alg.field.generator()?));
        }
        Err(FieldError::UnknownSymbol(name.into()).into())
    }

    fn add(&self, a: Lin, b: Lin) -> Result<Lin, AlgebraError> {
        self.additive(a, b, false)
    }

    fn sub(&self, a: Lin, b: Lin) -> Result<Lin, AlgebraError> {
        self.additive(a, b, true)
    }

    fn mul(&self, a: Lin, b: Lin) -> Result<Lin, AlgebraError> {
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(x.checked_mul(&y)?)),
            (Lin::Scalar(c), Lin::Vector(v)) | (Lin::Vector(v), Lin::Scalar(c)) => {
                Ok(Lin::Vector(v.scale(&c)))
            }
            (Lin::Vector(_), Lin::Vector(_)) => Err(AlgebraError::BadVectorLiteral(
                "product of two vectors in a linear expression".into(),
            )),
        }
    }

    fn div(&self, a: Lin, b: Lin) -> Result<Lin, AlgebraError> {
        let Lin::Scalar(d) = b else {
            return Err(AlgebraError::BadVectorLiteral(
                "division by a vector".into(),
            ));
        };
        let inv = d.inverse()?;
        match a {
            Lin::Scalar(x) => Ok(Lin::Scalar(x.checked_mul(&inv)?)),
            Lin::Vector(v) => Ok(Lin::Vector(v.scale(&inv))),
        }
    }

    fn neg(&self, a: Lin) -> Result<Lin, AlgebraError> {
        Ok(match a {
            Lin::Scalar(x) => Lin::Scalar(-x),
            Lin::Vector(v) => Lin::Vector(-&v),
        })
    }

    fn pow(&self, a: Lin, exp: u32) -> Result<Lin, AlgebraError> {
        match a {
            Lin::Scalar(x) => Ok(Lin::Scalar(x.pow(exp))),
            Lin::Vector(_) => Err(AlgebraError::BadVectorLiteral("power of a vector".into())),
        }
    }
}

/// Parse a linear combination of basis labels, e.g. `p1 + 2*eta*(a0 - a1)`.
pub fn parse_vector(
    alg: &AlgebraDef,
    text: &str,
    bindings: &[(&str, FieldElement)],
) -> Result<Vector, AlgebraError> {
    let sem = VectorSemantics { alg, bindings };
    let value = parse_with(text, &sem)?;
    sem.as_vector(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two orthogonal idempotents.
    fn split() -> AlgebraRef {
        let f = Field::rationals();
        let labels = vec!["e".to_string(), "f".to_string()];
        Arc::new(
            AlgebraDef::new(
                &f,
                labels,
                vec![
                    (0, 0, Vector::unit(&f, 2, 0)),
                    (1, 1, Vector::unit(&f, 2, 1)),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn multiplication_is_bilinear_and_commutative() {
        let a = split();
        let f = a.field().clone();
        let x = Vector::new(&f, vec![f.from_integer(2), f.from_integer(3)]).unwrap();
        let y = Vector::new(&f, vec![f.from_integer(5), f.from_integer(-1)]).unwrap();
        assert_eq!(a.mul(&x, &y), a.mul(&y, &x));
        assert_eq!(a.mul(&x, &y).coords()[0].render(), "10");
    }

    #[test]
    fn swap_extends_and_scaling_does_not() {
        let a = split();
        let (e, f) = (a.basis_vector(0), a.basis_vector(1));
        let swap =
            extend_from_generators(&a, &[(e.clone(), f.clone()), (f.clone(), e.clone())], &a)
                .unwrap();
        assert!(is_homomorphism(&swap.map().unwrap()).unwrap());
        let bad = extend_from_generators(&a, &[(e.clone(), e.clone()), (f.clone(), e.clone())], &a)
            .unwrap();
        assert!(matches!(bad, Extension::Inconsistent { .. }));
        let partial = extend_from_generators(&a, &[(e.clone(), e)], &a).unwrap();
        assert!(matches!(partial, Extension::NotGenerating { dim: 1 }));
    }

    #[test]
    fn quotient_by_ideal() {
        let a = split();
        let ideal = a.span(&[a.basis_vector(1)]).unwrap();
        let (q, proj) = a.quotient(&ideal).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(is_homomorphism(&proj).unwrap());
        let not_ideal = a.span(&[&a.basis_vector(0) + &a.basis_vector(1)]).unwrap();
        assert_eq!(
            a.quotient(&not_ideal).unwrap_err(),
            AlgebraError::NotAnIdeal
        );
    }

    #[test]
    fn vector_literals() {
        let a = split();
        let v = parse_vector(&a, "3/2*e - (f - e)/2", &[]).unwrap();
        assert_eq!(render_vector(&a, &v), "2*e - 1/2*f");
        assert_eq!(parse_vector(&a, &render_vector(&a, &v), &[]).unwrap(), v);
        assert!(parse_vector(&a, "e*f", &[]).is_err());
        assert!(parse_vector(&a, "e + 1", &[]).is_err());
        assert!(parse_vector(&a, "0", &[]).unwrap().is_zero());
    }

    #[test]
    fn duplicate_products_rejected() {
        let f = Field::rationals();
        let v = Vector::unit(&f, 1, 0);
        let err =
            AlgebraDef::new(&f, vec!["x".into()], vec![(0, 0, v.clone()), (0, 0, v)]).unwrap_err();
        assert!(matches!(err, AlgebraError::DuplicateProduct(..)));
    }
}
