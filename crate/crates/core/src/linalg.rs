//! Dense exact linear algebra: vectors, matrices, row reduction, subspaces.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::exactfield::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    field: Field,
    coords: Vec<FieldElement>,
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(FieldElement::render).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Vector {
    pub fn zeros(field: &Field, n: usize) -> Self {
        Vector {
            field: field.clone(),
            coords: vec![field.zero(); n],
        }
    }

    pub fn unit(field: &Field, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.coords[i] = field.one();
        v
    }

    pub fn new(field: &Field, coords: Vec<FieldElement>) -> Result<Self, LinalgError> {
        if coords.iter().any(|c| c.field() != field) {
            return Err(FieldError::DescriptorMismatch.into());
        }
        Ok(Vector {
            field: field.clone(),
            coords,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &FieldElement {
        &self.coords[i]
    }

    pub fn set(&mut self, i: usize, value: FieldElement) {
        assert!(value.field() == &self.field);
        self.coords[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zeros(&self.field, self.len());
        }
        Vector {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.compatible(other)?;
        Ok(Vector {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.compatible(other)?;
        Ok(Vector {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn compatible(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(FieldError::DescriptorMismatch.into());
        }
        if self.len() != other.len() {
            return Err(LinalgError::AmbientMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    /// `self += c * other`, skipping work when `c` is zero.
    pub fn add_scaled(&mut self, c: &FieldElement, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
    }

    /// Linear combination `Σ c_i v_i`; `ambient` is used when the list is empty.
    pub fn combination(field: &Field, ambient: usize, terms: &[(FieldElement, &Vector)]) -> Vector {
        let mut acc = Vector::zeros(field, ambient);
        for (c, v) in terms {
            acc.add_scaled(c, v);
        }
        acc
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: Self) -> Vector {
        self.checked_add(rhs).expect("vector addition")
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: Self) -> Vector {
        self.checked_sub(rhs).expect("vector subtraction")
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vector]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::AmbientMismatch(r.len(), cols));
            }
            if r.field() != field {
                return Err(FieldError::DescriptorMismatch.into());
            }
            data.extend(r.coords.iter().cloned());
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(field: &Field, rows: usize, cols: &[Vector]) -> Result<Self, LinalgError> {
        Ok(Self::from_rows(field, rows, cols)?.transpose())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector {
            field: self.field.clone(),
            coords: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector {
            field: self.field.clone(),
            coords: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &Vector) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::AmbientMismatch(v.len(), self.cols));
        }
        let mut out = Vector::zeros(&self.field, self.rows);
        for (c, x) in v.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let m = self.get(r, c);
                if !m.is_zero() {
                    out.coords[r] = &out.coords[r] + &(m * x);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::AmbientMismatch(self.cols, other.rows));
        }
        let cols: Result<Vec<Vector>, _> = other.columns().iter().map(|c| self.apply(c)).collect();
        Self::from_columns(&self.field, self.rows, &cols?)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::AmbientMismatch(
                self.rows * self.cols,
                other.rows * other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self - c·I` for square matrices.
    pub fn shift_diagonal(&self, c: &FieldElement) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    /// Reduced row echelon form, pivoting on the first nonzero entry.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for c in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if p != lead_row {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, lead_row * m.cols + k);
                }
            }
            let inv = m.get(lead_row, c).inverse().expect("nonzero pivot");
            for k in c..m.cols {
                let v = m.get(lead_row, k) * &inv;
                m.set(lead_row, k, v);
            }
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let pivot_entry = m.get(lead_row, k);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = m.get(r, k) - &(&factor * pivot_entry);
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            lead_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base).ok()?;
        }
        Some(acc)
    }
}

pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

/// Null space `{x : M x = 0}` as a subspace of `F^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let red = m.rref();
    let field = m.field();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !red.pivots.contains(c)).collect();
    let basis: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = Vector::unit(field, m.cols(), f);
            for (r, &p) in red.pivots.iter().enumerate() {
                v.coords[p] = -red.matrix.get(r, f);
            }
            v
        })
        .collect();
    Subspace::span(field, m.cols(), &basis).expect("kernel vectors are well formed")
}

/// Coefficients `c` with `Σ c_i spanners_i = target`, free variables set to
/// zero; `None` when the target is not in the span.
pub fn solve_in_span(
    target: &Vector,
    spanners: &[Vector],
) -> Result<Option<Vec<FieldElement>>, LinalgError> {
    let field = target.field();
    let n = target.len();
    let mut cols: Vec<Vector> = spanners.to_vec();
    cols.push(target.clone());
    let m = Matrix::from_columns(field, n, &cols)?;
    let red = m.rref();
    let k = spanners.len();
    if red.pivots.contains(&k) {
        return Ok(None);
    }
    let mut out = vec![field.zero(); k];
    for (r, &p) in red.pivots.iter().enumerate() {
        out[p] = red.matrix.get(r, k).clone();
    }
    Ok(Some(out))
}

/// A subspace of `F^n`, held as a reduced row echelon basis so that equal
/// subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: &Field, ambient: usize, vectors: &[Vector]) -> Result<Self, LinalgError> {
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        let red = Matrix::from_rows(field, ambient, vectors)?.rref();
        let basis = (0..red.rank()).map(|r| red.matrix.row(r)).collect();
        Ok(Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots: red.pivots,
        })
    }

    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..ambient)
                .map(|i| Vector::unit(field, ambient, i))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Representative of `v` modulo the subspace, zero on pivot coordinates.
    pub fn reduce(&self, v: &Vector) -> Result<Vector, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::AmbientMismatch(v.len(), self.ambient));
        }
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = -out.get(p);
            out.add_scaled(&c, row);
        }
        Ok(out)
    }

    pub fn contains(&self, v: &Vector) -> Result<bool, LinalgError> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(&self.field, self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(&self.field, self.ambient));
        }
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| -v))
            .collect();
        let ker = kernel(&Matrix::from_columns(&self.field, self.ambient, &cols)?);
        let k = self.dim();
        let vectors: Vec<Vector> = ker
            .basis
            .iter()
            .map(|c| {
                let terms: Vec<(FieldElement, &Vector)> = self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(i, b)| (c.get(i).clone(), b))
                    .collect();
                debug_assert!(terms.len() == k);
                Vector::combination(&self.field, self.ambient, &terms)
            })
            .collect();
        Subspace::span(&self.field, self.ambient, &vectors)
    }
}

/// Whether the sum of `parts` is direct (dimensions add up).
pub fn is_direct_sum(parts: &[&Subspace]) -> Result<bool, LinalgError> {
    let Some(first) = parts.first() else {
        return Ok(true);
    };
    let mut total = Subspace::zero(first.field(), first.ambient());
    let mut dims = 0;
    for p in parts {
        total = total.sum(p)?;
        dims += p.dim();
    }
    Ok(total.dim() == dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn v(vals: &[i64]) -> Vector {
        let f = q();
        Vector::new(&f, vals.iter().map(|&x| f.from_integer(x)).collect()).unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_rows(&q(), 3, &[v(&[1, 2, 3]), v(&[2, 4, 6])]).unwrap();
        let ker = kernel(&m);
        assert_eq!(ker.dim(), 2);
        for b in ker.basis() {
            assert!(m.apply(b).unwrap().is_zero());
        }
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let sol = solve_in_span(&v(&[2, 2]), &[v(&[1, 1]), v(&[2, 2])])
            .unwrap()
            .unwrap();
        assert_eq!(sol[0].render(), "2");
        assert!(sol[1].is_zero());
        assert!(solve_in_span(&v(&[1, 0]), &[v(&[1, 1])]).unwrap().is_none());
    }

    #[test]
    fn intersection_and_sum() {
        let f = q();
        let a = Subspace::span(&f, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(&f, 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(
            a.intersection(&b).unwrap(),
            Subspace::span(&f, 3, &[v(&[0, 5, 0])]).unwrap()
        );
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(&f, 3));
        assert!(!is_direct_sum(&[&a, &b]).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(&q(), 2, &[v(&[2, 1]), v(&[1, 1])]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(Matrix::from_rows(&q(), 2, &[v(&[1, 1]), v(&[2, 2])])
            .unwrap()
            .inverse()
            .is_none());
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let f = q();
        let a = Subspace::full(&f, 2);
        let b = Subspace::full(&f, 3);
        assert_eq!(a.sum(&b), Err(LinalgError::AmbientMismatch(2, 3)));
    }
}
