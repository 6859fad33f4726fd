//! Formal combinations of axes and the coefficient transforms obtained by
//! applying the flip and shift to a relation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactfield::{Field, FieldElement};

/// `Σ c_i a_i` as a formal sum over axis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisCombination {
    field: Field,
    terms: BTreeMap<i64, FieldElement>,
}

impl AxisCombination {
    pub fn new(field: &Field) -> Self {
        AxisCombination {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, index: i64, c: &FieldElement) {
        let entry = self.terms.entry(index).or_insert_with(|| self.field.zero());
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElement)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coefficient(&self, index: i64) -> FieldElement {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn map_indices(&self, f: impl Fn(i64) -> i64) -> Self {
        let mut out = AxisCombination::new(&self.field);
        for (i, c) in &self.terms {
            out.add_term(f(*i), c);
        }
        out
    }

    /// Image under `τ₀ : a_i ↦ a_{-i}`.
    pub fn flip(&self) -> Self {
        self.map_indices(|i| -i)
    }

    /// Image under `f₁^s : a_i ↦ a_{i+s}`.
    pub fn shift(&self, s: i64) -> Self {
        self.map_indices(|i| i + s)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, &-c);
        }
        out
    }

    /// Coefficients `c_0, …, c_M` with `self = Σ c_m (a_m − a_{-m})`
    /// (`c_0` is always zero), if the combination has that shape.
    pub fn centered_antisymmetric(&self) -> Option<Vec<FieldElement>> {
        let top = self
            .terms
            .keys()
            .map(|i| i.unsigned_abs())
            .max()
            .unwrap_or(0) as i64;
        let mut out = vec![self.field.zero()];
        if !self.coefficient(0).is_zero() {
            return None;
        }
        for m in 1..=top {
            let c = self.coefficient(m);
            if self.coefficient(-m) != -&c {
                return None;
            }
            out.push(c);
        }
        Some(out)
    }

    /// Coefficients `β_0, …, β_M` with `self = Σ β_j (a_{j+1} − a_{-j})`, if
    /// the combination has that shape.
    pub fn shifted_antisymmetric(&self) -> Option<Vec<FieldElement>> {
        let top = self
            .terms
            .keys()
            .map(|&i| if i > 0 { i - 1 } else { -i })
            .max()
            .unwrap_or(0);
        let mut out = Vec::new();
        for j in 0..=top {
            let b = self.coefficient(j + 1);
            if self.coefficient(-j) != -&b {
                return None;
            }
            out.push(b);
        }
        Some(out)
    }
}

/// Which consequence of a relation to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformMode {
    /// Input `Σ α_i (a_{i+1} − a_{-i})`; output the coefficients of
    /// `(a_m − a_{-m})`, `m = 0..=k+1`, in `R − τ₀R`.
    FlipDifference,
    /// As above, then `S + f₁S + f₁⁻¹S`; `m = 0..=k+2`.
    FlipDifferenceSpread,
    /// Input `α_0 a_0 + Σ α_i (a_i + a_{-i})`; output the coefficients of
    /// `(a_{j+1} − a_{-j})`, `j = 0..=k`, in `f₁R − R`.
    ShiftDifference,
    /// `(1 − τ₀)(f₁ − 1)R` in the `(a_m − a_{-m})` basis, `m = 0..=k+1`.
    ShiftThenFlipDifference,
    /// `(1 + f₁ + f₁⁻¹)(1 − τ₀)(f₁ − 1)R`, `m = 0..=k+2`.
    ShiftThenFlipDifferenceSpread,
}

impl TransformMode {
    pub const ALL: [TransformMode; 5] = [
        TransformMode::FlipDifference,
        TransformMode::FlipDifferenceSpread,
        TransformMode::ShiftDifference,
        TransformMode::ShiftThenFlipDifference,
        TransformMode::ShiftThenFlipDifferenceSpread,
    ];

    /// Whether the input relation is `τ₀`-symmetric and centred (true) or
    /// antisymmetric and shifted (false).
    pub fn takes_centered_symmetric(self) -> bool {
        matches!(
            self,
            TransformMode::ShiftDifference
                | TransformMode::ShiftThenFlipDifference
                | TransformMode::ShiftThenFlipDifferenceSpread
        )
    }

    /// Apply the defining operation to a formal combination.
    pub fn apply_formally(self, relation: &AxisCombination) -> AxisCombination {
        let flip_diff = |r: &AxisCombination| r.minus(&r.flip());
        let spread = |r: &AxisCombination| r.plus(&r.shift(1)).plus(&r.shift(-1));
        let shift_diff = |r: &AxisCombination| r.shift(1).minus(r);
        match self {
            TransformMode::FlipDifference => flip_diff(relation),
            TransformMode::FlipDifferenceSpread => spread(&flip_diff(relation)),
            TransformMode::ShiftDifference => shift_diff(relation),
            TransformMode::ShiftThenFlipDifference => flip_diff(&shift_diff(relation)),
            TransformMode::ShiftThenFlipDifferenceSpread => {
                spread(&flip_diff(&shift_diff(relation)))
            }
        }
    }

    /// Read the output coefficients off a formal combination.
    pub fn read_coefficients(self, combo: &AxisCombination) -> Option<Vec<FieldElement>> {
        match self {
            TransformMode::ShiftDifference => combo.shifted_antisymmetric(),
            _ => combo.centered_antisymmetric(),
        }
    }
}

/// Closed-form coefficients of the transformed relation, given `α_0..α_k`.
/// Output lengths: `k+2` for the single differences, `k+3` for the spreads,
/// `k+1` for [`TransformMode::ShiftDifference`].
pub fn relation_transform(alphas: &[FieldElement], mode: TransformMode) -> Vec<FieldElement> {
    assert!(
        !alphas.is_empty(),
        "relation needs at least one coefficient"
    );
    let field = alphas[0].field().clone();
    let k = alphas.len() as i64 - 1;
    let two = field.from_integer(2);
    // α_i with zero above k and the mode's boundary value at -1.
    let alpha = |i: i64, minus_one: &FieldElement| -> FieldElement {
        match i {
            -1 => minus_one.clone(),
            i if i < -1 || i > k => field.zero(),
            i => alphas[i as usize].clone(),
        }
    };
    match mode {
        TransformMode::FlipDifference => {
            let b = -&alphas[0];
            (0..=k + 1)
                .map(|m| &alpha(m, &b) + &alpha(m - 1, &b))
                .collect()
        }
        TransformMode::FlipDifferenceSpread => {
            let b = -&alphas[0];
            std::iter::once(field.zero())
                .chain((1..=k + 2).map(|m| {
                    let s = &alpha(m + 1, &b) + &(&two * &alpha(m, &b));
                    let s = &s + &(&two * &alpha(m - 1, &b));
                    &s + &alpha(m - 2, &b)
                }))
                .collect()
        }
        TransformMode::ShiftDifference => {
            let z = field.zero();
            (0..=k).map(|j| &alpha(j, &z) - &alpha(j + 1, &z)).collect()
        }
        TransformMode::ShiftThenFlipDifference => {
            let z = field.zero();
            std::iter::once(field.zero())
                .chain((1..=k + 1).map(|m| &alpha(m - 1, &z) - &alpha(m + 1, &z)))
                .collect()
        }
        TransformMode::ShiftThenFlipDifferenceSpread => {
            let b = alpha(1, &field.zero());
            std::iter::once(field.zero())
                .chain((1..=k + 2).map(|m| {
                    let s = &alpha(m - 2, &b) + &alpha(m - 1, &b);
                    let s = &s - &alpha(m + 1, &b);
                    &s - &alpha(m + 2, &b)
                }))
                .collect()
        }
    }
}

/// Formal relation built from `α_0..α_k` in the shape a mode expects.
pub fn formal_relation(alphas: &[FieldElement], mode: TransformMode) -> AxisCombination {
    let field = alphas[0].field().clone();
    let mut combo = AxisCombination::new(&field);
    for (i, c) in alphas.iter().enumerate() {
        let i = i as i64;
        if mode.takes_centered_symmetric() {
            combo.add_term(i, c);
            if i != 0 {
                combo.add_term(-i, c);
            }
        } else {
            combo.add_term(i + 1, c);
            combo.add_term(-i, &-c);
        }
    }
    combo
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(vals: &[i64]) -> Vec<FieldElement> {
        let f = Field::rationals();
        vals.iter().map(|&v| f.from_integer(v)).collect()
    }

    #[test]
    fn flip_difference_examples() {
        assert_eq!(
            relation_transform(&q(&[1, 1]), TransformMode::FlipDifference),
            q(&[0, 2, 1])
        );
        assert_eq!(
            relation_transform(&q(&[5]), TransformMode::FlipDifference),
            q(&[0, 5])
        );
    }

    #[test]
    fn shift_difference_tail() {
        let out = relation_transform(&q(&[7, 3, 2, 1]), TransformMode::ShiftDifference);
        assert_eq!(out, q(&[4, 1, 1, 1]));
    }

    #[test]
    fn closed_forms_match_formal_application() {
        for alphas in [
            q(&[1]),
            q(&[0, 1]),
            q(&[2, -1, 3]),
            q(&[1, 1, 0, 1]),
            q(&[0, 0, 1]),
        ] {
            for mode in TransformMode::ALL {
                let formal = mode.apply_formally(&formal_relation(&alphas, mode));
                let read = mode.read_coefficients(&formal).expect("expected shape");
                let closed = relation_transform(&alphas, mode);
                let len = closed.len().max(read.len());
                let pad = |v: &[FieldElement]| {
                    let mut v = v.to_vec();
                    v.resize(len, Field::rationals().zero());
                    v
                };
                assert_eq!(pad(&read), pad(&closed), "{mode:?} on {alphas:?}");
            }
        }
    }
}
