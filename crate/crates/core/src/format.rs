//! JSON description of an algebra with its axes, for loading and emitting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{parse_vector, render_vector, AlgebraDef, AlgebraError};
use crate::axial::DihedralSeed;
use crate::catalog::{CatalogError, EntryName, EtaRule};
use crate::exactfield::{parse_scalar_bound, Field, FieldDescriptor, FieldError};
use crate::linalg::Vector;
use crate::verify::Instance;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed algebra file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parameter rejected: {0}")]
    ConstraintViolation(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldDescriptor,
    /// Scalar text for η; may use the field's variable.
    pub eta: String,
    pub basis: Vec<String>,
    /// Nonzero products; each unordered pair at most once.
    pub products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dihedral: Option<DihedralBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<ConstraintBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    /// `label → coefficient` (scalar text; `eta` is bound).
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DihedralBlock {
    /// Vector literals for `a_lo, …, a_hi`.
    pub axes: Vec<String>,
    /// `[lo, hi]` index range of `axes`.
    pub window: [i64; 2],
    /// Optional explicit `basis label → image` for the shift and the flip.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub shift_images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flip_images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintBlock {
    /// Scalar expressions that must not vanish.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nonzero: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
    /// Scalar literals η must differ from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude_eta: Vec<String>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable") + "\n"
    }

    /// Validate and build the instance (`window` as in [`Instance::new`]).
    pub fn instantiate(&self, window: Option<usize>) -> Result<Instance, FormatError> {
        let field = Field::new(self.field.clone())?;
        let eta = parse_scalar_bound(&self.eta, &field, &[])?;
        if eta.is_zero() || eta.is_one() {
            return Err(FormatError::ConstraintViolation(format!(
                "eta = {} is excluded",
                eta.render()
            )));
        }
        let bindings = [("eta", eta.clone())];
        if let Some(c) = &self.constraints {
            if let Some(p) = c.characteristic {
                if field.characteristic() != p {
                    return Err(FormatError::ConstraintViolation(format!(
                        "requires characteristic {p}, got {field}"
                    )));
                }
            }
            for text in &c.exclude_eta {
                if parse_scalar_bound(text, &field, &bindings)? == eta {
                    return Err(FormatError::ConstraintViolation(format!(
                        "eta = {text} is excluded"
                    )));
                }
            }
            for text in &c.nonzero {
                if parse_scalar_bound(text, &field, &bindings)?.is_zero() {
                    return Err(FormatError::ConstraintViolation(format!("{text} vanishes")));
                }
            }
        }
        let n = self.basis.len();
        let index = |label: &str| {
            self.basis
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
        };
        let mut products = Vec::with_capacity(self.products.len());
        for p in &self.products {
            let mut v = Vector::zeros(&field, n);
            for (label, coeff) in &p.value {
                let c = parse_scalar_bound(coeff, &field, &bindings).map_err(|e| match e {
                    FieldError::DivisionByZero => FieldError::DenominatorVanishes,
                    other => other,
                })?;
                v.set(index(label)?, c);
            }
            products.push((index(&p.left)?, index(&p.right)?, v));
        }
        let alg = std::sync::Arc::new(AlgebraDef::new(&field, self.basis.clone(), products)?);
        let seed = match &self.dihedral {
            None => None,
            Some(d) => Some(d.seed(&alg, &bindings)?),
        };
        let name = self.name.clone().unwrap_or_else(|| "algebra".into());
        Ok(Instance::new(&name, alg, eta, seed, window))
    }

    /// File form of an instance; `constraints` are copied as given.
    pub fn from_instance(inst: &Instance, constraints: Option<ConstraintBlock>) -> Self {
        let alg = &inst.algebra;
        let mut products = Vec::new();
        for i in 0..alg.dim() {
            for j in i..alg.dim() {
                let v = alg.basis_product(i, j);
                if v.is_zero() {
                    continue;
                }
                let value = v
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (alg.labels()[k].clone(), c.render()))
                    .collect();
                products.push(ProductEntry {
                    left: alg.labels()[i].clone(),
                    right: alg.labels()[j].clone(),
                    value,
                });
            }
        }
        let dihedral = inst.seed.as_ref().map(|s| DihedralBlock::from_seed(alg, s));
        AlgebraFile {
            name: Some(inst.name.clone()),
            field: alg.field().descriptor().clone(),
            eta: inst.eta.render(),
            basis: alg.labels().to_vec(),
            products,
            dihedral,
            constraints,
        }
    }
}

impl DihedralBlock {
    fn seed(
        &self,
        alg: &AlgebraDef,
        bindings: &[(&str, crate::exactfield::FieldElement)],
    ) -> Result<DihedralSeed, FormatError> {
        let [lo, hi] = self.window;
        if hi < lo || (hi - lo + 1) as usize != self.axes.len() {
            return Err(FormatError::Invalid(format!(
                "window [{lo}, {hi}] does not match {} axes",
                self.axes.len()
            )));
        }
        let axes = self
            .axes
            .iter()
            .map(|t| parse_vector(alg, t, bindings))
            .collect::<Result<Vec<_>, _>>()?;
        let images = |m: &BTreeMap<String, String>| -> Result<Vec<(Vector, Vector)>, FormatError> {
            m.iter()
                .map(|(label, image)| {
                    let k = alg.label_index(label)?;
                    Ok((alg.basis_vector(k), parse_vector(alg, image, bindings)?))
                })
                .collect()
        };
        let mut seed = DihedralSeed::new(lo, axes);
        seed.shift_images = images(&self.shift_images)?;
        seed.flip_images = images(&self.flip_images)?;
        Ok(seed)
    }

    fn from_seed(alg: &AlgebraDef, seed: &DihedralSeed) -> Self {
        let images = |pairs: &[(Vector, Vector)]| {
            pairs
                .iter()
                .map(|(g, h)| (render_vector(alg, g), render_vector(alg, h)))
                .collect()
        };
        DihedralBlock {
            axes: seed.axes.iter().map(|v| render_vector(alg, v)).collect(),
            window: [seed.lo, seed.hi()],
            shift_images: images(&seed.shift_images),
            flip_images: images(&seed.flip_images),
        }
    }
}

/// Constraint block recorded when emitting a catalogue entry.
pub fn entry_constraints(name: EntryName) -> Option<ConstraintBlock> {
    let info = name.info();
    let mut block = ConstraintBlock {
        characteristic: info.characteristic,
        ..Default::default()
    };
    if let EtaRule::Generic { exclude } = info.eta {
        block.exclude_eta = ["0", "1", "1/2"]
            .iter()
            .chain(exclude)
            .map(|v| v.to_string())
            .collect();
    }
    (block != ConstraintBlock::default()).then_some(block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::instantiate;
    use crate::verify::{verify_instance, CheckKind};

    #[test]
    fn emitted_entries_round_trip() {
        for name in EntryName::ALL {
            let inst = instantiate(name, None, None, None).unwrap();
            let file = AlgebraFile::from_instance(&inst, entry_constraints(name));
            let text = file.to_json();
            let back = AlgebraFile::from_json(&text).unwrap();
            assert_eq!(back, file);
            let reloaded = back.instantiate(None).unwrap();
            let checks = [CheckKind::Fusion, CheckKind::Dihedral];
            let mut expected = verify_instance(&inst, &checks);
            expected.notes.clear();
            assert_eq!(verify_instance(&reloaded, &checks), expected, "{name}");
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            AlgebraFile::from_json("{"),
            Err(FormatError::Json(_))
        ));
        let char_two = r#"{"field":{"kind":"prime","p":2},"eta":"1","basis":["e"],"products":[]}"#;
        let file = AlgebraFile::from_json(char_two).unwrap();
        assert!(matches!(
            file.instantiate(None),
            Err(FormatError::Field(FieldError::InvalidDescriptor(_)))
        ));
        for constraints in [
            r#"{"nonzero":["eta+1"]}"#,
            r#"{"exclude_eta":["-1"]}"#,
            r#"{"characteristic":5}"#,
        ] {
            let text = format!(
                r#"{{"field":{{"kind":"rationals"}},"eta":"-1","basis":["e"],"products":[],"constraints":{constraints}}}"#
            );
            let file = AlgebraFile::from_json(&text).unwrap();
            assert!(
                matches!(
                    file.instantiate(None),
                    Err(FormatError::ConstraintViolation(_))
                ),
                "{constraints}"
            );
        }
        let duplicate = r#"{"field":{"kind":"rationals"},"eta":"2","basis":["e"],"products":[
            {"left":"e","right":"e","value":{"e":"1"}},{"left":"e","right":"e","value":{"e":"1"}}]}"#;
        let file = AlgebraFile::from_json(duplicate).unwrap();
        assert!(matches!(
            file.instantiate(None),
            Err(FormatError::Algebra(AlgebraError::DuplicateProduct(..)))
        ));
        let nf = r#"{"field":{"kind":"number_field","minpoly":["-1","2",1]},"eta":"eta","basis":["e"],"products":[]}"#;
        assert!(AlgebraFile::from_json(nf)
            .unwrap()
            .instantiate(None)
            .is_ok());
    }
}
