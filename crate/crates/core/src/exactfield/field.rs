use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{render_rational, QPoly};
use super::FieldError;

/// Which exact field a value lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    Rationals,
    Prime {
        p: u64,
    },
    NumberField {
        /// Monic minimal polynomial, integer coefficients lowest degree first;
        /// written as strings, integers are also accepted.
        #[serde(with = "integer_strings")]
        minpoly: Vec<i64>,
        #[serde(default = "default_variable")]
        variable: String,
    },
    RationalFunctions {
        #[serde(default = "default_variable")]
        variable: String,
    },
}

mod integer_strings {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum IntOrText {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &[i64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(i64::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
        Vec::<IntOrText>::deserialize(d)?
            .into_iter()
            .map(|x| match x {
                IntOrText::Int(n) => Ok(n),
                IntOrText::Text(t) => t.trim().parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

pub fn default_variable() -> String {
    "eta".to_string()
}

/// A validated, shareable field descriptor.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    descriptor: FieldDescriptor,
    /// Minimal polynomial over ℚ for number fields.
    modulus: Option<QPoly>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.descriptor == other.inner.descriptor
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.descriptor {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "GF({p})"),
            FieldDescriptor::NumberField { variable, .. } => {
                let m = self.inner.modulus.as_ref().expect("number field modulus");
                write!(f, "Q[{variable}]/({})", m.render(variable))
            }
            FieldDescriptor::RationalFunctions { variable } => write!(f, "Q({variable})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(descriptor: FieldDescriptor) -> Result<Self, FieldError> {
        let mut modulus = None;
        match &descriptor {
            FieldDescriptor::Rationals => {}
            FieldDescriptor::Prime { p } => {
                if *p == 2 {
                    return Err(FieldError::InvalidDescriptor(
                        "characteristic 2 is not supported".into(),
                    ));
                }
                if !is_prime(*p) || *p >= 1 << 62 {
                    return Err(FieldError::InvalidDescriptor(format!(
                        "{p} is not a supported prime"
                    )));
                }
            }
            FieldDescriptor::NumberField { minpoly, variable } => {
                check_variable(variable)?;
                let m = QPoly::from_integers(minpoly);
                match m.degree() {
                    Some(d) if d >= 2 => {
                        if !m.leading().is_some_and(One::is_one) {
                            return Err(FieldError::InvalidDescriptor(
                                "minimal polynomial must be monic".into(),
                            ));
                        }
                        if d > 3 {
                            return Err(FieldError::InvalidDescriptor(
                                "irreducibility is only checked up to degree 3".into(),
                            ));
                        }
                        if !m.rational_roots().is_empty() {
                            return Err(FieldError::InvalidDescriptor(format!(
                                "{} is reducible over Q",
                                m.render(variable)
                            )));
                        }
                    }
                    _ => {
                        return Err(FieldError::InvalidDescriptor(
                            "minimal polynomial must have degree at least 2".into(),
                        ))
                    }
                }
                modulus = Some(m);
            }
            FieldDescriptor::RationalFunctions { variable } => check_variable(variable)?,
        }
        Ok(Field {
            inner: Arc::new(FieldInner {
                descriptor,
                modulus,
            }),
        })
    }

    pub fn rationals() -> Self {
        Self::new(FieldDescriptor::Rationals).expect("Q is valid")
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(FieldDescriptor::Prime { p })
    }

    pub fn number_field(minpoly: &[i64], variable: &str) -> Result<Self, FieldError> {
        Self::new(FieldDescriptor::NumberField {
            minpoly: minpoly.to_vec(),
            variable: variable.into(),
        })
    }

    pub fn rational_functions(variable: &str) -> Result<Self, FieldError> {
        Self::new(FieldDescriptor::RationalFunctions {
            variable: variable.into(),
        })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.inner.descriptor
    }

    pub fn characteristic(&self) -> u64 {
        match self.inner.descriptor {
            FieldDescriptor::Prime { p } => p,
            _ => 0,
        }
    }

    /// Name of the adjoined variable, if any.
    pub fn variable(&self) -> Option<&str> {
        match &self.inner.descriptor {
            FieldDescriptor::NumberField { variable, .. }
            | FieldDescriptor::RationalFunctions { variable } => Some(variable),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(
            self.inner.descriptor,
            FieldDescriptor::RationalFunctions { .. }
        )
    }

    pub(crate) fn modulus(&self) -> Option<&QPoly> {
        self.inner.modulus.as_ref()
    }

    pub fn zero(&self) -> FieldElement {
        let value = match &self.inner.descriptor {
            FieldDescriptor::Rationals => Value::Q(BigRational::zero()),
            FieldDescriptor::Prime { .. } => Value::Fp(0),
            FieldDescriptor::NumberField { .. } => Value::Nf(QPoly::zero()),
            FieldDescriptor::RationalFunctions { .. } => Value::Rf(QPoly::zero(), QPoly::one()),
        };
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let value = match &self.inner.descriptor {
            FieldDescriptor::Rationals => Value::Q(BigRational::from_integer(n.clone())),
            FieldDescriptor::Prime { p } => Value::Fp(reduce_mod(n, *p)),
            FieldDescriptor::NumberField { .. } => {
                Value::Nf(QPoly::constant(BigRational::from_integer(n.clone())))
            }
            FieldDescriptor::RationalFunctions { .. } => Value::Rf(
                QPoly::constant(BigRational::from_integer(n.clone())),
                QPoly::one(),
            ),
        };
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    /// Embed a rational; fails in GF(p) when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement, FieldError> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        num.checked_div(&den)
    }

    /// The adjoined variable (`eta`) of a number field or ℚ(η).
    pub fn generator(&self) -> Result<FieldElement, FieldError> {
        let value = match &self.inner.descriptor {
            FieldDescriptor::NumberField { .. } => {
                Value::Nf(QPoly::x().rem(self.modulus().unwrap()))
            }
            FieldDescriptor::RationalFunctions { .. } => Value::Rf(QPoly::x(), QPoly::one()),
            _ => {
                return Err(FieldError::UnknownSymbol(format!(
                    "{self} has no generator"
                )))
            }
        };
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// Element of ℚ(η) from numerator and denominator polynomials.
    pub fn rational_function(&self, num: QPoly, den: QPoly) -> Result<FieldElement, FieldError> {
        if !self.is_symbolic() {
            return Err(FieldError::DescriptorMismatch);
        }
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement {
            field: self.clone(),
            value: canonical_rf(num, den),
        })
    }

    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        super::parse::parse_scalar(text, self)
    }
}

fn check_variable(name: &str) -> Result<(), FieldError> {
    let ok = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(FieldError::InvalidDescriptor(format!(
            "bad variable name {name:?}"
        )))
    }
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

fn canonical_rf(num: QPoly, den: QPoly) -> Value {
    if num.is_zero() {
        return Value::Rf(QPoly::zero(), QPoly::one());
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.is_one() {
        (num, den)
    } else {
        (num.div_rem(&g).0, den.div_rem(&g).0)
    };
    let lead = den.leading().cloned().expect("nonzero denominator");
    if !lead.is_one() {
        let inv = lead.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    Value::Rf(num, den)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Value {
    Q(BigRational),
    Fp(u64),
    Nf(QPoly),
    /// Reduced numerator and monic denominator.
    Rf(QPoly, QPoly),
}

/// An element of one of the supported exact fields. Always canonical, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Q(r) => r.is_zero(),
            Value::Fp(v) => *v == 0,
            Value::Nf(p) => p.is_zero(),
            Value::Rf(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Q(r) => r.is_one(),
            Value::Fp(v) => *v == 1,
            Value::Nf(p) => p.is_one(),
            Value::Rf(n, d) => n.is_one() && d.is_one(),
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch)
        }
    }

    fn with(&self, value: Value) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    fn prime(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Q(a), Value::Q(b)) => Value::Q(a + b),
            (Value::Fp(a), Value::Fp(b)) => {
                Value::Fp(((*a as u128 + *b as u128) % self.prime() as u128) as u64)
            }
            (Value::Nf(a), Value::Nf(b)) => Value::Nf(a.add(b)),
            (Value::Rf(an, ad), Value::Rf(bn, bd)) => {
                if ad == bd {
                    canonical_rf(an.add(bn), ad.clone())
                } else {
                    canonical_rf(an.mul(bd).add(&bn.mul(ad)), ad.mul(bd))
                }
            }
            _ => return Err(FieldError::DescriptorMismatch),
        };
        Ok(self.with(value))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Q(a), Value::Q(b)) => Value::Q(a * b),
            (Value::Fp(a), Value::Fp(b)) => Value::Fp(mulmod(*a, *b, self.prime())),
            (Value::Nf(a), Value::Nf(b)) => Value::Nf(a.mul(b).rem(self.field.modulus().unwrap())),
            (Value::Rf(an, ad), Value::Rf(bn, bd)) => {
                if an.is_zero() || bn.is_zero() {
                    canonical_rf(QPoly::zero(), QPoly::one())
                } else {
                    canonical_rf(an.mul(bn), ad.mul(bd))
                }
            }
            _ => return Err(FieldError::DescriptorMismatch),
        };
        Ok(self.with(value))
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Q(a) => Value::Q(a.recip()),
            Value::Fp(a) => Value::Fp(powmod(*a, self.prime() - 2, self.prime())),
            Value::Nf(a) => {
                let (_, s, _) = a.ext_gcd(self.field.modulus().unwrap());
                Value::Nf(s.rem(self.field.modulus().unwrap()))
            }
            Value::Rf(n, d) => canonical_rf(d.clone(), n.clone()),
        };
        Ok(self.with(value))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    fn neg_ref(&self) -> Self {
        let value = match &self.value {
            Value::Q(a) => Value::Q(-a),
            Value::Fp(a) => Value::Fp(if *a == 0 { 0 } else { self.prime() - a }),
            Value::Nf(a) => Value::Nf(a.neg()),
            Value::Rf(n, d) => Value::Rf(n.neg(), d.clone()),
        };
        self.with(value)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The value as a rational number, when the field is ℚ or the element is
    /// a constant of a number field / ℚ(η).
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Q(r) => Some(r.clone()),
            Value::Nf(p) if p.is_constant() => Some(p.coeff(0)),
            Value::Rf(n, d) if n.is_constant() && d.is_one() => Some(n.coeff(0)),
            _ => None,
        }
    }

    /// Residue in `0..p` for prime fields.
    pub fn to_residue(&self) -> Option<u64> {
        match self.value {
            Value::Fp(v) => Some(v),
            _ => None,
        }
    }

    /// Numerator and monic denominator for ℚ(η) elements.
    pub fn as_rational_function(&self) -> Option<(&QPoly, &QPoly)> {
        match &self.value {
            Value::Rf(n, d) => Some((n, d)),
            _ => None,
        }
    }

    /// Polynomial representative (degree below the modulus) for number fields.
    pub fn as_number_field(&self) -> Option<&QPoly> {
        match &self.value {
            Value::Nf(p) => Some(p),
            _ => None,
        }
    }

    /// Evaluate a ℚ(η) element at `value` in another field.
    pub fn specialize(&self, value: &FieldElement) -> Result<FieldElement, FieldError> {
        let Value::Rf(num, den) = &self.value else {
            return Err(FieldError::DescriptorMismatch);
        };
        let target = value.field();
        let eval = |p: &QPoly| -> Result<FieldElement, FieldError> {
            let mut acc = target.zero();
            for c in p.coeffs().iter().rev() {
                let c = target
                    .from_rational(c)
                    .map_err(|_| FieldError::DenominatorVanishes)?;
                acc = &(&acc * value) + &c;
            }
            Ok(acc)
        };
        let d = eval(den)?;
        if d.is_zero() {
            return Err(FieldError::DenominatorVanishes);
        }
        eval(num)?.checked_div(&d)
    }

    /// Canonical text, parseable back with [`Field::parse`].
    pub fn render(&self) -> String {
        match &self.value {
            Value::Q(r) => render_rational(r),
            Value::Fp(v) => v.to_string(),
            Value::Nf(p) => render_fraction(p, &QPoly::one(), self.field.variable().unwrap()),
            Value::Rf(n, d) => render_fraction(n, d, self.field.variable().unwrap()),
        }
    }
}

/// Render `num/den` with integer coefficients on both sides.
fn render_fraction(num: &QPoly, den: &QPoly, var: &str) -> String {
    let lcm = num
        .coeffs()
        .iter()
        .chain(den.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = BigRational::from_integer(lcm);
    let (num, den) = (num.scale(&scale), den.scale(&scale));
    let terms = |p: &QPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
    let ns = num.render(var);
    if den.is_one() {
        return ns;
    }
    let ns = if terms(&num) > 1 {
        format!("({ns})")
    } else {
        ns
    };
    if den.is_constant() {
        format!("{ns}/{}", den.render(var))
    } else {
        format!("{ns}/({})", den.render(var))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.render(), self.field)
    }
}

// Operator forms panic on mismatched fields; use the `checked_*` methods
// when the operands come from untrusted input.
impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.checked_sub(rhs)
            .expect("field mismatch in subtraction")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.checked_mul(rhs)
            .expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}
