//! Exact scalar fields: ℚ, GF(p) for odd primes, ℚ[η]/(m) and ℚ(η).

mod field;
pub mod parse;
mod poly;

pub use field::{default_variable, Field, FieldDescriptor, FieldElement};
pub use parse::{parse_scalar, parse_scalar_bound};
pub use poly::{render_rational, QPoly};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("exponent must be an integer in 0..=64")]
    ExponentOutOfRange,
    #[error("denominator vanishes at the requested value")]
    DenominatorVanishes,
    #[error("invalid field: {0}")]
    InvalidDescriptor(String),
}

/// Binary operation selector for [`arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arithmetic(op: Op, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    match op {
        Op::Add => a.checked_add(b),
        Op::Sub => a.checked_sub(b),
        Op::Mul => a.checked_mul(b),
        Op::Div => a.checked_div(b),
    }
}

/// Evaluate a ℚ(η) element at a concrete value in another field.
pub fn specialize(x: &FieldElement, value: &FieldElement) -> Result<FieldElement, FieldError> {
    x.specialize(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qeta() -> Field {
        Field::rational_functions("eta").unwrap()
    }

    #[test]
    fn rational_sum() {
        let q = Field::rationals();
        let x = q.parse("1/2").unwrap();
        let y = q.parse("1/3").unwrap();
        assert_eq!((&x + &y).render(), "5/6");
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.parse("4/3").unwrap().render(), "3");
        assert_eq!(f.from_integer(3).inverse().unwrap().render(), "2");
    }

    #[test]
    fn number_field_square_of_generator() {
        let f = Field::number_field(&[-1, 2, 1], "eta").unwrap();
        let eta = f.generator().unwrap();
        assert_eq!((&eta * &eta).render(), "-2*eta + 1");
    }

    #[test]
    fn rational_function_canonical_form() {
        let f = qeta();
        let x = f.parse("(eta^2 - 1)/(eta - 1)").unwrap();
        assert_eq!(x, f.parse("eta + 1").unwrap());
        let y = f.parse("(2*eta)/(eta+1)").unwrap();
        let (n, d) = y.as_rational_function().unwrap();
        assert_eq!(n, &QPoly::from_integers(&[0, 2]));
        assert_eq!(d, &QPoly::from_integers(&[1, 1]));
    }

    #[test]
    fn specialize_to_rationals() {
        let f = qeta();
        let x = f.parse("(5*eta^2 - 1)/(eta + 1)^2").unwrap();
        let q = Field::rationals();
        let v = x.specialize(&q.parse("-1/3").unwrap()).unwrap();
        assert_eq!(v.render(), "-1");
        assert_eq!(
            x.specialize(&q.from_integer(-1)),
            Err(FieldError::DenominatorVanishes)
        );
    }

    #[test]
    fn errors() {
        let q = Field::rationals();
        assert_eq!(q.parse("1/0"), Err(FieldError::DivisionByZero));
        assert_eq!(q.parse("eta"), Err(FieldError::UnknownSymbol("eta".into())));
        assert!(matches!(q.parse("1 +"), Err(FieldError::Syntax { .. })));
        assert_eq!(q.parse("2^65"), Err(FieldError::ExponentOutOfRange));
        assert!(matches!(
            Field::prime(2),
            Err(FieldError::InvalidDescriptor(_))
        ));
        assert!(matches!(
            Field::prime(9),
            Err(FieldError::InvalidDescriptor(_))
        ));
        assert!(matches!(
            Field::number_field(&[-1, 0, 1], "eta"),
            Err(FieldError::InvalidDescriptor(_))
        ));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            q.one().checked_add(&f5.one()),
            Err(FieldError::DescriptorMismatch)
        );
    }

    #[test]
    fn unary_minus_binds_below_power() {
        let q = Field::rationals();
        assert_eq!(q.parse("-2^2").unwrap().render(), "-4");
        assert_eq!(q.parse("(-2)^2").unwrap().render(), "4");
        assert_eq!(q.parse("0^0").unwrap().render(), "1");
    }

    #[test]
    fn render_round_trip() {
        let f = qeta();
        for text in [
            "-eta*(3*eta+1)/4",
            "(5*eta^2-1)/(eta+1)^2",
            "2*eta/(eta+1)",
            "-7/3",
            "eta^3/(2*eta-1)",
        ] {
            let x = f.parse(text).unwrap();
            assert_eq!(f.parse(&x.render()).unwrap(), x, "{text} -> {}", x.render());
        }
        assert_eq!(
            f.parse("-eta*(3*eta+1)/4").unwrap().render(),
            "(-3*eta^2 - eta)/4"
        );
    }
}
