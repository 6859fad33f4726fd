//! Recursive-descent parser for scalar literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' uint)? | '(' expr ')' ('^' uint)?
//! atom   := uint | identifier
//! ```
//!
//! The grammar is shared with vector literals through [`Semantics`].

use num_bigint::BigUint;

use super::{Field, FieldElement, FieldError};

pub const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigUint),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FieldError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().collect();
            out.push((start, Token::Int(digits.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((start, Token::Ident(bytes[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else {
            return Err(FieldError::Syntax {
                position: i,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

/// Meaning of the grammar's productions.
pub trait Semantics {
    type Value;
    type Error: From<FieldError>;
    fn integer(&self, n: &BigUint) -> Result<Self::Value, Self::Error>;
    fn symbol(&self, name: &str) -> Result<Self::Value, Self::Error>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value, Self::Error>;
    fn pow(&self, a: Self::Value, exp: u32) -> Result<Self::Value, Self::Error>;
}

struct Parser<'s, S: Semantics> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    sem: &'s S,
}

impl<S: Semantics> Parser<'_, S> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> FieldError {
        FieldError::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<S::Value, S::Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.sem.add(acc, rhs)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.sem.sub(acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<S::Value, S::Error> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let rhs = self.factor()?;
                acc = self.sem.mul(acc, rhs)?;
            } else if self.eat('/') {
                let rhs = self.factor()?;
                acc = self.sem.div(acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<S::Value, S::Error> {
        if self.eat('-') {
            let inner = self.factor()?;
            return self.sem.neg(inner);
        }
        let base = if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'").into());
            }
            inner
        } else {
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    self.sem.integer(&n)?
                }
                Some(Token::Ident(name)) => {
                    self.pos += 1;
                    self.sem.symbol(&name)?
                }
                Some(tok) => return Err(self.error(format!("unexpected {tok:?}")).into()),
                None => return Err(self.error("unexpected end of input").into()),
            }
        };
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    self.pos += 1;
                    let exp = u32::try_from(&n)
                        .ok()
                        .filter(|e| *e <= MAX_EXPONENT)
                        .ok_or(FieldError::ExponentOutOfRange)?;
                    return self.sem.pow(base, exp);
                }
                _ => return Err(self.error("expected unsigned exponent").into()),
            }
        }
        Ok(base)
    }
}

/// Parse `text` with arbitrary semantics.
pub fn parse_with<S: Semantics>(text: &str, sem: &S) -> Result<S::Value, S::Error> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(FieldError::Syntax {
            position: 0,
            message: "empty expression".into(),
        }
        .into());
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        sem,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input").into());
    }
    Ok(value)
}

/// Scalar semantics: the field's variable (if any) plus optional bindings.
pub struct ScalarSemantics<'a> {
    pub field: &'a Field,
    pub bindings: &'a [(&'a str, FieldElement)],
}

impl Semantics for ScalarSemantics<'_> {
    type Value = FieldElement;
    type Error = FieldError;

    fn integer(&self, n: &BigUint) -> Result<FieldElement, FieldError> {
        Ok(self.field.from_bigint(&n.clone().into()))
    }

    fn symbol(&self, name: &str) -> Result<FieldElement, FieldError> {
        if let Some((_, v)) = self.bindings.iter().find(|(k, _)| *k == name) {
            return Ok(v.clone());
        }
        if self.field.variable() == Some(name) {
            return self.field.generator();
        }
        Err(FieldError::UnknownSymbol(name.to_string()))
    }

    fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        a.checked_add(&b)
    }
    fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        a.checked_sub(&b)
    }
    fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        a.checked_mul(&b)
    }
    fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        a.checked_div(&b)
    }
    fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(-a)
    }
    fn pow(&self, a: FieldElement, exp: u32) -> Result<FieldElement, FieldError> {
        Ok(a.pow(exp))
    }
}

pub fn parse_scalar(text: &str, field: &Field) -> Result<FieldElement, FieldError> {
    parse_with(
        text,
        &ScalarSemantics {
            field,
            bindings: &[],
        },
    )
}

/// Parse with extra named values, e.g. `eta` bound to a concrete number.
pub fn parse_scalar_bound(
    text: &str,
    field: &Field,
    bindings: &[(&str, FieldElement)],
) -> Result<FieldElement, FieldError> {
    parse_with(text, &ScalarSemantics { field, bindings })
}
