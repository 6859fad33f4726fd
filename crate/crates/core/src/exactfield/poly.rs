//! Dense univariate polynomials over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with rational coefficients, stored lowest degree first with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(l) if !l.is_one() => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            _ => (r0, s0, t0),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Rational roots, ascending and without multiplicity.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        // Clear denominators and strip factors of x.
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &lcm).to_integer())
            .collect();
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let ints = &ints[shift..];
        let mut roots = Vec::new();
        if shift > 0 {
            roots.push(BigRational::zero());
        }
        if ints.len() > 1 {
            let constant = ints[0].abs();
            let lead = ints[ints.len() - 1].abs();
            for num in divisors(&constant) {
                for den in divisors(&lead) {
                    if num.gcd(&den) != BigInt::one() {
                        continue;
                    }
                    for sign in [1, -1] {
                        let cand = BigRational::new(&num * BigInt::from(sign), den.clone());
                        if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Render with the given variable name, inside the scalar grammar.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&render_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", render_rational(&mag)));
            }
        }
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Only used on small integers arising from catalog data.
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

/// `p/q` or `p`, with a leading minus sign for negatives.
pub fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_identity() {
        let a = QPoly::from_integers(&[1, 2, 3, 4]);
        let b = QPoly::from_integers(&[-1, 0, 2]);
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_is_monic() {
        let a = QPoly::from_integers(&[0, 3, 9]); // 3x(1+3x)
        let b = QPoly::from_integers(&[0, 0, 2]); // 2x^2
        assert_eq!(a.gcd(&b), QPoly::x());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = QPoly::from_integers(&[-1, 2, 1]);
        let b = QPoly::from_integers(&[1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_one());
    }

    #[test]
    fn roots_of_eta_times_three_eta_plus_one() {
        let p = QPoly::from_integers(&[0, 1, 3]);
        assert_eq!(p.rational_roots(), vec![q(-1, 3), q(0, 1)]);
        assert!(QPoly::from_integers(&[-1, 2, 1])
            .rational_roots()
            .is_empty());
    }

    #[test]
    fn render_is_readable() {
        let p = QPoly::from_coeffs(vec![q(-1, 1), q(0, 1), q(-3, 4)]);
        assert_eq!(p.render("eta"), "-3/4*eta^2 - 1");
    }
}
