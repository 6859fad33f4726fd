//! Structural identities satisfied by the products `p_{i,j}` in a dihedral
//! axial algebra, checked exactly and with the free scalars extracted.

use serde::Serialize;

use super::{lambda_coefficient, p_vector, split_eigenspace, AxialError, DihedralData};
use crate::algebra::AlgebraDef;
use crate::exactfield::FieldElement;
use crate::linalg::{kernel, solve_in_span, Matrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    /// `λ_1, λ_2, λ_3`.
    pub lambdas: Vec<FieldElement>,
    pub mu: Option<FieldElement>,
    pub nu: Option<FieldElement>,
    pub rho: Option<FieldElement>,
    pub pi: Option<FieldElement>,
    pub two_generated_dim: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// The subalgebra generated by two axes.
#[derive(Clone, Debug)]
pub struct TwoGenerated {
    pub dim: usize,
    pub p: Vector,
    /// Spanned by `a`, `b` and `p = ab − η(a + b)`.
    pub spanned_by_axes_and_p: bool,
    /// `p² = π p`; `None` when `p` is zero or `p²` is not a multiple of `p`.
    pub pi: Option<FieldElement>,
    pub p_squared_is_multiple: bool,
}

pub fn two_generated_closure(
    alg: &AlgebraDef,
    a: &Vector,
    b: &Vector,
    eta: &FieldElement,
) -> Result<TwoGenerated, AxialError> {
    let sub = alg.generated_subalgebra(&[a.clone(), b.clone()])?;
    let p = &alg.multiply(a, b)? - &(a + b).scale(eta);
    let small = alg.span(&[a.clone(), b.clone(), p.clone()])?;
    let pp = alg.multiply(&p, &p)?;
    let (pi, multiple) = if p.is_zero() {
        (None, pp.is_zero())
    } else {
        match solve_in_span(&pp, std::slice::from_ref(&p))? {
            Some(c) => (Some(c[0].clone()), true),
            None => (None, false),
        }
    };
    Ok(TwoGenerated {
        dim: sub.dim(),
        p,
        spanned_by_axes_and_p: sub == small,
        pi,
        p_squared_is_multiple: multiple,
    })
}

struct Ctx<'a> {
    dd: &'a DihedralData,
    alg: &'a AlgebraDef,
    eta: FieldElement,
}

impl Ctx<'_> {
    fn a(&self, i: i64) -> Vector {
        self.dd.axis(i)
    }

    fn p(&self, i: i64, j: i64) -> Vector {
        p_vector(self.dd, i, j)
    }

    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.alg.mul(x, y)
    }

    fn int(&self, n: i64) -> FieldElement {
        self.eta.field().from_integer(n)
    }

    fn div(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        x.checked_div(y)
            .expect("divisor is a nonzero multiple of eta or 2")
    }

    fn pair(&self, i: i64) -> Vector {
        &self.a(i) + &self.a(-i)
    }

    /// `2 p_1 + η (a_1 + a_{-1})`.
    fn q1(&self) -> Vector {
        &self.p(1, 0).scale(&self.int(2)) + &self.pair(1).scale(&self.eta)
    }

    /// Scalar `c` with `v = c a_0`, if any.
    fn multiple_of_a0(&self, v: &Vector) -> Option<FieldElement> {
        solve_in_span(v, &[self.a(0)])
            .expect("same ambient")
            .map(|c| c[0].clone())
    }
}

fn describe(alg: &AlgebraDef, v: &Vector) -> String {
    crate::algebra::render_vector(alg, v)
}

/// Run every identity on the algebra of `dd`, extracting `λ_i`, `μ`, `ν`,
/// `ρ` and `π`.
pub fn identity_suite(dd: &DihedralData) -> Result<IdentityReport, AxialError> {
    let alg = dd.algebra().as_ref();
    let eta = dd.eta().clone();
    let ctx = Ctx {
        dd,
        alg,
        eta: eta.clone(),
    };
    let mut checks = Vec::new();
    let mut push = |name: &str, holds: bool, detail: String| {
        checks.push(IdentityCheck {
            name: name.into(),
            holds,
            detail,
        });
    };

    let dec = split_eigenspace(alg, &ctx.a(0), &eta, &dd.tau(0)?)?;
    let lambdas: Vec<FieldElement> = (1..=3)
        .map(|i| lambda_coefficient(&dec, &ctx.a(i)))
        .collect::<Result<_, _>>()?;
    let one = ctx.int(1);

    for i in 1..=3i64 {
        let lam = &lambdas[i as usize - 1];
        let expected = &(&(&one - &eta) * lam) - &eta;
        let lhs = ctx.mul(&ctx.a(0), &ctx.p(i, 0));
        let residual = &lhs - &ctx.a(0).scale(&expected);
        push(
            &format!("a0-action-on-p{i}0"),
            residual.is_zero(),
            if residual.is_zero() {
                String::new()
            } else {
                describe(alg, &residual)
            },
        );

        let half_eta = ctx.div(&eta, &ctx.int(2));
        let v = &(&ctx.p(i, 0) - &ctx.a(0).scale(&(lam - &eta))) + &ctx.pair(i).scale(&half_eta);
        let inside = dec.parts[2].contains(&v)?;
        push(
            &format!("p{i}0-in-eta-plus-part"),
            inside,
            if inside {
                String::new()
            } else {
                describe(alg, &v)
            },
        );
    }

    // Invariant elements acting on a_0 by a scalar act on every p_{i,j}
    // by that scalar.
    let n = alg.dim();
    let field = alg.field();
    let fixed_by_shift = kernel(&dd.shift().matrix().shift_diagonal(&one));
    let fixed_by_flip = kernel(&dd.flip().matrix().shift_diagonal(&one));
    let invariant = fixed_by_shift.intersection(&fixed_by_flip)?;
    let line = Subspace::span(field, n, &[ctx.a(0)])?;
    let residues: Vec<Vector> = invariant
        .basis()
        .iter()
        .map(|x| line.reduce(&ctx.mul(&ctx.a(0), x)))
        .collect::<Result<_, _>>()?;
    let mut bad_invariant = Vec::new();
    let mut tested = 0;
    if !invariant.basis().is_empty() {
        let ker = kernel(&Matrix::from_columns(field, n, &residues)?);
        for c in ker.basis() {
            let terms: Vec<_> = c
                .coords()
                .iter()
                .cloned()
                .zip(invariant.basis().iter())
                .collect();
            let x = Vector::combination(field, n, &terms);
            let pi = ctx
                .multiple_of_a0(&ctx.mul(&ctx.a(0), &x))
                .expect("chosen so that x a_0 is a multiple of a_0");
            for i in 1..=3 {
                for j in -1..=1 {
                    tested += 1;
                    let p = ctx.p(i, j);
                    if ctx.mul(&x, &p) != p.scale(&pi) {
                        bad_invariant.push(format!("x={} on p{i},{j}", describe(alg, &x)));
                    }
                }
            }
        }
    }
    push(
        "invariant-action",
        bad_invariant.is_empty(),
        if bad_invariant.is_empty() {
            format!("{tested} products checked")
        } else {
            bad_invariant.join("; ")
        },
    );

    let (lambda1, lambda2) = (&lambdas[0], &lambdas[1]);
    let two = ctx.int(2);
    let k4 = &(&(&two * &eta) - &one) * &(&(&ctx.int(4) * lambda1) - &(&ctx.int(3) * &eta));
    let k1 = ctx.div(&k4, &(&two * &eta));
    let q1 = ctx.q1();

    let r_mu = &ctx.mul(&ctx.a(0), &ctx.p(2, 1)) - &q1.scale(&k1);
    let mu = ctx.multiple_of_a0(&r_mu);
    push(
        "a0-times-p21",
        mu.is_some(),
        if mu.is_some() {
            String::new()
        } else {
            describe(alg, &r_mu)
        },
    );

    let (mut nu, mut rho) = (None, None);
    if let Some(mu) = &mu {
        let eta2 = &eta * &eta;
        // μ − η λ_2 + 2η²
        let m = &(mu - &(&eta * lambda2)) + &(&two * &eta2);
        let c_p2 = ctx.div(
            &(&(&(&two * &eta) - &one) * &(&(&two * lambda1) - &eta)),
            &(&two * &eta),
        );
        let q2 = &ctx.p(2, 0).scale(&two) + &ctx.pair(2).scale(&eta);
        let rhs = &(&(&ctx.p(3, 1) - &ctx.p(3, -1)).scale(&ctx.div(&eta, &two)) - &q2.scale(&c_p2))
            - &q1.scale(&ctx.div(&m, &eta));
        let r_nu = &ctx.mul(&ctx.a(0), &ctx.p(3, 1)) - &rhs;
        nu = ctx.multiple_of_a0(&r_nu).map(|half| &half * &two);
        push(
            "a0-times-p31",
            nu.is_some(),
            if nu.is_some() {
                String::new()
            } else {
                describe(alg, &r_nu)
            },
        );

        let r_rho = p20_p21_residual(&ctx, &lambdas, mu, true);
        rho = ctx.multiple_of_a0(&r_rho);
        push(
            "p20-times-p21",
            rho.is_some(),
            if rho.is_some() {
                String::new()
            } else {
                describe(alg, &r_rho)
            },
        );

        let three_quarter_eta = ctx.div(&(&ctx.int(3) * &eta), &ctx.int(4));
        if lambda1 == &three_quarter_eta {
            let holds = ctx.p(2, 1) == ctx.p(2, 0) || mu.is_zero();
            push("critical-lambda-dichotomy", holds, format!("mu = {mu}"));
        } else {
            push("critical-lambda-dichotomy", true, "not applicable".into());
        }
    }

    let pair = two_generated_closure(alg, &ctx.a(0), &ctx.a(1), &eta)?;
    push(
        "two-axis-span",
        pair.spanned_by_axes_and_p,
        format!("dim {} (ambient {})", pair.dim, n),
    );
    push(
        "p-squared",
        pair.p_squared_is_multiple,
        match &pair.pi {
            Some(pi) => format!("pi = {pi}"),
            None if pair.p.is_zero() => "p = 0".into(),
            None => "p^2 is not a multiple of p".into(),
        },
    );

    Ok(IdentityReport {
        lambdas,
        mu,
        nu,
        rho,
        pi: pair.pi,
        two_generated_dim: pair.dim,
        checks,
    })
}

/// `p_{2,0} p_{2,1}` minus its expansion, leaving `ρ a_0` when the identity
/// holds. With `include_mu` false the `p_1` coefficient omits the `μ` term.
fn p20_p21_residual(
    ctx: &Ctx<'_>,
    lambdas: &[FieldElement],
    mu: &FieldElement,
    include_mu: bool,
) -> Vector {
    let eta = &ctx.eta;
    let (l1, l2) = (&lambdas[0], &lambdas[1]);
    let (one, two) = (ctx.int(1), ctx.int(2));
    let eta2 = eta * eta;
    let e21 = &(&two * eta) - &one;
    let k4 = &e21 * &(&(&ctx.int(4) * l1) - &(&ctx.int(3) * eta));

    let c_p3 = ctx.div(&k4, &ctx.int(4));
    let inner_p20 = &(&(&two * &e21) * l1) - &(&(&ctx.int(4) * &eta2) - eta);
    let c_p20 = mu + &ctx.div(&(&k4 * &inner_p20), &(&two * &eta2));
    let mut bracket = &(&(&(&ctx.int(4) * &e21) * l1) - &(eta * l2)) - &(&ctx.int(5) * &eta2);
    bracket = &bracket + &(&ctx.int(3) * eta);
    if include_mu {
        bracket = &bracket + mu;
    }
    let c_p1 = ctx.div(&(&k4 * &bracket), &eta2);
    let c_a2 = ctx.div(
        &(&(&e21 * &k4) * &(&(&ctx.int(3) * l1) - &(&two * eta))),
        &(&two * eta),
    );
    let inner_a1 = &(&(&two * mu) - &(eta * l2)) + &(&two * &eta2);
    let c_a1 = ctx.div(&(&k4 * &inner_a1), &(&two * eta));

    let p3 = &(&ctx.p(3, 0).scale(&two) + &ctx.p(3, 1)) + &ctx.p(3, -1);
    let mut rhs = p3.scale(&c_p3);
    rhs.add_scaled(&c_p20, &ctx.p(2, 0));
    rhs.add_scaled(&c_p1, &ctx.p(1, 0));
    rhs.add_scaled(&c_a2, &ctx.pair(2));
    rhs.add_scaled(&c_a1, &ctx.pair(1));
    &ctx.mul(&ctx.p(2, 0), &ctx.p(2, 1)) - &rhs
}

/// Residual of the `p_{2,0} p_{2,1}` expansion with the `p_1` coefficient
/// taken without its `μ` term, modulo `a_0`. Kept to document why the
/// corrected coefficient is used.
pub fn uncorrected_p20_p21_residual(dd: &DihedralData) -> Result<Option<Vector>, AxialError> {
    let alg = dd.algebra().as_ref();
    let ctx = Ctx {
        dd,
        alg,
        eta: dd.eta().clone(),
    };
    let dec = split_eigenspace(alg, &ctx.a(0), &ctx.eta, &dd.tau(0)?)?;
    let lambdas: Vec<FieldElement> = (1..=3)
        .map(|i| lambda_coefficient(&dec, &ctx.a(i)))
        .collect::<Result<_, _>>()?;
    let k1 = ctx.div(
        &(&(&(&ctx.int(2) * &ctx.eta) - &ctx.int(1))
            * &(&(&ctx.int(4) * &lambdas[0]) - &(&ctx.int(3) * &ctx.eta))),
        &(&ctx.int(2) * &ctx.eta),
    );
    let r_mu = &ctx.mul(&ctx.a(0), &ctx.p(2, 1)) - &ctx.q1().scale(&k1);
    let Some(mu) = ctx.multiple_of_a0(&r_mu) else {
        return Ok(None);
    };
    let r = p20_p21_residual(&ctx, &lambdas, &mu, false);
    let line = Subspace::span(alg.field(), alg.dim(), &[ctx.a(0)])?;
    Ok(Some(line.reduce(&r)?))
}
