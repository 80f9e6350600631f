//! Semi-algebraic sets given by valuation conditions on monomials.
//!
//! ```text
//! torus 2;
//! val(x1^2) > val(t^1 * x2) & val(x1) >= 0;
//! point;
//! ```
//!
//! With `v(t) = 1`, the condition `val(t^q x^α) ≥ val(t^r x^β)` on a point of
//! the torus depends only on its tropicalization `w`, where it reads
//! `(α - β)·w ≥ r - q`. Several condition statements are joined by `|`;
//! each `point;` adjoins one rational point outside the torus.

use std::fmt;

use num_traits::{One, Zero};

use crate::constructible::dsl::{boolean, compare, comparison_op, Affine, Cursor, Tok};
use crate::constructible::{ConstructibleSet, Expr};
use crate::error::{Error, Result};
use crate::exactq::Rat;

#[derive(Debug, Clone)]
pub struct SemialgDesc {
    pub n: usize,
    /// The tropical shadow of the part inside the torus.
    pub body: ConstructibleSet,
    pub extra_points: usize,
}

impl fmt::Display for SemialgDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)?;
        if self.extra_points > 0 {
            write!(f, " + {} point(s)", self.extra_points)?;
        }
        Ok(())
    }
}

pub fn parse_semialg(text: &str) -> Result<SemialgDesc> {
    let mut cur = Cursor::new(text)?;
    let n = cur.header("torus")?;
    let mut parts = Vec::new();
    let mut extra_points = 0;
    while !cur.at_end() {
        if cur.eat_ident("point") {
            extra_points += 1;
        } else {
            parts.push(boolean(&mut cur, &mut |c: &mut Cursor| valuation_atom(c, n))?);
        }
        if !cur.eat_semi() && !cur.at_end() {
            return Err(cur.error("expected `;`"));
        }
    }
    Ok(SemialgDesc {
        n,
        body: ConstructibleSet::new(n, Expr::or(parts))?,
        extra_points,
    })
}

fn valuation_atom(cur: &mut Cursor, n: usize) -> Result<Expr> {
    let lhs = valuation(cur, n)?;
    let op = comparison_op(cur)?;
    let rhs = valuation(cur, n)?;
    Ok(compare(&lhs, op, &rhs))
}

/// `val(monomial)` or a rational constant, as an affine form in `w`.
fn valuation(cur: &mut Cursor, n: usize) -> Result<Affine> {
    let mut out = Affine {
        coeffs: vec![Rat::zero(); n],
        constant: Rat::zero(),
    };
    if !cur.eat_ident("val") {
        out.constant = signed_number(cur)?;
        return Ok(out);
    }
    cur.expect_op("(")?;
    loop {
        match cur.next() {
            Some(Tok::Ident(w)) if w == "t" => out.constant += exponent(cur)?,
            Some(Tok::Var(k)) if (1..=n).contains(&k) => {
                let e = exponent(cur)?;
                if !e.is_integer() {
                    cur.back();
                    return Err(cur.error("exponents of coordinates must be integers"));
                }
                out.coeffs[k - 1] += e;
            }
            Some(Tok::Var(k)) => {
                cur.back();
                return Err(cur.error(format!("variable x{k} outside x1..x{n}")));
            }
            Some(Tok::Num(c)) if !c.is_zero() => {}
            Some(Tok::Num(_)) => {
                cur.back();
                return Err(cur.error("the valuation of 0 is not finite"));
            }
            _ => {
                cur.back();
                return Err(cur.error("expected `t`, a coordinate or a nonzero constant"));
            }
        }
        if cur.eat_op("*") {
            continue;
        }
        if cur.eat_op("+") || cur.eat_op("-") {
            return Err(Error::Unsupported(
                "only monomials may appear inside val(...): the parser covers the monomial-valuation fragment".into(),
            ));
        }
        cur.expect_op(")")?;
        return Ok(out);
    }
}

/// Optional `^e` with `e` a signed rational, possibly parenthesized.
fn exponent(cur: &mut Cursor) -> Result<Rat> {
    if !cur.eat_op("^") {
        return Ok(Rat::one());
    }
    if cur.eat_op("(") {
        let e = signed_number(cur)?;
        cur.expect_op(")")?;
        return Ok(e);
    }
    signed_number(cur)
}

fn signed_number(cur: &mut Cursor) -> Result<Rat> {
    let neg = cur.eat_op("-");
    match cur.next() {
        Some(Tok::Num(r)) => Ok(if neg { -r } else { r }),
        _ => {
            cur.back();
            Err(cur.error("expected a rational number"))
        }
    }
}
