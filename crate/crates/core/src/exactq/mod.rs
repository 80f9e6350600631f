//! Exact rational scalars, vectors and the linear algebra built on them.
//!
//! Scalars are `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. Nothing in this crate ever
//! rounds.

mod linalg;
mod lp;

pub use linalg::{gauss_solve, nullspace, rank, row_reduce, QMat, Solution};
pub use lp::{lp_optimize, LinearProgram, LpOutcome, Sense};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type QVec = Vec<Rat>;
pub type IVec = Vec<BigInt>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| rat(x)).collect()
}

pub fn ivec(xs: &[i64]) -> IVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_qvec(a: &[BigInt]) -> QVec {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Rat], x: &[Rat]) -> Rat {
    a.iter().zip(x).fold(Rat::zero(), |acc, (p, q)| acc + p * q)
}

/// Integer row against a rational point.
pub fn idot(a: &[BigInt], x: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (p, q) in a.iter().zip(x) {
        if !p.is_zero() {
            acc += q * Rat::from_integer(p.clone());
        }
    }
    acc
}

/// Parses `p`, `-p` or `p/q` with `q > 0`. Decimal notation is rejected.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return None;
    }
    let n: BigInt = num.trim_start_matches('+').parse().ok()?;
    match den {
        None => Some(Rat::from_integer(n)),
        Some(d) => {
            if !valid_int(d, false) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
    }
}

/// Rescales `a·x ≥ b` by a positive rational so that `a` becomes a
/// primitive integer vector.
pub fn primitive_normalize(a: &[Rat], b: &Rat) -> Result<(IVec, Rat)> {
    if a.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateConstraint);
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = a
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let out: IVec = ints.iter().map(|x| x / &gcd).collect();
    let scale = Rat::new(lcm, gcd);
    Ok((out, b * scale))
}

/// Primitive normalization for a vector that is already integral.
pub fn primitive_int(a: &[BigInt], b: &Rat) -> Result<(IVec, Rat)> {
    let gcd = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return Err(Error::DegenerateConstraint);
    }
    let out = a.iter().map(|x| x / &gcd).collect();
    Ok((out, b / Rat::from_integer(gcd)))
}

pub fn fmt_rat(x: &Rat) -> String {
    x.to_string()
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        let (a, b) = primitive_normalize(&[ratio(2, 3), ratio(4, 3)], &rat(2)).unwrap();
        assert_eq!((a, b), (ivec(&[1, 2]), rat(3)));
        let (a, b) = primitive_normalize(&qvec(&[-4, 6]), &rat(1)).unwrap();
        assert_eq!((a, b), (ivec(&[-2, 3]), ratio(1, 2)));
        let (a, b) = primitive_normalize(&qvec(&[1, 0]), &rat(0)).unwrap();
        assert_eq!((a, b), (ivec(&[1, 0]), rat(0)));
        assert_eq!(
            primitive_normalize(&qvec(&[0, 0]), &rat(1)),
            Err(Error::DegenerateConstraint)
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rat("5/2"), Some(ratio(5, 2)));
        assert_eq!(parse_rat("-7"), Some(rat(-7)));
        assert_eq!(parse_rat("4/6"), Some(ratio(2, 3)));
        assert_eq!(parse_rat("1.5"), None);
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("1/-2"), None);
        assert_eq!(parse_rat(""), None);
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(fmt_rat(&ratio(10, -4)), "-5/2");
        assert_eq!(fmt_rat(&ratio(6, 3)), "2");
    }
}
