use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense integer polynomial in one variable, lowest degree first, with no
/// trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

/// Polynomials in 𝕃, the class of the affine line.
pub type LPoly = IntPoly;

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        IntPoly::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPoly::constant(1), |acc, _| &acc * self)
    }

    pub fn scale(&self, k: i64) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by `x - 1`, returning the quotient when the remainder vanishes.
    pub fn div_x_minus_one(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        // synthetic division from the top coefficient down
        let n = self.coeffs.len();
        let mut q = vec![0; n - 1];
        let mut carry = 0;
        for k in (1..n).rev() {
            carry += self.coeffs[k];
            q[k - 1] = carry;
        }
        (carry + self.coeffs[0] == 0).then(|| IntPoly::new(q))
    }

    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let mag = c.abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{mag}*{mono}"),
            };
            match (out.is_empty(), c < 0) {
                (true, true) => out.push_str(&format!("-{body}")),
                (true, false) => out.push_str(&body),
                (false, true) => out.push_str(&format!(" - {body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("L"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(-1)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_rendering() {
        let l1 = &IntPoly::x() - &IntPoly::constant(1);
        assert_eq!(l1.pow(2).to_string(), "L^2 - 2*L + 1");
        assert_eq!(l1.render("tau"), "tau - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::new(vec![1, -1]).to_string(), "-L + 1");
        assert_eq!(l1.pow(3).eval(1), 0);
        assert_eq!(l1.pow(3).div_x_minus_one(), Some(l1.pow(2)));
        assert_eq!(IntPoly::x().div_x_minus_one(), None);
    }
}
