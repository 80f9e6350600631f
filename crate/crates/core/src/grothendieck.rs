//! The graded ring `ℤ[u,v]/(uv)` standing in for the Grothendieck ring of
//! constructible sets graded by ambient dimension, and its ungraded
//! quotient `ℤ × ℤ`.
//!
//! The class of `C ⊆ ℝⁿ` is `chi(C)·uⁿ + chi_b(C)·vⁿ`; `v` is the class
//! of the closed half-line and `u` minus the class of the open one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::constructible::ConstructibleSet;
use crate::error::{Error, Limits, Result};
use crate::euler::{chi_polyhedron_closed_form, euler_pair_with, sign_power};
use crate::polyhedron::HPolyhedron;

/// An element of `ℤ[u,v]/(uv)`: a constant plus `aₙuⁿ + bₙvⁿ` for `n ≥ 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedClass {
    c0: i64,
    terms: BTreeMap<u32, (i64, i64)>,
}

impl GradedClass {
    pub fn zero() -> Self {
        GradedClass::default()
    }

    pub fn one() -> Self {
        GradedClass::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        GradedClass {
            c0: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn u() -> Self {
        GradedClass::monomial(1, 1, 0)
    }

    pub fn v() -> Self {
        GradedClass::monomial(1, 0, 1)
    }

    /// `σ = u + v`, the class of a point on the line.
    pub fn sigma() -> Self {
        GradedClass::monomial(1, 1, 1)
    }

    /// `a·uⁿ + b·vⁿ`. Degree-0 classes carry a single integer, `a`.
    pub fn monomial(degree: u32, a: i64, b: i64) -> Self {
        let mut x = GradedClass::zero();
        if degree == 0 {
            x.c0 = a;
        } else {
            x.put(degree, a, b);
        }
        x
    }

    fn put(&mut self, degree: u32, a: i64, b: i64) {
        if a == 0 && b == 0 {
            self.terms.remove(&degree);
        } else {
            self.terms.insert(degree, (a, b));
        }
    }

    pub fn constant_term(&self) -> i64 {
        self.c0
    }

    /// `(aₙ, bₙ)`, the coefficients of `uⁿ` and `vⁿ` for `n ≥ 1`.
    pub fn coefficients(&self, degree: u32) -> (i64, i64) {
        if degree == 0 {
            return (self.c0, self.c0);
        }
        self.terms.get(&degree).copied().unwrap_or((0, 0))
    }

    pub fn degrees(&self) -> impl Iterator<Item = (u32, i64, i64)> + '_ {
        self.terms.iter().map(|(&n, &(a, b))| (n, a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.terms.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(GradedClass::one(), |acc, _| &acc * self)
    }
}

impl Add for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        let mut out = self.clone();
        out.c0 += rhs.c0;
        for (&n, &(a, b)) in &rhs.terms {
            let (x, y) = out.coefficients(n);
            out.put(n, x + a, y + b);
        }
        out
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        GradedClass {
            c0: -self.c0,
            terms: self.terms.iter().map(|(&n, &(a, b))| (n, (-a, -b))).collect(),
        }
    }
}

impl Sub for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self + &(-rhs)
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &GradedClass) -> GradedClass {
        let mut out = GradedClass::constant(self.c0 * rhs.c0);
        let mut bump = |n: u32, a: i64, b: i64| {
            let (x, y) = out.coefficients(n);
            out.put(n, x + a, y + b);
        };
        for (&n, &(a, b)) in &rhs.terms {
            bump(n, self.c0 * a, self.c0 * b);
        }
        for (&n, &(a, b)) in &self.terms {
            bump(n, rhs.c0 * a, rhs.c0 * b);
        }
        // uⁱ·uʲ = u^{i+j}, vⁱ·vʲ = v^{i+j}, and mixed products vanish
        for (&m, &(a1, b1)) in &self.terms {
            for (&n, &(a2, b2)) in &rhs.terms {
                bump(m + n, a1 * a2, b1 * b2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for GradedClass {
            type Output = GradedClass;
            fn $f(self, rhs: GradedClass) -> GradedClass {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = Vec::new();
        if self.c0 != 0 {
            parts.push((self.c0, String::new()));
        }
        for (&n, &(a, b)) in &self.terms {
            let pow = |s: &str| if n == 1 { s.to_string() } else { format!("{s}^{n}") };
            if a != 0 {
                parts.push((a, pow("u")));
            }
            if b != 0 {
                parts.push((b, pow("v")));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, mono)) in parts.iter().enumerate() {
            let mag = c.abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono.clone(),
                (false, _) => format!("{mag}*{mono}"),
            };
            match (i, *c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// An element of `ℤ × ℤ`, the quotient by `σ - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UngradedClass {
    pub chi: i64,
    pub chi_b: i64,
}

impl Add for UngradedClass {
    type Output = UngradedClass;
    fn add(self, rhs: UngradedClass) -> UngradedClass {
        UngradedClass {
            chi: self.chi + rhs.chi,
            chi_b: self.chi_b + rhs.chi_b,
        }
    }
}

impl Mul for UngradedClass {
    type Output = UngradedClass;
    fn mul(self, rhs: UngradedClass) -> UngradedClass {
        UngradedClass {
            chi: self.chi * rhs.chi,
            chi_b: self.chi_b * rhs.chi_b,
        }
    }
}

impl fmt::Display for UngradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.chi, self.chi_b)
    }
}

/// Evaluates at `(u, v) = (1, 0)` and `(0, 1)`.
pub fn ungraded(x: &GradedClass) -> UngradedClass {
    let (mut chi, mut chi_b) = (x.c0, x.c0);
    for (_, a, b) in x.degrees() {
        chi += a;
        chi_b += b;
    }
    UngradedClass { chi, chi_b }
}

pub fn class_of(set: &ConstructibleSet) -> Result<GradedClass> {
    class_of_with(set, &Limits::default())
}

pub fn class_of_with(set: &ConstructibleSet, limits: &Limits) -> Result<GradedClass> {
    let e = euler_pair_with(set, limits)?;
    let n = set.dim() as u32;
    Ok(if n == 0 {
        GradedClass::constant(e.chi)
    } else {
        GradedClass::monomial(n, e.chi, e.chi_b)
    })
}

/// Class of a rational cone with apex at the origin: `vⁿ + (-1)^d uⁿ` for a
/// `d`-dimensional linear subspace, `vⁿ` for any other cone.
pub fn class_of_cone(cone: &HPolyhedron) -> Result<GradedClass> {
    if cone.rows().iter().any(|r| !num_traits::Zero::is_zero(&r.b)) {
        return Err(Error::domain("a cone must have every right-hand side equal to 0"));
    }
    let n = cone.ambient_dim() as u32;
    if n == 0 {
        return Ok(GradedClass::one());
    }
    let rec = cone.recession()?;
    let d = cone.dimension()?;
    Ok(if d == rec.ell {
        GradedClass::monomial(n, sign_power(d), 1)
    } else {
        GradedClass::monomial(n, 0, 1)
    })
}

/// Closed-form class of a polyhedron from its recession data.
pub fn class_of_polyhedron_closed_form(p: &HPolyhedron) -> Result<GradedClass> {
    let e = chi_polyhedron_closed_form(p)?;
    let n = p.ambient_dim() as u32;
    Ok(if n == 0 {
        GradedClass::constant(e.chi)
    } else {
        GradedClass::monomial(n, e.chi, e.chi_b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructible::parse_constructible;
    use crate::polyhedron::parse_polyhedron;

    fn class(text: &str) -> GradedClass {
        class_of(&parse_constructible(text).unwrap()).unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(class("dim 1; x1 >= 0"), GradedClass::v());
        assert_eq!(class("dim 1; x1 > 0"), -&GradedClass::u());
        assert_eq!(class("dim 1; x1 = 0"), GradedClass::sigma());
    }

    #[test]
    fn product_of_half_lines_vanishes() {
        let x = &class("dim 1; x1 >= 0") * &class("dim 1; x1 > 0");
        assert!(x.is_zero());
        assert!((&GradedClass::u() * &GradedClass::v()).is_zero());
    }

    #[test]
    fn sigma_shifts_degree() {
        let c = parse_constructible("dim 1; x1 > 0 & x1 < 3").unwrap();
        let point = parse_constructible("dim 1; x1 = 0").unwrap();
        let lhs = &GradedClass::sigma() * &class_of(&c).unwrap();
        assert_eq!(lhs, class_of(&c.product(&point)).unwrap());
        let x = class("dim 2; x1 >= 0 | x2 > 1");
        assert_eq!(&GradedClass::one() * &x, x);
    }

    #[test]
    fn cones() {
        let r2 = HPolyhedron::whole_space(2);
        assert_eq!(class_of_cone(&r2).unwrap().to_string(), "u^2 + v^2");
        let axis = parse_polyhedron("0 1 >= 0\n0 -1 >= 0", None).unwrap();
        assert_eq!(class_of_cone(&axis).unwrap().to_string(), "-u^2 + v^2");
        let quadrant = parse_polyhedron("1 0 >= 0\n0 1 >= 0", None).unwrap();
        assert_eq!(class_of_cone(&quadrant).unwrap().to_string(), "v^2");
        let shifted = parse_polyhedron("1 0 >= 1", None).unwrap();
        assert!(class_of_cone(&shifted).is_err());
        for p in [r2, axis, quadrant] {
            let c = ConstructibleSet::from_polyhedron(&p);
            assert_eq!(class_of_cone(&p).unwrap(), class_of(&c).unwrap());
        }
    }

    #[test]
    fn polyhedron_closed_form() {
        let sq = parse_polyhedron("1 0 >= 0\n-1 0 >= -1\n0 1 >= 0\n0 -1 >= -1", None).unwrap();
        assert_eq!(class_of_polyhedron_closed_form(&sq).unwrap().to_string(), "u^2 + v^2");
        let r3 = HPolyhedron::whole_space(3);
        assert_eq!(class_of_polyhedron_closed_form(&r3).unwrap().to_string(), "-u^3 + v^3");
        let ray = parse_polyhedron("1 >= 0", None).unwrap();
        assert_eq!(class_of_polyhedron_closed_form(&ray).unwrap(), GradedClass::v());
    }

    #[test]
    fn ungraded_evaluation() {
        assert_eq!(ungraded(&class("dim 2; x1 >= 0 & x1 <= 1 & x2 >= 0 & x2 <= 1")), UngradedClass { chi: 1, chi_b: 1 });
        assert_eq!(ungraded(&GradedClass::sigma()), UngradedClass { chi: 1, chi_b: 1 });
        assert_eq!(ungraded(&GradedClass::v()), UngradedClass { chi: 0, chi_b: 1 });
    }

    #[test]
    fn rendering() {
        assert_eq!(GradedClass::zero().to_string(), "0");
        let x = &(&GradedClass::constant(3) - &GradedClass::u()) + &GradedClass::monomial(2, 2, -5);
        assert_eq!(x.to_string(), "3 - u + 2*u^2 - 5*v^2");
    }

    #[test]
    fn half_intervals_of_different_length_agree() {
        assert_eq!(class("dim 1; x1 >= 0 & x1 <= 1"), class("dim 1; x1 >= 0 & x1 <= 2"));
    }
}
