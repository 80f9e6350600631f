//! A computable model of the motivic volume on the subring generated by 𝕃
//! (the affine line) and τ (a point in degree one): the ring
//! `ℤ[𝕃,τ]/((𝕃-1)(τ-1))`, stored as pairs `(f(𝕃), g(τ))` with `f(1) = g(1)`.

mod poly;
mod semialg;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use poly::{IntPoly, LPoly};
pub use semialg::{parse_semialg, SemialgDesc};

use crate::constructible::ConstructibleSet;
use crate::error::{Error, Limits, Result};
use crate::grothendieck::class_of_with;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VFClass {
    f: LPoly,
    g: IntPoly,
}

impl VFClass {
    pub fn new(f: LPoly, g: IntPoly) -> Result<Self> {
        if f.eval(1) != g.eval(1) {
            return Err(Error::Invariant(format!(
                "incompatible pair: f(1) = {} but g(1) = {}",
                f.eval(1),
                g.eval(1)
            )));
        }
        Ok(VFClass { f, g })
    }

    pub fn zero() -> Self {
        VFClass::default()
    }

    pub fn constant(c: i64) -> Self {
        VFClass {
            f: IntPoly::constant(c),
            g: IntPoly::constant(c),
        }
    }

    pub fn one() -> Self {
        VFClass::constant(1)
    }

    /// 𝕃 ↦ (𝕃, 1).
    pub fn lefschetz() -> Self {
        VFClass {
            f: IntPoly::x(),
            g: IntPoly::constant(1),
        }
    }

    /// τ ↦ (1, τ).
    pub fn tau() -> Self {
        VFClass {
            f: IntPoly::constant(1),
            g: IntPoly::x(),
        }
    }

    /// The 𝕃-component.
    pub fn f(&self) -> &LPoly {
        &self.f
    }

    /// The τ-component.
    pub fn g(&self) -> &IntPoly {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn pow(&self, k: u32) -> Self {
        VFClass {
            f: self.f.pow(k),
            g: self.g.pow(k),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        VFClass {
            f: self.f.scale(k),
            g: self.g.scale(k),
        }
    }

    /// Writes a class with vanishing 𝕃-component as `(τ - 1)·h`.
    pub fn factor_tau_minus_one(&self) -> Option<VFClass> {
        if !self.f.is_zero() {
            return None;
        }
        let q = self.g.div_x_minus_one()?;
        Some(VFClass {
            f: IntPoly::constant(q.eval(1)),
            g: q,
        })
    }
}

impl Add for &VFClass {
    type Output = VFClass;
    fn add(self, rhs: &VFClass) -> VFClass {
        VFClass {
            f: &self.f + &rhs.f,
            g: &self.g + &rhs.g,
        }
    }
}

impl Neg for &VFClass {
    type Output = VFClass;
    fn neg(self) -> VFClass {
        self.scale(-1)
    }
}

impl Sub for &VFClass {
    type Output = VFClass;
    fn sub(self, rhs: &VFClass) -> VFClass {
        self + &(-rhs)
    }
}

impl Mul for &VFClass {
    type Output = VFClass;
    fn mul(self, rhs: &VFClass) -> VFClass {
        VFClass {
            f: &self.f * &rhs.f,
            g: &self.g * &rhs.g,
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for VFClass {
            type Output = VFClass;
            fn $f(self, rhs: VFClass) -> VFClass {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for VFClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f.render("L"), self.g.render("tau"))
    }
}

/// The class of `trop⁻¹(C) ⊆ (K*)ⁿ`: `v ↦ 𝕃 - 1` and `u ↦ 1 - τ` applied to
/// the graded class `χ(C)uⁿ + χ_b(C)vⁿ`.
pub fn theta_trop_class(set: &ConstructibleSet) -> Result<VFClass> {
    theta_trop_class_with(set, &Limits::default())
}

pub fn theta_trop_class_with(set: &ConstructibleSet, limits: &Limits) -> Result<VFClass> {
    let class = class_of_with(set, limits)?;
    let mut out = VFClass::constant(class.constant_term());
    let l_minus_one = &IntPoly::x() - &IntPoly::constant(1);
    let one_minus_tau = -&l_minus_one;
    for (n, a, b) in class.degrees() {
        out = &out
            + &VFClass {
                f: l_minus_one.pow(n).scale(b),
                g: one_minus_tau.pow(n).scale(a),
            };
    }
    Ok(out)
}

/// `θ(trop⁻¹(body)) + (number of adjoined points)`.
pub fn semialg_class(s: &SemialgDesc) -> Result<VFClass> {
    semialg_class_with(s, &Limits::default())
}

pub fn semialg_class_with(s: &SemialgDesc, limits: &Limits) -> Result<VFClass> {
    let body = theta_trop_class_with(&s.body, limits)?;
    let points = i64::try_from(s.extra_points).map_err(|_| Error::Resource("too many points".into()))?;
    Ok(&body + &VFClass::constant(points))
}

/// The motivic volume: forgets τ, keeping the 𝕃-component.
pub fn psi(x: &VFClass) -> LPoly {
    x.f.clone()
}

pub fn in_kernel_psi(x: &VFClass) -> bool {
    x.f.is_zero()
}

/// The closed unit ball `trop⁻¹(ℝ≥0) ⊔ {0}` in one variable.
pub fn closed_ball() -> SemialgDesc {
    parse_semialg("torus 1; val(x1) >= 0; point;").expect("fixed text")
}

/// The open unit ball `trop⁻¹(ℝ>0) ⊔ {0}` in one variable.
pub fn open_ball() -> SemialgDesc {
    parse_semialg("torus 1; val(x1) > 0; point;").expect("fixed text")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructible::parse_constructible;

    fn pair(f: &[i64], g: &[i64]) -> VFClass {
        VFClass::new(IntPoly::new(f.to_vec()), IntPoly::new(g.to_vec())).unwrap()
    }

    fn theta(text: &str) -> VFClass {
        theta_trop_class(&parse_constructible(text).unwrap()).unwrap()
    }

    #[test]
    fn ring_relations() {
        let (l, t, one) = (VFClass::lefschetz(), VFClass::tau(), VFClass::one());
        assert_eq!(&l * &t, pair(&[0, 1], &[0, 1]));
        assert_eq!(&l * &t, &(&l + &t) - &one);
        assert!((&(&l - &one) * &(&t - &one)).is_zero());
        assert_eq!(&one * &l, l);
        assert!(VFClass::new(IntPoly::x(), IntPoly::zero()).is_err());
    }

    #[test]
    fn tropical_preimages() {
        assert_eq!(theta("dim 1; x1 = 0"), pair(&[-1, 1], &[1, -1]));
        assert_eq!(theta("dim 1; x1 >= 0"), pair(&[-1, 1], &[]));
        assert_eq!(theta("dim 1; x1 > 0"), pair(&[], &[-1, 1]));
        let sphere = theta("dim 2; x1 = 0 & x2 = 0");
        assert_eq!(sphere, theta("dim 1; x1 = 0").pow(2));
    }

    #[test]
    fn balls_and_kernel() {
        let closed = semialg_class(&closed_ball()).unwrap();
        let open = semialg_class(&open_ball()).unwrap();
        assert_eq!(closed, pair(&[0, 1], &[1]));
        assert_eq!(open, VFClass::tau());
        assert_eq!(psi(&open), IntPoly::constant(1));
        let k_open = &open - &VFClass::one();
        let k_closed = &closed - &VFClass::one();
        assert!(in_kernel_psi(&k_open));
        assert!(!in_kernel_psi(&k_closed));
        assert_eq!(psi(&k_closed).to_string(), "L - 1");
        let h = k_open.factor_tau_minus_one().unwrap();
        assert_eq!(&(&VFClass::tau() - &VFClass::one()) * &h, k_open);
    }

    #[test]
    fn empty_set() {
        let s = parse_semialg("torus 2; false").unwrap();
        assert!(semialg_class(&s).unwrap().is_zero());
    }
}
