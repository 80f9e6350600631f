//! The weight invariant `χ_Γ` of constructible subsets of the line, for a
//! subgroup `Γ ⊆ ℚ` that need not be divisible.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::constructible::ConstructibleSet;
use crate::error::{Error, Result};
use crate::exactq::{fmt_rat, parse_rat, ratio, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupQ {
    /// All of ℚ.
    Divisible,
    /// `cℤ` for a positive rational `c`.
    Cyclic(Rat),
}

impl SubgroupQ {
    pub fn cyclic(c: Rat) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::domain("a cyclic subgroup needs a positive generator"));
        }
        Ok(SubgroupQ::Cyclic(c))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            SubgroupQ::Divisible => true,
            SubgroupQ::Cyclic(c) => (x / c).is_integer(),
        }
    }
}

impl FromStr for SubgroupQ {
    type Err = Error;

    /// `div` (or `q`) for ℚ, otherwise a positive rational generator.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "div" | "Q" => Ok(SubgroupQ::Divisible),
            t => SubgroupQ::cyclic(
                parse_rat(t).ok_or_else(|| Error::Usage(format!("bad subgroup `{t}`: expected `div` or a rational")))?,
            ),
        }
    }
}

impl fmt::Display for SubgroupQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupQ::Divisible => write!(f, "Q"),
            SubgroupQ::Cyclic(c) => write!(f, "{}Z", fmt_rat(c)),
        }
    }
}

/// An open interval; `None` stands for an infinite end.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
}

impl Interval {
    fn contains(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|l| l < x) && self.hi.as_ref().is_none_or(|h| x < h)
    }

    /// Contains `(x - ε, x)` for small `ε`.
    fn covers_left_of(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|l| l < x) && self.hi.as_ref().is_none_or(|h| x <= h)
    }

    fn covers_right_of(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= x) && self.hi.as_ref().is_none_or(|h| x < h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.as_ref().map_or("-inf".to_string(), fmt_rat);
        let hi = self.hi.as_ref().map_or("+inf".to_string(), fmt_rat);
        write!(f, "({lo}, {hi})")
    }
}

/// A subset of ℝ as its interior components plus the remaining points.
/// Both lists are sorted, so equal sets have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OneDimCanonical {
    pub points: Vec<Rat>,
    pub intervals: Vec<Interval>,
}

impl OneDimCanonical {
    pub fn contains(&self, x: &Rat) -> bool {
        self.points.binary_search(x).is_ok() || self.intervals.iter().any(|i| i.contains(x))
    }

    fn left_inside(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|i| i.covers_left_of(x))
    }

    fn right_inside(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|i| i.covers_right_of(x))
    }

    /// Points where the weight can be nonzero.
    pub fn candidates(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self.points.clone();
        for i in &self.intervals {
            out.extend(i.lo.iter().cloned());
            out.extend(i.hi.iter().cloned());
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for OneDimCanonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // None sorts first, and a point precedes an interval starting at it
        let mut parts: Vec<(Option<&Rat>, u8, String)> = Vec::new();
        for p in &self.points {
            parts.push((Some(p), 0, format!("{{{}}}", fmt_rat(p))));
        }
        for i in &self.intervals {
            parts.push((i.lo.as_ref(), 1, i.to_string()));
        }
        parts.sort();
        if parts.is_empty() {
            return write!(f, "empty");
        }
        let strs: Vec<&str> = parts.iter().map(|p| p.2.as_str()).collect();
        write!(f, "{}", strs.join(" u "))
    }
}

pub fn canonicalize(set: &ConstructibleSet) -> Result<OneDimCanonical> {
    if set.dim() != 1 {
        return Err(Error::Usage(format!(
            "the weight invariant is defined on the line, got dimension {}",
            set.dim()
        )));
    }
    let mut breaks: Vec<Rat> = set
        .expr()
        .atoms()
        .iter()
        .map(|a| &a.b / Rat::from_integer(a.a[0].clone()))
        .collect();
    breaks.sort();
    breaks.dedup();
    let inside = |x: &Rat| set.expr().eval(std::slice::from_ref(x));
    let one = Rat::from_integer(1.into());
    let half = ratio(1, 2);

    // gaps[i] is the open region between breaks[i-1] and breaks[i]
    let k = breaks.len();
    let gaps: Vec<bool> = (0..=k)
        .map(|i| {
            let probe = match (i.checked_sub(1).map(|j| &breaks[j]), breaks.get(i)) {
                (None, None) => Rat::zero(),
                (None, Some(h)) => h - &one,
                (Some(l), None) => l + &one,
                (Some(l), Some(h)) => (l + h) * &half,
            };
            inside(&probe)
        })
        .collect();
    let at: Vec<bool> = breaks.iter().map(inside).collect();

    let mut out = OneDimCanonical::default();
    let mut open_from: Option<Option<Rat>> = if gaps[0] { Some(None) } else { None };
    for i in 0..k {
        let interior = at[i] && gaps[i] && gaps[i + 1];
        if interior {
            continue;
        }
        if let Some(lo) = open_from.take() {
            out.intervals.push(Interval {
                lo,
                hi: Some(breaks[i].clone()),
            });
        }
        if at[i] {
            out.points.push(breaks[i].clone());
        }
        if gaps[i + 1] {
            open_from = Some(Some(breaks[i].clone()));
        }
    }
    if let Some(lo) = open_from {
        out.intervals.push(Interval { lo, hi: None });
    }
    Ok(out)
}

/// `2·[x ∈ C] - [left] - [right]` when `x ∈ C` and `-[left] - [right]`
/// otherwise, where left/right say whether the punctured one-sided
/// neighbourhoods of `x` lie in `C`. This matches the five-case definition.
pub fn weight(c: &OneDimCanonical, x: &Rat) -> i64 {
    let l = c.left_inside(x) as i64;
    let r = c.right_inside(x) as i64;
    if c.contains(x) {
        2 - l - r
    } else {
        -l - r
    }
}

/// Away from the candidate points both one-sided neighbourhoods of `x`
/// agree with `x` itself, so the weight there is 0 and the sum is finite.
pub fn chi_gamma_canonical(c: &OneDimCanonical, gamma: &SubgroupQ) -> i64 {
    c.candidates()
        .iter()
        .filter(|x| gamma.contains(x))
        .map(|x| weight(c, x))
        .sum()
}

pub fn chi_gamma(set: &ConstructibleSet, gamma: &SubgroupQ) -> Result<i64> {
    Ok(chi_gamma_canonical(&canonicalize(set)?, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructible::parse_constructible;
    use crate::exactq::rat;

    fn canon(text: &str) -> OneDimCanonical {
        canonicalize(&parse_constructible(text).unwrap()).unwrap()
    }

    fn z() -> SubgroupQ {
        SubgroupQ::cyclic(rat(1)).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let c = canon("dim 1; x1 >= 0 & x1 < 1");
        assert_eq!(c.points, vec![rat(0)]);
        assert_eq!(c.intervals, vec![Interval { lo: Some(rat(0)), hi: Some(rat(1)) }]);
        assert_eq!(c.to_string(), "{0} u (0, 1)");
        assert_eq!(canon("dim 1; x1 >= 0 & x1 <= 0").to_string(), "{0}");
        assert_eq!(canon("dim 1; !(x1 >= 0)").to_string(), "(-inf, 0)");
        assert_eq!(canon("dim 1; x1 >= 0 | x1 <= 0").to_string(), "(-inf, +inf)");
        assert_eq!(canon("dim 1; x1 > 0 & x1 < 0").to_string(), "empty");
        assert_eq!(canon("dim 1; (x1 >= 0 & x1 <= 1) | (x1 >= 1 & x1 < 2)"), canon("dim 1; x1 >= 0 & x1 < 2"));
        assert_eq!(canon("dim 1; x1 > 1 | x1 < 1").to_string(), "(-inf, 1) u (1, +inf)");
        assert!(canonicalize(&parse_constructible("dim 2; x1 >= 0").unwrap()).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&canon("dim 1; x1 = 0"), &rat(0)), 2);
        assert_eq!(weight(&canon("dim 1; x1 >= 0"), &rat(0)), 1);
        assert_eq!(weight(&canon("dim 1; !(x1 = 0)"), &rat(0)), -2);
        assert_eq!(weight(&canon("dim 1; x1 > 0"), &rat(0)), -1);
        assert_eq!(weight(&canon("dim 1; x1 > 0"), &rat(5)), 0);
        assert_eq!(weight(&canon("dim 1; x1 > 0"), &rat(-5)), 0);
    }

    #[test]
    fn chi_gamma_examples() {
        assert_eq!(chi_gamma_canonical(&canon("dim 1; 2x1 = 1"), &z()), 0);
        assert_eq!(chi_gamma_canonical(&canon("dim 1; x1 = 0"), &z()), 2);
        assert_eq!(chi_gamma_canonical(&canon("dim 1; x1 > 0 & x1 < 1"), &z()), -2);
        assert_eq!(chi_gamma_canonical(&canon("dim 1; x1 >= 0"), &SubgroupQ::Divisible), 1);
    }

    #[test]
    fn subgroup_parsing() {
        assert_eq!("div".parse::<SubgroupQ>().unwrap(), SubgroupQ::Divisible);
        assert!("1/2".parse::<SubgroupQ>().unwrap().contains(&rat(3).recip().recip()));
        assert!(!"2".parse::<SubgroupQ>().unwrap().contains(&rat(1)));
        assert!("-1".parse::<SubgroupQ>().is_err());
        assert!("0".parse::<SubgroupQ>().is_err());
    }
}
