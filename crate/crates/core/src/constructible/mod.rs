//! Boolean combinations of rational half-spaces and integer combinations of
//! polyhedron indicator functions.

mod cells;
pub(crate) mod dsl;

pub use cells::{cell_complex, cell_complex_with, Cell, CellComplex, Hyperplane, Sign};
pub use dsl::parse_constructible;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Limits, Result};
use crate::exactq::{idot, primitive_int, IVec, Rat};
use crate::polyhedron::{HPolyhedron, Row};

/// `a·x ≥ b`, or `a·x > b` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub a: IVec,
    pub b: Rat,
    pub strict: bool,
}

impl Atom {
    pub fn new(a: IVec, b: Rat, strict: bool) -> Result<Atom> {
        let (a, b) = primitive_int(&a, &b)?;
        Ok(Atom { a, b, strict })
    }

    pub fn closed(row: &Row) -> Atom {
        Atom {
            a: row.a.clone(),
            b: row.b.clone(),
            strict: false,
        }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        let v = idot(&self.a, x);
        if self.strict {
            v > self.b
        } else {
            v >= self.b
        }
    }

    pub fn hyperplane(&self) -> Hyperplane {
        Hyperplane::new(&self.a, &self.b).expect("atoms are nondegenerate")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    True,
    False,
    Atom(Atom),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    pub fn and(mut parts: Vec<Expr>) -> Expr {
        match parts.len() {
            0 => Expr::True,
            1 => parts.pop().expect("one part"),
            _ => Expr::And(parts),
        }
    }

    pub fn or(mut parts: Vec<Expr>) -> Expr {
        match parts.len() {
            0 => Expr::False,
            1 => parts.pop().expect("one part"),
            _ => Expr::Or(parts),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn eval(&self, x: &[Rat]) -> bool {
        match self {
            Expr::True => true,
            Expr::False => false,
            Expr::Atom(a) => a.holds(x),
            Expr::Not(e) => !e.eval(x),
            Expr::And(es) => es.iter().all(|e| e.eval(x)),
            Expr::Or(es) => es.iter().any(|e| e.eval(x)),
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Expr::True | Expr::False => {}
            Expr::Atom(a) => out.push(a),
            Expr::Not(e) => e.collect_atoms(out),
            Expr::And(es) | Expr::Or(es) => es.iter().for_each(|e| e.collect_atoms(out)),
        }
    }

    fn map_atoms(&self, f: &impl Fn(&Atom) -> Expr) -> Expr {
        match self {
            Expr::True => Expr::True,
            Expr::False => Expr::False,
            Expr::Atom(a) => f(a),
            Expr::Not(e) => Expr::not(e.map_atoms(f)),
            Expr::And(es) => Expr::And(es.iter().map(|e| e.map_atoms(f)).collect()),
            Expr::Or(es) => Expr::Or(es.iter().map(|e| e.map_atoms(f)).collect()),
        }
    }
}

/// A subset of ℝⁿ given by a Boolean expression over half-spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstructibleSet {
    dim: usize,
    expr: Expr,
}

impl ConstructibleSet {
    pub fn new(dim: usize, expr: Expr) -> Result<Self> {
        for a in expr.atoms() {
            Error::check_dim(dim, a.a.len())?;
        }
        Ok(ConstructibleSet { dim, expr })
    }

    pub fn empty(dim: usize) -> Self {
        ConstructibleSet {
            dim,
            expr: Expr::False,
        }
    }

    pub fn whole_space(dim: usize) -> Self {
        ConstructibleSet {
            dim,
            expr: Expr::True,
        }
    }

    pub fn from_polyhedron(p: &HPolyhedron) -> Self {
        let parts = p.rows().iter().map(|r| Expr::Atom(Atom::closed(r))).collect();
        ConstructibleSet {
            dim: p.ambient_dim(),
            expr: Expr::and(parts),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        Error::check_dim(self.dim, x.len())?;
        Ok(self.expr.eval(x))
    }

    /// The distinct hyperplanes bounding the atoms.
    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        let set: BTreeSet<Hyperplane> = self.expr.atoms().into_iter().map(Atom::hyperplane).collect();
        set.into_iter().collect()
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim, other.dim)?;
        Ok(ConstructibleSet {
            dim: self.dim,
            expr: Expr::and(vec![self.expr.clone(), other.expr.clone()]),
        })
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim, other.dim)?;
        Ok(ConstructibleSet {
            dim: self.dim,
            expr: Expr::or(vec![self.expr.clone(), other.expr.clone()]),
        })
    }

    pub fn complement(&self) -> Self {
        ConstructibleSet {
            dim: self.dim,
            expr: Expr::not(self.expr.clone()),
        }
    }

    pub fn diff(&self, other: &Self) -> Result<Self> {
        self.and(&other.complement())
    }

    /// `self × other` in ℝ^{m+n}.
    pub fn product(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        let pad = |a: &Atom, before: usize, after: usize| Atom {
            a: std::iter::repeat(BigInt::from(0))
                .take(before)
                .chain(a.a.iter().cloned())
                .chain(std::iter::repeat(BigInt::from(0)).take(after))
                .collect(),
            b: a.b.clone(),
            strict: a.strict,
        };
        let left = self.expr.map_atoms(&|a| Expr::Atom(pad(a, 0, n)));
        let right = other.expr.map_atoms(&|a| Expr::Atom(pad(a, m, 0)));
        ConstructibleSet {
            dim: m + n,
            expr: Expr::and(vec![left, right]),
        }
    }

    /// `self + t`.
    pub fn translate(&self, t: &[Rat]) -> Result<Self> {
        Error::check_dim(self.dim, t.len())?;
        let expr = self.expr.map_atoms(&|a| {
            Expr::Atom(Atom {
                a: a.a.clone(),
                b: &a.b + idot(&a.a, t),
                strict: a.strict,
            })
        });
        Ok(ConstructibleSet { dim: self.dim, expr })
    }

    /// The set as a polyhedron when its expression is a conjunction of
    /// closed atoms.
    pub fn as_polyhedron(&self) -> Option<HPolyhedron> {
        fn collect(e: &Expr, rows: &mut Vec<Row>) -> bool {
            match e {
                Expr::True => true,
                Expr::Atom(a) if !a.strict => {
                    rows.push(Row {
                        a: a.a.clone(),
                        b: a.b.clone(),
                    });
                    true
                }
                Expr::And(es) => es.iter().all(|e| collect(e, rows)),
                _ => false,
            }
        }
        let mut rows = Vec::new();
        if !collect(&self.expr, &mut rows) {
            return None;
        }
        HPolyhedron::new(self.dim, rows).ok()
    }

    /// `{x : Mx ∈ self}` for an integer matrix `M` given by rows.
    pub fn pull_back(&self, m: &[IVec]) -> Result<Self> {
        Error::check_dim(self.dim, m.len())?;
        for row in m {
            Error::check_dim(self.dim, row.len())?;
        }
        let expr = self.expr.map_atoms(&|at| {
            // a·(Mx) = (Mᵀa)·x
            let a: IVec = (0..self.dim)
                .map(|j| at.a.iter().zip(m).map(|(ai, row)| ai * &row[j]).sum())
                .collect();
            if a.iter().all(Zero::is_zero) {
                let ok = if at.strict { at.b < Rat::zero() } else { at.b <= Rat::zero() };
                return if ok { Expr::True } else { Expr::False };
            }
            Expr::Atom(Atom::new(a, at.b.clone(), at.strict).expect("nonzero normal"))
        });
        Ok(ConstructibleSet { dim: self.dim, expr })
    }

    /// The indicator function as an integer combination of closed
    /// polyhedra, by expanding the expression in the Boolean ring of
    /// closed half-spaces and collecting monomials.
    pub fn to_signed_combo(&self) -> Result<SignedPolyCombo> {
        let mut halfspaces: Vec<Row> = Vec::new();
        let poly = anf(&self.expr, &mut halfspaces);
        let mut combo = SignedPolyCombo::zero(self.dim);
        for (monomial, coeff) in poly {
            let rows = monomial.iter().map(|&i| halfspaces[i].clone()).collect();
            combo.add_term(&HPolyhedron::new(self.dim, rows)?, coeff)?;
        }
        Ok(combo)
    }
}

/// Multilinear integer polynomial in half-space indicators; a monomial is
/// the set of half-spaces it intersects.
type BoolPoly = BTreeMap<BTreeSet<usize>, i64>;

fn anf(e: &Expr, halfspaces: &mut Vec<Row>) -> BoolPoly {
    let one = || BoolPoly::from([(BTreeSet::new(), 1)]);
    match e {
        Expr::True => one(),
        Expr::False => BoolPoly::new(),
        Expr::Atom(a) => {
            // a·x > b is the complement of -a·x ≥ -b
            let row = if a.strict {
                Row {
                    a: a.a.iter().map(|x| -x).collect(),
                    b: -a.b.clone(),
                }
            } else {
                Row {
                    a: a.a.clone(),
                    b: a.b.clone(),
                }
            };
            let idx = match halfspaces.iter().position(|r| *r == row) {
                Some(i) => i,
                None => {
                    halfspaces.push(row);
                    halfspaces.len() - 1
                }
            };
            let var = BoolPoly::from([(BTreeSet::from([idx]), 1)]);
            if a.strict {
                poly_sub(&one(), &var)
            } else {
                var
            }
        }
        Expr::Not(inner) => poly_sub(&one(), &anf(inner, halfspaces)),
        Expr::And(es) => es
            .iter()
            .fold(one(), |acc, e| poly_mul(&acc, &anf(e, halfspaces))),
        Expr::Or(es) => {
            let none = es.iter().fold(one(), |acc, e| {
                poly_mul(&acc, &poly_sub(&one(), &anf(e, halfspaces)))
            });
            poly_sub(&one(), &none)
        }
    }
}

fn poly_sub(p: &BoolPoly, q: &BoolPoly) -> BoolPoly {
    let mut out = p.clone();
    for (m, c) in q {
        *out.entry(m.clone()).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly_mul(p: &BoolPoly, q: &BoolPoly) -> BoolPoly {
    let mut out = BoolPoly::new();
    for (m1, c1) in p {
        for (m2, c2) in q {
            let m: BTreeSet<usize> = m1.union(m2).copied().collect();
            *out.entry(m).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {}; {}", self.dim, dsl::render_expr(&self.expr))
    }
}

/// A finite integer combination of closed-polyhedron indicators, keyed by
/// canonical description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPolyCombo {
    dim: usize,
    terms: BTreeMap<HPolyhedron, i64>,
}

impl SignedPolyCombo {
    pub fn zero(dim: usize) -> Self {
        SignedPolyCombo {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn indicator(p: &HPolyhedron) -> Result<Self> {
        let mut c = SignedPolyCombo::zero(p.ambient_dim());
        c.add_term(p, 1)?;
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HPolyhedron, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · 1_P`; empty polyhedra and zero coefficients vanish.
    pub fn add_term(&mut self, p: &HPolyhedron, coeff: i64) -> Result<()> {
        Error::check_dim(self.dim, p.ambient_dim())?;
        if coeff == 0 {
            return Ok(());
        }
        let Some(key) = p.canonical()? else {
            return Ok(());
        };
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            let e = out.terms.entry(p.clone()).or_insert(0);
            *e += c;
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c *= k);
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn eval(&self, x: &[Rat]) -> Result<i64> {
        Error::check_dim(self.dim, x.len())?;
        Ok(self
            .terms
            .iter()
            .filter(|(p, _)| p.rows().iter().all(|r| r.holds(x)))
            .map(|(_, c)| c)
            .sum())
    }

    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        let set: BTreeSet<Hyperplane> = self
            .terms
            .keys()
            .flat_map(|p| p.rows().iter())
            .map(|r| Hyperplane::new(&r.a, &r.b).expect("rows are nondegenerate"))
            .collect();
        set.into_iter().collect()
    }
}

pub fn functions_equal(f: &SignedPolyCombo, g: &SignedPolyCombo) -> Result<bool> {
    functions_equal_with(f, g, &Limits::default())
}

/// Decides `f = g` pointwise on ℝⁿ. Both sides are constant on the cells
/// of the arrangement of all their facet hyperplanes, so one witness per
/// cell settles it.
pub fn functions_equal_with(f: &SignedPolyCombo, g: &SignedPolyCombo, limits: &Limits) -> Result<bool> {
    Error::check_dim(f.dim, g.dim)?;
    let mut hs = f.hyperplanes();
    hs.extend(g.hyperplanes());
    let cc = cell_complex_with(f.dim, &hs, limits)?;
    for cell in &cc.cells {
        if f.eval(&cell.witness)? != g.eval(&cell.witness)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{ivec, qvec, rat};

    fn set(text: &str) -> ConstructibleSet {
        parse_constructible(text).unwrap()
    }

    fn interval(lo: Option<i64>, hi: Option<i64>) -> HPolyhedron {
        let mut rows = Vec::new();
        if let Some(l) = lo {
            rows.push(Row::from_ints(&[1], rat(l)).unwrap());
        }
        if let Some(h) = hi {
            rows.push(Row::from_ints(&[-1], rat(-h)).unwrap());
        }
        HPolyhedron::new(1, rows).unwrap()
    }

    #[test]
    fn point_membership() {
        assert!(set("dim 1; x1 >= 0").contains(&qvec(&[0])).unwrap());
        assert!(!set("dim 1; x1 > 0").contains(&qvec(&[0])).unwrap());
        let half_open = set("dim 1; x1 >= 0 & !(x1 >= 1)");
        assert!(!half_open.contains(&qvec(&[1])).unwrap());
        assert!(half_open.contains(&qvec(&[0])).unwrap());
        assert!(half_open.contains(&qvec(&[0, 0])).is_err());
    }

    #[test]
    fn half_open_interval_combo() {
        let combo = set("dim 1; x1 >= 0 & !(x1 >= 1)").to_signed_combo().unwrap();
        let mut expected = SignedPolyCombo::zero(1);
        expected.add_term(&interval(Some(0), None), 1).unwrap();
        expected.add_term(&interval(Some(1), None), -1).unwrap();
        assert_eq!(combo, expected);
    }

    #[test]
    fn closed_polyhedron_combo_is_itself() {
        let combo = set("dim 2; x1 >= 0 & x2 >= 0 & -x1 - x2 >= -1").to_signed_combo().unwrap();
        assert_eq!(combo.len(), 1);
        assert_eq!(combo.terms().next().unwrap().1, 1);
    }

    #[test]
    fn union_is_inclusion_exclusion() {
        let combo = set("dim 1; (x1 >= 0 & -x1 >= -2) | (x1 >= 1 & -x1 >= -3)")
            .to_signed_combo()
            .unwrap();
        let mut expected = SignedPolyCombo::zero(1);
        expected.add_term(&interval(Some(0), Some(2)), 1).unwrap();
        expected.add_term(&interval(Some(1), Some(3)), 1).unwrap();
        expected.add_term(&interval(Some(1), Some(2)), -1).unwrap();
        assert!(functions_equal(&combo, &expected).unwrap());
        assert_eq!(combo, expected);
    }

    #[test]
    fn brianchon_gram_on_the_unit_interval() {
        let mut f = SignedPolyCombo::zero(1);
        f.add_term(&interval(Some(0), None), 1).unwrap();
        f.add_term(&interval(None, Some(1)), 1).unwrap();
        f.add_term(&interval(None, None), -1).unwrap();
        let g = SignedPolyCombo::indicator(&interval(Some(0), Some(1))).unwrap();
        assert!(functions_equal(&f, &g).unwrap());
        let shifted = SignedPolyCombo::indicator(&interval(Some(1), None)).unwrap();
        let half_line = SignedPolyCombo::indicator(&interval(Some(0), None)).unwrap();
        assert!(!functions_equal(&half_line, &shifted).unwrap());
        let twice = g.scale(2).add(&g.scale(-1)).unwrap();
        assert!(functions_equal(&twice, &g).unwrap());
    }

    #[test]
    fn zero_coefficient_terms_vanish() {
        let mut f = SignedPolyCombo::indicator(&interval(Some(0), None)).unwrap();
        f.add_term(&interval(Some(5), None), 0).unwrap();
        f.add_term(&interval(Some(1), Some(0)), 3).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn product_and_translate() {
        let a = set("dim 1; x1 >= 0");
        let b = set("dim 1; x1 > 1");
        let p = a.product(&b);
        assert_eq!(p.dim(), 2);
        assert!(p.contains(&qvec(&[0, 2])).unwrap());
        assert!(!p.contains(&qvec(&[0, 1])).unwrap());
        let t = a.translate(&qvec(&[3])).unwrap();
        assert!(!t.contains(&qvec(&[2])).unwrap());
        assert!(t.contains(&qvec(&[3])).unwrap());
        assert_eq!(
            t.hyperplanes(),
            vec![Hyperplane::new(&ivec(&[1]), &rat(3)).unwrap()]
        );
    }
}
