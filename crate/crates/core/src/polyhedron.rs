//! Rational polyhedra in H-representation and their face structure.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Limits, Result};
use crate::exactq::{
    idot, nullspace, parse_rat, primitive_int, primitive_normalize, rank, row_reduce, to_qvec,
    IVec, LinearProgram, LpOutcome, QVec, Rat, Sense,
};

/// The half-space `a·x ≥ b` with `a` a primitive integer vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    pub a: IVec,
    pub b: Rat,
}

impl Row {
    pub fn new(a: &[Rat], b: &Rat) -> Result<Row> {
        let (a, b) = primitive_normalize(a, b)?;
        Ok(Row { a, b })
    }

    pub fn from_ints(a: &[i64], b: Rat) -> Result<Row> {
        let a: IVec = a.iter().map(|&x| BigInt::from(x)).collect();
        let (a, b) = primitive_int(&a, &b)?;
        Ok(Row { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `a·x - b`.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        idot(&self.a, x) - &self.b
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        !self.slack(x).is_negative()
    }

    /// The opposite closed half-space `-a·x ≥ -b`.
    pub fn reversed(&self) -> Row {
        Row {
            a: self.a.iter().map(|x| -x).collect(),
            b: -self.b.clone(),
        }
    }

    pub fn normal(&self) -> QVec {
        to_qvec(&self.a)
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, " >= {}", self.b)
    }
}

/// A finite intersection of closed rational half-spaces. No rows means ℝⁿ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HPolyhedron {
    dim: usize,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecessionData {
    /// `{v : a·v ≥ 0}` over the rows of the polyhedron.
    pub rec: HPolyhedron,
    pub lin_basis: Vec<QVec>,
    pub ell: usize,
}

impl HPolyhedron {
    pub fn new(dim: usize, rows: Vec<Row>) -> Result<Self> {
        for r in &rows {
            Error::check_dim(dim, r.dim())?;
        }
        Ok(HPolyhedron { dim, rows })
    }

    pub fn from_constraints(dim: usize, constraints: &[(QVec, Rat)]) -> Result<Self> {
        let rows = constraints
            .iter()
            .map(|(a, b)| {
                Error::check_dim(dim, a.len())?;
                Row::new(a, b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HPolyhedron { dim, rows })
    }

    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        Error::check_dim(self.dim, other.dim)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(HPolyhedron { dim: self.dim, rows })
    }

    /// Cartesian product `self × other`.
    pub fn product(&self, other: &HPolyhedron) -> HPolyhedron {
        let dim = self.dim + other.dim;
        let zeros = |k: usize| std::iter::repeat(BigInt::zero()).take(k);
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for r in &self.rows {
            let a = r.a.iter().cloned().chain(zeros(other.dim)).collect();
            rows.push(Row { a, b: r.b.clone() });
        }
        for r in &other.rows {
            let a = zeros(self.dim).chain(r.a.iter().cloned()).collect();
            rows.push(Row { a, b: r.b.clone() });
        }
        HPolyhedron { dim, rows }
    }

    /// `self + t`.
    pub fn translate(&self, t: &[Rat]) -> Result<HPolyhedron> {
        Error::check_dim(self.dim, t.len())?;
        let rows = self
            .rows
            .iter()
            .map(|r| Row {
                a: r.a.clone(),
                b: &r.b + idot(&r.a, t),
            })
            .collect();
        Ok(HPolyhedron { dim: self.dim, rows })
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        Error::check_dim(self.dim, x.len())?;
        Ok(self.rows.iter().all(|r| r.holds(x)))
    }

    pub(crate) fn lp(&self) -> LinearProgram {
        let mut lp = LinearProgram::new(self.dim);
        for r in &self.rows {
            lp.ge(r.normal(), r.b.clone()).expect("row width checked");
        }
        lp
    }

    pub fn is_empty(&self) -> bool {
        self.lp().feasible_point().is_none()
    }

    pub fn interior_point(&self) -> Option<QVec> {
        self.lp().feasible_point()
    }

    fn require_nonempty(&self, what: &str) -> Result<()> {
        if self.is_empty() {
            Err(Error::domain(format!("{what} of the empty polyhedron")))
        } else {
            Ok(())
        }
    }

    /// Minimum of `a·x` over the polyhedron, `None` when unbounded below.
    fn min_form(&self, a: &[Rat], skip: Option<usize>) -> Option<Rat> {
        let mut lp = LinearProgram::new(self.dim);
        for (i, r) in self.rows.iter().enumerate() {
            if Some(i) != skip {
                lp.ge(r.normal(), r.b.clone()).expect("row width checked");
            }
        }
        match lp.optimize(a, Sense::Minimize).expect("objective width") {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded => None,
            LpOutcome::Infeasible => unreachable!("minimizing over a nonempty polyhedron"),
        }
    }

    /// Indices of rows that hold with equality on the whole (nonempty) set.
    fn implicit_equalities(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| {
                let r = &self.rows[i];
                self.min_form(&r.normal(), None)
                    .is_some_and(|m| m == r.b)
                    && self.max_form_equals(i)
            })
            .collect()
    }

    fn max_form_equals(&self, i: usize) -> bool {
        let r = &self.rows[i];
        let neg: QVec = r.normal().iter().map(|x| -x).collect();
        self.min_form(&neg, None).is_some_and(|m| -m == r.b)
    }

    /// Affine dimension of a nonempty polyhedron.
    pub fn dimension(&self) -> Result<usize> {
        self.require_nonempty("dimension")?;
        let eq: Vec<QVec> = self
            .implicit_equalities()
            .into_iter()
            .map(|i| self.rows[i].normal())
            .collect();
        Ok(self.dim - rank(&eq, self.dim))
    }

    pub fn is_bounded(&self) -> Result<bool> {
        Ok(self.recession()?.rec.is_pointed_trivially())
    }

    /// True when `{v : a·v ≥ 0}` is `{0}`; only meaningful for cones.
    fn is_pointed_trivially(&self) -> bool {
        (0..self.dim).all(|j| {
            let mut e = vec![Rat::zero(); self.dim];
            e[j] = Rat::one();
            let neg: QVec = e.iter().map(|x| -x).collect();
            self.min_form(&e, None).is_some_and(|m| m.is_zero())
                && self.min_form(&neg, None).is_some_and(|m| m.is_zero())
        })
    }

    /// An equivalent description with no droppable row.
    pub fn irredundant(&self) -> Result<HPolyhedron> {
        self.require_nonempty("irredundant description")?;
        let mut keep = self.clone();
        // exact duplicates first
        let mut seen = BTreeSet::new();
        keep.rows.retain(|r| seen.insert(r.clone()));
        let mut i = 0;
        while i < keep.rows.len() {
            let r = &keep.rows[i];
            let redundant = keep
                .min_form(&r.normal(), Some(i))
                .is_some_and(|m| m >= r.b);
            if redundant {
                keep.rows.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(keep)
    }

    /// A description that depends only on the set, or `None` if empty.
    ///
    /// Implicit equalities are replaced by the reduced echelon basis of the
    /// affine hull; the remaining facet rows are reduced modulo that basis.
    pub fn canonical(&self) -> Result<Option<HPolyhedron>> {
        if self.is_empty() {
            return Ok(None);
        }
        let p = self.irredundant()?;
        let eq = p.implicit_equalities();
        let n = self.dim;
        let mut hull: Vec<QVec> = eq
            .iter()
            .map(|&i| {
                let mut v = p.rows[i].normal();
                v.push(p.rows[i].b.clone());
                v
            })
            .collect();
        let pivots = row_reduce(&mut hull, n + 1);
        let mut rows = BTreeSet::new();
        for h in &hull {
            let r = Row::new(&h[..n], &h[n])?;
            rows.insert(r.reversed());
            rows.insert(r);
        }
        for (i, r) in p.rows.iter().enumerate() {
            if eq.contains(&i) {
                continue;
            }
            let mut v = r.normal();
            v.push(r.b.clone());
            for (h, &c) in hull.iter().zip(&pivots) {
                if v[c].is_zero() {
                    continue;
                }
                let f = v[c].clone();
                for (x, y) in v.iter_mut().zip(h) {
                    *x -= &f * y;
                }
            }
            rows.insert(Row::new(&v[..n], &v[n])?);
        }
        Ok(Some(HPolyhedron {
            dim: n,
            rows: rows.into_iter().collect(),
        }))
    }

    pub fn recession(&self) -> Result<RecessionData> {
        self.require_nonempty("recession cone")?;
        let mut seen = BTreeSet::new();
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                a: r.a.clone(),
                b: Rat::zero(),
            })
            .filter(|r| seen.insert(r.clone()))
            .collect();
        let normals: Vec<QVec> = self.rows.iter().map(Row::normal).collect();
        let lin_basis = nullspace(&normals, self.dim);
        let ell = lin_basis.len();
        Ok(RecessionData {
            rec: HPolyhedron { dim: self.dim, rows },
            lin_basis,
            ell,
        })
    }

    pub fn faces(&self) -> Result<Vec<Face>> {
        self.faces_with(&Limits::default())
    }

    /// Every nonempty face, sorted by `(dim, tight set)`.
    pub fn faces_with(&self, limits: &Limits) -> Result<Vec<Face>> {
        limits.check_dim(self.dim)?;
        limits.check_rows(self.rows.len())?;
        let parent = Arc::new(self.irredundant()?);
        let m = parent.rows.len();
        let start = parent.implicit_equalities();
        let root = parent
            .face_witness(&start)
            .expect("the polyhedron itself is a face");
        let mut found: BTreeMap<Vec<usize>, QVec> = BTreeMap::new();
        found.insert(start.clone(), root);
        let mut queue = VecDeque::from([start]);
        while let Some(tight) = queue.pop_front() {
            for j in (0..m).filter(|j| !tight.contains(j)) {
                let mut cand = tight.clone();
                cand.push(j);
                cand.sort_unstable();
                if found.contains_key(&cand) {
                    continue;
                }
                let Some(closed) = parent.close_tight_set(&cand) else {
                    continue;
                };
                if found.contains_key(&closed) {
                    continue;
                }
                let witness = parent
                    .face_witness(&closed)
                    .expect("closed tight sets have a relative-interior point");
                found.insert(closed.clone(), witness);
                queue.push_back(closed);
            }
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|(tight, witness)| {
                let normals: Vec<QVec> = tight.iter().map(|&i| parent.rows[i].normal()).collect();
                Face {
                    parent: Arc::clone(&parent),
                    dim: self.dim - rank(&normals, self.dim),
                    tight,
                    witness,
                }
            })
            .collect();
        faces.sort_by(|f, g| (f.dim, &f.tight).cmp(&(g.dim, &g.tight)));
        Ok(faces)
    }

    /// Maximizes `ε ∈ [0, 1]` with the `tight` rows as equalities and every
    /// other row `≥ b + ε`. Returns `(ε*, point)` or `None` if infeasible.
    fn slack_lp(&self, tight: &[usize]) -> Option<(Rat, QVec)> {
        let n = self.dim;
        let mut lp = LinearProgram::new(n + 1);
        for (i, r) in self.rows.iter().enumerate() {
            let mut a = r.normal();
            if tight.contains(&i) {
                a.push(Rat::zero());
                lp.eq(a, r.b.clone()).expect("width");
            } else {
                a.push(-Rat::one());
                lp.ge(a, r.b.clone()).expect("width");
            }
        }
        let mut eps = vec![Rat::zero(); n + 1];
        eps[n] = Rat::one();
        lp.ge(eps.clone(), Rat::zero()).expect("width");
        let cap: QVec = eps.iter().map(|x| -x).collect();
        lp.ge(cap, -Rat::one()).expect("width");
        match lp.optimize(&eps, Sense::Maximize).expect("width") {
            LpOutcome::Optimal { value, mut point } => {
                point.truncate(n);
                Some((value, point))
            }
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("ε is capped"),
        }
    }

    fn face_witness(&self, tight: &[usize]) -> Option<QVec> {
        match self.slack_lp(tight) {
            Some((eps, point)) if eps.is_positive() || tight.len() == self.rows.len() => {
                Some(point)
            }
            _ => None,
        }
    }

    /// The full set of rows tight on the face cut out by `tight`, or `None`
    /// if that face is empty.
    fn close_tight_set(&self, tight: &[usize]) -> Option<Vec<usize>> {
        let (eps, _) = self.slack_lp(tight)?;
        if eps.is_positive() {
            return Some(tight.to_vec());
        }
        let mut face = LinearProgram::new(self.dim);
        for (i, r) in self.rows.iter().enumerate() {
            if tight.contains(&i) {
                face.eq(r.normal(), r.b.clone()).expect("width");
            } else {
                face.ge(r.normal(), r.b.clone()).expect("width");
            }
        }
        let mut closed: Vec<usize> = (0..self.rows.len())
            .filter(|i| {
                tight.contains(i) || {
                    let r = &self.rows[*i];
                    let neg: QVec = r.normal().iter().map(|x| -x).collect();
                    let lo = face.optimize(&r.normal(), Sense::Minimize).expect("width");
                    let hi = face.optimize(&neg, Sense::Minimize).expect("width");
                    lo.value() == Some(&r.b) && hi.value().map(|v| -v) == Some(r.b.clone())
                }
            })
            .collect();
        closed.sort_unstable();
        Some(closed)
    }

    /// A rational point of the lowest-dimensional face.
    pub fn minimal_face_point(&self) -> Result<QVec> {
        if self.rows.is_empty() {
            return Ok(vec![Rat::zero(); self.dim]);
        }
        let faces = self.faces()?;
        Ok(faces[0].witness.clone())
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A nonempty face of a polyhedron, identified by the rows of the parent's
/// irredundant description that are tight on it.
#[derive(Debug, Clone)]
pub struct Face {
    parent: Arc<HPolyhedron>,
    pub tight: Vec<usize>,
    pub dim: usize,
    /// Satisfies the tight rows with equality and all others strictly.
    pub witness: QVec,
}

impl PartialEq for Face {
    fn eq(&self, other: &Face) -> bool {
        self.tight == other.tight && self.parent == other.parent
    }
}

impl Eq for Face {}

impl Face {
    /// The irredundant description the tight set refers to.
    pub fn parent(&self) -> &HPolyhedron {
        &self.parent
    }

    /// The face as a polyhedron: tight rows become equalities.
    pub fn as_polyhedron(&self) -> HPolyhedron {
        let mut rows = self.parent.rows.clone();
        for &i in &self.tight {
            rows.push(self.parent.rows[i].reversed());
        }
        HPolyhedron {
            dim: self.parent.dim,
            rows,
        }
    }

    /// `T_F P`, cut out by exactly the rows tight on the face.
    pub fn tangent_cone(&self) -> HPolyhedron {
        HPolyhedron {
            dim: self.parent.dim,
            rows: self.tight.iter().map(|&i| self.parent.rows[i].clone()).collect(),
        }
    }

    /// `rec(F) = Lin(P)`, checked by containment in both directions.
    pub fn is_relatively_bounded(&self) -> bool {
        let p = &self.parent;
        let n = p.dim;
        let normals: Vec<QVec> = p.rows.iter().map(Row::normal).collect();
        let lin = nullspace(&normals, n);
        let rec_face = |lp: &mut LinearProgram| {
            for (i, r) in p.rows.iter().enumerate() {
                if self.tight.contains(&i) {
                    lp.eq(r.normal(), Rat::zero()).expect("width");
                } else {
                    lp.ge(r.normal(), Rat::zero()).expect("width");
                }
            }
        };
        // Lin(P) ⊆ rec(F)
        let lin_inside = lin.iter().all(|v| {
            p.rows
                .iter()
                .all(|r| crate::exactq::dot(&r.normal(), v).is_zero())
        });
        // rec(F) ⊆ Lin(P): no row can be strictly positive on rec(F)
        let rec_inside = (0..p.rows.len())
            .filter(|i| !self.tight.contains(i))
            .all(|j| {
                let mut lp = LinearProgram::new(n);
                rec_face(&mut lp);
                let a = p.rows[j].normal();
                let cap: QVec = a.iter().map(|x| -x).collect();
                lp.ge(cap, -Rat::one()).expect("width");
                lp.optimize(&a, Sense::Maximize)
                    .expect("width")
                    .value()
                    .is_some_and(Zero::is_zero)
            });
        lin_inside && rec_inside
    }

    /// Whether the face is visible from the exterior point `x`.
    pub fn is_visible_from(&self, x: &[Rat]) -> Result<bool> {
        if self.parent.contains(x)? {
            return Err(Error::domain("visibility is defined for exterior points only"));
        }
        Ok(!self.tangent_cone().contains(x)?)
    }
}

/// Parses one constraint per line, `a1 ... an >= b` (or `<=`). Blank lines
/// and `#` comments are skipped; `;` also separates constraints. A `dim n`
/// line fixes the ambient dimension, which is otherwise read off the first
/// constraint.
pub fn parse_polyhedron(text: &str, dim: Option<usize>) -> Result<HPolyhedron> {
    let mut dim = dim;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in line.split(';') {
            let col = offset + 1 + (stmt.len() - stmt.trim_start().len());
            offset += stmt.len() + 1;
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::parse(lineno + 1, col, msg);
            if let Some(rest) = stmt.strip_prefix("dim") {
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err("expected `dim <n>`"))?;
                if dim.is_some_and(|d| d != n) || !rows.is_empty() {
                    return Err(err("conflicting dimension header"));
                }
                dim = Some(n);
                continue;
            }
            let (lhs, rhs, flip) = if let Some((l, r)) = stmt.split_once(">=") {
                (l, r, false)
            } else if let Some((l, r)) = stmt.split_once("<=") {
                (l, r, true)
            } else {
                return Err(err("expected `a1 ... an >= b`"));
            };
            let coeffs: Vec<BigInt> = lhs
                .split_whitespace()
                .map(|t| t.parse::<BigInt>().map_err(|_| err("coefficients must be integers")))
                .collect::<Result<_>>()?;
            let b = parse_rat(rhs).ok_or_else(|| err("right-hand side must be a rational p or p/q"))?;
            let n = *dim.get_or_insert(coeffs.len());
            if coeffs.len() != n {
                return Err(err(&format!("expected {n} coefficients, found {}", coeffs.len())));
            }
            let (a, b) = if flip {
                (coeffs.iter().map(|x| -x).collect::<Vec<_>>(), -b)
            } else {
                (coeffs, b)
            };
            let (a, b) = primitive_int(&a, &b).map_err(|_| err("all coefficients are zero"))?;
            rows.push(Row { a, b });
        }
    }
    let dim = dim.ok_or_else(|| Error::parse(1, 1, "no constraints and no `dim` line"))?;
    HPolyhedron::new(dim, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{qvec, rat, ratio};

    fn poly(dim: usize, rows: &[(&[i64], i64)]) -> HPolyhedron {
        let rows = rows
            .iter()
            .map(|(a, b)| Row::from_ints(a, rat(*b)).unwrap())
            .collect();
        HPolyhedron::new(dim, rows).unwrap()
    }

    fn unit_square() -> HPolyhedron {
        poly(2, &[(&[1, 0], 0), (&[-1, 0], -1), (&[0, 1], 0), (&[0, -1], -1)])
    }

    #[test]
    fn emptiness_and_dimension() {
        assert!(poly(1, &[(&[1], 1), (&[-1], 0)]).is_empty());
        assert_eq!(unit_square().dimension().unwrap(), 2);
        assert_eq!(poly(2, &[(&[1, 0], 0), (&[-1, 0], 0)]).dimension().unwrap(), 1);
        assert!(matches!(
            poly(1, &[(&[1], 1), (&[-1], 0)]).dimension(),
            Err(Error::Domain(_))
        ));
        assert!(unit_square().contains(&qvec(&[1, 0])).unwrap());
        assert!(!unit_square().contains(&[ratio(3, 2), rat(0)]).unwrap());
    }

    #[test]
    fn irredundant_examples() {
        assert_eq!(poly(1, &[(&[1], 0), (&[1], -1)]).irredundant().unwrap().rows().len(), 1);
        let p = poly(1, &[(&[1], 0), (&[-1], 0), (&[1], -5)]).irredundant().unwrap();
        assert_eq!(p, poly(1, &[(&[1], 0), (&[-1], 0)]));
        let mut sq = unit_square();
        sq.rows.push(sq.rows[1].clone());
        assert_eq!(sq.irredundant().unwrap().rows().len(), 4);
    }

    #[test]
    fn faces_of_interval_square_and_space() {
        let seg = poly(1, &[(&[1], 0), (&[-1], -1)]);
        let f = seg.faces().unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.iter().map(|f| f.dim).collect::<Vec<_>>(), vec![0, 0, 1]);
        let f = unit_square().faces().unwrap();
        assert_eq!(f.len(), 9);
        assert_eq!(f.iter().filter(|f| f.dim == 0).count(), 4);
        assert_eq!(f.iter().filter(|f| f.dim == 1).count(), 4);
        assert_eq!(HPolyhedron::whole_space(3).faces().unwrap().len(), 1);
    }

    #[test]
    fn degenerate_description_faces() {
        // apex of a square pyramid: four rows tight at the apex
        let p = poly(
            3,
            &[
                (&[0, 0, 1], 0),
                (&[1, 0, -1], -1),
                (&[-1, 0, -1], -1),
                (&[0, 1, -1], -1),
                (&[0, -1, -1], -1),
            ],
        );
        let f = p.faces().unwrap();
        let count = |d| f.iter().filter(|x| x.dim == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (5, 8, 5, 1));
        for face in &f {
            for (i, r) in p.irredundant().unwrap().rows().iter().enumerate() {
                let s = r.slack(&face.witness);
                if face.tight.contains(&i) {
                    assert!(s.is_zero());
                } else {
                    assert!(s.is_positive());
                }
            }
        }
    }

    #[test]
    fn recession_examples() {
        let r = unit_square().recession().unwrap();
        assert_eq!(r.ell, 0);
        assert!(unit_square().is_bounded().unwrap());
        let cone = poly(2, &[(&[-1, 1], 0), (&[1, 1], 0)]);
        let r = cone.recession().unwrap();
        assert_eq!(r.rec, cone);
        assert_eq!(r.ell, 0);
        let strip = poly(2, &[(&[0, 1], 0), (&[0, -1], -1)]);
        let r = strip.recession().unwrap();
        assert_eq!(r.ell, 1);
        assert_eq!(r.lin_basis[0][1], rat(0));
        assert!(!r.lin_basis[0][0].is_zero());
    }

    #[test]
    fn relative_boundedness() {
        let quadrant = poly(2, &[(&[1, 0], 0), (&[0, 1], 0)]);
        for f in quadrant.faces().unwrap() {
            assert_eq!(f.is_relatively_bounded(), f.dim == 0);
        }
        let strip = poly(2, &[(&[0, 1], 0), (&[0, -1], -1)]);
        for f in strip.faces().unwrap() {
            assert!(f.is_relatively_bounded());
        }
        for f in unit_square().faces().unwrap() {
            assert!(f.is_relatively_bounded());
        }
    }

    #[test]
    fn tangent_cones() {
        let seg = poly(1, &[(&[1], 0), (&[-1], -1)]);
        let f = seg.faces().unwrap();
        let at_zero = f.iter().find(|f| f.witness == qvec(&[0])).unwrap();
        assert_eq!(at_zero.tangent_cone(), poly(1, &[(&[1], 0)]));
        assert_eq!(f[2].tangent_cone(), HPolyhedron::whole_space(1));
        let sq = unit_square();
        let origin = sq
            .faces()
            .unwrap()
            .into_iter()
            .find(|f| f.witness == qvec(&[0, 0]))
            .unwrap();
        assert_eq!(origin.tangent_cone(), poly(2, &[(&[1, 0], 0), (&[0, 1], 0)]));
    }

    #[test]
    fn visibility() {
        let seg = poly(1, &[(&[1], 0), (&[-1], -1)]);
        let f = seg.faces().unwrap();
        let find = |w: i64| f.iter().find(|f| f.witness == qvec(&[w])).unwrap();
        assert!(find(0).is_visible_from(&qvec(&[-1])).unwrap());
        assert!(!find(1).is_visible_from(&qvec(&[-1])).unwrap());
        assert!(find(0).is_visible_from(&[ratio(1, 2)]).is_err());
        let sq = unit_square().faces().unwrap();
        let v = |x: i64, y: i64| sq.iter().find(|f| f.witness == qvec(&[x, y])).unwrap();
        assert!(v(0, 0).is_visible_from(&qvec(&[-1, -1])).unwrap());
        assert!(!v(1, 1).is_visible_from(&qvec(&[-1, -1])).unwrap());
    }

    #[test]
    fn minimal_face_points() {
        assert_eq!(poly(1, &[(&[1], 2)]).minimal_face_point().unwrap(), qvec(&[2]));
        assert_eq!(HPolyhedron::whole_space(3).minimal_face_point().unwrap(), qvec(&[0, 0, 0]));
        let p = poly(2, &[(&[0, 1], 1)]).minimal_face_point().unwrap();
        assert_eq!(p[1], rat(1));
        assert!(poly(1, &[(&[1], 1), (&[-1], 0)]).minimal_face_point().is_err());
    }

    #[test]
    fn canonical_forms_agree_for_equal_sets() {
        // the line y = 0 with a facet, described two ways
        let a = poly(2, &[(&[0, 1], 0), (&[0, -1], 0), (&[1, 0], 0)]);
        let b = poly(2, &[(&[0, 1], 0), (&[0, -1], 0), (&[1, 5], 0), (&[1, 0], -3), (&[0, 1], -4)]);
        assert_eq!(a.canonical().unwrap(), b.canonical().unwrap());
        assert_eq!(poly(1, &[(&[1], 1), (&[-1], 0)]).canonical().unwrap(), None);
    }

    #[test]
    fn text_format() {
        let p = parse_polyhedron("# square\n1 0 >= 0\n-1 0 >= -1\n\n0 1 >= 0\n0 -1 >= -1\n", None).unwrap();
        assert_eq!(p, unit_square());
        let q = parse_polyhedron(&p.to_string(), None).unwrap();
        assert_eq!(p, q);
        let r = parse_polyhedron("2 4 >= 3", None).unwrap();
        assert_eq!(r.rows()[0], Row::from_ints(&[1, 2], ratio(3, 2)).unwrap());
        assert_eq!(parse_polyhedron("dim 3", None).unwrap(), HPolyhedron::whole_space(3));
        match parse_polyhedron("1 0 >= 0\n1 >= 2", None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_polyhedron("1 >= 0.5", None).is_err());
    }
}
