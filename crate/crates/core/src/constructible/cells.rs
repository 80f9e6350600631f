//! Cells of a hyperplane arrangement, enumerated by sign vectors.
//!
//! The enumeration is depth-first in hyperplane order. Each node carries
//! a relative-interior witness of its cell together with a basis of the
//! cell's direction space; a child is either read off the witness or found
//! by one small LP in the cell's own affine coordinates.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Limits, Result};
use crate::exactq::{dot, idot, nullspace, primitive_int, IVec, LinearProgram, LpOutcome, QVec, Rat, Sense};

/// The hyperplane `a·x = b`, oriented so the first nonzero entry of `a` is
/// positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub a: IVec,
    pub b: Rat,
}

impl Hyperplane {
    pub fn new(a: &IVec, b: &Rat) -> Result<Hyperplane> {
        let (mut a, mut b) = primitive_int(a, b)?;
        if a.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            a.iter_mut().for_each(|x| *x = -x.clone());
            b = -b;
        }
        Ok(Hyperplane { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn value(&self, x: &[Rat]) -> Rat {
        idot(&self.a, x) - &self.b
    }

    pub fn side(&self, x: &[Rat]) -> Sign {
        Sign::of(&self.value(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rat) -> Sign {
        match x.cmp(&Rat::zero()) {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }

    fn factor(self) -> Rat {
        match self {
            Sign::Neg => -Rat::one(),
            Sign::Zero => Rat::zero(),
            Sign::Pos => Rat::one(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// A relatively open convex cell: the points with the given sign against
/// every hyperplane of the arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub signs: Vec<Sign>,
    pub witness: QVec,
    pub dim: usize,
}

impl Cell {
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }

    /// Compactly supported Euler characteristic of the open cell.
    pub fn euler(&self) -> i64 {
        if self.dim % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub dim: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub cells: Vec<Cell>,
}

impl CellComplex {
    /// The cell containing `x`, located by its sign vector.
    pub fn locate(&self, x: &[Rat]) -> Option<&Cell> {
        let signs: Vec<Sign> = self.hyperplanes.iter().map(|h| h.side(x)).collect();
        self.cells
            .binary_search_by(|c| c.signs.cmp(&signs))
            .ok()
            .map(|i| &self.cells[i])
    }
}

impl fmt::Display for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            let w: Vec<String> = c.witness.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}] dim={} witness=({})", c.sign_string(), c.dim, w.join(", "))?;
        }
        Ok(())
    }
}

pub fn cell_complex(dim: usize, hyperplanes: &[Hyperplane]) -> Result<CellComplex> {
    cell_complex_with(dim, hyperplanes, &Limits::default())
}

/// All nonempty cells of the arrangement, sorted by sign vector with
/// `- < 0 < +`. Duplicate hyperplanes are merged first.
pub fn cell_complex_with(dim: usize, hyperplanes: &[Hyperplane], limits: &Limits) -> Result<CellComplex> {
    limits.check_dim(dim)?;
    for h in hyperplanes {
        Error::check_dim(dim, h.dim())?;
    }
    let mut hs = hyperplanes.to_vec();
    hs.sort();
    hs.dedup();
    limits.check_hyperplanes(hs.len())?;

    let mut cells = Vec::new();
    let root = Node {
        signs: Vec::new(),
        witness: vec![Rat::zero(); dim],
        directions: identity(dim),
    };
    let normals: Vec<QVec> = hs.iter().map(|h| crate::exactq::to_qvec(&h.a)).collect();
    explore(&hs, &normals, root, &mut cells);
    cells.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(CellComplex {
        dim,
        hyperplanes: hs,
        cells,
    })
}

fn identity(n: usize) -> Vec<QVec> {
    (0..n)
        .map(|i| {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v
        })
        .collect()
}

struct Node {
    signs: Vec<Sign>,
    witness: QVec,
    /// Basis of the linear space parallel to the cell's affine hull.
    directions: Vec<QVec>,
}

fn explore(hs: &[Hyperplane], normals: &[QVec], node: Node, out: &mut Vec<Cell>) {
    let depth = node.signs.len();
    if depth == hs.len() {
        out.push(Cell {
            dim: node.directions.len(),
            signs: node.signs,
            witness: node.witness,
        });
        return;
    }
    let h = &hs[depth];
    let along: QVec = node.directions.iter().map(|d| dot(&normals[depth], d)).collect();
    let value = h.value(&node.witness);
    let here = Sign::of(&value);

    if along.iter().all(Zero::is_zero) {
        // constant on the cell's affine hull
        let mut signs = node.signs;
        signs.push(here);
        explore(
            hs,
            normals,
            Node {
                signs,
                ..node
            },
            out,
        );
        return;
    }

    let mut children: Vec<(Sign, QVec)> = Vec::with_capacity(3);
    if here == Sign::Zero {
        // the witness sits on h: step off it along the cell in both directions
        let d: QVec = combine(&node.directions, &along);
        let step = safe_step(hs, normals, &node, &d);
        let plus: QVec = node.witness.iter().zip(&d).map(|(w, di)| w + &step * di).collect();
        let minus: QVec = node.witness.iter().zip(&d).map(|(w, di)| w - &step * di).collect();
        children.push((Sign::Neg, minus));
        children.push((Sign::Zero, node.witness.clone()));
        children.push((Sign::Pos, plus));
    } else {
        children.push((here, node.witness.clone()));
        if let Some(q) = opposite_point(hs, normals, &node, here) {
            let hq = h.value(&q);
            let t = &value / (&value - &hq);
            let on: QVec = node
                .witness
                .iter()
                .zip(&q)
                .map(|(w, qi)| w + &t * (qi - w))
                .collect();
            let opposite = if here == Sign::Pos { Sign::Neg } else { Sign::Pos };
            children.push((Sign::Zero, on));
            children.push((opposite, q));
        }
        children.sort_by_key(|c| c.0);
    }

    for (sign, witness) in children {
        let directions = if sign == Sign::Zero {
            restrict(&node.directions, &along)
        } else {
            node.directions.clone()
        };
        let mut signs = node.signs.clone();
        signs.push(sign);
        explore(
            hs,
            normals,
            Node {
                signs,
                witness,
                directions,
            },
            out,
        );
    }
}

/// `Σ coeffs[i] · basis[i]`.
fn combine(basis: &[QVec], coeffs: &[Rat]) -> QVec {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![Rat::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// Basis of `{Σ yᵢ dᵢ : Σ yᵢ alongᵢ = 0}`.
fn restrict(directions: &[QVec], along: &[Rat]) -> Vec<QVec> {
    nullspace(&[along.to_vec()], along.len())
        .iter()
        .map(|y| combine(directions, y))
        .collect()
}

/// A step length `δ > 0` such that `witness ± δ d` keeps every strict sign
/// of the node.
fn safe_step(hs: &[Hyperplane], normals: &[QVec], node: &Node, d: &[Rat]) -> Rat {
    let mut step: Option<Rat> = None;
    for (i, s) in node.signs.iter().enumerate() {
        if *s == Sign::Zero {
            continue;
        }
        let rate = dot(&normals[i], d).abs();
        if rate.is_zero() {
            continue;
        }
        let room = hs[i].value(&node.witness).abs() / rate;
        step = Some(match step {
            Some(s) if s <= room => s,
            _ => room,
        });
    }
    step.map_or_else(Rat::one, |s| s / Rat::from_integer(2.into()))
}

/// A point of the cell strictly on the other side of the current
/// hyperplane from the witness, if one exists.
fn opposite_point(hs: &[Hyperplane], normals: &[QVec], node: &Node, here: Sign) -> Option<QVec> {
    let depth = node.signs.len();
    let k = node.directions.len();
    // variables: y ∈ ℚᵏ (x = w + D y) and ε
    let mut lp = LinearProgram::new(k + 1);
    let project = |i: usize| -> QVec { node.directions.iter().map(|d| dot(&normals[i], d)).collect() };
    for (i, s) in node.signs.iter().enumerate() {
        if *s == Sign::Zero {
            continue;
        }
        let row = project(i);
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let f = s.factor();
        let mut a: QVec = row.iter().map(|x| &f * x).collect();
        a.push(-Rat::one());
        let b = -(&f * hs[i].value(&node.witness));
        lp.ge(a, b).expect("width");
    }
    let f = -here.factor();
    let mut a: QVec = project(depth).iter().map(|x| &f * x).collect();
    a.push(-Rat::one());
    lp.ge(a, -(&f * hs[depth].value(&node.witness))).expect("width");
    let mut cap = vec![Rat::zero(); k + 1];
    cap[k] = -Rat::one();
    lp.ge(cap.clone(), -Rat::one()).expect("width");
    let objective: QVec = cap.iter().map(|x| -x).collect();
    match lp.optimize(&objective, Sense::Maximize).expect("width") {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            let y = &point[..k];
            let shift = combine(&node.directions, y);
            Some(node.witness.iter().zip(&shift).map(|(w, s)| w + s).collect())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{ivec, rat};

    fn hp(a: &[i64], b: i64) -> Hyperplane {
        Hyperplane::new(&ivec(a), &rat(b)).unwrap()
    }

    #[test]
    fn orientation_is_canonical() {
        assert_eq!(hp(&[-2, 4], 2), hp(&[1, -2], -1));
    }

    #[test]
    fn single_point_on_the_line() {
        let cc = cell_complex(1, &[hp(&[1], 0)]).unwrap();
        let signs: Vec<String> = cc.cells.iter().map(Cell::sign_string).collect();
        assert_eq!(signs, vec!["-", "0", "+"]);
        assert_eq!(cc.cells.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![1, 0, 1]);
    }

    #[test]
    fn two_points_on_the_line() {
        let cc = cell_complex(1, &[hp(&[1], 0), hp(&[1], 1)]).unwrap();
        assert_eq!(cc.cells.len(), 5);
    }

    #[test]
    fn three_lines_through_origin() {
        let cc = cell_complex(2, &[hp(&[1, 0], 0), hp(&[0, 1], 0), hp(&[1, -1], 0)]).unwrap();
        assert_eq!(cc.cells.len(), 13);
        let by_dim = |d| cc.cells.iter().filter(|c| c.dim == d).count();
        assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (1, 6, 6));
    }

    #[test]
    fn witnesses_realize_their_signs() {
        let hs = [hp(&[1, 2], 1), hp(&[1, 0], 0), hp(&[0, 1], 2), hp(&[1, 1], 1)];
        let cc = cell_complex(2, &hs).unwrap();
        for c in &cc.cells {
            let sv: Vec<Sign> = cc.hyperplanes.iter().map(|h| h.side(&c.witness)).collect();
            assert_eq!(sv, c.signs);
            assert_eq!(cc.locate(&c.witness), Some(c));
        }
    }

    #[test]
    fn duplicate_hyperplanes_merge_and_cap_applies() {
        let cc = cell_complex(1, &[hp(&[1], 0), hp(&[-1], 0)]).unwrap();
        assert_eq!(cc.hyperplanes.len(), 1);
        let many: Vec<Hyperplane> = (0..15).map(|i| hp(&[1], i)).collect();
        assert!(matches!(cell_complex(1, &many), Err(Error::Resource(_))));
    }

    #[test]
    fn empty_arrangement() {
        let cc = cell_complex(3, &[]).unwrap();
        assert_eq!(cc.cells.len(), 1);
        assert_eq!(cc.cells[0].dim, 3);
    }
}
