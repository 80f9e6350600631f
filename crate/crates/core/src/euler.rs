//! Compactly supported Euler characteristic `chi` and its bounded variant
//! `chi_b`, computed on arrangement cells.
//!
//! A relatively open convex cell of dimension `d` is homeomorphic to ℝᵈ
//! and therefore contributes `(-1)^d`. Every constructible set is a
//! disjoint union of the cells of its own arrangement, so `chi` is a
//! signed cell count. `chi_b` is summed over the same cells, each cell
//! contributing its own bounded characteristic; `chi_b_at` clips to an
//! explicit box instead and serves as a cross-check.

use num_traits::{One, Signed, Zero};

use crate::constructible::{cell_complex_with, Atom, Cell, CellComplex, ConstructibleSet, Expr, Hyperplane, Sign};
use crate::error::{Limits, Result};
use crate::exactq::{gauss_solve, to_qvec, LinearProgram, QMat, QVec, Rat, Sense};
use crate::polyhedron::HPolyhedron;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EulerPair {
    pub chi: i64,
    pub chi_b: i64,
}

/// Sum of `(-1)^dim` over the cells of `cc` that lie in `set`. The complex
/// must refine the set's own arrangement.
pub fn chi_on_complex(cc: &CellComplex, set: &ConstructibleSet) -> i64 {
    cc.cells
        .iter()
        .filter(|c| set.expr().eval(&c.witness))
        .map(|c| c.euler())
        .sum()
}

pub fn chi(set: &ConstructibleSet) -> Result<i64> {
    chi_with(set, &Limits::default())
}

pub fn chi_with(set: &ConstructibleSet, limits: &Limits) -> Result<i64> {
    let cc = cell_complex_with(set.dim(), &set.hyperplanes(), limits)?;
    Ok(chi_on_complex(&cc, set))
}

pub fn chi_b(set: &ConstructibleSet) -> Result<i64> {
    chi_b_with(set, &Limits::default())
}

/// `chi(set ∩ [-γ, γ]ⁿ)` for `γ ≥ γ*`, summed cell by cell: see
/// [`chi_b_of_cell`].
pub fn chi_b_with(set: &ConstructibleSet, limits: &Limits) -> Result<i64> {
    let cc = cell_complex_with(set.dim(), &set.hyperplanes(), limits)?;
    Ok(chi_b_on_complex(&cc, set))
}

pub fn chi_b_on_complex(cc: &CellComplex, set: &ConstructibleSet) -> i64 {
    let ell = lineality(cc);
    cc.cells
        .iter()
        .filter(|c| set.expr().eval(&c.witness))
        .map(|c| chi_b_of_cell(cc, c, ell))
        .sum()
}

/// Dimension of the directions parallel to every hyperplane; the closure of
/// each cell has exactly this lineality space.
fn lineality(cc: &CellComplex) -> usize {
    let normals: Vec<QVec> = cc.hyperplanes.iter().map(|h| to_qvec(&h.a)).collect();
    cc.dim - crate::exactq::rank(&normals, cc.dim)
}

/// For a relatively open cell `σ` of dimension `d` whose closure has
/// lineality `ℓ`, and `γ` large, `σ ∩ [-γ, γ]ⁿ` has Euler characteristic
/// `(-1)^{d-ℓ}` when the closure is bounded modulo its lineality space and
/// 0 otherwise. This is the face sum `Σ_F (-1)^{d - dim F}` of the closure
/// (every nonempty closed polyhedron meets a large box in a contractible
/// compact set) combined with Euler's relation for its faces.
pub fn chi_b_of_cell(cc: &CellComplex, cell: &Cell, ell: usize) -> i64 {
    // rec(σ̄) = Lin iff no recession direction moves off a hyperplane
    let n = cc.dim;
    let mut lp = LinearProgram::new(n);
    let mut objective = vec![Rat::zero(); n];
    for (h, s) in cc.hyperplanes.iter().zip(&cell.signs) {
        let a = to_qvec(&h.a);
        match s {
            Sign::Zero => {
                lp.eq(a, Rat::zero()).expect("width");
            }
            Sign::Pos | Sign::Neg => {
                let a: QVec = if *s == Sign::Neg { a.iter().map(|x| -x).collect() } else { a };
                for (o, x) in objective.iter_mut().zip(&a) {
                    *o += x;
                }
                lp.ge(a, Rat::zero()).expect("width");
            }
        }
    }
    lp.ge(objective.iter().map(|x| -x).collect(), -Rat::one()).expect("width");
    let bounded = lp
        .optimize(&objective, Sense::Maximize)
        .expect("width")
        .value()
        .is_some_and(Zero::is_zero);
    if bounded {
        sign_power(cell.dim - ell)
    } else {
        0
    }
}

/// `chi(set ∩ [-γ, γ]ⁿ)` by clipping to the box. The cap applies to the
/// set's own hyperplanes; the `2n` box faces come on top.
pub fn chi_b_at(set: &ConstructibleSet, gamma: &Rat, limits: &Limits) -> Result<i64> {
    let n = set.dim();
    limits.check_hyperplanes(set.hyperplanes().len())?;
    let widened = Limits {
        max_hyperplanes: limits.max_hyperplanes + 2 * n,
        ..*limits
    };
    chi_with(&clip_to_box(set, gamma), &widened)
}

pub fn euler_pair(set: &ConstructibleSet) -> Result<EulerPair> {
    euler_pair_with(set, &Limits::default())
}

pub fn euler_pair_with(set: &ConstructibleSet, limits: &Limits) -> Result<EulerPair> {
    let cc = cell_complex_with(set.dim(), &set.hyperplanes(), limits)?;
    Ok(EulerPair {
        chi: chi_on_complex(&cc, set),
        chi_b: chi_b_on_complex(&cc, set),
    })
}

pub fn clip_to_box(set: &ConstructibleSet, gamma: &Rat) -> ConstructibleSet {
    let n = set.dim();
    let mut parts = vec![set.expr().clone()];
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut a = vec![0.into(); n];
            a[i] = sign.into();
            parts.push(Expr::Atom(Atom {
                a,
                b: -gamma.clone(),
                strict: false,
            }));
        }
    }
    ConstructibleSet::new(n, Expr::and(parts)).expect("box atoms share the dimension")
}

/// A box half-width beyond which `chi(C ∩ [-γ, γ]ⁿ)` no longer changes.
///
/// The combinatorics of the arrangement together with the box faces
/// `xᵢ = ±γ` can only change at values of γ where some flat of the
/// arrangement meets a set of box faces in a single point. Those values
/// are the γ-coordinates of the vertices of the lifted arrangement in
/// `(x, γ)`-space formed by the hyperplanes and the planes `xᵢ = ±γ`;
/// this includes `max |coordinate|` over the arrangement's own vertices.
/// The result is one more than the largest such value, and at least 1.
pub fn gamma_star(dim: usize, hyperplanes: &[Hyperplane]) -> Rat {
    let n = dim;
    let mut lifted: Vec<(QVec, Rat)> = hyperplanes
        .iter()
        .map(|h| {
            let mut a = to_qvec(&h.a);
            a.push(Rat::zero());
            (a, h.b.clone())
        })
        .collect();
    let first_box = lifted.len();
    for i in 0..n {
        for s in [-1i64, 1] {
            let mut a = vec![Rat::zero(); n + 1];
            a[i] = Rat::one();
            a[n] = Rat::from_integer(s.into());
            lifted.push((a, Rat::zero()));
        }
    }
    let mut best = Rat::zero();
    let mut pick = Vec::with_capacity(n + 1);
    subsets(lifted.len(), n + 1, 0, &mut pick, &mut |idx| {
        if idx.iter().all(|&i| i < first_box) {
            return;
        }
        let rows: Vec<QVec> = idx.iter().map(|&i| lifted[i].0.clone()).collect();
        let rhs: Vec<Rat> = idx.iter().map(|&i| lifted[i].1.clone()).collect();
        let m = QMat::new(n + 1, rows).expect("lifted width");
        let sol = gauss_solve(&m, &rhs).expect("square system");
        if let (Some(x), true) = (sol.particular, sol.nullspace.is_empty()) {
            let g = x[n].abs();
            if g > best {
                best = g;
            }
        }
    });
    best + Rat::one()
}

fn subsets(total: usize, k: usize, start: usize, pick: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..total {
        if total - i < k - pick.len() {
            break;
        }
        pick.push(i);
        subsets(total, k, i + 1, pick, f);
        pick.pop();
    }
}

/// Closed form for a single polyhedron: empty → (0, 0); nonempty with
/// `rec(P) = Lin(P)` (bounded after quotienting by the lineality space) →
/// `((-1)^ℓ, 1)`; any other nonempty polyhedron → (0, 1).
pub fn chi_polyhedron_closed_form(p: &HPolyhedron) -> Result<EulerPair> {
    if p.is_empty() {
        return Ok(EulerPair { chi: 0, chi_b: 0 });
    }
    let rec = p.recession()?;
    let chi = if rec.rec.dimension()? == rec.ell { sign_power(rec.ell) } else { 0 };
    Ok(EulerPair { chi, chi_b: 1 })
}

pub(crate) fn sign_power(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructible::parse_constructible;
    use crate::exactq::rat;
    use crate::polyhedron::parse_polyhedron;

    fn set(text: &str) -> ConstructibleSet {
        parse_constructible(text).unwrap()
    }

    #[test]
    fn generator_values() {
        assert_eq!(euler_pair(&set("dim 1; x1 >= 0")).unwrap(), EulerPair { chi: 0, chi_b: 1 });
        assert_eq!(euler_pair(&set("dim 1; x1 > 0")).unwrap(), EulerPair { chi: -1, chi_b: 0 });
    }

    #[test]
    fn whole_space_alternates() {
        for n in 0..5 {
            let c = ConstructibleSet::whole_space(n);
            assert_eq!(chi(&c).unwrap(), sign_power(n));
            assert_eq!(chi_b(&c).unwrap(), 1);
        }
    }

    #[test]
    fn half_open_interval_and_punctured_line() {
        assert_eq!(chi(&set("dim 1; x1 >= 0 & x1 < 1")).unwrap(), 0);
        let punctured = set("dim 1; !(x1 = 0)");
        assert_eq!(chi(&punctured).unwrap(), -2);
        assert_eq!(chi_b(&punctured).unwrap(), 0);
    }

    #[test]
    fn parallel_lines_need_a_large_enough_box() {
        // no vertices at all; the line sits outside the unit box
        let line = set("dim 2; x2 = 5");
        assert_eq!(euler_pair(&line).unwrap(), EulerPair { chi: -1, chi_b: 1 });
        assert!(gamma_star(2, &line.hyperplanes()) > rat(5));
    }

    #[test]
    fn gamma_star_is_stable_under_doubling() {
        for text in [
            "dim 2; x1 + x2 > 3 & x1 - x2 <= 7/2",
            "dim 2; x1 = 5 | x2 < -3",
            "dim 3; x1 + x2 + x3 >= 1 & !(x3 = 2)",
        ] {
            let c = set(text);
            let g = gamma_star(c.dim(), &c.hyperplanes());
            let l = Limits::default();
            assert_eq!(
                chi_b_at(&c, &g, &l).unwrap(),
                chi_b_at(&c, &(&g * rat(2)), &l).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn closed_form_examples() {
        let half_plane = parse_polyhedron("1 0 >= 0", None).unwrap();
        assert_eq!(chi_polyhedron_closed_form(&half_plane).unwrap(), EulerPair { chi: 0, chi_b: 1 });
        let line = parse_polyhedron("0 1 >= 0\n0 -1 >= 0", None).unwrap();
        assert_eq!(chi_polyhedron_closed_form(&line).unwrap(), EulerPair { chi: -1, chi_b: 1 });
        let space = HPolyhedron::whole_space(3);
        assert_eq!(chi_polyhedron_closed_form(&space).unwrap(), EulerPair { chi: -1, chi_b: 1 });
        let empty = parse_polyhedron("1 >= 1\n-1 >= 0", None).unwrap();
        assert_eq!(chi_polyhedron_closed_form(&empty).unwrap(), EulerPair { chi: 0, chi_b: 0 });
        for p in [half_plane, line, space, empty] {
            let c = ConstructibleSet::from_polyhedron(&p);
            assert_eq!(euler_pair(&c).unwrap(), chi_polyhedron_closed_form(&p).unwrap());
        }
    }
}
