//! Brianchon–Gram decompositions of possibly unbounded polyhedra:
//! `𝟏_P = Σ_{F ∈ B(P)} (-1)^{dim F + ℓ(P)} 𝟏_{T_F P}`, where `B(P)` is the
//! set of nonempty relatively bounded faces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructible::{functions_equal_with, ConstructibleSet, Expr, SignedPolyCombo};
use crate::error::{Error, Limits, Result};
use crate::euler::{chi_with, sign_power};
use crate::exactq::{ratio, QVec, Rat};
use crate::polyhedron::{Face, HPolyhedron};

#[derive(Debug, Clone)]
pub struct BGTerm {
    pub face: Face,
    pub sign: i64,
    pub cone: HPolyhedron,
}

#[derive(Debug, Clone)]
pub struct BGDecomposition {
    pub parent: HPolyhedron,
    pub ell: usize,
    pub terms: Vec<BGTerm>,
}

impl BGDecomposition {
    /// `Σ sign · 𝟏_{T_F P}` as a signed combination.
    pub fn to_combo(&self) -> Result<SignedPolyCombo> {
        let mut f = SignedPolyCombo::zero(self.parent.ambient_dim());
        for t in &self.terms {
            f.add_term(&t.cone, t.sign)?;
        }
        Ok(f)
    }
}

pub fn bg_decompose(p: &HPolyhedron) -> Result<BGDecomposition> {
    bg_decompose_with(p, &Limits::default())
}

pub fn bg_decompose_with(p: &HPolyhedron, limits: &Limits) -> Result<BGDecomposition> {
    if p.is_empty() {
        return Ok(BGDecomposition {
            parent: p.clone(),
            ell: 0,
            terms: Vec::new(),
        });
    }
    let ell = p.recession()?.ell;
    let terms = relatively_bounded_faces(p, limits)?
        .into_iter()
        .map(|face| BGTerm {
            sign: sign_power(face.dim + ell),
            cone: face.tangent_cone(),
            face,
        })
        .collect();
    Ok(BGDecomposition {
        parent: p.clone(),
        ell,
        terms,
    })
}

fn relatively_bounded_faces(p: &HPolyhedron, limits: &Limits) -> Result<Vec<Face>> {
    Ok(p.faces_with(limits)?
        .into_iter()
        .filter(Face::is_relatively_bounded)
        .collect())
}

pub fn bg_verify(p: &HPolyhedron) -> Result<bool> {
    bg_verify_with(p, &Limits::default())
}

pub fn bg_verify_with(p: &HPolyhedron, limits: &Limits) -> Result<bool> {
    let d = bg_decompose_with(p, limits)?;
    verify_decomposition(&d, limits)
}

/// Checks a (possibly hand-edited) decomposition against `𝟏_P`: a cheap
/// sampled comparison first, then the exact cell-by-cell one.
pub fn verify_decomposition(d: &BGDecomposition, limits: &Limits) -> Result<bool> {
    let lhs = SignedPolyCombo::indicator(&d.parent)?;
    let rhs = d.to_combo()?;
    for x in sample_points(d) {
        if lhs.eval(&x)? != rhs.eval(&x)? {
            return Ok(false);
        }
    }
    functions_equal_with(&lhs, &rhs, limits)
}

fn sample_points(d: &BGDecomposition) -> Vec<QVec> {
    let n = d.parent.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6267);
    let mut pts: Vec<QVec> = d.terms.iter().map(|t| t.face.witness.clone()).collect();
    for _ in 0..16 {
        pts.push((0..n).map(|_| ratio(rng.gen_range(-40..=40), rng.gen_range(1..=4))).collect());
    }
    pts
}

fn union_of_faces<'a>(n: usize, faces: impl Iterator<Item = &'a Face>) -> ConstructibleSet {
    let parts = faces
        .map(|f| ConstructibleSet::from_polyhedron(&f.as_polyhedron()).expr().clone())
        .collect();
    ConstructibleSet::new(n, Expr::or(parts)).expect("faces share the ambient dimension")
}

/// `χ(U_b)` for `U_b` the union of the relatively bounded faces.
pub fn bounded_union_chi(p: &HPolyhedron) -> Result<i64> {
    bounded_union_chi_with(p, &Limits::default())
}

pub fn bounded_union_chi_with(p: &HPolyhedron, limits: &Limits) -> Result<i64> {
    if p.is_empty() {
        return Err(Error::domain("the polyhedron is empty"));
    }
    let faces = relatively_bounded_faces(p, limits)?;
    chi_with(&union_of_faces(p.ambient_dim(), faces.iter()), limits)
}

/// `χ(U_v)` for `U_v` the union of the relatively bounded faces visible
/// from the exterior point `x`.
pub fn visible_union_chi(p: &HPolyhedron, x: &[Rat]) -> Result<i64> {
    visible_union_chi_with(p, x, &Limits::default())
}

pub fn visible_union_chi_with(p: &HPolyhedron, x: &[Rat], limits: &Limits) -> Result<i64> {
    Error::check_dim(p.ambient_dim(), x.len())?;
    if p.is_empty() {
        return Err(Error::domain("the polyhedron is empty"));
    }
    if p.contains(x)? {
        return Err(Error::domain("the point lies in the polyhedron"));
    }
    let mut visible = Vec::new();
    for f in relatively_bounded_faces(p, limits)? {
        if f.is_visible_from(x)? {
            visible.push(f);
        }
    }
    chi_with(&union_of_faces(p.ambient_dim(), visible.iter()), limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::qvec;
    use crate::polyhedron::parse_polyhedron;

    fn poly(text: &str) -> HPolyhedron {
        parse_polyhedron(text, None).unwrap()
    }

    // x sees the face iff the segment from a relative-interior point of F
    // towards x leaves P at once; the step is small enough to stay inside
    // every row that is slack at the witness.
    fn visible_by_segment(face: &Face, x: &[Rat]) -> bool {
        let y = &face.witness;
        let dir: QVec = x.iter().zip(y).map(|(a, b)| a - b).collect();
        let mut eps = Rat::from_integer(1.into());
        for r in face.parent().rows() {
            let rate = crate::exactq::idot(&r.a, &dir);
            let slack = r.slack(y);
            if rate < Rat::from_integer(0.into()) && slack > Rat::from_integer(0.into()) {
                eps = eps.min(slack / -rate / Rat::from_integer(2.into()));
            }
        }
        let probe: QVec = y.iter().zip(&dir).map(|(a, d)| a + d * &eps).collect();
        !face.parent().contains(&probe).unwrap()
    }

    #[test]
    fn visibility_matches_segment_oracle() {
        let p = poly("1 0 >= 0\n0 1 >= 0\n-1 -1 >= -3");
        for face in p.faces().unwrap() {
            for x in [[-1, -1], [4, 0], [2, 2], [-1, 1], [1, -5], [5, 5]] {
                let x = qvec(&x);
                assert_eq!(face.is_visible_from(&x).unwrap(), visible_by_segment(&face, &x));
            }
        }
    }

    fn signs(d: &BGDecomposition) -> Vec<(usize, i64)> {
        d.terms.iter().map(|t| (t.face.dim, t.sign)).collect()
    }

    #[test]
    fn unit_interval() {
        let d = bg_decompose(&poly("1 >= 0\n-1 >= -1")).unwrap();
        assert_eq!(d.ell, 0);
        assert_eq!(signs(&d), vec![(0, 1), (0, 1), (1, -1)]);
        assert!(d.terms[2].cone.rows().is_empty());
        assert!(bg_verify(&d.parent).unwrap());
    }

    #[test]
    fn quadrant_has_one_term() {
        let p = poly("1 0 >= 0\n0 1 >= 0");
        let d = bg_decompose(&p).unwrap();
        assert_eq!(signs(&d), vec![(0, 1)]);
        assert_eq!(d.terms[0].cone.canonical().unwrap(), p.canonical().unwrap());
        assert!(bg_verify(&p).unwrap());
    }

    #[test]
    fn strip() {
        let p = poly("0 1 >= 0\n0 -1 >= -1");
        let d = bg_decompose(&p).unwrap();
        assert_eq!(d.ell, 1);
        assert_eq!(signs(&d), vec![(1, 1), (1, 1), (2, -1)]);
        assert!(bg_verify(&p).unwrap());
    }

    #[test]
    fn flipped_sign_is_rejected() {
        let mut d = bg_decompose(&poly("1 >= 0\n-1 >= -1")).unwrap();
        d.terms[2].sign = 1;
        assert!(!verify_decomposition(&d, &Limits::default()).unwrap());
    }

    #[test]
    fn whole_space_and_empty() {
        let d = bg_decompose(&HPolyhedron::whole_space(3)).unwrap();
        assert_eq!(signs(&d), vec![(3, 1)]);
        assert!(bg_verify(&HPolyhedron::whole_space(3)).unwrap());
        let e = poly("1 >= 1\n-1 >= 0");
        assert!(bg_decompose(&e).unwrap().terms.is_empty());
        assert!(bg_verify(&e).unwrap());
    }

    #[test]
    fn union_characteristics() {
        let sq = poly("1 0 >= 0\n-1 0 >= -1\n0 1 >= 0\n0 -1 >= -1");
        assert_eq!(bounded_union_chi(&sq).unwrap(), 1);
        let quadrant = poly("1 0 >= 0\n0 1 >= 0");
        assert_eq!(visible_union_chi(&quadrant, &qvec(&[-1, 3])).unwrap(), 1);
        let strip = poly("0 1 >= 0\n0 -1 >= -1");
        assert_eq!(visible_union_chi(&strip, &qvec(&[0, -1])).unwrap(), -1);
        assert_eq!(bounded_union_chi(&strip).unwrap(), -1);
        assert!(visible_union_chi(&sq, &qvec(&[0, 0])).is_err());
    }
}
