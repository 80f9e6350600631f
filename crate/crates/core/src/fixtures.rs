//! Fixed and seeded-random test corpora shared by the verification suite,
//! the integration tests and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructible::{Atom, ConstructibleSet, Expr};
use crate::exactq::{ratio, Rat};
use crate::polyhedron::{HPolyhedron, Row};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn poly(dim: usize, rows: &[(&[i64], Rat)]) -> HPolyhedron {
    let rows = rows
        .iter()
        .map(|(a, b)| Row::from_ints(a, b.clone()).expect("nonzero row"))
        .collect();
    HPolyhedron::new(dim, rows).expect("consistent widths")
}

fn r(n: i64) -> Rat {
    ratio(n, 1)
}

/// `[0,1]ⁿ`.
pub fn cube(n: usize) -> HPolyhedron {
    let mut rows = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        rows.push(Row::from_ints(&e, r(0)).unwrap());
        e[i] = -1;
        rows.push(Row::from_ints(&e, r(-1)).unwrap());
    }
    HPolyhedron::new(n, rows).unwrap()
}

/// `{x ≥ 0, Σx ≤ 1}`.
pub fn simplex(n: usize) -> HPolyhedron {
    let mut rows = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        rows.push(Row::from_ints(&e, r(0)).unwrap());
    }
    rows.push(Row::from_ints(&vec![-1; n], r(-1)).unwrap());
    HPolyhedron::new(n, rows).unwrap()
}

/// The nonnegative orthant of `ℝⁿ`.
pub fn orthant(n: usize) -> HPolyhedron {
    let rows = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            Row::from_ints(&e, r(0)).unwrap()
        })
        .collect();
    HPolyhedron::new(n, rows).unwrap()
}

pub fn strip() -> HPolyhedron {
    poly(2, &[(&[0, 1], r(0)), (&[0, -1], r(-1))])
}

pub fn half_line() -> HPolyhedron {
    poly(1, &[(&[1], r(0))])
}

/// At least 30 named polyhedra: polytopes up to dimension 4, pointed and
/// shifted cones, half-spaces, strips, affine subspaces, whole spaces,
/// products and the empty set.
pub fn standard_polyhedra() -> Vec<(String, HPolyhedron)> {
    let line = HPolyhedron::whole_space(1);
    let triangle = poly(2, &[(&[1, 0], r(0)), (&[0, 1], r(-1)), (&[-2, -1], r(-4))]);
    let mut out: Vec<(&str, HPolyhedron)> = vec![
        ("empty_1", poly(1, &[(&[1], r(1)), (&[-1], r(0))])),
        ("empty_2", poly(2, &[(&[1, 1], r(1)), (&[-1, -1], r(0))])),
        ("point_1", poly(1, &[(&[1], r(0)), (&[-1], r(0))])),
        ("point_2", poly(2, &[(&[2, 0], r(1)), (&[-2, 0], r(-1)), (&[0, 1], r(-1)), (&[0, -1], r(1))])),
        ("interval", cube(1)),
        ("square", cube(2)),
        ("cube_3", cube(3)),
        ("cube_4", cube(4)),
        ("simplex_2", simplex(2)),
        ("simplex_3", simplex(3)),
        ("simplex_4", simplex(4)),
        ("triangle", triangle.clone()),
        ("cross_2", poly(2, &[(&[1, 1], r(-1)), (&[1, -1], r(-1)), (&[-1, 1], r(-1)), (&[-1, -1], r(-1))])),
        (
            "pyramid",
            poly(3, &[(&[0, 0, 1], r(0)), (&[1, 0, 1], r(-1)), (&[-1, 0, 1], r(-1)), (&[0, 1, 1], r(-1)), (&[0, -1, 1], r(-1))]),
        ),
        ("half_line", half_line()),
        ("quadrant", orthant(2)),
        ("octant", orthant(3)),
        ("wedge", poly(2, &[(&[-1, 1], r(0)), (&[1, 1], r(0))])),
        ("shifted_quadrant", poly(2, &[(&[1, 0], r(1)), (&[0, 1], r(2))])),
        ("shifted_cone_3", poly(3, &[(&[1, 1, 0], ratio(1, 2)), (&[0, 1, 1], r(-1)), (&[1, 0, 1], r(0))])),
        ("staircase", poly(2, &[(&[1, 0], r(0)), (&[0, 1], r(0)), (&[1, 1], r(1))])),
        ("half_plane", poly(2, &[(&[1, 0], r(0))])),
        ("half_space_3", poly(3, &[(&[1, 1, 1], r(1))])),
        ("strip", strip()),
        ("slab_3", poly(3, &[(&[1, 1, 0], r(0)), (&[-1, -1, 0], r(-2))])),
        ("line_2", poly(2, &[(&[0, 1], r(5)), (&[0, -1], r(-5))])),
        ("plane_3", poly(3, &[(&[1, -1, 0], r(0)), (&[-1, 1, 0], r(0))])),
        ("line_3", poly(3, &[(&[1, -1, 0], r(0)), (&[-1, 1, 0], r(0)), (&[0, 1, -1], r(1)), (&[0, -1, 1], r(-1))])),
        ("whole_1", HPolyhedron::whole_space(1)),
        ("whole_2", HPolyhedron::whole_space(2)),
        ("whole_3", HPolyhedron::whole_space(3)),
        ("interval_x_half_line", cube(1).product(&half_line())),
        ("strip_x_half_line", strip().product(&half_line())),
        ("triangle_prism", triangle.product(&line)),
        ("half_line_x_line", half_line().product(&line)),
        ("quadrant_x_line", orthant(2).product(&line)),
    ];
    out.sort_by(|a, b| a.0.cmp(b.0));
    out.into_iter().map(|(n, p)| (n.to_string(), p)).collect()
}

/// Seeded random polyhedra with small integer normals and rational
/// right-hand sides, in dimension at most 3.
pub fn random_polyhedra(count: usize, seed: u64) -> Vec<(String, HPolyhedron)> {
    let mut g = rng(seed);
    (0..count)
        .map(|i| {
            let n = g.gen_range(1..=3);
            let m = g.gen_range(1..=n + 2);
            let rows = (0..m).map(|_| random_row(&mut g, n)).collect();
            (format!("random_{i:02}"), HPolyhedron::new(n, rows).unwrap())
        })
        .collect()
}

fn random_normal(g: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    loop {
        let a: Vec<i64> = (0..n).map(|_| g.gen_range(-2..=2)).collect();
        if a.iter().any(|&x| x != 0) {
            return a;
        }
    }
}

fn random_rhs(g: &mut ChaCha8Rng) -> Rat {
    ratio(g.gen_range(-3..=3), g.gen_range(1..=2))
}

fn random_row(g: &mut ChaCha8Rng, n: usize) -> Row {
    Row::from_ints(&random_normal(g, n), random_rhs(g)).unwrap()
}

fn random_atom(g: &mut ChaCha8Rng, n: usize) -> Atom {
    let row = random_row(g, n);
    Atom::new(row.a, row.b, g.gen_bool(0.5)).unwrap()
}

/// A random Boolean combination of exactly `atoms` atoms.
pub fn random_expr(g: &mut ChaCha8Rng, n: usize, atoms: usize) -> Expr {
    let mut pool: Vec<Expr> = (0..atoms.max(1)).map(|_| Expr::Atom(random_atom(g, n))).collect();
    while pool.len() > 1 {
        pool.shuffle(g);
        let mut x = pool.pop().unwrap();
        let mut y = pool.pop().unwrap();
        if g.gen_bool(0.3) {
            x = Expr::not(x);
        }
        if g.gen_bool(0.3) {
            y = Expr::not(y);
        }
        pool.push(if g.gen_bool(0.5) { Expr::and(vec![x, y]) } else { Expr::or(vec![x, y]) });
    }
    let e = pool.pop().unwrap();
    if g.gen_bool(0.2) {
        Expr::not(e)
    } else {
        e
    }
}

pub fn random_set(g: &mut ChaCha8Rng, n: usize, atoms: usize) -> ConstructibleSet {
    ConstructibleSet::new(n, random_expr(g, n, atoms)).unwrap()
}

/// Pairs `D ⊆ C` in dimension at most 3 using at most 8 atoms in total.
pub fn random_nested_pairs(count: usize, seed: u64) -> Vec<(ConstructibleSet, ConstructibleSet)> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| {
            let n = g.gen_range(1..=3);
            let k = g.gen_range(1..=5);
            let c = random_set(&mut g, n, k);
            let j = g.gen_range(1..=(8 - k).min(3));
            let e = random_set(&mut g, n, j);
            let d = c.and(&e).unwrap();
            (c, d)
        })
        .collect()
}

/// Pairs `(C, C′)` whose product lives in dimension at most 3.
pub fn random_product_pairs(count: usize, seed: u64) -> Vec<(ConstructibleSet, ConstructibleSet)> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| {
            let m = g.gen_range(1..=2);
            let k = g.gen_range(1..=3 - m);
            let a = g.gen_range(1..=4);
            let b = g.gen_range(1..=4);
            (random_set(&mut g, m, a), random_set(&mut g, k, b))
        })
        .collect()
}

/// Random constructible sets in dimension at most 3.
pub fn random_sets(count: usize, seed: u64) -> Vec<ConstructibleSet> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| {
            let n = g.gen_range(1..=3);
            let k = g.gen_range(1..=6);
            random_set(&mut g, n, k)
        })
        .collect()
}

fn random_line_atom(g: &mut ChaCha8Rng) -> Expr {
    let a = *[-2i64, -1, 1, 2].choose(g).unwrap();
    let b = ratio(g.gen_range(-4..=4), g.gen_range(1..=2));
    Expr::Atom(Atom::new(vec![a.into()], b, g.gen_bool(0.5)).unwrap())
}

/// Random subsets of the line; equalities appear so that isolated points
/// are common.
pub fn random_line_set(g: &mut ChaCha8Rng) -> ConstructibleSet {
    let k = g.gen_range(1..=5);
    let mut pool: Vec<Expr> = (0..k)
        .map(|_| {
            let x = random_line_atom(g);
            if g.gen_bool(0.25) {
                // an equality a·x = b
                if let Expr::Atom(at) = &x {
                    let neg = Atom::new(at.a.iter().map(|c| -c).collect(), -at.b.clone(), false).unwrap();
                    let pos = Atom::new(at.a.clone(), at.b.clone(), false).unwrap();
                    return Expr::and(vec![Expr::Atom(pos), Expr::Atom(neg)]);
                }
            }
            x
        })
        .collect();
    while pool.len() > 1 {
        pool.shuffle(g);
        let x = pool.pop().unwrap();
        let mut y = pool.pop().unwrap();
        if g.gen_bool(0.3) {
            y = Expr::not(y);
        }
        pool.push(if g.gen_bool(0.5) { Expr::and(vec![x, y]) } else { Expr::or(vec![x, y]) });
    }
    ConstructibleSet::new(1, pool.pop().unwrap()).unwrap()
}

/// Disjoint pairs of subsets of the line.
pub fn random_disjoint_line_pairs(count: usize, seed: u64) -> Vec<(ConstructibleSet, ConstructibleSet)> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| {
            let c = random_line_set(&mut g);
            let d = random_line_set(&mut g).diff(&c).unwrap();
            (c, d)
        })
        .collect()
}
