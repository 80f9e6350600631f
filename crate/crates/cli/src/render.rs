use num_traits::ToPrimitive;
use serde_json::{json, Value};

use polygroth::constructible::Hyperplane;
use polygroth::exactq::{fmt_rat, IVec, Rat};
use polygroth::polyhedron::{Face, HPolyhedron};
use polygroth::Error;

pub fn qvec_text(x: &[Rat]) -> String {
    let parts: Vec<String> = x.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

/// Rationals travel as strings such as `"-3/2"`.
pub fn qvec_json(x: &[Rat]) -> Value {
    json!(x.iter().map(fmt_rat).collect::<Vec<_>>())
}

fn ints(a: &IVec) -> Result<Vec<i64>, Error> {
    a.iter()
        .map(|c| c.to_i64().ok_or_else(|| Error::Resource("coefficient too large for JSON output".into())))
        .collect()
}

fn row_json(a: &IVec, b: &Rat) -> Result<Value, Error> {
    Ok(json!({ "a": ints(a)?, "b": fmt_rat(b) }))
}

pub fn rows_json(p: &HPolyhedron) -> Result<Vec<Value>, Error> {
    p.rows().iter().map(|r| row_json(&r.a, &r.b)).collect()
}

pub fn hyperplane_json(h: &Hyperplane) -> Result<Value, Error> {
    row_json(&h.a, &h.b)
}

pub fn face_json(index: usize, f: &Face) -> Value {
    json!({
        "index": index,
        "dim": f.dim,
        "tight": f.tight,
        "witness": qvec_json(&f.witness),
        "relatively_bounded": f.is_relatively_bounded(),
    })
}

/// The rows of a polyhedron, one per line; the whole space prints as such.
pub fn poly_text(p: &HPolyhedron, indent: &str) -> String {
    if p.rows().is_empty() {
        return format!("{indent}(all of R^{})\n", p.ambient_dim());
    }
    p.rows().iter().map(|r| format!("{indent}{r}\n")).collect()
}
