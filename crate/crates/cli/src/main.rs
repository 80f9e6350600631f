mod render;

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use polygroth::briangram::{bg_decompose_with, bounded_union_chi_with, verify_decomposition, visible_union_chi_with};
use polygroth::checks;
use polygroth::constructible::{cell_complex_with, parse_constructible, ConstructibleSet};
use polygroth::euler::euler_pair_with;
use polygroth::exactq::{parse_rat, QVec};
use polygroth::grothendieck::{class_of_with, ungraded};
use polygroth::motivic::{in_kernel_psi, parse_semialg, psi, semialg_class_with};
use polygroth::onedim::{canonicalize, chi_gamma_canonical, SubgroupQ};
use polygroth::polyhedron::{parse_polyhedron, HPolyhedron};
use polygroth::{Error, Limits};

use render::{face_json, poly_text, qvec_json, qvec_text, rows_json};

#[derive(Parser)]
#[command(name = "polygroth", version, about = "Exact Euler characteristics, Grothendieck classes and Brianchon-Gram decompositions of rational polyhedra")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on distinct hyperplanes in an arrangement.
    #[arg(long, global = true, default_value_t = 14)]
    max_hyperplanes: usize,
    /// Cap on the ambient dimension.
    #[arg(long, global = true, default_value_t = 6)]
    max_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Input file, or `-` for standard input.
    path: Option<String>,
    /// Inline input text.
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
}

impl Input {
    fn text(&self) -> Result<String, Error> {
        match (&self.expr, self.path.as_deref()) {
            (Some(e), _) => Ok(e.clone()),
            (None, Some("-")) => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Usage(format!("reading standard input: {e}")))?;
                Ok(s)
            }
            (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Error::Usage(format!("reading {p}: {e}"))),
            (None, None) => Err(Error::Usage("no input given".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the nonempty faces of a polyhedron.
    Faces(Input),
    /// Recession cone and lineality space of a polyhedron.
    Recession(Input),
    /// Tangent cone of a polyhedron along one of its faces.
    Tangent {
        #[command(flatten)]
        input: Input,
        /// Face index as listed by `faces`.
        #[arg(long)]
        face: usize,
    },
    /// Brianchon-Gram decomposition over the relatively bounded faces.
    Bg {
        #[command(flatten)]
        input: Input,
        /// Check the identity exactly on arrangement cells.
        #[arg(long)]
        verify: bool,
        /// Exterior point `q1,...,qn`; reports the visible union.
        #[arg(long, allow_hyphen_values = true)]
        exterior: Option<String>,
    },
    /// Euler characteristic and bounded Euler characteristic.
    Chi(Input),
    /// Class in Z[u,v]/(uv).
    Class(Input),
    /// Image in the ungraded ring Z x Z.
    Ungraded(Input),
    /// Weight invariant of a subset of the line over a subgroup of Q.
    ChiGamma {
        #[command(flatten)]
        input: Input,
        /// `div` for Q, or a positive rational generator `c` for cZ.
        #[arg(long, default_value = "div")]
        gamma: String,
    },
    /// Cells of the arrangement of a constructible set.
    Cells(Input),
    /// Class, motivic volume and kernel membership of a semi-algebraic set.
    Motivic(Input),
    /// Run the named verification checks.
    VerifySuite {
        /// Glob over check names, e.g. `bg_*`.
        #[arg(long)]
        filter: Option<String>,
    },
}

struct Ctx {
    json: bool,
    limits: Limits,
}

/// What a command prints and whether it counts as a failure.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        json: cli.json,
        limits: Limits {
            max_dim: cli.max_dim,
            max_hyperplanes: cli.max_hyperplanes,
            ..Limits::default()
        },
    };
    match run(&ctx, &cli.command) {
        Ok(r) => {
            if ctx.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Usage(_) | Error::Unsupported(_) | Error::DimensionMismatch { .. } | Error::DegenerateConstraint => 2,
        Error::Resource(_) => 3,
        Error::Domain(_) | Error::Invariant(_) => 1,
    }
}

/// A polyhedron from the row format, or from a conjunction of closed
/// atoms in the set language when the text uses variables.
fn read_polyhedron(ctx: &Ctx, input: &Input) -> Result<HPolyhedron, Error> {
    let text = input.text()?;
    let p = if text.trim_start().starts_with("dim") && text.contains('x') {
        let set = parse_constructible(&text)?;
        set.as_polyhedron()
            .ok_or_else(|| Error::Usage("expected a conjunction of closed inequalities".into()))?
    } else {
        parse_polyhedron(&text, None)?
    };
    ctx.limits.check_dim(p.ambient_dim())?;
    ctx.limits.check_rows(p.rows().len())?;
    Ok(p)
}

fn read_set(ctx: &Ctx, input: &Input) -> Result<ConstructibleSet, Error> {
    let set = parse_constructible(&input.text()?)?;
    ctx.limits.check_dim(set.dim())?;
    Ok(set)
}

fn parse_point(s: &str, n: usize) -> Result<QVec, Error> {
    let x: Option<QVec> = s.split(',').map(parse_rat).collect();
    let x = x.ok_or_else(|| Error::Usage(format!("bad point `{s}`: expected comma-separated rationals")))?;
    if x.len() != n {
        return Err(Error::Usage(format!("point `{s}` has {} coordinates, expected {n}", x.len())));
    }
    Ok(x)
}

fn run(ctx: &Ctx, cmd: &Command) -> Result<Report, Error> {
    let limits = &ctx.limits;
    match cmd {
        Command::Faces(input) => {
            let p = read_polyhedron(ctx, input)?;
            let faces = p.faces_with(limits)?;
            let mut text = format!("{} faces\n", faces.len());
            for (i, f) in faces.iter().enumerate() {
                text += &format!(
                    "[{i}] dim {} tight {:?} witness {}{}\n",
                    f.dim,
                    f.tight,
                    qvec_text(&f.witness),
                    if f.is_relatively_bounded() { " relatively-bounded" } else { "" }
                );
            }
            let json = json!({
                "ambient_dim": p.ambient_dim(),
                "faces": faces.iter().enumerate().map(|(i, f)| face_json(i, f)).collect::<Vec<_>>(),
            });
            Ok(Report::ok(text, json))
        }
        Command::Recession(input) => {
            let p = read_polyhedron(ctx, input)?;
            if p.is_empty() {
                return Err(Error::Domain("the polyhedron is empty".into()));
            }
            let r = p.recession()?;
            let mut text = format!("ell {}\nbounded {}\n", r.ell, p.is_bounded()?);
            for v in &r.lin_basis {
                text += &format!("lineality {}\n", qvec_text(v));
            }
            text += "recession cone\n";
            text += &poly_text(&r.rec, "  ");
            let json = json!({
                "ell": r.ell,
                "bounded": p.is_bounded()?,
                "lineality_basis": r.lin_basis.iter().map(|v| qvec_json(v)).collect::<Vec<_>>(),
                "recession_cone": rows_json(&r.rec)?,
            });
            Ok(Report::ok(text, json))
        }
        Command::Tangent { input, face } => {
            let p = read_polyhedron(ctx, input)?;
            let faces = p.faces_with(limits)?;
            let f = faces
                .get(*face)
                .ok_or_else(|| Error::Usage(format!("face index {face} out of range (0..{})", faces.len())))?;
            let cone = f.tangent_cone();
            let text = format!("face {face} dim {}\n{}", f.dim, poly_text(&cone, ""));
            let json = json!({ "face": face, "face_dim": f.dim, "cone": rows_json(&cone)? });
            Ok(Report::ok(text, json))
        }
        Command::Bg { input, verify, exterior } => {
            let p = read_polyhedron(ctx, input)?;
            let d = bg_decompose_with(&p, limits)?;
            let mut text = format!("ell {}\n{} terms\n", d.ell, d.terms.len());
            let mut terms = Vec::new();
            for t in &d.terms {
                text += &format!("{} face dim {} tight {:?}\n", if t.sign > 0 { "+" } else { "-" }, t.face.dim, t.face.tight);
                text += &poly_text(&t.cone, "    ");
                terms.push(json!({ "sign": t.sign, "face_dim": t.face.dim, "cone": rows_json(&t.cone)? }));
            }
            let mut json = json!({ "ell": d.ell, "terms": terms });
            let mut ok = true;
            if *verify {
                ok = verify_decomposition(&d, limits)?;
                text += &format!("verified {ok}\n");
                json["verified"] = json!(ok);
            }
            if !p.is_empty() {
                let b = bounded_union_chi_with(&p, limits)?;
                text += &format!("chi(bounded union) {b}\n");
                json["bounded_union_chi"] = json!(b);
            }
            if let Some(x) = exterior {
                let x = parse_point(x, p.ambient_dim())?;
                let v = visible_union_chi_with(&p, &x, limits)?;
                text += &format!("chi(visible union from {}) {v}\n", qvec_text(&x));
                json["visible_union_chi"] = json!(v);
            }
            Ok(Report { text, json, ok })
        }
        Command::Chi(input) => {
            let e = euler_pair_with(&read_set(ctx, input)?, limits)?;
            Ok(Report::ok(format!("chi={} chi_b={}\n", e.chi, e.chi_b), json!({ "chi": e.chi, "chi_b": e.chi_b })))
        }
        Command::Class(input) => {
            let set = read_set(ctx, input)?;
            let c = class_of_with(&set, limits)?;
            let terms: Vec<Value> = c.degrees().map(|(n, a, b)| json!({ "degree": n, "u": a, "v": b })).collect();
            let json = json!({ "class": c.to_string(), "constant": c.constant_term(), "terms": terms });
            Ok(Report::ok(format!("{c}\n"), json))
        }
        Command::Ungraded(input) => {
            let set = read_set(ctx, input)?;
            let u = ungraded(&class_of_with(&set, limits)?);
            Ok(Report::ok(format!("{u}\n"), json!({ "chi": u.chi, "chi_b": u.chi_b })))
        }
        Command::ChiGamma { input, gamma } => {
            let g: SubgroupQ = gamma.parse()?;
            let c = canonicalize(&read_set(ctx, input)?)?;
            let v = chi_gamma_canonical(&c, &g);
            let json = json!({ "gamma": g.to_string(), "canonical": c.to_string(), "chi_gamma": v });
            Ok(Report::ok(format!("{v}\n"), json))
        }
        Command::Cells(input) => {
            let set = read_set(ctx, input)?;
            let cc = cell_complex_with(set.dim(), &set.hyperplanes(), limits)?;
            let mut text = format!("{} hyperplanes, {} cells\n", cc.hyperplanes.len(), cc.cells.len());
            let mut cells = Vec::new();
            for c in &cc.cells {
                let inside = set.contains(&c.witness)?;
                text += &format!("[{}] dim {} witness {}{}\n", c.sign_string(), c.dim, qvec_text(&c.witness), if inside { " in" } else { "" });
                cells.push(json!({ "signs": c.sign_string(), "dim": c.dim, "witness": qvec_json(&c.witness), "in_set": inside }));
            }
            let hyperplanes: Vec<Value> = cc.hyperplanes.iter().map(render::hyperplane_json).collect::<Result<_, _>>()?;
            Ok(Report::ok(text, json!({ "dim": cc.dim, "hyperplanes": hyperplanes, "cells": cells })))
        }
        Command::Motivic(input) => {
            let s = parse_semialg(&input.text()?)?;
            ctx.limits.check_dim(s.n)?;
            let c = semialg_class_with(&s, limits)?;
            let p = psi(&c);
            let k = in_kernel_psi(&c);
            let text = format!("class {c}\npsi {p}\nin_kernel {k}\n");
            let json = json!({
                "f": c.f().coeffs(),
                "g": c.g().coeffs(),
                "class": c.to_string(),
                "psi": p.to_string(),
                "in_kernel": k,
            });
            Ok(Report::ok(text, json))
        }
        Command::VerifySuite { filter } => {
            let selected = checks::select(filter.as_deref())?;
            if selected.is_empty() {
                return Err(Error::Usage(format!("no check matches `{}`", filter.as_deref().unwrap_or(""))));
            }
            let outcomes: Vec<_> = selected.iter().map(|c| c.run()).collect();
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let mut text = String::new();
            for o in &outcomes {
                text += &format!("{} {} [{}] {}\n", if o.passed { "PASS" } else { "FAIL" }, o.name, o.criterion, o.detail);
            }
            text += &format!("{passed}/{} checks passed\n", outcomes.len());
            let json = json!({
                "passed": passed == outcomes.len(),
                "checks": outcomes.iter().map(|o| json!({
                    "name": o.name,
                    "criterion": o.criterion,
                    "passed": o.passed,
                    "detail": o.detail,
                })).collect::<Vec<_>>(),
            });
            Ok(Report { text, json, ok: passed == outcomes.len() })
        }
    }
}
