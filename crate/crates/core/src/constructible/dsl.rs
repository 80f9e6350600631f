//! The constructible-set expression language.
//!
//! ```text
//! dim 2; (x1 >= 0 & 2x1 - 3x2 > 5/2) | !(x2 <= 1) \ x1 = x2
//! ```
//!
//! `!` binds tightest, then `&`, then `\` (difference), then `|`.
//! Comparisons may be `>=`, `>`, `<=`, `<` or `=` between affine forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Atom, ConstructibleSet, Expr};
use crate::error::{Error, Result};
use crate::exactq::{primitive_normalize, Rat};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Num(Rat),
    Var(usize),
    Ident(String),
    Op(&'static str),
    Semi,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const OPS: [&str; 15] = [">=", "<=", ">", "<", "=", "&", "|", "!", "\\", "(", ")", "+", "-", "*", "^"];

pub(crate) fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, col: tc });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == ';' {
            push(&mut out, Tok::Semi);
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut num: Rat = Rat::from_integer(chars[start..i].iter().collect::<String>().parse::<BigInt>().expect("digits"));
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let ds = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[ds..i].iter().collect::<String>().parse().expect("digits");
                if den.is_zero() {
                    return Err(Error::parse(tl, tc, "zero denominator"));
                }
                num /= Rat::from_integer(den);
            } else if i < chars.len() && chars[i] == '.' {
                return Err(Error::parse(line, col + (i - start), "decimal notation is not accepted; write p/q"));
            }
            col += i - start;
            push(&mut out, Tok::Num(num));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match word.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                Some(k) if !word[1..].starts_with('0') => Tok::Var(k),
                _ => Tok::Ident(word),
            };
            push(&mut out, tok);
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match OPS.iter().find(|op| rest.starts_with(**op)) {
            Some(op) => {
                push(&mut out, Tok::Op(op));
                i += op.len();
                col += op.len();
            }
            None => return Err(Error::parse(tl, tc, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// Shared cursor over a token stream; the semi-algebraic language reuses it.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub fn new(text: &str) -> Result<Cursor> {
        let toks = lex(text)?;
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Ok(Cursor {
            toks,
            pos: 0,
            end: (lines, last + 1),
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    /// Steps back over the token just consumed.
    pub fn back(&mut self) {
        self.pos -= 1;
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.col));
        Error::parse(line, col, msg)
    }

    pub fn eat_op(&mut self, op: &str) -> bool {
        if self.peek() == Some(&Tok::Op(op_static(op))) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_op(&mut self, op: &str) -> Result<()> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{op}`")))
        }
    }

    pub fn eat_semi(&mut self) -> bool {
        if self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn eat_ident(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// `dim n;`-style header with the given keyword.
    pub fn header(&mut self, keyword: &str) -> Result<usize> {
        if !self.eat_ident(keyword) {
            return Err(self.error(format!("expected header `{keyword} n;`")));
        }
        let n = match self.next() {
            Some(Tok::Num(r)) if r.is_integer() && !r.is_negative() => {
                usize::try_from(r.to_integer()).map_err(|_| self.error("dimension too large"))?
            }
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a nonnegative integer dimension"));
            }
        };
        if !self.eat_semi() {
            return Err(self.error("expected `;` after the header"));
        }
        Ok(n)
    }
}

fn op_static(op: &str) -> &'static str {
    OPS.iter().find(|o| **o == op).copied().expect("known operator")
}

/// Affine form `Σ cᵢ xᵢ + c₀`.
#[derive(Debug, Clone)]
pub(crate) struct Affine {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

pub fn parse_constructible(text: &str) -> Result<ConstructibleSet> {
    let mut cur = Cursor::new(text)?;
    let dim = cur.header("dim")?;
    if cur.at_end() {
        return Err(cur.error("expected an expression"));
    }
    let expr = boolean(&mut cur, &mut |cur: &mut Cursor| comparison(cur, dim))?;
    cur.eat_semi();
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    ConstructibleSet::new(dim, expr)
}

/// Boolean layer shared by the expression languages; `atom` parses one
/// comparison.
pub(crate) fn boolean<F>(cur: &mut Cursor, atom: &mut F) -> Result<Expr>
where
    F: FnMut(&mut Cursor) -> Result<Expr>,
{
    let mut parts = vec![difference(cur, atom)?];
    while cur.eat_op("|") {
        parts.push(difference(cur, atom)?);
    }
    Ok(Expr::or(parts))
}

fn difference<F>(cur: &mut Cursor, atom: &mut F) -> Result<Expr>
where
    F: FnMut(&mut Cursor) -> Result<Expr>,
{
    let mut acc = conjunction(cur, atom)?;
    while cur.eat_op("\\") {
        let rhs = conjunction(cur, atom)?;
        acc = Expr::And(vec![acc, Expr::not(rhs)]);
    }
    Ok(acc)
}

fn conjunction<F>(cur: &mut Cursor, atom: &mut F) -> Result<Expr>
where
    F: FnMut(&mut Cursor) -> Result<Expr>,
{
    let mut parts = vec![unary(cur, atom)?];
    while cur.eat_op("&") {
        parts.push(unary(cur, atom)?);
    }
    Ok(Expr::and(parts))
}

fn unary<F>(cur: &mut Cursor, atom: &mut F) -> Result<Expr>
where
    F: FnMut(&mut Cursor) -> Result<Expr>,
{
    if cur.eat_op("!") {
        return Ok(Expr::not(unary(cur, atom)?));
    }
    if cur.eat_op("(") {
        let e = boolean(cur, atom)?;
        cur.expect_op(")")?;
        return Ok(e);
    }
    if cur.eat_ident("true") {
        return Ok(Expr::True);
    }
    if cur.eat_ident("false") {
        return Ok(Expr::False);
    }
    atom(cur)
}

/// The comparison `lhs op rhs` of two affine forms, as atoms over `a·x ≥ b`.
pub(crate) fn compare(lhs: &Affine, op: &str, rhs: &Affine) -> Expr {
    // lhs - rhs compared against 0
    let coeffs: Vec<Rat> = lhs.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
    let constant = &rhs.constant - &lhs.constant;
    let neg: Vec<Rat> = coeffs.iter().map(|c| -c).collect();
    let atom = |a: &[Rat], b: &Rat, strict: bool| -> Expr {
        if a.iter().all(Zero::is_zero) {
            let ok = if strict { Rat::zero() > *b } else { Rat::zero() >= *b };
            return if ok { Expr::True } else { Expr::False };
        }
        let (a, b) = primitive_normalize(a, b).expect("nonzero form");
        Expr::Atom(Atom { a, b, strict })
    };
    match op {
        ">=" => atom(&coeffs, &constant, false),
        ">" => atom(&coeffs, &constant, true),
        "<=" => atom(&neg, &-constant, false),
        "<" => atom(&neg, &-constant, true),
        _ => Expr::and(vec![atom(&coeffs, &constant, false), atom(&neg, &-constant.clone(), false)]),
    }
}

/// Reads one of `>=`, `>`, `<=`, `<`, `=`.
pub(crate) fn comparison_op(cur: &mut Cursor) -> Result<&'static str> {
    match cur.next() {
        Some(Tok::Op(op @ (">=" | ">" | "<=" | "<" | "="))) => Ok(op),
        _ => {
            cur.back();
            Err(cur.error("expected a comparison operator"))
        }
    }
}

fn comparison(cur: &mut Cursor, dim: usize) -> Result<Expr> {
    let lhs = affine(cur, dim)?;
    let op = comparison_op(cur)?;
    let rhs = affine(cur, dim)?;
    Ok(compare(&lhs, op, &rhs))
}

fn affine(cur: &mut Cursor, dim: usize) -> Result<Affine> {
    let mut acc = Affine {
        coeffs: vec![Rat::zero(); dim],
        constant: Rat::zero(),
    };
    let mut first = true;
    loop {
        let sign = if cur.eat_op("-") {
            -Rat::one()
        } else if cur.eat_op("+") || first {
            Rat::one()
        } else {
            break;
        };
        first = false;
        term(cur, &mut acc, sign)?;
    }
    Ok(acc)
}

fn term(cur: &mut Cursor, acc: &mut Affine, sign: Rat) -> Result<()> {
    let coeff = match cur.peek() {
        Some(Tok::Num(r)) => {
            let r = r.clone();
            cur.next();
            Some(r)
        }
        _ => None,
    };
    let star = coeff.is_some() && cur.eat_op("*");
    match cur.peek() {
        Some(Tok::Var(k)) => {
            let k = *k;
            let dim = acc.coeffs.len();
            if k == 0 || k > dim {
                return Err(cur.error(format!("variable x{k} outside x1..x{dim}")));
            }
            cur.next();
            acc.coeffs[k - 1] += sign * coeff.unwrap_or_else(Rat::one);
        }
        _ if star => return Err(cur.error("expected a variable after `*`")),
        _ => match coeff {
            Some(c) => acc.constant += sign * c,
            None => return Err(cur.error("expected a number or a variable")),
        },
    }
    Ok(())
}

fn render_atom(a: &Atom) -> String {
    let mut s = String::new();
    for (i, c) in a.a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&mag.to_string());
        }
        s.push_str(&format!("x{}", i + 1));
    }
    format!("{s} {} {}", if a.strict { ">" } else { ">=" }, a.b)
}

pub(crate) fn render_expr(e: &Expr) -> String {
    match e {
        Expr::True => "true".into(),
        Expr::False => "false".into(),
        Expr::Atom(a) => render_atom(a),
        Expr::Not(inner) => match **inner {
            Expr::And(_) | Expr::Or(_) => format!("!({})", render_expr(inner)),
            _ => format!("!{}", render_expr(inner)),
        },
        Expr::And(es) => es
            .iter()
            .map(|c| match c {
                Expr::And(_) | Expr::Or(_) => format!("({})", render_expr(c)),
                _ => render_expr(c),
            })
            .collect::<Vec<_>>()
            .join(" & "),
        Expr::Or(es) => es
            .iter()
            .map(|c| match c {
                Expr::Or(_) => format!("({})", render_expr(c)),
                _ => render_expr(c),
            })
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{ivec, ratio};

    #[test]
    fn atoms_normalize() {
        let c = parse_constructible("dim 2; 2x1 - 3x2 >= 5/2").unwrap();
        assert_eq!(
            c.expr(),
            &Expr::Atom(Atom {
                a: ivec(&[2, -3]),
                b: ratio(5, 2),
                strict: false
            })
        );
        let c = parse_constructible("dim 2; 4*x1 <= 2 + 2x2").unwrap();
        assert_eq!(
            c.expr(),
            &Expr::Atom(Atom {
                a: ivec(&[-2, 1]),
                b: ratio(-1, 1),
                strict: false
            })
        );
    }

    #[test]
    fn precedence() {
        let c = parse_constructible("dim 1; x1 >= 0 | x1 > 1 & !x1 >= 2 \\ x1 = 3").unwrap();
        match c.expr() {
            Expr::Or(parts) => {
                assert_eq!(parts.len(), 2);
                assert!(matches!(&parts[1], Expr::And(v) if v.len() == 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constants_and_round_trip() {
        let c = parse_constructible("dim 1; 0 >= 1 | x1 > x1 - 1").unwrap();
        assert_eq!(c.expr(), &Expr::Or(vec![Expr::False, Expr::True]));
        let text = "dim 3; (x1 >= 0 | -x2 > 1/2) & !(x1 - 2x3 >= -4 & x2 >= 0) & !!x3 > 0";
        let c = parse_constructible(text).unwrap();
        assert_eq!(c.to_string(), text);
        assert_eq!(parse_constructible(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_constructible("dim 2;\n x1 >= 0 & x3 >= 1") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 12)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_constructible("dim 1; x1 >= 0.5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_constructible("x1 >= 0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_constructible("dim 1; (x1 >= 0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_constructible("dim 1;"), Err(Error::Parse { .. })));
    }
}
