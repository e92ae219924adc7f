//! Text formats: Salamon structure strings, form literals and the JSON
//! algebra schema.
//!
//! Salamon grammar (whitespace ignored):
//!
//! ```text
//! algebra := "(" slot ("," slot)* ")"
//! slot    := "0" | term (("+" | "-") term)*     (a leading sign is allowed)
//! term    := [rat "*"] (digit digit | "[" int "," int "]")
//! ```
//!
//! Slot `k` lists `d e^k`; `[e_i, e_j] = sum_k c^k_ij e_k` with
//! `c^k_ij = -(coefficient of e^{ij} in d e^k)`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, parse_rat, Rat};
use crate::exterior::KForm;
use crate::liealg::LieAlgebra;

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// One summand `c * e^{idx}`; indices are as written (display numbering).
struct Term {
    coeff: Rat,
    idx: Vec<usize>,
}

/// Character cursor over the input with whitespace skipping.
struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(o, _)| o)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    /// `int` or `int/int` followed by `*`, if present.
    fn coefficient(&mut self) -> Result<Option<Rat>> {
        let save = self.pos;
        let num = self.digits();
        if num.is_empty() {
            return Ok(None);
        }
        let mut text = num;
        if self.eat('/') {
            let den = self.digits();
            if den.is_empty() {
                return Err(syntax(self.offset(), "expected denominator"));
            }
            text = format!("{text}/{den}");
        }
        if self.eat('*') {
            let q = parse_rat(&text).map_err(|_| syntax(self.offset(), "bad coefficient"))?;
            Ok(Some(q))
        } else {
            self.pos = save;
            Ok(None)
        }
    }

    /// `[i,j,...]` extended index list.
    fn bracket_indices(&mut self) -> Result<Vec<usize>> {
        self.expect('[')?;
        let mut out = Vec::new();
        loop {
            let d = self.digits();
            if d.is_empty() {
                return Err(syntax(self.offset(), "expected index"));
            }
            out.push(
                d.parse()
                    .map_err(|_| syntax(self.offset(), "index too large"))?,
            );
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

/// Parses a signed sum of terms. `prefix` is the literal before the indices
/// (`e` for form literals, empty for Salamon slots); `arity` fixes the
/// number of single-digit indices when not using `[..]`.
fn parse_sum(
    cur: &mut Cursor,
    prefix: Option<char>,
    arity: Option<usize>,
    stop: &[char],
) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let neg = if cur.eat('-') {
            true
        } else {
            if !cur.eat('+') && !first {
                return Err(syntax(cur.offset(), "expected '+' or '-'"));
            }
            false
        };
        first = false;
        let mut coeff = cur.coefficient()?.unwrap_or_else(Rat::one);
        if neg {
            coeff = -coeff;
        }
        let idx = match prefix {
            Some(p) => {
                if !cur.eat(p) {
                    // bare number: a constant term
                    let d = cur.digits();
                    if d.is_empty() {
                        return Err(syntax(cur.offset(), format!("expected '{p}'")));
                    }
                    let mut text = d;
                    if cur.eat('/') {
                        text = format!("{text}/{}", cur.digits());
                    }
                    let q = parse_rat(&text).map_err(|_| syntax(cur.offset(), "bad number"))?;
                    terms.push(Term {
                        coeff: coeff * q,
                        idx: Vec::new(),
                    });
                    if cur.peek().is_none_or(|c| stop.contains(&c)) {
                        return Ok(terms);
                    }
                    continue;
                }
                if cur.peek() == Some('[') {
                    cur.bracket_indices()?
                } else {
                    let d = cur.digits();
                    if d.is_empty() {
                        return Err(syntax(cur.offset(), "expected indices"));
                    }
                    d.chars()
                        .map(|c| c.to_digit(10).unwrap() as usize)
                        .collect()
                }
            }
            None => {
                if cur.peek() == Some('[') {
                    cur.bracket_indices()?
                } else {
                    let start = cur.offset();
                    let d = cur.digits();
                    if Some(d.len()) != arity {
                        return Err(syntax(
                            start,
                            format!("expected {} index digits", arity.unwrap_or(2)),
                        ));
                    }
                    d.chars()
                        .map(|c| c.to_digit(10).unwrap() as usize)
                        .collect()
                }
            }
        };
        terms.push(Term { coeff, idx });
        if cur.peek().is_none_or(|c| stop.contains(&c)) {
            return Ok(terms);
        }
    }
}

/// Parses a Salamon string such as `(24,-14,-12,0)` and validates Jacobi.
pub fn parse_salamon(s: &str) -> Result<LieAlgebra> {
    let mut cur = Cursor::new(s);
    cur.expect('(')?;
    let mut slots: Vec<Vec<Term>> = Vec::new();
    loop {
        if cur.peek() == Some('0')
            && matches!(
                cur.chars.get(cur.pos + 1).map(|p| p.1),
                Some(',') | Some(')')
            )
        {
            cur.bump();
            slots.push(Vec::new());
        } else {
            slots.push(parse_sum(&mut cur, None, Some(2), &[',', ')'])?);
        }
        match cur.bump() {
            Some(',') => continue,
            Some(')') => break,
            _ => return Err(syntax(cur.offset(), "expected ',' or ')'")),
        }
    }
    if cur.peek().is_some() {
        return Err(syntax(cur.offset(), "trailing input"));
    }
    let n = slots.len();
    if n == 0 || n > crate::liealg::MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut brackets = Vec::new();
    for (k, slot) in slots.iter().enumerate() {
        for t in slot {
            if t.idx.len() != 2 {
                return Err(syntax(0, "Salamon terms need exactly two indices"));
            }
            for &i in &t.idx {
                if i == 0 || i > n {
                    return Err(Error::IndexOutOfRange { index: i, dim: n });
                }
            }
            let (i, j) = (t.idx[0] - 1, t.idx[1] - 1);
            if i == j {
                return Err(syntax(0, format!("repeated index in e{}{}", i + 1, j + 1)));
            }
            let mut v = vec![Rat::zero(); n];
            v[k] = -t.coeff.clone();
            brackets.push((i, j, v));
        }
    }
    LieAlgebra::new(n, brackets)
}

/// Canonical Salamon string: slot k lists `d e^k` with sorted index pairs.
pub fn print_salamon(g: &LieAlgebra) -> String {
    let n = g.dim();
    let wide = n > 9;
    let mut slots = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = String::new();
        for (i, j) in g.nonzero_pairs() {
            let c = -g.structure_constant(i, j, k);
            if c.is_zero() {
                continue;
            }
            let idx = if wide {
                format!("[{},{}]", i + 1, j + 1)
            } else {
                format!("{}{}", i + 1, j + 1)
            };
            if c.is_negative() {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if !c.abs().is_one() {
                s.push_str(&fmt_rat(&c.abs()));
                s.push('*');
            }
            s.push_str(&idx);
        }
        if s.is_empty() {
            s.push('0');
        }
        slots.push(s);
    }
    format!("({})", slots.join(","))
}

/// Parses a form literal like `e12 - 2*e34` or `-e01 - e24 - e35` over an
/// algebra of dimension `dim` whose display indices start at `offset`.
/// All terms must have the same degree; `0` is the zero 0-form.
pub fn parse_form(s: &str, dim: usize, offset: usize) -> Result<KForm> {
    parse_form_inner(s, dim, offset, None)
}

/// Like [`parse_form`] but requires the given degree (and lets `0` denote
/// the zero form of that degree).
pub fn parse_form_of_degree(s: &str, dim: usize, offset: usize, degree: usize) -> Result<KForm> {
    parse_form_inner(s, dim, offset, Some(degree))
}

fn parse_form_inner(s: &str, dim: usize, offset: usize, degree: Option<usize>) -> Result<KForm> {
    let mut cur = Cursor::new(s);
    if cur.peek().is_none() {
        return Err(syntax(0, "empty form"));
    }
    let terms = parse_sum(&mut cur, Some('e'), None, &[])?;
    let mut deg: Option<usize> = None;
    let mut out = Vec::new();
    for t in terms {
        if t.idx.is_empty() && t.coeff.is_zero() {
            continue;
        }
        let idx: Vec<usize> = t
            .idx
            .iter()
            .map(|&i| {
                if i < offset || i - offset >= dim {
                    Err(Error::IndexOutOfRange { index: i, dim })
                } else {
                    Ok(i - offset)
                }
            })
            .collect::<Result<_>>()?;
        match deg {
            None => deg = Some(idx.len()),
            Some(d) if d != idx.len() => {
                return Err(syntax(0, "terms of different degrees"));
            }
            _ => {}
        }
        out.push((idx, t.coeff));
    }
    let d = match (deg, degree) {
        (Some(d), Some(want)) if d != want => {
            return Err(Error::DegreeMismatch {
                expected: want,
                found: d,
            });
        }
        (Some(d), _) => d,
        (None, Some(want)) => want,
        (None, None) => 0,
    };
    if d > dim {
        return Err(Error::DegreeMismatch {
            expected: dim,
            found: d,
        });
    }
    Ok(KForm::from_terms(dim, d, out))
}

/// Vector literal in the same syntax with 1-form-like terms, e.g.
/// `e4 + e6` or `1/2*e2 - e3`.
pub fn parse_vector(s: &str, dim: usize, offset: usize) -> Result<Vec<Rat>> {
    Ok(parse_form_of_degree(s, dim, offset, 1)?.to_vector())
}

#[derive(Serialize, Deserialize)]
struct JsonBracket {
    x: usize,
    y: usize,
    out: serde_json::Map<String, Value>,
}

#[derive(Serialize, Deserialize)]
struct JsonAlgebra {
    dim: usize,
    #[serde(default = "one")]
    basis_offset: usize,
    #[serde(default)]
    name: Option<String>,
    brackets: Vec<JsonBracket>,
}

fn one() -> usize {
    1
}

fn json_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| Error::Json(e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => Err(Error::Json(format!(
                "coefficient {n} is not an integer; use a \"p/q\" string"
            ))),
        },
        other => Err(Error::Json(format!("bad coefficient {other}"))),
    }
}

/// Reads the JSON algebra schema:
/// `{"dim": n, "basis_offset": 0|1, "brackets": [{"x": i, "y": j, "out": {"k": "p/q"}}]}`
/// with indices in display numbering.
pub fn parse_algebra_json(text: &str) -> Result<LieAlgebra> {
    let raw: JsonAlgebra = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if raw.basis_offset > 1 {
        return Err(Error::Json("basis_offset must be 0 or 1".into()));
    }
    let n = raw.dim;
    if n == 0 || n > crate::liealg::MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let off = raw.basis_offset;
    let to_internal = |i: usize| -> Result<usize> {
        if i < off || i - off >= n {
            Err(Error::IndexOutOfRange { index: i, dim: n })
        } else {
            Ok(i - off)
        }
    };
    let mut brackets = Vec::new();
    for b in &raw.brackets {
        let mut v = vec![Rat::zero(); n];
        for (k, c) in &b.out {
            let k: usize = k
                .parse()
                .map_err(|_| Error::Json(format!("bad index '{k}'")))?;
            v[to_internal(k)?] += json_rat(c)?;
        }
        brackets.push((to_internal(b.x)?, to_internal(b.y)?, v));
    }
    let mut g = LieAlgebra::new(n, brackets)?.with_offset(off);
    if let Some(name) = raw.name {
        g = g.named(&name);
    }
    Ok(g)
}

/// Writes an algebra in the JSON schema accepted by [`parse_algebra_json`].
pub fn algebra_to_json(g: &LieAlgebra) -> String {
    let off = g.basis_offset();
    let brackets = g
        .nonzero_pairs()
        .map(|(i, j)| {
            let out = g
                .bracket_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| ((k + off).to_string(), Value::String(fmt_rat(c))))
                .collect();
            JsonBracket {
                x: i + off,
                y: j + off,
                out,
            }
        })
        .collect();
    let raw = JsonAlgebra {
        dim: g.dim(),
        basis_offset: off,
        name: g.name().map(str::to_string),
        brackets,
    };
    serde_json::to_string(&raw).expect("serialisable")
}
