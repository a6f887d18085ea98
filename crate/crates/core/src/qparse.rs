//! Expression language and JSON interchange format for quadratic maps.
//!
//! An expression is a sum of quadratic monomials over F₂:
//!
//! ```text
//! expr := term ('+' term)*
//! term := var '^2' | var '*' var
//! var  := 'x' digits
//! ```
//!
//! Whitespace is ignored and repeated monomials cancel in pairs. The
//! document format stores one upper-triangular matrix per coordinate of W,
//! either as rows of bits or as an expression:
//!
//! ```text
//! {"dim_v": 3, "dim_w": 2,
//!  "forms": [{"rows": ["110","010","000"]}, {"expr": "x2^2 + x0*x2"}]}
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMat, MAX_DIM};
use crate::quadmap::QuadMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Square(usize),
    /// x_a·x_b with a < b.
    Cross(usize, usize),
}

impl Monomial {
    fn cross(a: usize, b: usize) -> Self {
        if a == b {
            Monomial::Square(a)
        } else {
            Monomial::Cross(a.min(b), a.max(b))
        }
    }

    fn entry(self) -> (usize, usize) {
        match self {
            Monomial::Square(a) => (a, a),
            Monomial::Cross(a, b) => (a, b),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Square(a) => write!(f, "x{a}^2"),
            Monomial::Cross(a, b) => write!(f, "x{a}*x{b}"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim_v: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn var(&mut self) -> Result<usize> {
        match self.peek() {
            Some(b'x') => {}
            Some(c) if c.is_ascii_digit() => {
                return Err(Error::Degree {
                    pos: self.pos,
                    msg: "constant term".into(),
                })
            }
            Some(_) => return Err(self.syntax("expected variable 'x<n>'")),
            None => return Err(self.syntax("unexpected end of input")),
        }
        let start = self.pos;
        self.pos += 1;
        let var = self
            .number()
            .ok_or_else(|| self.syntax("expected digits after 'x'"))?;
        if var >= self.dim_v {
            return Err(Error::VarOutOfRange {
                var,
                pos: start,
                dim: self.dim_v,
            });
        }
        Ok(var)
    }

    fn term(&mut self) -> Result<Monomial> {
        let start = self.pos;
        let a = self.var()?;
        let mono = match self.peek() {
            Some(b'^') => {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                match self.number() {
                    Some(2) => Monomial::Square(a),
                    Some(e) => {
                        return Err(Error::Degree {
                            pos: at,
                            msg: format!("exponent {e}"),
                        })
                    }
                    None => return Err(self.syntax("expected exponent")),
                }
            }
            Some(b'*') => {
                self.pos += 1;
                let b = self.var()?;
                Monomial::cross(a, b)
            }
            _ => {
                return Err(Error::Degree {
                    pos: start,
                    msg: "linear term".into(),
                })
            }
        };
        match self.peek() {
            Some(b'*') | Some(b'^') => Err(Error::Degree {
                pos: self.pos,
                msg: "degree above 2".into(),
            }),
            _ => Ok(mono),
        }
    }

    fn expr(&mut self) -> Result<Vec<Monomial>> {
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return Ok(terms);
        }
        loop {
            terms.push(self.term()?);
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => self.pos += 1,
                Some(_) => return Err(self.syntax("expected '+' or end of input")),
            }
        }
    }
}

/// The monomials of `text` in source order, before cancellation.
pub fn parse_monomials(text: &str, dim_v: usize) -> Result<Vec<Monomial>> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        dim_v,
    }
    .expr()
}

/// Upper-triangular coefficient matrix of one quadratic form.
pub fn parse_expr(text: &str, dim_v: usize) -> Result<BitMat> {
    if dim_v > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim_v));
    }
    let mut u = BitMat::zeros(dim_v, dim_v);
    for m in parse_monomials(text, dim_v)? {
        let (r, c) = m.entry();
        u.flip(r, c);
    }
    Ok(u)
}

/// Canonical expression: monomials in row-major order of U, `""` for zero.
pub fn print_expr(u: &BitMat) -> String {
    let mut terms = Vec::new();
    for r in 0..u.rows() {
        for c in r..u.cols() {
            if u.get(r, c) {
                terms.push(Monomial::cross(r, c).to_string());
            }
        }
    }
    terms.join(" + ")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    dim_v: usize,
    dim_w: usize,
    forms: Vec<FormEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
}

fn rows_to_matrix(form: usize, rows: &[String], dim_v: usize) -> Result<BitMat> {
    if rows.len() != dim_v {
        return Err(Error::Schema(format!(
            "form {form}: expected {dim_v} rows, found {}",
            rows.len()
        )));
    }
    let mut u = BitMat::zeros(dim_v, dim_v);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != dim_v {
            return Err(Error::Schema(format!(
                "form {form}, row {r}: expected {dim_v} bits, found {}",
                row.len()
            )));
        }
        for (c, ch) in row.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' if c < r => {
                    return Err(Error::NotUpperTriangular {
                        form,
                        row: r,
                        col: c,
                    })
                }
                b'1' => u.set(r, c, true),
                _ => {
                    return Err(Error::Schema(format!(
                        "form {form}, row {r}: '{}' is not a bit",
                        ch as char
                    )))
                }
            }
        }
    }
    Ok(u)
}

/// Reads an interchange document.
pub fn load_quadmap(document: &str) -> Result<QuadMap> {
    let doc: Document = serde_json::from_str(document).map_err(|e| {
        if e.is_data() {
            Error::Schema(e.to_string())
        } else {
            Error::Json(e)
        }
    })?;
    if doc.dim_v > MAX_DIM || doc.dim_w > MAX_DIM {
        return Err(Error::DimensionTooLarge(doc.dim_v.max(doc.dim_w)));
    }
    if doc.forms.len() != doc.dim_w {
        return Err(Error::Schema(format!(
            "dim_w is {} but {} forms are given",
            doc.dim_w,
            doc.forms.len()
        )));
    }
    let coeffs = doc
        .forms
        .iter()
        .enumerate()
        .map(|(i, f)| match (&f.rows, &f.expr) {
            (Some(rows), None) => rows_to_matrix(i, rows, doc.dim_v),
            (None, Some(expr)) => parse_expr(expr, doc.dim_v),
            _ => Err(Error::Schema(format!(
                "form {i}: exactly one of \"rows\" or \"expr\" is required"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    QuadMap::new(doc.dim_v, coeffs)
}

/// Writes the canonical (matrix form) document.
pub fn save_quadmap(q: &QuadMap) -> String {
    let doc = Document {
        dim_v: q.dim_v(),
        dim_w: q.dim_w(),
        forms: q
            .coeffs()
            .iter()
            .map(|u| FormEntry {
                rows: Some(
                    (0..u.rows())
                        .map(|r| {
                            (0..u.cols())
                                .map(|c| if u.get(r, c) { '1' } else { '0' })
                                .collect()
                        })
                        .collect(),
                ),
                expr: None,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("document serializes")
}
