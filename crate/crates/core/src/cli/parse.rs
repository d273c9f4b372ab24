//! Curve expression parsing and canonical printing.
//!
//! Accepted forms: "y^2 = P(x)", "y^2 + H(x)*y = P(x)" (characteristic 2),
//! and homogeneous quartic forms in x, y, z. Integer literals reduce into the
//! field; over extension fields the symbol g denotes the field generator.
//! Multiplication is written with '*' or by juxtaposition against a
//! parenthesis. parse followed by print is the identity on canonical forms.

use crate::curve::{CurveModel, QUARTIC_MONOMIALS};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldRef, Poly};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Var(u8), // 0 = x, 1 = y, 2 = z
    Gen,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Equals,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, i));
                i += c.len_utf8();
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '=' => {
                out.push((Tok::Equals, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                let mut v: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or_else(|| err(start, "integer literal too large"))?;
                    i += 1;
                }
                out.push((Tok::Int(v), start));
            }
            'x' => {
                out.push((Tok::Var(0), i));
                i += 1;
            }
            'y' | 'w' => {
                // w is accepted as a synonym for the cover coordinate
                out.push((Tok::Var(1), i));
                i += 1;
            }
            'z' => {
                out.push((Tok::Var(2), i));
                i += 1;
            }
            'g' => {
                out.push((Tok::Gen, i));
                i += 1;
            }
            _ => return Err(err(i, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

/// Polynomial in x, y, z with field coefficients, keyed by exponent triples.
#[derive(Clone, Debug)]
struct MPoly {
    field: FieldRef,
    terms: BTreeMap<(u32, u32, u32), FieldElement>,
}

impl MPoly {
    fn zero(field: &FieldRef) -> MPoly {
        MPoly { field: field.clone(), terms: BTreeMap::new() }
    }
    fn constant(field: &FieldRef, a: FieldElement) -> MPoly {
        let mut m = MPoly::zero(field);
        m.insert((0, 0, 0), a);
        m
    }
    fn var(field: &FieldRef, v: u8) -> MPoly {
        let mut m = MPoly::zero(field);
        let key = match v {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            _ => (0, 0, 1),
        };
        m.insert(key, field.one());
        m
    }
    fn insert(&mut self, key: (u32, u32, u32), a: FieldElement) {
        if self.field.is_zero(a) {
            return;
        }
        let f = self.field.clone();
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = f.add(*c, a);
                if f.is_zero(*c) {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, a);
            }
        }
    }
    fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (&k, &a) in &other.terms {
            out.insert(k, a);
        }
        out
    }
    fn neg(&self) -> MPoly {
        let f = self.field.clone();
        MPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|(&k, &a)| (k, f.neg(a))).collect(),
        }
    }
    fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(&self.field);
        for (&(a1, b1, c1), &u) in &self.terms {
            for (&(a2, b2, c2), &v) in &other.terms {
                out.insert((a1 + a2, b1 + b2, c1 + c2), self.field.mul(u, v));
            }
        }
        out
    }
    fn pow(&self, e: u64) -> MPoly {
        let mut acc = MPoly::constant(&self.field, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

struct Parser<'a> {
    field: FieldRef,
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, o)| o).unwrap_or(self.end)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.next();
            self.term()?.neg()
        } else {
            if self.peek() == Some(&Tok::Plus) {
                self.next();
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.power()?);
                }
                // juxtaposition: ")(", ")x", "2x", "2(", "x y" ...
                Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::Gen) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let off = self.offset();
            match self.next() {
                Some(Tok::Int(e)) => {
                    if e > 64 {
                        return Err(err(off, "exponent too large"));
                    }
                    Ok(base.pow(e))
                }
                _ => Err(err(off, "expected integer exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let off = self.offset();
        match self.next() {
            Some(Tok::Int(v)) => Ok(MPoly::constant(&self.field, self.field.from_int(v as i64))),
            Some(Tok::Var(v)) => Ok(MPoly::var(&self.field, v)),
            Some(Tok::Gen) => {
                if self.field.k() == 1 {
                    Err(err(off, "generator symbol g is undefined over a prime field"))
                } else {
                    Ok(MPoly::constant(&self.field, self.field.el(self.field.p())))
                }
            }
            Some(Tok::Minus) => Ok(self.power()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(off, "unclosed parenthesis")),
                }
            }
            other => Err(err(off, format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expr_side(field: &FieldRef, toks: &[(Tok, usize)], end: usize) -> Result<MPoly> {
    let mut p = Parser { field: field.clone(), toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(err(p.offset(), "trailing input"));
    }
    Ok(e)
}

/// Extract a univariate-in-x polynomial from terms with fixed (y, z) degrees.
fn x_slice(field: &FieldRef, m: &MPoly, ydeg: u32) -> Result<Poly> {
    let mut coeffs: Vec<FieldElement> = Vec::new();
    for (&(a, b, c), &v) in &m.terms {
        if b != ydeg {
            continue;
        }
        if c != 0 {
            return Err(err(0, "z may only appear in quartic forms"));
        }
        if coeffs.len() <= a as usize {
            coeffs.resize(a as usize + 1, field.zero());
        }
        coeffs[a as usize] = v;
    }
    Ok(Poly::from_elements(field, &coeffs))
}

/// Parse a curve expression over the given field, validating the model.
pub fn parse_curve(text: &str, field: &FieldRef) -> Result<CurveModel> {
    let toks = lex(text)?;
    let end = text.len();
    let eq_pos = toks.iter().position(|(t, _)| *t == Tok::Equals);
    let model = match eq_pos {
        Some(i) => {
            let lhs = parse_expr_side(field, &toks[..i], end)?;
            let rhs = parse_expr_side(field, &toks[i + 1..], end)?;
            // move everything to one side: y^2 + c1(x) y - (f side)
            let all = lhs.add(&rhs.neg());
            let ydeg = all.terms.keys().map(|&(_, b, _)| b).max().unwrap_or(0);
            if ydeg != 2 {
                return Err(err(0, "equation must be quadratic in y"));
            }
            let y2 = x_slice(field, &all, 2)?;
            if y2.degree() != Some(0) {
                return Err(err(0, "the y^2 coefficient must be a nonzero constant"));
            }
            let scale = field.inv(y2.coeff(0))?;
            let h = x_slice(field, &all, 1)?.scale(scale);
            let f = x_slice(field, &all, 0)?.scale(scale).neg();
            if field.p() == 2 {
                CurveModel::hyper_char2(h, f)?
            } else {
                if !h.is_zero() {
                    return Err(err(
                        0,
                        "odd characteristic models must have the form y^2 = f(x)",
                    ));
                }
                CurveModel::hyper_odd(f)?
            }
        }
        None => {
            let form = parse_expr_side(field, &toks, end)?;
            let mut coeffs = vec![field.zero(); 15];
            for (&(a, b, c), &v) in &form.terms {
                if a + b + c != 4 {
                    return Err(err(0, "form must be homogeneous of degree 4 in x, y, z"));
                }
                let slot = QUARTIC_MONOMIALS
                    .iter()
                    .position(|&m| m == (a, b, c))
                    .expect("every degree-4 triple is listed");
                coeffs[slot] = v;
            }
            CurveModel::plane_quartic(field, coeffs)?
        }
    };
    if !model.is_good_model() {
        return Err(Error::SingularModel);
    }
    Ok(model)
}

// ---- canonical printing ----

fn int_of(field: &FieldRef, a: FieldElement) -> Option<u64> {
    let idx = a.index();
    if idx < field.p() {
        Some(idx)
    } else {
        None
    }
}

/// Render a field element, parenthesized when it is not a prime-field scalar.
fn el_text(field: &FieldRef, a: FieldElement) -> String {
    if let Some(v) = int_of(field, a) {
        return v.to_string();
    }
    let coeffs = field.coeffs(a);
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "g".into(),
            (1, c) => format!("{c}g"),
            (_, 1) => format!("g^{i}"),
            (_, c) => format!("{c}g^{i}"),
        };
        parts.push(part);
    }
    format!("({})", parts.join(" + "))
}

fn monomial_text(field: &FieldRef, a: FieldElement, vars: &[(char, u32)]) -> String {
    let mut pieces: Vec<String> = Vec::new();
    let coeff = el_text(field, a);
    let has_vars = vars.iter().any(|&(_, e)| e > 0);
    if coeff != "1" || !has_vars {
        pieces.push(coeff);
    }
    for &(v, e) in vars {
        match e {
            0 => {}
            1 => pieces.push(v.to_string()),
            _ => pieces.push(format!("{v}^{e}")),
        }
    }
    pieces.join("*")
}

/// Univariate polynomial in descending powers.
pub fn poly_text(p: &Poly) -> String {
    let field = p.field().clone();
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for i in (0..=p.deg_or_zero()).rev() {
        let c = p.coeff(i);
        if field.is_zero(c) {
            continue;
        }
        parts.push(monomial_text(&field, c, &[('x', i as u32)]));
    }
    parts.join(" + ")
}

/// Canonical text of a model; parse_curve maps it back to an equal model.
pub fn print_model(model: &CurveModel) -> String {
    match model {
        CurveModel::HyperOdd { f } => format!("y^2 = {}", poly_text(f)),
        CurveModel::HyperChar2 { h, f } => {
            let field = h.field().clone();
            let hs = if h.degree() == Some(0) {
                let c = el_text(&field, h.coeff(0));
                if c == "1" {
                    "y".to_string()
                } else {
                    format!("{c}*y")
                }
            } else {
                format!("({})*y", poly_text(h))
            };
            format!("y^2 + {hs} = {}", poly_text(f))
        }
        CurveModel::PlaneQuartic { field, coeffs } => {
            let mut parts = Vec::new();
            for (&(a, b, c), &v) in QUARTIC_MONOMIALS.iter().zip(coeffs) {
                if field.is_zero(v) {
                    continue;
                }
                parts.push(monomial_text(field, v, &[('x', a), ('y', b), ('z', c)]));
            }
            parts.join(" + ")
        }
    }
}
