//! Text expressions for forms.
//!
//! Grammar (whitespace-insensitive):
//!   expr    := term (('+' | '-') term)*
//!   term    := '-'? power (('^' | '*') '-'? power)* ('/' integer)*
//!   power   := factor ('^' integer)*
//!   factor  := integer | 'i' | coordinate | 'd' coordinate | '(' expr ')'
//!
//! Coordinates evaluate to polynomial 0-forms, `d<coordinate>` to coframe
//! 1-forms. `^` and `*` are the same operation (wedge; multiplication when a
//! factor has degree 0), except that `^` directly followed by an integer
//! literal is exponentiation of the preceding factor, so printed polynomials
//! like `x1^2` read back correctly. `expr / integer` divides by the integer.

use crate::form::Form;
use crate::manifold::ManifoldDescriptor;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(x) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(x as i64))
                            .ok_or("integer literal overflow")?;
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected character '{}'", other)),
        }
    }
    Ok(out)
}

fn check_degrees(a: &Form, b: &Form) -> Result<(), String> {
    if a.is_zero() || b.is_zero() || a.degree == b.degree {
        Ok(())
    } else {
        Err(format!(
            "cannot add forms of degrees {} and {}",
            a.degree, b.degree
        ))
    }
}

pub struct FormParser<'a> {
    m: &'a ManifoldDescriptor,
    toks: Vec<Tok>,
    pos: usize,
}

pub fn parse_form(m: &ManifoldDescriptor, src: &str) -> Result<Form, String> {
    let toks = lex(src)?;
    let mut p = FormParser { m, toks, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at token {}", p.pos));
    }
    Ok(f)
}

impl<'a> FormParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Form, String> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    let t = self.term()?;
                    check_degrees(&acc, &t)?;
                    acc = acc.add(&t);
                }
                Tok::Minus => {
                    self.pos += 1;
                    let t = self.term()?;
                    check_degrees(&acc, &t)?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Form, String> {
        let mut neg = false;
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            neg = !neg;
        }
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) | Some(Tok::Caret) => {
                    self.pos += 1;
                    let mut fneg = false;
                    while matches!(self.peek(), Some(Tok::Minus)) {
                        self.pos += 1;
                        fneg = !fneg;
                    }
                    let f = self.power()?;
                    acc = acc.wedge(&f);
                    if fneg {
                        acc = acc.neg();
                    }
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if d != 0 => {
                            acc = acc.scale(&Scalar::from_ratio(1, d));
                        }
                        _ => return Err("expected nonzero integer after '/'".into()),
                    }
                }
                _ => break,
            }
        }
        if neg {
            acc = acc.neg();
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Form, String> {
        let mut f = self.factor()?;
        while matches!(self.peek(), Some(Tok::Caret))
            && matches!(self.toks.get(self.pos + 1), Some(Tok::Num(_)))
        {
            self.pos += 1;
            let e = match self.next() {
                Some(Tok::Num(e)) if e >= 0 => e,
                _ => return Err("expected nonnegative exponent".into()),
            };
            let mut acc = Form::constant(self.m.dim, Scalar::one());
            for _ in 0..e {
                acc = acc.wedge(&f);
            }
            f = acc;
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<Form, String> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Form::constant(self.m.dim, Scalar::from_int(v))),
            Some(Tok::Ident(name)) => {
                if name == "i" {
                    return Ok(Form::constant(self.m.dim, Scalar::i()));
                }
                if let Some(j) = self.m.coord_names.iter().position(|c| *c == name) {
                    return Ok(Form::from_poly(self.m.dim, Poly::var(self.m.dim, j)));
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(j) = self.m.coord_names.iter().position(|c| c == rest) {
                        return Ok(Form::coframe(self.m.dim, (j + 1) as u8));
                    }
                }
                Err(format!("unknown identifier '{}'", name))
            }
            Some(Tok::LParen) => {
                let f = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(f),
                    _ => Err("expected ')'".into()),
                }
            }
            other => Err(format!("unexpected token {:?}", other)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{DescriptorJson, FactorKind, FactorSpec};

    fn ixt5() -> ManifoldDescriptor {
        let d = DescriptorJson {
            n: 3,
            factors: vec![
                FactorSpec { kind: FactorKind::Interval, coords: vec!["x1".into()] },
                FactorSpec {
                    kind: FactorKind::Torus,
                    coords: vec![
                        "y1".into(),
                        "x2".into(),
                        "y2".into(),
                        "x3".into(),
                        "y3".into(),
                    ],
                },
            ],
            omega_pairs: vec![(1, 2), (3, 4), (5, 6)],
            jsign: 1,
        };
        ManifoldDescriptor::from_descriptor(&d).unwrap()
    }

    #[test]
    fn parses_wedges_and_scalars() {
        let m = ixt5();
        let f = parse_form(&m, "dx2^dy2 - dx3^dy3").unwrap();
        assert_eq!(f.degree, 2);
        let g = parse_form(&m, "x1*dy1^(dx2^dy2 - dx3^dy3)").unwrap();
        assert_eq!(g.degree, 3);
        let h = parse_form(&m, "dx1^dy1 - 1/2*(dx2^dy2 + dx3^dy3)").unwrap();
        assert_eq!(h.degree, 2);
        assert!(m.frame.is_primitive(&h));
    }

    #[test]
    fn roundtrip_display() {
        let m = ixt5();
        let names: Vec<String> =
            m.coord_names.iter().map(|c| format!("d{}", c)).collect();
        let src = "3*x1^2*dy1^dx2 - 1/2*dy2^dy3 + 5*dx1^dy3";
        let f = parse_form(&m, src).unwrap();
        let printed = f.display_with(&names, &m.coord_names);
        let g = parse_form(&m, &printed).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_garbage() {
        let m = ixt5();
        assert!(parse_form(&m, "dz9").is_err());
        assert!(parse_form(&m, "dx1 + dx1^dy1").is_err());
        assert!(parse_form(&m, "x1 +").is_err());
        assert!(parse_form(&m, "(x1").is_err());
    }
}
