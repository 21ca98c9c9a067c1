//! Expressions for the `eval` command.
//!
//! ```text
//! expr    := term ('*' term)*
//! term    := literal | number | call | '(' expr ')'
//! literal := '(' number ',' number ',' number ')'
//! call    := ('inv' | 'conj' | 'pi1' | 'pi2') '(' expr ')' | 'dot' '(' expr ',' expr ')'
//! ```
//!
//! Products associate left to right. A bare number is a real scalar.

use std::fmt;

use semifib_core::group::{pi1, pi2};
use semifib_core::{AlgebraKind, Element};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Real(f64),
    Element(Element),
}

/// Formats `v` rounded to 12 significant digits.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return String::from("0");
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    format!("{rounded}")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Real(v) => f.write_str(&fmt_sig12(*v)),
            Value::Element(e) => {
                let [a, b, c] = e.coeffs();
                write!(f, "({},{},{})", fmt_sig12(a), fmt_sig12(b), fmt_sig12(c))
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    kind: AlgebraKind,
}

fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T, Error> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            parse_err(self.pos, format!("expected `{c}`"))
        }
    }

    fn number(&mut self) -> Result<f64, Error> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut end = 0;
        let bytes = rest.as_bytes();
        while end < bytes.len() {
            let b = bytes[end];
            let sign_ok = (b == b'+' || b == b'-') && (end == 0 || matches!(bytes[end - 1], b'e' | b'E'));
            if b.is_ascii_digit() || b == b'.' || b == b'e' || b == b'E' || sign_ok {
                end += 1;
            } else {
                break;
            }
        }
        match rest[..end].parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos += end;
                Ok(v)
            }
            _ => parse_err(self.pos, "expected a number"),
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn expr(&mut self) -> Result<Value, Error> {
        let mut acc = self.term()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = multiply(acc, rhs)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, Error> {
        match self.peek() {
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                // literal if the parenthesis holds three comma-separated numbers
                if let Ok(a) = self.number() {
                    if self.peek() == Some(',') {
                        self.pos += 1;
                        let b = self.number()?;
                        self.expect(',')?;
                        let c = self.number()?;
                        self.expect(')')?;
                        return Ok(Value::Element(Element::new(self.kind, a, b, c)?));
                    }
                }
                self.pos = open + 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_owned();
                self.expect('(')?;
                let first = self.expr()?;
                let v = match name.as_str() {
                    "dot" => {
                        self.expect(',')?;
                        let second = self.expr()?;
                        let (x, y) = (element(first, start)?, element(second, start)?);
                        Value::Real(x.bilinear(&y)?)
                    }
                    "inv" => match first {
                        Value::Real(0.0) => return Err(Error::Core(semifib_core::Error::NotInvertible)),
                        Value::Real(r) => Value::Real(1.0 / r),
                        Value::Element(x) => Value::Element(x.inverse()?),
                    },
                    "conj" => match first {
                        Value::Real(r) => Value::Real(r),
                        Value::Element(x) => Value::Element(x.conj()?),
                    },
                    "pi1" => Value::Real(pi1(&element(first, start)?)?),
                    "pi2" => Value::Real(pi2(&element(first, start)?)?),
                    _ => return parse_err(start, format!("unknown function `{name}`")),
                };
                self.expect(')')?;
                Ok(v)
            }
            Some(_) => Ok(Value::Real(self.number()?)),
            None => parse_err(self.pos, "unexpected end of input"),
        }
    }
}

fn element(v: Value, pos: usize) -> Result<Element, Error> {
    match v {
        Value::Element(e) => Ok(e),
        Value::Real(_) => parse_err(pos, "expected an algebra element, found a real number"),
    }
}

fn multiply(a: Value, b: Value) -> Result<Value, Error> {
    Ok(match (a, b) {
        (Value::Real(x), Value::Real(y)) => Value::Real(x * y),
        (Value::Real(x), Value::Element(e)) | (Value::Element(e), Value::Real(x)) => Value::Element(e.scale(x)?),
        (Value::Element(x), Value::Element(y)) => Value::Element(x.mul(&y)?),
    })
}

/// Parses and evaluates `src` in the algebra of type `kind`.
pub fn eval(src: &str, kind: AlgebraKind) -> Result<Value, Error> {
    let mut p = Parser { src, pos: 0, kind };
    let v = p.expr()?;
    if p.peek().is_some() {
        return parse_err(p.pos, "unexpected trailing input");
    }
    Ok(v)
}
