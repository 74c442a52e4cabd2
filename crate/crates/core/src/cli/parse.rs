//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ('+' | '-')? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | 'x' | 'y' | 'u' | 'v' | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! Whitespace is insignificant and there is no implicit multiplication.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{MPoly, Rational, Var};
use crate::keller::{CurveF, KellerError};

const MAX_EXPONENT: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: {}",
            self.offset, self.message
        )
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Error)]
pub enum InputError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Curve(#[from] KellerError),
    #[error("invalid JSON input: {0}")]
    Json(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("unexpected '{}'", c as char),
            None => "unexpected end of input".to_string(),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<MPoly, SyntaxError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, SyntaxError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, SyntaxError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let Some(text) = self.digits() else {
                return self.error("expected a natural number exponent");
            };
            match text.parse::<u32>() {
                Ok(e) if e <= MAX_EXPONENT => return Ok(base.pow(e)),
                _ => return self.error(format!("exponent larger than {MAX_EXPONENT}")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MPoly, SyntaxError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    let found = self.describe();
                    return self.error(format!("expected ')', {found}"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let Some(den) = self.digits() else {
                        return self.error("expected a positive integer denominator");
                    };
                    let den: BigInt = den.parse().unwrap();
                    if den.is_zero() {
                        return self.error("zero denominator");
                    }
                    return Ok(MPoly::constant(Rational::new(num, den)));
                }
                Ok(MPoly::constant(Rational::from_integer(num)))
            }
            Some(c) if Var::from_name(c as char).is_some() => {
                self.pos += 1;
                Ok(MPoly::var(Var::from_name(c as char).unwrap()))
            }
            _ => {
                let found = self.describe();
                self.error(format!("expected a number, variable or '(', {found}"))
            }
        }
    }
}

/// Parses an expression in `x, y, u, v`.
pub fn parse_poly(text: &str) -> Result<MPoly, SyntaxError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let p = parser.expr()?;
    if parser.peek().is_some() {
        let found = parser.describe();
        return parser.error(found);
    }
    Ok(p)
}

/// Parses an expression as a monic curve. Returns warnings for any
/// rescaling of the leading coefficient.
pub fn parse_curve(text: &str) -> Result<(CurveF, Vec<String>), InputError> {
    let p = parse_poly(text)?;
    let (curve, scale) = CurveF::from_poly(&p)?;
    let warnings = scale
        .map(|c| {
            vec![format!(
                "leading y-coefficient {} divided out",
                crate::algebra::render_rational(&c)
            )]
        })
        .unwrap_or_default();
    Ok((curve, warnings))
}

fn parse_rational_value(v: &Value) -> Result<Rational, InputError> {
    let bad = || InputError::Json(format!("expected a rational string, got {v}"));
    match v {
        Value::String(s) => {
            let p = parse_poly(s).map_err(|_| bad())?;
            p.as_constant().ok_or_else(bad)
        }
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(bad),
        _ => Err(bad()),
    }
}

/// Parses `{"m": int, "a": [[ratstr, ...], ...]}` with each `a_i` ascending in `x`.
pub fn parse_curve_json(text: &str) -> Result<CurveF, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    let m = v
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| InputError::Json("missing integer field \"m\"".into()))?
        as usize;
    let a = v
        .get("a")
        .and_then(Value::as_array)
        .ok_or_else(|| InputError::Json("missing array field \"a\"".into()))?;
    if a.len() != m {
        return Err(InputError::Json(format!(
            "\"a\" has {} entries, expected m = {m}",
            a.len()
        )));
    }
    let coeffs = a
        .iter()
        .map(|ai| {
            let list = ai
                .as_array()
                .ok_or_else(|| InputError::Json("each a_i must be an array".into()))?;
            let cs = list
                .iter()
                .map(parse_rational_value)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MPoly::univariate(Var::X, &cs))
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(CurveF::new(coeffs)?)
}

/// Reads a curve from a file holding either an expression or the JSON form.
pub fn read_curve_file(path: &str) -> Result<(CurveF, Vec<String>), InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_string(),
        source,
    })?;
    if text.trim_start().starts_with('{') {
        Ok((parse_curve_json(&text)?, Vec::new()))
    } else {
        parse_curve(text.trim())
    }
}
