//! Recursive-descent reader for rational-function text.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' uint)?
//! atom  := uint | ident | '(' expr ')'
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;

use num_bigint::BigInt;

use super::{Rational, RationalFunction};
use crate::error::{Error, Result};

/// Parse `text` as an element of ℚ(vars). Identifiers must be among `vars`.
///
/// Errors carry the 1-based character column of the offending token.
pub fn parse_rational_function(text: &str, vars: &Arc<[String]>) -> Result<RationalFunction> {
    let chars: alloc::vec::Vec<char> = text.chars().collect();
    let mut p = Parser { chars: &chars, pos: 0, vars };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < chars.len() {
        return Err(p.error(format!("unexpected `{}`", chars[p.pos])));
    }
    Ok(value)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    vars: &'a Arc<[String]>,
}

impl Parser<'_> {
    fn error(&self, message: String) -> Error {
        Error::Parse { column: self.pos + 1, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc * rhs;
            } else {
                acc = acc.checked_div(&rhs).map_err(|_| Error::Parse {
                    column: at + 1,
                    message: "division by zero".to_string(),
                })?;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.error("expected a non-negative integer exponent".to_string()));
            }
            let exp: u32 = digits.parse().map_err(|_| Error::Parse {
                column: start + 1,
                message: "exponent too large".to_string(),
            })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && pred(self.chars[self.pos]) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            None => Err(self.error("unexpected end of input".to_string())),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".to_string()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().expect("digits");
                let r = Rational::from_bigints(n, BigInt::from(1)).expect("unit denominator");
                Ok(RationalFunction::constant_in(self.vars.clone(), r))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(RationalFunction::variable(self.vars.clone(), i)),
                    None => Err(Error::Parse {
                        column: start + 1,
                        message: format!("unknown variable `{name}`"),
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }
}
