//! Recursive-descent reader for the tree text grammar and for linear
//! combinations of trees such as `2*B(a,e,|,e,|) - 1/3*B(b,e,|,e,|)`.

use crate::error::{Error, Result};
use crate::exactalg::{LinComb, Rational};

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_name_char)
}

pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, src }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && is_name_char(self.chars[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
        {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected a coefficient"))
    }
}

/// Parses `[±] [coeff *] item ( ± [coeff *] item )*`.
pub(crate) fn parse_lincomb<K, F>(src: &str, mut item: F) -> Result<LinComb<K>>
where
    K: Ord + Clone,
    F: FnMut(&mut Cursor<'_>) -> Result<K>,
{
    let mut cur = Cursor::new(src);
    let mut out = LinComb::zero();
    if cur.peek() == Some('0') {
        cur.pos += 1;
        cur.finish()?;
        return Ok(out);
    }
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        if cur.eat('-') {
            sign = -sign;
        } else if !cur.eat('+') && !first {
            return Err(cur.error("expected `+` or `-`"));
        }
        let coeff = match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = cur.rational()?;
                cur.expect('*')?;
                c
            }
            _ => Rational::one(),
        };
        let key = item(&mut cur)?;
        out.add_term(key, sign * coeff);
        first = false;
        if cur.peek().is_none() {
            return Ok(out);
        }
    }
}
