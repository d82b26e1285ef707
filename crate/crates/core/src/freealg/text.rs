//! Text syntax for free-algebra elements: terms like `3/2*x.s.tau - tau^2`
//! with `.` for concatenation and `^` for repetition. The printer and
//! parser round-trip exactly.

use super::{FreeElement, Gen, Word};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn generator(&mut self) -> Result<Gen, ParseError> {
        if self.text[self.pos..].starts_with(b"tau") {
            self.pos += 3;
            Ok(Gen::Tau)
        } else if self.eat(b'x') {
            Ok(Gen::X)
        } else if self.eat(b's') {
            Ok(Gen::S)
        } else {
            Err(self.err("expected a generator (x, s or tau)"))
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        loop {
            let g = self.generator()?;
            let power = if self.eat(b'^') { self.uint()? } else { 1 };
            if power == 0 {
                return Err(self.err("zero exponent"));
            }
            letters.extend(std::iter::repeat(g).take(power as usize));
            if !self.eat(b'.') {
                break;
            }
        }
        Ok(Word(letters))
    }

    fn coefficient(&mut self) -> Result<Scalar, ParseError> {
        let numer = self.uint()?;
        let text = if self.eat(b'/') {
            let denom = self.uint()?;
            if denom == 0 {
                return Err(self.err("zero denominator"));
            }
            format!("{numer}/{denom}")
        } else {
            numer.to_string()
        };
        text.parse().map_err(|_| self.err("bad coefficient"))
    }

    /// One term: `coeff`, `word`, or `coeff*word`.
    fn term(&mut self) -> Result<(Scalar, Word), ParseError> {
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let coeff = self.coefficient()?;
            if self.eat(b'*') {
                let word = self.word()?;
                Ok((coeff, word))
            } else {
                Ok((coeff, Word::empty()))
            }
        } else {
            let word = self.word()?;
            Ok((Scalar::one(), word))
        }
    }
}

/// Parse the element syntax. `0` denotes the zero element.
pub fn parse_element(text: &str) -> Result<FreeElement, ParseError> {
    let mut cursor = Cursor::new(text);
    cursor.skip_ws();
    if cursor.peek().is_none() {
        return Err(cursor.err("empty input"));
    }
    let mut out = FreeElement::zero();
    let mut negative = cursor.eat(b'-');
    if !negative {
        cursor.eat(b'+');
    }
    loop {
        cursor.skip_ws();
        let (coeff, word) = cursor.term()?;
        let signed = if negative { -coeff } else { coeff };
        out.add_term(word, signed);
        cursor.skip_ws();
        match cursor.peek() {
            None => break,
            Some(b'+') => {
                cursor.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cursor.pos += 1;
                negative = true;
            }
            Some(other) => {
                return Err(cursor.err(format!("unexpected character `{}`", other as char)))
            }
        }
    }
    Ok(out)
}
