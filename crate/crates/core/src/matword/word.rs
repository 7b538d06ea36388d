use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Mat2, MatError, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    fn symbol(self) -> char {
        match (self.generator, self.inverse) {
            (Generator::A, false) => 'a',
            (Generator::A, true) => 'A',
            (Generator::B, false) => 'b',
            (Generator::B, true) => 'B',
        }
    }
}

/// Freely reduced word in `a, b` and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    /// Parses words such as `abAB`, `a^-1 b a b^-1`, `(bABa)^-1` or `(ab)^3`.
    /// Capitals denote inverses.
    pub fn parse(text: &str) -> Result<Self, MatError> {
        let mut p = WordParser {
            src: text.as_bytes(),
            pos: 0,
        };
        let letters = p.sequence()?;
        if p.pos < p.src.len() {
            return Err(MatError::WordSyntax {
                pos: p.pos,
                msg: "unbalanced `)`".into(),
            });
        }
        Ok(Self::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Product of the letter images, left to right. Inverse letters use the
    /// adjugate and need unit determinant.
    pub fn eval<T: Scalar>(&self, a: &Mat2<T>, b: &Mat2<T>) -> Result<Mat2<T>, MatError> {
        let needs = |g| self.letters.iter().any(|l| l.generator == g && l.inverse);
        let a_inv = if needs(Generator::A) { Some(a.inverse()?) } else { None };
        let b_inv = if needs(Generator::B) { Some(b.inverse()?) } else { None };
        let mut acc = Mat2::identity_like(&a.e11);
        for l in &self.letters {
            let m = match (l.generator, l.inverse) {
                (Generator::A, false) => a,
                (Generator::A, true) => a_inv.as_ref().unwrap(),
                (Generator::B, false) => b,
                (Generator::B, true) => b_inv.as_ref().unwrap(),
            };
            acc = acc.mul(m);
        }
        Ok(acc)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "1" {
            return Ok(GroupWord::default());
        }
        GroupWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, MatError> {
        Err(MatError::WordSyntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace() || *c == b'*' || *c == b'.')
        {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Vec<Letter>, MatError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let atom: Vec<Letter> = match c {
                b'a' | b'b' | b'A' | b'B' => {
                    self.pos += 1;
                    let generator = if c.eq_ignore_ascii_case(&b'a') { Generator::A } else { Generator::B };
                    vec![Letter {
                        generator,
                        inverse: c.is_ascii_uppercase(),
                    }]
                }
                b'(' => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    if self.peek() != Some(b')') {
                        return self.err("expected `)`");
                    }
                    self.pos += 1;
                    inner
                }
                b')' => break,
                _ => return self.err("unknown symbol"),
            };
            let power = self.exponent()?;
            let base: Vec<Letter> = if power < 0 {
                atom.iter().rev().map(|l| l.inv()).collect()
            } else {
                atom
            };
            for _ in 0..power.unsigned_abs() {
                out.extend_from_slice(&base);
            }
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<i64, MatError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected exponent");
        }
        let k: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("exponent out of range"))?;
        Ok(if neg { -k } else { k })
    }
}
