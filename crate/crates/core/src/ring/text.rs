//! Canonical text form: terms in graded order, explicit ` + ` / ` - `
//! separators, `*` between factors and `^` exponents, e.g.
//! `m^2 + m^-2 - q - 1`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, RingError, VarContext};

pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, names: &[String], terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a [i32], &'a BigInt)>,
{
    let mut first = true;
    for (exps, c) in terms {
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (name, &e) in names.iter().zip(exps) {
            match e {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        if factors.is_empty() {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(&factors.join("*"))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Parses a polynomial over `ctx`. Accepts the canonical form plus loose
/// input such as `3 + 2x - 3z - x z + z^2` or `m^-2`.
pub fn parse_poly(text: &str, ctx: &Arc<VarContext>) -> Result<LaurentPoly, RingError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    }
    .parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Arc<VarContext>,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RingError> {
        Err(RingError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<LaurentPoly, RingError> {
        let n = self.ctx.len();
        let mut terms: Vec<(Vec<i32>, BigInt)> = Vec::new();
        let mut sign = BigInt::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let (coeff, exps) = self.term(n)?;
            terms.push((exps, sign * coeff));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    sign = BigInt::one();
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -BigInt::one();
                    self.pos += 1;
                }
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            }
        }
        LaurentPoly::from_terms(self.ctx, terms)
    }

    fn term(&mut self, n: usize) -> Result<(BigInt, Vec<i32>), RingError> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0i32; n];
        let mut any = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.integer()?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let i = match self.ctx.index_of(name) {
                        Ok(i) => i,
                        Err(_) => {
                            // juxtaposed single-letter variables, e.g. `xz`
                            let first = &name[..1];
                            match self.ctx.index_of(first) {
                                Ok(i) if name.len() > 1 => {
                                    self.pos = start + 1;
                                    i
                                }
                                _ => {
                                    self.pos = start;
                                    return self.err(format!("unknown variable `{name}`"));
                                }
                            }
                        }
                    };
                    let mut e = 1i32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let neg = if self.peek() == Some(b'-') {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        self.skip_ws();
                        let k = self.integer()?;
                        let k: i32 = match i32::try_from(&k) {
                            Ok(k) => k,
                            Err(_) => return self.err("exponent out of range"),
                        };
                        e = if neg { -k } else { k };
                    }
                    exps[i] += e;
                }
                Some(b'(') => return self.err("parentheses are not supported"),
                _ => {
                    if !any {
                        return self.err("expected a term");
                    }
                    break;
                }
            }
            any = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        if coeff.is_zero() {
            exps.iter_mut().for_each(|e| *e = 0);
        }
        Ok((coeff, exps))
    }

    fn integer(&mut self) -> Result<BigInt, RingError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ctx_mq, ctx_xz};

    #[test]
    fn canonical_text_of_riley_seed() {
        let p = parse_poly("-1 + m^2 + m^-2 - q", &ctx_mq()).unwrap();
        assert_eq!(p.to_string(), "m^2 + m^-2 - q - 1");
    }

    #[test]
    fn canonical_text_of_twist_trace() {
        let p = parse_poly("2+2x-2z-xz+z^2", &ctx_xz()).unwrap();
        assert_eq!(p.to_string(), "-x*z + z^2 + 2*x - 2*z + 2");
        assert_eq!(parse_poly(&p.to_string(), &ctx_xz()).unwrap(), p);
    }

    #[test]
    fn zero_prints_as_zero() {
        let p = parse_poly("x - x", &ctx_xz()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poly("", &ctx_xz()), Err(RingError::Parse { .. })));
        assert!(matches!(parse_poly("x + y", &ctx_xz()), Err(RingError::Parse { .. })));
        assert!(matches!(parse_poly("x +", &ctx_xz()), Err(RingError::Parse { .. })));
        assert_eq!(
            parse_poly("z^-1", &ctx_xz()),
            Err(RingError::NegativeExponent("z".into()))
        );
    }
}
