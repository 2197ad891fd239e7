//! Text syntax for field elements, polynomials, rational functions and
//! places.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := power (('*' | '/') power)*
//! power  := atom ('^' integer)?
//! atom   := 't' | 'g' | '0b' bits | integer | '(' expr ')'
//! place  := 'inf' | expr            (a monic irreducible polynomial)
//! ```
//!
//! `g` is the generator of GF(2^k) over GF(2), `0b...` a field element
//! given by its bits, and the integers `0` and `1` the field constants.
//! Subtraction equals addition in characteristic 2.

use char2quad::{FieldElement, FieldSpec, Place, Poly, RatFunc};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}: `{token}` at position {position}")]
pub struct ParseError {
    pub message: String,
    pub token: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    T,
    G,
    Bits(u64),
    Int(u64),
    Plus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    text: String,
    position: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' | '-' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            't' => Some(Tok::T),
            'g' => Some(Tok::G),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, text: c.to_string(), position: pos });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            let err = |message: &str| ParseError { message: message.into(), token: text.clone(), position: pos };
            let tok = if let Some(bits) = text.strip_prefix("0b") {
                if bits.is_empty() || bits.len() > 64 {
                    return Err(err("invalid bit string"));
                }
                Tok::Bits(u64::from_str_radix(bits, 2).map_err(|_| err("invalid bit string"))?)
            } else {
                Tok::Int(text.parse().map_err(|_| err("invalid integer"))?)
            };
            out.push(Token { tok, text, position: pos });
            continue;
        }
        return Err(ParseError { message: "unexpected character".into(), token: c.to_string(), position: pos });
    }
    out.push(Token { tok: Tok::End, text: "end of input".into(), position: input.len() });
    Ok(out)
}

struct Parser {
    field: FieldSpec,
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error(token: &Token, message: &str) -> ParseError {
        ParseError { message: message.into(), token: token.text.clone(), position: token.position }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while self.peek().tok == Tok::Plus {
            self.next();
            acc = &acc + &self.term()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.power()?;
                }
                Tok::Slash => {
                    let slash = self.next();
                    let d = self.power()?;
                    if d.is_zero() {
                        return Err(Self::error(&slash, "division by zero"));
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let exp = self.next();
        let Tok::Int(e) = exp.tok else { return Err(Self::error(&exp, "expected an exponent")) };
        if e > 1 << 20 {
            return Err(Self::error(&exp, "exponent too large"));
        }
        Ok(base.pow(e as i64))
    }

    fn constant(&self, token: &Token, bits: u64) -> Result<RatFunc, ParseError> {
        if bits >= self.field.order() {
            return Err(Self::error(token, "element outside the field"));
        }
        Ok(RatFunc::constant(self.field.elem(bits)))
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        let token = self.next();
        match token.tok {
            Tok::T => Ok(RatFunc::t(self.field)),
            Tok::G => Ok(RatFunc::constant(self.field.generator())),
            Tok::Bits(b) => self.constant(&token, b),
            Tok::Int(n) if n <= 1 => self.constant(&token, n),
            Tok::Int(_) => Err(Self::error(&token, "integer constants must be 0 or 1")),
            Tok::Open => {
                let inner = self.expr()?;
                let close = self.next();
                if close.tok != Tok::Close {
                    return Err(Self::error(&close, "expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(Self::error(&token, "expected a term")),
        }
    }
}

pub fn parse_ratfunc(field: FieldSpec, input: &str) -> Result<RatFunc, ParseError> {
    let mut p = Parser { field, tokens: lex(input)?, at: 0 };
    if p.peek().tok == Tok::End {
        return Err(Parser::error(p.peek(), "empty expression"));
    }
    let value = p.expr()?;
    let rest = p.peek();
    if rest.tok != Tok::End {
        return Err(Parser::error(rest, "unexpected token"));
    }
    Ok(value)
}

pub fn parse_poly(field: FieldSpec, input: &str) -> Result<Poly, ParseError> {
    let r = parse_ratfunc(field, input)?;
    if !r.is_polynomial() {
        return Err(ParseError { message: "expected a polynomial".into(), token: input.trim().into(), position: 0 });
    }
    Ok(r.num().clone())
}

pub fn parse_element(field: FieldSpec, input: &str) -> Result<FieldElement, ParseError> {
    parse_ratfunc(field, input)?.as_constant().ok_or_else(|| ParseError {
        message: "expected a field element".into(),
        token: input.trim().into(),
        position: 0,
    })
}

/// `inf`, or a monic irreducible polynomial.
pub fn parse_place(field: FieldSpec, input: &str) -> Result<Place, ParseError> {
    let trimmed = input.trim();
    if trimmed == "inf" {
        return Ok(Place::Infinite);
    }
    let p = parse_poly(field, input)?;
    let offset = input.len() - input.trim_start().len();
    let err = |message: &str| ParseError { message: message.into(), token: trimmed.into(), position: offset };
    if !p.is_monic() {
        return Err(err("a place must be a monic polynomial"));
    }
    Place::finite(&p).map_err(|e| err(&e.to_string()))
}

/// Comma-separated places; positions refer to the whole list.
pub fn parse_places(field: FieldSpec, input: &str) -> Result<Vec<Place>, ParseError> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in input.split(',') {
        let place = parse_place(field, part).map_err(|e| ParseError { position: e.position + offset, ..e })?;
        out.push(place);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// `q = 2^k` with an optional defining polynomial over GF(2) for GF(q).
pub fn parse_field(order: u64, modulus: Option<&str>) -> Result<FieldSpec, ParseError> {
    let err = |message: String, token: String| ParseError { message, token, position: 0 };
    if order < 2 || !order.is_power_of_two() {
        return Err(err("field order must be a power of two".into(), order.to_string()));
    }
    let k = order.trailing_zeros();
    match modulus {
        None => FieldSpec::with_degree(k).map_err(|e| err(e.to_string(), order.to_string())),
        Some(text) => {
            let m = parse_poly(FieldSpec::binary(), text)?;
            let bits = m.coeffs().iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c & 1) << i);
            if m.deg() != k as usize {
                return Err(err(format!("modulus must have degree {k}"), text.into()));
            }
            FieldSpec::new(k, bits).map_err(|e| err(e.to_string(), text.into()))
        }
    }
}
