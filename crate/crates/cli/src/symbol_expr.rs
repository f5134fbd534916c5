//! Parser for the symbol expression grammar: a sum of terms, each an
//! optional rational-or-decimal coefficient and factors `zK^m`, `zbK^m`, or
//! `i`, joined by `*`. Examples: `"z1 + zb1"`, `"(1/2)*z1^2*zb2"`,
//! `"0.25*z1*zb1 - i*z2"`. Errors carry the byte offset of the offending
//! token.

use oddsphere_core::exact::{crat_int, parse_rat, rat_int, CRat};
use oddsphere_core::multiindex::MultiIndex;
use oddsphere_core::symbols::PolynomialSymbol;

#[derive(Debug)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Imag,
    Var { conj: bool, index: usize, power: u32 },
    Plus,
    Minus,
    Star,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>, ParseError> {
        self.skip_ws();
        if self.pos >= self.text.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.text[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Some((start, Token::Plus)))
            }
            b'-' => {
                self.pos += 1;
                Ok(Some((start, Token::Minus)))
            }
            b'*' => {
                self.pos += 1;
                Ok(Some((start, Token::Star)))
            }
            b'(' => {
                // Parenthesized coefficient: capture through the matching ')'.
                let close = self.text[self.pos..]
                    .iter()
                    .position(|&b| b == b')')
                    .ok_or_else(|| self.error(start, "unclosed '('"))?;
                let inner =
                    std::str::from_utf8(&self.text[self.pos + 1..self.pos + close]).unwrap();
                self.pos += close + 1;
                Ok(Some((start, Token::Number(inner.trim().to_string()))))
            }
            b'0'..=b'9' | b'.' => {
                let mut end = self.pos;
                let mut seen_exp = false;
                while end < self.text.len() {
                    let b = self.text[end];
                    let ok = b.is_ascii_digit()
                        || b == b'.'
                        || b == b'/'
                        || b == b'e'
                        || b == b'E'
                        || ((b == b'+' || b == b'-') && seen_exp && {
                            let prev = self.text[end - 1];
                            prev == b'e' || prev == b'E'
                        });
                    if b == b'e' || b == b'E' {
                        seen_exp = true;
                    }
                    if !ok {
                        break;
                    }
                    end += 1;
                }
                let s = std::str::from_utf8(&self.text[self.pos..end]).unwrap();
                self.pos = end;
                Ok(Some((start, Token::Number(s.to_string()))))
            }
            b'i' => {
                self.pos += 1;
                Ok(Some((start, Token::Imag)))
            }
            b'z' => {
                let conj = self.text.get(self.pos + 1) == Some(&b'b');
                let digits_at = self.pos + if conj { 2 } else { 1 };
                let mut end = digits_at;
                while end < self.text.len() && self.text[end].is_ascii_digit() {
                    end += 1;
                }
                if end == digits_at {
                    return Err(self.error(start, "variable needs a coordinate index, e.g. z1"));
                }
                let index: usize = std::str::from_utf8(&self.text[digits_at..end])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.error(start, "bad coordinate index"))?;
                self.pos = end;
                let mut power = 1u32;
                if self.text.get(self.pos) == Some(&b'^') {
                    let pstart = self.pos + 1;
                    let mut pend = pstart;
                    while pend < self.text.len() && self.text[pend].is_ascii_digit() {
                        pend += 1;
                    }
                    if pend == pstart {
                        return Err(self.error(self.pos, "'^' needs an integer exponent"));
                    }
                    power = std::str::from_utf8(&self.text[pstart..pend])
                        .unwrap()
                        .parse()
                        .map_err(|_| self.error(pstart, "exponent out of range"))?;
                    self.pos = pend;
                }
                Ok(Some((start, Token::Var { conj, index, power })))
            }
            other => Err(self.error(start, format!("unknown token '{}'", other as char))),
        }
    }
}

/// Parses an expression into a canonical symbol of dimension `d`.
pub fn parse_symbol(text: &str, d: u32) -> Result<PolynomialSymbol, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    while let Some(t) = lexer.next_token()? {
        tokens.push(t);
    }
    if tokens.is_empty() {
        return Err(ParseError {
            offset: 0,
            message: "empty expression".to_string(),
        });
    }
    let mut acc = PolynomialSymbol::zero(d);
    let mut pos = 0usize;
    let mut first_term = true;
    while pos < tokens.len() {
        // Optional sign between terms (required after the first term).
        let mut negative = false;
        loop {
            match tokens.get(pos) {
                Some((_, Token::Plus)) => {
                    pos += 1;
                    first_term = false;
                }
                Some((_, Token::Minus)) => {
                    negative = !negative;
                    pos += 1;
                    first_term = false;
                }
                _ => break,
            }
        }
        let _ = first_term;
        // One term: factors separated by '*'.
        let mut coeff: CRat = crat_int(if negative { -1 } else { 1 }, 0);
        let mut a = vec![0u32; d as usize];
        let mut b = vec![0u32; d as usize];
        let mut expect_factor = true;
        let mut any_factor = false;
        while pos < tokens.len() {
            match &tokens[pos] {
                (offset, Token::Number(s)) if expect_factor => {
                    let r = parse_rat(s).ok_or(ParseError {
                        offset: *offset,
                        message: format!("bad number '{s}'"),
                    })?;
                    coeff = coeff * CRat::new(r, rat_int(0));
                    pos += 1;
                    expect_factor = false;
                    any_factor = true;
                }
                (_, Token::Imag) if expect_factor => {
                    coeff = coeff * crat_int(0, 1);
                    pos += 1;
                    expect_factor = false;
                    any_factor = true;
                }
                (offset, Token::Var { conj, index, power }) if expect_factor => {
                    if *index < 1 || *index > d as usize {
                        return Err(ParseError {
                            offset: *offset,
                            message: format!(
                                "coordinate {index} outside dimension d = {d}"
                            ),
                        });
                    }
                    if *conj {
                        b[index - 1] += power;
                    } else {
                        a[index - 1] += power;
                    }
                    pos += 1;
                    expect_factor = false;
                    any_factor = true;
                }
                (_, Token::Star) if !expect_factor => {
                    pos += 1;
                    expect_factor = true;
                }
                (_, Token::Plus | Token::Minus) if !expect_factor => break,
                (offset, tok) => {
                    return Err(ParseError {
                        offset: *offset,
                        message: format!("unexpected token {tok:?}"),
                    });
                }
            }
        }
        if !any_factor {
            return Err(ParseError {
                offset: tokens.get(pos).map(|t| t.0).unwrap_or(text.len()),
                message: "empty term".to_string(),
            });
        }
        let term = PolynomialSymbol::monomial(MultiIndex::new(a), MultiIndex::new(b), coeff)
            .map_err(|e| ParseError {
                offset: 0,
                message: e.to_string(),
            })?;
        acc = acc.add(&term).expect("dimensions match by construction");
    }
    Ok(acc)
}
