//! Expression grammar shared by the CLI and the presentation text format.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := generator | 'h' | 'nu' | 'zeta' | 'M' | 'j' | uint | '(' expr ')'
//! ```
//!
//! Products are raw concatenations; a coefficient written to the right of
//! a generator is moved left with the weight shift. The right operand of
//! `/` must be a nonzero commutative expression.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::coeff::{Poly, RatFunc, Var};
use crate::ncalg::{concat, Alphabet, NCElement, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownSymbol,
    MalformedRational,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind:?} at position {pos}: {msg}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            kind,
            pos,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Gen(usize),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str, alphabet: &Alphabet) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i].is_ascii_alphabetic()) {
                    return Err(ParseError::new(
                        ParseErrorKind::MalformedRational,
                        start,
                        format!("malformed number near {:?}", &src[start..=i]),
                    ));
                }
                out.push((Tok::Num(src[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let ident = &src[start..i];
                // Prefer the longest generator name: `z+` over `z`.
                if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                    if let Some(g) = alphabet.index_of(&src[start..=i]) {
                        out.push((Tok::Gen(g), start));
                        i += 1;
                        continue;
                    }
                }
                let tok = if let Some(g) = alphabet.index_of(ident) {
                    Tok::Gen(g)
                } else if let Some(v) = Var::from_name(ident) {
                    Tok::Var(v)
                } else {
                    return Err(ParseError::new(
                        ParseErrorKind::UnknownSymbol,
                        start,
                        format!("unknown symbol {ident:?}"),
                    ));
                };
                out.push((tok, start));
                continue;
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    start,
                    format!("unexpected character {other:?}"),
                ))
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<NCElement, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCElement, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = concat(&acc, &rhs, self.alphabet);
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    let s = rhs.as_scalar().ok_or_else(|| {
                        ParseError::new(
                            ParseErrorKind::Syntax,
                            pos,
                            "divisor must be a commutative expression",
                        )
                    })?;
                    let inv = s.inv().map_err(|_| {
                        ParseError::new(ParseErrorKind::MalformedRational, pos, "division by zero")
                    })?;
                    acc = concat(&acc, &NCElement::scalar(inv), self.alphabet);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NCElement, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<NCElement, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let exp = match self.bump() {
            Tok::Num(n) => u32::try_from(n)
                .map_err(|_| ParseError::new(ParseErrorKind::Syntax, pos, "exponent too large"))?,
            _ => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    pos,
                    "expected unsigned integer exponent",
                ))
            }
        };
        let mut acc = NCElement::one();
        for _ in 0..exp {
            acc = concat(&acc, &base, self.alphabet);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<NCElement, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(NCElement::scalar(RatFunc::constant(
                BigRational::from_integer(n),
            ))),
            Tok::Gen(g) => Ok(NCElement::generator(g)),
            Tok::Var(v) => Ok(NCElement::scalar(RatFunc::var(v))),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                if self.bump() != Tok::RParen {
                    return Err(ParseError::new(
                        ParseErrorKind::Syntax,
                        close,
                        "expected ')'",
                    ));
                }
                Ok(inner)
            }
            Tok::End => Err(ParseError::new(
                ParseErrorKind::Syntax,
                pos,
                "unexpected end of input",
            )),
            other => Err(ParseError::new(
                ParseErrorKind::Syntax,
                pos,
                format!("unexpected token {other:?}"),
            )),
        }
    }
}

/// Parses an expression over the given generators.
pub fn parse(src: &str, alphabet: &Alphabet) -> Result<NCElement, ParseError> {
    let toks = lex(src, alphabet)?;
    let mut p = Parser {
        toks,
        at: 0,
        alphabet,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::new(
            ParseErrorKind::Syntax,
            p.pos(),
            "unexpected trailing input",
        ));
    }
    Ok(e)
}

/// Parses an expression that must be free of generators.
pub fn parse_scalar(src: &str, alphabet: &Alphabet) -> Result<RatFunc, ParseError> {
    parse(src, alphabet)?.as_scalar().ok_or_else(|| {
        ParseError::new(
            ParseErrorKind::Syntax,
            0,
            "expected a commutative expression",
        )
    })
}

/// Coefficient text with a positive leading numerator coefficient.
fn coeff_body(f: &RatFunc) -> String {
    if f.is_polynomial() {
        if f.num().len() > 1 {
            format!("({})", f.num())
        } else {
            f.num().to_string()
        }
    } else {
        f.to_string()
    }
}

fn term_body(f: &RatFunc, w: &Word, alphabet: &Alphabet) -> String {
    if w.is_empty() {
        return coeff_body(f);
    }
    let word = alphabet.render_word(w);
    if f.is_one() {
        word
    } else {
        format!("{} * {}", coeff_body(f), word)
    }
}

/// Canonical rendering with left coefficients, longest words first.
/// `parse(render(e)) == e`.
pub fn render(e: &NCElement, alphabet: &Alphabet) -> String {
    let terms = e.display_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, f)) in terms.into_iter().enumerate() {
        let negative = f.num().leading_coeff().is_some_and(|c| c.is_negative());
        let body = if negative {
            term_body(&-f, w, alphabet)
        } else {
            term_body(f, w, alphabet)
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// Display adapter pairing an element with its generator names.
pub struct Rendered<'a>(pub &'a NCElement, pub &'a Alphabet);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.0, self.1))
    }
}

/// Renders a scalar polynomial; used for JSON numerator/denominator fields.
pub fn render_poly(p: &Poly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Generator;

    fn sl2() -> Alphabet {
        Alphabet::new(vec![
            Generator::new("z-", -2),
            Generator::new("t", 0),
            Generator::new("z+", 2),
        ])
        .unwrap()
    }

    #[test]
    fn parses_products_of_generators() {
        let a = sl2();
        let e = parse("z+ * t", &a).unwrap();
        assert_eq!(e, NCElement::word(Word(vec![2, 1])));
    }

    #[test]
    fn right_coefficients_are_pushed_left() {
        let a = sl2();
        // z+ * h = (h - 2) * z+
        let e = parse("z+ * h", &a).unwrap();
        assert_eq!(e, NCElement::monomial(RatFunc::h_plus(-2), Word(vec![2])));
        let e = parse("z- * (h+2)/h", &a).unwrap();
        let expect = RatFunc::h_plus(4).checked_div(&RatFunc::h_plus(2)).unwrap();
        assert_eq!(e, NCElement::monomial(expect, Word(vec![0])));
    }

    #[test]
    fn powers_and_unary_minus() {
        let a = sl2();
        let e = parse("-t^2/4 + 1", &a).unwrap();
        let quarter = RatFunc::constant(BigRational::new((-1).into(), 4.into()));
        let expect =
            NCElement::from_terms([(Word(vec![1, 1]), quarter), (Word::empty(), RatFunc::one())]);
        assert_eq!(e, expect);
        assert_eq!(parse("h^0", &a).unwrap(), NCElement::one());
    }

    #[test]
    fn errors_carry_kind_and_position() {
        let a = sl2();
        let err = parse("z+ * q", &a).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownSymbol);
        assert_eq!(err.pos, 5);
        assert_eq!(
            parse("1/0", &a).unwrap_err().kind,
            ParseErrorKind::MalformedRational
        );
        assert_eq!(
            parse("3.5", &a).unwrap_err().kind,
            ParseErrorKind::MalformedRational
        );
        assert_eq!(parse("(t", &a).unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(
            parse("t / z+", &a).unwrap_err().kind,
            ParseErrorKind::Syntax
        );
        assert_eq!(parse("t t", &a).unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse("", &a).unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(
            parse("z + t", &a).unwrap_err().kind,
            ParseErrorKind::UnknownSymbol
        );
    }

    #[test]
    fn render_is_canonical() {
        let a = sl2();
        let e = parse("z- * z+ * h*(h+3)/((h+1)*(h+2)) - t^2 * 1/h + h", &a).unwrap();
        let s = render(&e, &a);
        assert_eq!(
            s,
            "(h^2 + 3*h)/(h^2 + 3*h + 2) * z- * z+ - (1)/(h) * t * t + h"
        );
        assert_eq!(parse(&s, &a).unwrap(), e);
        assert_eq!(render(&NCElement::zero(), &a), "0");
        assert_eq!(render(&-&NCElement::generator(2), &a), "-z+");
    }
}
