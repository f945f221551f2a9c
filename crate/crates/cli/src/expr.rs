//! Element arguments: Element JSON, or short expressions such as
//! `r2*r3 - 3 L r1 + 1`.
//!
//! Terms are joined by `+` / `-`; factors inside a term by `*`, `·` or
//! whitespace. A factor is an integer, a generator `r<i>`, or the base class
//! written `L`, `{-1}` or `{−1}`, optionally raised to a power with `^k`.

use stiefel_core::json::element_from_json_in;
use stiefel_core::{AlgebraError, Element, MCoefficient, Presentation, Result, StiefelPresentation};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Times,
    Int(i64),
    Gen(u32),
    MinusOne,
    Caret,
}

fn bad(input: &str, what: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(format!("cannot parse element {input:?}: {}", what.into()))
}

fn digits(chars: &[char], pos: &mut usize) -> String {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    chars[start..*pos].iter().collect()
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < chars.len() {
        let c = chars[pos];
        match c {
            c if c.is_whitespace() => pos += 1,
            '+' => {
                out.push(Token::Plus);
                pos += 1;
            }
            '-' | '−' => {
                out.push(Token::Minus);
                pos += 1;
            }
            '*' | '·' => {
                out.push(Token::Times);
                pos += 1;
            }
            '^' => {
                out.push(Token::Caret);
                pos += 1;
            }
            'L' => {
                out.push(Token::MinusOne);
                pos += 1;
            }
            '{' => {
                let rest: String = chars[pos..].iter().take(4).collect();
                if rest != "{-1}" && rest != "{−1}" {
                    return Err(bad(input, format!("unexpected {rest:?}")));
                }
                out.push(Token::MinusOne);
                pos += 4;
            }
            'r' => {
                pos += 1;
                let d = digits(&chars, &mut pos);
                let i = d.parse().map_err(|_| bad(input, "expected an index after 'r'"))?;
                out.push(Token::Gen(i));
            }
            c if c.is_ascii_digit() => {
                let d = digits(&chars, &mut pos);
                out.push(Token::Int(d.parse().map_err(|_| bad(input, format!("integer {d} is too large")))?));
            }
            other => return Err(bad(input, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Parses an element of `pres` from JSON or from an expression.
pub fn parse_element(input: &str, pres: &StiefelPresentation) -> Result<Element> {
    if input.trim_start().starts_with('{') && input.contains('"') {
        return element_from_json_in(input, pres);
    }
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(bad(input, "empty expression"));
    }
    let mut total = Element::zero(*pres);
    let mut pos = 0;
    let mut negative = false;
    let mut expect_term = true;
    let mut term = Element::one(*pres);
    while pos < tokens.len() {
        match &tokens[pos] {
            Token::Plus | Token::Minus if expect_term => {
                negative ^= tokens[pos] == Token::Minus;
                pos += 1;
            }
            Token::Plus | Token::Minus => {
                total = total.add(&if negative { term.neg() } else { term })?;
                term = Element::one(*pres);
                negative = tokens[pos] == Token::Minus;
                expect_term = true;
                pos += 1;
            }
            Token::Times if !expect_term => {
                expect_term = true;
                pos += 1;
            }
            Token::Times | Token::Caret => return Err(bad(input, "misplaced operator")),
            factor => {
                let exponent = match tokens.get(pos + 1..pos + 3) {
                    Some([Token::Caret, Token::Int(e)]) => {
                        pos += 2;
                        u32::try_from(*e).map_err(|_| bad(input, "exponent too large"))?
                    }
                    Some([Token::Caret, _]) => return Err(bad(input, "'^' must be followed by an integer")),
                    _ if tokens.get(pos + 1) == Some(&Token::Caret) => {
                        return Err(bad(input, "'^' must be followed by an integer"))
                    }
                    _ => 1,
                };
                term = match factor {
                    Token::Int(c) => term.scale_int(c.checked_pow(exponent).ok_or(AlgebraError::Overflow)?)?,
                    Token::MinusOne => term.scale(&MCoefficient::minus_one_power(pres.base(), exponent))?,
                    Token::Gen(i) => term.mul(&pres.generator(*i)?.pow(exponent)?)?,
                    _ => unreachable!("operators handled above"),
                };
                expect_term = false;
                pos += 1;
            }
        }
    }
    if expect_term {
        return Err(bad(input, "expression ends with an operator"));
    }
    total.add(&if negative { term.neg() } else { term })
}

#[cfg(test)]
mod tests {
    use super::*;
    use stiefel_core::{CoeffRing, FieldProfile};

    fn gl3() -> StiefelPresentation {
        StiefelPresentation::general_linear(3, CoeffRing::Integers, FieldProfile::default()).unwrap()
    }

    #[test]
    fn words_and_scalars() {
        let p = gl3();
        assert_eq!(parse_element("r2", &p).unwrap(), p.generator(2).unwrap());
        assert_eq!(parse_element("r3*r2", &p).unwrap(), p.word(&[3, 2]).unwrap());
        assert_eq!(parse_element("r2 r2", &p).unwrap(), parse_element("L r3", &p).unwrap());
        assert_eq!(parse_element("r2^2", &p).unwrap(), parse_element("{−1}·r3", &p).unwrap());
        assert_eq!(parse_element("1", &p).unwrap(), Element::one(p));
        let x = parse_element("-2 r1 + r3 - r3", &p).unwrap();
        assert_eq!(x, p.generator(1).unwrap().scale_int(-2).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        let p = gl3();
        for s in ["", "r", "r2 +", "x", "r2^", "* r2", "{-2}"] {
            assert!(parse_element(s, &p).unwrap_err().is_parse_error(), "{s}");
        }
        assert!(matches!(parse_element("r4", &p), Err(AlgebraError::InvalidGenerator(4, _))));
    }
}
