use num_bigint::BigInt;

use super::ParseError;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(Rational),
    Ident(String, usize),
    I,
    Plus,
    Minus,
    Star,
    Pow,
    Wedge,
    LParen,
    RParen,
    End,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Num(r) => format!("number {r}"),
            Tok::Ident(name, k) => format!("'{name}{k}'"),
            Tok::I => "'i'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Pow => "'**'".into(),
            Tok::Wedge => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
        expected: Vec::new(),
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        let advance = |k: &mut usize, col: &mut usize, by: usize| {
            *k += by;
            *col += by;
        };
        if c == '\n' {
            k += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(&mut k, &mut col, 1);
            continue;
        }
        let tok = match c {
            '+' => {
                advance(&mut k, &mut col, 1);
                Tok::Plus
            }
            '-' => {
                advance(&mut k, &mut col, 1);
                Tok::Minus
            }
            '^' => {
                advance(&mut k, &mut col, 1);
                Tok::Wedge
            }
            '(' => {
                advance(&mut k, &mut col, 1);
                Tok::LParen
            }
            ')' => {
                advance(&mut k, &mut col, 1);
                Tok::RParen
            }
            '*' if chars.get(k + 1) == Some(&'*') => {
                advance(&mut k, &mut col, 2);
                Tok::Pow
            }
            '*' => {
                advance(&mut k, &mut col, 1);
                Tok::Star
            }
            d if d.is_ascii_digit() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    advance(&mut k, &mut col, 1);
                }
                let num: BigInt = chars[start..k]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .expect("digits");
                let mut den = BigInt::from(1);
                if chars.get(k) == Some(&'/') && chars.get(k + 1).is_some_and(char::is_ascii_digit) {
                    advance(&mut k, &mut col, 1);
                    let s = k;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        advance(&mut k, &mut col, 1);
                    }
                    den = chars[s..k].iter().collect::<String>().parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(error(l0, c0, "zero denominator in rational literal"));
                    }
                }
                Tok::Num(Rational::new(num, den))
            }
            a if a.is_ascii_alphabetic() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_alphabetic() {
                    advance(&mut k, &mut col, 1);
                }
                let name: String = chars[start..k].iter().collect();
                let dstart = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    advance(&mut k, &mut col, 1);
                }
                let digits: String = chars[dstart..k].iter().collect();
                match (name.as_str(), digits.is_empty()) {
                    ("i", true) => Tok::I,
                    ("z" | "zb" | "dz" | "dzb", false) => {
                        let idx = digits
                            .parse()
                            .map_err(|_| error(l0, c0, format!("index {digits} too large")))?;
                        Tok::Ident(name, idx)
                    }
                    _ => return Err(error(l0, c0, format!("unknown identifier '{name}{digits}'"))),
                }
            }
            other => return Err(error(l0, c0, format!("unexpected character '{other}'"))),
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}
