use std::fmt;

use num_bigint::BigInt;

/// A parse failure with a 1-based source position and the tokens that would
/// have been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl SyntaxError {
    pub(crate) fn at(pos: Pos, message: impl Into<String>, expected: &[&str]) -> Self {
        Self {
            line: pos.line,
            column: pos.column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Tensor,
    I,
    Sqrt,
    Chi,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Tensor => "'x'".into(),
            Tok::I => "'i'".into(),
            Tok::Sqrt => "'sqrt'".into(),
            Tok::Chi => "'chi'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits the input into tokens. Identifiers are lexed by longest match, so
/// `xchi` is one (unknown) word rather than `x` followed by `chi`.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    while let Some(&c) = chars.peek() {
        let start = pos;
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                digits.push(advance(&mut chars));
            }
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                word.push(advance(&mut chars));
            }
            match word.as_str() {
                "x" => Tok::Tensor,
                "i" => Tok::I,
                "sqrt" => Tok::Sqrt,
                "chi" => Tok::Chi,
                _ => {
                    return Err(SyntaxError::at(
                        start,
                        format!("unknown word {word:?}"),
                        &["'chi'", "'sqrt'", "'i'", "'x'"],
                    ))
                }
            }
        } else {
            advance(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '\u{2297}' => Tok::Tensor,
                _ => return Err(SyntaxError::at(start, format!("unexpected character {c:?}"), &[])),
            }
        };
        out.push(Token { tok, pos: start });
    }
    out.push(Token { tok: Tok::Eof, pos });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Tok> {
        tokenize(text).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            kinds("1/sqrt(2) * chi(0) x chi(1)"),
            vec![
                Tok::Int(1.into()),
                Tok::Slash,
                Tok::Sqrt,
                Tok::LParen,
                Tok::Int(2.into()),
                Tok::RParen,
                Tok::Star,
                Tok::Chi,
                Tok::LParen,
                Tok::Int(0.into()),
                Tok::RParen,
                Tok::Tensor,
                Tok::Chi,
                Tok::LParen,
                Tok::Int(1.into()),
                Tok::RParen,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn unicode_tensor_and_positions() {
        let toks = tokenize("chi(1)\n \u{2297} chi(0)").unwrap();
        assert_eq!(toks[4].tok, Tok::Tensor);
        assert_eq!(toks[4].pos, Pos { line: 2, column: 2 });
    }

    #[test]
    fn longest_match_words() {
        let err = tokenize("chi(1) xchi(1)").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
        assert!(tokenize("1 $").is_err());
    }
}
