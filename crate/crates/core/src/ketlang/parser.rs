use num_bigint::BigInt;
use num_traits::Zero;

use super::lexer::{tokenize, Pos, SyntaxError, Tok, Token};
use crate::exactnum::{HalfInt, Rational};

/// Inputs longer than this are rejected before lexing.
pub const MAX_INPUT_BYTES: usize = 64 * 1024;
/// Maximum depth of the syntax tree, which bounds evaluator recursion.
pub const MAX_DEPTH: usize = 512;
/// Maximum parenthesis nesting, which bounds parser recursion.
pub const MAX_NESTING: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KetExpr {
    RationalLit(Rational),
    /// `sqrt(q)` for a non-negative rational `q`.
    SurdLit(Rational),
    ImaginaryUnit,
    SingleKet(HalfInt),
    Neg(Box<KetExpr>),
    Add(Box<KetExpr>, Box<KetExpr>),
    Sub(Box<KetExpr>, Box<KetExpr>),
    /// Explicit `*` or juxtaposition.
    Mul(Box<KetExpr>, Box<KetExpr>),
    Div(Box<KetExpr>, Box<KetExpr>),
    Tensor(Box<KetExpr>, Box<KetExpr>),
    Paren(Box<KetExpr>),
}

/// Parses a state expression.
///
/// ```text
/// expr    := product (("+" | "-") product)*
/// product := tensor (("*" | "/")? tensor)*      juxtaposition multiplies
/// tensor  := unary (("x" | "⊗") unary)?
/// unary   := "-" unary | atom
/// atom    := integer | "i" | "sqrt" "(" rational ")" | "chi" "(" halfint ")"
///          | "(" expr ")"
/// ```
///
/// Unary minus binds tighter than the tensor product, which binds tighter
/// than multiplication and division, which bind tighter than `+` and `-`.
/// A rational literal `p/q` is the quotient of two integer atoms. Inputs
/// over [`MAX_INPUT_BYTES`] or with a tree deeper than [`MAX_DEPTH`] are
/// rejected with a syntax error.
pub fn parse(text: &str) -> Result<KetExpr, SyntaxError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(SyntaxError::at(
            Pos { line: 1, column: 1 },
            format!("input of {} bytes exceeds the {MAX_INPUT_BYTES}-byte limit", text.len()),
            &[],
        ));
    }
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, at: 0, depth: 0 };
    let (e, _) = p.expr()?;
    p.expect(Tok::Eof, &["'+'", "'-'", "'*'", "'/'", "'x'", "end of input"])?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    depth: usize,
}

const ATOM_START: &[&str] = &["integer", "'i'", "'sqrt'", "'chi'", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        let t = self.peek();
        SyntaxError::at(t.pos, format!("unexpected {}", t.tok.describe()), expected)
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<Token, SyntaxError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error(expected))
        }
    }

    fn node(&self, e: KetExpr, depth: usize) -> Result<(KetExpr, usize), SyntaxError> {
        if depth > MAX_DEPTH {
            let pos = self.peek().pos;
            return Err(SyntaxError::at(pos, format!("expression nested deeper than {MAX_DEPTH} levels"), &[]));
        }
        Ok((e, depth))
    }

    fn binary(
        &self,
        make: fn(Box<KetExpr>, Box<KetExpr>) -> KetExpr,
        (a, da): (KetExpr, usize),
        (b, db): (KetExpr, usize),
    ) -> Result<(KetExpr, usize), SyntaxError> {
        self.node(make(Box::new(a), Box::new(b)), 1 + da.max(db))
    }

    fn expr(&mut self) -> Result<(KetExpr, usize), SyntaxError> {
        let mut lhs = self.product()?;
        loop {
            let make = match self.peek().tok {
                Tok::Plus => KetExpr::Add,
                Tok::Minus => KetExpr::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = self.binary(make, lhs, rhs)?;
        }
    }

    fn product(&mut self) -> Result<(KetExpr, usize), SyntaxError> {
        let mut lhs = self.tensor()?;
        loop {
            let make = match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    KetExpr::Mul
                }
                Tok::Slash => {
                    self.bump();
                    KetExpr::Div
                }
                Tok::Int(_) | Tok::I | Tok::Sqrt | Tok::Chi | Tok::LParen => KetExpr::Mul,
                _ => return Ok(lhs),
            };
            let rhs = self.tensor()?;
            lhs = self.binary(make, lhs, rhs)?;
        }
    }

    fn tensor(&mut self) -> Result<(KetExpr, usize), SyntaxError> {
        let lhs = self.unary()?;
        if self.peek().tok != Tok::Tensor {
            return Ok(lhs);
        }
        self.bump();
        let rhs = self.unary()?;
        if self.peek().tok == Tok::Tensor {
            let pos = self.peek().pos;
            return Err(SyntaxError::at(pos, "at most two tensor factors are supported", &[]));
        }
        self.binary(KetExpr::Tensor, lhs, rhs)
    }

    fn unary(&mut self) -> Result<(KetExpr, usize), SyntaxError> {
        // iterative so that long runs of '-' cannot exhaust the stack
        let mut negations = 0usize;
        while self.peek().tok == Tok::Minus {
            self.bump();
            negations += 1;
            if negations > MAX_DEPTH {
                return self.node(KetExpr::ImaginaryUnit, negations);
            }
        }
        let (mut e, mut depth) = self.atom()?;
        for _ in 0..negations {
            (e, depth) = self.node(KetExpr::Neg(Box::new(e)), depth + 1)?;
        }
        Ok((e, depth))
    }

    fn atom(&mut self) -> Result<(KetExpr, usize), SyntaxError> {
        let t = self.bump();
        let e = match t.tok {
            Tok::Int(n) => KetExpr::RationalLit(Rational::from_integer(n)),
            Tok::I => KetExpr::ImaginaryUnit,
            Tok::Sqrt => {
                self.expect(Tok::LParen, &["'('"])?;
                let q = self.rational(false)?;
                self.expect(Tok::RParen, &["')'"])?;
                KetExpr::SurdLit(q)
            }
            Tok::Chi => {
                self.expect(Tok::LParen, &["'('"])?;
                let pos = self.peek().pos;
                let q = self.rational(true)?;
                self.expect(Tok::RParen, &["')'"])?;
                let twice = q.clone() * Rational::from_integer(2.into());
                let twice = twice
                    .is_integer()
                    .then(|| i64::try_from(twice.to_integer()).ok())
                    .flatten()
                    .ok_or_else(|| SyntaxError::at(pos, format!("ket label {q} is not a half-integer"), &[]))?;
                KetExpr::SingleKet(HalfInt::from_twice(twice))
            }
            Tok::LParen => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    let pos = self.peek().pos;
                    return Err(SyntaxError::at(pos, format!("parentheses nested deeper than {MAX_NESTING}"), &[]));
                }
                let (inner, depth) = self.expr()?;
                self.depth -= 1;
                self.expect(Tok::RParen, &["')'", "'+'", "'-'", "'*'", "'/'", "'x'"])?;
                return self.node(KetExpr::Paren(Box::new(inner)), depth + 1);
            }
            _ => {
                self.at -= usize::from(t.tok != Tok::Eof);
                return Err(self.error(ATOM_START));
            }
        };
        Ok((e, 1))
    }

    /// `["-"] integer ["/" positive-integer]`
    fn rational(&mut self, signed: bool) -> Result<Rational, SyntaxError> {
        let negative = signed && self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let num = self.integer(if signed { &["integer", "'-'"] } else { &["integer"] })?;
        let mut value = Rational::from_integer(num);
        if self.peek().tok == Tok::Slash {
            self.bump();
            let pos = self.peek().pos;
            let den = self.integer(&["positive integer"])?;
            if den.is_zero() {
                return Err(SyntaxError::at(pos, "zero denominator", &["positive integer"]));
            }
            value /= Rational::from_integer(den);
        }
        Ok(if negative { -value } else { value })
    }

    fn integer(&mut self, expected: &[&str]) -> Result<BigInt, SyntaxError> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(expected)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    #[test]
    fn scaled_sum_of_tensors() {
        let e = parse("1/sqrt(2) * (chi(0) x chi(1) + chi(1) x chi(0))").unwrap();
        let KetExpr::Mul(scalar, body) = e else { panic!("expected product") };
        assert!(matches!(*scalar, KetExpr::Div(_, _)));
        let KetExpr::Paren(sum) = *body else { panic!("expected parentheses") };
        assert!(matches!(*sum, KetExpr::Add(ref a, ref b)
            if matches!(**a, KetExpr::Tensor(..)) && matches!(**b, KetExpr::Tensor(..))));
    }

    #[test]
    fn single_tensor() {
        let e = parse("chi(1) x chi(1)").unwrap();
        let one = Box::new(KetExpr::SingleKet(HalfInt::from_int(1)));
        assert_eq!(e, KetExpr::Tensor(one.clone(), one));
    }

    #[test]
    fn truncated_input_column() {
        let err = parse("1/sqrt(").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
        assert!(err.expected.contains(&"integer".to_string()));
    }

    #[test]
    fn half_integer_labels() {
        let e = parse("chi(-1/2) x chi(1/2)").unwrap();
        let KetExpr::Tensor(a, _) = e else { panic!() };
        assert_eq!(*a, KetExpr::SingleKet(HalfInt::from_twice(-1)));
        assert!(parse("chi(1/3) x chi(0)").is_err());
        assert!(parse("chi(1/0)").is_err());
    }

    #[test]
    fn tensor_binds_tighter_than_product() {
        let e = parse("2 chi(0) x chi(0)").unwrap();
        let KetExpr::Mul(a, b) = e else { panic!() };
        assert_eq!(*a, KetExpr::RationalLit(rational(2, 1)));
        assert!(matches!(*b, KetExpr::Tensor(..)));
    }

    #[test]
    fn limits() {
        assert!(parse("chi(1) x chi(1) x chi(1)").is_err());
        let deep = format!("{}1{}", "(".repeat(MAX_NESTING + 1), ")".repeat(MAX_NESTING + 1));
        assert!(parse(&deep).is_err());
        let ok = format!("{}1{}", "(".repeat(10), ")".repeat(10));
        assert!(parse(&ok).is_ok());
        assert!(parse(&"1+".repeat(MAX_INPUT_BYTES)).is_err());
        assert!(parse(&"-".repeat(10_000)).is_err());
        assert!(parse(&format!("{}1", "-".repeat(MAX_DEPTH + 1))).is_err());
        assert!(parse(&vec!["chi(1) x chi(1)"; 600].join(" + ")).is_err());
        assert!(parse(&vec!["chi(1) x chi(1)"; 100].join(" + ")).is_ok());
    }

    #[test]
    fn trailing_garbage() {
        let err = parse("chi(1) x chi(1))").unwrap_err();
        assert_eq!(err.column, 16);
        assert!(parse("").is_err());
    }
}
