//! Recursive-descent parser for the scalar expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ('^' UINT)?
//! atom   := INT | IDENT | '(' expr ')' | 'exp' '(' linform ')'
//! ```

use std::sync::Arc;

use thiserror::Error;

use super::chart::Chart;
use super::field::ScalarField;
use crate::num::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("argument of exp at offset {offset} is not a rational linear form in the coordinates")]
    NonLinearExponent { offset: usize },
    #[error("`^` at offset {offset} must be followed by a nonnegative integer")]
    NonNaturalExponent { offset: usize },
    #[error("division by zero at offset {offset}")]
    DivisionByZero { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NonLinearExponent { offset }
            | ParseError::NonNaturalExponent { offset }
            | ParseError::DivisionByZero { offset } => *offset,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a, C> {
    src: &'a [u8],
    pos: usize,
    chart: &'a Arc<Chart>,
    _coeff: std::marker::PhantomData<C>,
}

pub fn parse_scalar<C: Coeff>(text: &str, chart: &Arc<Chart>) -> PResult<ScalarField<C>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, chart, _coeff: std::marker::PhantomData };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(value)
}

impl<'a, C: Coeff> Parser<'a, C> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn expect(&mut self, byte: u8) -> PResult<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", byte as char)))
        }
    }

    fn expr(&mut self) -> PResult<ScalarField<C>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<ScalarField<C>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let offset = self.pos;
                    let rhs = self.factor()?;
                    acc = acc.try_div(&rhs).map_err(|_| ParseError::DivisionByZero { offset })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> PResult<ScalarField<C>> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let offset = self.pos;
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            let e: u32 = digits.parse().map_err(|_| ParseError::NonNaturalExponent { offset })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> PResult<ScalarField<C>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let offset = self.pos;
                let digits = self.digits();
                let value = C::from_decimal(digits)
                    .ok_or(ParseError::Syntax { offset, message: "bad integer literal".into() })?;
                Ok(ScalarField::constant(self.chart, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let offset = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[offset..self.pos]).expect("ascii");
                if name == "exp" {
                    return self.exp_call();
                }
                match self.chart.index_of(name) {
                    Some(i) => Ok(ScalarField::coord(self.chart, i)),
                    None => Err(ParseError::UnknownIdentifier { offset, name: name.to_string() }),
                }
            }
            Some(_) => Err(self.syntax("expected a number, identifier or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn exp_call(&mut self) -> PResult<ScalarField<C>> {
        self.expect(b'(')?;
        let offset = self.pos;
        let arg = self.expr()?;
        self.expect(b')')?;
        let freq = linear_form(&arg).ok_or(ParseError::NonLinearExponent { offset })?;
        Ok(ScalarField::exp_linear(self.chart, freq))
    }
}

/// Coefficients of `s` as a homogeneous linear form, if it is one.
fn linear_form<C: Coeff>(s: &ScalarField<C>) -> Option<Vec<C>> {
    if !s.is_polynomial() {
        return None;
    }
    let n = s.chart().dim();
    let mut freq = vec![C::zero(); n];
    for (m, c) in s.numerator().terms() {
        if m.freq.iter().any(|f| !f.is_zero()) || m.exps.iter().sum::<u32>() != 1 {
            return None;
        }
        let i = m.exps.iter().position(|&e| e == 1).expect("degree one");
        freq[i] = c.clone();
    }
    Some(freq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::chart::chart;
    use num_rational::BigRational;

    type S = ScalarField<BigRational>;

    fn parse(text: &str, c: &Arc<Chart>) -> PResult<S> {
        parse_scalar(text, c)
    }

    #[test]
    fn parses_exponential_polynomial() {
        let c = chart(&["x", "t"]);
        let v = parse("exp(-t)*(x^2 + 1/2)", &c).unwrap();
        let x = S::coord(&c, 0);
        let half = S::one(&c) / S::int(&c, 2);
        let e = S::exp_linear(&c, vec![BigRational::from_int(0), BigRational::from_int(-1)]);
        assert_eq!(v, &e * &(&x * &x + &half));
    }

    #[test]
    fn error_kinds() {
        let c = chart(&["x", "y", "x1"]);
        assert_eq!(parse("exp(x*y)", &c).unwrap_err(), ParseError::NonLinearExponent { offset: 4 });
        assert_eq!(parse("exp(x+1)", &c).unwrap_err(), ParseError::NonLinearExponent { offset: 4 });
        assert!(matches!(parse("x1 +", &c).unwrap_err(), ParseError::Syntax { offset: 4, .. }));
        assert_eq!(parse("x^-1", &c).unwrap_err(), ParseError::NonNaturalExponent { offset: 1 });
        assert_eq!(parse("x^y", &c).unwrap_err(), ParseError::NonNaturalExponent { offset: 1 });
        assert_eq!(
            parse("2*zz", &c).unwrap_err(),
            ParseError::UnknownIdentifier { offset: 2, name: "zz".into() }
        );
        assert_eq!(parse("1/(x-x)", &c).unwrap_err(), ParseError::DivisionByZero { offset: 2 });
        assert!(matches!(parse("(x", &c).unwrap_err(), ParseError::Syntax { .. }));
        assert!(matches!(parse("x y", &c).unwrap_err(), ParseError::Syntax { offset: 2, .. }));
    }

    #[test]
    fn whitespace_and_precedence() {
        let c = chart(&["x"]);
        let a = parse(" 2 * x ^ 2 - -x / 3 ", &c).unwrap();
        let x = S::coord(&c, 0);
        assert_eq!(a, S::int(&c, 2) * &x * &x + &x / S::int(&c, 3));
        assert_eq!(parse("-x^2", &c).unwrap(), -(&x * &x));
    }

    #[test]
    fn printed_forms_parse_back() {
        let c = chart(&["x", "t"]);
        for text in ["0", "-3/4", "x^2*exp(-t) + 1/2", "(x + 1)/(x^2 - t)", "exp(1/2*x - 3*t)*x*t - x"] {
            let v = parse(text, &c).unwrap();
            let back = parse(&v.to_expr(), &c).unwrap();
            assert_eq!(back, v, "{text} printed as {}", v.to_expr());
        }
    }
}
