//! Recursive-descent parser for the scalar expression grammar:
//!
//! ```text
//! expr     := term (("+"|"-") term)* ;
//! term     := factor (("*"|"/") factor)* ;
//! factor   := base ("^" exponent)? ;
//! base     := NUMBER | "t" | "(" expr ")" | FUNC "(" expr ")" | "-" base ;
//! FUNC     := "exp" | "sin" | "cos" | "sqrt" ;
//! exponent := NUMBER | "(" NUMBER "/" NUMBER ")" ;
//! ```

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{GeoError, Result};
use crate::expr::Expr;

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { input: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> GeoError {
        GeoError::Syntax { offset: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = Expr::add(&acc, &rhs);
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = Expr::sub(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = Expr::mul(&acc, &rhs);
            } else if self.eat(b'/') {
                if self.pos == self.input.len() {
                    return Err(self.err("division with empty denominator"));
                }
                let rhs = self.factor()?;
                if rhs.is_zero() {
                    return Err(self.err("division by constant zero"));
                }
                acc = Expr::div(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            Ok(Expr::pow(&base, e))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<Rational64> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let num = self.number()?;
            let mut value = num;
            if self.eat(b'/') {
                let den = self.number()?;
                if den.is_zero() {
                    return Err(self.err("zero denominator in exponent"));
                }
                value = num / den;
            }
            self.expect(b')')?;
            Ok(if neg { -value } else { value })
        } else {
            self.number()
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.base()?;
                Ok(Expr::neg(&inner))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let n = self.number()?;
                self.skip_ws();
                Ok(Expr::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|c| c.is_ascii_alphanumeric() || c == b'_')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                self.skip_ws();
                match name {
                    "t" => Ok(Expr::var()),
                    "exp" | "sin" | "cos" | "sqrt" => {
                        self.expect(b'(')?;
                        let arg = self.expr()?;
                        self.expect(b')')?;
                        Ok(match name {
                            "exp" => Expr::exp(&arg),
                            "sin" => Expr::sin(&arg),
                            "cos" => Expr::cos(&arg),
                            _ => Expr::sqrt(&arg),
                        })
                    }
                    other => Err(GeoError::UnknownIdentifier(other.to_string())),
                }
            }
            _ => Err(self.err("expected a number, `t`, `(`, a function, or `-`")),
        }
    }

    /// Unsigned integer or decimal literal, parsed into an exact rational.
    fn number(&mut self) -> Result<Rational64> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        let int_part = &self.input[start..self.pos];
        let mut frac_part: &[u8] = b"";
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let fstart = self.pos;
            while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                self.pos += 1;
            }
            frac_part = &self.input[fstart..self.pos];
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(self.err("expected a number"));
        }
        let mut numer: i64 = 0;
        for &c in int_part.iter().chain(frac_part.iter()) {
            numer = numer
                .checked_mul(10)
                .and_then(|n| n.checked_add((c - b'0') as i64))
                .ok_or_else(|| self.err("numeric literal too large"))?;
        }
        let mut denom: i64 = 1;
        for _ in 0..frac_part.len() {
            denom = denom.checked_mul(10).ok_or_else(|| self.err("numeric literal too large"))?;
        }
        self.skip_ws();
        Ok(Rational64::new(numer, denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ExprNode;

    #[test]
    fn linear_shape() {
        let e = parse_expr("2*t+1").unwrap();
        match e.node() {
            ExprNode::Add(a, b) => {
                assert!(matches!(a.node(), ExprNode::Mul(_, _)));
                assert!(b.is_one());
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn einstein_family_shape() {
        let e = parse_expr("exp((1/2)^(1/2)*t)").unwrap();
        let v = e.eval(1.0).unwrap();
        assert!((v - (0.5f64.sqrt()).exp()).abs() < 1e-14);
    }

    #[test]
    fn csc_family_shape() {
        let e = parse_expr("(2*t+1)^(2/3)").unwrap();
        let v = e.eval(1.0).unwrap();
        assert!((v - 3f64.powf(2.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn syntax_error_offset() {
        let err = parse_expr("2**t").unwrap_err();
        match err {
            GeoError::Syntax { offset, .. } => assert_eq!(offset, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier() {
        assert!(matches!(parse_expr("foo(t)"), Err(GeoError::UnknownIdentifier(_))));
    }

    #[test]
    fn empty_denominator() {
        assert!(parse_expr("1/").is_err());
    }

    #[test]
    fn decimal_is_exact_rational() {
        let e = parse_expr("0.225").unwrap();
        assert_eq!(e.as_const(), Some(Rational64::new(9, 40)));
    }

    #[test]
    fn render_reparse_roundtrip() {
        for src in [
            "2*t+1",
            "exp((1/2)^(1/2)*t)",
            "(2*t+1)^(2/3)",
            "sin(t)^2+cos(t)^2-1",
            "-t^3/(t+4)",
            "sqrt(t+1)*exp(-t)",
        ] {
            let e = parse_expr(src).unwrap();
            let rendered = e.to_string();
            let back = parse_expr(&rendered).unwrap();
            assert_eq!(e, back, "round-trip failed for {src}: rendered {rendered}");
        }
    }
}
