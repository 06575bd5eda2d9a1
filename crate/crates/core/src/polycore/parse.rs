//! Text parser for the polynomial grammar
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff | [coeff '*'] factor ('*' factor)*
//! factor := ident ['^' uint]
//! coeff  := int ['/' uint]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coeff, Exponent, PolyError, Polynomial, VarList};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarList,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> PolyError {
        PolyError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
        }
    }

    fn uint(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("unsigned integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn coeff(&mut self) -> Result<Coeff, PolyError> {
        let num = self.uint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.uint()?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.err("nonzero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn factor(&mut self, exp: &mut [u32]) -> Result<(), PolyError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.err("identifier")),
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut power: u32 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let p = self.uint()?;
            power = u32::try_from(p).map_err(|_| {
                self.pos = at;
                self.err("exponent fitting in 32 bits")
            })?;
        }
        exp[idx] = exp[idx].checked_add(power).ok_or(PolyError::ExponentOverflow)?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Coeff, Exponent), PolyError> {
        let mut exp = vec![0u32; self.vars.len()];
        let mut coeff = Coeff::one();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.coeff()?;
                if self.peek() != Some(b'*') {
                    return Ok((coeff, Exponent::new(exp)));
                }
                self.pos += 1;
                self.factor(&mut exp)?;
            }
            Some(c) if c.is_ascii_alphabetic() => self.factor(&mut exp)?,
            _ => return Err(self.err("coefficient or identifier")),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut exp)?;
        }
        Ok((coeff, Exponent::new(exp)))
    }

    fn poly(&mut self) -> Result<Vec<(Coeff, Exponent)>, PolyError> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Coeff::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Coeff::one()
            }
            _ => Coeff::one(),
        };
        loop {
            let (c, e) = self.term()?;
            terms.push((c * &sign, e));
            match self.peek() {
                None => break,
                Some(b'+') => sign = Coeff::one(),
                Some(b'-') => sign = -Coeff::one(),
                Some(_) => return Err(self.err("'+', '-', '*' or end of input")),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses `text` as a polynomial over `vars`.
pub fn parse_polynomial(text: &str, vars: &VarList) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let terms = p.poly()?;
    Ok(Polynomial::from_terms(vars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{integer, TermOrder};

    fn pl() -> VarList {
        VarList::new(["p12", "p13", "p14", "p23", "p24", "p34"])
    }

    #[test]
    fn pluecker_relation() {
        let p = parse_polynomial("p12*p34 - p13*p24 + p14*p23", &pl()).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.is_homogeneous(&crate::polycore::Grading::standard(6)));
    }

    #[test]
    fn zero() {
        assert!(parse_polynomial("0", &pl()).unwrap().is_zero());
        assert!(parse_polynomial(" 0 + 0*p12 ", &pl()).unwrap().is_zero());
    }

    #[test]
    fn merges_like_terms() {
        let v = VarList::new(["x0", "x1"]);
        let p = parse_polynomial("3/2*x0^2*x1 - x1 + 3/2*x0^2*x1", &v).unwrap();
        let q = Polynomial::from_terms(
            &v,
            [
                (integer(3), Exponent::new(vec![2, 1])),
                (integer(-1), Exponent::new(vec![0, 1])),
            ],
        );
        assert_eq!(p, q);
    }

    #[test]
    fn repeated_factors_multiply() {
        let v = VarList::new(["x"]);
        assert_eq!(parse_polynomial("x*x^2", &v).unwrap(), parse_polynomial("x^3", &v).unwrap());
    }

    #[test]
    fn errors() {
        let v = VarList::new(["x", "y"]);
        assert_eq!(parse_polynomial("x + w", &v), Err(PolyError::UnknownVariable("w".into())));
        match parse_polynomial("x + ", &v) {
            Err(PolyError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial("x y", &v), Err(PolyError::Syntax { position: 2, .. })));
        assert!(matches!(parse_polynomial("x^", &v), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0*x", &v), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_polynomial("", &v), Err(PolyError::Syntax { position: 0, .. })));
    }

    #[test]
    fn format_then_parse() {
        let v = VarList::new(["x", "y", "z"]);
        let p = parse_polynomial("-7/3*x^2*y + 5*z - 1 + y*z^4", &v).unwrap();
        let s = crate::polycore::format_polynomial(&p, &TermOrder::lex(3));
        assert_eq!(parse_polynomial(&s, &v).unwrap(), p);
    }
}
