//! Reads rational functions back from their rendered form.

use super::coeff::Coeff;
use super::int::Int;
use super::poly::{Poly, Var};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};
use num_bigint::BigInt;

struct Parser<'a, C: Coeff> {
    s: &'a [u8],
    pos: usize,
    ctx: C::Ctx,
}

impl<'a, C: Coeff> Parser<'a, C> {
    fn err(&self, what: &str) -> Error {
        Error::InvalidInput(format!("{what} at offset {} of rational function", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc<C>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add_rf(&rhs) } else { acc.sub_rf(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc<C>> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if c == b'*' { acc.mul_rf(&rhs) } else { acc.div_rf(&rhs)? };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc<C>> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.neg_rf());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            let mut out = RatFunc::constant(1, self.ctx);
            for _ in 0..e {
                out = out.mul_rf(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<RatFunc<C>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let big: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                let c = C::from_int(&Int::from_big(big), self.ctx);
                Ok(RatFunc::from_poly(Poly::constant(c, self.ctx)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
                let v = Var::parse(&name).ok_or_else(|| self.err(&format!("unknown variable {name}")))?;
                Ok(RatFunc::var(v, self.ctx))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

impl<C: Coeff> RatFunc<C> {
    /// Parses the output of `render`, and more generally any `+ - * / ^ ( )` expression
    /// in integers and variable names.
    pub fn parse(s: &str, ctx: C::Ctx) -> Result<Self> {
        let mut p = Parser::<C> { s: s.as_bytes(), pos: 0, ctx };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Zp;

    #[test]
    fn render_round_trip() {
        for s in ["1/(a1_1*a2_2 - a1_2*a2_1)", "-3*t^2 + b1", "(y1 + 2)^3/(y2 - t)", "0", "123456789012345678901234567890*a2_5"] {
            let f = RatFunc::<Int>::parse(s, ()).unwrap();
            let g = RatFunc::<Int>::parse(&f.render(), ()).unwrap();
            assert!(f.eq_rf(&g), "{s}");
        }
        let f = RatFunc::<Zp>::parse("a1_1^2 + 1", 2).unwrap();
        assert_eq!(f.render(), RatFunc::<Zp>::parse(&f.render(), 2).unwrap().render());
        assert!(RatFunc::<Int>::parse("a1_1 +", ()).is_err());
        assert!(RatFunc::<Int>::parse("q1", ()).is_err());
    }
}
