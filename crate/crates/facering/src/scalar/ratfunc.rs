//! Rational functions `num / den` over a coefficient ring, with lazy canonicalization.

use super::coeff::Coeff;
use super::field::{Field, FromCoeff};
use super::gcd::{gcd, normalize};
use super::poly::{Mono, Poly, Var};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Above this many terms (numerator plus denominator) a full gcd reduction is applied.
pub const GCD_THRESHOLD: usize = 512;
/// Cross-cancellation gcds are attempted only on operands at most this large.
const CHEAP_GCD: usize = 48;

#[derive(Clone, Debug)]
pub struct RatFunc<C: Coeff> {
    num: Poly<C>,
    den: Poly<C>,
    reduced: bool,
}

impl<C: Coeff> RatFunc<C> {
    pub fn from_poly(p: Poly<C>) -> Self {
        let ctx = p.ctx();
        RatFunc { num: p, den: Poly::one(ctx), reduced: true }
    }

    pub fn constant(v: i64, ctx: C::Ctx) -> Self {
        Self::from_poly(Poly::from_i64(v, ctx))
    }

    pub fn var(v: Var, ctx: C::Ctx) -> Self {
        Self::from_poly(Poly::var(v, ctx))
    }

    /// `num / den` with the cheap normalization applied.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num, den, reduced: false }.tidy())
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn ctx(&self) -> C::Ctx {
        self.num.ctx()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Content and monomial-content removal, trivial cancellations, and the size-triggered gcd.
    fn tidy(mut self) -> Self {
        let ctx = self.ctx();
        if self.num.is_zero() {
            self.den = Poly::one(ctx);
            self.reduced = true;
            return self;
        }
        let mg = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !mg.is_one() {
            self.num = self.num.div_mono(&mg).unwrap();
            self.den = self.den.div_mono(&mg).unwrap();
        }
        let cn = self.num.content();
        let cd = self.den.content();
        if C::is_field(ctx) {
            let lc = self.den.leading_coeff();
            if !lc.is_one() {
                self.num = self.num.div_coeff(&lc).unwrap();
                self.den = self.den.div_coeff(&lc).unwrap();
            }
        } else {
            let mut g = cn.gcd(&cd, ctx);
            if self.den.leading_coeff().unit_part(ctx) != C::one() {
                g = g.neg(ctx);
            }
            if !g.is_one() {
                self.num = self.num.div_coeff(&g).unwrap();
                self.den = self.den.div_coeff(&g).unwrap();
            }
        }
        if self.den.is_constant() {
            self.reduced = true;
            return self;
        }
        if self.num.len() >= self.den.len() && self.num.len() <= 4096 {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = Poly::one(ctx);
                self.reduced = true;
                return self;
            }
        }
        if !self.reduced && self.num.len() + self.den.len() > GCD_THRESHOLD {
            return self.reduce();
        }
        self
    }

    /// Full gcd reduction to the canonical form.
    pub fn reduce(mut self) -> Self {
        if self.reduced {
            return self;
        }
        let g = gcd(&self.num, &self.den);
        if !g.is_constant() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        self.reduced = true;
        let ctx = self.ctx();
        let lc = self.den.leading_coeff();
        if C::is_field(ctx) {
            if !lc.is_one() {
                self.num = self.num.div_coeff(&lc).unwrap();
                self.den = self.den.div_coeff(&lc).unwrap();
            }
        } else {
            let g = self.num.content().gcd(&self.den.content(), ctx);
            let g = if lc.unit_part(ctx) != C::one() { g.neg(ctx) } else { g };
            self.num = self.num.div_coeff(&g).unwrap();
            self.den = self.den.div_coeff(&g).unwrap();
        }
        self
    }

    pub fn canonical(&self) -> Self {
        self.clone().reduce()
    }

    fn cheap_gcd(a: &Poly<C>, b: &Poly<C>) -> Option<Poly<C>> {
        if a.is_constant() || b.is_constant() || a.len() > CHEAP_GCD || b.len() > CHEAP_GCD {
            return None;
        }
        let g = gcd(a, b);
        (!g.is_constant()).then_some(g)
    }

    pub fn add_rf(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc { num: self.num.add(&o.num), den: self.den.clone(), reduced: false }.tidy();
        }
        if let Some(g) = Self::cheap_gcd(&self.den, &o.den) {
            let d1 = self.den.div_exact(&g).unwrap();
            let d2 = o.den.div_exact(&g).unwrap();
            let num = self.num.mul(&d2).add(&o.num.mul(&d1));
            return RatFunc { num, den: d1.mul(&o.den), reduced: false }.tidy();
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFunc { num, den: self.den.mul(&o.den), reduced: false }.tidy()
    }

    pub fn neg_rf(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone(), reduced: self.reduced }
    }

    pub fn sub_rf(&self, o: &Self) -> Self {
        self.add_rf(&o.neg_rf())
    }

    pub fn mul_rf(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::from_poly(Poly::zero(self.ctx()));
        }
        let (mut n1, mut d1, mut n2, mut d2) = (self.num.clone(), self.den.clone(), o.num.clone(), o.den.clone());
        if let Some(g) = Self::cheap_gcd(&n1, &d2) {
            n1 = n1.div_exact(&g).unwrap();
            d2 = d2.div_exact(&g).unwrap();
        }
        if let Some(g) = Self::cheap_gcd(&n2, &d1) {
            n2 = n2.div_exact(&g).unwrap();
            d1 = d1.div_exact(&g).unwrap();
        }
        RatFunc { num: n1.mul(&n2), den: d1.mul(&d2), reduced: false }.tidy()
    }

    pub fn inv_rf(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num: self.den.clone(), den: self.num.clone(), reduced: self.reduced }.tidy())
    }

    pub fn div_rf(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_rf(&o.inv_rf()?))
    }

    pub fn is_zero_rf(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eq_rf(&self, o: &Self) -> bool {
        if self.num == o.num && self.den == o.den {
            return true;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    /// Degree in `v`: `deg num - deg den`, `None` standing for minus infinity.
    pub fn degree_in(&self, v: Var) -> Option<i64> {
        let dn = self.num.degree_in(v)? as i64;
        let dd = self.den.degree_in(v).unwrap_or(0) as i64;
        Some(dn - dd)
    }

    /// Leading coefficient in `v`: `L(num) / L(den)`, free of `v`.
    pub fn leading_in(&self, v: Var) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        RatFunc { num: self.num.leading_in(v), den: self.den.leading_in(v), reduced: false }.tidy()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Substitutes polynomials for variables; errors if the denominator vanishes.
    pub fn specialize(&self, map: &dyn Fn(Var) -> Option<Poly<C>>) -> Result<Self> {
        let den = self.den.substitute(map);
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        RatFunc::new(self.num.substitute(map), den)
    }

    /// Evaluation homomorphism into a field; `PoleAtPoint` if the denominator vanishes there.
    pub fn eval<K: FromCoeff<C>>(&self, like: &K, var: &dyn Fn(Var) -> K) -> Result<K> {
        let ctx = self.ctx();
        let coeff = |c: &C| like.from_coeff(c, ctx).expect("coefficient embeds");
        let ev = |p: &Poly<C>| {
            p.eval_with(&like.zero(), &like.one(), &coeff, var, &|a: &K, b: &K| a.add(b), &|a: &K, b: &K| a.mul(b))
        };
        let d = ev(&self.den);
        let inv = d.inv().ok_or(Error::PoleAtPoint)?;
        Ok(ev(&self.num).mul(&inv))
    }

    /// Characteristic 2: `self = sum_m m * h_m^2` over squarefree monomials `m`.
    pub fn square_decompose(&self) -> Result<BTreeMap<Mono, Self>> {
        let ctx = self.ctx();
        if C::characteristic(ctx) != 2 {
            return Err(Error::WrongCharacteristic { expected: "2".into(), found: C::characteristic(ctx) });
        }
        let prod = self.num.mul(&self.den);
        let mut parts: BTreeMap<Mono, Vec<(Mono, C)>> = BTreeMap::new();
        for (m, c) in prod.terms() {
            let (odd, half) = m.parity_split();
            let root = c.sqrt(ctx).expect("every element of a perfect field of characteristic 2 is a square");
            parts.entry(odd).or_default().push((half, root));
        }
        let mut out = BTreeMap::new();
        for (odd, terms) in parts {
            let h = Poly::from_terms(terms, ctx);
            out.insert(odd, RatFunc::new(h, self.den.clone())?);
        }
        Ok(out)
    }

    /// Square root in the same field, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let r = self.canonical();
        let prod = r.num.mul(&r.den);
        let root = prod.sqrt()?;
        RatFunc::new(root, r.den.clone()).ok()
    }

    pub fn render(&self) -> String {
        let c = self.canonical();
        let wrap = |p: &Poly<C>| if p.len() > 1 { format!("({})", p.render()) } else { p.render() };
        if c.den.is_one() {
            c.num.render()
        } else {
            let den = c.den.render();
            let den = if c.den.len() > 1 || den.contains('*') { format!("({den})") } else { den };
            format!("{}/{}", wrap(&c.num), den)
        }
    }

    /// Term count of numerator plus denominator.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

impl<C: Coeff> PartialEq for RatFunc<C> {
    fn eq(&self, o: &Self) -> bool {
        self.eq_rf(o)
    }
}

impl<C: Coeff> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coeff> Field for RatFunc<C> {
    fn zero(&self) -> Self {
        Self::from_poly(Poly::zero(self.ctx()))
    }
    fn one(&self) -> Self {
        Self::from_poly(Poly::one(self.ctx()))
    }
    fn from_i64(&self, v: i64) -> Self {
        Self::constant(v, self.ctx())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn add(&self, o: &Self) -> Self {
        self.add_rf(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_rf(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_rf(o)
    }
    fn neg(&self) -> Self {
        self.neg_rf()
    }
    fn inv(&self) -> Option<Self> {
        self.inv_rf().ok()
    }
    fn characteristic(&self) -> u64 {
        C::characteristic(self.ctx())
    }
    fn render(&self) -> String {
        RatFunc::render(self)
    }
    fn weight(&self) -> usize {
        self.size()
    }
}

impl<C: Coeff> FromCoeff<C> for RatFunc<C> {
    fn from_coeff(&self, c: &C, ctx: C::Ctx) -> Option<Self> {
        Some(Self::from_poly(Poly::constant(c.clone(), ctx)))
    }
}

/// Convenience: the canonical (normalized, content-free) form of a polynomial.
pub fn canonical_poly<C: Coeff>(p: &Poly<C>) -> Poly<C> {
    normalize(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::coeff::Zp;
    use crate::scalar::int::Int;

    type Q = RatFunc<Int>;

    fn a(k: u32) -> Q {
        Q::var(Var::free(k), ())
    }

    fn t() -> Q {
        Q::var(Var::T, ())
    }

    fn c(v: i64) -> Q {
        Q::constant(v, ())
    }

    #[test]
    fn field_examples() {
        let x = a(1).div_rf(&a(2)).unwrap().mul_rf(&a(2).div_rf(&a(1)).unwrap());
        assert!(x.is_one());
        let lhs = t().mul_rf(&t()).sub_rf(&c(1)).div_rf(&t().sub_rf(&c(1))).unwrap();
        assert_eq!(lhs, t().add_rf(&c(1)));
        let f2 = RatFunc::<Zp>::var(Var::free(1), 2);
        assert!(f2.add_rf(&f2).is_zero_rf());
        assert_eq!(c(1).div_rf(&c(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn degree_and_leading() {
        let phi = t().mul_rf(&t()).add_rf(&c(1)).div_rf(&t().sub_rf(&c(1))).unwrap();
        assert_eq!(phi.degree_in(Var::T), Some(1));
        assert!(phi.leading_in(Var::T).is_one());
        assert_eq!(c(0).degree_in(Var::T), None);
        assert!(c(0).leading_in(Var::T).is_zero_rf());
        let psi = a(1).div_rf(&t()).unwrap();
        assert_eq!(psi.degree_in(Var::T), Some(-1));
        assert_eq!(psi.leading_in(Var::T), a(1));
    }

    #[test]
    fn specialization() {
        let phi = a(1).add_rf(&a(2)).div_rf(&a(3)).unwrap();
        let at = |v: Var| Some(Poly::from_i64(v.0 as i64 & 0xff, ()));
        assert!(phi.specialize(&at).unwrap().is_one());
        let pole = c(1).div_rf(&a(1).sub_rf(&c(1))).unwrap();
        assert_eq!(pole.specialize(&|_| Some(Poly::one(()))), Err(Error::PoleAtPoint));
        let sq = a(1).mul_rf(&a(1));
        let to_t = |v: Var| (v == Var::free(1)).then(|| Poly::var(Var::T, ()));
        assert_eq!(sq.specialize(&to_t).unwrap(), t().mul_rf(&t()));
    }

    #[test]
    fn square_decomposition_examples() {
        let p = 2;
        let x1 = RatFunc::<Zp>::var(Var::free(1), p);
        let x2 = RatFunc::<Zp>::var(Var::free(2), p);
        let d = x1.square_decompose().unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[&Mono::var(Var::free(1))].is_one());
        let d = x1.mul_rf(&x1).square_decompose().unwrap();
        assert_eq!(d[&Mono::one()], x1);
        let phi = x1.mul_rf(&x1).mul_rf(&x1).add_rf(&x2.mul_rf(&x2));
        let d = phi.square_decompose().unwrap();
        assert_eq!(d[&Mono::var(Var::free(1))], x1);
        assert_eq!(d[&Mono::one()], x2);
        assert!(c(1).square_decompose().is_err());
    }

    #[test]
    fn square_roots() {
        let s = a(1).add_rf(&a(2));
        let r = s.mul_rf(&s).sqrt().unwrap();
        assert!(r == s || r == s.neg_rf());
        assert!(a(1).sqrt().is_none());
        let q = c(4).div_rf(&c(9)).unwrap();
        assert_eq!(q.sqrt().unwrap().render(), "2/3");
        assert!(c(-4).sqrt().is_none());
    }

    #[test]
    fn rendering_is_canonical() {
        let num = a(1).mul_rf(&a(1)).sub_rf(&c(1));
        let den = a(1).sub_rf(&c(1)).mul_rf(&a(2));
        let phi = num.div_rf(&den).unwrap();
        assert_eq!(phi.render(), "(y1 + 1)/y2");
        let psi = c(1).div_rf(&a(1).mul_rf(&a(2))).unwrap();
        assert_eq!(psi.render(), "1/(y1*y2)");
        assert_eq!(RatFunc::parse(&psi.render(), ()).unwrap(), psi);
    }
}
