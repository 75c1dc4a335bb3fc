//! The `Field` abstraction used by all linear algebra, and the concrete point fields
//! used for specializations: prime fields, the rationals and GF(2^64).

use super::coeff::{inv_mod, mul_mod, Coeff, Zp};
use super::int::Int;
use std::fmt;

/// A field element that carries whatever context it needs (modulus, ...).
///
/// `inv` returns `None` on zero; rings that are not quite fields (truncated
/// jets) also return `None` on non-units.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn from_i64(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn characteristic(&self) -> u64;
    fn render(&self) -> String;

    fn is_one(&self) -> bool {
        *self == self.one()
    }

    fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    fn pow(&self, k: u32) -> Self {
        let mut r = self.one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Rough size, used to prefer cheap pivots.
    fn weight(&self) -> usize {
        1
    }
}

/// Maps polynomial coefficients of type `C` into a field.
pub trait FromCoeff<C: Coeff>: Field {
    fn from_coeff(&self, c: &C, ctx: C::Ctx) -> Option<Self>;
}

/// An element of the prime field `F_p` (`p < 2^62`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModP {
    pub v: u64,
    pub p: u64,
}

impl ModP {
    pub fn new(v: i64, p: u64) -> ModP {
        ModP { v: (v as i128).rem_euclid(p as i128) as u64, p }
    }
}

impl Field for ModP {
    fn zero(&self) -> Self {
        ModP { v: 0, p: self.p }
    }
    fn one(&self) -> Self {
        ModP { v: 1 % self.p, p: self.p }
    }
    fn from_i64(&self, v: i64) -> Self {
        ModP::new(v, self.p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        ModP { v: Zp(self.v).add(&Zp(o.v), self.p).0, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        ModP { v: Zp(self.v).sub(&Zp(o.v), self.p).0, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        ModP { v: mul_mod(self.v, o.v, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        ModP { v: Zp(self.v).neg(self.p).0, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        inv_mod(self.v, self.p).map(|v| ModP { v, p: self.p })
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self) -> String {
        self.v.to_string()
    }
}

impl FromCoeff<Int> for ModP {
    fn from_coeff(&self, c: &Int, _: ()) -> Option<Self> {
        Some(ModP { v: c.rem_euclid_u64(self.p), p: self.p })
    }
}

impl FromCoeff<Zp> for ModP {
    fn from_coeff(&self, c: &Zp, p: u64) -> Option<Self> {
        (p == self.p).then_some(ModP { v: c.0, p })
    }
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational {
    num: Int,
    den: Int,
}

impl Rational {
    pub fn new(num: Int, den: Int) -> Rational {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
        if d.is_negative() {
            n = n.neg();
            d = d.neg();
        }
        if n.is_zero() {
            d = Int::ONE;
        }
        Rational { num: n, den: d }
    }

    pub fn int(v: i64) -> Rational {
        Rational { num: Int::from(v), den: Int::ONE }
    }

    pub fn numer(&self) -> &Int {
        &self.num
    }

    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn signum(&self) -> i32 {
        if self.num.is_zero() {
            0
        } else {
            self.num.signum()
        }
    }
}

impl Field for Rational {
    fn zero(&self) -> Self {
        Rational::int(0)
    }
    fn one(&self) -> Self {
        Rational::int(1)
    }
    fn from_i64(&self, v: i64) -> Self {
        Rational::int(v)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Rational { num: self.num.add(&o.num), den: Int::ONE };
        }
        Rational::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Rational { num: self.num.mul(&o.num), den: Int::ONE };
        }
        Rational::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        Rational { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| Rational::new(self.den.clone(), self.num.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self) -> String {
        if self.den.is_one() {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }
    fn weight(&self) -> usize {
        match (&self.num, &self.den) {
            (Int::Small(_), Int::Small(_)) => 1,
            _ => 4,
        }
    }
}

impl FromCoeff<Int> for Rational {
    fn from_coeff(&self, c: &Int, _: ()) -> Option<Self> {
        Some(Rational { num: c.clone(), den: Int::ONE })
    }
}

/// GF(2^64) as F_2[x]/(x^64 + x^4 + x^3 + x + 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gf2_64(pub u64);

fn clmul(a: u64, b: u64) -> (u64, u64) {
    let (mut lo, mut hi) = (0u64, 0u64);
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            lo ^= a << i;
            if i > 0 {
                hi ^= a >> (64 - i);
            }
        }
    }
    (lo, hi)
}

fn reduce(lo: u64, hi: u64) -> u64 {
    // x^64 = x^4 + x^3 + x + 1
    let fold = |h: u64| -> (u64, u64) {
        let l = h ^ (h << 1) ^ (h << 3) ^ (h << 4);
        let o = (h >> 63) ^ (h >> 61) ^ (h >> 60);
        (l, o)
    };
    let (l1, o1) = fold(hi);
    let (l2, _) = fold(o1);
    lo ^ l1 ^ l2
}

impl Gf2_64 {
    pub fn mul_raw(a: u64, b: u64) -> u64 {
        let (lo, hi) = clmul(a, b);
        reduce(lo, hi)
    }
}

impl Field for Gf2_64 {
    fn zero(&self) -> Self {
        Gf2_64(0)
    }
    fn one(&self) -> Self {
        Gf2_64(1)
    }
    fn from_i64(&self, v: i64) -> Self {
        Gf2_64((v & 1) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Gf2_64(self.0 ^ o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Gf2_64(self.0 ^ o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Gf2_64(Gf2_64::mul_raw(self.0, o.0))
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // a^(2^64 - 2)
        let mut r = 1u64;
        let mut b = self.0;
        let mut e = u64::MAX - 1;
        while e > 0 {
            if e & 1 == 1 {
                r = Gf2_64::mul_raw(r, b);
            }
            b = Gf2_64::mul_raw(b, b);
            e >>= 1;
        }
        Some(Gf2_64(r))
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn render(&self) -> String {
        format!("{:#x}", self.0)
    }
}

impl FromCoeff<Zp> for Gf2_64 {
    fn from_coeff(&self, c: &Zp, p: u64) -> Option<Self> {
        (p == 2).then_some(Gf2_64(c.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn gf2_64_is_a_field() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = Gf2_64(rng.gen());
            let b = Gf2_64(rng.gen());
            let c = Gf2_64(rng.gen());
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
        // the Frobenius is additive
        let a = Gf2_64(rng.gen());
        let b = Gf2_64(rng.gen());
        assert_eq!(a.add(&b).mul(&a.add(&b)), a.mul(&a).add(&b.mul(&b)));
    }

    #[test]
    fn gf2_64_reduction_matches_schoolbook() {
        // x^63 * x = x^64 = x^4 + x^3 + x + 1
        assert_eq!(Gf2_64::mul_raw(1 << 63, 2), 0b11011);
        // x^63 * x^63 = x^126 = x^62 * x^64 = x^66 + x^65 + x^63 + x^62
        //   and x^66 = x^6+x^5+x^3+x^2, x^65 = x^5+x^4+x^2+x
        let expect = (1u64 << 63) | (1 << 62) | (1 << 6) | (1 << 4) | (1 << 3) | (1 << 1);
        assert_eq!(Gf2_64::mul_raw(1 << 63, 1 << 63), expect);
    }

    #[test]
    fn rationals_normalize() {
        let a = Rational::new(Int::from(4), Int::from(-6));
        assert_eq!(a.render(), "-2/3");
        let b = a.add(&Rational::int(1));
        assert_eq!(b.render(), "1/3");
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }
}
