//! Base coefficient rings for polynomials: the integers (characteristic 0) and residues mod p.

use super::int::Int;
use std::fmt::Debug;
use std::hash::Hash;

pub trait Coeff: Clone + Eq + Hash + Debug + Send + Sync + 'static {
    /// Runtime data shared by every coefficient of one ring (the modulus for residues).
    type Ctx: Copy + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64, ctx: Self::Ctx) -> Self;
    fn from_int(v: &Int, ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self, ctx: Self::Ctx) -> Self;
    fn sub(&self, o: &Self, ctx: Self::Ctx) -> Self;
    fn mul(&self, o: &Self, ctx: Self::Ctx) -> Self;
    fn neg(&self, ctx: Self::Ctx) -> Self;
    fn div_exact(&self, o: &Self, ctx: Self::Ctx) -> Option<Self>;
    /// Gcd for content removal; in a field any nonzero element is a gcd, we return one.
    fn gcd(&self, o: &Self, ctx: Self::Ctx) -> Self;
    /// The unit `u` with `self / u` in normal form (positive for integers, one for residues).
    fn unit_part(&self, ctx: Self::Ctx) -> Self;
    fn characteristic(ctx: Self::Ctx) -> u64;
    fn is_field(ctx: Self::Ctx) -> bool;
    fn sqrt(&self, ctx: Self::Ctx) -> Option<Self>;
    fn render(&self, ctx: Self::Ctx) -> String;
    /// Lift to a small integer representative when it exists, used by evaluation maps.
    fn to_int(&self, ctx: Self::Ctx) -> Int;
}

impl Coeff for Int {
    type Ctx = ();

    fn zero() -> Int {
        Int::ZERO
    }
    fn one() -> Int {
        Int::ONE
    }
    fn from_i64(v: i64, _: ()) -> Int {
        Int::from(v)
    }
    fn from_int(v: &Int, _: ()) -> Int {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Int::is_one(self)
    }
    fn add(&self, o: &Int, _: ()) -> Int {
        Int::add(self, o)
    }
    fn sub(&self, o: &Int, _: ()) -> Int {
        Int::sub(self, o)
    }
    fn mul(&self, o: &Int, _: ()) -> Int {
        Int::mul(self, o)
    }
    fn neg(&self, _: ()) -> Int {
        Int::neg(self)
    }
    fn div_exact(&self, o: &Int, _: ()) -> Option<Int> {
        Int::div_exact(self, o)
    }
    fn gcd(&self, o: &Int, _: ()) -> Int {
        Int::gcd(self, o)
    }
    fn unit_part(&self, _: ()) -> Int {
        if self.is_negative() {
            Int::from(-1)
        } else {
            Int::ONE
        }
    }
    fn characteristic(_: ()) -> u64 {
        0
    }
    fn is_field(_: ()) -> bool {
        false
    }
    fn sqrt(&self, _: ()) -> Option<Int> {
        self.sqrt_exact()
    }
    fn render(&self, _: ()) -> String {
        self.to_string()
    }
    fn to_int(&self, _: ()) -> Int {
        self.clone()
    }
}

/// A residue modulo a prime `p < 2^62`, stored reduced in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Zp(pub u64);

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Square root modulo an odd prime (Tonelli-Shanks); `p = 2` handled directly.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Coeff for Zp {
    type Ctx = u64;

    fn zero() -> Zp {
        Zp(0)
    }
    fn one() -> Zp {
        Zp(1)
    }
    fn from_i64(v: i64, p: u64) -> Zp {
        Zp((v as i128).rem_euclid(p as i128) as u64)
    }
    fn from_int(v: &Int, p: u64) -> Zp {
        Zp(v.rem_euclid_u64(p))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, o: &Zp, p: u64) -> Zp {
        let s = self.0 + o.0;
        Zp(if s >= p { s - p } else { s })
    }
    fn sub(&self, o: &Zp, p: u64) -> Zp {
        Zp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + p - o.0 })
    }
    fn mul(&self, o: &Zp, p: u64) -> Zp {
        Zp(mul_mod(self.0, o.0, p))
    }
    fn neg(&self, p: u64) -> Zp {
        Zp(if self.0 == 0 { 0 } else { p - self.0 })
    }
    fn div_exact(&self, o: &Zp, p: u64) -> Option<Zp> {
        inv_mod(o.0, p).map(|i| Zp(mul_mod(self.0, i, p)))
    }
    fn gcd(&self, o: &Zp, _: u64) -> Zp {
        if self.0 == 0 && o.0 == 0 {
            Zp(0)
        } else {
            Zp(1)
        }
    }
    fn unit_part(&self, _: u64) -> Zp {
        if self.0 == 0 {
            Zp(1)
        } else {
            *self
        }
    }
    fn characteristic(p: u64) -> u64 {
        p
    }
    fn is_field(_: u64) -> bool {
        true
    }
    fn sqrt(&self, p: u64) -> Option<Zp> {
        sqrt_mod(self.0, p).map(Zp)
    }
    fn render(&self, _: u64) -> String {
        self.0.to_string()
    }
    fn to_int(&self, _: u64) -> Int {
        Int::from(self.0 as i64)
    }
}
