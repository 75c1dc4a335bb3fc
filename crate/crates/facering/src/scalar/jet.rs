//! First-order jets over GF(2^64): the ring `GF(2^64)[e_1..e_k] / (e_i^2)`.
//!
//! Evaluating a characteristic-2 rational function at `p + e` yields, as the
//! coefficient of `e_S`, the mixed derivative `prod_{i in S} d/da_i` at `p`.

use super::coeff::Zp;
use super::field::{Field, FromCoeff, Gf2_64};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet {
    k: u8,
    c: Vec<u64>,
}

impl Jet {
    pub fn constant(k: u8, v: u64) -> Jet {
        let mut c = vec![0; 1 << k];
        c[0] = v;
        Jet { k, c }
    }

    /// `v + e_i`.
    pub fn variable(k: u8, v: u64, i: u8) -> Jet {
        let mut j = Jet::constant(k, v);
        j.c[1 << i] ^= 1;
        j
    }

    pub fn order(&self) -> u8 {
        self.k
    }

    /// Coefficient of `e_S` for the subset bitmask `s`.
    pub fn coeff(&self, s: usize) -> Gf2_64 {
        Gf2_64(self.c[s])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }
}

impl Field for Jet {
    fn zero(&self) -> Self {
        Jet::constant(self.k, 0)
    }
    fn one(&self) -> Self {
        Jet::constant(self.k, 1)
    }
    fn from_i64(&self, v: i64) -> Self {
        Jet::constant(self.k, (v & 1) as u64)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn add(&self, o: &Self) -> Self {
        Jet { k: self.k, c: self.c.iter().zip(&o.c).map(|(a, b)| a ^ b).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul(&self, o: &Self) -> Self {
        let n = self.c.len();
        let full = n - 1;
        let mut out = vec![0u64; n];
        for (s, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let rest = full & !s;
            let mut t = rest;
            loop {
                let b = o.c[t];
                if b != 0 {
                    out[s | t] ^= Gf2_64::mul_raw(a, b);
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & rest;
            }
        }
        Jet { k: self.k, c: out }
    }
    fn neg(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        let a0 = Gf2_64(self.c[0]).inv()?;
        let n = self.c.len();
        let mut out = vec![0u64; n];
        out[0] = a0.0;
        let mut order: Vec<usize> = (1..n).collect();
        order.sort_by_key(|s| s.count_ones());
        for s in order {
            // sum over proper subsets t of s of a[s \ t] * out[t]
            let mut acc = 0u64;
            let mut t = (s - 1) & s;
            loop {
                let a = self.c[s & !t];
                if a != 0 && out[t] != 0 {
                    acc ^= Gf2_64::mul_raw(a, out[t]);
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            out[s] = Gf2_64::mul_raw(a0.0, acc);
        }
        Some(Jet { k: self.k, c: out })
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn render(&self) -> String {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(s, v)| format!("{v:#x}@{s:b}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl FromCoeff<Zp> for Jet {
    fn from_coeff(&self, c: &Zp, p: u64) -> Option<Self> {
        (p == 2).then(|| Jet::constant(self.k, c.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_jet(rng: &mut impl Rng, k: u8) -> Jet {
        Jet { k, c: (0..1 << k).map(|_| rng.gen()).collect() }
    }

    #[test]
    fn ring_laws_and_inverse() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (a, b, c) = (random_jet(&mut rng, 4), random_jet(&mut rng, 4), random_jet(&mut rng, 4));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        let nil = Jet::variable(3, 0, 1);
        assert!(nil.inv().is_none());
        assert!(nil.mul(&nil).is_zero());
    }

    #[test]
    fn derivatives_of_a_product() {
        // f = x * y^2 * z at (x,y,z) = (p,q,r) + e: d/dx d/dz f = y^2, d/dy f = 0.
        let (p, q, r) = (5u64, 7u64, 11u64);
        let x = Jet::variable(3, p, 0);
        let y = Jet::variable(3, q, 1);
        let z = Jet::variable(3, r, 2);
        let f = x.mul(&y).mul(&y).mul(&z);
        assert_eq!(f.coeff(0b101), Gf2_64(q).mul(&Gf2_64(q)));
        assert_eq!(f.coeff(0b010), Gf2_64(0));
        assert_eq!(f.coeff(0b001), Gf2_64(q).mul(&Gf2_64(q)).mul(&Gf2_64(r)));
    }
}
