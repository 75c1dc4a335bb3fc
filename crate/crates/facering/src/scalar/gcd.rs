//! Multivariate polynomial gcd by recursive primitive pseudo-remainder sequences.

use super::coeff::{inv_mod, mul_mod, Coeff};
use super::poly::{Mono, Poly, Var};
use super::WORK_PRIME;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Scales `p` so its leading coefficient is in normal form (positive, or one over a field),
/// and over the integers removes the coefficient content.
pub fn normalize<C: Coeff>(p: &Poly<C>) -> Poly<C> {
    if p.is_zero() {
        return p.clone();
    }
    p.div_coeff(&p.content()).expect("content divides")
}

fn coeff_gcd<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> C {
    let ctx = a.ctx();
    if C::is_field(ctx) {
        return C::one();
    }
    let ca = a.content();
    let cb = b.content();
    ca.gcd(&cb, ctx)
}

/// Gcd in `C[vars]`, normalized; `gcd(0, 0) = 0`.
pub fn gcd<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    let ctx = a.ctx();
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let cg = coeff_gcd(a, b);
    if a.is_constant() || b.is_constant() {
        return Poly::constant(cg, ctx);
    }
    let mg = a.monomial_content().gcd(&b.monomial_content());
    let a1 = normalize(&a.div_mono(&a.monomial_content()).unwrap());
    let b1 = normalize(&b.div_mono(&b.monomial_content()).unwrap());
    let g = primitive_gcd(&a1, &b1);
    normalize(&g).mul_term(&mg, &cg)
}

/// Gcd of two content-free polynomials without monomial content.
fn primitive_gcd<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    let ctx = a.ctx();
    if a.is_constant() || b.is_constant() {
        return Poly::one(ctx);
    }
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), std::cmp::Reverse(v)))
        .unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).unwrap();
    let mut q = b.div_exact(&cb).unwrap();
    if coprime_image(&p, &q, v) {
        return normalize(&c);
    }
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.degree_in(v) > Some(0) {
        let r = prem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part_in(&r, v) };
    }
    let g = if q.is_zero() { primitive_part_in(&p, v) } else { Poly::one(ctx) };
    normalize(&g.mul(&c))
}

/// `p` as a polynomial in `v` over F_prime, other variables sent to `point`.
fn image_in<C: Coeff>(p: &Poly<C>, v: Var, prime: u64, point: &dyn Fn(Var) -> u64) -> Vec<u64> {
    let ctx = p.ctx();
    let mut out = vec![0u64; p.degree_in(v).unwrap_or(0) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.to_int(ctx).rem_euclid_u64(prime);
        let mut k = 0;
        for (w, e) in m.pairs() {
            if w == v {
                k = e as usize;
            } else {
                for _ in 0..e {
                    t = mul_mod(t, point(w), prime);
                }
            }
        }
        out[k] = (out[k] + t) % prime;
    }
    out
}

fn univariate_degree_of_gcd(mut a: Vec<u64>, mut b: Vec<u64>, prime: u64) -> usize {
    let trim = |x: &mut Vec<u64>| {
        while x.last() == Some(&0) {
            x.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = inv_mod(*b.last().unwrap(), prime).expect("nonzero leading coefficient");
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv, prime);
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + prime - mul_mod(f, bi, prime)) % prime;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when `a` and `b`, primitive in `v`, provably have no common factor involving `v`.
/// At a point where both leading coefficients in `v` survive, the image of the gcd keeps its
/// degree in `v`, so coprime images bound that degree by zero.
fn coprime_image<C: Coeff>(a: &Poly<C>, b: &Poly<C>, v: Var) -> bool {
    let ch = C::characteristic(a.ctx());
    let prime = if ch == 0 { WORK_PRIME } else { ch };
    if prime < 1 << 20 {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.len() as u64 ^ (b.len() as u64) << 32);
    for _ in 0..2 {
        let vals: Vec<(Var, u64)> = a.vars().into_iter().chain(b.vars()).map(|w| (w, rng.gen_range(1..prime))).collect();
        let point = |w: Var| vals.iter().find(|(x, _)| *x == w).map_or(0, |(_, y)| *y);
        let ia = image_in(a, v, prime, &point);
        let ib = image_in(b, v, prime, &point);
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        return univariate_degree_of_gcd(ia, ib, prime) == 0;
    }
    false
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in<C: Coeff>(p: &Poly<C>, v: Var) -> Poly<C> {
    let d = p.degree_in(v).unwrap_or(0);
    let mut coeffs: Vec<Poly<C>> = (0..=d).map(|k| p.coeff_in(v, k)).filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = Poly::zero(p.ctx());
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return normalize(&g);
        }
    }
    g
}

fn primitive_part_in<C: Coeff>(p: &Poly<C>, v: Var) -> Poly<C> {
    let c = content_in(p, v);
    normalize(&p.div_exact(&c).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem<C: Coeff>(a: &Poly<C>, b: &Poly<C>, v: Var) -> Poly<C> {
    let db = b.degree_in(v).unwrap();
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.coeff_in(v, dr);
        let shift = Mono::from_pairs(&[(v, dr - db)]);
        r = r.mul(&lb).sub(&lr.mul(b).mul_term(&shift, &C::one()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::coeff::Zp;
    use crate::scalar::int::Int;

    fn y(k: u32) -> Poly<Int> {
        Poly::var(Var::free(k), ())
    }

    #[test]
    fn recovers_common_factor() {
        let (x, z, w) = (y(1), y(2), y(3));
        let g = x.mul(&z).add(&w.scale(&Int::from(3))).add(&Poly::one(()));
        let a = g.mul(&x.add(&z).pow(2));
        let b = g.mul(&x.sub(&w)).scale(&Int::from(6));
        assert_eq!(gcd(&a, &b), normalize(&g));
        assert_eq!(gcd(&a.neg(), &b), normalize(&g));
    }

    #[test]
    fn coprime_and_contents() {
        let (x, z) = (y(1), y(2));
        let a = x.scale(&Int::from(4)).mul(&z);
        let b = x.pow(2).scale(&Int::from(6));
        assert_eq!(gcd(&a, &b), x.scale(&Int::from(2)));
        assert!(gcd(&x.add(&z), &x.sub(&z)).is_one());
    }

    fn small(terms: &[(i64, [u32; 3])]) -> Poly<Int> {
        Poly::from_terms(
            terms.iter().map(|(c, e)| (Mono::from_pairs(&[(Var::free(1), e[0]), (Var::free(2), e[1]), (Var::T, e[2])]), Int::from(*c))),
            (),
        )
    }

    proptest::proptest! {
        #[test]
        fn common_factor_survives(
            a in proptest::collection::vec((-5i64..=5, [0u32..3, 0u32..3, 0u32..3]), 1..5),
            b in proptest::collection::vec((-5i64..=5, [0u32..3, 0u32..3, 0u32..3]), 1..5),
            g in proptest::collection::vec((-5i64..=5, [0u32..2, 0u32..2, 0u32..2]), 1..4),
        ) {
            let (a, b, g) = (small(&a), small(&b), small(&g));
            proptest::prop_assume!(!a.is_zero() && !b.is_zero() && !g.is_zero());
            let (x, y) = (a.mul(&g), b.mul(&g));
            let h = gcd(&x, &y);
            proptest::prop_assert!(h.div_exact(&normalize(&g)).is_some());
            proptest::prop_assert!(x.div_exact(&h).is_some() && y.div_exact(&h).is_some());
        }
    }

    #[test]
    fn over_residues() {
        let p = 5;
        let x = Poly::<Zp>::var(Var::free(1), p);
        let z = Poly::<Zp>::var(Var::free(2), p);
        let g = x.add(&z.scale(&Zp(2)));
        let a = g.mul(&x.sub(&z));
        let b = g.mul(&x.add(&Poly::one(p))).scale(&Zp(3));
        assert_eq!(gcd(&a, &b), g);
    }
}
