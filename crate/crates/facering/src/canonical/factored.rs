//! Sums of products of integer polynomials with rational coefficients, kept factored so that
//! degrees and leading parts in one variable can be read off term by term.

use crate::error::{Error, Result};
use crate::scalar::{Field, Int, ModP, Poly, QFunc, RatFunc, Rational, Var, WORK_PRIME};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

/// `coeff · Π factor^exp` with primitive factors of positive leading coefficient, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub coeff: Rational,
    pub factors: Vec<(Poly<Int>, i32)>,
}

fn key(p: &Poly<Int>) -> String {
    p.render()
}

impl Factored {
    pub fn constant(c: Rational) -> Factored {
        Factored { coeff: c, factors: Vec::new() }
    }

    /// Builds `sign · Π num / Π den`. Returns `Ok(None)` when a numerator factor is zero.
    pub fn from_parts(sign: i64, num: &[Poly<Int>], den: &[Poly<Int>]) -> Result<Option<Factored>> {
        let mut f = Factored::constant(Rational::int(sign));
        for p in num {
            if p.is_zero() {
                return Ok(None);
            }
            f.push(p, 1);
        }
        for p in den {
            if p.is_zero() {
                return Err(Error::DivisionByZero);
            }
            f.push(p, -1);
        }
        Ok(Some(f))
    }

    fn push(&mut self, p: &Poly<Int>, e: i32) {
        let c = p.content();
        let prim = p.div_coeff(&c).expect("content divides");
        let cr = Rational::new(c, Int::from(1));
        let cr = if e > 0 { cr.pow(e as u32) } else { cr.pow((-e) as u32).inv().expect("nonzero content") };
        self.coeff = self.coeff.mul(&cr);
        if prim.is_one() {
            return;
        }
        let k = key(&prim);
        match self.factors.binary_search_by(|(q, _)| key(q).cmp(&k)) {
            Ok(i) => {
                self.factors[i].1 += e;
                if self.factors[i].1 == 0 {
                    self.factors.remove(i);
                }
            }
            Err(i) => self.factors.insert(i, (prim, e)),
        }
    }

    pub fn mul(&self, o: &Factored) -> Factored {
        let mut out = self.clone();
        out.coeff = out.coeff.mul(&o.coeff);
        for (p, e) in &o.factors {
            out.push(p, *e);
        }
        out
    }

    pub fn neg(&self) -> Factored {
        Factored { coeff: self.coeff.neg(), factors: self.factors.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Degree in `v`: numerator degree minus denominator degree.
    pub fn degree_in(&self, v: Var) -> i64 {
        self.factors.iter().map(|(p, e)| p.degree_in(v).unwrap_or(0) as i64 * *e as i64).sum()
    }

    /// Leading coefficient in `v`, which is multiplicative.
    pub fn leading_in(&self, v: Var) -> Factored {
        let mut out = Factored::constant(self.coeff.clone());
        for (p, e) in &self.factors {
            out.push(&p.leading_in(v), *e);
        }
        out
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.factors.iter().any(|(p, _)| p.degree_in(v).unwrap_or(0) > 0)
    }

    /// Evaluates at a point; `Err(PoleAtPoint)` if a denominator factor vanishes.
    pub fn eval_mod(&self, p: u64, point: &dyn Fn(Var) -> u64) -> Result<ModP> {
        let like = ModP::new(0, p);
        let n = ModP::new(0, p).from_coeff_int(self.coeff.numer());
        let d = like.from_coeff_int(self.coeff.denom());
        let mut acc = n.div(&d).ok_or(Error::PoleAtPoint)?;
        for (f, e) in &self.factors {
            let x = f.eval_with(
                &like.zero(),
                &like.one(),
                &|c| like.from_coeff_int(c),
                &|v| ModP { v: point(v) % p, p },
                &|a, b| a.add(b),
                &|a, b| a.mul(b),
            );
            if *e > 0 {
                acc = acc.mul(&x.pow(*e as u32));
            } else {
                acc = acc.mul(&x.inv().ok_or(Error::PoleAtPoint)?.pow((-*e) as u32));
            }
        }
        Ok(acc)
    }

    pub fn to_ratfunc(&self) -> QFunc {
        let mut num = Poly::constant(self.coeff.numer().clone(), ());
        let mut den = Poly::constant(self.coeff.denom().clone(), ());
        for (p, e) in &self.factors {
            if *e > 0 {
                num = num.mul(&p.pow(*e as u32));
            } else {
                den = den.mul(&p.pow((-*e) as u32));
            }
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn render(&self) -> String {
        let mut s = self.coeff.render();
        for (p, e) in &self.factors {
            s.push_str(&format!(" ({})^{e}", p.render()));
        }
        s
    }
}

trait FromInt {
    fn from_coeff_int(&self, c: &Int) -> ModP;
}

impl FromInt for ModP {
    fn from_coeff_int(&self, c: &Int) -> ModP {
        ModP { v: c.rem_euclid_u64(self.p), p: self.p }
    }
}

/// Outcome of testing a sum for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    /// Like terms cancel exactly, or the expanded sum is zero.
    Zero,
    /// A nonzero value at a point.
    NonZero,
    /// Zero at every sampled point; expansion was skipped for size.
    ProbablyZero,
}

/// A sum of [`Factored`] terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredSum {
    pub terms: Vec<Factored>,
}

impl FactoredSum {
    pub fn new(terms: Vec<Factored>) -> FactoredSum {
        let mut s = FactoredSum { terms };
        s.combine();
        s
    }

    /// Merges terms with identical factor lists and drops zero terms.
    pub fn combine(&mut self) {
        let mut acc: BTreeMap<String, Factored> = BTreeMap::new();
        for t in self.terms.drain(..) {
            let k: String = t.factors.iter().map(|(p, e)| format!("({})^{e};", key(p))).collect();
            match acc.get_mut(&k) {
                Some(x) => x.coeff = x.coeff.add(&t.coeff),
                None => {
                    acc.insert(k, t);
                }
            }
        }
        self.terms = acc.into_values().filter(|t| !t.is_zero()).collect();
    }

    pub fn add(&self, o: &FactoredSum) -> FactoredSum {
        FactoredSum::new(self.terms.iter().chain(&o.terms).cloned().collect())
    }

    pub fn neg(&self) -> FactoredSum {
        FactoredSum { terms: self.terms.iter().map(Factored::neg).collect() }
    }

    pub fn sub(&self, o: &FactoredSum) -> FactoredSum {
        self.add(&o.neg())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest termwise degree in `v`; the sum's degree is at most this.
    pub fn max_degree_in(&self, v: Var) -> Option<i64> {
        self.terms.iter().map(|t| t.degree_in(v)).max()
    }

    /// Sum of the leading coefficients of the terms of top termwise degree. When it is
    /// nonzero it is the leading coefficient of the sum and that degree is the sum's degree.
    pub fn top_leading_in(&self, v: Var) -> Option<(i64, FactoredSum)> {
        let m = self.max_degree_in(v)?;
        let lead = self.terms.iter().filter(|t| t.degree_in(v) == m).map(|t| t.leading_in(v)).collect();
        Some((m, FactoredSum::new(lead)))
    }

    /// Writes the sum as `c·v + b` with `b, c` free of `v`, when every term is free of `v`
    /// apart from one numerator factor of degree one.
    pub fn split_linear_in(&self, v: Var) -> Option<(FactoredSum, FactoredSum)> {
        let mut lin = Vec::new();
        let mut con = Vec::new();
        for t in &self.terms {
            let dep: Vec<usize> = (0..t.factors.len()).filter(|&i| t.factors[i].0.degree_in(v).unwrap_or(0) > 0).collect();
            match dep.as_slice() {
                [] => con.push(t.clone()),
                [i] if t.factors[*i].1 == 1 && t.factors[*i].0.degree_in(v) == Some(1) => {
                    let mut rest = t.clone();
                    let (p, _) = rest.factors.remove(*i);
                    for (k, out) in [(1, &mut lin), (0, &mut con)] {
                        let part = p.coeff_in(v, k);
                        if !part.is_zero() {
                            let mut r = rest.clone();
                            r.push(&part, 1);
                            out.push(r);
                        }
                    }
                }
                _ => return None,
            }
        }
        Some((FactoredSum::new(lin), FactoredSum::new(con)))
    }

    pub fn eval_mod(&self, p: u64, point: &dyn Fn(Var) -> u64) -> Result<ModP> {
        let mut acc = ModP::new(0, p);
        for t in &self.terms {
            acc = acc.add(&t.eval_mod(p, point)?);
        }
        Ok(acc)
    }

    pub fn to_ratfunc(&self) -> QFunc {
        self.terms.iter().fold(QFunc::constant(0, ()), |acc, t| acc.add_rf(&t.to_ratfunc()))
    }

    /// Exact cancellation first, then random points modulo a large prime, then expansion
    /// when the sum has at most `expand_limit` terms.
    pub fn zero_test(&self, seed: u64, expand_limit: usize) -> ZeroTest {
        let mut s = self.clone();
        s.combine();
        if s.is_empty() {
            return ZeroTest::Zero;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hits = 0;
        for _ in 0..16 {
            let mut vals: HashMap<Var, u64> = HashMap::new();
            let mut pick = |v: Var| *vals.entry(v).or_insert_with(|| rng.gen_range(1..WORK_PRIME));
            let mut cache: HashMap<Var, u64> = HashMap::new();
            for t in &s.terms {
                for (f, _) in &t.factors {
                    for v in f.vars() {
                        cache.entry(v).or_insert_with(|| pick(v));
                    }
                }
            }
            match s.eval_mod(WORK_PRIME, &|v| cache[&v]) {
                Ok(x) if !x.is_zero() => return ZeroTest::NonZero,
                Ok(_) => {
                    hits += 1;
                    if hits >= 3 {
                        break;
                    }
                }
                Err(_) => continue,
            }
        }
        if s.terms.len() <= expand_limit {
            if s.to_ratfunc().is_zero_rf() {
                ZeroTest::Zero
            } else {
                ZeroTest::NonZero
            }
        } else {
            ZeroTest::ProbablyZero
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(Factored::render).collect::<Vec<_>>().join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[(i64, &[(Var, u32)])]) -> Poly<Int> {
        Poly::from_terms(s.iter().map(|(c, m)| (crate::scalar::Mono::from_pairs(m), Int::from(*c))), ())
    }

    #[test]
    fn normalization_and_cancellation() {
        let x = Var::free(1);
        let y = Var::free(2);
        let a = p(&[(2, &[(x, 1)]), (-4, &[(y, 1)])]);
        let b = p(&[(-1, &[(x, 1)]), (2, &[(y, 1)])]);
        let f = Factored::from_parts(1, &[a.clone()], &[]).unwrap().unwrap();
        let g = Factored::from_parts(2, &[b], &[]).unwrap().unwrap();
        assert_eq!(f.factors, g.factors);
        assert_eq!(FactoredSum::new(vec![f.clone(), g]).terms.len(), 0);
        let h = Factored::from_parts(1, &[a.clone()], &[a]).unwrap().unwrap();
        assert!(h.factors.is_empty());
        assert_eq!(h.coeff, Rational::int(1));
    }

    #[test]
    fn degrees_and_linear_split() {
        let t = Var::T;
        let x = Var::free(1);
        let lin = p(&[(3, &[(t, 1), (x, 1)]), (1, &[(x, 2)])]);
        let den = p(&[(1, &[(x, 1)]), (1, &[])]);
        let f = Factored::from_parts(1, &[lin], &[den]).unwrap().unwrap();
        assert_eq!(f.degree_in(t), 1);
        let s = FactoredSum::new(vec![f.clone()]);
        let (c, b) = s.split_linear_in(t).unwrap();
        let back = c.to_ratfunc().mul_rf(&QFunc::var(t, ())).add_rf(&b.to_ratfunc());
        assert!(back.eq_rf(&s.to_ratfunc()));
        let (m, lead) = s.top_leading_in(t).unwrap();
        assert_eq!(m, 1);
        assert!(lead.to_ratfunc().eq_rf(&c.to_ratfunc()));
    }

    #[test]
    fn zero_tests() {
        let x = Var::free(1);
        let y = Var::free(2);
        let xy = p(&[(1, &[(x, 1)]), (1, &[(y, 1)])]);
        let xm = p(&[(1, &[(x, 1)]), (-1, &[(y, 1)])]);
        let sq = p(&[(1, &[(x, 2)]), (-1, &[(y, 2)])]);
        let lhs = Factored::from_parts(1, &[xy, xm], &[]).unwrap().unwrap();
        let rhs = Factored::from_parts(-1, &[sq], &[]).unwrap().unwrap();
        let s = FactoredSum::new(vec![lhs.clone(), rhs]);
        assert_eq!(s.terms.len(), 2);
        assert_eq!(s.zero_test(1, 10), ZeroTest::Zero);
        assert_eq!(s.zero_test(1, 0), ZeroTest::ProbablyZero);
        assert_eq!(FactoredSum::new(vec![lhs]).zero_test(1, 10), ZeroTest::NonZero);
    }
}
