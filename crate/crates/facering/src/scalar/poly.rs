//! Sparse distributed multivariate polynomials in graded-lexicographic order.

use super::coeff::Coeff;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

const EXP_BITS: u32 = 12;
const EXP_MASK: u32 = (1 << EXP_BITS) - 1;

/// A polynomial variable. Parameter-matrix entries, auxiliary entries, free test
/// variables and the distinguished `t` live in disjoint id ranges.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u32);

impl Var {
    pub const T: Var = Var((1 << 20) - 1);

    /// Entry in row `row` (1-based) and the column of vertex `vertex`.
    pub fn entry(row: usize, vertex: u32) -> Var {
        assert!((1..=64).contains(&row) && vertex < 8192, "parameter index out of range");
        Var((((row - 1) as u32) << 13) | vertex)
    }

    pub fn aux(row: usize) -> Var {
        assert!((1..=4096).contains(&row));
        Var((1 << 19) | row as u32)
    }

    pub fn free(k: u32) -> Var {
        assert!(k < 1 << 17);
        Var((1 << 19) | (1 << 18) | k)
    }

    pub fn name(self) -> String {
        if self == Var::T {
            "t".to_string()
        } else if self.0 & (1 << 19) == 0 {
            format!("a{}_{}", (self.0 >> 13) + 1, self.0 & 8191)
        } else if self.0 & (1 << 18) == 0 {
            format!("b{}", self.0 & ((1 << 18) - 1))
        } else {
            format!("y{}", self.0 & ((1 << 17) - 1))
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        if s == "t" {
            return Some(Var::T);
        }
        if let Some(rest) = s.strip_prefix('a') {
            let (r, c) = rest.split_once('_')?;
            return Some(Var::entry(r.parse().ok()?, c.parse().ok()?));
        }
        if let Some(rest) = s.strip_prefix('b') {
            return Some(Var::aux(rest.parse().ok()?));
        }
        if let Some(rest) = s.strip_prefix('y') {
            return Some(Var::free(rest.parse().ok()?));
        }
        None
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A monomial: packed `(var, exponent)` pairs sorted by variable id.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(SmallVec<[u32; 4]>);

fn pack(v: Var, e: u32) -> u32 {
    assert!(e <= EXP_MASK, "exponent overflow");
    (v.0 << EXP_BITS) | e
}

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(v: Var) -> Mono {
        Mono::from_pairs(&[(v, 1)])
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Mono {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Mono(acc.into_iter().filter(|&(_, e)| e > 0).map(|(v, e)| pack(v, e)).collect())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|&w| (Var(w >> EXP_BITS), w & EXP_MASK))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|w| w & EXP_MASK).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.pairs().find(|&(w, _)| w == v).map_or(0, |(_, e)| e)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, vb) = (a[i] >> EXP_BITS, b[j] >> EXP_BITS);
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = (a[i] & EXP_MASK) + (b[j] & EXP_MASK);
                    assert!(e <= EXP_MASK, "exponent overflow");
                    out.push((va << EXP_BITS) | e);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = SmallVec::new();
        let mut j = 0;
        let b = &o.0;
        for &w in self.0.iter() {
            let v = w >> EXP_BITS;
            if j < b.len() && (b[j] >> EXP_BITS) < v {
                return None;
            }
            if j < b.len() && (b[j] >> EXP_BITS) == v {
                let (ea, eb) = (w & EXP_MASK, b[j] & EXP_MASK);
                if eb > ea {
                    return None;
                }
                if ea > eb {
                    out.push((v << EXP_BITS) | (ea - eb));
                }
                j += 1;
            } else {
                out.push(w);
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Mono(out))
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut out = SmallVec::new();
        for (v, e) in self.pairs() {
            let f = o.exponent(v);
            if f > 0 {
                out.push(pack(v, e.min(f)));
            }
        }
        Mono(out)
    }

    pub fn pow(&self, k: u32) -> Mono {
        Mono(self.pairs().filter(|_| k > 0).map(|(v, e)| pack(v, e * k)).collect())
    }

    /// Removes every occurrence of `v`, returning the exponent it had.
    pub fn split_var(&self, v: Var) -> (u32, Mono) {
        let mut e = 0;
        let mut rest = SmallVec::new();
        for (w, f) in self.pairs() {
            if w == v {
                e = f;
            } else {
                rest.push(pack(w, f));
            }
        }
        (e, Mono(rest))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.pairs().map(|(v, _)| v)
    }

    /// Splits exponents by parity: `self = odd * even^2` with `odd` squarefree.
    pub fn parity_split(&self) -> (Mono, Mono) {
        let odd = Mono(self.pairs().filter(|&(_, e)| e % 2 == 1).map(|(v, _)| pack(v, 1)).collect());
        let half = Mono(self.pairs().filter(|&(_, e)| e >= 2).map(|(v, e)| pack(v, e / 2)).collect());
        (odd, half)
    }

    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.pairs()
            .map(|(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            c => return c,
        }
        for (a, b) in self.0.iter().zip(o.0.iter()) {
            let (va, vb) = (a >> EXP_BITS, b >> EXP_BITS);
            if va != vb {
                return if va < vb { Ordering::Greater } else { Ordering::Less };
            }
            let (ea, eb) = (a & EXP_MASK, b & EXP_MASK);
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        self.0.len().cmp(&o.0.len())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial with terms sorted by decreasing monomial and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C: Coeff> {
    ctx: C::Ctx,
    terms: Vec<(Mono, C)>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(ctx: C::Ctx) -> Self {
        Poly { ctx, terms: Vec::new() }
    }

    pub fn one(ctx: C::Ctx) -> Self {
        Self::constant(C::one(), ctx)
    }

    pub fn constant(c: C, ctx: C::Ctx) -> Self {
        if c.is_zero() {
            Self::zero(ctx)
        } else {
            Poly { ctx, terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn from_i64(v: i64, ctx: C::Ctx) -> Self {
        Self::constant(C::from_i64(v, ctx), ctx)
    }

    pub fn var(v: Var, ctx: C::Ctx) -> Self {
        Poly { ctx, terms: vec![(Mono::var(v), C::one())] }
    }

    pub fn monomial(m: Mono, c: C, ctx: C::Ctx) -> Self {
        if c.is_zero() {
            Self::zero(ctx)
        } else {
            Poly { ctx, terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, C)>, ctx: C::Ctx) -> Self {
        let mut acc: FxHashMap<Mono, C> = FxHashMap::default();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c, ctx),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc, ctx)
    }

    fn from_map(acc: FxHashMap<Mono, C>, ctx: C::Ctx) -> Self {
        let mut terms: Vec<(Mono, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { ctx, terms }
    }

    pub fn ctx(&self) -> C::Ctx {
        self.ctx
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map_or(C::zero(), |t| t.1.clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let ctx = self.ctx;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        let nb = |c: &C| if negate { c.neg(ctx) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), nb(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1, ctx) } else { a[i].1.add(&b[j].1, ctx) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), nb(c))));
        Poly { ctx, terms: out }
    }

    pub fn neg(&self) -> Self {
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg(self.ctx))).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        let ctx = self.ctx;
        Poly {
            ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.mul(c, ctx)))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &C) -> Self {
        let ctx = self.ctx;
        Poly {
            ctx,
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), d.mul(c, ctx)))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ctx);
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            return big.mul_term(&small.terms[0].0, &small.terms[0].1);
        }
        let ctx = self.ctx;
        let mut acc: FxHashMap<Mono, C> = FxHashMap::default();
        acc.reserve(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2, ctx);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c, ctx),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc, ctx)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.ctx);
        let mut b = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max()
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, v: Var, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let (e, rest) = m.split_var(v);
                (e == k).then(|| (rest, c.clone()))
            })
            .collect::<Vec<_>>();
        let mut p = Poly { ctx: self.ctx, terms };
        p.terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        p
    }

    /// Coefficient of the highest power of `v`.
    pub fn leading_in(&self, v: Var) -> Self {
        match self.degree_in(v) {
            Some(d) => self.coeff_in(v, d),
            None => Self::zero(self.ctx),
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.vars().collect::<Vec<_>>()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Gcd of coefficients, normalized by `unit_part` of the leading coefficient.
    pub fn content(&self) -> C {
        let ctx = self.ctx;
        let mut g = C::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c, ctx);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return C::one();
        }
        let lc = self.leading_coeff();
        let u = lc.unit_part(ctx);
        if C::is_field(ctx) {
            u
        } else {
            g.mul(&u, ctx)
        }
    }

    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Mono::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_coeff(&self, c: &C) -> Option<Self> {
        let ctx = self.ctx;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, d) in &self.terms {
            terms.push((m.clone(), d.div_exact(c, ctx)?));
        }
        Some(Poly { ctx, terms })
    }

    pub fn div_mono(&self, m: &Mono) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, d) in &self.terms {
            terms.push((n.div(m)?, d.clone()));
        }
        Some(Poly { ctx: self.ctx, terms })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.ctx));
        }
        if d.len() == 1 {
            let (m, c) = &d.terms[0];
            return self.div_mono(m)?.div_coeff(c);
        }
        let ctx = self.ctx;
        if self.total_degree()? < d.total_degree()? {
            return None;
        }
        let (tm, _) = self.terms.last().unwrap();
        let (dm, _) = d.terms.last().unwrap();
        tm.div(dm)?;
        for v in d.vars() {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (lm, lc) = d.terms[0].clone();
        let mut rem: BTreeMap<Mono, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm)?;
            let qc = c.div_exact(&lc, ctx)?;
            for (dm, dc) in &d.terms[1..] {
                let pm = dm.mul(&qm);
                let pc = dc.mul(&qc, ctx);
                match rem.get_mut(&pm) {
                    Some(e) => {
                        *e = e.sub(&pc, ctx);
                        if e.is_zero() {
                            rem.remove(&pm);
                        }
                    }
                    None => {
                        rem.insert(pm, pc.neg(ctx));
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { ctx, terms: quot })
    }

    /// Substitutes polynomials for variables (missing variables are kept).
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<Self>) -> Self {
        let ctx = self.ctx;
        let mut cache: FxHashMap<(Var, u32), Self> = FxHashMap::default();
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone(), ctx);
            let mut kept = Vec::new();
            for (v, e) in m.pairs() {
                match map(v) {
                    Some(p) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                        term = term.mul(&pw);
                    }
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                term = term.mul_term(&Mono::from_pairs(&kept), &C::one());
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluates into any commutative target given coefficient and variable images.
    pub fn eval_with<K: Clone>(
        &self,
        zero: &K,
        one: &K,
        coeff: &dyn Fn(&C) -> K,
        var: &dyn Fn(Var) -> K,
        add: &dyn Fn(&K, &K) -> K,
        mul: &dyn Fn(&K, &K) -> K,
    ) -> K {
        let mut cache: FxHashMap<Var, Vec<K>> = FxHashMap::default();
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (v, e) in m.pairs() {
                let pows = cache.entry(v).or_insert_with(|| vec![one.clone(), var(v)]);
                while pows.len() <= e as usize {
                    let nxt = mul(pows.last().unwrap(), &pows[1]);
                    pows.push(nxt);
                }
                t = mul(&t, &pows[e as usize]);
            }
            acc = add(&acc, &t);
        }
        acc
    }

    /// Exact square root, if `self` is the square of a polynomial over the same base.
    pub fn sqrt(&self) -> Option<Self> {
        let ctx = self.ctx;
        if self.is_zero() {
            return Some(self.clone());
        }
        if C::characteristic(ctx) == 2 {
            let mut terms = Vec::new();
            for (m, c) in &self.terms {
                let (odd, half) = m.parity_split();
                if !odd.is_one() {
                    return None;
                }
                terms.push((half, c.sqrt(ctx)?));
            }
            return Some(Poly::from_terms(terms, ctx));
        }
        let (lm, lc) = &self.terms[0];
        let (odd, half) = lm.parity_split();
        if !odd.is_one() {
            return None;
        }
        let (tm, _) = self.terms.last().unwrap();
        let (todd, thalf) = tm.parity_split();
        if !todd.is_one() {
            return None;
        }
        let r0 = (half, lc.sqrt(ctx)?);
        let two_r0 = r0.1.add(&r0.1, ctx);
        let mut root = Poly::monomial(r0.0.clone(), r0.1.clone(), ctx);
        let mut rem = self.sub(&root.mul(&root));
        while let Some((m, c)) = rem.terms.first().cloned() {
            let qm = m.div(&r0.0)?;
            if qm < thalf {
                return None;
            }
            let qc = c.div_exact(&two_r0, ctx)?;
            let t = Poly::monomial(qm, qc, ctx);
            let upd = root.scale(&C::from_i64(2, ctx)).add(&t).mul(&t);
            rem = rem.sub(&upd);
            root = root.add(&t);
            if root.len() > self.len() + 1 {
                return None;
            }
        }
        Some(root)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let ctx = self.ctx;
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = c.render(ctx);
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&cs);
            } else if cs == "1" {
                s.push_str(&m.render());
            } else {
                s.push_str(&cs);
                s.push('*');
                s.push_str(&m.render());
            }
        }
        s
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
