//! The edge-contraction step: a middle basis adapted to an edge `{u, v}` and checks of the
//! identities that relate the canonical functions of `Δ`, the link of the edge, and the
//! contraction `Δ′` of `v` onto `u`.
//!
//! The parameter matrix sends `u` to `e₁` and `v` to `t·e₁ + e₂`, with every other entry
//! generic and auxiliary vector all ones.

use super::lefschetz::check_lefschetz;
use super::sample::{draw_modp, point_values, rng, specialize};
use crate::artinian::{custom_lsop, graded_component, mono_mul, FaceMono, GradedBasis, ParameterMatrix};
use crate::canonical::factored::ZeroTest;
use crate::canonical::{FactoredPsi, FactoredSum};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::{ModP, QFunc, RatFunc, Var, WORK_PRIME};
use crate::topology::{orient, permutation_sign, Orientation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const EXPAND_LIMIT: usize = 64;

/// `a` holds `{u} ∪ ρ` for the link faces `ρ`; `b` completes it with faces avoiding `v`
/// and the star of the edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleBasis {
    pub edge: [u32; 2],
    pub link_faces: Vec<Face>,
    pub a: Vec<FaceMono>,
    pub b: Vec<FaceMono>,
    pub rank: usize,
    pub expected: usize,
}

impl MiddleBasis {
    pub fn is_basis(&self) -> bool {
        self.rank == self.expected && self.a.len() + self.b.len() == self.expected
    }
}

fn edge_matrix(k: &SimplicialComplex, u: u32, v: u32) -> Result<ParameterMatrix<QFunc>> {
    let d = k.d();
    let zero = QFunc::constant(0, ());
    let one = QFunc::constant(1, ());
    let mut eu = vec![zero.clone(); d];
    eu[0] = one.clone();
    let mut ev = vec![zero; d];
    ev[0] = RatFunc::var(Var::T, ());
    ev[1] = one.clone();
    Ok(custom_lsop::<crate::scalar::Int>(k, (), &[(u, eu), (v, ev)])?.with_aux(vec![one; d]))
}

fn check_hypotheses(k: &SimplicialComplex, u: u32, v: u32, seed: u64) -> Result<SimplicialComplex> {
    let d = k.d();
    if d % 2 == 1 || d < 2 {
        return Err(Error::HypothesisFailed(format!("top degree {d} is not even and positive")));
    }
    let e = [u.min(v), u.max(v)];
    if u == v || !k.contains_face(&e) {
        return Err(Error::NotAnEdge(e.to_vec()));
    }
    if !k.link_condition(u, v)? {
        return Err(Error::HypothesisFailed(format!("edge {{{u}, {v}}} fails the link condition")));
    }
    let link = k.link(&e)?;
    if !check_lefschetz(&link, 0, 5, seed).passed() {
        return Err(Error::HypothesisFailed(format!("no Lefschetz witness for the link of {{{u}, {v}}}")));
    }
    Ok(link)
}

/// Adds monomials from `candidates` while they raise the rank, until `target`.
fn greedy(g: &GradedBasis<ModP>, chosen: &mut Vec<FaceMono>, candidates: &[FaceMono], target: usize) -> usize {
    let mut rows: Vec<Vec<ModP>> = chosen.iter().map(|m| g.normal_form(m)).collect();
    let mut r = if rows.is_empty() { 0 } else { rank(&rows) };
    for c in candidates {
        if r >= target {
            break;
        }
        rows.push(g.normal_form(c));
        let nr = rank(&rows);
        if nr > r {
            r = nr;
            chosen.push(c.clone());
        } else {
            rows.pop();
        }
    }
    r
}

/// Builds the adapted middle basis for the edge `edge = [u, v]`, `v` being the vertex
/// that the contraction removes. Ranks are checked at a random point, `t` included, so a
/// full rank there is full rank over the function field.
pub fn middle_basis(k: &SimplicialComplex, edge: [u32; 2], seed: u64) -> Result<MiddleBasis> {
    let [u, v] = edge;
    let link = check_hypotheses(k, u, v, seed)?;
    let d = k.d();
    let n = d / 2;
    let sym = edge_matrix(k, u, v)?;
    let mut rng = rng(seed);
    let unit = ModP::new(1, WORK_PRIME);
    let mp = (0..8)
        .find_map(|_| {
            let vals = point_values(&sym.variables(), &mut || draw_modp(&mut rng, 0));
            specialize(&sym, &unit, &vals).ok().filter(|m| m.is_lsop(k))
        })
        .ok_or(Error::NotLsop)?;
    let whole = graded_component(k, &mp, n);
    let expected = k.h_vector().0[n] as usize;
    if whole.dim() != expected {
        return Err(Error::NotLsop);
    }
    let rows: Vec<usize> = (2..d).collect();
    let lmat = mp.restrict(&rows, link.vertices());
    let lg = graded_component(&link, &lmat, n - 1);
    let link_expected = link.h_vector().0[n - 1] as usize;
    let mut link_faces = Vec::new();
    let link_rank = greedy(&lg, &mut link_faces, &link.faces(n as i64 - 2), link_expected);
    if link_rank < link_expected {
        return Err(Error::HypothesisFailed("link faces do not span the link component".into()));
    }
    let a: Vec<FaceMono> = link_faces.iter().map(|r| mono_mul(r, &[u])).collect();
    let mut chosen = Vec::new();
    let ra = greedy(&whole, &mut chosen, &a, a.len());
    if ra < a.len() {
        return Ok(MiddleBasis { edge, link_faces, a, b: Vec::new(), rank: ra, expected });
    }
    let e = [u.min(v), u.max(v)];
    let candidates: Vec<FaceMono> = k
        .faces(n as i64 - 1)
        .into_iter()
        .filter(|t| !t.contains(&v) && !k.contains_face(&mono_mul(t, &e)))
        .collect();
    let r = greedy(&whole, &mut chosen, &candidates, expected);
    let b = chosen[a.len()..].to_vec();
    Ok(MiddleBasis { edge, link_faces, a, b, rank: r, expected })
}

/// Whether the adapted basis exists for the edge. Hypothesis failures are errors.
pub fn middle_basis_shape_check(k: &SimplicialComplex, edge: [u32; 2], seed: u64) -> Result<bool> {
    Ok(middle_basis(k, edge, seed)?.is_basis())
}

/// One identity checked on one pair of basis monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    pub holds: bool,
    /// `true` when the final comparison relied on random points only.
    pub probabilistic: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactsReport {
    pub edge: [u32; 2],
    /// On `{u} ∪ ρ` pairs: the coefficient of `t` is the link's value, up to one global sign.
    pub linear_in_t: Vec<PairCheck>,
    pub link_sign: Option<i8>,
    /// On mixed pairs: free of `t`. Equality with the contraction's value is noted but can
    /// fail when the support is a face of the contraction only.
    pub mixed_pairs: Vec<PairCheck>,
    /// On pairs from `b`: degree at most 0 in `t` with the contraction's value as leading part.
    pub bounded_in_t: Vec<PairCheck>,
    /// The orientation inherited by the contraction agrees with its own orientation up to sign.
    pub orientation_coherent: bool,
}

impl FactsReport {
    pub fn all_hold(&self) -> bool {
        self.orientation_coherent
            && self.linear_in_t.iter().chain(&self.mixed_pairs).chain(&self.bounded_in_t).all(|p| p.holds)
    }
}

/// The orientation of `k.contract(v, u)` inherited from `k`.
fn induced_orientation(k: &SimplicialComplex, o: &Orientation, con: &SimplicialComplex, u: u32, v: u32) -> Option<Orientation> {
    let mut signs = BTreeMap::new();
    for f in k.facets() {
        if f.contains(&u) && f.contains(&v) {
            continue;
        }
        let ordered: Vec<u32> = o.ordered(f)?.into_iter().map(|x| if x == v { u } else { x }).collect();
        let mut image = ordered.clone();
        image.sort_unstable();
        let s = permutation_sign(&ordered);
        if *signs.entry(image).or_insert(s) != s {
            return None;
        }
    }
    if signs.len() != con.facets().len() || con.facets().iter().any(|f| !signs.contains_key(f)) {
        return None;
    }
    Some(Orientation::from_signs(signs))
}

fn same_up_to_sign(a: &Orientation, b: &Orientation) -> bool {
    a == b || *a == b.reversed()
}

fn decided(z: ZeroTest) -> Option<bool> {
    match z {
        ZeroTest::Zero => Some(false),
        ZeroTest::ProbablyZero => Some(true),
        ZeroTest::NonZero => None,
    }
}

fn render(m: &[u32]) -> String {
    crate::artinian::render_monomial(m)
}

/// Verifies the identities on the pairs of an adapted basis, with exact cancellation of
/// factored terms and a random-point fallback for large sums.
pub fn check_facts(k: &SimplicialComplex, basis: &MiddleBasis, seed: u64) -> Result<FactsReport> {
    let [u, v] = basis.edge;
    let link = check_hypotheses(k, u, v, seed)?;
    let d = k.d();
    let sym = edge_matrix(k, u, v)?;
    let o = orient(k, 0)?;
    let whole = FactoredPsi::new(k.clone(), sym.clone(), o.clone())?;
    let rows: Vec<usize> = (2..d).collect();
    let on_link = FactoredPsi::new(link.clone(), sym.restrict(&rows, link.vertices()), orient(&link, 0)?)?;
    let con = k.contract(v, u)?;
    let induced = induced_orientation(k, &o, &con, u, v);
    let orientation_coherent = match (&induced, orient(&con, 0)) {
        (Some(a), Ok(b)) => same_up_to_sign(a, &b),
        _ => false,
    };
    let con_orientation = match induced {
        Some(x) => x,
        None => orient(&con, 0)?,
    };
    let all_rows: Vec<usize> = (0..d).collect();
    let on_con = FactoredPsi::new(con.clone(), sym.restrict(&all_rows, con.vertices()), con_orientation)?;
    let mut counter = seed;
    let mut test = |s: &FactoredSum| {
        counter = counter.wrapping_add(1);
        s.zero_test(counter, EXPAND_LIMIT)
    };

    let mut linear_in_t = Vec::new();
    let mut signs: Vec<Option<i8>> = Vec::new();
    for i in 0..basis.a.len() {
        for j in i..basis.a.len() {
            let mono = mono_mul(&basis.a[i], &basis.a[j]);
            let lmono = mono_mul(&basis.link_faces[i], &basis.link_faces[j]);
            let left = render(&mono);
            let right = render(&lmono);
            let s = whole.psi(&mono)?;
            let Some((lin, _)) = s.split_linear_in(Var::T) else {
                linear_in_t.push(PairCheck { left, right, holds: false, probabilistic: false, note: Some("not linear in t".into()) });
                signs.push(None);
                continue;
            };
            let g = on_link.psi(&lmono)?;
            let minus = decided(test(&lin.sub(&g)));
            let plus = decided(test(&lin.add(&g)));
            let (holds, probabilistic, sign) = match (minus, plus) {
                (Some(p), Some(q)) => (true, p || q, None),
                (Some(p), None) => (true, p, Some(1)),
                (None, Some(q)) => (true, q, Some(-1)),
                (None, None) => (false, false, None),
            };
            linear_in_t.push(PairCheck { left, right, holds, probabilistic, note: None });
            signs.push(sign);
        }
    }
    let fixed: Vec<i8> = signs.iter().flatten().copied().collect();
    let link_sign = fixed.first().copied();
    if let Some(s0) = link_sign {
        for (p, s) in linear_in_t.iter_mut().zip(&signs) {
            if matches!(s, Some(s) if *s != s0) {
                p.holds = false;
                p.note = Some("sign differs from the other pairs".into());
            }
        }
    }

    let mut mixed_pairs = Vec::new();
    for x in &basis.a {
        for y in &basis.b {
            let mono = mono_mul(x, y);
            let s = whole.psi(&mono)?;
            let (left, right) = (render(x), render(y));
            if s.terms.iter().any(|t| t.depends_on(Var::T)) {
                mixed_pairs.push(PairCheck { left, right, holds: false, probabilistic: false, note: Some("depends on t".into()) });
                continue;
            }
            let note = match test(&s.sub(&on_con.psi(&mono)?)) {
                ZeroTest::NonZero => Some("differs from the contraction's value".into()),
                _ => None,
            };
            mixed_pairs.push(PairCheck { left, right, holds: true, probabilistic: false, note });
        }
    }

    let mut bounded_in_t = Vec::new();
    for i in 0..basis.b.len() {
        for j in i..basis.b.len() {
            let mono = mono_mul(&basis.b[i], &basis.b[j]);
            let (left, right) = (render(&basis.b[i]), render(&basis.b[j]));
            let s = whole.psi(&mono)?;
            let p = on_con.psi(&mono)?;
            let (deg, lead) = s.top_leading_in(Var::T).unwrap_or((0, FactoredSum::default()));
            if deg > 0 {
                bounded_in_t.push(PairCheck { left, right, holds: false, probabilistic: false, note: Some(format!("termwise degree {deg} in t")) });
                continue;
            }
            let lead = if deg < 0 { FactoredSum::default() } else { lead };
            let z = decided(test(&lead.sub(&p)));
            bounded_in_t.push(PairCheck { left, right, holds: z.is_some(), probabilistic: z.unwrap_or(false), note: None });
        }
    }

    Ok(FactsReport { edge: basis.edge, linear_in_t, link_sign, mixed_pairs, bounded_in_t, orientation_coherent })
}
