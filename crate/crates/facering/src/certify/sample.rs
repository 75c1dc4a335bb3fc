//! Random specializations of parameter matrices.

use crate::artinian::{graded_component, FaceMono, LsopMode, ParameterMatrix};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::scalar::{Coeff, Field, FromCoeff, Gf2_64, Int, ModP, RatFunc, Var, Zp, WORK_PRIME};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Integer samples in characteristic 0 are drawn from `[-BOUND, BOUND]`.
pub(crate) const BOUND: i64 = 1_000_000;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn draw_modp(rng: &mut ChaCha8Rng, ch: u64) -> ModP {
    if ch == 0 {
        ModP::new(rng.gen_range(-BOUND..=BOUND), WORK_PRIME)
    } else {
        ModP { v: rng.gen_range(0..ch), p: ch }
    }
}

pub(crate) fn draw_gf(rng: &mut ChaCha8Rng) -> Gf2_64 {
    Gf2_64(rng.gen())
}

/// Values for every variable of `m`, in variable order.
pub(crate) fn point_values<F: Field>(vars: &[Var], draw: &mut dyn FnMut() -> F) -> BTreeMap<Var, F> {
    vars.iter().map(|&v| (v, draw())).collect()
}

pub(crate) fn specialize<C: Coeff, F: FromCoeff<C>>(
    m: &ParameterMatrix<RatFunc<C>>,
    like: &F,
    vals: &BTreeMap<Var, F>,
) -> Result<ParameterMatrix<F>> {
    m.at_point(like, &|v| vals.get(&v).cloned().unwrap_or_else(|| like.zero()))
}

/// A matrix with random entries, identity on the first `d` vertices in reduced mode.
pub(crate) fn random_matrix<F: Field>(
    k: &SimplicialComplex,
    unit: F,
    mode: LsopMode,
    draw: &mut dyn FnMut() -> F,
) -> ParameterMatrix<F> {
    let d = k.d();
    let cols = k
        .vertices()
        .iter()
        .enumerate()
        .map(|(idx, _)| {
            (0..d)
                .map(|r| match mode {
                    LsopMode::Reduced if idx < d => {
                        if r == idx {
                            unit.one()
                        } else {
                            unit.zero()
                        }
                    }
                    _ => draw(),
                })
                .collect()
        })
        .collect();
    ParameterMatrix::new(k.vertices().to_vec(), cols, d, unit, mode)
}

/// Coefficient rings whose function fields have a point field to sample from.
pub(crate) trait Sampleable: Coeff {
    /// At a random point where the matrix is an l.s.o.p.: the basis of the degree-`degree`
    /// component and the rank of the normal forms of `monos` there.
    fn point_rank(
        k: &SimplicialComplex,
        sym: &ParameterMatrix<RatFunc<Self>>,
        degree: usize,
        monos: &[FaceMono],
        rng: &mut ChaCha8Rng,
    ) -> Option<(Vec<FaceMono>, usize)>;
}

fn point_rank_in<F: Field>(
    k: &SimplicialComplex,
    mp: Result<ParameterMatrix<F>>,
    degree: usize,
    monos: &[FaceMono],
) -> Option<(Vec<FaceMono>, usize)> {
    let mp = mp.ok()?;
    if !mp.is_lsop(k) {
        return None;
    }
    let g = graded_component(k, &mp, degree);
    let rows: Vec<Vec<F>> = monos.iter().map(|m| g.normal_form(m)).collect();
    let r = if rows.is_empty() || g.dim() == 0 { 0 } else { crate::linalg::rank(&rows) };
    Some((g.basis().to_vec(), r))
}

impl Sampleable for Int {
    fn point_rank(
        k: &SimplicialComplex,
        sym: &ParameterMatrix<RatFunc<Int>>,
        degree: usize,
        monos: &[FaceMono],
        rng: &mut ChaCha8Rng,
    ) -> Option<(Vec<FaceMono>, usize)> {
        let vals = point_values(&sym.variables(), &mut || draw_modp(rng, 0));
        point_rank_in(k, specialize(sym, &ModP::new(1, WORK_PRIME), &vals), degree, monos)
    }
}

impl Sampleable for Zp {
    fn point_rank(
        k: &SimplicialComplex,
        sym: &ParameterMatrix<RatFunc<Zp>>,
        degree: usize,
        monos: &[FaceMono],
        rng: &mut ChaCha8Rng,
    ) -> Option<(Vec<FaceMono>, usize)> {
        let p = Zp::characteristic(sym.unit().ctx());
        if p == 2 {
            let vals = point_values(&sym.variables(), &mut || draw_gf(rng));
            point_rank_in(k, specialize(sym, &Gf2_64(1), &vals), degree, monos)
        } else {
            let vals = point_values(&sym.variables(), &mut || draw_modp(rng, p));
            point_rank_in(k, specialize(sym, &ModP::new(1, p), &vals), degree, monos)
        }
    }
}

/// A basis of the generic degree-`degree` component: found at a random point when one is
/// admissible, otherwise by elimination over the function field.
pub(crate) fn generic_basis<C: Sampleable>(
    k: &SimplicialComplex,
    sym: &ParameterMatrix<RatFunc<C>>,
    degree: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<FaceMono> {
    let expected = k.h_vector().0.get(degree).copied().unwrap_or(0) as usize;
    for _ in 0..8 {
        if let Some((b, _)) = C::point_rank(k, sym, degree, &[], rng) {
            if b.len() == expected {
                return b;
            }
        }
    }
    graded_component(k, sym, degree).basis().to_vec()
}

/// Whether the monomials are independent in the generic component; a point where they are
/// independent is a witness, and small fields fall back to the function field.
pub(crate) fn generically_independent<C: Sampleable>(
    k: &SimplicialComplex,
    sym: &ParameterMatrix<RatFunc<C>>,
    degree: usize,
    monos: &[FaceMono],
    rng: &mut ChaCha8Rng,
) -> bool {
    for _ in 0..8 {
        if let Some((_, r)) = C::point_rank(k, sym, degree, monos, rng) {
            if r == monos.len() {
                return true;
            }
        }
    }
    let g = graded_component(k, sym, degree);
    let rows: Vec<Vec<RatFunc<C>>> = monos.iter().map(|m| g.normal_form(m)).collect();
    rows.is_empty() || crate::linalg::rank(&rows) == monos.len()
}
