//! Middle dimension at most 2, characteristic not 2: the form `αc₁² + 2βc₁c₂ + γc₂²` is
//! isotropic exactly when `β² − αγ` is a square in the function field.

use super::sample::{generic_basis, rng, Sampleable, BOUND};
use super::{render_basis, AnisoCertificate, Backend, Evidence, Verdict, LOWER_DEGREES};
use crate::artinian::{make_lsop, mono_mul, LsopMode};
use crate::canonical::{aux_minors_ok, choose_aux_symbolic, PsiEvaluator};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Field, Int, ModP, RatFunc, Var, Zp, WORK_PRIME};
use rand::Rng;
use std::collections::BTreeMap;
use crate::topology::{is_homology_sphere, orient};

const SYMBOLIC_VARIABLE_LIMIT: usize = 12;

/// The verdict on a binary (or unary) form with an explicit isotropic vector when one exists.
#[derive(Clone, Debug, PartialEq)]
pub enum BinaryFormVerdict<C: Coeff> {
    Anisotropic { discriminant: Option<RatFunc<C>> },
    Isotropic { vector: Vec<RatFunc<C>>, square_root: Option<RatFunc<C>> },
}

/// Decides a symmetric `1 × 1` or `2 × 2` form over a rational function field.
pub fn binary_form_verdict<C: Coeff>(gram: &[Vec<RatFunc<C>>]) -> Result<BinaryFormVerdict<C>> {
    match gram.len() {
        0 => Ok(BinaryFormVerdict::Anisotropic { discriminant: None }),
        1 => {
            let a = &gram[0][0];
            if a.is_zero() {
                Ok(BinaryFormVerdict::Isotropic { vector: vec![a.one()], square_root: None })
            } else {
                Ok(BinaryFormVerdict::Anisotropic { discriminant: None })
            }
        }
        2 => {
            let (alpha, beta, gamma) = (&gram[0][0], &gram[0][1], &gram[1][1]);
            let disc = beta.mul(beta).sub(&alpha.mul(gamma));
            if alpha.is_zero() {
                return Ok(BinaryFormVerdict::Isotropic { vector: vec![alpha.one(), alpha.zero()], square_root: None });
            }
            match disc.sqrt() {
                Some(delta) => Ok(BinaryFormVerdict::Isotropic {
                    vector: vec![delta.sub(beta), alpha.clone()],
                    square_root: Some(delta),
                }),
                None => Ok(BinaryFormVerdict::Anisotropic { discriminant: Some(disc) }),
            }
        }
        r => Err(Error::RankTooLarge(r)),
    }
}

/// The closed-form backend; complete when the middle dimension is at most 2.
pub fn certify_rank_le2(k: &SimplicialComplex, ch: u64, mode: LsopMode, seed: u64) -> Result<AnisoCertificate> {
    match ch {
        2 => Err(Error::WrongCharacteristic { expected: "not 2".into(), found: 2 }),
        0 => match unary_at_point(k, mode, seed)? {
            Some(c) => Ok(c),
            None => run::<Int>(k, (), mode, seed),
        },
        p => run::<Zp>(k, p, mode, seed),
    }
}

/// Characteristic 0 with middle dimension 1: a nonzero value of `Ψ(b²)` at an integer
/// point, reduced modulo a large prime, shows the generic value is nonzero without
/// expanding it. `None` sends the caller to the symbolic route.
fn unary_at_point(k: &SimplicialComplex, mode: LsopMode, seed: u64) -> Result<Option<AnisoCertificate>> {
    let d = k.d();
    if d % 2 == 1 || k.h_vector().0[d / 2] != 1 || !is_homology_sphere(k, 0) {
        return Ok(None);
    }
    let sym = make_lsop::<Int>(k, (), mode)?;
    let mut r = rng(seed);
    let basis = generic_basis(k, &sym, d / 2, &mut r);
    let Some(b) = basis.first() else { return Ok(None) };
    let square = mono_mul(b, b);
    let orientation = orient(k, 0)?;
    for trial in 0..4u64 {
        let point_seed = seed.wrapping_add(trial);
        let mut pr = rng(point_seed);
        let vals: BTreeMap<Var, i64> = sym.variables().into_iter().map(|v| (v, pr.gen_range(-BOUND..=BOUND))).collect();
        let m = sym.at_point(&ModP::new(0, WORK_PRIME), &|v| ModP::new(vals[&v], WORK_PRIME))?;
        let aux: Vec<ModP> = (0..d).map(|_| ModP::new(pr.gen_range(1..=BOUND), WORK_PRIME)).collect();
        let m = m.with_aux(aux);
        if !m.is_lsop(k) || !aux_minors_ok(k, &m) {
            continue;
        }
        let eval = PsiEvaluator::new(k.clone(), m, orientation.clone())?;
        let value = eval.psi_or_zero(&square)?;
        if value.is_zero() {
            continue;
        }
        let evidence = Evidence::NonzeroAtPoint {
            characteristic: 0,
            mode,
            basis: render_basis(&basis),
            prime: WORK_PRIME,
            value: value.v,
            point_seed,
        };
        let soundness = format!(
            "Complete for middle dimension 1: the form is anisotropic exactly when its single entry is nonzero, and a nonzero value at a point where every minor is invertible shows the entry is nonzero. {LOWER_DEGREES}"
        );
        return Ok(Some(AnisoCertificate { complex_hash: k.hash_hex(), backend: Backend::Rank2, verdict: Verdict::Anisotropic, evidence, soundness, seed, timings: None }));
    }
    Ok(None)
}

fn run<C: Sampleable>(k: &SimplicialComplex, ctx: C::Ctx, mode: LsopMode, seed: u64) -> Result<AnisoCertificate> {
    let ch = C::characteristic(ctx);
    let d = k.d();
    if d % 2 == 1 {
        return Err(Error::OddTopDegree);
    }
    if !is_homology_sphere(k, ch) {
        return Err(Error::NotASphere);
    }
    let n = d / 2;
    let hn = k.h_vector().0[n] as usize;
    if hn > 2 {
        return Err(Error::RankTooLarge(hn));
    }
    let sym = make_lsop::<C>(k, ctx, mode)?;
    let unknowns = sym.variables().len();
    if unknowns > SYMBOLIC_VARIABLE_LIMIT {
        let reason = format!("{unknowns} unknowns exceed the symbolic limit of {SYMBOLIC_VARIABLE_LIMIT}");
        return Ok(AnisoCertificate {
            complex_hash: k.hash_hex(),
            backend: Backend::Rank2,
            verdict: Verdict::Inconclusive,
            evidence: Evidence::None { reason },
            soundness: "Nothing is claimed.".into(),
            seed,
            timings: None,
        });
    }
    let basis = generic_basis(k, &sym, n, &mut rng(seed));
    let sym = choose_aux_symbolic(k, sym);
    let eval = PsiEvaluator::new(k.clone(), sym, orient(k, ch)?)?;
    let gram = eval.gram(&basis, &basis)?;
    let rendered: Vec<Vec<String>> = gram.iter().map(|r| r.iter().map(|x| x.render()).collect()).collect();
    let soundness = format!("Complete for middle dimension at most 2: the discriminant decides isotropy. {LOWER_DEGREES}");
    let (verdict, evidence) = match binary_form_verdict(&gram)? {
        BinaryFormVerdict::Anisotropic { discriminant } => (
            Verdict::Anisotropic,
            Evidence::Discriminant {
                characteristic: ch,
                mode,
                basis: render_basis(&basis),
                gram: rendered,
                discriminant: discriminant.map(|x| x.render()),
                square_root: None,
            },
        ),
        BinaryFormVerdict::Isotropic { vector, .. } => {
            let vector: Vec<String> = vector.iter().map(|x| x.render()).collect();
            if !super::char2::verify_isotropic::<C>(k, ctx, mode, n, &basis, &vector)? {
                return Err(Error::InvalidInput("isotropic witness failed re-verification".into()));
            }
            (Verdict::Isotropic, Evidence::Isotropic { characteristic: ch, mode, degree: n, basis: render_basis(&basis), vector })
        }
    };
    Ok(AnisoCertificate { complex_hash: k.hash_hex(), backend: Backend::Rank2, verdict, evidence, soundness, seed, timings: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QFunc, Var};

    #[test]
    fn triangle_and_square() {
        let tri = SimplicialComplex::simplex_boundary(&[1, 2, 3]);
        let q4 = SimplicialComplex::from_facets(vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap();
        for k in [&tri, &q4] {
            for mode in [LsopMode::Reduced, LsopMode::FullGeneric] {
                let c = certify_rank_le2(k, 0, mode, 0).unwrap();
                assert_eq!(c.verdict, Verdict::Anisotropic);
                assert!(super::super::revalidate(k, &c).unwrap());
            }
            assert_eq!(certify_rank_le2(k, 3, LsopMode::Reduced, 0).unwrap().verdict, Verdict::Anisotropic);
        }
        assert!(matches!(certify_rank_le2(&q4, 2, LsopMode::Reduced, 0), Err(Error::WrongCharacteristic { .. })));
    }

    #[test]
    fn perfect_square_discriminant_is_isotropic() {
        let a = QFunc::var(Var::entry(1, 1), ());
        let one = QFunc::constant(1, ());
        let zero = QFunc::constant(0, ());
        // c1² − a² c2²: discriminant a².
        let gram = vec![vec![one.clone(), zero.clone()], vec![zero, a.mul(&a).neg()]];
        let BinaryFormVerdict::Isotropic { vector, square_root } = binary_form_verdict(&gram).unwrap() else { panic!() };
        let r = square_root.unwrap();
        assert_eq!(r.mul(&r), a.mul(&a));
        let (c1, c2) = (&vector[0], &vector[1]);
        let q = c1.mul(c1).add(&a.mul(&a).neg().mul(&c2.mul(c2)));
        assert!(q.is_zero());
        assert!(!c1.is_zero() || !c2.is_zero());
    }
}
