//! Characteristic 0: a specialization at which the middle Gram matrix is sign-definite.
//!
//! If some nonzero `u` over `Q(a)` had `Ψ(u²) = 0`, clearing denominators and specializing
//! near the point would give a nonzero real vector of a definite form with value zero.

use super::sample::{rng, BOUND};
use super::{render_basis, AnisoCertificate, Backend, Evidence, Verdict, LOWER_DEGREES};
use crate::artinian::{graded_component, LsopMode, ParameterMatrix};
use crate::canonical::{aux_minors_ok, PsiEvaluator};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::definite_sign;
use crate::scalar::Rational;
use crate::topology::{is_homology_sphere, orient, Orientation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Outcome at one integer specialization.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiniteCheck {
    pub basis: Vec<Face>,
    pub gram: Vec<Vec<Rational>>,
    pub sign: Option<i32>,
}

/// The middle Gram matrix at integer columns (one per vertex) and auxiliary vector.
/// `None` when the columns are not an l.s.o.p. or a minor of Lee's formula vanishes.
pub fn definite_at(
    k: &SimplicialComplex,
    orientation: &Orientation,
    columns: &[Vec<i64>],
    aux: &[i64],
) -> Result<Option<DefiniteCheck>> {
    let d = k.d();
    if d % 2 == 1 {
        return Err(Error::OddTopDegree);
    }
    let q = |v: i64| Rational::int(v);
    let cols = columns.iter().map(|c| c.iter().map(|&v| q(v)).collect()).collect();
    let m = ParameterMatrix::new(k.vertices().to_vec(), cols, d, q(1), LsopMode::Custom)
        .with_aux(aux.iter().map(|&v| q(v)).collect());
    if !m.is_lsop(k) || !aux_minors_ok(k, &m) {
        return Ok(None);
    }
    let n = d / 2;
    let middle = graded_component(k, &m, n);
    if middle.dim() as i64 != k.h_vector().0[n] {
        return Ok(None);
    }
    let eval = PsiEvaluator::new(k.clone(), m, orientation.clone())?;
    let gram = eval.middle_form(&middle)?;
    let sign = definite_sign(&gram);
    Ok(Some(DefiniteCheck { basis: middle.basis().to_vec(), gram, sign }))
}

/// Cyclic vertex order of a polygon, if `k` is one.
fn cycle_order(k: &SimplicialComplex) -> Option<Vec<u32>> {
    if k.d() != 2 || k.facets().iter().any(|f| f.len() != 2) {
        return None;
    }
    let verts = k.vertices();
    let mut order = vec![verts[0]];
    let mut prev = None;
    loop {
        let cur = *order.last().unwrap();
        let next = k
            .facets()
            .iter()
            .filter(|f| f.contains(&cur))
            .map(|f| if f[0] == cur { f[1] } else { f[0] })
            .find(|&w| Some(w) != prev)?;
        if next == order[0] {
            break;
        }
        if order.contains(&next) {
            return None;
        }
        prev = Some(cur);
        order.push(next);
    }
    (order.len() == verts.len()).then_some(order)
}

/// Columns whose lines turn by just under a half-turn at each step of the polygon, which
/// makes the middle form definite.
fn polygon_sample(k: &SimplicialComplex, order: &[u32], rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let n = order.len() as f64;
    let mut by_vertex = std::collections::BTreeMap::new();
    for (i, &v) in order.iter().enumerate() {
        let a = i as f64 * std::f64::consts::PI * (n - 1.0) / n + rng.gen_range(-0.1..0.1);
        by_vertex.insert(v, vec![(1000.0 * a.cos()).round() as i64, (1000.0 * a.sin()).round() as i64]);
    }
    k.vertices().iter().map(|v| by_vertex[v].clone()).collect()
}

fn random_sample(k: &SimplicialComplex, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    k.vertices().iter().map(|_| (0..k.d()).map(|_| rng.gen_range(-BOUND..=BOUND)).collect()).collect()
}

/// Tries up to `trials` integer specializations; the first definite one certifies anisotropy.
/// Never reports isotropy.
pub fn certify_definite(k: &SimplicialComplex, trials: usize, seed: u64) -> Result<AnisoCertificate> {
    let d = k.d();
    if d % 2 == 1 {
        return Err(Error::OddTopDegree);
    }
    if !is_homology_sphere(k, 0) {
        return Err(Error::NotASphere);
    }
    let orientation = orient(k, 0)?;
    let cycle = cycle_order(k);
    let mut rng = rng(seed);
    let soundness = format!(
        "Sound only: a definite specialization certifies anisotropy over the function field; failure to find one proves nothing. {LOWER_DEGREES}"
    );
    for trial in 0..trials {
        let columns = match &cycle {
            Some(order) => polygon_sample(k, order, &mut rng),
            None => random_sample(k, &mut rng),
        };
        let mut aux = vec![1; d];
        if let Some(check) = definite_at(k, &orientation, &columns, &aux)?.or_else(|| {
            aux = (0..d).map(|_| rng.gen_range(-BOUND..=BOUND)).collect();
            definite_at(k, &orientation, &columns, &aux).ok().flatten()
        }) {
            if let Some(s) = check.sign {
                let h = check.basis.len();
                return Ok(AnisoCertificate {
                    complex_hash: k.hash_hex(),
                    backend: Backend::Definite,
                    verdict: Verdict::Anisotropic,
                    evidence: Evidence::Definite {
                        mode: LsopMode::FullGeneric,
                        degree: d / 2,
                        vertices: k.vertices().to_vec(),
                        columns,
                        aux,
                        basis: render_basis(&check.basis),
                        signature: if s > 0 { (h, 0) } else { (0, h) },
                        trial,
                    },
                    soundness,
                    seed,
                    timings: None,
                });
            }
        }
    }
    Ok(AnisoCertificate {
        complex_hash: k.hash_hex(),
        backend: Backend::Definite,
        verdict: Verdict::Inconclusive,
        evidence: Evidence::None { reason: format!("no definite specialization in {trials} trials") },
        soundness,
        seed,
        timings: None,
    })
}

pub(crate) fn revalidate(k: &SimplicialComplex, cert: &AnisoCertificate) -> Result<bool> {
    let Evidence::Definite { vertices, columns, aux, signature, .. } = &cert.evidence else { return Ok(false) };
    if vertices != k.vertices() || cert.verdict != Verdict::Anisotropic {
        return Ok(false);
    }
    let Some(check) = definite_at(k, &orient(k, 0)?, columns, aux)? else { return Ok(false) };
    let h = check.basis.len();
    Ok(match check.sign {
        Some(1) => *signature == (h, 0),
        Some(_) => *signature == (0, h),
        None => false,
    })
}
