//! Strong Lefschetz witnesses: a specialization `(Θ, ω)` at which multiplication by
//! `ω^{d−2i}` is bijective from degree `i` to degree `d − i` for every `i ≤ d/2`.

use super::sample::{draw_gf, draw_modp, random_matrix};
use crate::artinian::{graded_component, mul_linear, LinComb, LsopMode, ParameterMatrix};
use crate::complex::SimplicialComplex;
use crate::linalg::rank;
use crate::scalar::{Field, Gf2_64, ModP, WORK_PRIME};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LefschetzStatus {
    Pass,
    /// No witness among the trials; not a disproof.
    FailSoFar,
}

impl std::fmt::Display for LefschetzStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            LefschetzStatus::Pass => "PASS",
            LefschetzStatus::FailSoFar => "FAIL_SO_FAR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzDegree {
    pub degree: usize,
    pub rank: usize,
    pub expected: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub complex_hash: String,
    pub characteristic: u64,
    pub status: LefschetzStatus,
    /// Ranks at the witnessing trial, or at the last trial when none passed.
    pub degrees: Vec<LefschetzDegree>,
    pub seeds: Vec<u64>,
}

impl LefschetzReport {
    pub fn passed(&self) -> bool {
        self.status == LefschetzStatus::Pass
    }
}

/// Ranks of `·ω^{d−2i}` at one specialization; `None` if `Θ` is not an l.s.o.p. there.
fn ranks_at<F: Field>(k: &SimplicialComplex, m: &ParameterMatrix<F>, omega: &[(u32, F)]) -> Option<Vec<LefschetzDegree>> {
    if !m.is_lsop(k) {
        return None;
    }
    let d = k.d();
    let h = k.h_vector().0;
    let mut out = Vec::new();
    for i in 0..=d / 2 {
        let low = graded_component(k, m, i);
        let high = graded_component(k, m, d - i);
        let expected = h[i].max(0) as usize;
        let rows: Vec<Vec<F>> = low
            .basis()
            .iter()
            .map(|b| {
                let mut comb: LinComb<F> = LinComb::new();
                comb.insert(b.clone(), m.unit().clone());
                for _ in 0..d - 2 * i {
                    comb = mul_linear(k, &comb, omega);
                }
                high.normal_form_comb(&comb)
            })
            .collect();
        let r = if rows.is_empty() || high.dim() == 0 { 0 } else { rank(&rows) };
        out.push(LefschetzDegree { degree: i, rank: r, expected, pass: r == expected && low.dim() == expected && high.dim() == h[d - i].max(0) as usize });
    }
    Some(out)
}

fn trial<F: Field>(k: &SimplicialComplex, unit: F, draw: &mut dyn FnMut() -> F) -> Vec<LefschetzDegree> {
    let m = random_matrix(k, unit, LsopMode::FullGeneric, draw);
    let omega: Vec<(u32, F)> = k.vertices().iter().map(|&v| (v, draw())).collect();
    ranks_at(k, &m, &omega).unwrap_or_default()
}

/// Random specializations of `(Θ, ω)`: integers reduced modulo a large prime in
/// characteristic 0 (a full rank there gives full rank over `Q`), `GF(2^64)` in
/// characteristic 2, `F_p` otherwise. One passing trial is a witness for the generic pair.
pub fn check_lefschetz(k: &SimplicialComplex, ch: u64, trials: usize, seed: u64) -> LefschetzReport {
    let mut seeds = Vec::new();
    let mut last = Vec::new();
    for t in 0..trials {
        let s = seed.wrapping_add(t as u64);
        seeds.push(s);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let degrees = match ch {
            0 => trial(k, ModP::new(1, WORK_PRIME), &mut || draw_modp(&mut rng, 0)),
            2 => trial(k, Gf2_64(1), &mut || draw_gf(&mut rng)),
            p => trial(k, ModP::new(1, p), &mut || draw_modp(&mut rng, p)),
        };
        let ok = !degrees.is_empty() && degrees.iter().all(|x| x.pass);
        last = degrees;
        if ok {
            return LefschetzReport {
                complex_hash: k.hash_hex(),
                characteristic: ch,
                status: LefschetzStatus::Pass,
                degrees: last,
                seeds,
            };
        }
    }
    LefschetzReport { complex_hash: k.hash_hex(), characteristic: ch, status: LefschetzStatus::FailSoFar, degrees: last, seeds }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spheres_pass() {
        let oct = SimplicialComplex::from_facets(vec![vec![1, 3], vec![3, 2], vec![2, 4], vec![4, 1]]).unwrap().suspension();
        let pent = SimplicialComplex::from_facets((1..=5).map(|i| vec![i, i % 5 + 1])).unwrap();
        for k in [SimplicialComplex::simplex_boundary(&[1, 2, 3, 4]), oct, pent.clone(), SimplicialComplex::empty()] {
            for ch in [0, 2, 101] {
                let r = check_lefschetz(&k, ch, 5, 0);
                assert!(r.passed(), "{k} char {ch}: {r:?}");
            }
        }
        let r = check_lefschetz(&pent, 0, 1, 0);
        assert_eq!(r.degrees[0].rank, 1);
    }

    #[test]
    fn non_sphere_never_passes() {
        let two_triangles = SimplicialComplex::from_facets(vec![vec![1, 2], vec![2, 3], vec![1, 3], vec![4, 5], vec![5, 6], vec![4, 6]]).unwrap();
        let r = check_lefschetz(&two_triangles, 0, 3, 0);
        assert_eq!(r.status, LefschetzStatus::FailSoFar);
    }
}
