//! Generic-anisotropy certificates, strong Lefschetz witnesses, recognition of strongly
//! edge decomposable spheres, and instance checks that tie them together.

mod char2;
mod definite;
mod lefschetz;
mod lemma;
mod pipeline;
mod rank2;
mod sample;
mod sed;

pub use char2::certify_char2;
pub use definite::{certify_definite, definite_at, DefiniteCheck};
pub use lefschetz::{check_lefschetz, LefschetzDegree, LefschetzReport, LefschetzStatus};
pub use lemma::{check_facts, middle_basis, middle_basis_shape_check, FactsReport, MiddleBasis, PairCheck};
pub use pipeline::{
    pipeline_theorem_main, reduced_equivalence_check, suspension_implication_check, InstanceCheck, NodeReport,
    PipelineReport,
};
pub use rank2::{binary_form_verdict, certify_rank_le2, BinaryFormVerdict};
pub use sed::{contraction_of, sed_recognize, suspension_sed_check, validate_sed_tree, SedTree, SuspensionSedReport};

use crate::artinian::{parse_monomial, render_monomial, LsopMode};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The default seed for every randomized routine.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Anisotropic,
    Isotropic,
    Inconclusive,
}

impl Verdict {
    pub fn is_definite(self) -> bool {
        self != Verdict::Inconclusive
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Verdict::Anisotropic => "ANISOTROPIC",
            Verdict::Isotropic => "ISOTROPIC",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Backend::Char2 => "char2",
            Backend::Definite => "definite",
            Backend::Rank2 => "rank2",
            Backend::Auto => "auto",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Char2,
    Definite,
    Rank2,
    Auto,
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Backend> {
        match s {
            "char2" => Ok(Backend::Char2),
            "definite" => Ok(Backend::Definite),
            "rank2" => Ok(Backend::Rank2),
            "auto" => Ok(Backend::Auto),
            _ => Err(Error::InvalidInput(format!("unknown backend {s}"))),
        }
    }
}

/// What a backend saw when it reached its verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Characteristic 2: the middle form is `c ↦ Σ c_j² Ψ_j`, and anisotropy is the
    /// independence of the `Ψ_j` over the subfield of squares.
    FrobeniusRank {
        characteristic: u64,
        mode: LsopMode,
        degree: usize,
        basis: Vec<String>,
        pairing: Vec<String>,
        method: String,
        rows: usize,
        columns: usize,
        rank: usize,
        pivot_monomials: Vec<String>,
        point_seed: u64,
    },
    /// A specialization at which the middle Gram matrix is sign-definite.
    Definite {
        mode: LsopMode,
        degree: usize,
        vertices: Vec<u32>,
        columns: Vec<Vec<i64>>,
        aux: Vec<i64>,
        basis: Vec<String>,
        signature: (usize, usize),
        trial: usize,
    },
    /// The closed form for at most two variables.
    Discriminant {
        characteristic: u64,
        mode: LsopMode,
        basis: Vec<String>,
        gram: Vec<Vec<String>>,
        discriminant: Option<String>,
        square_root: Option<String>,
    },
    /// Middle dimension 1: `Ψ(b²)` is nonzero at a point modulo `prime`, hence nonzero.
    NonzeroAtPoint {
        characteristic: u64,
        mode: LsopMode,
        basis: Vec<String>,
        prime: u64,
        value: u64,
        point_seed: u64,
    },
    /// A nonzero `u` in the middle degree with `u² = 0`.
    Isotropic {
        characteristic: u64,
        mode: LsopMode,
        degree: usize,
        basis: Vec<String>,
        vector: Vec<String>,
    },
    /// Characteristic 0 from characteristic 2: an isotropic vector over `Q(a)`, scaled to be
    /// primitive at 2, would reduce to a nonzero isotropic vector over `F_2(a)`.
    ReductionMod2 { inner: Box<Evidence> },
    /// Nothing certified.
    None { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnisoCertificate {
    pub complex_hash: String,
    pub backend: Backend,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub soundness: String,
    pub seed: u64,
    pub timings: Option<Timings>,
}

/// Options shared by the backends.
#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub characteristic: u64,
    pub backend: Backend,
    pub mode: LsopMode,
    pub trials: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { characteristic: 0, backend: Backend::Auto, mode: LsopMode::Reduced, trials: 10, seed: DEFAULT_SEED }
    }
}

pub(crate) const LOWER_DEGREES: &str = "Nonzero classes of lower degree multiply into the middle degree nontrivially by Poincaré duality, so anisotropy there follows.";

/// Runs the requested backend, or for `Auto`: the characteristic-2 backend in characteristic 2,
/// the closed form when the middle dimension is at most 2, and in characteristic 0
/// definiteness followed by reduction from characteristic 2.
pub fn certify(k: &SimplicialComplex, opts: &CertifyOptions) -> Result<AnisoCertificate> {
    let ch = opts.characteristic;
    if ch != 0 && !crate::scalar::is_prime(ch) {
        return Err(Error::InvalidInput(format!("characteristic {ch} is not 0 or a prime")));
    }
    let backend = match opts.backend {
        Backend::Auto => {
            let d = k.d();
            let h = k.h_vector().0;
            if ch == 2 {
                Backend::Char2
            } else if d.is_multiple_of(2) && h.get(d / 2).copied().unwrap_or(0) <= 2 {
                Backend::Rank2
            } else if ch == 0 {
                if d.is_multiple_of(2) {
                    let c = certify_definite(k, opts.trials, opts.seed)?;
                    if c.verdict.is_definite() {
                        return Ok(c);
                    }
                }
                return lift_from_char2(k, opts);
            } else {
                return odd_inconclusive(k, opts);
            }
        }
        b => b,
    };
    match backend {
        Backend::Char2 => match ch {
            2 => certify_char2(k, opts.mode, opts.seed),
            0 => lift_from_char2(k, opts),
            _ => Err(Error::WrongCharacteristic { expected: "0 or 2".into(), found: ch }),
        },
        Backend::Definite => {
            if ch != 0 {
                return Err(Error::WrongCharacteristic { expected: "0".into(), found: ch });
            }
            certify_definite(k, opts.trials, opts.seed)
        }
        Backend::Rank2 => certify_rank_le2(k, ch, opts.mode, opts.seed),
        Backend::Auto => unreachable!(),
    }
}

/// Characteristic 0 through characteristic 2. Sound only: isotropy in characteristic 2
/// says nothing about characteristic 0, so that case is inconclusive.
fn lift_from_char2(k: &SimplicialComplex, opts: &CertifyOptions) -> Result<AnisoCertificate> {
    if !crate::topology::is_homology_sphere(k, 0) {
        return Err(Error::NotASphere);
    }
    let soundness = format!(
        "Sound only: the face ring over the integers localized at 2 is free in each degree since the graded dimensions agree over Q and F_2, and Lee's formula is integral there, so a primitive isotropic vector over Q(a) would reduce to a nonzero isotropic vector over F_2(a). {LOWER_DEGREES}"
    );
    let (verdict, evidence) = match certify_char2(k, opts.mode, opts.seed) {
        Ok(c) if c.verdict == Verdict::Anisotropic => (Verdict::Anisotropic, Evidence::ReductionMod2 { inner: Box::new(c.evidence) }),
        Ok(c) => (Verdict::Inconclusive, Evidence::None { reason: format!("characteristic 2 verdict {:?} does not transfer", c.verdict) }),
        Err(e) => (Verdict::Inconclusive, Evidence::None { reason: format!("characteristic 2 backend: {e}") }),
    };
    Ok(AnisoCertificate { complex_hash: k.hash_hex(), backend: Backend::Char2, verdict, evidence, soundness, seed: opts.seed, timings: None })
}

fn odd_inconclusive(k: &SimplicialComplex, opts: &CertifyOptions) -> Result<AnisoCertificate> {
    if k.d() % 2 == 1 {
        return Err(Error::OddTopDegree);
    }
    Ok(AnisoCertificate {
        complex_hash: k.hash_hex(),
        backend: Backend::Auto,
        verdict: Verdict::Inconclusive,
        evidence: Evidence::None {
            reason: format!(
                "characteristic {} with middle dimension {} has no complete or sound backend",
                opts.characteristic,
                k.h_vector().0[k.d() / 2]
            ),
        },
        soundness: "Every quadratic form in at least three variables over a finite field is isotropic, so no specialization can certify anisotropy here.".into(),
        seed: opts.seed,
        timings: None,
    })
}

pub(crate) fn render_basis(b: &[Vec<u32>]) -> Vec<String> {
    b.iter().map(|m| render_monomial(m)).collect()
}

pub(crate) fn parse_basis(b: &[String]) -> Result<Vec<Vec<u32>>> {
    b.iter().map(|s| if s == "1" { Ok(Vec::new()) } else { parse_monomial(&s.replace(['x', '*'], " ")) }).collect()
}

/// Re-checks a certificate against its complex independently of the backend that produced it.
///
/// Isotropic witnesses are verified exactly: `u ≠ 0` in the middle degree and `u² = 0`.
/// Definite witnesses are recomputed at the recorded point. Other evidence is reproduced
/// from the recorded seed and compared.
pub fn revalidate(k: &SimplicialComplex, cert: &AnisoCertificate) -> Result<bool> {
    if cert.complex_hash != k.hash_hex() {
        return Ok(false);
    }
    match &cert.evidence {
        Evidence::Isotropic { characteristic, mode, degree, basis, vector } => {
            let basis = parse_basis(basis)?;
            if *characteristic == 0 {
                char2::verify_isotropic::<crate::scalar::Int>(k, (), *mode, *degree, &basis, vector)
            } else {
                char2::verify_isotropic::<crate::scalar::Zp>(k, *characteristic, *mode, *degree, &basis, vector)
            }
        }
        Evidence::Definite { .. } => definite::revalidate(k, cert),
        Evidence::None { .. } => Ok(cert.verdict == Verdict::Inconclusive),
        Evidence::ReductionMod2 { inner } => {
            let Evidence::FrobeniusRank { mode, .. } = inner.as_ref() else { return Ok(false) };
            let again = certify_char2(k, *mode, cert.seed)?;
            Ok(cert.verdict == Verdict::Anisotropic
                && again.verdict == Verdict::Anisotropic
                && again.evidence == **inner
                && crate::topology::is_homology_sphere(k, 0))
        }
        Evidence::FrobeniusRank { mode, .. } => {
            let again = certify_char2(k, *mode, cert.seed)?;
            Ok(again.verdict == cert.verdict && again.evidence == cert.evidence)
        }
        Evidence::Discriminant { characteristic, mode, .. } | Evidence::NonzeroAtPoint { characteristic, mode, .. } => {
            let again = certify_rank_le2(k, *characteristic, *mode, cert.seed)?;
            Ok(again.verdict == cert.verdict && again.evidence == cert.evidence)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_rendering_round_trips() {
        let b = vec![vec![1, 1, 3], vec![2], vec![]];
        assert_eq!(parse_basis(&render_basis(&b)).unwrap(), b);
    }
}
