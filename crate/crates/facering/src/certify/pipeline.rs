//! Instance-level checks: the induction over an edge decomposition, agreement between
//! parameter-matrix modes, and passing anisotropy from a suspension down to the complex.

use super::lefschetz::{check_lefschetz, LefschetzStatus};
use super::sed::{contraction_of, sed_recognize, SedTree};
use super::{certify, certify_char2, certify_rank_le2, AnisoCertificate, Backend, CertifyOptions, Verdict};
use crate::artinian::LsopMode;
use crate::complex::SimplicialComplex;
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// The hypotheses checked at one node of the decomposition tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeReport {
    pub edge: [u32; 2],
    pub depth: usize,
    pub link_hash: String,
    pub contraction_hash: String,
    pub link_verdict: Verdict,
    pub contraction_verdict: Verdict,
    pub link_lefschetz: LefschetzStatus,
}

impl NodeReport {
    pub fn confirmed(&self) -> bool {
        self.link_verdict == Verdict::Anisotropic
            && self.contraction_verdict == Verdict::Anisotropic
            && self.link_lefschetz == LefschetzStatus::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub complex_hash: String,
    pub characteristic: u64,
    /// Odd top degree is handled through the suspension, which has even top degree.
    pub through_suspension: bool,
    pub target_hash: String,
    pub tree: Option<SedTree>,
    pub nodes: Vec<NodeReport>,
    /// Every node had anisotropic link and contraction and a Lefschetz witness on the link.
    pub hypotheses_confirmed: bool,
    pub conclusion: Option<AnisoCertificate>,
    /// The certificate for the complex itself when the pipeline ran on its suspension.
    pub direct: Option<AnisoCertificate>,
    pub notes: Vec<String>,
}

impl PipelineReport {
    /// The hypotheses hold and the backend agrees on the conclusion.
    pub fn confirmed(&self) -> bool {
        self.hypotheses_confirmed && self.conclusion_verdict() == Verdict::Anisotropic
    }

    /// No contradiction: confirmed hypotheses never come with a non-anisotropic conclusion.
    pub fn consistent(&self) -> bool {
        !self.hypotheses_confirmed || self.conclusion_verdict() != Verdict::Isotropic
    }

    pub fn conclusion_verdict(&self) -> Verdict {
        self.conclusion.as_ref().map_or(Verdict::Inconclusive, |c| c.verdict)
    }
}

struct Runner {
    opts: CertifyOptions,
    verdicts: HashMap<SimplicialComplex, Verdict>,
    lefschetz: HashMap<SimplicialComplex, LefschetzStatus>,
}

impl Runner {
    fn verdict(&mut self, k: &SimplicialComplex) -> Verdict {
        if let Some(v) = self.verdicts.get(k) {
            return *v;
        }
        let v = certify(k, &self.opts).map_or(Verdict::Inconclusive, |c| c.verdict);
        self.verdicts.insert(k.clone(), v);
        v
    }

    fn lefschetz(&mut self, k: &SimplicialComplex) -> LefschetzStatus {
        if let Some(s) = self.lefschetz.get(k) {
            return *s;
        }
        let s = check_lefschetz(k, self.opts.characteristic, self.opts.trials, self.opts.seed).status;
        self.lefschetz.insert(k.clone(), s);
        s
    }

    fn walk(&mut self, tree: &SedTree, k: &SimplicialComplex, depth: usize, out: &mut Vec<NodeReport>) -> Result<()> {
        let SedTree::Node { edge, link, contraction } = tree else { return Ok(()) };
        let l = k.link(edge)?;
        let c = contraction_of(k, *edge)?;
        out.push(NodeReport {
            edge: *edge,
            depth,
            link_hash: l.hash_hex(),
            contraction_hash: c.hash_hex(),
            link_verdict: self.verdict(&l),
            contraction_verdict: self.verdict(&c),
            link_lefschetz: self.lefschetz(&l),
        });
        self.walk(link, &l, depth + 1, out)?;
        self.walk(contraction, &c, depth + 1, out)
    }
}

/// Runs the induction on one complex: recognize a decomposition, certify the link and the
/// contraction at every node with the automatic backend, look for a Lefschetz witness on
/// every link, and certify the complex itself. Complexes of odd top degree are replaced by
/// their suspension.
pub fn pipeline_theorem_main(k: &SimplicialComplex, ch: u64, trials: usize, seed: u64, strict: bool) -> Result<PipelineReport> {
    let through_suspension = k.d() % 2 == 1;
    let target = if through_suspension { k.suspension() } else { k.clone() };
    let opts = CertifyOptions { characteristic: ch, backend: Backend::Auto, mode: LsopMode::Reduced, trials, seed };
    let mut runner = Runner { opts: opts.clone(), verdicts: HashMap::new(), lefschetz: HashMap::new() };
    let mut notes = Vec::new();
    let tree = sed_recognize(&target, strict);
    let mut nodes = Vec::new();
    match &tree {
        Some(t) => runner.walk(t, &target, 0, &mut nodes)?,
        None => notes.push("no strong edge decomposition found".into()),
    }
    let hypotheses_confirmed = tree.is_some() && nodes.iter().all(NodeReport::confirmed);
    let conclusion = match certify(&target, &opts) {
        Ok(c) => Some(c),
        Err(e) => {
            notes.push(format!("backend on the target: {e}"));
            None
        }
    };
    let direct = if through_suspension {
        match certify(k, &opts) {
            Ok(c) => Some(c),
            Err(e) => {
                notes.push(format!("backend on the complex: {e}"));
                None
            }
        }
    } else {
        None
    };
    Ok(PipelineReport {
        complex_hash: k.hash_hex(),
        characteristic: ch,
        through_suspension,
        target_hash: target.hash_hex(),
        tree,
        nodes,
        hypotheses_confirmed,
        conclusion,
        direct,
        notes,
    })
}

/// The outcome of comparing verdicts on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceCheck {
    pub holds: bool,
    pub skipped: Option<String>,
    pub verdicts: Vec<(String, Verdict)>,
}

impl InstanceCheck {
    fn skipped(reason: &str) -> InstanceCheck {
        InstanceCheck { holds: true, skipped: Some(reason.into()), verdicts: Vec::new() }
    }
}

/// The fully generic and the reduced matrix give the same verdict. Runs only where a
/// complete backend exists.
pub fn reduced_equivalence_check(k: &SimplicialComplex, ch: u64, seed: u64) -> Result<InstanceCheck> {
    let d = k.d();
    let run: Box<dyn Fn(LsopMode) -> Result<AnisoCertificate>> = if ch == 2 {
        Box::new(|m| certify_char2(k, m, seed))
    } else if d.is_multiple_of(2) && k.h_vector().0[d / 2] <= 2 {
        Box::new(|m| certify_rank_le2(k, ch, m, seed))
    } else {
        return Ok(InstanceCheck::skipped("no complete backend for this characteristic and middle dimension"));
    };
    let full = run(LsopMode::FullGeneric)?.verdict;
    let reduced = run(LsopMode::Reduced)?.verdict;
    let verdicts = vec![("full_generic".into(), full), ("reduced".into(), reduced)];
    if !full.is_definite() || !reduced.is_definite() {
        return Ok(InstanceCheck { holds: true, skipped: Some("the backend stopped at its size limit".into()), verdicts });
    }
    Ok(InstanceCheck { holds: full == reduced, skipped: None, verdicts })
}

/// Anisotropy of the suspension implies anisotropy of the complex. Needs a complete
/// backend on both, which only characteristic 2 provides in both parities.
pub fn suspension_implication_check(k: &SimplicialComplex, ch: u64, seed: u64) -> Result<InstanceCheck> {
    if ch != 2 {
        return Ok(InstanceCheck::skipped("the complex and its suspension differ in parity; only characteristic 2 decides both"));
    }
    let s = certify_char2(&k.suspension(), LsopMode::Reduced, seed)?.verdict;
    let own = certify_char2(k, LsopMode::Reduced, seed)?.verdict;
    Ok(InstanceCheck {
        holds: s != Verdict::Anisotropic || own == Verdict::Anisotropic,
        skipped: None,
        verdicts: vec![("suspension".into(), s), ("complex".into(), own)],
    })
}
