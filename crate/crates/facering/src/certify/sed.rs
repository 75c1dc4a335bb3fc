//! Recognition of strongly edge decomposable spheres.

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::topology::is_homology_sphere;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SedTree {
    /// The boundary of the simplex on these vertices.
    Leaf { vertices: Vec<u32> },
    Node { edge: [u32; 2], link: Box<SedTree>, contraction: Box<SedTree> },
}

impl SedTree {
    pub fn depth(&self) -> usize {
        match self {
            SedTree::Leaf { .. } => 0,
            SedTree::Node { link, contraction, .. } => 1 + link.depth().max(contraction.depth()),
        }
    }

    pub fn num_nodes(&self) -> usize {
        match self {
            SedTree::Leaf { .. } => 0,
            SedTree::Node { link, contraction, .. } => 1 + link.num_nodes() + contraction.num_nodes(),
        }
    }
}

/// Contracts the edge `{i, j}` (`i < j`) onto its smaller endpoint.
pub fn contraction_of(k: &SimplicialComplex, edge: [u32; 2]) -> Result<SimplicialComplex> {
    let (i, j) = (edge[0].min(edge[1]), edge[0].max(edge[1]));
    k.contract(j, i)
}

struct Search {
    strict: bool,
    memo: HashMap<SimplicialComplex, Option<SedTree>>,
}

impl Search {
    fn run(&mut self, k: &SimplicialComplex) -> Option<SedTree> {
        if let Some(t) = self.memo.get(k) {
            return t.clone();
        }
        let out = self.search(k);
        self.memo.insert(k.clone(), out.clone());
        out
    }

    fn search(&mut self, k: &SimplicialComplex) -> Option<SedTree> {
        if k.is_simplex_boundary() {
            return Some(SedTree::Leaf { vertices: k.vertices().to_vec() });
        }
        if self.strict && !is_homology_sphere(k, 0) {
            return None;
        }
        for e in k.edges() {
            let edge = [e[0], e[1]];
            if !k.link_condition(e[0], e[1]).unwrap_or(false) {
                continue;
            }
            let Ok(link) = k.link(&e) else { continue };
            let Some(lt) = self.run(&link) else { continue };
            let Ok(con) = contraction_of(k, edge) else { continue };
            let Some(ct) = self.run(&con) else { continue };
            return Some(SedTree::Node { edge, link: Box::new(lt), contraction: Box::new(ct) });
        }
        None
    }
}

/// Depth-first search over edges in lexicographic order, memoized on exact labeled facet
/// sets. In strict mode every complex on the way must be a rational homology sphere.
pub fn sed_recognize(k: &SimplicialComplex, strict: bool) -> Option<SedTree> {
    if strict && !is_homology_sphere(k, 0) {
        return None;
    }
    Search { strict, memo: HashMap::new() }.run(k)
}

/// Re-checks a tree node by node: each leaf is the simplex boundary on its vertices and
/// each node's edge satisfies the link condition.
pub fn validate_sed_tree(tree: &SedTree, k: &SimplicialComplex) -> bool {
    match tree {
        SedTree::Leaf { vertices } => {
            k.vertices() == vertices.as_slice() && *k == SimplicialComplex::simplex_boundary(vertices)
        }
        SedTree::Node { edge, link, contraction } => {
            let e = [edge[0].min(edge[1]), edge[0].max(edge[1])];
            if !k.contains_face(&e) || !k.link_condition(e[0], e[1]).unwrap_or(false) {
                return false;
            }
            let (Ok(l), Ok(c)) = (k.link(&e), contraction_of(k, e)) else { return false };
            validate_sed_tree(link, &l) && validate_sed_tree(contraction, &c)
        }
    }
}

/// Facts checked at every node of a tree for `K` inside the suspension `S(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspensionSedReport {
    pub suspension_is_sed: bool,
    /// Contraction commutes with suspension at each node edge.
    pub contraction_commutes: bool,
    /// Each node edge satisfies the link condition in the suspension.
    pub link_condition_lifts: bool,
    pub edges_checked: usize,
}

impl SuspensionSedReport {
    pub fn holds(&self) -> bool {
        self.suspension_is_sed && self.contraction_commutes && self.link_condition_lifts
    }
}

/// `None` when `K` itself is not recognized.
pub fn suspension_sed_check(k: &SimplicialComplex) -> Option<SuspensionSedReport> {
    let tree = sed_recognize(k, false)?;
    let (a, b) = (k.max_label() + 1, k.max_label() + 2);
    let mut report =
        SuspensionSedReport { suspension_is_sed: false, contraction_commutes: true, link_condition_lifts: true, edges_checked: 0 };
    walk(&tree, k, a, b, &mut report);
    let s = k.suspension_with(a, b).ok()?;
    report.suspension_is_sed = sed_recognize(&s, false).is_some();
    Some(report)
}

fn walk(tree: &SedTree, k: &SimplicialComplex, a: u32, b: u32, report: &mut SuspensionSedReport) {
    let SedTree::Node { edge, link, contraction } = tree else { return };
    report.edges_checked += 1;
    let Ok(s) = k.suspension_with(a, b) else {
        report.contraction_commutes = false;
        return;
    };
    let con = contraction_of(k, *edge).expect("tree edge");
    let lhs = contraction_of(&s, *edge).ok();
    let rhs = con.suspension_with(a, b).ok();
    if lhs.is_none() || lhs != rhs {
        report.contraction_commutes = false;
    }
    if !s.link_condition(edge[0], edge[1]).unwrap_or(false) {
        report.link_condition_lifts = false;
    }
    walk(link, &k.link(edge).expect("tree edge"), a, b, report);
    walk(contraction, &con, a, b, report);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(f: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(f.iter().map(|x| x.to_vec())).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        c(&[&[1], &[2]]).join(&c(&[&[3], &[4]])).unwrap().join(&c(&[&[5], &[6]])).unwrap()
    }

    #[test]
    fn simplex_boundaries_are_leaves() {
        for n in 1..=6u32 {
            let v: Vec<u32> = (1..=n).collect();
            let k = SimplicialComplex::simplex_boundary(&v);
            assert!(matches!(sed_recognize(&k, true), Some(SedTree::Leaf { .. })));
        }
    }

    #[test]
    fn square_and_octahedron() {
        let q4 = c(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        let t = sed_recognize(&q4, true).unwrap();
        assert_eq!(
            t,
            SedTree::Node {
                edge: [1, 2],
                link: Box::new(SedTree::Leaf { vertices: vec![] }),
                contraction: Box::new(SedTree::Leaf { vertices: vec![1, 3, 4] }),
            }
        );
        assert!(validate_sed_tree(&t, &q4));
        let oct = octahedron();
        let t = sed_recognize(&oct, true).unwrap();
        let SedTree::Node { edge, .. } = &t else { panic!() };
        assert_eq!(*edge, [1, 3]);
        assert!(validate_sed_tree(&t, &oct));
        assert!(!validate_sed_tree(&t, &q4));
    }

    #[test]
    fn suspension_facts() {
        let q4 = c(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        for k in [q4, SimplicialComplex::simplex_boundary(&[1, 2, 3]), octahedron()] {
            let r = suspension_sed_check(&k).unwrap();
            assert!(r.holds(), "{k}: {r:?}");
        }
    }
}
