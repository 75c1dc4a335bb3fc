//! Simplicial homology over prime fields and the rationals, homology manifold
//! predicates, boundary complexes and coherent orientations.

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::scalar::{is_prime, Field, ModP, Rational};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

fn check_char(ch: u64) {
    assert!(ch == 0 || is_prime(ch), "characteristic must be 0 or prime");
}

/// Boundary matrix `∂_k` restricted to the given chain groups, as sparse columns-as-rows
/// (row per `k`-face, entries indexed by `(k-1)`-faces).
fn boundary_rows<K: Field>(top: &[Face], bottom: &[Face], one: &K) -> Vec<SparseRow<K>> {
    let index: HashMap<&Face, usize> = bottom.iter().enumerate().map(|(i, f)| (f, i)).collect();
    top.iter()
        .map(|f| {
            let mut row: SparseRow<K> = (0..f.len())
                .filter_map(|pos| {
                    let mut r = f.clone();
                    r.remove(pos);
                    index.get(&r).map(|&i| (i, if pos % 2 == 0 { one.clone() } else { one.neg() }))
                })
                .collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect()
}

fn betti_of_chains<K: Field>(chains: &[Vec<Face>], one: &K) -> Vec<usize> {
    // chains[k + 1] holds the k-faces, k = -1..
    let n = chains.len();
    let mut ranks = vec![0usize; n + 1];
    for k in 1..n {
        let rows = boundary_rows(&chains[k], &chains[k - 1], one);
        ranks[k] = Echelon::new(rows, chains[k - 1].len()).rank();
    }
    (0..n).map(|k| chains[k].len() - ranks[k] - ranks[k + 1]).collect()
}

fn betti_with(chains: &[Vec<Face>], ch: u64) -> Vec<usize> {
    check_char(ch);
    if ch == 0 {
        betti_of_chains(chains, &Rational::int(1))
    } else {
        betti_of_chains(chains, &ModP::new(1, ch))
    }
}

/// Reduced Betti numbers `dim H̃_i(K; F)` for `i = -1..=dim K`.
pub fn reduced_betti(k: &SimplicialComplex, ch: u64) -> Vec<usize> {
    let chains: Vec<Vec<Face>> = (-1..=k.dim()).map(|i| k.faces(i)).collect();
    betti_with(&chains, ch)
}

/// Betti numbers of the pair `(K, L)` for `i = -1..=dim K`.
pub fn relative_betti(k: &SimplicialComplex, l: &SimplicialComplex, ch: u64) -> Vec<usize> {
    let chains: Vec<Vec<Face>> =
        (-1..=k.dim()).map(|i| k.faces(i).into_iter().filter(|f| !l.contains_face(f)).collect()).collect();
    betti_with(&chains, ch)
}

fn has_sphere_homology(l: &SimplicialComplex, dim: i64, ch: u64) -> bool {
    if l.dim() != dim {
        return false;
    }
    let b = reduced_betti(l, ch);
    b.iter().enumerate().all(|(i, &x)| x == if i as i64 - 1 == dim { 1 } else { 0 })
}

fn is_acyclic(l: &SimplicialComplex, ch: u64) -> bool {
    reduced_betti(l, ch).iter().all(|&x| x == 0)
}

/// Every nonempty face has a link with the homology of a sphere of the right
/// dimension, or (when allowed) of a point.
pub fn is_homology_manifold(k: &SimplicialComplex, ch: u64, with_boundary: bool) -> bool {
    if !k.is_pure() {
        return false;
    }
    let d = k.d() as i64;
    k.all_faces().into_iter().filter(|f| !f.is_empty()).all(|f| {
        let l = k.link(&f).expect("face");
        let dim = d - 1 - f.len() as i64;
        has_sphere_homology(&l, dim, ch) || (with_boundary && l.dim() == dim && is_acyclic(&l, ch))
    })
}

pub fn is_homology_sphere(k: &SimplicialComplex, ch: u64) -> bool {
    k.is_pure() && has_sphere_homology(k, k.dim(), ch) && is_homology_manifold(k, ch, false)
}

/// An acyclic homology manifold whose boundary is a homology sphere one dimension down.
pub fn is_homology_ball(k: &SimplicialComplex, ch: u64) -> bool {
    if !is_homology_manifold(k, ch, true) || !is_acyclic(k, ch) {
        return false;
    }
    match boundary_complex(k, ch) {
        Ok(b) => has_sphere_homology(&b, k.dim() - 1, ch),
        Err(_) => false,
    }
}

/// Faces whose links are acyclic, together with the empty face.
pub fn boundary_complex(k: &SimplicialComplex, ch: u64) -> Result<SimplicialComplex> {
    if !is_homology_manifold(k, ch, true) {
        return Err(Error::NotAManifold);
    }
    let faces: Vec<Face> = k
        .all_faces()
        .into_iter()
        .filter(|f| !f.is_empty() && is_acyclic(&k.link(f).expect("face"), ch))
        .collect();
    if faces.is_empty() {
        return Ok(SimplicialComplex::empty());
    }
    SimplicialComplex::from_facets(faces)
}

/// `dim H_{d-1}(K, ∂K; F)`; equals one exactly for orientable connected manifolds.
pub fn relative_top_betti(k: &SimplicialComplex, ch: u64) -> Result<usize> {
    let b = boundary_complex(k, ch)?;
    let rel = if b.is_empty_complex() { reduced_betti(k, ch) } else { relative_betti(k, &b, ch) };
    Ok(*rel.last().unwrap())
}

/// A coherent choice of vertex order on every facet, stored as a sign relative to
/// the increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    signs: BTreeMap<Face, i8>,
}

impl Orientation {
    /// Sign of a facet relative to its sorted vertex order.
    pub fn sign(&self, facet: &[u32]) -> Option<i8> {
        self.signs.get(facet).copied()
    }

    /// The facet's vertices in an order compatible with the orientation.
    pub fn ordered(&self, facet: &[u32]) -> Option<Vec<u32>> {
        let s = self.sign(facet)?;
        let mut v = facet.to_vec();
        if s < 0 && v.len() >= 2 {
            v.swap(0, 1);
        }
        Some(v)
    }

    pub fn signs(&self) -> &BTreeMap<Face, i8> {
        &self.signs
    }

    /// Builds an orientation from explicit signs.
    pub fn from_signs(signs: BTreeMap<Face, i8>) -> Self {
        Orientation { signs }
    }

    /// Flips every sign.
    pub fn reversed(&self) -> Self {
        Orientation { signs: self.signs.iter().map(|(f, s)| (f.clone(), -s)).collect() }
    }
}

/// Sign of `facet` that makes the order `ordered` (a permutation of it) positive.
pub fn permutation_sign(ordered: &[u32]) -> i8 {
    let mut sign = 1;
    for i in 0..ordered.len() {
        for j in i + 1..ordered.len() {
            if ordered[i] > ordered[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Propagates signs across ridges from the lexicographically least facet.
///
/// In characteristic 2 signs carry no information, so a failed propagation
/// falls back to all-positive signs instead of an error.
pub fn orient(k: &SimplicialComplex, ch: u64) -> Result<Orientation> {
    if !k.is_pure() {
        return Err(Error::NotPseudomanifold);
    }
    let facets = k.facets();
    if k.is_empty_complex() {
        return Ok(Orientation { signs: [(Vec::new(), 1)].into_iter().collect() });
    }
    let ridges = k.ridge_map();
    if ridges.values().any(|o| o.len() > 2) || !k.is_strongly_connected() {
        return Err(Error::NotPseudomanifold);
    }
    let mut sign: Vec<i8> = vec![0; facets.len()];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    let mut consistent = true;
    while let Some(a) = queue.pop_front() {
        let fa = &facets[a];
        for pos_a in 0..fa.len() {
            let mut r = fa.clone();
            r.remove(pos_a);
            for &b in &ridges[&r] {
                if b == a {
                    continue;
                }
                let fb = &facets[b];
                let pos_b = fb.iter().position(|v| r.binary_search(v).is_err()).unwrap();
                // induced ridge signs must be opposite
                let ind_a = sign[a] * if pos_a % 2 == 0 { 1 } else { -1 };
                let want_b = -ind_a * if pos_b % 2 == 0 { 1 } else { -1 };
                if sign[b] == 0 {
                    sign[b] = want_b;
                    queue.push_back(b);
                } else if sign[b] != want_b {
                    consistent = false;
                }
            }
        }
    }
    if !consistent {
        if ch == 2 {
            sign.iter_mut().for_each(|s| *s = 1);
        } else {
            return Err(Error::NonOrientable);
        }
    }
    Ok(Orientation { signs: facets.iter().cloned().zip(sign).collect() })
}

/// Summary used by the command line front end.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub betti: Vec<usize>,
    pub sphere: bool,
    pub ball: bool,
    pub manifold: bool,
    pub manifold_with_boundary: bool,
    pub orientable: bool,
}

pub fn classify(k: &SimplicialComplex, ch: u64) -> Classification {
    let manifold_with_boundary = is_homology_manifold(k, ch, true);
    Classification {
        betti: reduced_betti(k, ch),
        sphere: is_homology_sphere(k, ch),
        ball: is_homology_ball(k, ch),
        manifold: is_homology_manifold(k, ch, false),
        manifold_with_boundary,
        orientable: manifold_with_boundary && orient(k, ch).is_ok() && relative_top_betti(k, ch) == Ok(1),
    }
}

/// All faces of `k` as a set, for exact comparisons.
pub fn face_set(k: &SimplicialComplex) -> BTreeSet<Face> {
    k.all_faces().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(f: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(f.iter().map(|x| x.to_vec())).unwrap()
    }

    fn q4() -> SimplicialComplex {
        c(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    fn octahedron() -> SimplicialComplex {
        q4().suspension()
    }

    fn mobius() -> SimplicialComplex {
        c(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 1], &[5, 1, 2]])
    }

    #[test]
    fn betti_examples() {
        let tetra = SimplicialComplex::simplex_boundary(&[1, 2, 3, 4]);
        assert_eq!(reduced_betti(&tetra, 0), vec![0, 0, 0, 1]);
        assert_eq!(reduced_betti(&SimplicialComplex::simplex(&[1, 2, 3]), 0), vec![0, 0, 0, 0]);
        assert_eq!(reduced_betti(&q4(), 2), vec![0, 0, 1]);
        assert_eq!(reduced_betti(&SimplicialComplex::empty(), 0), vec![1]);
        assert_eq!(reduced_betti(&mobius(), 0), vec![0, 0, 1, 0]);
    }

    #[test]
    fn projective_plane_sees_the_field() {
        let rp2 = c(&[
            &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
            &[2, 3, 5], &[3, 4, 6], &[2, 4, 5], &[3, 5, 6], &[2, 4, 6],
        ]);
        assert_eq!(reduced_betti(&rp2, 0), vec![0, 0, 0, 0]);
        assert_eq!(reduced_betti(&rp2, 2), vec![0, 0, 1, 1]);
        assert!(is_homology_manifold(&rp2, 0, false));
        assert!(!is_homology_sphere(&rp2, 0));
        assert!(!is_homology_sphere(&rp2, 2));
        assert!(!is_homology_ball(&rp2, 0));
        assert!(orient(&rp2, 0).is_err());
    }

    #[test]
    fn predicates_examples() {
        assert!(is_homology_sphere(&octahedron(), 2));
        assert!(is_homology_ball(&SimplicialComplex::simplex(&[1, 2, 3, 4]), 0));
        let bowtie = c(&[&[1, 2, 3], &[3, 4, 5]]);
        assert!(!is_homology_manifold(&bowtie, 0, true));
        assert!(!is_homology_sphere(&SimplicialComplex::simplex(&[1, 2, 3]), 0));
        assert!(is_homology_sphere(&SimplicialComplex::empty(), 0));
        assert!(is_homology_ball(&c(&[&[1]]), 0));
    }

    #[test]
    fn boundary_examples() {
        let tri = SimplicialComplex::simplex(&[1, 2, 3]);
        assert_eq!(boundary_complex(&tri, 0).unwrap(), SimplicialComplex::simplex_boundary(&[1, 2, 3]));
        assert_eq!(boundary_complex(&octahedron(), 0).unwrap(), SimplicialComplex::empty());
        let o = c(&[&[1], &[2]]).join(&c(&[&[3], &[4]])).unwrap().join(&c(&[&[5], &[6]])).unwrap();
        let disk = o.link(&[1]).unwrap().closure_minus(&o.star(&[1, 3]).unwrap());
        assert_eq!(boundary_complex(&disk, 0).unwrap(), o.link(&[1, 3]).unwrap());
        let mb = boundary_complex(&mobius(), 0).unwrap();
        assert!(has_sphere_homology(&mb, 1, 0));
    }

    #[test]
    fn orientation_examples() {
        let o = orient(&q4(), 0).unwrap();
        assert_eq!(o.sign(&[1, 2]), Some(1));
        assert_eq!(o.ordered(&[2, 3]), Some(vec![2, 3]));
        assert_eq!(o.ordered(&[3, 4]), Some(vec![3, 4]));
        assert_eq!(o.ordered(&[1, 4]), Some(vec![4, 1]));
        let t = orient(&SimplicialComplex::simplex_boundary(&[1, 2, 3, 4]), 0).unwrap();
        let signs: Vec<i8> = t.signs().values().copied().collect();
        assert_eq!(signs, vec![1, -1, 1, -1]);
        assert_eq!(orient(&mobius(), 0), Err(Error::NonOrientable));
        assert!(orient(&c(&[&[1, 2], &[1, 3], &[1, 4]]), 0) == Err(Error::NotPseudomanifold));
        assert_eq!(relative_top_betti(&mobius(), 0), Ok(0));
        assert_eq!(relative_top_betti(&SimplicialComplex::simplex(&[1, 2, 3]), 0), Ok(1));
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let o = octahedron().suspension();
        let one = ModP::new(1, 3);
        for k in 1..o.d() as i64 {
            let hi = o.faces(k);
            let mid = o.faces(k - 1);
            let lo = o.faces(k - 2);
            let a = boundary_rows(&hi, &mid, &one);
            let b = boundary_rows(&mid, &lo, &one);
            for row in &a {
                let mut acc = vec![one.zero(); lo.len()];
                for (j, v) in row {
                    for (i, w) in &b[*j] {
                        acc[*i] = acc[*i].add(&v.mul(w));
                    }
                }
                assert!(acc.iter().all(|x| x.is_zero()));
            }
        }
    }
}
