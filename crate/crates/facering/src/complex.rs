//! Finite simplicial complexes in facet-list form.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A face: a strictly increasing list of vertex labels.
pub type Face = Vec<u32>;

/// A simplicial complex stored by its facets.
///
/// Facets are sorted, pairwise non-nested and listed in lexicographic order, so two
/// complexes with the same face set compare equal. The complex `{∅}` is represented by
/// the single empty facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialComplex {
    vertices: Vec<u32>,
    facets: Vec<Face>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector(pub Vec<i64>);

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn union(a: &[u32], b: &[u32]) -> Face {
    let mut out: Face = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn difference(a: &[u32], b: &[u32]) -> Face {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

fn sorted_face(f: impl IntoIterator<Item = u32>) -> Face {
    let mut v: Face = f.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Keeps only the inclusion-maximal sets.
fn maximalize(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in faces {
        if !kept.iter().any(|g| is_subset(&f, g)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

/// All `k`-element subsets of `set`, in lexicographic order.
pub fn subsets_of_size(set: &[u32], k: usize) -> Vec<Face> {
    let mut out = Vec::new();
    if k > set.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| set[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + set.len() - k {
                break;
            }
            if i == 0 && idx[0] == set.len() - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl SimplicialComplex {
    /// Builds a complex from any list of faces; dominated faces are dropped.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = u32>,
    {
        let faces: Vec<Face> = facets.into_iter().map(sorted_face).collect();
        if faces.is_empty() {
            return Err(Error::InvalidInput("a complex needs at least one facet".into()));
        }
        if faces.iter().flatten().any(|&v| v == 0) {
            return Err(Error::InvalidInput("vertex labels must be positive".into()));
        }
        Ok(Self::from_maximal(maximalize(faces)))
    }

    fn from_maximal(facets: Vec<Face>) -> Self {
        let vertices = sorted_face(facets.iter().flatten().copied());
        SimplicialComplex { vertices, facets }
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), facets: vec![Vec::new()] }
    }

    pub fn simplex(vertices: &[u32]) -> Self {
        Self::from_facets([vertices.to_vec()]).expect("valid simplex")
    }

    /// Boundary of the simplex on `vertices` (`{∅}` for a single vertex).
    pub fn simplex_boundary(vertices: &[u32]) -> Self {
        let vs = sorted_face(vertices.iter().copied());
        if vs.len() <= 1 {
            return Self::empty();
        }
        Self::from_maximal(subsets_of_size(&vs, vs.len() - 1))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn max_label(&self) -> u32 {
        self.vertices.last().copied().unwrap_or(0)
    }

    /// Dimension: largest facet size minus one (`-1` for `{∅}`).
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0) as i64 - 1
    }

    /// Krull dimension `d = dim + 1` of the face ring.
    pub fn d(&self) -> usize {
        (self.dim() + 1) as usize
    }

    pub fn is_pure(&self) -> bool {
        let d = self.d();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn contains_face(&self, sigma: &[u32]) -> bool {
        let s = sorted_face(sigma.iter().copied());
        self.facets.iter().any(|f| is_subset(&s, f))
    }

    pub fn is_facet(&self, sigma: &[u32]) -> bool {
        let s = sorted_face(sigma.iter().copied());
        self.facets.binary_search(&s).is_ok()
    }

    fn check_face(&self, sigma: &[u32]) -> Result<Face> {
        let s = sorted_face(sigma.iter().copied());
        if self.contains_face(&s) {
            Ok(s)
        } else {
            Err(Error::NotAFace(s))
        }
    }

    fn check_edge(&self, i: u32, j: u32) -> Result<()> {
        if i == j || !self.contains_face(&[i, j]) {
            return Err(Error::NotAnEdge(sorted_face([i, j])));
        }
        Ok(())
    }

    /// Faces with exactly `k + 1` vertices, lexicographically ordered; `k = -1` gives `{∅}`.
    pub fn faces(&self, k: i64) -> Vec<Face> {
        if k < -1 {
            return Vec::new();
        }
        let size = (k + 1) as usize;
        let mut set = BTreeSet::new();
        for f in &self.facets {
            for s in subsets_of_size(f, size) {
                set.insert(s);
            }
        }
        set.into_iter().collect()
    }

    /// Every face, ordered by size and then lexicographically.
    pub fn all_faces(&self) -> Vec<Face> {
        (-1..=self.dim()).flat_map(|k| self.faces(k)).collect()
    }

    pub fn link(&self, sigma: &[u32]) -> Result<Self> {
        let s = self.check_face(sigma)?;
        let faces: Vec<Face> = self.facets.iter().filter(|f| is_subset(&s, f)).map(|f| difference(f, &s)).collect();
        Ok(Self::from_maximal(maximalize(faces)))
    }

    pub fn star(&self, sigma: &[u32]) -> Result<Self> {
        let s = self.check_face(sigma)?;
        let faces: Vec<Face> = self.facets.iter().filter(|f| is_subset(&s, f)).cloned().collect();
        Ok(Self::from_maximal(faces))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        let clash: Face = self.vertices.iter().copied().filter(|v| other.vertices.binary_search(v).is_ok()).collect();
        if !clash.is_empty() {
            return Err(Error::VertexClash(clash));
        }
        let mut faces = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                faces.push(union(f, g));
            }
        }
        Ok(Self::from_maximal(maximalize(faces)))
    }

    /// Join with the two points `a`, `b`.
    pub fn suspension_with(&self, a: u32, b: u32) -> Result<Self> {
        self.join(&Self::from_facets([[a], [b]])?)
    }

    /// Suspension with fresh apexes `m + 1`, `m + 2` where `m` is the largest label.
    pub fn suspension(&self) -> Self {
        let m = self.max_label();
        self.suspension_with(m + 1, m + 2).expect("fresh labels")
    }

    /// Contracts the edge `{i, j}` by identifying `i` into `j`; `i` disappears.
    pub fn contract(&self, i: u32, j: u32) -> Result<Self> {
        self.check_edge(i, j)?;
        let faces: Vec<Face> = self
            .facets
            .iter()
            .map(|f| if f.binary_search(&i).is_ok() { union(&difference(f, &[i]), &[j]) } else { f.clone() })
            .collect();
        Ok(Self::from_maximal(maximalize(faces)))
    }

    /// `lk{i} ∩ lk{j} = lk{i, j}` as face sets.
    pub fn link_condition(&self, i: u32, j: u32) -> Result<bool> {
        self.check_edge(i, j)?;
        let li = self.link(&[i])?;
        let lj = self.link(&[j])?;
        let lij = self.link(&sorted_face([i, j]))?;
        let fi: BTreeSet<Face> = li.all_faces().into_iter().collect();
        let inter: BTreeSet<Face> = lj.all_faces().into_iter().filter(|f| fi.contains(f)).collect();
        let fij: BTreeSet<Face> = lij.all_faces().into_iter().collect();
        Ok(inter == fij)
    }

    /// Closure of the faces of `self` outside the subcomplex `other`.
    pub fn closure_minus(&self, other: &Self) -> Self {
        let faces: Vec<Face> = self.facets.iter().filter(|f| !other.contains_face(f)).cloned().collect();
        if faces.is_empty() {
            return Self::empty();
        }
        Self::from_maximal(faces)
    }

    /// Renames vertices through `map` (which must be injective on the vertex set).
    pub fn relabel(&self, map: &dyn Fn(u32) -> u32) -> Self {
        let faces = self.facets.iter().map(|f| sorted_face(f.iter().map(|&v| map(v)))).collect();
        Self::from_maximal(maximalize(faces))
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.facets.iter().all(|f| other.contains_face(f))
    }

    /// True iff this is the boundary of the simplex on its own vertex set.
    pub fn is_simplex_boundary(&self) -> bool {
        if self.is_empty_complex() {
            return true;
        }
        let n = self.vertices.len();
        n >= 2 && self.facets.len() == n && self.facets.iter().all(|f| f.len() == n - 1)
    }

    pub fn f_vector(&self) -> FVector {
        let mut f = vec![0u64; self.d() + 1];
        let mut seen = BTreeSet::new();
        for facet in &self.facets {
            for k in 0..=facet.len() {
                for s in subsets_of_size(facet, k) {
                    if seen.insert(s) {
                        f[k] += 1;
                    }
                }
            }
        }
        FVector(f)
    }

    pub fn h_vector(&self) -> HVector {
        let f = self.f_vector().0;
        let d = self.d() as i64;
        let h = (0..=d)
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                        sign * binom(d - j, d - i) * f[j as usize] as i64
                    })
                    .sum()
            })
            .collect();
        HVector(h)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Face> {
        self.faces(1)
    }

    /// Ridges (codimension-one faces) with the facets containing each.
    pub fn ridge_map(&self) -> std::collections::BTreeMap<Face, Vec<usize>> {
        let mut map: std::collections::BTreeMap<Face, Vec<usize>> = Default::default();
        for (idx, f) in self.facets.iter().enumerate() {
            for k in 0..f.len() {
                let mut r = f.clone();
                r.remove(k);
                map.entry(r).or_default().push(idx);
            }
        }
        map
    }

    /// Connectedness of the facet-ridge graph.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.facets.len();
        let mut adj = vec![Vec::new(); n];
        for owners in self.ridge_map().values() {
            for a in owners {
                for b in owners {
                    if a != b {
                        adj[*a].push(*b);
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Short stable digest of the sorted facet list.
    pub fn hash_hex(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for f in &self.facets {
            let s: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            h.update(s.join(",").as_bytes());
            h.update(b";");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .facets
            .iter()
            .map(|x| format!("{{{}}}", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
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

    fn tetra() -> SimplicialComplex {
        SimplicialComplex::simplex_boundary(&[1, 2, 3, 4])
    }

    fn octahedron() -> SimplicialComplex {
        SimplicialComplex::from_facets([[1], [2]])
            .unwrap()
            .join(&SimplicialComplex::from_facets([[3], [4]]).unwrap())
            .unwrap()
            .join(&SimplicialComplex::from_facets([[5], [6]]).unwrap())
            .unwrap()
    }

    #[test]
    fn faces_examples() {
        assert_eq!(tetra().faces(1).len(), 6);
        assert_eq!(tetra().faces(-1), vec![Vec::<u32>::new()]);
        assert_eq!(q4().faces(1), vec![vec![1, 2], vec![1, 4], vec![2, 3], vec![3, 4]]);
        assert!(tetra().faces(5).is_empty());
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets_of_size(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets_of_size(&[1, 2, 3], 0), vec![Vec::<u32>::new()]);
        assert_eq!(subsets_of_size(&[1, 2, 3], 3), vec![vec![1, 2, 3]]);
        assert_eq!(subsets_of_size(&[5, 6, 7, 8, 9], 3).len(), 10);
    }

    #[test]
    fn link_and_star_examples() {
        assert_eq!(tetra().link(&[]).unwrap(), tetra());
        assert_eq!(tetra().link(&[1]).unwrap(), SimplicialComplex::simplex_boundary(&[2, 3, 4]));
        assert_eq!(q4().link(&[1, 2]).unwrap(), SimplicialComplex::empty());
        assert_eq!(q4().star(&[1]).unwrap().facets(), &[vec![1, 2], vec![1, 4]]);
        assert_eq!(tetra().star(&[1, 2]).unwrap().facets(), &[vec![1, 2, 3], vec![1, 2, 4]]);
        assert_eq!(q4().link(&[1, 3]), Err(Error::NotAFace(vec![1, 3])));
    }

    #[test]
    fn join_and_suspension_examples() {
        let two = c(&[&[1], &[2]]);
        let s = two.suspension();
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.h_vector(), q4().h_vector());
        let o = q4().suspension();
        assert_eq!((o.num_vertices(), o.facets().len()), (6, 8));
        assert_eq!(q4().join(&SimplicialComplex::empty()).unwrap(), q4());
        assert!(matches!(q4().join(&q4()), Err(Error::VertexClash(_))));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(q4().contract(1, 2).unwrap(), SimplicialComplex::simplex_boundary(&[2, 3, 4]));
        assert_eq!(tetra().contract(1, 2).unwrap(), SimplicialComplex::simplex(&[2, 3, 4]));
        let oc = octahedron().contract(1, 3).unwrap();
        assert_eq!((oc.num_vertices(), oc.facets().len()), (5, 6));
        assert_eq!(q4().contract(1, 3), Err(Error::NotAnEdge(vec![1, 3])));
    }

    #[test]
    fn link_condition_examples() {
        assert!(q4().link_condition(1, 2).unwrap());
        assert!(!tetra().link_condition(1, 2).unwrap());
        assert!(octahedron().link_condition(1, 3).unwrap());
        assert!(!octahedron().contains_face(&[1, 2]));
    }

    #[test]
    fn vectors_examples() {
        assert_eq!(tetra().f_vector(), FVector(vec![1, 4, 6, 4]));
        assert_eq!(tetra().h_vector(), HVector(vec![1, 1, 1, 1]));
        assert_eq!(octahedron().f_vector(), FVector(vec![1, 6, 12, 8]));
        assert_eq!(octahedron().h_vector(), HVector(vec![1, 3, 3, 1]));
        let pt = c(&[&[1]]);
        assert_eq!(pt.f_vector(), FVector(vec![1, 1]));
        assert_eq!(pt.h_vector(), HVector(vec![1, 0]));
    }

    #[test]
    fn normalization_drops_nested_facets() {
        let k = c(&[&[1, 2, 3], &[1, 2], &[3, 4]]);
        assert_eq!(k.facets(), &[vec![1, 2, 3], vec![3, 4]]);
        assert!(!k.is_pure());
        assert!(SimplicialComplex::from_facets(Vec::<Vec<u32>>::new()).is_err());
    }
}
