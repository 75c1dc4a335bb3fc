//! Named small complexes. The same complexes ship as JSON files in `corpus/`.

use crate::complex::SimplicialComplex;

fn from(facets: Vec<Vec<u32>>) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets).expect("valid facets")
}

fn labels(n: u32) -> Vec<u32> {
    (1..=n).collect()
}

/// The boundary of the `k`-simplex on vertices `1..=k+1`.
pub fn simplex_boundary(k: u32) -> SimplicialComplex {
    SimplicialComplex::simplex_boundary(&labels(k + 1))
}

/// The full `k`-simplex on vertices `1..=k+1`.
pub fn simplex(k: u32) -> SimplicialComplex {
    SimplicialComplex::simplex(&labels(k + 1))
}

/// The cycle `1, 2, …, n`.
pub fn polygon(n: u32) -> SimplicialComplex {
    from((1..=n).map(|i| vec![i, i % n + 1]).collect())
}

/// Boundary of the `k`-dimensional cross-polytope; antipodal pairs are `{2i−1, 2i}`.
pub fn cross_polytope(k: u32) -> SimplicialComplex {
    let mut out = from(vec![vec![1], vec![2]]);
    for i in 1..k {
        out = out.join(&from(vec![vec![2 * i + 1], vec![2 * i + 2]])).expect("fresh labels");
    }
    out
}

pub fn octahedron() -> SimplicialComplex {
    cross_polytope(3)
}

/// The square `1–2–3–4` suspended twice, with apexes `5, 6` and then `7, 8`.
pub fn square_suspended_twice() -> SimplicialComplex {
    polygon(4).suspension().suspension()
}

/// A stacked `dim`-sphere: the boundary of a `(dim + 1)`-simplex whose last facet is
/// subdivided by a new vertex, `extra` times over.
pub fn stacked_sphere(dim: u32, extra: u32) -> SimplicialComplex {
    let mut facets = simplex_boundary(dim + 1).facets().to_vec();
    for s in 0..extra {
        let apex = dim + 3 + s;
        let f = facets.pop().expect("nonempty");
        for i in 0..f.len() {
            let mut g = f.clone();
            g[i] = apex;
            g.sort_unstable();
            facets.push(g);
        }
    }
    from(facets)
}

/// The five-vertex Möbius strip.
pub fn mobius_strip() -> SimplicialComplex {
    from((0..5).map(|i| vec![i + 1, (i + 1) % 5 + 1, (i + 2) % 5 + 1]).collect())
}

/// The six-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    from(
        [[1, 2, 4], [1, 2, 6], [1, 3, 5], [1, 3, 6], [1, 4, 5], [2, 3, 4], [2, 3, 5], [2, 5, 6], [3, 4, 6], [4, 5, 6]]
            .iter()
            .map(|f| f.to_vec())
            .collect(),
    )
}

/// Every named complex, in a fixed order.
pub fn all() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for k in 1..=5 {
        out.push((format!("simplex_boundary_{k}"), simplex_boundary(k)));
    }
    for n in 4..=8 {
        out.push((format!("polygon_{n}"), polygon(n)));
    }
    out.push(("octahedron".into(), octahedron()));
    out.push(("cross_polytope_4".into(), cross_polytope(4)));
    out.push(("square_suspended_twice".into(), square_suspended_twice()));
    out.push(("stacked_2_sphere_5".into(), stacked_sphere(2, 1)));
    out.push(("stacked_2_sphere_6".into(), stacked_sphere(2, 2)));
    out.push(("stacked_3_sphere_6".into(), stacked_sphere(3, 1)));
    out.push(("stacked_3_sphere_7".into(), stacked_sphere(3, 2)));
    out.push(("mobius_strip".into(), mobius_strip()));
    out.push(("projective_plane".into(), projective_plane()));
    for k in 1..=3 {
        out.push((format!("simplex_{k}"), simplex(k)));
    }
    out
}

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    all().into_iter().find(|(n, _)| n == name).map(|(_, k)| k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{is_homology_manifold, is_homology_sphere};

    #[test]
    fn shapes() {
        assert_eq!(octahedron().h_vector().0, vec![1, 3, 3, 1]);
        assert_eq!(cross_polytope(4).h_vector().0, vec![1, 4, 6, 4, 1]);
        assert_eq!(square_suspended_twice().h_vector().0, vec![1, 4, 6, 4, 1]);
        assert_eq!(stacked_sphere(2, 2).h_vector().0, vec![1, 3, 3, 1]);
        assert_eq!(stacked_sphere(3, 2).h_vector().0, vec![1, 3, 3, 3, 1]);
        for (name, k) in all() {
            let sphere = is_homology_sphere(&k, 0);
            let expect = !name.starts_with("simplex_") || name.starts_with("simplex_boundary");
            let expect = expect && name != "mobius_strip" && name != "projective_plane";
            assert_eq!(sphere, expect, "{name}");
        }
        assert!(is_homology_manifold(&projective_plane(), 2, false));
        assert!(!is_homology_sphere(&projective_plane(), 2));
    }
}
