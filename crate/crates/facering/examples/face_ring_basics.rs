// Building simplicial complexes and asking the basic combinatorial questions.
//
// ```text
// cargo run --example face_ring_basics
// ```

use facering::complex::SimplicialComplex;
use facering::corpus;
use facering::topology::{classify, is_homology_sphere, orient};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let square = SimplicialComplex::from_facets(vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])?;
    println!("square: {square}");
    println!("  f = {:?}, h = {:?}", square.f_vector().0, square.h_vector().0);
    assert_eq!(square.h_vector().0, vec![1, 2, 1]);

    let oct = corpus::octahedron();
    println!("octahedron: {} facets, d = {}", oct.facets().len(), oct.d());
    println!("  link of vertex 1: {}", oct.link(&[1])?);
    println!("  link of edge {{1, 3}}: {}", oct.link(&[1, 3])?);

    // Suspension adds apexes 5, 6; the octahedron pairs antipodes as {1,2}, {3,4}, {5,6}.
    let s = square.suspension();
    let swapped = s.relabel(&|v| match v {
        2 => 3,
        3 => 2,
        v => v,
    });
    assert_eq!(swapped, oct);
    println!("suspension of the square: {s}");

    let ok = square.link_condition(1, 2)?;
    let contracted = square.contract(2, 1)?;
    println!("square: link condition on {{1, 2}}: {ok}, contraction: {contracted}");
    assert!(contracted.is_simplex_boundary());

    for (name, k) in [("octahedron", oct.clone()), ("mobius_strip", corpus::mobius_strip()), ("projective_plane", corpus::projective_plane())] {
        let q = classify(&k, 0);
        let two = classify(&k, 2);
        println!("{name}: reduced betti from degree -1, over Q {:?}, over F_2 {:?}, sphere over Q: {}", q.betti, two.betti, q.sphere);
    }
    assert!(is_homology_sphere(&oct, 0));
    assert!(!is_homology_sphere(&corpus::projective_plane(), 2));

    let o = orient(&square, 0)?;
    println!("square orientation: {:?}", o.signs());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
