// Recognizing strongly edge decomposable spheres and re-checking the trees.

use facering::certify::{sed_recognize, suspension_sed_check, validate_sed_tree, SedTree};
use facering::corpus;
use std::error::Error;

fn show(tree: &SedTree, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    match tree {
        SedTree::Leaf { vertices } => println!("{pad}boundary of the simplex on {vertices:?}"),
        SedTree::Node { edge, link, contraction } => {
            println!("{pad}edge {{{}, {}}}", edge[0], edge[1]);
            show(link, depth + 1);
            show(contraction, depth + 1);
        }
    }
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let oct = corpus::octahedron();
    let tree = sed_recognize(&oct, true).ok_or("octahedron not recognized")?;
    println!("octahedron: {} nodes, depth {}", tree.num_nodes(), tree.depth());
    show(&tree, 0);
    assert!(validate_sed_tree(&tree, &oct));

    for (name, k) in corpus::all() {
        if !facering::topology::is_homology_sphere(&k, 0) {
            continue;
        }
        let found = sed_recognize(&k, true);
        let valid = found.as_ref().is_some_and(|t| validate_sed_tree(t, &k));
        println!("{name:<24} {}", found.as_ref().map_or("not recognized".to_string(), |t| format!("{} nodes, valid: {valid}", t.num_nodes())));
        assert!(valid);
    }

    // The recognizer never accepts a non-sphere in strict mode.
    assert!(sed_recognize(&corpus::mobius_strip(), true).is_none());

    for name in ["polygon_4", "simplex_boundary_2", "octahedron", "stacked_2_sphere_6"] {
        let k = corpus::by_name(name).ok_or("unknown corpus name")?;
        let r = suspension_sed_check(&k).ok_or("not recognized")?;
        println!("suspension of {name}: {r:?}");
        assert!(r.holds());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
