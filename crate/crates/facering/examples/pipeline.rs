// The whole induction on one complex: decomposition tree, hypotheses at every node, and
// the certificate for the top.

use facering::certify::{pipeline_theorem_main, Verdict};
use facering::corpus;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, ch) in [("polygon_5", 0), ("octahedron", 0), ("octahedron", 2), ("stacked_2_sphere_6", 2)] {
        let k = corpus::by_name(name).ok_or("unknown corpus name")?;
        let r = pipeline_theorem_main(&k, ch, 5, 0, true)?;
        println!("{name} in characteristic {ch}{}", if r.through_suspension { ", through the suspension" } else { "" });
        for n in &r.nodes {
            println!(
                "  {}edge {:?}: link {}, contraction {}, Lefschetz {}",
                "  ".repeat(n.depth),
                n.edge,
                n.link_verdict,
                n.contraction_verdict,
                n.link_lefschetz
            );
        }
        println!("  hypotheses confirmed: {}, conclusion: {}", r.hypotheses_confirmed, r.conclusion_verdict());
        if let Some(d) = &r.direct {
            println!("  on the complex itself: {}", d.verdict);
        }
        assert!(r.consistent());
        assert_eq!(r.conclusion_verdict(), Verdict::Anisotropic);
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
