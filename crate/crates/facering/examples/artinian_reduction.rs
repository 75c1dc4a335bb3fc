// Linear systems of parameters and the graded pieces of the Artinian reduction.

use facering::artinian::{certified_dimension, graded_component, make_lsop, LsopMode};
use facering::corpus;
use facering::scalar::{Int, ModP, Var, WORK_PRIME};
use rand::{Rng, SeedableRng};
use std::collections::HashMap;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let square = corpus::polygon(4);
    let m = make_lsop::<Int>(&square, (), LsopMode::Reduced)?;
    println!("reduced parameter matrix of the square ({} unknowns):", m.variables().len());
    for row in 0..m.d {
        let entries: Vec<String> = square.vertices().iter().map(|&v| m.entry(row, v).render()).collect();
        println!("  [{}]", entries.join(", "));
    }
    for i in 0..=square.d() {
        let b = graded_component(&square, &m, i);
        let basis: Vec<String> = b.basis().iter().map(|x| facering::artinian::render_monomial(x)).collect();
        println!("  degree {i}: dim {} basis {basis:?}", b.dim());
    }

    // Larger spheres: exact symbolic elimination is slow, so specialize modulo a prime and
    // close the gap with the Koszul upper bound.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (name, k) in [("octahedron", corpus::octahedron()), ("cross_polytope_4", corpus::cross_polytope(4))] {
        for mode in [LsopMode::Reduced, LsopMode::FullGeneric] {
            let sym = make_lsop::<Int>(&k, (), mode)?;
            let vals: HashMap<Var, i64> = sym.variables().into_iter().map(|v| (v, rng.gen_range(-1_000_000..=1_000_000))).collect();
            let point = sym.at_point(&ModP::new(0, WORK_PRIME), &|v| ModP::new(vals[&v], WORK_PRIME))?;
            let dims: Vec<Option<usize>> = (0..=k.d()).map(|i| certified_dimension(&k, &point, i)).collect();
            println!("{name} {mode:?}: dims {dims:?}, h = {:?}", k.h_vector().0);
            let h: Vec<Option<usize>> = k.h_vector().0.iter().map(|&x| Some(x as usize)).collect();
            assert_eq!(dims, h);
        }
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
