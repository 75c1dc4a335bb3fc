// The canonical functional on the top degree, by Lee's facet sum and by elimination.

use facering::artinian::{graded_component, make_lsop, monomials_of_degree, render_monomial, LsopMode};
use facering::canonical::{choose_aux_symbolic, psi_by_elimination, PsiEvaluator};
use facering::corpus;
use facering::scalar::Int;
use facering::topology::orient;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let square = corpus::polygon(4);
    let m = choose_aux_symbolic(&square, make_lsop::<Int>(&square, (), LsopMode::FullGeneric)?);
    let eval = PsiEvaluator::new(square.clone(), m, orient(&square, 0)?)?;

    // On a facet the value is the inverse determinant, with the facet's orientation sign.
    for f in square.facets() {
        println!("Psi({}) = {}", render_monomial(f), eval.psi(f)?);
    }
    println!("Psi(x1^2) = {}", eval.psi(&[1, 1])?);
    println!("Psi(x1*x3) = {} (not a face)", eval.psi_or_zero(&[1, 3])?);

    let reduced = choose_aux_symbolic(&square, make_lsop::<Int>(&square, (), LsopMode::Reduced)?);
    let eval = PsiEvaluator::new(square.clone(), reduced, orient(&square, 0)?)?;
    let top = graded_component(&square, eval.matrix(), square.d());
    let face = |s: &[u32]| s.is_empty() || square.contains_face(s);
    for mono in monomials_of_degree(&square, 2, &face) {
        let lee = eval.psi(&mono)?;
        let elim = psi_by_elimination(&eval, &top, &mono).ok_or("no elimination value")?;
        assert_eq!(lee, elim);
        println!("  {:<8} {lee}", render_monomial(&mono));
    }
    println!("Lee's formula agrees with elimination on every degree-2 monomial");

    let mid = graded_component(&square, eval.matrix(), 1);
    let gram = eval.middle_form(&mid)?;
    println!("middle Gram matrix over the basis {:?}:", mid.basis());
    for row in &gram {
        println!("  [{}]", row.iter().map(|x| x.render()).collect::<Vec<_>>().join(", "));
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
