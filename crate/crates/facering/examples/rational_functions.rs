// Exact rational functions in the parameter entries, the distinguished variable `t`,
// and square decomposition in characteristic 2.

use facering::scalar::{FieldSpec, PFunc, QFunc, Var};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let phi = QFunc::parse("(a1_1*t^2 + 3*t)/(t - a2_1)", ())?;
    let psi = QFunc::parse("(t + 1)/(a1_1^2*t^3)", ())?;
    println!("phi = {phi}");
    println!("psi = {psi}");

    let spec = FieldSpec::new(0, vec![Var::entry(1, 1), Var::entry(2, 1), Var::T], Some(Var::T))?;
    let prod = phi.mul_rf(&psi);
    println!("deg_t: phi {:?}, psi {:?}, product {:?}", spec.deg_t(&phi)?, spec.deg_t(&psi)?, spec.deg_t(&prod)?);
    println!("leading coefficient of the product in t: {}", spec.leading_t(&prod)?);
    assert_eq!(spec.deg_t(&prod)?, Some(-1));
    assert!(spec.leading_t(&prod)?.eq_rf(&spec.leading_t(&phi)?.mul_rf(&spec.leading_t(&psi)?)));

    // Over F_2 every element is a sum of squarefree monomials times squares.
    let f = PFunc::parse("(a1_1^3*a1_2 + a1_2 + a1_1^2)/(a1_2 + 1)", 2)?;
    let parts = f.square_decompose()?;
    let mut back = PFunc::constant(0, 2);
    for (m, h) in &parts {
        println!("  {} * ({})^2", m.render(), h);
        back = back.add_rf(&PFunc::from_poly(facering::scalar::Poly::monomial(m.clone(), facering::scalar::Zp(1), 2)).mul_rf(&h.mul_rf(h)));
    }
    assert!(back.eq_rf(&f));
    println!("square decomposition of {f} reassembles exactly");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
