// One induction step over an edge: the adapted middle basis and the degree facts in the
// distinguished variable `t`.

use facering::artinian::render_monomial;
use facering::certify::{check_facts, middle_basis, middle_basis_shape_check};
use facering::corpus;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, k, edge) in [("polygon_4", corpus::polygon(4), [1, 2]), ("polygon_5", corpus::polygon(5), [1, 2]), ("cross_polytope_4", corpus::cross_polytope(4), [1, 3])] {
        let basis = middle_basis(&k, edge, 0)?;
        let show = |v: &[Vec<u32>]| v.iter().map(|m| render_monomial(m)).collect::<Vec<_>>().join(" ");
        println!("{name}, edge {edge:?}");
        println!("  from the link: {}", show(&basis.a));
        println!("  the rest:      {}", show(&basis.b));
        println!("  rank {} of {}", basis.rank, basis.expected);
        assert!(middle_basis_shape_check(&k, edge, 0)?);

        let facts = check_facts(&k, &basis, 0)?;
        println!("  link pairs linear in t: {}", facts.linear_in_t.iter().all(|p| p.holds));
        println!("  link sign: {:?}", facts.link_sign);
        println!("  mixed pairs free of t: {}", facts.mixed_pairs.iter().all(|p| p.holds));
        let moved = facts.mixed_pairs.iter().filter(|p| p.note.is_some()).count();
        println!("  mixed pairs whose value differs from the contraction's: {moved}");
        println!("  remaining pairs bounded with the contraction's leading term: {}", facts.bounded_in_t.iter().all(|p| p.holds));
        assert!(facts.all_hold());
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
