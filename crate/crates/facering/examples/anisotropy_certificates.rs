// Certifying generic anisotropy with each backend, and checking certificates again.

use facering::certify::{certify, revalidate, Backend, CertifyOptions, Verdict};
use facering::corpus;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let runs = [
        ("polygon_4", 0, Backend::Rank2),
        ("polygon_7", 0, Backend::Definite),
        ("octahedron", 2, Backend::Char2),
        ("cross_polytope_4", 2, Backend::Char2),
        ("cross_polytope_4", 0, Backend::Auto),
        ("polygon_6", 3, Backend::Auto),
    ];
    for (name, ch, backend) in runs {
        let k = corpus::by_name(name).ok_or("unknown corpus name")?;
        let opts = CertifyOptions { characteristic: ch, backend, seed: 0, ..CertifyOptions::default() };
        let cert = certify(&k, &opts)?;
        println!("{name:<18} char {ch}  {backend:<8} -> {} via {}", cert.verdict, cert.backend);
        if cert.verdict.is_definite() {
            assert!(revalidate(&k, &cert)?);
        }
        if ch == 3 {
            assert_eq!(cert.verdict, Verdict::Inconclusive);
        } else {
            assert_eq!(cert.verdict, Verdict::Anisotropic);
        }
    }

    let cert = certify(&corpus::polygon(5), &CertifyOptions { seed: 0, ..CertifyOptions::default() })?;
    let json = serde_json::to_string_pretty(&cert)?;
    println!("{json}");
    let back: facering::certify::AnisoCertificate = serde_json::from_str(&json)?;
    assert!(revalidate(&corpus::polygon(5), &back)?);
    assert!(!revalidate(&corpus::polygon(6), &back)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
