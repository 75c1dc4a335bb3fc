// Writes every named complex as a JSON facet list.
//
// ```bash
// cargo run --example export_corpus -- corpus
// ```

use facering::cli::ComplexFile;
use facering::corpus;
use std::error::Error;
use std::path::PathBuf;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("facering-corpus"));
    std::fs::create_dir_all(&dir)?;
    for (name, k) in corpus::all() {
        let file = ComplexFile::from_complex(&k, Some(&name));
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&file)? + "\n")?;
        println!("{:<24} {:>3} facets  {}", name, k.facets().len(), path.display());
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
