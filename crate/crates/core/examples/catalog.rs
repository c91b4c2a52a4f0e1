//! Writes the built-in algebras as JSON files usable with the CLI.
//!
//! `cargo run --example catalog -- data/`

use std::path::PathBuf;

use quiverforge::catalog;

fn main() -> quiverforge::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir)?;
    let algebras = [
        ("kronecker", catalog::kronecker()),
        ("dtilde4", catalog::dtilde4_subspace()),
        ("atilde2", catalog::atilde2()),
        ("canonical222", catalog::canonical_222()),
        ("d4", catalog::dynkin_d4()),
        ("a3", catalog::dynkin_a(3)),
        ("square", catalog::commutative_square()),
    ];
    for (name, a) in algebras {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&a.to_json())? + "\n")?;
        println!("{}", path.display());
    }
    Ok(())
}
