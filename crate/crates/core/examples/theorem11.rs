//! Builds the bad-orbit instance for a tame algebra and re-verifies it.
//!
//! `cargo run --example theorem11 -- [kronecker|dtilde4|atilde2|canonical]`

use quiverforge::catalog;
use quiverforge::pipeline::{build_bad_orbit_instance, verify_instance};

fn main() -> quiverforge::Result<()> {
    let which = std::env::args().nth(1).unwrap_or_else(|| "dtilde4".into());
    let a = match which.as_str() {
        "kronecker" => catalog::kronecker(),
        "atilde2" => catalog::atilde2(),
        "canonical" => catalog::canonical_222(),
        _ => catalog::dtilde4_subspace(),
    };
    let inst = build_bad_orbit_instance(&a, 7)?;
    println!("route {}, d = {:?}", inst.route, inst.d);
    println!("End(M) = {}, End(Zwara) = {}", inst.invariants.end_dim, inst.invariants.end_dim_zwara);
    let report = verify_instance(&inst)?;
    for c in &report.checks {
        println!("  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    for c in &inst.cited_conclusions {
        println!("  cited: {} ({})", c.claim, c.status);
    }
    Ok(())
}
