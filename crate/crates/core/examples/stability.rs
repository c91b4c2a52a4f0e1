//! King stability of a module for the defect weight, with both backends.

use quiverforge::forms::{defect_weight, find_isotropic_root};
use quiverforge::stability::{backend_a, backend_b, is_stable, StabilityConfig};
use quiverforge::{catalog, DimVector, QMatrix, Representation};

fn main() -> quiverforge::Result<()> {
    let a = catalog::dtilde4_subspace();
    let h = find_isotropic_root(&a)?;
    let theta = defect_weight(&a, &h)?;
    // Four pairwise distinct lines in a plane.
    let lines = [[1, 0], [0, 1], [1, 1], [1, 2]];
    let mats = lines.iter().map(|l| QMatrix::from_i64(2, 1, l)).collect();
    let m = Representation::new(a.clone(), h.clone(), mats)?;

    let cfg = StabilityConfig::default();
    let verdict = is_stable(&m, &theta, &cfg)?;
    println!("four lines, θ_h = {theta}: {:?}", verdict.status);

    // Two equal lines give a subrepresentation (1;1,1,0,0) with θ_h = 0.
    let lines = [[1, 0], [1, 0], [1, 1], [1, 2]];
    let mats = lines.iter().map(|l| QMatrix::from_i64(2, 1, l)).collect();
    let degenerate = Representation::new(a.clone(), h, mats)?;
    let verdict = is_stable(&degenerate, &theta, &cfg)?;
    println!("two equal lines: {:?}, witness dimension {:?}", verdict.status, verdict.violating_dim.map(|d| d.to_string()));

    // Subrepresentation queries answered by each backend separately.
    let e = DimVector(vec![1, 1, 1, 0, 0]);
    println!("Gr_e(four lines) for e = {e}: certifier {:?}, decider {:?}", backend_a(&m, &e, &cfg).is_some(), backend_b(&m, &e, &cfg)?);
    println!("Gr_e(two equal lines): certifier {:?}, decider {:?}", backend_a(&degenerate, &e, &cfg).is_some(), backend_b(&degenerate, &e, &cfg)?);
    Ok(())
}
