//! Euler and Tits forms, isotropic roots and the defect trisection.

use quiverforge::forms::{classify_dim, defect_weight, find_isotropic_root, tits_form, EulerMatrix};
use quiverforge::{catalog, DimVector};

fn main() -> quiverforge::Result<()> {
    for (name, a) in [
        ("K2", catalog::kronecker()),
        ("D4~", catalog::dtilde4_subspace()),
        ("A2~", catalog::atilde2()),
        ("canonical(2,2,2)", catalog::canonical_222()),
        ("D4", catalog::dynkin_d4()),
    ] {
        let e = EulerMatrix::of(&a)?;
        println!("{name}: Euler matrix {:?}", (0..e.size()).map(|i| (0..e.size()).map(|j| e.entry(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>());
        match find_isotropic_root(&a) {
            Ok(h) => {
                let theta = defect_weight(&a, &h)?;
                println!("  h = {h}, q(h) = {}, θ_h = {theta}", tits_form(&a, &h)?);
                for v in 0..a.vertex_count() {
                    let s = DimVector::unit(a.vertex_count(), v);
                    println!("  simple {} is {:?}", a.quiver().vertices()[v], classify_dim(&theta, &s));
                }
            }
            Err(err) => println!("  no isotropic root: {err}"),
        }
    }
    Ok(())
}
