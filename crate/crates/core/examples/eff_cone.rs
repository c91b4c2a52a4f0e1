//! Cone of effective weights, its facets and the stable pair on a facet.

use quiverforge::forms::find_isotropic_root;
use quiverforge::genericrep::{effective_cone, facet_interior_weight, facet_matches_pair, facet_stable_pairs};
use quiverforge::{catalog, DimVector};

fn main() -> quiverforge::Result<()> {
    let k2 = catalog::kronecker();
    let cone = effective_cone(&k2, &DimVector(vec![3, 3]))?;
    println!("Eff(K2,(3,3)): dimension {}, rays {:?}", cone.dimension, cone.rays.iter().map(ToString::to_string).collect::<Vec<_>>());

    let a = catalog::dtilde4_subspace();
    let h = find_isotropic_root(&a)?;
    let cone = effective_cone(&a, &h)?;
    println!("Eff(D4~,{h}): dimension {}, {} rays, {} facets", cone.dimension, cone.rays.len(), cone.facets.len());
    for (i, facet) in cone.facets.iter().enumerate() {
        let theta0 = facet_interior_weight(&cone, facet)?;
        let pairs = facet_stable_pairs(&a, &h, &theta0)?;
        let spans = pairs.first().is_some_and(|p| facet_matches_pair(&cone, facet, p));
        match pairs.first() {
            Some(p) => println!("  facet {i}: θ0 = {theta0}, pair {} + {}, l = {}, spans facet {spans}", p.h1, p.h2, p.l),
            None => println!("  facet {i}: θ0 = {theta0}, no pair"),
        }
    }
    Ok(())
}
