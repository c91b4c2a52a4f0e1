//! The functor f_E from Kronecker modules to modules over D4~, and what it preserves.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quiverforge::catalog;
use quiverforge::exceptional::{find_orthogonal_pair, lift, random_module};
use quiverforge::homology::{end_dim, ext1_dim, hom_dim};
use quiverforge::DimVector;

fn main() -> quiverforge::Result<()> {
    let a = catalog::dtilde4_subspace();
    let pc = find_orthogonal_pair(&a, 7)?;
    let qa = &pc.quotient.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mods = [[1, 0], [0, 1], [1, 1], [2, 1], [1, 2], [2, 2]]
        .iter()
        .map(|d| random_module(qa, &DimVector(d.to_vec()), 3, &mut rng))
        .collect::<quiverforge::Result<Vec<_>>>()?;
    for m in &mods {
        let l = lift(&pc.pair, &pc.quotient, m)?;
        println!("M' of dim {} lifts to dim {}, End {} -> {}", m.dim(), l.dim(), end_dim(m), end_dim(&l));
    }
    let (m, n) = (&mods[3], &mods[4]);
    let (lm, ln) = (lift(&pc.pair, &pc.quotient, m)?, lift(&pc.pair, &pc.quotient, n)?);
    println!("Hom {} -> {}, Ext1 {} -> {}", hom_dim(m, n)?, hom_dim(&lm, &ln)?, ext1_dim(m, n)?, ext1_dim(&lm, &ln)?);
    Ok(())
}
