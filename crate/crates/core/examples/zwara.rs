//! Zwara's module over the Kronecker quiver and its orbit data.

use quiverforge::homology::{end_dim, ext1_dim, orbit_dimension};
use quiverforge::pipeline::zwara_module;

fn main() -> quiverforge::Result<()> {
    let m = zwara_module();
    println!("dim M = {}", m.dim());
    println!("M(a) =\n{}", m.matrix_by_id("a")?);
    println!("M(b) =\n{}", m.matrix_by_id("b")?);
    let a = m.matrix_by_id("a")?;
    println!("M(a)^3 = 0: {}", a.mul(a).mul(a).is_zero());
    println!("dim End(M) = {}", end_dim(&m));
    println!("dim Ext1(M,M) = {}", ext1_dim(&m, &m)?);
    // mod(K2,(3,3)) has dimension 18.
    println!("orbit dimension = {} of 18", orbit_dimension(&m));
    Ok(())
}
