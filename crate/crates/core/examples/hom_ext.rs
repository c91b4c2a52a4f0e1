//! Hom and Ext¹ between Kronecker modules, checked against the Euler form.

use quiverforge::homology::{euler_pairing_check, ext1_space, hom_space};
use quiverforge::{catalog, DimVector, QMatrix, Representation};

fn main() -> quiverforge::Result<()> {
    let k2 = catalog::kronecker();
    let s1 = Representation::simple(k2.clone(), 0);
    let s2 = Representation::simple(k2.clone(), 1);
    // Regular module (1,1) with M(a) = 1, M(b) = 0 and the preprojective P1 of dimension (1,2).
    let r = Representation::new(k2.clone(), DimVector(vec![1, 1]), vec![QMatrix::from_i64(1, 1, &[1]), QMatrix::from_i64(1, 1, &[0])])?;
    let p1 = Representation::new(
        k2.clone(),
        DimVector(vec![1, 2]),
        vec![QMatrix::from_i64(2, 1, &[1, 0]), QMatrix::from_i64(2, 1, &[0, 1])],
    )?;

    let named = [("S1", &s1), ("S2", &s2), ("R", &r), ("P1", &p1)];
    for (a, m) in named {
        for (b, n) in named {
            let rep = euler_pairing_check(m, n)?;
            println!(
                "{a:>2} -> {b:<2}  hom {}  ext1 {}  <dim,dim> {}  consistent {}",
                rep.hom, rep.ext1, rep.pairing, rep.consistent
            );
        }
    }
    let hom = hom_space(&p1, &r)?;
    println!("Hom(P1,R) basis, {} element(s):", hom.dim);
    for phi in &hom.basis {
        println!("  {:?}", phi.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    let ext = ext1_space(&s1, &s2)?;
    println!("Ext1(S1,S2) has dimension {}", ext.dim);
    Ok(())
}
