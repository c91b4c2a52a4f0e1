//! Orthogonal exceptional pairs for tame algebras, with their Hom/Ext tables.

use quiverforge::catalog;
use quiverforge::exceptional::find_orthogonal_pair;

fn main() -> quiverforge::Result<()> {
    for (name, a) in [("D4~", catalog::dtilde4_subspace()), ("A2~", catalog::atilde2()), ("canonical(2,2,2)", catalog::canonical_222())] {
        let pc = find_orthogonal_pair(&a, 7)?;
        let (e1, e2) = (&pc.pair.e1, &pc.pair.e2);
        println!("{name}: h = {}, θ_h = {}, facet {} with θ0 = {}", pc.h, pc.theta_h, pc.facet_index, pc.theta0);
        println!("  E1 = {} (θ_h {}), E2 = {} (θ_h {})", e1.dim(), pc.theta_h.eval(e1.dim()), e2.dim(), pc.theta_h.eval(e2.dim()));
        for entry in &pc.pair.table.entries {
            let r = &entry.report;
            println!("  (E{}, E{}): hom {} ext1 {} ext2 {:?}", entry.from + 1, entry.to + 1, r.hom, r.ext1, r.inferred_ext2());
        }
        for c in &pc.pair.table.conditions {
            println!("  condition ({}) {}", c.condition, if c.passed { "holds" } else { "fails" });
        }
        println!("  A_E has {} arrows 2 -> 1", pc.quotient.algebra.quiver().arrow_count());
    }
    Ok(())
}
