//! Buchberger's algorithm with the product and chain criteria.
//!
//! The stability engine only needs to know whether `1` lies in an ideal, so
//! computation stops as soon as a nonzero constant appears. Resource caps turn
//! runaway instances into an explicit [`GroebnerOutcome::LimitExceeded`].

use std::collections::BTreeSet;

use super::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_basis: 20_000, max_degree: 40 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerOutcome {
    /// The ideal contains 1.
    Unit,
    /// A reduced Gröbner basis of a proper ideal.
    Basis(Vec<Poly>),
    LimitExceeded(String),
}

/// Full normal form of `f` modulo monic polynomials `basis`.
pub fn reduce(f: &Poly, basis: &[Poly]) -> Poly {
    let mut p = f.clone();
    let mut rem = Poly::zero(f.nvars());
    while let Some((m, c)) = p.pop_leading() {
        match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(g) => {
                let (lm, _) = g.leading().expect("nonzero");
                let shift = lm.quotient_of(&m);
                // p -= c * shift * (g - lt(g))
                for (gm, gc) in g.terms().rev().skip(1) {
                    p.add_term(gm.mul(&shift), -(&c * gc));
                }
            }
            None => rem.add_term(m, c),
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, _) = f.leading().expect("nonzero");
    let (gm, _) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let one = num_traits::One::one();
    f.mul_term(&fm.quotient_of(&l), &one).sub(&g.mul_term(&gm.quotient_of(&l), &one))
}

fn over_limit(p: &Poly, size: usize, limits: GroebnerLimits) -> Option<String> {
    if p.degree() > limits.max_degree {
        return Some(format!("degree {} exceeds cap {}", p.degree(), limits.max_degree));
    }
    (size + 1 > limits.max_basis).then(|| format!("basis size exceeds cap {}", limits.max_basis))
}

/// Computes a Gröbner basis (grevlex) of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Poly], limits: GroebnerLimits) -> GroebnerOutcome {
    let mut basis: Vec<Poly> = Vec::new();
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();

    let insert = |p: Poly, basis: &mut Vec<Poly>, pending: &mut BTreeSet<(u32, usize, usize)>| {
        let p = p.monic();
        let k = basis.len();
        let lm = p.leading().expect("nonzero").0.clone();
        for (i, g) in basis.iter().enumerate() {
            let l = g.leading().expect("nonzero").0.lcm(&lm);
            pending.insert((l.degree(), i, k));
        }
        basis.push(p);
    };

    for g in gens {
        let r = reduce(g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return GroebnerOutcome::Unit;
        }
        if let Some(why) = over_limit(&r, basis.len(), limits) {
            return GroebnerOutcome::LimitExceeded(why);
        }
        insert(r, &mut basis, &mut pending);
    }

    let pair_key = |i: usize, j: usize| if i < j { (i, j) } else { (j, i) };
    while let Some(&(deg, i, j)) = pending.iter().next() {
        pending.remove(&(deg, i, j));
        let li = basis[i].leading().expect("nonzero").0.clone();
        let lj = basis[j].leading().expect("nonzero").0.clone();
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j || !basis[k].leading().expect("nonzero").0.divides(&l) {
                return false;
            }
            let (a, b) = (pair_key(i, k), pair_key(j, k));
            let open = |p: (usize, usize)| pending.iter().any(|&(_, x, y)| (x, y) == p);
            !open(a) && !open(b)
        });
        if chain {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_unit() {
            return GroebnerOutcome::Unit;
        }
        if let Some(why) = over_limit(&r, basis.len(), limits) {
            return GroebnerOutcome::LimitExceeded(why);
        }
        insert(r, &mut basis, &mut pending);
    }
    GroebnerOutcome::Basis(reduce_basis(basis))
}

/// Minimal, fully reduced, sorted by leading monomial.
fn reduce_basis(basis: Vec<Poly>) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading().expect("nonzero").0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading().expect("nonzero").0;
            j != i && hm.divides(lm) && (hm != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Poly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly> =
                minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            let (lm, lc) = minimal[i].leading().expect("nonzero");
            let mut tail = minimal[i].clone();
            tail.add_term(lm.clone(), -lc.clone());
            let mut r = reduce(&tail, &others);
            r.add_term(lm.clone(), lc.clone());
            r.monic()
        })
        .collect();
    out.sort_by(|a, b| a.leading().expect("nonzero").0.cmp(b.leading().expect("nonzero").0));
    out
}

/// `Ok(true)` if `1 ∈ ⟨gens⟩`, `Ok(false)` if the ideal is proper, `Err` when a cap is hit.
pub fn contains_one(gens: &[Poly], limits: GroebnerLimits) -> Result<bool, String> {
    match groebner_basis(gens, limits) {
        GroebnerOutcome::Unit => Ok(true),
        GroebnerOutcome::Basis(_) => Ok(false),
        GroebnerOutcome::LimitExceeded(why) => Err(why),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn c(v: i64) -> Poly {
        Poly::constant(3, q(v))
    }

    #[test]
    fn inconsistent_system_contains_one() {
        // x*y = 1, x = 0
        let gens = vec![x(0).mul(&x(1)).sub(&c(1)), x(0)];
        assert_eq!(contains_one(&gens, GroebnerLimits::default()), Ok(true));
    }

    #[test]
    fn consistent_system_is_proper() {
        // x^2 + y^2 = 1 (no rational point needed; only solvability over the closure)
        let gens = vec![x(0).mul(&x(0)).add(&x(1).mul(&x(1))).add(&c(1))];
        assert_eq!(contains_one(&gens, GroebnerLimits::default()), Ok(false));
    }

    #[test]
    fn twisted_cubic_basis() {
        // <y - x^2, z - x^3>: every generator and every S-polynomial reduces to zero.
        let gens = vec![x(1).sub(&x(0).mul(&x(0))), x(2).sub(&x(0).mul(&x(0)).mul(&x(0)))];
        let GroebnerOutcome::Basis(gb) = groebner_basis(&gens, GroebnerLimits::default()) else {
            panic!("expected a basis");
        };
        for g in &gens {
            assert!(reduce(g, &gb).is_zero());
        }
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                assert!(reduce(&s_poly(&gb[i], &gb[j]), &gb).is_zero());
            }
        }
        // y^2 - xz lies in the ideal
        let f = x(1).mul(&x(1)).sub(&x(0).mul(&x(2)));
        assert!(reduce(&f, &gb).is_zero());
    }

    #[test]
    fn degree_cap_reports_limit() {
        let gens = vec![x(0).mul(&x(0)).mul(&x(1)).sub(&x(2)), x(0).mul(&x(1)).mul(&x(1)).sub(&x(2))];
        let tight = GroebnerLimits { max_basis: 100, max_degree: 1 };
        assert!(matches!(groebner_basis(&gens, tight), GroebnerOutcome::LimitExceeded(_)));
    }
}
