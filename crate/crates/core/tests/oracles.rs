mod common;

use common::*;
use quiverforge::forms::{defect_weight, euler_form, find_isotropic_root, tits_form};
use quiverforge::genericrep::{effective_cone, facet_interior_weight, facet_stable_pair, generic_subdims};
use quiverforge::homology::{end_dim, ext1_dim, hom_dim, is_schur, orbit_dimension};
use quiverforge::pipeline::zwara_module;
use quiverforge::stability::{backend_b, subrep_exists, StabilityConfig};
use quiverforge::linalg::q;
use quiverforge::{catalog, DimVector, Weight};

fn dv(v: &[usize]) -> DimVector {
    DimVector(v.to_vec())
}

#[test]
fn zwara_end_matches_integer_oracle() {
    let m = zwara_module();
    let oracle = zwara_end_oracle();
    assert_eq!(end_dim(&m), oracle);
    assert_eq!(orbit_dimension(&m), 18 - oracle);
    assert_eq!(is_schur(&m), oracle == 1);
}

#[test]
fn kronecker_hom_matches_integer_oracle() {
    let dims = [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 3)];
    let mut seed = 100;
    for &(m1, m2) in &dims {
        for &(n1, n2) in &dims {
            seed += 1;
            let (ma, mb, m) = random_kronecker(seed, m1, m2);
            let (na, nb, n) = random_kronecker(seed + 1000, n1, n2);
            let oracle = kronecker_hom_oracle((&ma, &mb), (&na, &nb));
            assert_eq!(hom_dim(&m, &n).unwrap(), oracle, "dims {:?} -> {:?}", (m1, m2), (n1, n2));
            // Hereditary: ext1 = hom - <dim M, dim N>.
            let pairing = euler_form(m.algebra(), m.dim(), n.dim()).unwrap();
            assert_eq!(ext1_dim(&m, &n).unwrap() as i64, oracle as i64 - pairing);
        }
    }
}

#[test]
fn regular_module_hom_by_hand() {
    // M(a) = 1, M(b) = 3: End is the scalars.
    let m = kronecker_module(1, 1, &vec![vec![1]], &vec![vec![3]]);
    assert_eq!(hom_dim(&m, &m).unwrap(), 1);
    assert_eq!(kronecker_hom_oracle((&vec![vec![1]], &vec![vec![3]]), (&vec![vec![1]], &vec![vec![3]])), 1);
}

#[test]
fn pencil_oracle_agrees_with_subrep_search() {
    let cfg = StabilityConfig::default();
    let mut checked = 0;
    for seed in 0..12u64 {
        for &(d1, d2) in &[(1, 2), (2, 2), (2, 3), (3, 3), (3, 2)] {
            let (a, b, m) = random_kronecker(seed * 31 + d1 as u64, d1, d2);
            let got11 = subrep_exists(&m, &dv(&[1, 1]), &cfg).unwrap().exists;
            assert_eq!(got11, pencil_has_kernel(&a, &b), "seed {seed} dims ({d1},{d2})");
            let got10 = subrep_exists(&m, &dv(&[1, 0]), &cfg).unwrap().exists;
            assert_eq!(got10, common_kernel(&a, &b));
            checked += 1;
        }
    }
    assert_eq!(checked, 60);
}

#[test]
fn zwara_subreps_against_pencil_oracle() {
    let (a, b) = zwara_matrices();
    let m = zwara_module();
    let cfg = StabilityConfig::default();
    assert_eq!(backend_b(&m, &dv(&[1, 1]), &cfg).unwrap(), pencil_has_kernel(&a, &b));
    assert_eq!(backend_b(&m, &dv(&[1, 0]), &cfg).unwrap(), common_kernel(&a, &b));
}

#[test]
fn euler_form_values() {
    let d4 = catalog::dtilde4_subspace();
    assert_eq!(euler_form(&d4, &dv(&[0, 1, 0, 0, 0]), &dv(&[2, 0, 1, 1, 1])).unwrap(), -2);
    assert_eq!(tits_form(&d4, &dv(&[2, 1, 1, 1, 1])).unwrap(), 0);
    let k2 = catalog::kronecker();
    assert_eq!(euler_form(&k2, &dv(&[1, 0]), &dv(&[2, 3])).unwrap(), -4);
}

#[test]
fn isotropic_roots_and_defects() {
    let k2 = catalog::kronecker();
    let h = find_isotropic_root(&k2).unwrap();
    assert_eq!(h, dv(&[1, 1]));
    let th = defect_weight(&k2, &h).unwrap();
    assert_eq!(th, Weight::from_ints(&[1, -1]));
    assert_eq!(th.eval(&dv(&[1, 2])), q(-1));

    let d4 = catalog::dtilde4_subspace();
    let h = find_isotropic_root(&d4).unwrap();
    assert_eq!(h, dv(&[2, 1, 1, 1, 1]));
    let th = defect_weight(&d4, &h).unwrap();
    assert_eq!(th.eval(&dv(&[2, 0, 1, 1, 1])), q(-1));
    assert_eq!(th.eval(&h), q(0));
}

/// Brute force: `θ` with `θ(d) = 0` lies in `Eff(K2, d)` iff `θ(e) ≤ 0` for every
/// `e ≤ d` admitting a subrepresentation of a generic module; for `d = (3,3)` these
/// are exactly the `e` with `e1 ≤ e2`, since a generic pencil has three eigenlines.
#[test]
fn kronecker_eff_cone_brute_force() {
    let k2 = catalog::kronecker();
    let d = dv(&[3, 3]);
    let subs = generic_subdims(&k2, &d).unwrap();
    for e1 in 0..=3 {
        for e2 in 0..=3 {
            assert_eq!(subs.contains(&dv(&[e1, e2])), e1 <= e2, "e = ({e1},{e2})");
        }
    }
    assert!(!subs.contains(&dv(&[1, 0])));
    assert!(subs.contains(&dv(&[1, 1])));
    let cone = effective_cone(&k2, &d).unwrap();
    for t1 in -4i64..=4 {
        for t2 in -4i64..=4 {
            let theta = Weight::from_ints(&[t1, t2]);
            let brute = 3 * t1 + 3 * t2 == 0
                && (0..=3).all(|e1| (e1..=3).all(|e2| t1 * e1 as i64 + t2 * e2 as i64 <= 0));
            assert_eq!(cone.contains(&theta), brute, "θ = ({t1},{t2})");
        }
    }
    assert_eq!(cone.rays, vec![Weight::from_ints(&[1, -1])]);
    let small = effective_cone(&k2, &dv(&[1, 1])).unwrap();
    assert_eq!(small.rays, cone.rays);
}

#[test]
fn dtilde4_facet_pair_arithmetic() {
    let d4 = catalog::dtilde4_subspace();
    let h = dv(&[2, 1, 1, 1, 1]);
    let cone = effective_cone(&d4, &h).unwrap();
    assert_eq!(cone.dimension, 4);
    let theta0 = facet_interior_weight(&cone, &cone.facets[0]).unwrap();
    assert_eq!(theta0, Weight::from_ints(&[-3, 0, 2, 2, 2]));
    let p = facet_stable_pair(&d4, &h, &theta0).unwrap();
    assert_eq!((p.h1.clone(), p.h2.clone()), (dv(&[0, 1, 0, 0, 0]), dv(&[2, 0, 1, 1, 1])));
    assert_eq!((p.n1, p.n2, p.l), (1, 1, 2));
    let (n1, n2) = (p.n1 as i64, p.n2 as i64);
    assert_eq!(n1 * n1 + n2 * n2, p.l * n1 * n2);
    assert_eq!(theta0.eval(&p.h1), q(0));
    assert_eq!(theta0.eval(&p.h2), q(0));
    assert_eq!(euler_form(&d4, &p.h1, &p.h2).unwrap(), -2);
    assert_eq!(euler_form(&d4, &p.h2, &p.h1).unwrap(), 0);
}
