use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quiverforge::exceptional::{find_orthogonal_pair, lift, random_module, PairConstruction};
use quiverforge::forms::euler_form;
use quiverforge::homology::{euler_pairing_check, ext1_dim, hom_dim};
use quiverforge::stability::{is_semistable, is_stable, StabilityConfig, StabilityStatus};
use quiverforge::{catalog, BoundQuiverAlgebra, DimVector, Representation, Weight};

fn module(a: &Arc<BoundQuiverAlgebra>, dims: Vec<usize>, seed: u64) -> Representation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_module(a, &DimVector(dims), 2, &mut rng).unwrap()
}

fn dtilde4_pair() -> &'static PairConstruction {
    static PAIR: OnceLock<PairConstruction> = OnceLock::new();
    PAIR.get_or_init(|| find_orthogonal_pair(&catalog::dtilde4_subspace(), 7).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_pairing_is_hom_minus_ext(d in prop::collection::vec(0usize..3, 5), e in prop::collection::vec(0usize..3, 5), seed in any::<u64>()) {
        let a = catalog::dtilde4_subspace();
        let (m, n) = (module(&a, d, seed), module(&a, e, seed.wrapping_add(1)));
        let r = euler_pairing_check(&m, &n).unwrap();
        prop_assert_eq!(r.pairing, r.hom - r.ext1);
        prop_assert_eq!(r.inferred_ext2(), Some(0));
        prop_assert!(r.consistent);
    }

    #[test]
    fn hom_is_additive(d in prop::collection::vec(0usize..3, 2), e in prop::collection::vec(0usize..3, 2), f in prop::collection::vec(0usize..3, 2), seed in any::<u64>()) {
        let a = catalog::kronecker();
        let (m, n, x) = (module(&a, d, seed), module(&a, e, seed ^ 1), module(&a, f, seed ^ 2));
        let sum = n.direct_sum(&x).unwrap();
        prop_assert_eq!(hom_dim(&m, &sum).unwrap(), hom_dim(&m, &n).unwrap() + hom_dim(&m, &x).unwrap());
        prop_assert_eq!(ext1_dim(&sum, &m).unwrap(), ext1_dim(&n, &m).unwrap() + ext1_dim(&x, &m).unwrap());
    }

    #[test]
    fn zero_weight_is_semistable(d in prop::collection::vec(0usize..3, 2), seed in any::<u64>()) {
        let a = catalog::kronecker();
        let m = module(&a, d, seed);
        let v = is_semistable(&m, &Weight::zero(2), &StabilityConfig::default()).unwrap();
        prop_assert!(v.is_semistable());
    }

    #[test]
    fn stable_implies_schur(d in prop::collection::vec(0usize..3, 2), t in -3i64..=3, seed in any::<u64>()) {
        let a = catalog::kronecker();
        let m = module(&a, d.clone(), seed);
        // θ(d) = 0 forces θ proportional to (d2, -d1).
        let theta = Weight::from_ints(&[t * d[1] as i64, -t * d[0] as i64]);
        let v = is_stable(&m, &theta, &StabilityConfig::default()).unwrap();
        if v.status == StabilityStatus::Stable {
            prop_assert_eq!(hom_dim(&m, &m).unwrap(), 1);
        }
        if let Some(w) = &v.witness {
            prop_assert!(w.verify(&m));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lift_preserves_hom_and_ext(d in prop::collection::vec(0usize..3, 2), e in prop::collection::vec(0usize..3, 2), seed in any::<u64>()) {
        let pc = dtilde4_pair();
        let qa = &pc.quotient.algebra;
        let (m, n) = (module(qa, d, seed), module(qa, e, seed ^ 7));
        let (lm, ln) = (lift(&pc.pair, &pc.quotient, &m).unwrap(), lift(&pc.pair, &pc.quotient, &n).unwrap());
        prop_assert!(lm.check().is_ok());
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&lm, &ln).unwrap());
        prop_assert_eq!(ext1_dim(&m, &n).unwrap(), ext1_dim(&lm, &ln).unwrap());
        let a = pc.pair.algebra();
        prop_assert_eq!(
            euler_form(a, lm.dim(), ln.dim()).unwrap(),
            euler_form(qa, m.dim(), n.dim()).unwrap()
        );
    }
}
