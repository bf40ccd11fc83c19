mod common;

use nclp_core::random::{gaussian_element, random_projection, random_ranks, rng_from_seed};
use nclp_core::{AlgebraElement, Projection};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_tracial(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = common::algebra(&mut rng, 3, 4);
        let x = gaussian_element(&a, &mut rng);
        let y = gaussian_element(&a, &mut rng);
        let (xy, yx) = ((&x * &y).trace(), (&y * &x).trace());
        let scale = x.frobenius_norm() * y.frobenius_norm() * a.unit_trace();
        prop_assert!((xy - yx).norm() <= 1e-8 * scale);
    }

    #[test]
    fn polar_and_supports(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = common::algebra(&mut rng, 3, 4);
        // a rank-deficient element exercises the partial isometry
        let q = random_projection(&a, &random_ranks(&a, &mut rng), &mut rng).unwrap();
        let x = &gaussian_element(&a, &mut rng) * q.element();
        let polar = x.polar_decompose();
        let v = &polar.partial_isometry;
        prop_assert!((v * &polar.modulus).distance(&x) <= 1e-8 * x.frobenius_norm().max(1.0));
        let (l, r) = x.supports();
        prop_assert!((&v.adjoint() * v).distance(r.element()) <= 1e-8);
        prop_assert!((l.element() * &x).distance(&x) <= 1e-8 * x.frobenius_norm().max(1.0));
        prop_assert!((&x * r.element()).distance(&x) <= 1e-8 * x.frobenius_norm().max(1.0));
        prop_assert!(r.is_le(&q, 1e-8));
    }

    #[test]
    fn lattice_order(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = common::algebra(&mut rng, 3, 4);
        let p = random_projection(&a, &random_ranks(&a, &mut rng), &mut rng).unwrap();
        let q = random_projection(&a, &random_ranks(&a, &mut rng), &mut rng).unwrap();
        let m = p.meet(&q).unwrap();
        let j = p.join(&q).unwrap();
        prop_assert!(m.is_le(&p, 1e-8) && m.is_le(&q, 1e-8));
        prop_assert!(p.is_le(&j, 1e-8) && q.is_le(&j, 1e-8));
        prop_assert!(p.meet(&p).unwrap().approx_eq(&p, 1e-8));
        // generic subspaces meet in dimension max(0, r_p + r_q − n)
        for i in 0..a.num_blocks() {
            let expect = (p.rank(i) + q.rank(i)).saturating_sub(a.block_dim(i));
            prop_assert_eq!(m.rank(i), expect);
        }
    }

    #[test]
    fn central_support_dominates_and_commutes(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = common::algebra(&mut rng, 3, 4);
        let q = random_projection(&a, &random_ranks(&a, &mut rng), &mut rng).unwrap();
        let z = q.central_support().to_projection(&a);
        prop_assert!(q.is_le(&z, 1e-10));
        let x = gaussian_element(&a, &mut rng);
        prop_assert!((z.element() * &x).distance(&(&x * z.element())) <= 1e-12);
        let none = Projection::<f64>::zero(&a).central_support();
        prop_assert!(none.is_none());
        prop_assert!(Projection::identity(&a).central_support().is_all());
        prop_assert!(AlgebraElement::identity(&a).is_unitary(1e-12));
    }
}
