mod common;

use nclp_core::corner::orthocomplement;
use nclp_core::diagnostics::{check_module_relation, corner_image, extract_right_orthoiso, push_set};
use nclp_core::lp::is_orthogonal_algebraic;
use nclp_core::random::{gaussian_element, haar_unitary, random_projection, random_ranks, rng_from_seed};
use nclp_core::{
    decompose, random_jordan, semi_inner_product, Algebra32, AlgebraElement, Exponent, Isometry32, JordanBlock,
    JordanMap, LpIsometry, LpVector, Projection, Tolerances,
};
use proptest::prelude::*;
use rand::Rng;

const ROUND_TRIP_GRID: [f64; 5] = [1.0, 1.5, 3.0, 4.0, f64::INFINITY];

fn exponent(p: f64) -> Exponent<f64> {
    if p.is_infinite() {
        Exponent::Infinity
    } else {
        common::exponent(p)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn round_trip(seed in any::<u64>(), pi in 0usize..5) {
        let inst = common::instance(seed);
        let tol = Tolerances::default();
        let t = LpIsometry::synthesize(&inst.jordan, &inst.unitary, exponent(ROUND_TRIP_GRID[pi]), &tol).unwrap();
        let d = decompose(&t.to_raw(), &tol).unwrap();
        prop_assert!(d.unitary.distance(&inst.unitary) <= 1e-8);
        prop_assert!(d.jordan.distance(&inst.jordan).unwrap() <= 1e-8);
        prop_assert!(d.residual <= 1e-7);
    }

    #[test]
    fn distinct_pairs_give_distinct_maps(seed in any::<u64>(), pi in 0usize..5) {
        let inst = common::instance(seed);
        let tol = Tolerances::default();
        let p = exponent(ROUND_TRIP_GRID[pi]);
        let mut rng = rng_from_seed(seed);
        let t1 = LpIsometry::synthesize(&inst.jordan, &inst.unitary, p, &tol).unwrap().to_linear_map();

        // a global phase on every u leaves Ad u, hence the map, unchanged
        let phase = nalgebra::Complex::from_polar(1.0, rng.random_range(0.0..6.0));
        let rephased: Vec<JordanBlock<f64>> = inst.jordan.blocks().iter()
            .map(|b| JordanBlock { unitary: &b.unitary * phase, anti: b.anti })
            .collect();
        let j2 = JordanMap::new(inst.jordan.source(), inst.jordan.target(), inst.jordan.sigma().to_vec(), rephased, 1e-8).unwrap();
        let t2 = LpIsometry::synthesize(&j2, &inst.unitary, p, &tol).unwrap().to_linear_map();
        prop_assert!(t1.distance(&t2).unwrap() <= 1e-10);
        prop_assert!(j2.distance(&inst.jordan).unwrap() <= 1e-10);

        // a small unitary perturbation of w moves the map by a comparable amount
        let small = haar_unitary(inst.unitary.algebra(), &mut rng);
        let w2 = perturb(&inst.unitary, &small, 1e-4);
        let t3 = LpIsometry::synthesize(&inst.jordan, &w2, p, &tol).unwrap().to_linear_map();
        prop_assert!(t1.distance(&t3).unwrap() > 1e-8);
        let d3 = decompose(&LpIsometry::raw(t3, p), &tol).unwrap();
        prop_assert!(d3.unitary.distance(&w2) <= 1e-8);
    }

    #[test]
    fn semi_inner_product_and_orthogonality_are_preserved(seed in any::<u64>(), pi in 0usize..3) {
        let inst = common::instance(seed);
        let p = common::exponent(common::P_GRID[pi]);
        let t = LpIsometry::synthesize(&inst.jordan, &inst.unitary, p, &Tolerances::default()).unwrap();
        let s = inst.jordan.source();
        let mut rng = rng_from_seed(seed);
        let xi = LpVector::new(gaussian_element(s, &mut rng), p);
        let eta = LpVector::new(gaussian_element(s, &mut rng), p);
        let before = semi_inner_product(&xi, &eta).unwrap();
        let after = semi_inner_product(&t.apply(&xi).unwrap(), &t.apply(&eta).unwrap()).unwrap();
        prop_assert!((before - after).norm() <= 1e-8 * xi.norm() * eta.norm());

        let l = random_projection(s, &random_ranks(s, &mut rng), &mut rng).unwrap();
        let r = random_projection(s, &random_ranks(s, &mut rng), &mut rng).unwrap();
        let a = LpVector::new(&(l.element() * xi.element()) * r.element(), p);
        let b = LpVector::new(&(l.complement().element() * eta.element()) * r.complement().element(), p);
        prop_assume!(a.norm() > 1e-8 && b.norm() > 1e-8);
        prop_assert!(is_orthogonal_algebraic(&t.apply(&a).unwrap(), &t.apply(&b).unwrap(), 1e-8));
    }

    #[test]
    fn orthocomplements_are_transported(seed in any::<u64>(), pi in 0usize..3) {
        let inst = common::instance(seed);
        let p = common::exponent(common::P_GRID[pi]);
        let tol = Tolerances::default();
        let t = LpIsometry::synthesize(&inst.jordan, &inst.unitary, p, &tol).unwrap();
        let s = inst.jordan.source();
        let mut rng = rng_from_seed(seed);
        let set: Vec<LpVector<f64>> = (0..rng.random_range(1..=2))
            .map(|_| {
                let l = random_projection(s, &random_ranks(s, &mut rng), &mut rng).unwrap();
                let r = random_projection(s, &random_ranks(s, &mut rng), &mut rng).unwrap();
                LpVector::new(&(l.element() * &gaussian_element(s, &mut rng)) * r.element(), p)
            })
            .collect();
        let perp = orthocomplement(s, p, &set).unwrap();
        let image = corner_image(&t, &perp, &tol).unwrap();
        let pushed = orthocomplement(t.target(), p, &push_set(&t, &set).unwrap()).unwrap();
        prop_assert!(image.output.approx_eq(&pushed, 1e-8));
    }

    #[test]
    fn right_orthoiso_matches_decomposed_jordan(seed in any::<u64>(), pi in 0usize..3) {
        let inst = common::instance(seed);
        let p = common::exponent(common::P_GRID[pi]);
        let tol = Tolerances::default();
        let t = LpIsometry::synthesize(&inst.jordan, &inst.unitary, p, &tol).unwrap().to_raw();
        let d = decompose(&t, &tol).unwrap();
        let pi_r = extract_right_orthoiso(&t, &tol, seed).unwrap();
        let s = inst.jordan.source();
        let mut rng = rng_from_seed(seed);
        let e = random_projection(s, &random_ranks(s, &mut rng), &mut rng).unwrap();
        let image = pi_r.apply(&e).unwrap();
        let want = Projection::try_from_element(&d.jordan.apply(e.element()).unwrap(), 1e-8).unwrap();
        prop_assert!(image.approx_eq(&want, 1e-8));
        prop_assert!(image.is_orthogonal(&pi_r.apply(&e.complement()).unwrap(), 1e-8));
        let inv = inst.jordan.sigma_inverse();
        for (j, &src) in inv.iter().enumerate() {
            let column = s.block_dim(src) == 1 || !inst.jordan.blocks()[src].anti;
            prop_assert_eq!(pi_r.column_blocks().contains(j), column);
        }
        let rel = check_module_relation(&t, &pi_r, &d.jordan, 4, seed).unwrap();
        prop_assert!(rel.max_residual() <= 1e-8);
    }
}

fn perturb(w: &AlgebraElement<f64>, v: &AlgebraElement<f64>, eps: f64) -> AlgebraElement<f64> {
    // w · exp(iεH) with H the Hermitian part of v, kept unitary by polar
    let h = (v + &v.adjoint()).scale_real(0.5);
    let near = w + &(w * &h).scale(nalgebra::Complex::new(0.0, eps));
    near.polar_decompose().partial_isometry
}

#[test]
fn single_precision_round_trip() {
    let tol = Tolerances::<f32>::default();
    for seed in 0..20u64 {
        let a = Algebra32::from_pairs(&[(2, 1.0), (1, 0.5), (2, 2.0)]).unwrap();
        let j = random_jordan(&a, &a, seed).unwrap();
        let w = haar_unitary(&a, &mut rng_from_seed(seed));
        for p in [Exponent::Finite(3.0f32), Exponent::Infinity, Exponent::Finite(1.0)] {
            let t = Isometry32::synthesize(&j, &w, p, &tol).unwrap();
            let d = decompose(&t.to_raw(), &tol).unwrap();
            assert!(d.unitary.distance(&w) <= 1e-3, "seed {seed} p {p}");
            assert!(d.jordan.distance(&j).unwrap() <= 1e-3);
        }
    }
}
