#![allow(dead_code)]

use nclp_core::random::{haar_unitary, rng_from_seed, SeededRng};
use nclp_core::{random_jordan, AlgebraElement, AlgebraRef, BlockSpec, Exponent, JordanMap, MultiMatrixAlgebra};
use rand::seq::SliceRandom;
use rand::Rng;

pub const P_GRID: [f64; 3] = [1.5, 3.0, 4.0];

pub fn algebra(rng: &mut SeededRng, max_blocks: usize, max_dim: usize) -> AlgebraRef<f64> {
    let k = rng.random_range(1..=max_blocks);
    let blocks = (0..k)
        .map(|_| BlockSpec {
            dim: rng.random_range(1..=max_dim),
            weight: rng.random_range(0.5..=2.0),
        })
        .collect();
    MultiMatrixAlgebra::new(blocks).unwrap()
}

/// Source and a target with the same dimension multiset, permuted, reweighted.
pub fn compatible_pair(rng: &mut SeededRng) -> (AlgebraRef<f64>, AlgebraRef<f64>) {
    let source = algebra(rng, 3, 3);
    let mut dims = source.dims();
    dims.shuffle(rng);
    let target = MultiMatrixAlgebra::new(
        dims.into_iter()
            .map(|dim| BlockSpec {
                dim,
                weight: rng.random_range(0.5..=2.0),
            })
            .collect(),
    )
    .unwrap();
    (source, target)
}

pub struct Instance {
    pub jordan: JordanMap<f64>,
    pub unitary: AlgebraElement<f64>,
}

pub fn instance(seed: u64) -> Instance {
    let mut rng = rng_from_seed(seed);
    let (s, t) = compatible_pair(&mut rng);
    let jordan = random_jordan(&s, &t, rng.random()).unwrap();
    let unitary = haar_unitary(&t, &mut rng);
    Instance { jordan, unitary }
}

pub fn exponent(p: f64) -> Exponent<f64> {
    Exponent::from_f64(p).unwrap()
}
