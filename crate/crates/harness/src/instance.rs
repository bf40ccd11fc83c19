use nclp_core::random::{haar_unitary, rng_from_seed, SeededRng};
use nclp_core::{random_jordan, AlgebraRef, BlockSpec, Element, Exponent, Jordan, Json, MultiMatrixAlgebra};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use crate::config::SuiteConfig;

/// One random `(J, w, p)` triple on a compatible pair of algebras.
#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub source: AlgebraRef<f64>,
    pub target: AlgebraRef<f64>,
    pub jordan: Jordan,
    pub unitary: Element,
    pub p: Exponent<f64>,
}

impl Instance {
    pub fn to_json(&self) -> String {
        let v = json!({
            "seed": self.seed,
            "p": self.p.to_string(),
            "jordan": self.jordan.to_value(),
            "unitary": self.unitary.to_value(),
        });
        serde_json::to_string_pretty(&v).expect("JSON values always serialize")
    }
}

pub fn random_algebra(rng: &mut SeededRng, max_blocks: usize, max_dim: usize) -> AlgebraRef<f64> {
    let k = rng.random_range(1..=max_blocks);
    let blocks = (0..k)
        .map(|_| BlockSpec {
            dim: rng.random_range(1..=max_dim),
            weight: rng.random_range(0.5..=2.0),
        })
        .collect();
    MultiMatrixAlgebra::new(blocks).expect("positive weights and dimensions")
}

/// Same dimension multiset in a shuffled order, independent weights.
pub fn reweighted_permutation(source: &AlgebraRef<f64>, rng: &mut SeededRng) -> AlgebraRef<f64> {
    let mut dims = source.dims();
    dims.shuffle(rng);
    let blocks = dims
        .into_iter()
        .map(|dim| BlockSpec {
            dim,
            weight: rng.random_range(0.5..=2.0),
        })
        .collect();
    MultiMatrixAlgebra::new(blocks).expect("positive weights and dimensions")
}

pub fn generate_instance(config: &SuiteConfig, seed: u64) -> Instance {
    let mut rng = rng_from_seed(seed);
    let source = random_algebra(&mut rng, config.max_blocks, config.max_dim);
    let target = reweighted_permutation(&source, &mut rng);
    let jordan = random_jordan(&source, &target, rng.random()).expect("dimension multisets agree");
    let unitary = haar_unitary(&target, &mut rng);
    let p = config.p_grid[rng.random_range(0..config.p_grid.len())];
    Instance {
        seed,
        source,
        target,
        jordan,
        unitary,
        p,
    }
}
