use nclp_core::diagnostics::{central_correspondence, corner_image};
use nclp_core::random::{haar_unitary_matrix, rng_from_seed, SeededRng};
use nclp_core::scalar::C;
use nclp_core::{
    decompose, AlgebraRef, BlockSpec, Corner, Element, Error, Exponent, Isometry, LinearMap, MultiMatrixAlgebra,
    Projection,
};
use rand::Rng;

use crate::config::SuiteConfig;
use crate::report::Outcome;

/// Random algebra whose first block is a matrix block of size at least 2, so
/// every counterexample kind exists even when `max_dim = 1`.
fn nonabelian_algebra(config: &SuiteConfig, rng: &mut SeededRng) -> AlgebraRef<f64> {
    let k = rng.random_range(1..=config.max_blocks);
    let blocks = (0..k)
        .map(|i| BlockSpec {
            dim: if i == 0 {
                rng.random_range(2..=config.max_dim.max(2))
            } else {
                rng.random_range(1..=config.max_dim)
            },
            weight: rng.random_range(0.5..=2.0),
        })
        .collect();
    MultiMatrixAlgebra::new(blocks).expect("positive weights and dimensions")
}

/// `c·id` with `c ∈ [0.25, 0.75] ∪ [1.5, 3]`.
fn scaled_identity(a: &AlgebraRef<f64>, p: Exponent<f64>, rng: &mut SeededRng) -> Isometry {
    let c = if rng.random_bool(0.5) {
        rng.random_range(0.25..=0.75)
    } else {
        rng.random_range(1.5..=3.0)
    };
    Isometry::raw(LinearMap::identity(a).scale(c), p)
}

/// Schur multiplier on block 0 with unit diagonal and Hermitian off-diagonal
/// entries of modulus 2: unital, but it sends `(e_j + e_l)(e_j + e_l)*` to a
/// matrix with eigenvalue −1.
fn schur_multiplier(a: &AlgebraRef<f64>, p: Exponent<f64>, rng: &mut SeededRng) -> Isometry {
    let n = a.block_dim(0);
    let mut s = vec![vec![C::new(1.0, 0.0); n]; n];
    for r in 0..n {
        for c in r + 1..n {
            let z = C::from_polar(2.0, rng.random_range(0.0..std::f64::consts::TAU));
            s[r][c] = z;
            s[c][r] = z.conj();
        }
    }
    let map = LinearMap::from_fn(a, a, |x| {
        Element::from_fn(a, |b, r, c| if b == 0 { x.block(b)[(r, c)] * s[r][c] } else { x.block(b)[(r, c)] })
    });
    Isometry::raw(map, p)
}

/// Haar unitary on the flat coordinate space: an L² isometry that scrambles
/// the matrix structure.
fn scrambler(a: &AlgebraRef<f64>, p: Exponent<f64>, rng: &mut SeededRng) -> Isometry {
    let u = haar_unitary_matrix(a.dimension(), rng);
    Isometry::raw(LinearMap::new(a, a, u).expect("square of the algebra dimension"), p)
}

/// On `ℂ ⊕ M₂`, swaps the abelian coordinate with the `e₁₁` entry of `M₂`,
/// so the abelian summand lands inside the matrix block.
fn abelian_swap(p: Exponent<f64>, rng: &mut SeededRng) -> Isometry {
    let a = MultiMatrixAlgebra::from_pairs(&[(1, rng.random_range(0.5..=2.0)), (2, rng.random_range(0.5..=2.0))])
        .expect("valid pairs");
    let d = a.dimension();
    let map = LinearMap::from_fn(&a, &a, |x| {
        let mut v = x.to_vector();
        v.swap_rows(0, 1);
        Element::from_vector(&a, &v).expect("length preserved")
    });
    debug_assert_eq!(d, 5);
    Isometry::raw(map, p)
}

fn rank_one_column(a: &AlgebraRef<f64>, p: Exponent<f64>, rng: &mut SeededRng) -> Corner<f64> {
    let mut ranks = vec![0; a.num_blocks()];
    ranks[0] = 1;
    let q: Projection<f64> =
        nclp_core::random::random_projection(a, &ranks, rng).expect("rank 1 fits a block of size 2");
    Corner::column(q, p)
}

fn record(o: &mut Outcome, kind: &'static str, expected: &'static str, got: nclp_core::Result<()>, ok: fn(&Error) -> bool) {
    match got {
        Ok(()) => {
            o.metric("false_acceptances", crate::report::Reduce::Sum, 1.0);
            o.bounded_aux(kind, 1.0, 0.0);
        }
        Err(e) if ok(&e) => o.require(kind, true),
        Err(e) => {
            o.checks += 1;
            o.metric("wrong_error_types", crate::report::Reduce::Sum, 1.0);
            o.fail(format!("{kind}: expected {expected}, got {e}"));
        }
    }
}

/// Every counterexample is rejected with its documented typed error.
pub(super) fn adversarial(config: &SuiteConfig, seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let p = config.p_grid[rng.random_range(0..config.p_grid.len())];
    let tol = config.tolerances;
    let a = nonabelian_algebra(config, &mut rng);
    let mut o = Outcome::new();
    o.metric("false_acceptances", crate::report::Reduce::Sum, 0.0);

    let t = scaled_identity(&a, p, &mut rng);
    record(&mut o, "scaled identity", "PolarNotUnitary", decompose(&t, &tol).map(drop), |e| {
        matches!(e, Error::PolarNotUnitary(_))
    });

    let t = schur_multiplier(&a, p, &mut rng);
    let got = decompose(&t, &tol).map(drop);
    if p.is_infinite() || p.finite_value() == Some(1.0) {
        record(&mut o, "positivity breaking", "NotJordan", got, |e| matches!(e, Error::NotJordan(_)));
    } else {
        record(&mut o, "positivity breaking", "ImageNotPositive", got, |e| {
            matches!(e, Error::ImageNotPositive { .. })
        });
    }

    let t = scrambler(&a, p, &mut rng);
    let column = rank_one_column(&a, p, &mut rng);
    record(&mut o, "corner to non-corner", "ImageNotCorner", corner_image(&t, &column, &tol).map(drop), |e| {
        matches!(e, Error::ImageNotCorner { .. })
    });
    record(&mut o, "scrambler decomposition", "any error", decompose(&t, &tol).map(drop), |_| true);

    let t = abelian_swap(p, &mut rng);
    record(&mut o, "abelian summand into matrix block", "NotIsometry", central_correspondence(&t, &tol).map(drop), |e| {
        matches!(e, Error::NotIsometry(_))
    });
    record(&mut o, "abelian swap decomposition", "any error", decompose(&t, &tol).map(drop), |_| true);
    o
}
