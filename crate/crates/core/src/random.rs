//! Seeded random elements, projections, unitaries and states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraElement, AlgebraRef, Projection};
use crate::error::{Error, Result};
use crate::scalar::{cr, Mat, Real, C};

/// The generator behind every seeded routine.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// What [`random_sample`] should produce.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleKind {
    /// Entries i.i.d. standard complex Gaussian.
    Element,
    /// Haar-random projection with the given rank on each block.
    Projection(Vec<usize>),
    /// Haar-distributed unitary.
    Unitary,
    /// `g*g` normalized to unit trace (a faithful state, almost surely).
    Psd,
}

pub fn random_sample<T: Real>(
    algebra: &AlgebraRef<T>,
    kind: &SampleKind,
    seed: u64,
) -> Result<AlgebraElement<T>> {
    let mut rng = rng_from_seed(seed);
    Ok(match kind {
        SampleKind::Element => gaussian_element(algebra, &mut rng),
        SampleKind::Projection(ranks) => random_projection(algebra, ranks, &mut rng)?.into_element(),
        SampleKind::Unitary => haar_unitary(algebra, &mut rng),
        SampleKind::Psd => random_state_density(algebra, &mut rng),
    })
}

pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(T::lit(re * s), T::lit(im * s))
}

pub fn gaussian_matrix<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Mat<T> {
    Mat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar unitary on `M_n`: QR of a Ginibre matrix with the phases of `diag(R)`
/// moved into `Q`.
pub fn haar_unitary_matrix<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat<T> {
    let g = gaussian_matrix::<T, R>(n, n, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..n {
        let d = r[(k, k)];
        let m = nalgebra::ComplexField::modulus(d);
        let phase = if m > T::zero() { d / cr(m) } else { cr(T::one()) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

pub fn gaussian_element<T: Real, R: Rng + ?Sized>(algebra: &AlgebraRef<T>, rng: &mut R) -> AlgebraElement<T> {
    let blocks = algebra
        .blocks()
        .iter()
        .map(|b| gaussian_matrix(b.dim, b.dim, rng))
        .collect();
    AlgebraElement::from_blocks(algebra, blocks).expect("shapes follow the descriptor")
}

pub fn random_hermitian<T: Real, R: Rng + ?Sized>(algebra: &AlgebraRef<T>, rng: &mut R) -> AlgebraElement<T> {
    let g = gaussian_element(algebra, rng);
    (&g + &g.adjoint()).scale_real(T::lit(0.5))
}

pub fn haar_unitary<T: Real, R: Rng + ?Sized>(algebra: &AlgebraRef<T>, rng: &mut R) -> AlgebraElement<T> {
    let blocks = algebra
        .blocks()
        .iter()
        .map(|b| haar_unitary_matrix(b.dim, rng))
        .collect();
    AlgebraElement::from_blocks(algebra, blocks).expect("shapes follow the descriptor")
}

/// `u · diag(1,…,1,0,…,0) · u*` per block, with `ranks[i]` ones.
pub fn random_projection<T: Real, R: Rng + ?Sized>(
    algebra: &AlgebraRef<T>,
    ranks: &[usize],
    rng: &mut R,
) -> Result<Projection<T>> {
    if ranks.len() != algebra.num_blocks() {
        return Err(Error::InvalidRank(format!(
            "{} ranks for {} blocks",
            ranks.len(),
            algebra.num_blocks()
        )));
    }
    let mut bases = Vec::with_capacity(ranks.len());
    for (i, (&r, b)) in ranks.iter().zip(algebra.blocks()).enumerate() {
        if r > b.dim {
            return Err(Error::InvalidRank(format!(
                "rank {r} exceeds dimension {} of block {i}",
                b.dim
            )));
        }
        let u = haar_unitary_matrix::<T, R>(b.dim, rng);
        bases.push(u.columns(0, r).into_owned());
    }
    Ok(Projection::from_bases(algebra, &bases))
}

/// Uniform random rank in `0..=n_i` for each block.
pub fn random_ranks<T: Real, R: Rng + ?Sized>(algebra: &AlgebraRef<T>, rng: &mut R) -> Vec<usize> {
    algebra
        .blocks()
        .iter()
        .map(|b| rng.random_range(0..=b.dim))
        .collect()
}

/// Density `g*g / τ(g*g)` of a random state.
pub fn random_state_density<T: Real, R: Rng + ?Sized>(algebra: &AlgebraRef<T>, rng: &mut R) -> AlgebraElement<T> {
    let g = gaussian_element(algebra, rng);
    let h = &g.adjoint() * &g;
    let t = h.trace().re;
    h.scale_real(T::one() / t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiMatrixAlgebra;

    #[test]
    fn full_rank_projection_is_identity() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(3, 1.0), (2, 2.0)]).unwrap();
        let q = random_sample(&a, &SampleKind::Projection(vec![3, 2]), 7).unwrap();
        assert!(q.approx_eq(&AlgebraElement::identity(&a), 1e-12));
    }

    #[test]
    fn unitary_is_unitary() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(4, 1.0), (1, 0.5)]).unwrap();
        let u = random_sample(&a, &SampleKind::Unitary, 11).unwrap();
        assert!(u.is_unitary(1e-8));
    }

    #[test]
    fn seeded_runs_are_identical() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(3, 1.0)]).unwrap();
        for kind in [SampleKind::Element, SampleKind::Unitary, SampleKind::Psd] {
            let x = random_sample(&a, &kind, 42).unwrap();
            let y = random_sample(&a, &kind, 42).unwrap();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn rank_requests_are_validated() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(2, 1.0)]).unwrap();
        assert!(random_sample(&a, &SampleKind::Projection(vec![3]), 1).is_err());
        assert!(random_sample(&a, &SampleKind::Projection(vec![1, 1]), 1).is_err());
    }

    #[test]
    fn state_density_has_unit_mass() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(2, 1.5), (3, 0.5)]).unwrap();
        let h = random_sample(&a, &SampleKind::Psd, 3).unwrap();
        assert!((h.trace().re - 1.0).abs() < 1e-12);
        assert!(h.is_positive(1e-10));
    }
}
