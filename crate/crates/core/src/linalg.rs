//! Dense spectral kernels on single complex blocks.

use crate::scalar::{cr, Mat, Real};

pub(crate) struct Svd<T: Real> {
    pub u: Mat<T>,
    /// Descending.
    pub s: Vec<T>,
    pub v: Mat<T>,
}

/// Full SVD of a square block, `m = u · diag(s) · v*`.
pub(crate) fn svd<T: Real>(m: &Mat<T>) -> Svd<T> {
    debug_assert_eq!(m.nrows(), m.ncols());
    if m.nrows() == 0 {
        return Svd {
            u: Mat::zeros(0, 0),
            s: Vec::new(),
            v: Mat::zeros(0, 0),
        };
    }
    let (u, s, v) = T::svd_kernel(m);
    Svd { u, s, v }
}

/// Numerical rank: singular values above `rank_tol · σ_max`.
pub(crate) fn numerical_rank<T: Real>(s: &[T]) -> usize {
    let Some(&smax) = s.first() else { return 0 };
    if smax <= T::zero() {
        return 0;
    }
    let cut = T::default_rank_tol() * smax;
    s.iter().filter(|&&x| x > cut).count()
}

pub(crate) fn hermitian_part<T: Real>(m: &Mat<T>) -> Mat<T> {
    (m + m.adjoint()) * cr(T::lit(0.5))
}

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub(crate) fn eigh<T: Real>(m: &Mat<T>) -> (Vec<T>, Mat<T>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), Mat::zeros(0, 0));
    }
    T::eigh_kernel(&hermitian_part(m))
}

/// Applies a real function to the spectrum of the Hermitian part of `m`.
pub(crate) fn hermitian_calculus<T: Real>(m: &Mat<T>, f: impl Fn(T) -> T) -> Mat<T> {
    let (vals, vecs) = eigh(m);
    let n = vals.len();
    let mut scaled = vecs.clone();
    for (c, &lam) in vals.iter().enumerate() {
        let fl = cr(f(lam));
        for r in 0..n {
            scaled[(r, c)] *= fl;
        }
    }
    scaled * vecs.adjoint()
}

/// `m^e` for positive semidefinite `m`. Eigenvalues at or below the
/// round-off floor `n·ε_mach·λ_max` are set to zero first, since a
/// fractional power would amplify them.
pub(crate) fn psd_power<T: Real>(m: &Mat<T>, e: T) -> Mat<T> {
    let (vals, vecs) = eigh(m);
    let n = vals.len();
    let top = vals.last().copied().unwrap_or(T::zero());
    let floor = T::default_epsilon() * T::lit(n as f64) * top;
    let mut scaled = vecs.clone();
    for (c, &lam) in vals.iter().enumerate() {
        let f = if lam <= floor { T::zero() } else { lam.powf(e) };
        scaled.column_mut(c).scale_mut(f);
    }
    scaled * vecs.adjoint()
}

/// Orthonormal basis (as columns) of the range of `m`.
pub(crate) fn range_basis<T: Real>(m: &Mat<T>) -> Mat<T> {
    let dec = svd(m);
    let r = numerical_rank(&dec.s);
    dec.u.columns(0, r).into_owned()
}

/// Orthogonal projection onto the column span of an orthonormal basis.
pub(crate) fn projector<T: Real>(basis: &Mat<T>) -> Mat<T> {
    basis * basis.adjoint()
}

/// Spectral rounding of an approximate projection: symmetrize, then send
/// eigenvalues above 1/2 to 1 and the rest to 0.
pub(crate) fn round_projection<T: Real>(m: &Mat<T>) -> Mat<T> {
    let half = T::lit(0.5);
    let (vals, vecs) = eigh(m);
    let keep: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > half).collect();
    let basis = Mat::from_fn(m.nrows(), keep.len(), |r, c| vecs[(r, keep[c])]);
    projector(&basis)
}

pub(crate) fn spectral_norm<T: Real>(m: &Mat<T>) -> T {
    if m.is_empty() {
        return T::zero();
    }
    svd(m).s[0]
}

/// Unweighted Schatten sum `Σ σ^p` of one block.
pub(crate) fn schatten_sum<T: Real>(m: &Mat<T>, p: T) -> T {
    if m.is_empty() {
        return T::zero();
    }
    svd(m)
        .s
        .into_iter()
        .filter(|&s| s > T::zero())
        .fold(T::zero(), |acc, s| acc + s.powf(p))
}

/// Orthonormal basis of `range(a) ∩ range(b)` from orthonormal bases of each.
///
/// Principal angles are read off as the singular values `sin θ` of the
/// component of `b` orthogonal to `range(a)`; directions with
/// `sin θ ≤ rank_tol` span the intersection.
pub(crate) fn intersect_ranges<T: Real>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let n = a.nrows();
    if a.ncols() == 0 || b.ncols() == 0 {
        return Mat::zeros(n, 0);
    }
    let resid = b - a * (a.adjoint() * b);
    let (_, s, v) = T::svd_kernel(&resid);
    // b is orthonormal, so ncols(b) <= n and the SVD yields every sine.
    let tol = T::default_rank_tol().sqrt();
    let keep: Vec<usize> = (0..s.len()).filter(|&i| s[i] <= tol).collect();
    if keep.is_empty() {
        return Mat::zeros(n, 0);
    }
    let coeffs = Mat::from_fn(v.nrows(), keep.len(), |r, c| v[(r, keep[c])]);
    let basis = b * coeffs;
    // Re-orthonormalize against accumulated error.
    range_basis(&(&basis * basis.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C;

    fn m2(a: [[f64; 2]; 2]) -> Mat<f64> {
        Mat::from_fn(2, 2, |r, c| C::new(a[r][c], 0.0))
    }

    #[test]
    fn psd_power_on_diagonal() {
        let h = m2([[16.0, 0.0], [0.0, 81.0]]);
        let r = psd_power(&h, 0.25);
        assert!((r - m2([[2.0, 0.0], [0.0, 3.0]])).norm() < 1e-12);
    }

    #[test]
    fn rank_of_zero_is_zero() {
        assert_eq!(numerical_rank::<f64>(&[0.0, 0.0]), 0);
        assert_eq!(numerical_rank(&[1.0, 1e-12]), 1);
    }

    #[test]
    fn rounding_restores_projection() {
        let q = m2([[1.0 + 1e-9, 1e-9], [0.0, 1e-9]]);
        let r = round_projection(&q);
        assert!((r - m2([[1.0, 0.0], [0.0, 0.0]])).norm() < 1e-8);
    }

    #[test]
    fn intersection_of_transverse_lines_is_trivial() {
        let a = Mat::from_fn(2, 1, |r, _| C::new(if r == 0 { 1.0 } else { 0.0 }, 0.0));
        let s = 0.5f64.sqrt();
        let b = Mat::from_fn(2, 1, |_, _| C::new(s, 0.0));
        assert_eq!(intersect_ranges(&a, &b).ncols(), 0);
        assert_eq!(intersect_ranges(&a, &a).ncols(), 1);
    }
}
