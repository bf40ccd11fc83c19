//! Scalar abstraction shared by every module.
//!
//! All numerics are written against [`Real`], a thin extension of nalgebra's
//! `RealField` (which is itself built on `num-traits`). Elements are complex
//! matrices over `Complex<T>`.

use nalgebra::{Complex, DMatrix, DVector, RealField};
use num_traits::ToPrimitive;

/// Complex scalar over a real field.
pub type C<T> = Complex<T>;
/// Dense complex matrix, the carrier for one algebra block.
pub type Mat<T> = DMatrix<Complex<T>>;
/// Dense complex column vector.
pub type Vector<T> = DVector<Complex<T>>;

/// Real scalar type the toolkit is generic over (`f32`, `f64`).
///
/// Besides the field operations it carries the default tolerances suited to
/// the type's precision.
pub trait Real: RealField + Copy + ToPrimitive {
    /// Relative singular-value cutoff for numerical rank decisions.
    fn default_rank_tol() -> Self;
    /// Relative Frobenius tolerance for equality checks.
    fn default_eq_tol() -> Self;
    /// Dense-map residual accepted when certifying a decomposition.
    fn default_cert_tol() -> Self;

    /// Full SVD `m = u · diag(s) · v*`, `s` descending, of a possibly
    /// rectangular matrix.
    #[doc(hidden)]
    fn svd_kernel(m: &Mat<Self>) -> (Mat<Self>, Vec<Self>, Mat<Self>);

    /// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
    #[doc(hidden)]
    fn eigh_kernel(m: &Mat<Self>) -> (Vec<Self>, Mat<Self>);

    #[inline]
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

// nalgebra's complex SVD loses accuracy on rank-deficient blocks when
// singular vectors are requested, so the spectral kernels run on faer.
macro_rules! faer_kernels {
    () => {
        fn svd_kernel(m: &Mat<Self>) -> (Mat<Self>, Vec<Self>, Mat<Self>) {
            let a = faer::Mat::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)]);
            let dec = a.svd().expect("SVD converges on finite input");
            let (u, v) = (dec.U(), dec.V());
            let s = dec.S().column_vector().iter().map(|z| z.re).collect();
            (
                Mat::from_fn(u.nrows(), u.ncols(), |r, c| u[(r, c)]),
                s,
                Mat::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)]),
            )
        }

        fn eigh_kernel(m: &Mat<Self>) -> (Vec<Self>, Mat<Self>) {
            let a = faer::Mat::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)]);
            let dec = a
                .self_adjoint_eigen(faer::Side::Lower)
                .expect("Hermitian eigensolver converges on finite input");
            let u = dec.U();
            let vals = dec.S().column_vector().iter().map(|z| z.re).collect();
            (vals, Mat::from_fn(u.nrows(), u.ncols(), |r, c| u[(r, c)]))
        }
    };
}

impl Real for f64 {
    faer_kernels!();

    fn default_rank_tol() -> Self {
        1e-10
    }
    fn default_eq_tol() -> Self {
        1e-8
    }
    fn default_cert_tol() -> Self {
        1e-7
    }
}

impl Real for f32 {
    faer_kernels!();

    fn default_rank_tol() -> Self {
        1e-5
    }
    fn default_eq_tol() -> Self {
        1e-3
    }
    fn default_cert_tol() -> Self {
        1e-2
    }
}

/// Tolerances used by checks and certifications.
///
/// The rank cutoff is fixed per scalar type and is not part of this struct;
/// it is read from [`Real::default_rank_tol`] wherever a rank is decided.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// ε_eq: equality in Frobenius norm relative to operand scale.
    pub eq: T,
    /// ε_cert: dense-map residual for certification.
    pub cert: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            eq: T::default_eq_tol(),
            cert: T::default_cert_tol(),
        }
    }
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn ci<T: Real>(im: T) -> C<T> {
    Complex::new(T::zero(), im)
}
