//! Dense complex-linear maps between multi-matrix algebras.
//!
//! Matrices act on coordinates in the matrix-unit basis (block-major,
//! row-major within each block); column `k` is the image of basis element `k`.

use crate::algebra::{ensure_same, AlgebraElement, AlgebraRef};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cr, Mat, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<T: Real> {
    source: AlgebraRef<T>,
    target: AlgebraRef<T>,
    matrix: Mat<T>,
}

impl<T: Real> LinearMap<T> {
    pub fn new(source: &AlgebraRef<T>, target: &AlgebraRef<T>, matrix: Mat<T>) -> Result<Self> {
        if matrix.nrows() != target.dimension() || matrix.ncols() != source.dimension() {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.dimension(),
                source.dimension()
            )));
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    /// Tabulates `f` on the matrix units of `source`.
    pub fn from_fn(
        source: &AlgebraRef<T>,
        target: &AlgebraRef<T>,
        mut f: impl FnMut(&AlgebraElement<T>) -> AlgebraElement<T>,
    ) -> Self {
        let d = source.dimension();
        let mut matrix = Mat::zeros(target.dimension(), d);
        for k in 0..d {
            let (b, r, c) = source.basis_coords(k);
            let img = f(&AlgebraElement::matrix_unit(source, b, r, c));
            matrix.set_column(k, &img.to_vector());
        }
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(algebra: &AlgebraRef<T>) -> Self {
        let d = algebra.dimension();
        Self {
            source: algebra.clone(),
            target: algebra.clone(),
            matrix: Mat::identity(d, d),
        }
    }

    pub fn source(&self) -> &AlgebraRef<T> {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef<T> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }

    pub fn apply(&self, x: &AlgebraElement<T>) -> Result<AlgebraElement<T>> {
        ensure_same(&self.source, x.algebra())?;
        AlgebraElement::from_vector(&self.target, &(&self.matrix * x.to_vector()))
    }

    /// Image of the basis element with flat index `k`.
    pub fn column_element(&self, k: usize) -> AlgebraElement<T> {
        AlgebraElement::from_vector(&self.target, &self.matrix.column(k).into_owned())
            .expect("column length equals target dimension")
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            matrix: &self.matrix * cr(s),
            ..self.clone()
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        ensure_same(&inner.target, &self.source)?;
        Ok(Self {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &inner.matrix,
        })
    }

    /// `x ↦ w · L(x)` for `w` in the target.
    pub fn left_multiplied(&self, w: &AlgebraElement<T>) -> Result<Self> {
        ensure_same(&self.target, w.algebra())?;
        let mut out = self.clone();
        for k in 0..self.source.dimension() {
            let img = w * &self.column_element(k);
            out.matrix.set_column(k, &img.to_vector());
        }
        Ok(out)
    }

    pub fn is_bijective(&self) -> bool {
        if self.matrix.nrows() != self.matrix.ncols() {
            return false;
        }
        let s = linalg::svd(&self.matrix).s;
        linalg::numerical_rank(&s) == s.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let inv = self.matrix.clone().try_inverse().ok_or(Error::NotBijective)?;
        Ok(Self {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }

    /// Adjoint with respect to the trace pairings:
    /// `τ_target(L(ξ)·y) = τ_source(ξ·L*(y))`.
    pub fn trace_adjoint(&self) -> Self {
        let (s, t) = (&self.source, &self.target);
        let m = Mat::from_fn(s.dimension(), t.dimension(), |row, col| {
            let (i, a, b) = s.basis_coords(row);
            let (j, c, d) = t.basis_coords(col);
            let ratio = t.weight(j) / s.weight(i);
            self.matrix[(t.basis_index(j, d, c), s.basis_index(i, b, a))] * cr(ratio)
        });
        Self {
            source: t.clone(),
            target: s.clone(),
            matrix: m,
        }
    }

    /// Frobenius distance between the dense matrices.
    pub fn distance(&self, other: &Self) -> Result<T> {
        ensure_same(&self.source, &other.source)?;
        ensure_same(&self.target, &other.target)?;
        Ok((&self.matrix - &other.matrix).norm())
    }
}
