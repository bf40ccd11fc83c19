//! Finite-dimensional von Neumann algebras as weighted multi-matrix algebras.
//!
//! An algebra is a direct sum `M_{n_1} ⊕ … ⊕ M_{n_k}` with the faithful trace
//! `τ(x) = Σ λ_i tr(x_i)`. Elements carry one dense complex block per summand.
//! The flat basis used by dense linear maps is the matrix-unit basis ordered
//! block-major, row-major within each block.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cr, Mat, Real, Tolerances, Vector, C};

/// One summand `M_n` with trace weight `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSpec<T> {
    pub dim: usize,
    pub weight: T,
}

/// Shared handle to an algebra descriptor.
pub type AlgebraRef<T> = Arc<MultiMatrixAlgebra<T>>;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiMatrixAlgebra<T> {
    blocks: Vec<BlockSpec<T>>,
    offsets: Vec<usize>,
    dimension: usize,
}

impl<T: Real> MultiMatrixAlgebra<T> {
    pub fn new(blocks: Vec<BlockSpec<T>>) -> Result<AlgebraRef<T>> {
        if blocks.is_empty() {
            return Err(Error::InvalidAlgebra("no blocks".into()));
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dimension = 0;
        for (i, b) in blocks.iter().enumerate() {
            if b.dim == 0 {
                return Err(Error::InvalidAlgebra(format!("block {i} has dimension 0")));
            }
            if !(b.weight > T::zero()) {
                return Err(Error::InvalidAlgebra(format!(
                    "block {i} has non-positive weight {}",
                    b.weight
                )));
            }
            offsets.push(dimension);
            dimension += b.dim * b.dim;
        }
        Ok(Arc::new(Self {
            blocks,
            offsets,
            dimension,
        }))
    }

    /// Builds an algebra from `(dim, weight)` pairs.
    pub fn from_pairs(pairs: &[(usize, f64)]) -> Result<AlgebraRef<T>> {
        Self::new(
            pairs
                .iter()
                .map(|&(dim, w)| BlockSpec {
                    dim,
                    weight: T::lit(w),
                })
                .collect(),
        )
    }

    /// The full matrix algebra `M_n` with unit weight.
    pub fn full_matrix(n: usize) -> Result<AlgebraRef<T>> {
        Self::from_pairs(&[(n, 1.0)])
    }

    pub fn blocks(&self) -> &[BlockSpec<T>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_dim(&self, i: usize) -> usize {
        self.blocks[i].dim
    }

    pub fn weight(&self, i: usize) -> T {
        self.blocks[i].weight
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    /// Complex dimension `Σ n_i²` of the algebra.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_abelian_block(&self, i: usize) -> bool {
        self.blocks[i].dim == 1
    }

    /// First flat basis index belonging to block `i`.
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn basis_index(&self, block: usize, row: usize, col: usize) -> usize {
        let n = self.blocks[block].dim;
        debug_assert!(row < n && col < n);
        self.offsets[block] + row * n + col
    }

    /// Inverse of [`basis_index`](Self::basis_index).
    pub fn basis_coords(&self, idx: usize) -> (usize, usize, usize) {
        assert!(idx < self.dimension, "basis index out of range");
        let block = match self.offsets.binary_search(&idx) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let n = self.blocks[block].dim;
        let local = idx - self.offsets[block];
        (block, local / n, local % n)
    }

    /// `τ(1) = Σ λ_i n_i`.
    pub fn unit_trace(&self) -> T {
        self.blocks
            .iter()
            .fold(T::zero(), |acc, b| acc + b.weight * T::lit(b.dim as f64))
    }

    /// `τ(x)`, checking that `x` belongs to this algebra.
    pub fn trace(&self, x: &AlgebraElement<T>) -> Result<C<T>> {
        if *self != *x.algebra {
            return Err(Error::ShapeMismatch(
                "element does not belong to this algebra".into(),
            ));
        }
        Ok(x.trace())
    }
}

pub(crate) fn same_algebra<T: Real>(a: &AlgebraRef<T>, b: &AlgebraRef<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same<T: Real>(a: &AlgebraRef<T>, b: &AlgebraRef<T>) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// An element `x = (x_1, …, x_k)` of a multi-matrix algebra.
#[derive(Clone, Debug)]
pub struct AlgebraElement<T: Real> {
    algebra: AlgebraRef<T>,
    blocks: Vec<Mat<T>>,
}

impl<T: Real> PartialEq for AlgebraElement<T> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.blocks == other.blocks
    }
}

impl<T: Real> AlgebraElement<T> {
    pub fn from_blocks(algebra: &AlgebraRef<T>, blocks: Vec<Mat<T>>) -> Result<Self> {
        if blocks.len() != algebra.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} blocks, got {}",
                algebra.num_blocks(),
                blocks.len()
            )));
        }
        for (i, (b, spec)) in blocks.iter().zip(algebra.blocks()).enumerate() {
            if b.nrows() != spec.dim || b.ncols() != spec.dim {
                return Err(Error::ShapeMismatch(format!(
                    "block {i} is {}x{}, expected {}x{}",
                    b.nrows(),
                    b.ncols(),
                    spec.dim,
                    spec.dim
                )));
            }
        }
        Ok(Self {
            algebra: algebra.clone(),
            blocks,
        })
    }

    pub fn from_fn(algebra: &AlgebraRef<T>, mut f: impl FnMut(usize, usize, usize) -> C<T>) -> Self {
        let blocks = algebra
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, b)| Mat::from_fn(b.dim, b.dim, |r, c| f(i, r, c)))
            .collect();
        Self {
            algebra: algebra.clone(),
            blocks,
        }
    }

    pub fn zero(algebra: &AlgebraRef<T>) -> Self {
        Self::from_fn(algebra, |_, _, _| C::new(T::zero(), T::zero()))
    }

    pub fn identity(algebra: &AlgebraRef<T>) -> Self {
        Self::from_fn(algebra, |_, r, c| {
            if r == c {
                cr(T::one())
            } else {
                cr(T::zero())
            }
        })
    }

    /// The matrix unit `e_{row,col}` of block `block`.
    pub fn matrix_unit(algebra: &AlgebraRef<T>, block: usize, row: usize, col: usize) -> Self {
        Self::from_fn(algebra, |i, r, c| {
            if i == block && r == row && c == col {
                cr(T::one())
            } else {
                cr(T::zero())
            }
        })
    }

    /// Per-block scalars `c_i · 1_i`; these are exactly the central elements.
    pub fn central(algebra: &AlgebraRef<T>, values: &[C<T>]) -> Self {
        assert_eq!(values.len(), algebra.num_blocks());
        Self::from_fn(algebra, |i, r, c| {
            if r == c {
                values[i]
            } else {
                cr(T::zero())
            }
        })
    }

    /// Reads an element from its coordinates in the flat matrix-unit basis.
    pub fn from_vector(algebra: &AlgebraRef<T>, v: &Vector<T>) -> Result<Self> {
        if v.len() != algebra.dimension() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for algebra of dimension {}",
                v.len(),
                algebra.dimension()
            )));
        }
        Ok(Self::from_fn(algebra, |i, r, c| {
            v[algebra.basis_index(i, r, c)]
        }))
    }

    pub fn to_vector(&self) -> Vector<T> {
        let mut v = Vector::zeros(self.algebra.dimension());
        for (i, b) in self.blocks.iter().enumerate() {
            let n = b.nrows();
            for r in 0..n {
                for c in 0..n {
                    v[self.algebra.basis_index(i, r, c)] = b[(r, c)];
                }
            }
        }
        v
    }

    pub fn algebra(&self) -> &AlgebraRef<T> {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Mat<T>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Mat<T> {
        &self.blocks[i]
    }

    pub fn into_blocks(self) -> Vec<Mat<T>> {
        self.blocks
    }

    /// Applies `f` to every block; `f` must preserve block shape.
    pub fn map_blocks(&self, mut f: impl FnMut(usize, &Mat<T>) -> Mat<T>) -> Self {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let out = f(i, b);
                debug_assert_eq!(out.shape(), b.shape());
                out
            })
            .collect();
        Self {
            algebra: self.algebra.clone(),
            blocks,
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map_blocks(|_, b| b.adjoint())
    }

    /// Blockwise transpose in the standard basis.
    pub fn transpose(&self) -> Self {
        self.map_blocks(|_, b| b.transpose())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map_blocks(|_, b| b * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(cr(s))
    }

    /// `τ(x) = Σ λ_i tr(x_i)`.
    pub fn trace(&self) -> C<T> {
        self.blocks
            .iter()
            .zip(self.algebra.blocks())
            .fold(cr(T::zero()), |acc, (b, spec)| acc + b.trace() * cr(spec.weight))
    }

    /// Unweighted Frobenius norm over all blocks; the scale used by equality checks.
    pub fn frobenius_norm(&self) -> T {
        self.blocks
            .iter()
            .fold(T::zero(), |acc, b| acc + b.norm_squared())
            .sqrt()
    }

    /// Operator norm: the largest block spectral norm.
    pub fn operator_norm(&self) -> T {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Frobenius distance to `other`.
    pub fn distance(&self, other: &Self) -> T {
        (self - other).frobenius_norm()
    }

    /// Frobenius equality relative to the operand scale `max(1, ‖x‖, ‖y‖)`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        if !same_algebra(&self.algebra, &other.algebra) {
            return false;
        }
        let scale = T::one()
            .max(self.frobenius_norm())
            .max(other.frobenius_norm());
        self.distance(other) <= tol * scale
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        let id = Self::identity(&self.algebra);
        (&self.adjoint() * self).approx_eq(&id, tol) && (self * &self.adjoint()).approx_eq(&id, tol)
    }

    /// `(xy + yx)/2`.
    pub fn jordan_product(&self, other: &Self) -> Result<Self> {
        ensure_same(&self.algebra, &other.algebra)?;
        let half = cr(T::lit(0.5));
        Ok(self.zip_blocks(other, |a, b| (a * b + b * a) * half))
    }

    pub(crate) fn zip_blocks(&self, other: &Self, mut f: impl FnMut(&Mat<T>, &Mat<T>) -> Mat<T>) -> Self {
        assert!(
            same_algebra(&self.algebra, &other.algebra),
            "operands belong to different algebras"
        );
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect();
        Self {
            algebra: self.algebra.clone(),
            blocks,
        }
    }

    /// Polar decomposition `x = v·|x|`, computed per block from the SVD.
    pub fn polar_decompose(&self) -> Polar<T> {
        let mut vs = Vec::with_capacity(self.blocks.len());
        let mut ms = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let dec = linalg::svd(b);
            let r = linalg::numerical_rank(&dec.s);
            let ur = dec.u.columns(0, r);
            let vr = dec.v.columns(0, r);
            vs.push(ur * vr.adjoint());
            let mut vsig = dec.v.clone();
            for (c, &s) in dec.s.iter().enumerate() {
                vsig.column_mut(c).scale_mut(s);
            }
            ms.push(vsig * dec.v.adjoint());
        }
        Polar {
            partial_isometry: Self {
                algebra: self.algebra.clone(),
                blocks: vs,
            },
            modulus: Self {
                algebra: self.algebra.clone(),
                blocks: ms,
            },
        }
    }

    /// `(s_ℓ(x), s_r(x))`: range projections of `xx*` and `x*x`.
    pub fn supports(&self) -> (Projection<T>, Projection<T>) {
        let mut left = Vec::with_capacity(self.blocks.len());
        let mut right = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let dec = linalg::svd(b);
            let r = linalg::numerical_rank(&dec.s);
            left.push(linalg::projector(&dec.u.columns(0, r).into_owned()));
            right.push(linalg::projector(&dec.v.columns(0, r).into_owned()));
        }
        (
            Projection(Self {
                algebra: self.algebra.clone(),
                blocks: left,
            }),
            Projection(Self {
                algebra: self.algebra.clone(),
                blocks: right,
            }),
        )
    }

    /// Blocks where the element is numerically nonzero.
    pub fn central_support(&self) -> CentralProjection {
        CentralProjection::new(
            self.blocks
                .iter()
                .map(|b| linalg::numerical_rank(&linalg::svd(b).s) > 0 && b.norm() > T::zero())
                .collect(),
        )
    }

    /// Smallest eigenvalue of the Hermitian part over all blocks.
    pub fn min_eigenvalue(&self) -> T {
        self.blocks
            .iter()
            .filter_map(|b| linalg::eigh(b).0.first().copied())
            .fold(T::max_value().unwrap_or(T::one()), |a, b| a.min(b))
    }

    /// Positive semidefinite within `tol` relative to the operator norm.
    pub fn is_positive(&self, tol: T) -> bool {
        self.is_hermitian(tol) && self.min_eigenvalue() >= -tol * T::one().max(self.operator_norm())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl<'a, T: Real> $tr<&'a AlgebraElement<T>> for &'a AlgebraElement<T> {
            type Output = AlgebraElement<T>;
            fn $f(self, rhs: &'a AlgebraElement<T>) -> AlgebraElement<T> {
                self.zip_blocks(rhs, |a, b| a $op b)
            }
        }
        impl<T: Real> $tr for AlgebraElement<T> {
            type Output = AlgebraElement<T>;
            fn $f(self, rhs: AlgebraElement<T>) -> AlgebraElement<T> {
                (&self).$f(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
// Block-diagonal matrix product.
binop!(Mul, mul, *);

impl<T: Real> Neg for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn neg(self) -> AlgebraElement<T> {
        self.map_blocks(|_, b| -b)
    }
}

impl<T: Real> fmt::Display for AlgebraElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            write!(f, "block {i}:{b}")?;
        }
        Ok(())
    }
}

/// `x = partial_isometry · modulus`.
#[derive(Clone, Debug)]
pub struct Polar<T: Real> {
    pub partial_isometry: AlgebraElement<T>,
    pub modulus: AlgebraElement<T>,
}

/// An orthogonal projection `q = q* = q²` of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection<T: Real>(AlgebraElement<T>);

impl<T: Real> Projection<T> {
    /// Validates `q = q* = q²` within `tol`, then re-symmetrizes and rounds
    /// the spectrum to {0, 1}.
    pub fn try_from_element(x: &AlgebraElement<T>, tol: T) -> Result<Self> {
        let scale = T::one().max(x.frobenius_norm());
        let sym = x.distance(&x.adjoint());
        let idem = x.distance(&(x * x));
        let residual = sym.max(idem);
        if residual > tol * scale {
            return Err(Error::NotAProjection {
                residual: residual.as_f64(),
            });
        }
        Ok(Self::rounded(x))
    }

    pub(crate) fn rounded(x: &AlgebraElement<T>) -> Self {
        Projection(x.map_blocks(|_, b| linalg::round_projection(b)))
    }

    /// Projection onto the span of per-block orthonormal column bases.
    pub(crate) fn from_bases(algebra: &AlgebraRef<T>, bases: &[Mat<T>]) -> Self {
        Projection(AlgebraElement {
            algebra: algebra.clone(),
            blocks: bases.iter().map(linalg::projector).collect(),
        })
    }

    /// Range projection of a positive semidefinite element.
    pub(crate) fn range_of(x: &AlgebraElement<T>) -> Self {
        Projection(x.map_blocks(|_, b| linalg::projector(&linalg::range_basis(b))))
    }

    pub fn zero(algebra: &AlgebraRef<T>) -> Self {
        Projection(AlgebraElement::zero(algebra))
    }

    pub fn identity(algebra: &AlgebraRef<T>) -> Self {
        Projection(AlgebraElement::identity(algebra))
    }

    pub fn element(&self) -> &AlgebraElement<T> {
        &self.0
    }

    pub fn into_element(self) -> AlgebraElement<T> {
        self.0
    }

    pub fn algebra(&self) -> &AlgebraRef<T> {
        self.0.algebra()
    }

    /// `1 − q`.
    pub fn complement(&self) -> Self {
        Projection(&AlgebraElement::identity(self.algebra()) - &self.0)
    }

    /// Orthonormal basis (columns) of the range of block `i`.
    pub fn range_basis(&self, i: usize) -> Mat<T> {
        let b = self.0.block(i);
        let (vals, vecs) = linalg::eigh(b);
        let keep: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > T::lit(0.5)).collect();
        Mat::from_fn(b.nrows(), keep.len(), |r, c| vecs[(r, keep[c])])
    }

    pub fn rank(&self, i: usize) -> usize {
        let t = self.0.block(i).trace().re;
        t.as_f64().round().max(0.0) as usize
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.algebra().num_blocks()).map(|i| self.rank(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks().iter().all(|&r| r == 0)
    }

    /// `p ∧ q`: projection onto `range(p) ∩ range(q)`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        ensure_same(self.algebra(), other.algebra())?;
        let bases: Vec<Mat<T>> = (0..self.algebra().num_blocks())
            .map(|i| linalg::intersect_ranges(&self.range_basis(i), &other.range_basis(i)))
            .collect();
        Ok(Self::from_bases(self.algebra(), &bases))
    }

    /// `p ∨ q = 1 − ((1 − p) ∧ (1 − q))`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        Ok(self.complement().meet(&other.complement())?.complement())
    }

    /// `p ≤ q`, tested as `qp = p`.
    pub fn is_le(&self, other: &Self, tol: T) -> bool {
        (&other.0 * &self.0).approx_eq(&self.0, tol)
    }

    /// `pq = 0`.
    pub fn is_orthogonal(&self, other: &Self, tol: T) -> bool {
        (&self.0 * &other.0).frobenius_norm() <= tol
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.0.approx_eq(&other.0, tol)
    }

    /// Mask of the blocks on which `q` is nonzero.
    pub fn central_support(&self) -> CentralProjection {
        CentralProjection::new(self.ranks().iter().map(|&r| r > 0).collect())
    }
}

/// A central projection: per block either 0 or the block identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralProjection {
    mask: Vec<bool>,
}

impl CentralProjection {
    pub fn new(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    pub fn all(num_blocks: usize) -> Self {
        Self::new(vec![true; num_blocks])
    }

    pub fn none(num_blocks: usize) -> Self {
        Self::new(vec![false; num_blocks])
    }

    /// The minimal central projection of block `i`.
    pub fn minimal(num_blocks: usize, i: usize) -> Self {
        let mut mask = vec![false; num_blocks];
        mask[i] = true;
        Self::new(mask)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn blocks(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn complement(&self) -> Self {
        Self::new(self.mask.iter().map(|m| !m).collect())
    }

    pub fn and(&self, other: &Self) -> Self {
        Self::new(self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect())
    }

    pub fn or(&self, other: &Self) -> Self {
        Self::new(self.mask.iter().zip(&other.mask).map(|(a, b)| *a || *b).collect())
    }

    pub fn is_orthogonal(&self, other: &Self) -> bool {
        self.and(other).is_none()
    }

    pub fn is_none(&self) -> bool {
        self.mask.iter().all(|m| !m)
    }

    pub fn is_all(&self) -> bool {
        self.mask.iter().all(|&m| m)
    }

    pub fn to_projection<T: Real>(&self, algebra: &AlgebraRef<T>) -> Projection<T> {
        assert_eq!(self.mask.len(), algebra.num_blocks());
        Projection(AlgebraElement::from_fn(algebra, |i, r, c| {
            if self.mask[i] && r == c {
                cr(T::one())
            } else {
                cr(T::zero())
            }
        }))
    }
}

impl<T: Real> Tolerances<T> {
    /// Scale-relative threshold `eq · max(1, scale)`.
    pub fn eq_at(&self, scale: T) -> T {
        self.eq * T::one().max(scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type A = MultiMatrixAlgebra<f64>;

    fn m2() -> AlgebraRef<f64> {
        A::full_matrix(2).unwrap()
    }

    fn unit(alg: &AlgebraRef<f64>, b: usize, r: usize, c: usize) -> AlgebraElement<f64> {
        AlgebraElement::matrix_unit(alg, b, r, c)
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(A::from_pairs(&[(0, 1.0)]).is_err());
        assert!(A::from_pairs(&[(2, 0.0)]).is_err());
        assert!(A::from_pairs(&[(2, -1.0)]).is_err());
        assert!(A::from_pairs(&[]).is_err());
    }

    #[test]
    fn weighted_trace_of_identity() {
        let a = m2();
        assert_eq!(a.trace(&AlgebraElement::identity(&a)).unwrap(), cr(2.0));
        let b = A::from_pairs(&[(2, 3.0), (1, 1.0)]).unwrap();
        assert_eq!(b.trace(&AlgebraElement::identity(&b)).unwrap(), cr(7.0));
        assert_eq!(b.trace(&AlgebraElement::zero(&b)).unwrap(), cr(0.0));
        assert!(b.trace(&AlgebraElement::identity(&a)).is_err());
    }

    #[test]
    fn basis_coordinates_round_trip() {
        let a = A::from_pairs(&[(2, 1.0), (1, 0.5), (3, 2.0)]).unwrap();
        assert_eq!(a.dimension(), 14);
        for idx in 0..a.dimension() {
            let (b, r, c) = a.basis_coords(idx);
            assert_eq!(a.basis_index(b, r, c), idx);
        }
        assert_eq!(a.basis_coords(4), (1, 0, 0));
    }

    #[test]
    fn jordan_product_of_matrix_units() {
        let a = m2();
        let id = AlgebraElement::identity(&a);
        assert_eq!(id.jordan_product(&id).unwrap(), id);
        let z = unit(&a, 0, 0, 0).jordan_product(&unit(&a, 0, 1, 1)).unwrap();
        assert_eq!(z.frobenius_norm(), 0.0);
        let h = unit(&a, 0, 0, 1).jordan_product(&unit(&a, 0, 1, 0)).unwrap();
        assert!(h.approx_eq(&id.scale_real(0.5), 1e-15));
    }

    #[test]
    fn polar_of_nilpotent() {
        let a = m2();
        let x = unit(&a, 0, 0, 1).scale_real(2.0);
        let pol = x.polar_decompose();
        assert!(pol.partial_isometry.approx_eq(&unit(&a, 0, 0, 1), 1e-12));
        assert!(pol.modulus.approx_eq(&unit(&a, 0, 1, 1).scale_real(2.0), 1e-12));
    }

    #[test]
    fn polar_of_positive_and_unitary() {
        let a = m2();
        let x = unit(&a, 0, 0, 0).scale_real(3.0);
        let pol = x.polar_decompose();
        assert!(pol.partial_isometry.approx_eq(&unit(&a, 0, 0, 0), 1e-12));
        assert!(pol.modulus.approx_eq(&x, 1e-12));
        let u = &unit(&a, 0, 0, 1) + &unit(&a, 0, 1, 0);
        let pol = u.polar_decompose();
        assert!(pol.partial_isometry.approx_eq(&u, 1e-12));
        assert!(pol.modulus.approx_eq(&AlgebraElement::identity(&a), 1e-12));
        let z = AlgebraElement::zero(&a).polar_decompose();
        assert_eq!(z.partial_isometry.frobenius_norm(), 0.0);
        assert_eq!(z.modulus.frobenius_norm(), 0.0);
    }

    #[test]
    fn supports_of_matrix_unit() {
        let a = m2();
        let (l, r) = unit(&a, 0, 0, 1).supports();
        assert!(l.element().approx_eq(&unit(&a, 0, 0, 0), 1e-12));
        assert!(r.element().approx_eq(&unit(&a, 0, 1, 1), 1e-12));
        let (l, r) = AlgebraElement::identity(&a).scale_real(5.0).supports();
        assert!(l.approx_eq(&Projection::identity(&a), 1e-12));
        assert!(r.approx_eq(&Projection::identity(&a), 1e-12));
        let (l, r) = AlgebraElement::zero(&a).supports();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn meet_examples() {
        let a = m2();
        let e11 = Projection::try_from_element(&unit(&a, 0, 0, 0), 1e-8).unwrap();
        let e22 = Projection::try_from_element(&unit(&a, 0, 1, 1), 1e-8).unwrap();
        assert!(e11.meet(&e11).unwrap().approx_eq(&e11, 1e-12));
        assert!(e11.meet(&e22).unwrap().is_zero());
        let diag = AlgebraElement::from_fn(&a, |_, _, _| cr(0.5));
        let d = Projection::try_from_element(&diag, 1e-8).unwrap();
        assert!(e11.meet(&d).unwrap().is_zero());
        assert!(e11.join(&e22).unwrap().approx_eq(&Projection::identity(&a), 1e-12));
        assert!(e11.join(&d).unwrap().approx_eq(&Projection::identity(&a), 1e-12));
    }

    #[test]
    fn central_support_examples() {
        let a = A::from_pairs(&[(2, 1.0), (1, 1.0)]).unwrap();
        assert!(Projection::identity(&a).central_support().is_all());
        let q = Projection::try_from_element(&unit(&a, 0, 0, 0), 1e-8).unwrap();
        assert_eq!(q.central_support().mask(), &[true, false]);
        assert!(Projection::zero(&a).central_support().is_none());
        assert!(Projection::try_from_element(&unit(&a, 0, 0, 1), 1e-8).is_err());
    }
}
