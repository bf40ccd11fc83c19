//! Corners `q₁ L^p q₂` and orthocomplements.

use crate::algebra::{ensure_same, AlgebraElement, AlgebraRef, CentralProjection, Projection};
use crate::error::Result;
use crate::lp::{semi_inner_product, Exponent, LpVector};
use crate::scalar::{Mat, Real};

use nalgebra::ComplexField;

/// The subspace `q₁ L^p q₂`, stored with `q₁` and `q₂` of equal central support.
#[derive(Clone, Debug, PartialEq)]
pub struct Corner<T: Real> {
    left: Projection<T>,
    right: Projection<T>,
    p: Exponent<T>,
}

impl<T: Real> Corner<T> {
    /// Normalizes to the canonical form: a block where either projection
    /// vanishes contributes nothing, so both are zeroed there.
    pub fn new(left: Projection<T>, right: Projection<T>, p: Exponent<T>) -> Result<Self> {
        ensure_same(left.algebra(), right.algebra())?;
        let common = left.central_support().and(&right.central_support());
        let keep = |q: &Projection<T>| {
            let c = common.to_projection(q.algebra());
            Projection::rounded(&(c.element() * q.element()))
        };
        Ok(Self {
            left: keep(&left),
            right: keep(&right),
            p,
        })
    }

    pub fn full(algebra: &AlgebraRef<T>, p: Exponent<T>) -> Self {
        Self {
            left: Projection::identity(algebra),
            right: Projection::identity(algebra),
            p,
        }
    }

    pub fn zero(algebra: &AlgebraRef<T>, p: Exponent<T>) -> Self {
        Self {
            left: Projection::zero(algebra),
            right: Projection::zero(algebra),
            p,
        }
    }

    /// The column `L^p q`.
    pub fn column(q: Projection<T>, p: Exponent<T>) -> Self {
        let one = Projection::identity(q.algebra());
        Self::new(one, q, p).expect("same algebra")
    }

    /// The row `q L^p`.
    pub fn row(q: Projection<T>, p: Exponent<T>) -> Self {
        let one = Projection::identity(q.algebra());
        Self::new(q, one, p).expect("same algebra")
    }

    pub fn left(&self) -> &Projection<T> {
        &self.left
    }

    pub fn right(&self) -> &Projection<T> {
        &self.right
    }

    pub fn p(&self) -> Exponent<T> {
        self.p
    }

    pub fn algebra(&self) -> &AlgebraRef<T> {
        self.left.algebra()
    }

    pub fn dimension(&self) -> usize {
        self.left
            .ranks()
            .iter()
            .zip(self.right.ranks())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Rank-one basis `u_a v_b*` from orthonormal range bases of `q₁`, `q₂`.
    pub fn basis(&self) -> Vec<LpVector<T>> {
        let alg = self.algebra();
        let mut out = Vec::with_capacity(self.dimension());
        for i in 0..alg.num_blocks() {
            let u = self.left.range_basis(i);
            let v = self.right.range_basis(i);
            for a in 0..u.ncols() {
                for b in 0..v.ncols() {
                    let blk: Mat<T> = u.column(a) * v.column(b).adjoint();
                    let el = AlgebraElement::from_fn(alg, |k, r, c| {
                        if k == i {
                            blk[(r, c)]
                        } else {
                            crate::scalar::cr(T::zero())
                        }
                    });
                    out.push(LpVector::new(el, self.p));
                }
            }
        }
        out
    }

    /// `‖ξ − q₁ξq₂‖_F`, zero iff `ξ` lies in the corner.
    pub fn residual(&self, xi: &AlgebraElement<T>) -> T {
        let proj = &(self.left.element() * xi) * self.right.element();
        xi.distance(&proj)
    }

    pub fn central_support(&self) -> CentralProjection {
        self.left.central_support()
    }

    pub fn is_column(&self, tol: T) -> bool {
        self.left.approx_eq(&Projection::identity(self.algebra()), tol)
    }

    pub fn is_row(&self, tol: T) -> bool {
        self.right.approx_eq(&Projection::identity(self.algebra()), tol)
    }

    /// `L^p z` for a central projection `z`.
    pub fn is_central_summand(&self, tol: T) -> bool {
        let z = self.central_support().to_projection(self.algebra());
        self.left.approx_eq(&z, tol) && self.right.approx_eq(&z, tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.left.approx_eq(&other.left, tol) && self.right.approx_eq(&other.right, tol)
    }
}

/// `S^⊥ = (1 − ∨ s_ℓ(ξ)) L^p (1 − ∨ s_r(ξ))`, the set of vectors orthogonal
/// to every element of `S`.
pub fn orthocomplement<T: Real>(
    algebra: &AlgebraRef<T>,
    p: Exponent<T>,
    set: &[LpVector<T>],
) -> Result<Corner<T>> {
    let mut left_sum = AlgebraElement::zero(algebra);
    let mut right_sum = AlgebraElement::zero(algebra);
    for xi in set {
        ensure_same(algebra, xi.algebra())?;
        let (l, r) = xi.supports();
        left_sum = &left_sum + l.element();
        right_sum = &right_sum + r.element();
    }
    // The join of projections is the range projection of their sum.
    let left = Projection::range_of(&left_sum);
    let right = Projection::range_of(&right_sum);
    Corner::new(left.complement(), right.complement(), p)
}

/// `max |[ξ, η]| / (‖ξ‖‖η‖)` over basis pairs `ξ ∈ a`, `η ∈ b`.
pub fn max_cross_sip<T: Real>(a: &Corner<T>, b: &Corner<T>) -> Result<T> {
    ensure_same(a.algebra(), b.algebra())?;
    let eta: Vec<LpVector<T>> = b.basis();
    let mut worst = T::zero();
    for xi in a.basis() {
        for e in &eta {
            let s = semi_inner_product(&xi, e)?;
            worst = worst.max(s.modulus() / (xi.norm() * e.norm()));
        }
    }
    Ok(worst)
}

/// Central supports of `p₁q₁` and `p₂q₂` for corners `p₁ L^p p₂` and
/// `q₁ L^p q₂`. A block counts when the product exceeds `tol` in Frobenius norm.
pub fn product_central_supports<T: Real>(
    a: &Corner<T>,
    b: &Corner<T>,
    tol: T,
) -> Result<(CentralProjection, CentralProjection)> {
    ensure_same(a.algebra(), b.algebra())?;
    let support = |x: &Projection<T>, y: &Projection<T>| {
        let prod = x.element() * y.element();
        CentralProjection::new(prod.blocks().iter().map(|m| m.norm() > tol).collect())
    };
    Ok((support(a.left(), b.left()), support(a.right(), b.right())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiMatrixAlgebra;
    use crate::lp::is_orthogonal_algebraic;

    fn p3() -> Exponent<f64> {
        Exponent::Finite(3.0)
    }

    #[test]
    fn orthocomplement_of_matrix_unit() {
        let a = MultiMatrixAlgebra::<f64>::full_matrix(2).unwrap();
        let e12 = LpVector::new(AlgebraElement::matrix_unit(&a, 0, 0, 1), p3());
        let c = orthocomplement(&a, p3(), &[e12.clone()]).unwrap();
        let e22 = Projection::try_from_element(&AlgebraElement::matrix_unit(&a, 0, 1, 1), 1e-8).unwrap();
        let e11 = Projection::try_from_element(&AlgebraElement::matrix_unit(&a, 0, 0, 0), 1e-8).unwrap();
        assert!(c.left().approx_eq(&e22, 1e-12));
        assert!(c.right().approx_eq(&e11, 1e-12));
        assert_eq!(c.dimension(), 1);
        for b in c.basis() {
            assert!(is_orthogonal_algebraic(&b, &e12, 1e-10));
        }
    }

    #[test]
    fn empty_and_spanning_sets() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(2, 1.0), (1, 2.0)]).unwrap();
        let c = orthocomplement(&a, p3(), &[]).unwrap();
        assert!(c.approx_eq(&Corner::full(&a, p3()), 1e-12));
        let full = Corner::full(&a, p3()).basis();
        assert_eq!(full.len(), 5);
        let c = orthocomplement(&a, p3(), &full).unwrap();
        assert_eq!(c.dimension(), 0);
    }

    #[test]
    fn canonical_form_drops_half_empty_blocks() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(2, 1.0), (2, 1.0)]).unwrap();
        let q1 = CentralProjection::new(vec![true, true]).to_projection(&a);
        let q2 = CentralProjection::new(vec![true, false]).to_projection(&a);
        let c = Corner::new(q1, q2.clone(), p3()).unwrap();
        assert!(c.left().approx_eq(&q2, 1e-12));
        assert!(c.is_central_summand(1e-12));
        assert_eq!(c.central_support().mask(), &[true, false]);
    }

    #[test]
    fn sip_vanishing_corners_have_centrally_orthogonal_products() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(2, 1.0), (1, 3.0)]).unwrap();
        let e = |b, r| Projection::try_from_element(&AlgebraElement::matrix_unit(&a, b, r, r), 1e-8).unwrap();
        let c1 = Corner::new(e(0, 0), e(0, 0), p3()).unwrap();
        let c2 = Corner::new(e(0, 1), e(0, 1), p3()).unwrap();
        assert!(max_cross_sip(&c1, &c2).unwrap() < 1e-14);
        let (x1, x2) = product_central_supports(&c1, &c2, 1e-8).unwrap();
        assert!(x1.is_orthogonal(&x2));
        let c3 = Corner::new(e(0, 0), e(0, 1), p3()).unwrap();
        assert!(max_cross_sip(&c1, &Corner::full(&a, p3())).unwrap() > 0.1);
        let (y1, y2) = product_central_supports(&c3, &c3, 1e-8).unwrap();
        assert!(!y1.is_orthogonal(&y2));
    }
}
