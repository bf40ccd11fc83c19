//! The L^p space of a multi-matrix algebra.
//!
//! In finite dimensions `L^p(M)` coincides with `M` as a set; only the norm
//! `‖ξ‖_p = τ(|ξ|^p)^{1/p}` changes with `p`. Positive elements are the `p`th
//! roots `φ^{1/p} = h^{1/p}` of densities `h` of positive functionals
//! `φ(x) = τ(hx)`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{ensure_same, AlgebraElement, AlgebraRef, Projection};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{ci, cr, Real, C};

/// An exponent `p ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> Exponent<T> {
    pub fn new(p: T) -> Result<Self> {
        if p.is_finite() && p >= T::one() {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::InvalidExponent(format!("{p} is outside [1, inf]")))
        }
    }

    pub fn from_f64(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(Exponent::Infinity)
        } else {
            Self::new(T::lit(p))
        }
    }

    pub fn finite_value(self) -> Option<T> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn is_two(self) -> bool {
        match self {
            Exponent::Finite(p) => (p - T::lit(2.0)).abs() <= T::default_eq_tol(),
            Exponent::Infinity => false,
        }
    }

    /// `1/p`, zero at infinity.
    pub fn reciprocal(self) -> T {
        match self {
            Exponent::Finite(p) => T::one() / p,
            Exponent::Infinity => T::zero(),
        }
    }

    /// The Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::Finite(T::one()),
            Exponent::Finite(p) if p == T::one() => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - T::one())),
        }
    }

    pub fn is_conjugate_to(self, other: Self) -> bool {
        let s = self.reciprocal() + other.reciprocal();
        (s - T::one()).abs() <= T::lit(1e3) * T::default_epsilon()
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p.as_f64(),
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// Rejects the exponents excluded from the structural theory (`2`, `∞`).
    pub(crate) fn require_structural(self, what: &str) -> Result<T> {
        match self {
            Exponent::Infinity => Err(Error::InvalidExponent(format!("{what} requires p < inf"))),
            _ if self.is_two() => Err(Error::InvalidExponent(format!("{what} excludes p = 2"))),
            Exponent::Finite(p) => Ok(p),
        }
    }
}

impl<T: Real> fmt::Display for Exponent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl<T: Real> FromStr for Exponent<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidExponent(format!("cannot parse {t:?}")))?;
                Self::from_f64(p)
            }
        }
    }
}

/// `Σ_i λ_i Σ σ^p` computed after scaling by `s = max σ`; returns `(s, sum)`
/// with `τ(|x|^p) = s^p · sum`.
fn scaled_schatten<T: Real>(x: &AlgebraElement<T>, p: T) -> (T, T) {
    let s = x.operator_norm();
    if s <= T::zero() {
        return (T::zero(), T::zero());
    }
    let inv = T::one() / s;
    let sum = x
        .blocks()
        .iter()
        .zip(x.algebra().blocks())
        .fold(T::zero(), |acc, (b, spec)| {
            acc + spec.weight * linalg::schatten_sum(&(b * cr(inv)), p)
        });
    (s, sum)
}

/// An element of `L^p(M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpVector<T: Real> {
    element: AlgebraElement<T>,
    p: Exponent<T>,
}

impl<T: Real> LpVector<T> {
    pub fn new(element: AlgebraElement<T>, p: Exponent<T>) -> Self {
        Self { element, p }
    }

    pub fn zero(algebra: &AlgebraRef<T>, p: Exponent<T>) -> Self {
        Self::new(AlgebraElement::zero(algebra), p)
    }

    pub fn element(&self) -> &AlgebraElement<T> {
        &self.element
    }

    pub fn into_element(self) -> AlgebraElement<T> {
        self.element
    }

    pub fn p(&self) -> Exponent<T> {
        self.p
    }

    pub fn algebra(&self) -> &AlgebraRef<T> {
        self.element.algebra()
    }

    pub fn with_element(&self, element: AlgebraElement<T>) -> Self {
        Self::new(element, self.p)
    }

    /// `‖ξ‖_p = τ(|ξ|^p)^{1/p}`; the operator norm at `p = ∞`.
    pub fn norm(&self) -> T {
        match self.p {
            Exponent::Infinity => self.element.operator_norm(),
            Exponent::Finite(p) => {
                let (s, sum) = scaled_schatten(&self.element, p);
                if s == T::zero() {
                    T::zero()
                } else {
                    s * sum.powf(T::one() / p)
                }
            }
        }
    }

    /// `τ(|ξ|^p)` for finite `p`.
    pub fn norm_pow(&self) -> Result<T> {
        let p = self
            .p
            .finite_value()
            .ok_or_else(|| Error::InvalidExponent("norm power needs p < inf".into()))?;
        let (s, sum) = scaled_schatten(&self.element, p);
        Ok(if s == T::zero() { T::zero() } else { s.powf(p) * sum })
    }

    pub fn supports(&self) -> (Projection<T>, Projection<T>) {
        self.element.supports()
    }

    fn combine(&self, other: &Self, sign: T) -> Result<Self> {
        ensure_same(self.algebra(), other.algebra())?;
        if self.p != other.p {
            return Err(Error::ExponentMismatch {
                p: self.p.to_string(),
                q: other.p.to_string(),
            });
        }
        Ok(self.with_element(&self.element + &other.element.scale_real(sign)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, T::one())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -T::one())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.with_element(self.element.scale(s))
    }
}

/// A positive functional `φ(x) = τ(hx)` given by its density `h ⪰ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveFunctional<T: Real> {
    density: AlgebraElement<T>,
}

impl<T: Real> PositiveFunctional<T> {
    /// Accepts `h` if it is positive semidefinite within `tol`; the stored
    /// density is the Hermitian part of `h`.
    pub fn new(density: AlgebraElement<T>, tol: T) -> Result<Self> {
        if !density.is_hermitian(tol) {
            return Err(Error::NotPositive {
                min_eigenvalue: f64::NAN,
            });
        }
        let min = density.min_eigenvalue();
        if min < -tol * T::one().max(density.operator_norm()) {
            return Err(Error::NotPositive {
                min_eigenvalue: min.as_f64(),
            });
        }
        let herm = density.map_blocks(|_, b| linalg::hermitian_part(b));
        Ok(Self { density: herm })
    }

    pub(crate) fn new_unchecked(density: AlgebraElement<T>) -> Self {
        Self { density }
    }

    pub fn zero(algebra: &AlgebraRef<T>) -> Self {
        Self {
            density: AlgebraElement::zero(algebra),
        }
    }

    pub fn density(&self) -> &AlgebraElement<T> {
        &self.density
    }

    pub fn algebra(&self) -> &AlgebraRef<T> {
        self.density.algebra()
    }

    /// `φ(x) = τ(hx)`.
    pub fn evaluate(&self, x: &AlgebraElement<T>) -> Result<C<T>> {
        ensure_same(self.algebra(), x.algebra())?;
        Ok((&self.density * x).trace())
    }

    /// `φ(1) = τ(h)`.
    pub fn total_mass(&self) -> T {
        self.density.trace().re
    }

    /// `φ^{1/p} = h^{1/p}` by spectral calculus (eigenvalues clamped at 0).
    pub fn pth_root(&self, p: Exponent<T>) -> Result<LpVector<T>> {
        let pv = p
            .finite_value()
            .ok_or_else(|| Error::InvalidExponent("pth root needs p < inf".into()))?;
        let e = T::one() / pv;
        Ok(LpVector::new(
            self.density.map_blocks(|_, b| linalg::psd_power(b, e)),
            p,
        ))
    }
}

/// `Tr(ξη) = τ(ξη)` for `ξ ∈ L^p`, `η ∈ L^q`, `1/p + 1/q = 1`.
pub fn haagerup_pair<T: Real>(xi: &LpVector<T>, eta: &LpVector<T>) -> Result<C<T>> {
    ensure_same(xi.algebra(), eta.algebra())?;
    if !xi.p.is_conjugate_to(eta.p) {
        return Err(Error::ExponentMismatch {
            p: xi.p.to_string(),
            q: eta.p.to_string(),
        });
    }
    Ok((&xi.element * &eta.element).trace())
}

/// `‖ξ+η‖^p + ‖ξ−η‖^p − 2(‖ξ‖^p + ‖η‖^p)`; zero exactly for orthogonal pairs.
pub fn clarkson_defect<T: Real>(xi: &LpVector<T>, eta: &LpVector<T>) -> Result<T> {
    xi.p.require_structural("Clarkson defect")?;
    let sum = xi.try_add(eta)?.norm_pow()?;
    let diff = xi.try_sub(eta)?.norm_pow()?;
    Ok(sum + diff - T::lit(2.0) * (xi.norm_pow()? + eta.norm_pow()?))
}

/// `ξη* = ξ*η = 0`, tested as `max(‖ξη*‖, ‖ξ*η‖) ≤ tol · ‖ξ‖‖η‖` in operator norm.
pub fn is_orthogonal_algebraic<T: Real>(xi: &LpVector<T>, eta: &LpVector<T>, tol: T) -> bool {
    let a = &xi.element;
    let b = &eta.element;
    let lhs = (a * &b.adjoint()).operator_norm().max((&a.adjoint() * b).operator_norm());
    lhs <= tol * a.operator_norm() * b.operator_norm()
}

/// The element `ζ ∈ L^q` with `φ_η(ξ) = Tr(ξζ)`:
/// `ζ = |η|^{p−1} v* · ‖η‖^{2−p}` where `η = v|η|`.
pub fn duality_representative<T: Real>(eta: &LpVector<T>) -> Result<LpVector<T>> {
    let p = match eta.p {
        Exponent::Finite(p) if p > T::one() => p,
        other => {
            return Err(Error::InvalidExponent(format!(
                "semi-inner product needs 1 < p < inf, got {other}"
            )))
        }
    };
    let q = eta.p.conjugate();
    let norm = eta.norm();
    if norm == T::zero() {
        return Ok(LpVector::zero(eta.algebra(), q));
    }
    // Work with η/‖η‖ so the power never under- or overflows:
    // |η|^{p−1} v* ‖η‖^{2−p} = ‖η‖ · |η̂|^{p−1} v*.
    let inv = cr(T::one() / norm);
    let zeta = eta.element.map_blocks(|_, b| {
        let dec = linalg::svd(&(b * inv));
        let r = linalg::numerical_rank(&dec.s);
        let mut vs = dec.v.columns(0, r).into_owned();
        for (c, &s) in dec.s.iter().take(r).enumerate() {
            vs.column_mut(c).scale_mut(s.powf(p - T::one()));
        }
        vs * dec.u.columns(0, r).adjoint() * cr(norm)
    });
    Ok(LpVector::new(zeta, q))
}

/// `[ξ, η] = φ_η(ξ)`, the semi-inner product of the smooth space `L^p`.
pub fn semi_inner_product<T: Real>(xi: &LpVector<T>, eta: &LpVector<T>) -> Result<C<T>> {
    ensure_same(xi.algebra(), eta.algebra())?;
    if xi.p != eta.p {
        return Err(Error::ExponentMismatch {
            p: xi.p.to_string(),
            q: eta.p.to_string(),
        });
    }
    let zeta = duality_representative(eta)?;
    haagerup_pair(xi, &zeta)
}

/// `ξ = Σ c_k (φ_k)^{1/p}` with `c = (1, −1, i, −i)`.
#[derive(Clone, Debug)]
pub struct PositiveDecomposition<T: Real> {
    pub functionals: [PositiveFunctional<T>; 4],
    pub p: Exponent<T>,
}

impl<T: Real> PositiveDecomposition<T> {
    pub fn coefficients() -> [C<T>; 4] {
        [cr(T::one()), cr(-T::one()), ci(T::one()), ci(-T::one())]
    }

    pub fn reconstruct(&self) -> Result<LpVector<T>> {
        let alg = self.functionals[0].algebra();
        let mut acc = AlgebraElement::zero(alg);
        for (f, c) in self.functionals.iter().zip(Self::coefficients()) {
            acc = &acc + &f.pth_root(self.p)?.element.scale(c);
        }
        Ok(LpVector::new(acc, self.p))
    }
}

/// Splits `ξ = a + ib` into self-adjoint parts and each of those into
/// positive and negative spectral parts.
pub fn decompose_into_positives<T: Real>(xi: &LpVector<T>) -> Result<PositiveDecomposition<T>> {
    let p = xi
        .p
        .finite_value()
        .ok_or_else(|| Error::InvalidExponent("decomposition needs p < inf".into()))?;
    let x = &xi.element;
    let a = (x + &x.adjoint()).scale_real(T::lit(0.5));
    let b = (x - &x.adjoint()).scale(C::new(T::zero(), -T::lit(0.5)));
    let part = |h: &AlgebraElement<T>, sign: T| {
        PositiveFunctional::new_unchecked(h.map_blocks(|_, m| {
            linalg::hermitian_calculus(m, |lam| {
                let v = sign * lam;
                if v > T::zero() {
                    v.powf(p)
                } else {
                    T::zero()
                }
            })
        }))
    };
    Ok(PositiveDecomposition {
        functionals: [
            part(&a, T::one()),
            part(&a, -T::one()),
            part(&b, T::one()),
            part(&b, -T::one()),
        ],
        p: xi.p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiMatrixAlgebra;

    type A = MultiMatrixAlgebra<f64>;

    fn fin(p: f64) -> Exponent<f64> {
        Exponent::from_f64(p).unwrap()
    }

    fn unit(alg: &AlgebraRef<f64>, r: usize, c: usize) -> AlgebraElement<f64> {
        AlgebraElement::matrix_unit(alg, 0, r, c)
    }

    #[test]
    fn exponent_parsing_and_conjugates() {
        assert_eq!("inf".parse::<Exponent<f64>>().unwrap(), Exponent::Infinity);
        assert_eq!("3".parse::<Exponent<f64>>().unwrap(), fin(3.0));
        assert!("0.5".parse::<Exponent<f64>>().is_err());
        assert!("abc".parse::<Exponent<f64>>().is_err());
        assert_eq!(fin(1.0).conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::<f64>::Infinity.conjugate(), fin(1.0));
        assert!((fin(3.0).conjugate().finite_value().unwrap() - 1.5).abs() < 1e-15);
        assert!(fin(4.0).is_conjugate_to(fin(4.0).conjugate()));
    }

    #[test]
    fn norm_examples() {
        let a = A::full_matrix(2).unwrap();
        let id = LpVector::new(AlgebraElement::identity(&a), fin(3.0));
        assert!((id.norm() - 2f64.powf(1.0 / 3.0)).abs() < 1e-14);
        let b = A::from_pairs(&[(1, 1.0), (1, 1.0)]).unwrap();
        let d = AlgebraElement::central(&b, &[cr(3.0), cr(4.0)]);
        assert!((LpVector::new(d.clone(), fin(1.0)).norm() - 7.0).abs() < 1e-14);
        assert!((LpVector::new(d, Exponent::Infinity).norm() - 4.0).abs() < 1e-14);
        assert_eq!(LpVector::zero(&a, fin(3.0)).norm(), 0.0);
    }

    #[test]
    fn pth_root_of_diagonal_density() {
        let b = A::from_pairs(&[(1, 1.0), (1, 1.0)]).unwrap();
        let h = AlgebraElement::central(&b, &[cr(16.0), cr(81.0)]);
        let phi = PositiveFunctional::new(h, 1e-8).unwrap();
        let root = phi.pth_root(fin(4.0)).unwrap();
        let want = AlgebraElement::central(&b, &[cr(2.0), cr(3.0)]);
        assert!(root.element().approx_eq(&want, 1e-12));
        let zero = PositiveFunctional::zero(&b).pth_root(fin(4.0)).unwrap();
        assert_eq!(zero.norm(), 0.0);
        assert!(phi.pth_root(Exponent::Infinity).is_err());
    }

    #[test]
    fn non_positive_density_is_rejected() {
        let a = A::full_matrix(2).unwrap();
        let h = (&unit(&a, 0, 0) - &unit(&a, 1, 1)).scale_real(1.0);
        assert!(matches!(
            PositiveFunctional::new(h, 1e-8),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn haagerup_pair_examples() {
        let a = A::full_matrix(2).unwrap();
        let xi = LpVector::new(unit(&a, 0, 0), fin(3.0));
        let eta = LpVector::new(unit(&a, 0, 0), fin(1.5));
        assert!((haagerup_pair(&xi, &eta).unwrap() - cr(1.0)).norm() < 1e-14);
        assert_eq!(haagerup_pair(&xi, &LpVector::zero(&a, fin(1.5))).unwrap(), cr(0.0));
        assert!(haagerup_pair(&xi, &xi).is_err());
    }

    #[test]
    fn clarkson_examples() {
        let a = A::full_matrix(2).unwrap();
        let p = fin(3.0);
        let e11 = LpVector::new(unit(&a, 0, 0), p);
        let e22 = LpVector::new(unit(&a, 1, 1), p);
        assert!(clarkson_defect(&e11, &e22).unwrap().abs() < 1e-14);
        assert!(is_orthogonal_algebraic(&e11, &e22, 1e-8));
        assert!((clarkson_defect(&e11, &e11).unwrap() - 4.0).abs() < 1e-12);
        assert!(!is_orthogonal_algebraic(&e11, &e11, 1e-8));
        let z = LpVector::zero(&a, p);
        assert!(clarkson_defect(&e11, &z).unwrap().abs() < 1e-14);
        assert!(is_orthogonal_algebraic(&e11, &z, 1e-8));
        for bad in [fin(2.0), Exponent::Infinity] {
            let x = LpVector::new(unit(&a, 0, 0), bad);
            assert!(clarkson_defect(&x, &x).is_err());
        }
    }

    #[test]
    fn semi_inner_product_examples() {
        let a = A::full_matrix(2).unwrap();
        let p = fin(3.0);
        let xi = AlgebraElement::from_fn(&a, |_, r, c| C::new((r + 2 * c) as f64, r as f64 - 0.5));
        let xi = LpVector::new(xi, p);
        let eta = LpVector::new(unit(&a, 0, 0), p);
        let s = semi_inner_product(&xi, &eta).unwrap();
        assert!((s - xi.element().block(0)[(0, 0)]).norm() < 1e-12);
        let z = LpVector::zero(&a, p);
        assert_eq!(semi_inner_product(&xi, &z).unwrap(), cr(0.0));
        let s = semi_inner_product(&xi, &xi).unwrap();
        assert!((s - cr(xi.norm().powi(2))).norm() < 1e-10);
        let x1 = LpVector::new(unit(&a, 0, 0), fin(1.0));
        assert!(semi_inner_product(&x1, &x1).is_err());
        let xinf = LpVector::new(unit(&a, 0, 0), Exponent::Infinity);
        assert!(semi_inner_product(&xinf, &xinf).is_err());
    }

    #[test]
    fn positive_decomposition_examples() {
        let a = A::full_matrix(2).unwrap();
        let p = fin(3.0);
        let x = LpVector::new(unit(&a, 0, 1), p);
        let dec = decompose_into_positives(&x).unwrap();
        assert!(dec.reconstruct().unwrap().element().approx_eq(x.element(), 1e-12));
        // a = (e12 + e21)/2 has eigenvalues ±1/2, so both parts carry (1/2)^p mass
        for f in &dec.functionals {
            assert!((f.total_mass() - 0.5f64.powi(3)).abs() < 1e-12);
        }
        let pos = LpVector::new(&unit(&a, 0, 0) + &unit(&a, 1, 1).scale_real(2.0), p);
        let dec = decompose_into_positives(&pos).unwrap();
        let cube = &pos.element().clone() * &(pos.element() * pos.element());
        assert!(dec.functionals[0].density().approx_eq(&cube, 1e-12));
        for f in &dec.functionals[1..] {
            assert!(f.density().frobenius_norm() < 1e-12);
        }
        let dec = decompose_into_positives(&LpVector::zero(&a, p)).unwrap();
        assert!(dec.functionals.iter().all(|f| f.density().frobenius_norm() == 0.0));
    }
}
