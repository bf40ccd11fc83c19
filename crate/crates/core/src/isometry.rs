//! Surjective L^p isometries: synthesis from `(J, w)` and decomposition back.
//!
//! A structured isometry acts by `T(ξ) = w · D^{1/p} · J(ξ)`, where `D` is the
//! central density of `J`; on positives this is `T(φ^{1/p}) = w(φ∘J⁻¹)^{1/p}`.
//! A raw isometry is any dense matrix; it is trusted only after
//! [`decompose`] has certified it.

use crate::algebra::{ensure_same, AlgebraElement, AlgebraRef};
use crate::error::{Error, Result};
use crate::jordan::{classify_linear_map, CentralDensity, JordanMap};
use crate::linalg;
use crate::linear_map::LinearMap;
use crate::lp::{Exponent, LpVector, PositiveFunctional};
use crate::random::{gaussian_element, rng_from_seed};
use crate::scalar::{cr, Mat, Real, Tolerances};

#[derive(Clone, Debug, PartialEq)]
pub enum IsometryBody<T: Real> {
    Structured {
        unitary: AlgebraElement<T>,
        jordan: JordanMap<T>,
        density: CentralDensity<T>,
    },
    Raw(LinearMap<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpIsometry<T: Real> {
    p: Exponent<T>,
    body: IsometryBody<T>,
}

impl<T: Real> LpIsometry<T> {
    /// `T = w · D^{1/p} · J`.
    pub fn synthesize(
        jordan: &JordanMap<T>,
        unitary: &AlgebraElement<T>,
        p: Exponent<T>,
        tol: &Tolerances<T>,
    ) -> Result<Self> {
        if p.is_two() {
            return Err(Error::InvalidExponent("no structure theorem at p = 2".into()));
        }
        ensure_same(jordan.target(), unitary.algebra())?;
        if !unitary.is_unitary(tol.eq) {
            let id = AlgebraElement::identity(unitary.algebra());
            return Err(Error::NotUnitary {
                residual: (&unitary.adjoint() * unitary).distance(&id).as_f64(),
            });
        }
        Ok(Self {
            p,
            body: IsometryBody::Structured {
                unitary: unitary.clone(),
                jordan: jordan.clone(),
                density: jordan.central_density(),
            },
        })
    }

    /// A dense map accepted without proof of isometry.
    pub fn raw(map: LinearMap<T>, p: Exponent<T>) -> Self {
        Self {
            p,
            body: IsometryBody::Raw(map),
        }
    }

    pub fn p(&self) -> Exponent<T> {
        self.p
    }

    pub fn body(&self) -> &IsometryBody<T> {
        &self.body
    }

    pub fn source(&self) -> &AlgebraRef<T> {
        match &self.body {
            IsometryBody::Structured { jordan, .. } => jordan.source(),
            IsometryBody::Raw(m) => m.source(),
        }
    }

    pub fn target(&self) -> &AlgebraRef<T> {
        match &self.body {
            IsometryBody::Structured { jordan, .. } => jordan.target(),
            IsometryBody::Raw(m) => m.target(),
        }
    }

    /// Applies the map to a bare element, ignoring exponents.
    pub fn apply_element(&self, x: &AlgebraElement<T>) -> Result<AlgebraElement<T>> {
        match &self.body {
            IsometryBody::Structured {
                unitary,
                jordan,
                density,
            } => {
                let jx = jordan.apply(x)?;
                let d = density.element(jordan.target(), self.p.reciprocal());
                Ok(&(unitary * &d) * &jx)
            }
            IsometryBody::Raw(m) => m.apply(x),
        }
    }

    pub fn apply(&self, xi: &LpVector<T>) -> Result<LpVector<T>> {
        if xi.p() != self.p {
            return Err(Error::ExponentMismatch {
                p: xi.p().to_string(),
                q: self.p.to_string(),
            });
        }
        Ok(LpVector::new(self.apply_element(xi.element())?, self.p))
    }

    /// Dense matrix in the matrix-unit bases.
    pub fn to_linear_map(&self) -> LinearMap<T> {
        match &self.body {
            IsometryBody::Raw(m) => m.clone(),
            IsometryBody::Structured { .. } => LinearMap::from_fn(self.source(), self.target(), |x| {
                self.apply_element(x).expect("basis element of the source")
            }),
        }
    }

    pub fn to_raw(&self) -> Self {
        Self::raw(self.to_linear_map(), self.p)
    }
}

/// `T = w · D^{1/p} · J`, with the certification residual
/// `‖synthesize(J, w, p) − T‖_F`.
#[derive(Clone, Debug)]
pub struct Decomposition<T: Real> {
    pub unitary: AlgebraElement<T>,
    pub jordan: JordanMap<T>,
    pub residual: T,
}

/// Recovers `(w, J)` from a surjective L^p isometry.
///
/// For `1 < p < ∞` the unitary is the polar part of the image of the root of
/// the normalized trace, and `J` follows from the images of a positive
/// spanning set. `p = ∞` reads `w = T(1)` directly; `p = 1` decomposes the
/// trace adjoint (an operator-norm isometry) and dualizes.
pub fn decompose<T: Real>(t: &LpIsometry<T>, tol: &Tolerances<T>) -> Result<Decomposition<T>> {
    let l = t.to_linear_map();
    let (w, jordan) = match t.p {
        _ if t.p.is_two() => {
            return Err(Error::InvalidExponent("no structure theorem at p = 2".into()))
        }
        Exponent::Infinity => decompose_operator_isometry(&l, tol)?,
        Exponent::Finite(p) if p == T::one() => decompose_trace_class(&l, tol)?,
        Exponent::Finite(_) => decompose_direct(&l, t.p, tol)?,
    };
    let resynth = LpIsometry::synthesize(&jordan, &w, t.p, tol)?;
    let residual = resynth.to_linear_map().distance(&l)?;
    if !(residual <= tol.cert) {
        return Err(Error::CertificationFailed {
            residual: residual.as_f64(),
        });
    }
    Ok(Decomposition {
        unitary: w,
        jordan,
        residual,
    })
}

/// PSD spanning set of the matrix units of one algebra: `e_a e_a*`,
/// `(e_a+e_b)(e_a+e_b)*` and `(e_a+ie_b)(e_a+ie_b)*` in every block.
pub(crate) fn positive_spanning_set<T: Real>(algebra: &AlgebraRef<T>) -> Vec<AlgebraElement<T>> {
    let mut out = Vec::with_capacity(algebra.dimension());
    for (i, spec) in algebra.blocks().iter().enumerate() {
        let n = spec.dim;
        let rank_one = |v: Vec<(usize, nalgebra::Complex<T>)>| {
            let mut col = Mat::zeros(n, 1);
            for (k, z) in v {
                col[(k, 0)] = z;
            }
            let m = &col * col.adjoint();
            AlgebraElement::from_fn(algebra, |b, r, c| if b == i { m[(r, c)] } else { cr(T::zero()) })
        };
        let one = cr(T::one());
        let imag = nalgebra::Complex::new(T::zero(), T::one());
        for a in 0..n {
            out.push(rank_one(vec![(a, one)]));
            for b in (a + 1)..n {
                out.push(rank_one(vec![(a, one), (b, one)]));
                out.push(rank_one(vec![(a, one), (b, imag)]));
            }
        }
    }
    out
}

fn decompose_direct<T: Real>(
    l: &LinearMap<T>,
    p: Exponent<T>,
    tol: &Tolerances<T>,
) -> Result<(AlgebraElement<T>, JordanMap<T>)> {
    let pv = p.finite_value().expect("finite exponent");
    let (src, tgt) = (l.source(), l.target());
    if src.dimension() != tgt.dimension() {
        return Err(Error::PolarNotUnitary("source and target dimensions differ".into()));
    }

    // η₀ = T(φ₀^{1/p}) for the normalized trace φ₀, which has norm one.
    let c = (T::one() / src.unit_trace()).powf(T::one() / pv);
    let eta0 = LpVector::new(l.apply(&AlgebraElement::identity(src).scale_real(c))?, p);
    let n0 = eta0.norm();
    if (n0 - T::one()).abs() > tol.eq {
        return Err(Error::PolarNotUnitary(format!(
            "image of a unit vector has norm {n0}"
        )));
    }
    let w = eta0.element().polar_decompose().partial_isometry;
    if !w.is_unitary(tol.eq) {
        return Err(Error::PolarNotUnitary("polar part is a proper partial isometry".into()));
    }
    let w_adj = w.adjoint();

    let spanning = positive_spanning_set(src);
    let d = src.dimension();
    let mut h_mat = Mat::zeros(d, d);
    let mut f_mat = Mat::zeros(d, d);
    for (k, h) in spanning.iter().enumerate() {
        let root = PositiveFunctional::new_unchecked(h.clone()).pth_root(p)?;
        let m = &w_adj * &l.apply(root.element())?;
        let scale = T::one().max(m.operator_norm());
        let herm = m.distance(&m.adjoint()) <= tol.eq * scale;
        let min = m.min_eigenvalue();
        if !herm || min < -tol.eq * scale {
            return Err(Error::ImageNotPositive {
                index: k,
                min_eigenvalue: min.as_f64(),
            });
        }
        let phi = m.map_blocks(|_, b| linalg::psd_power(b, pv));
        h_mat.set_column(k, &h.to_vector());
        f_mat.set_column(k, &phi.to_vector());
    }
    let h_inv = h_mat
        .try_inverse()
        .ok_or_else(|| Error::NotTheoremForm("spanning set is singular".into()))?;
    // Φ(h) = density of φ∘J⁻¹; the trace identity τ_s(h·J⁻¹(y)) = τ_t(Φ(h)·y)
    // makes J⁻¹ the trace adjoint of Φ.
    let phi_map = LinearMap::new(src, tgt, f_mat * h_inv)?;
    let j_dense = phi_map.trace_adjoint().inverse()?;
    let jordan = classify_linear_map(&j_dense, tol)?;
    Ok((w, jordan))
}

/// Kadison: `T(x) = w·J(x)` with `w = T(1)`.
fn decompose_operator_isometry<T: Real>(
    l: &LinearMap<T>,
    tol: &Tolerances<T>,
) -> Result<(AlgebraElement<T>, JordanMap<T>)> {
    if l.source().dimension() != l.target().dimension() {
        return Err(Error::PolarNotUnitary("source and target dimensions differ".into()));
    }
    let w = l.apply(&AlgebraElement::identity(l.source()))?;
    if !w.is_unitary(tol.eq) {
        return Err(Error::PolarNotUnitary("T(1) is not unitary".into()));
    }
    let jordan = classify_linear_map(&l.left_multiplied(&w.adjoint())?, tol)?;
    Ok((w, jordan))
}

/// `p = 1`: the trace adjoint `T*(y) = J⁻¹(y w)` is an operator-norm isometry
/// `N → M`; Kadison gives `T* = w'J'`, whence `w = J'⁻¹(w')` and
/// `J = Ad(w*)∘J'⁻¹` on multiplicative blocks, `J = J'⁻¹` on the others.
fn decompose_trace_class<T: Real>(
    l: &LinearMap<T>,
    tol: &Tolerances<T>,
) -> Result<(AlgebraElement<T>, JordanMap<T>)> {
    let (w_dual, j_dual) = decompose_operator_isometry(&l.trace_adjoint(), tol)?;
    let j_inv = j_dual.inverse();
    let w = j_inv.apply(&w_dual)?;
    let mut blocks = j_inv.blocks().to_vec();
    for (i, b) in blocks.iter_mut().enumerate() {
        if !b.anti {
            let wj = w.block(j_inv.sigma()[i]);
            b.unitary = wj.adjoint() * &b.unitary;
        }
    }
    let jordan = JordanMap::new(
        j_inv.source(),
        j_inv.target(),
        j_inv.sigma().to_vec(),
        blocks,
        tol.eq * T::lit(10.0),
    )?
    .canonical();
    Ok((w, jordan))
}

/// Outcome of [`verify_isometry_sampled`].
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCheck<T> {
    /// `max |‖Tξ‖ − ‖ξ‖| / ‖ξ‖` over the samples.
    pub max_deviation: T,
    pub samples: usize,
}

impl<T> SampledCheck<T> {
    /// `false` when no samples were drawn, so the deviation proves nothing.
    pub fn has_evidence(&self) -> bool {
        self.samples > 0
    }
}

/// Screens `T` for isometry on Gaussian samples; not a certificate.
pub fn verify_isometry_sampled<T: Real>(t: &LpIsometry<T>, samples: usize, seed: u64) -> Result<SampledCheck<T>> {
    let mut rng = rng_from_seed(seed);
    let mut worst = T::zero();
    for _ in 0..samples {
        let xi = LpVector::new(gaussian_element(t.source(), &mut rng), t.p());
        let n = xi.norm();
        let dev = (t.apply(&xi)?.norm() - n).abs() / n;
        worst = worst.max(dev);
    }
    Ok(SampledCheck {
        max_deviation: worst,
        samples,
    })
}
