//! Corner-level diagnostics of an isometry: images of corners, the right
//! orthoisomorphism `π_r`, the module relation and the central correspondence.
//!
//! None of these are needed by [`decompose`](crate::isometry::decompose); they
//! exercise the corner route independently and are cross-checked against it.

use crate::algebra::{AlgebraElement, CentralProjection, Projection};
use crate::corner::Corner;
use crate::error::{Error, Result};
use crate::isometry::LpIsometry;
use crate::jordan::JordanMap;
use crate::linalg;
use crate::lp::LpVector;
use crate::random::{gaussian_element, random_projection, rng_from_seed, SeededRng};
use crate::scalar::{Mat, Real, Tolerances};

use rand::Rng;

/// Image of a corner together with containment residuals in both directions.
#[derive(Clone, Debug)]
pub struct CornerImageReport<T: Real> {
    pub input: Corner<T>,
    pub output: Corner<T>,
    /// `max ‖Tξ − r₁(Tξ)r₂‖` over the pushed basis, relative to `‖Tξ‖`.
    pub forward_residual: T,
    /// `max` distance of a basis vector of `r₁ L^p r₂` from `span T(C)`.
    pub reverse_residual: T,
}

/// Pushes a basis of `C` through `T` and identifies the image as a corner.
pub fn corner_image<T: Real>(
    t: &LpIsometry<T>,
    corner: &Corner<T>,
    tol: &Tolerances<T>,
) -> Result<CornerImageReport<T>> {
    let basis = corner.basis();
    let target = t.target();
    let images: Vec<AlgebraElement<T>> = basis
        .iter()
        .map(|b| t.apply_element(b.element()))
        .collect::<Result<_>>()?;
    let mut left_sum = AlgebraElement::zero(target);
    let mut right_sum = AlgebraElement::zero(target);
    for img in &images {
        left_sum = &left_sum + &(img * &img.adjoint());
        right_sum = &right_sum + &(&img.adjoint() * img);
    }
    let output = Corner::new(
        Projection::range_of(&left_sum),
        Projection::range_of(&right_sum),
        corner.p(),
    )?;
    let expected = corner.dimension();
    let found = output.dimension();

    let mut forward = T::zero();
    for img in &images {
        let s = T::one().max(img.frobenius_norm());
        forward = forward.max(output.residual(img) / s);
    }

    // Orthonormal basis of span T(C) in flat coordinates.
    let d = target.dimension();
    let mut stacked = Mat::zeros(d, images.len().max(1));
    for (k, img) in images.iter().enumerate() {
        stacked.set_column(k, &img.to_vector());
    }
    let span = if images.is_empty() {
        Mat::zeros(d, 0)
    } else {
        linalg::range_basis(&(&stacked * stacked.adjoint()))
    };
    let image_rank = span.ncols();

    if found != expected || image_rank != expected {
        return Err(Error::ImageNotCorner {
            expected,
            found,
            residual: forward.as_f64(),
        });
    }
    let mut reverse = T::zero();
    for b in output.basis() {
        let v = b.element().to_vector();
        let r = (&v - &span * (span.adjoint() * &v)).norm();
        reverse = reverse.max(r);
    }
    if forward > tol.eq || reverse > tol.eq {
        return Err(Error::ImageNotCorner {
            expected,
            found,
            residual: forward.max(reverse).as_f64(),
        });
    }
    Ok(CornerImageReport {
        input: corner.clone(),
        output,
        forward_residual: forward,
        reverse_residual: reverse,
    })
}

/// Per target block: does `T` take columns to columns (true) or to rows?
fn column_behaviour<T: Real>(
    t: &LpIsometry<T>,
    q: &Projection<T>,
    tol: &Tolerances<T>,
) -> Result<CentralProjection> {
    let rep = corner_image(t, &Corner::column(q.clone(), t.p()), tol)?;
    let target = t.target();
    let (l, r) = (rep.output.left().ranks(), rep.output.right().ranks());
    let mut mask = Vec::with_capacity(target.num_blocks());
    for j in 0..target.num_blocks() {
        let n = target.block_dim(j);
        if n == 1 {
            mask.push(true);
            continue;
        }
        mask.push(match (l[j] == n, r[j] == n) {
            (true, false) => true,
            (false, true) => false,
            _ => {
                return Err(Error::NotTheoremForm(format!(
                    "image of a proper column is neither a column nor a row on target block {j}"
                )))
            }
        });
    }
    Ok(CentralProjection::new(mask))
}

/// A test column proper on every non-abelian block.
fn proper_projection<T: Real>(t: &LpIsometry<T>, rng: &mut SeededRng) -> Result<Projection<T>> {
    let source = t.source();
    let ranks: Vec<usize> = source
        .blocks()
        .iter()
        .map(|b| if b.dim == 1 { 1 } else { rng.random_range(1..b.dim) })
        .collect();
    random_projection(source, &ranks, rng)
}

/// `π_r` together with the target blocks `z′` where `T` maps columns to columns.
#[derive(Clone, Debug)]
pub struct RightOrthoIso<T: Real> {
    isometry: LpIsometry<T>,
    column_blocks: CentralProjection,
    tol: Tolerances<T>,
}

/// Derives `z′` from two independent test columns and packages `π_r`.
pub fn extract_right_orthoiso<T: Real>(
    t: &LpIsometry<T>,
    tol: &Tolerances<T>,
    seed: u64,
) -> Result<RightOrthoIso<T>> {
    t.p().require_structural("orthoisomorphism extraction")?;
    if t.p().finite_value() == Some(T::one()) {
        return Err(Error::InvalidExponent("orthoisomorphism extraction needs p > 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let first = column_behaviour(t, &proper_projection(t, &mut rng)?, tol)?;
    let second = column_behaviour(t, &proper_projection(t, &mut rng)?, tol)?;
    if first != second {
        return Err(Error::NotTheoremForm(
            "column/row behaviour depends on the test column".into(),
        ));
    }
    Ok(RightOrthoIso {
        isometry: t.clone(),
        column_blocks: first,
        tol: *tol,
    })
}

impl<T: Real> RightOrthoIso<T> {
    /// `z′`: target blocks on which columns go to columns. Abelian blocks are
    /// included by convention.
    pub fn column_blocks(&self) -> &CentralProjection {
        &self.column_blocks
    }

    /// `π_r(q)`: right support of `T(L^p q)` on column blocks and of
    /// `T(q L^p)` on row blocks.
    pub fn apply(&self, q: &Projection<T>) -> Result<Projection<T>> {
        let t = &self.isometry;
        let col = corner_image(t, &Corner::column(q.clone(), t.p()), &self.tol)?;
        let row = corner_image(t, &Corner::row(q.clone(), t.p()), &self.tol)?;
        let mask = self.column_blocks.to_projection(t.target());
        let c = mask.element();
        let rest = mask.complement();
        let combined = &(c * col.output.right().element()) + &(rest.element() * row.output.right().element());
        Ok(Projection::rounded(&combined))
    }
}

/// Residuals of `T(ξx) = T(ξ)π_r(x)` (column blocks) and
/// `T(xξ) = T(ξ)π_r(x)` (row blocks), with `π_r` extended by `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRelationReport<T> {
    pub column_residual: T,
    pub row_residual: T,
    pub samples: usize,
}

impl<T: Real> ModuleRelationReport<T> {
    pub fn max_residual(&self) -> T {
        self.column_residual.max(self.row_residual)
    }
}

pub fn check_module_relation<T: Real>(
    t: &LpIsometry<T>,
    orthoiso: &RightOrthoIso<T>,
    extension: &JordanMap<T>,
    samples: usize,
    seed: u64,
) -> Result<ModuleRelationReport<T>> {
    let mut rng = rng_from_seed(seed);
    let source = t.source();
    let mut col_res = T::zero();
    let mut row_res = T::zero();
    for _ in 0..samples {
        let xi = gaussian_element(source, &mut rng);
        let x = gaussian_element(source, &mut rng);
        let scale = xi.frobenius_norm() * x.frobenius_norm();
        let pix = extension.apply(&x)?;
        let rhs = &t.apply_element(&xi)? * &pix;
        let right_mod = t.apply_element(&(&xi * &x))?;
        let left_mod = t.apply_element(&(&x * &xi))?;
        for j in 0..t.target().num_blocks() {
            if orthoiso.column_blocks.contains(j) {
                col_res = col_res.max((right_mod.block(j) - rhs.block(j)).norm() / scale);
            } else {
                row_res = row_res.max((left_mod.block(j) - rhs.block(j)).norm() / scale);
            }
        }
    }
    Ok(ModuleRelationReport {
        column_residual: col_res,
        row_residual: row_res,
        samples,
    })
}

/// The bijection of minimal central projections `z ↦ z′` induced by `T`,
/// as a table from source block to target block.
pub fn central_correspondence<T: Real>(t: &LpIsometry<T>, tol: &Tolerances<T>) -> Result<Vec<usize>> {
    let source = t.source();
    let target = t.target();
    let k = source.num_blocks();
    if target.num_blocks() != k {
        return Err(Error::NotIsometry("algebras have different numbers of blocks".into()));
    }
    let mut map = Vec::with_capacity(k);
    let mut taken = vec![false; k];
    for i in 0..k {
        let z = CentralProjection::minimal(k, i).to_projection(source);
        let summand = Corner::new(z.clone(), z, t.p())?;
        let rep = corner_image(t, &summand, tol)?;
        let support: Vec<usize> = rep.output.central_support().blocks().collect();
        if !rep.output.is_central_summand(tol.eq) || support.len() != 1 {
            return Err(Error::NotIsometry(format!(
                "image of central summand {i} is not a minimal central summand"
            )));
        }
        let j = support[0];
        if taken[j] || target.block_dim(j) != source.block_dim(i) {
            return Err(Error::NotIsometry(format!(
                "central summand {i} sent to incompatible target block {j}"
            )));
        }
        taken[j] = true;
        map.push(j);
    }
    Ok(map)
}

/// Pushes `S` forward and returns `{Tξ : ξ ∈ S}`.
pub fn push_set<T: Real>(t: &LpIsometry<T>, set: &[LpVector<T>]) -> Result<Vec<LpVector<T>>> {
    set.iter().map(|x| t.apply(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiMatrixAlgebra;
    use crate::jordan::random_jordan;
    use crate::linear_map::LinearMap;
    use crate::lp::Exponent;
    use crate::random::haar_unitary;

    type A = MultiMatrixAlgebra<f64>;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn p3() -> Exponent<f64> {
        Exponent::Finite(3.0)
    }

    fn e(a: &crate::algebra::AlgebraRef<f64>, b: usize, r: usize, c: usize) -> Projection<f64> {
        Projection::try_from_element(&AlgebraElement::matrix_unit(a, b, r, c), 1e-8).unwrap()
    }

    #[test]
    fn identity_fixes_corners() {
        let a = A::from_pairs(&[(2, 1.0), (1, 2.0)]).unwrap();
        let t = LpIsometry::raw(LinearMap::identity(&a), p3());
        let c = Corner::new(e(&a, 0, 0, 0), e(&a, 0, 1, 1), p3()).unwrap();
        let rep = corner_image(&t, &c, &tol()).unwrap();
        assert!(rep.output.approx_eq(&c, 1e-12));
        assert!(rep.forward_residual < 1e-14 && rep.reverse_residual < 1e-14);
    }

    #[test]
    fn transpose_sends_columns_to_rows() {
        let a = A::full_matrix(2).unwrap();
        let j = JordanMap::transpose(&a);
        let t = LpIsometry::synthesize(&j, &AlgebraElement::identity(&a), p3(), &tol()).unwrap();
        let rep = corner_image(&t, &Corner::column(e(&a, 0, 0, 0), p3()), &tol()).unwrap();
        assert!(rep.output.approx_eq(&Corner::row(e(&a, 0, 0, 0), p3()), 1e-12));
        let pi = extract_right_orthoiso(&t, &tol(), 1).unwrap();
        assert!(pi.column_blocks().is_none());
        let q = random_projection(&a, &[1], &mut rng_from_seed(3)).unwrap();
        let img = pi.apply(&q).unwrap();
        let want = Projection::try_from_element(&q.element().transpose(), 1e-8).unwrap();
        assert!(img.approx_eq(&want, 1e-10));
        let rep = check_module_relation(&t, &pi, &j, 5, 2).unwrap();
        assert!(rep.max_residual() < 1e-12);
    }

    #[test]
    fn inner_automorphism_moves_columns() {
        let a = A::full_matrix(3).unwrap();
        let u = haar_unitary(&a, &mut rng_from_seed(2));
        let j = JordanMap::inner(&u, 1e-8).unwrap();
        let t = LpIsometry::synthesize(&j, &AlgebraElement::identity(&a), p3(), &tol()).unwrap();
        let q = random_projection(&a, &[2], &mut rng_from_seed(4)).unwrap();
        let rep = corner_image(&t, &Corner::column(q.clone(), p3()), &tol()).unwrap();
        let uqu = Projection::try_from_element(&(&(&u * q.element()) * &u.adjoint()), 1e-8).unwrap();
        assert!(rep.output.approx_eq(&Corner::column(uqu.clone(), p3()), 1e-10));
        let pi = extract_right_orthoiso(&t, &tol(), 5).unwrap();
        assert!(pi.column_blocks().is_all());
        assert!(pi.apply(&q).unwrap().approx_eq(&uqu, 1e-10));
        assert!(pi.apply(&Projection::zero(&a)).unwrap().is_zero());
        assert!(pi.apply(&Projection::identity(&a)).unwrap().approx_eq(&Projection::identity(&a), 1e-10));
        assert!(check_module_relation(&t, &pi, &j, 5, 1).unwrap().max_residual() < 1e-12);
    }

    #[test]
    fn correspondence_follows_sigma() {
        let s = A::from_pairs(&[(2, 1.0), (2, 0.5), (1, 1.0)]).unwrap();
        let j = random_jordan(&s, &s, 31).unwrap();
        let w = haar_unitary(&s, &mut rng_from_seed(1));
        let t = LpIsometry::synthesize(&j, &w, Exponent::Finite(1.5), &tol()).unwrap();
        assert_eq!(central_correspondence(&t, &tol()).unwrap(), j.sigma());
    }

    #[test]
    fn abelian_summand_sent_inside_a_matrix_block_is_rejected() {
        let a = A::from_pairs(&[(1, 1.0), (2, 1.0)]).unwrap();
        // swap the coordinate of ℂ with e₁₁ of M₂
        let mut m = Mat::<f64>::identity(5, 5);
        m.swap_columns(0, 1);
        let t = LpIsometry::raw(LinearMap::new(&a, &a, m).unwrap(), p3());
        assert!(matches!(central_correspondence(&t, &tol()), Err(Error::NotIsometry(_))));
    }

    #[test]
    fn random_unitary_breaks_corners() {
        let a = A::full_matrix(3).unwrap();
        let m = crate::random::haar_unitary_matrix::<f64, _>(9, &mut rng_from_seed(7));
        let t = LpIsometry::raw(LinearMap::new(&a, &a, m).unwrap(), p3());
        let q = random_projection(&a, &[1], &mut rng_from_seed(8)).unwrap();
        assert!(matches!(
            corner_image(&t, &Corner::column(q, p3()), &tol()),
            Err(Error::ImageNotCorner { .. })
        ));
    }
}
