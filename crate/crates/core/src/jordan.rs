//! Surjective Jordan *-isomorphisms between multi-matrix algebras.
//!
//! Every such map is, in canonical form, a bijection `σ` of blocks of equal
//! size together with, for each source block, a unitary `u` in the target
//! block and a flag choosing `x ↦ u x u*` (multiplicative) or `x ↦ u xᵀ u*`
//! (antimultiplicative). Abelian blocks are always flagged multiplicative.

use std::collections::BTreeMap;

use nalgebra::ComplexField;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{ensure_same, AlgebraElement, AlgebraRef, CentralProjection};
use crate::error::{Error, Result};
use crate::linalg;
use crate::linear_map::LinearMap;
use crate::lp::PositiveFunctional;
use crate::random::{haar_unitary_matrix, rng_from_seed};
use crate::scalar::{cr, Mat, Real, Tolerances};

/// Entries of smaller modulus are skipped when fixing the phase of a unitary.
const PHASE_PIVOT: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct JordanBlock<T: Real> {
    pub unitary: Mat<T>,
    pub anti: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanMap<T: Real> {
    source: AlgebraRef<T>,
    target: AlgebraRef<T>,
    sigma: Vec<usize>,
    blocks: Vec<JordanBlock<T>>,
}

/// Multiplies `u` by the global phase making the first sufficiently large
/// entry of its first column real positive.
pub(crate) fn fix_phase<T: Real>(u: &Mat<T>) -> Mat<T> {
    if u.ncols() == 0 {
        return u.clone();
    }
    let pivot = T::lit(PHASE_PIVOT);
    let col = u.column(0);
    let entry = col
        .iter()
        .find(|z| z.modulus() >= pivot)
        .or_else(|| col.iter().max_by(|a, b| a.modulus().partial_cmp(&b.modulus()).unwrap()))
        .copied();
    match entry {
        Some(z) if z.modulus() > T::zero() => {
            let phase = z.conj() / cr(z.modulus());
            u * phase
        }
        _ => u.clone(),
    }
}

impl<T: Real> JordanMap<T> {
    /// Validates the canonical data: `σ` a dimension-preserving bijection and
    /// every `u` unitary within `tol`.
    pub fn new(
        source: &AlgebraRef<T>,
        target: &AlgebraRef<T>,
        sigma: Vec<usize>,
        mut blocks: Vec<JordanBlock<T>>,
        tol: T,
    ) -> Result<Self> {
        let k = source.num_blocks();
        if target.num_blocks() != k || sigma.len() != k || blocks.len() != k {
            return Err(Error::BlockMismatch(format!(
                "{k} source blocks, {} target blocks, sigma of length {}, {} block maps",
                target.num_blocks(),
                sigma.len(),
                blocks.len()
            )));
        }
        let mut seen = vec![false; k];
        for (i, &j) in sigma.iter().enumerate() {
            if j >= k || seen[j] {
                return Err(Error::BlockMismatch("sigma is not a bijection".into()));
            }
            seen[j] = true;
            let n = source.block_dim(i);
            if target.block_dim(j) != n {
                return Err(Error::BlockMismatch(format!(
                    "source block {i} (dim {n}) sent to target block {j} (dim {})",
                    target.block_dim(j)
                )));
            }
            let u = &blocks[i].unitary;
            if u.nrows() != n || u.ncols() != n {
                return Err(Error::ShapeMismatch(format!("unitary for block {i} is not {n}x{n}")));
            }
            let res = (u.adjoint() * u - Mat::identity(n, n)).norm();
            if res > tol * T::lit(n as f64).sqrt().max(T::one()) {
                return Err(Error::NotUnitary { residual: res.as_f64() });
            }
            if n == 1 {
                blocks[i].anti = false;
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            sigma,
            blocks,
        })
    }

    pub fn identity(algebra: &AlgebraRef<T>) -> Self {
        let blocks = algebra
            .blocks()
            .iter()
            .map(|b| JordanBlock {
                unitary: Mat::identity(b.dim, b.dim),
                anti: false,
            })
            .collect();
        Self {
            source: algebra.clone(),
            target: algebra.clone(),
            sigma: (0..algebra.num_blocks()).collect(),
            blocks,
        }
    }

    /// Blockwise transpose `x ↦ xᵀ`.
    pub fn transpose(algebra: &AlgebraRef<T>) -> Self {
        let mut j = Self::identity(algebra);
        for (b, spec) in j.blocks.iter_mut().zip(algebra.blocks()) {
            b.anti = spec.dim > 1;
        }
        j
    }

    /// `x ↦ u x u*` on a single algebra.
    pub fn inner(u: &AlgebraElement<T>, tol: T) -> Result<Self> {
        let alg = u.algebra();
        let blocks = u
            .blocks()
            .iter()
            .map(|b| JordanBlock {
                unitary: b.clone(),
                anti: false,
            })
            .collect();
        Self::new(alg, alg, (0..alg.num_blocks()).collect(), blocks, tol)
    }

    pub fn source(&self) -> &AlgebraRef<T> {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef<T> {
        &self.target
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn blocks(&self) -> &[JordanBlock<T>] {
        &self.blocks
    }

    /// `σ⁻¹` as a table indexed by target block.
    pub fn sigma_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.sigma.len()];
        for (i, &j) in self.sigma.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }

    fn apply_block(&self, i: usize, x: &Mat<T>) -> Mat<T> {
        let b = &self.blocks[i];
        if b.anti {
            &b.unitary * x.transpose() * b.unitary.adjoint()
        } else {
            &b.unitary * x * b.unitary.adjoint()
        }
    }

    pub fn apply(&self, x: &AlgebraElement<T>) -> Result<AlgebraElement<T>> {
        ensure_same(&self.source, x.algebra())?;
        let inv = self.sigma_inverse();
        let blocks = (0..self.target.num_blocks())
            .map(|j| self.apply_block(inv[j], x.block(inv[j])))
            .collect();
        AlgebraElement::from_blocks(&self.target, blocks)
    }

    pub fn to_linear_map(&self) -> LinearMap<T> {
        LinearMap::from_fn(&self.source, &self.target, |x| {
            self.apply(x).expect("basis element of the source")
        })
    }

    /// The inverse map `N → M`, again in canonical form.
    pub fn inverse(&self) -> Self {
        let inv = self.sigma_inverse();
        let blocks = inv
            .iter()
            .map(|&i| {
                let b = &self.blocks[i];
                JordanBlock {
                    // u xᵀ u* = y  ⇔  x = uᵀ yᵀ (uᵀ)*
                    unitary: if b.anti {
                        b.unitary.transpose()
                    } else {
                        b.unitary.adjoint()
                    },
                    anti: b.anti,
                }
            })
            .collect();
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            sigma: inv,
            blocks,
        }
    }

    /// Same map with every unitary in the phase convention.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        for b in &mut out.blocks {
            b.unitary = fix_phase(&b.unitary);
        }
        out
    }

    /// Largest unitary difference between canonical forms, or `None` when the
    /// algebras, `σ` or the flags differ.
    pub fn distance(&self, other: &Self) -> Option<T> {
        if *self.source != *other.source || *self.target != *other.target || self.sigma != other.sigma {
            return None;
        }
        let (a, b) = (self.canonical(), other.canonical());
        let mut worst = T::zero();
        for (x, y) in a.blocks.iter().zip(&b.blocks) {
            if x.anti != y.anti {
                return None;
            }
            worst = worst.max((&x.unitary - &y.unitary).norm());
        }
        Some(worst)
    }

    /// The central projection of the source carrying the multiplicative part.
    pub fn split(&self) -> JordanSplit {
        let mask = self.blocks.iter().map(|b| !b.anti).collect();
        JordanSplit {
            multiplicative: CentralProjection::new(mask),
        }
    }

    /// `J(x·z)` for a central projection `z` of the source.
    pub fn apply_part(&self, x: &AlgebraElement<T>, z: &CentralProjection) -> Result<AlgebraElement<T>> {
        let zx = z.to_projection(&self.source).element() * x;
        self.apply(&zx)
    }

    /// Radon–Nikodym factor `D_j = λ^source_{σ⁻¹(j)} / λ^target_j`.
    pub fn central_density(&self) -> CentralDensity<T> {
        let inv = self.sigma_inverse();
        CentralDensity {
            values: (0..self.target.num_blocks())
                .map(|j| self.source.weight(inv[j]) / self.target.weight(j))
                .collect(),
        }
    }

    /// Density of `φ ∘ J⁻¹` with respect to the target trace: `D · J(h)`.
    pub fn pushforward(&self, phi: &PositiveFunctional<T>) -> Result<PositiveFunctional<T>> {
        let jh = self.apply(phi.density())?;
        let d = self.central_density().element(&self.target, T::one());
        Ok(PositiveFunctional::new_unchecked(&d * &jh))
    }
}

/// `z` = union of the multiplicatively flagged source blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanSplit {
    pub multiplicative: CentralProjection,
}

impl JordanSplit {
    pub fn antimultiplicative(&self) -> CentralProjection {
        self.multiplicative.complement()
    }
}

/// Per-target-block positive scalars `D_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralDensity<T> {
    pub values: Vec<T>,
}

impl<T: Real> CentralDensity<T> {
    /// The central element `D^e`.
    pub fn element(&self, target: &AlgebraRef<T>, e: T) -> AlgebraElement<T> {
        let vals: Vec<_> = self.values.iter().map(|&v| cr(v.powf(e))).collect();
        AlgebraElement::central(target, &vals)
    }
}

/// Recovers the canonical form of a Jordan *-isomorphism from its dense matrix.
///
/// Checks bijectivity, unitality, *-preservation and the Jordan identity on
/// pairs of matrix units, then reads `σ` from the images of the minimal
/// central projections, the flag of each block from `L(e₁₂)L(e₂₁)` versus
/// `L(e₂₁)L(e₁₂)`, and the unitary from the images of `e_k1` (or `e_1k`).
pub fn classify_linear_map<T: Real>(l: &LinearMap<T>, tol: &Tolerances<T>) -> Result<JordanMap<T>> {
    let (src, tgt) = (l.source().clone(), l.target().clone());
    if src.dimension() != tgt.dimension() || src.num_blocks() != tgt.num_blocks() {
        return Err(Error::BlockMismatch("algebras of different shape".into()));
    }
    if !l.is_bijective() {
        return Err(Error::NotBijective);
    }
    let d = src.dimension();
    let cols: Vec<AlgebraElement<T>> = (0..d).map(|k| l.column_element(k)).collect();
    let scale = cols
        .iter()
        .map(|c| c.frobenius_norm())
        .fold(T::one(), |a, b| a.max(b));
    let eq = tol.eq * scale * scale;

    let id_img = l.apply(&AlgebraElement::identity(&src))?;
    if !id_img.approx_eq(&AlgebraElement::identity(&tgt), tol.eq) {
        return Err(Error::NotJordan("not unital".into()));
    }
    for k in 0..d {
        let (b, r, c) = src.basis_coords(k);
        let kt = src.basis_index(b, c, r);
        if cols[kt].distance(&cols[k].adjoint()) > tol.eq * scale {
            return Err(Error::NotJordan("not *-preserving".into()));
        }
    }
    // Jordan identity on pairs of matrix units:
    // e_ab ∘ e_cd = (δ_bc e_ad + δ_da e_cb) / 2 within a block, 0 across blocks.
    let half = cr(T::lit(0.5));
    for k1 in 0..d {
        let (b1, a, b) = src.basis_coords(k1);
        for k2 in k1..d {
            let (b2, c, dd) = src.basis_coords(k2);
            let mut lhs = AlgebraElement::zero(&tgt);
            if b1 == b2 {
                if b == c {
                    lhs = &lhs + &cols[src.basis_index(b1, a, dd)];
                }
                if dd == a {
                    lhs = &lhs + &cols[src.basis_index(b1, c, b)];
                }
                lhs = lhs.scale(half);
            }
            let rhs = cols[k1].jordan_product(&cols[k2])?;
            if lhs.distance(&rhs) > eq {
                return Err(Error::NotJordan(format!(
                    "Jordan identity fails on basis pair ({k1}, {k2})"
                )));
            }
        }
    }

    // σ from the images of the minimal central projections.
    let k = src.num_blocks();
    let mut sigma = vec![usize::MAX; k];
    let mut taken = vec![false; k];
    for i in 0..k {
        let img = l.apply(&crate::algebra::CentralProjection::minimal(k, i)
            .to_projection(&src)
            .into_element())?;
        let found = (0..k).find(|&j| {
            !taken[j]
                && tgt.block_dim(j) == src.block_dim(i)
                && img.approx_eq(
                    CentralProjection::minimal(k, j).to_projection(&tgt).element(),
                    tol.eq,
                )
        });
        match found {
            Some(j) => {
                sigma[i] = j;
                taken[j] = true;
            }
            None => {
                return Err(Error::BlockMismatch(format!(
                    "image of the unit of source block {i} is not a target block unit"
                )))
            }
        }
    }

    let mut blocks = Vec::with_capacity(k);
    for i in 0..k {
        let n = src.block_dim(i);
        let j = sigma[i];
        let img = |r: usize, c: usize| cols[src.basis_index(i, r, c)].block(j).clone();
        if n == 1 {
            blocks.push(JordanBlock {
                unitary: Mat::identity(1, 1),
                anti: false,
            });
            continue;
        }
        let e11 = img(0, 0);
        let mult_res = (&img(0, 1) * &img(1, 0) - &e11).norm();
        let anti_res = (&img(1, 0) * &img(0, 1) - &e11).norm();
        let anti = match (mult_res <= eq, anti_res <= eq) {
            (true, false) => false,
            (false, true) => true,
            _ => {
                return Err(Error::NotJordan(format!(
                    "block {i} is neither multiplicative nor antimultiplicative"
                )))
            }
        };
        // L(e11) = u₁u₁*; u_k = L(e_k1) u₁ (mult) or L(e_1k) u₁ (anti).
        let (vals, vecs) = linalg::eigh(&e11);
        let top = vals.len() - 1;
        let u1 = fix_phase(&vecs.columns(top, 1).into_owned());
        let mut u = Mat::zeros(n, n);
        for c in 0..n {
            let m = if anti { img(0, c) } else { img(c, 0) };
            u.set_column(c, &(m * &u1).column(0));
        }
        // Nearest unitary, which leaves exact input untouched.
        let dec = linalg::svd(&u);
        let u = fix_phase(&(&dec.u * dec.v.adjoint()));
        blocks.push(JordanBlock { unitary: u, anti });
    }
    let j = JordanMap::new(&src, &tgt, sigma, blocks, tol.eq * T::lit(10.0))?;
    let res = j.to_linear_map().distance(l)?;
    if res > tol.eq * T::lit(d as f64).sqrt().max(T::one()) * scale {
        return Err(Error::NotJordan(format!("reconstruction residual {}", res)));
    }
    Ok(j)
}

/// A uniformly random Jordan *-isomorphism between algebras with the same
/// multiset of block dimensions.
pub fn random_jordan<T: Real>(source: &AlgebraRef<T>, target: &AlgebraRef<T>, seed: u64) -> Result<JordanMap<T>> {
    let mut rng = rng_from_seed(seed);
    random_jordan_with(source, target, &mut rng)
}

pub fn random_jordan_with<T: Real, R: Rng + ?Sized>(
    source: &AlgebraRef<T>,
    target: &AlgebraRef<T>,
    rng: &mut R,
) -> Result<JordanMap<T>> {
    let mut sdims = source.dims();
    let mut tdims = target.dims();
    sdims.sort_unstable();
    tdims.sort_unstable();
    if sdims != tdims {
        return Err(Error::BlockMismatch(format!(
            "block dimensions {:?} and {:?} differ",
            source.dims(),
            target.dims()
        )));
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..target.num_blocks() {
        classes.entry(target.block_dim(j)).or_default().push(j);
    }
    for v in classes.values_mut() {
        v.shuffle(rng);
    }
    let mut sigma = Vec::with_capacity(source.num_blocks());
    let mut blocks = Vec::with_capacity(source.num_blocks());
    for i in 0..source.num_blocks() {
        let n = source.block_dim(i);
        sigma.push(classes.get_mut(&n).and_then(|v| v.pop()).expect("dimension classes match"));
        let unitary = haar_unitary_matrix(n, rng);
        let anti = n > 1 && rng.random_bool(0.5);
        blocks.push(JordanBlock { unitary, anti });
    }
    Ok(JordanMap {
        source: source.clone(),
        target: target.clone(),
        sigma,
        blocks,
    })
}
