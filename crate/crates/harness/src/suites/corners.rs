use nclp_core::corner::{max_cross_sip, product_central_supports};
use nclp_core::diagnostics::{check_module_relation, corner_image, extract_right_orthoiso, push_set};
use nclp_core::random::{gaussian_element, haar_unitary, random_projection, rng_from_seed, SeededRng};
use nclp_core::scalar::C;
use nclp_core::{clarkson_defect, decompose, orthocomplement, AlgebraRef, Corner, Element, Exponent, Isometry, Lp, Projection};
use rand::Rng;

use crate::config::SuiteConfig;
use crate::instance::{generate_instance, Instance};
use crate::report::{Outcome, Reduce};

const DEFECT_FLOOR: f64 = 1e-9;
/// Corner trials per instance; 50 instances give 100 corners.
const TRIALS: usize = 2;

fn any_projection(a: &AlgebraRef<f64>, rng: &mut SeededRng) -> Projection<f64> {
    let ranks: Vec<usize> = a.dims().iter().map(|&n| rng.random_range(0..=n)).collect();
    random_projection(a, &ranks, rng).expect("ranks within block dimensions")
}

/// A random rank-deficient vector, so that orthocomplements are nontrivial.
fn thin_vector(a: &AlgebraRef<f64>, p: Exponent<f64>, rng: &mut SeededRng) -> Lp {
    let l = any_projection(a, rng);
    let r = any_projection(a, rng);
    Lp::new(&(l.element() * &gaussian_element(a, rng)) * r.element(), p)
}

fn unit(v: &Lp) -> Option<Lp> {
    let n = v.norm();
    (n > 0.0).then(|| v.scale(C::new(1.0 / n, 0.0)))
}

/// A certified raw isometry for the instance, or the error that stopped it.
fn certified(inst: &Instance, config: &SuiteConfig) -> nclp_core::Result<(Isometry, nclp_core::Decomposition<f64>)> {
    let t = Isometry::synthesize(&inst.jordan, &inst.unitary, inst.p, &config.tolerances)?.to_raw();
    let d = decompose(&t, &config.tolerances)?;
    Ok((t, d))
}

/// Orthocomplements are corners Clarkson-orthogonal to the set; corner images
/// are corners of the same dimension; orthocomplements transport; corners with
/// vanishing cross SIPs have centrally orthogonal products, before and after `T`.
pub(super) fn corners(config: &SuiteConfig, seed: u64) -> Outcome {
    let inst = generate_instance(config, seed);
    let mut rng = rng_from_seed(seed ^ 0xC0);
    let mut o = Outcome::new();
    let t = match certified(&inst, config) {
        Ok((t, _)) => t,
        Err(e) => {
            o.error("certify", e);
            return o;
        }
    };
    for _ in 0..TRIALS {
        if let Err(e) = corner_calculus(&t, &inst, config, &mut rng, &mut o) {
            o.error("corner calculus", e);
            break;
        }
    }
    o
}

fn corner_calculus(
    t: &Isometry,
    inst: &Instance,
    config: &SuiteConfig,
    rng: &mut SeededRng,
    o: &mut Outcome,
) -> nclp_core::Result<()> {
    let (s, p, tol) = (&inst.source, inst.p, config.tolerances);
    let set: Vec<Lp> = (0..rng.random_range(1..=2)).map(|_| thin_vector(s, p, rng)).collect();
    let perp = orthocomplement(s, p, &set)?;
    let mut worst: f64 = 0.0;
    for x in perp.basis().iter().filter_map(unit) {
        for y in set.iter().filter_map(unit) {
            worst = worst.max(clarkson_defect(&x, &y)?.abs());
        }
    }
    o.bounded_aux("orthocomplement_max_defect", worst, DEFECT_FLOOR);

    let image = corner_image(t, &perp, &tol)?;
    let pushed = orthocomplement(&inst.target, p, &push_set(t, &set)?)?;
    o.require("orthocomplement transported", image.output.approx_eq(&pushed, tol.eq));

    let c = Corner::new(any_projection(s, rng), any_projection(s, rng), p)?;
    let img = corner_image(t, &c, &tol)?;
    o.require("image dimension matches", img.output.dimension() == c.dimension());
    o.bounded("corner_image_residual", img.forward_residual.max(img.reverse_residual), tol.eq);

    // Half the time force q1 below the complement of p1 so the hypothesis can hold.
    let (p1, p2) = (any_projection(s, rng), any_projection(s, rng));
    let mut q1 = any_projection(s, rng);
    if rng.random_bool(0.5) {
        q1 = q1.join(&p1)?.meet(&p1.complement())?;
    }
    let q2 = any_projection(s, rng);
    let (c1, c2) = (Corner::new(p1, p2, p)?, Corner::new(q1, q2, p)?);
    if max_cross_sip(&c1, &c2)? <= tol.eq {
        o.metric("sip_vanishing_pairs", Reduce::Sum, 1.0);
        let (x1, x2) = product_central_supports(&c1, &c2, tol.eq)?;
        o.require("central orthogonality", x1.is_orthogonal(&x2));
        let (i1, i2) = (corner_image(t, &c1, &tol)?.output, corner_image(t, &c2, &tol)?.output);
        o.bounded_aux("image_cross_sip", max_cross_sip(&i1, &i2)?, tol.eq);
        let (y1, y2) = product_central_supports(&i1, &i2, tol.eq)?;
        o.require("central orthogonality of images", y1.is_orthogonal(&y2));
    }
    Ok(())
}

/// Disjoint projections `e = u P₁ u*`, `f = u P₂ u*` with diagonal `P₁ ⊥ P₂`.
fn disjoint_pair(a: &AlgebraRef<f64>, rng: &mut SeededRng) -> (Projection<f64>, Projection<f64>) {
    let u = haar_unitary(a, rng);
    let labels: Vec<Vec<u8>> = a.dims().iter().map(|&n| (0..n).map(|_| rng.random_range(0..3)).collect()).collect();
    let diag = |which: u8| -> Element {
        let d = Element::from_fn(a, |b, r, c| {
            if r == c && labels[b][r] == which {
                C::new(1.0, 0.0)
            } else {
                C::new(0.0, 0.0)
            }
        });
        &(&u * &d) * &u.adjoint()
    };
    let e = Projection::try_from_element(&diag(1), 1e-8).expect("unitary conjugate of a projection");
    let f = Projection::try_from_element(&diag(2), 1e-8).expect("unitary conjugate of a projection");
    (e, f)
}

/// `z′` consistent across test columns, `π_r` orthogonality-preserving and
/// equal to the decomposed `J`, module relation within tolerance.
pub(super) fn orthoiso(config: &SuiteConfig, seed: u64) -> Outcome {
    let inst = generate_instance(config, seed);
    let mut rng = rng_from_seed(seed ^ 0x0150);
    let mut o = Outcome::new();
    let (t, d) = match certified(&inst, config) {
        Ok(x) => x,
        Err(e) => {
            o.error("certify", e);
            return o;
        }
    };
    match orthoiso_checks(&t, &d, &inst, config, seed, &mut rng) {
        Ok(inner) => inner,
        Err(e) => {
            o.error("orthoisomorphism", e);
            o
        }
    }
}

fn orthoiso_checks(
    t: &Isometry,
    d: &nclp_core::Decomposition<f64>,
    inst: &Instance,
    config: &SuiteConfig,
    seed: u64,
    rng: &mut SeededRng,
) -> nclp_core::Result<Outcome> {
    let tol = config.tolerances;
    let mut o = Outcome::new();
    let pi = extract_right_orthoiso(t, &tol, seed)?;
    let (e, f) = disjoint_pair(&inst.source, rng);
    let (pe, pf) = (pi.apply(&e)?, pi.apply(&f)?);
    o.bounded("orthogonality_residual", (pe.element() * pf.element()).frobenius_norm(), tol.eq);
    let je = d.jordan.apply(e.element())?;
    o.bounded("pi_r_vs_jordan", pe.element().distance(&je), tol.eq);
    let consistent = d.jordan.sigma_inverse().iter().enumerate().all(|(j, &i)| {
        let column = inst.source.block_dim(i) == 1 || !d.jordan.blocks()[i].anti;
        pi.column_blocks().contains(j) == column
    });
    o.require("column blocks match multiplicative part", consistent);
    let rel = check_module_relation(t, &pi, &d.jordan, 4, seed)?;
    o.bounded("module_relation_residual", rel.max_residual(), tol.eq);
    Ok(o)
}
