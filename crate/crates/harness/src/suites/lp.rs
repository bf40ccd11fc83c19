use nclp_core::lp::{duality_representative, haagerup_pair};
use nclp_core::random::{gaussian_element, random_projection, random_state_density, rng_from_seed, SeededRng};
use nclp_core::{clarkson_defect, semi_inner_product, AlgebraRef, Isometry, Lp, PositiveFunctional, Projection};
use rand::Rng;

use crate::config::SuiteConfig;
use crate::instance::{generate_instance, random_algebra};
use crate::report::Outcome;

/// Pairs per exponent and instance; 50 instances give 200 of each kind.
const PAIRS: usize = 4;
/// Clarkson threshold in both directions.
const DEFECT_FLOOR: f64 = 1e-9;
/// Relative overlap `max(‖ξη*‖, ‖ξ*η‖) / (‖ξ‖‖η‖)` required of overlap pairs.
const MIN_OVERLAP: f64 = 0.1;
const PTH_ROOT_TOL: f64 = 1e-9;

fn ranked_projection(a: &AlgebraRef<f64>, ranks: &[usize], rng: &mut SeededRng) -> Projection<f64> {
    random_projection(a, ranks, rng).expect("ranks within block dimensions")
}

/// `ξ = l g r`, `η = (1−l) h (1−r)`, both nonzero whenever the algebra allows.
fn orthogonal_pair(a: &AlgebraRef<f64>, rng: &mut SeededRng) -> (nclp_core::Element, nclp_core::Element) {
    let dims = a.dims();
    let ranks = |rng: &mut SeededRng| dims.iter().map(|&n| rng.random_range(0..=n)).collect::<Vec<_>>();
    let (mut lr, mut rr) = (ranks(rng), ranks(rng));
    for _ in 0..32 {
        let left_ok = dims.iter().enumerate().any(|(i, _)| lr[i] > 0 && rr[i] > 0);
        let right_ok = dims.iter().enumerate().any(|(i, &n)| lr[i] < n && rr[i] < n);
        if left_ok && right_ok {
            break;
        }
        lr = ranks(rng);
        rr = ranks(rng);
    }
    let l = ranked_projection(a, &lr, rng);
    let r = ranked_projection(a, &rr, rng);
    let g = gaussian_element(a, rng);
    let h = gaussian_element(a, rng);
    (
        &(l.element() * &g) * r.element(),
        &(l.complement().element() * &h) * r.complement().element(),
    )
}

fn relative_overlap(x: &nclp_core::Element, y: &nclp_core::Element) -> f64 {
    let o = (x * &y.adjoint()).operator_norm().max((&x.adjoint() * y).operator_norm());
    o / (x.operator_norm() * y.operator_norm())
}

pub(super) fn clarkson(config: &SuiteConfig, seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let a = random_algebra(&mut rng, config.max_blocks, config.max_dim);
    let mut o = Outcome::new();
    for &p in &config.p_grid {
        for _ in 0..PAIRS {
            let (x, y) = orthogonal_pair(&a, &mut rng);
            match clarkson_defect(&Lp::new(x, p), &Lp::new(y, p)) {
                Ok(d) => o.bounded("orthogonal_max_defect", d.abs(), DEFECT_FLOOR),
                Err(e) => o.error("clarkson_defect", e),
            }
        }
        for _ in 0..PAIRS {
            let (mut x, mut y) = (gaussian_element(&a, &mut rng), gaussian_element(&a, &mut rng));
            while relative_overlap(&x, &y) < MIN_OVERLAP {
                x = gaussian_element(&a, &mut rng);
                y = gaussian_element(&a, &mut rng);
            }
            match clarkson_defect(&Lp::new(x, p), &Lp::new(y, p)) {
                Ok(d) => o.floored("overlap_min_defect", d.abs(), DEFECT_FLOOR),
                Err(e) => o.error("clarkson_defect", e),
            }
        }
    }
    o
}

/// SIP preservation through a structured isometry and `‖ζ_η‖_q = ‖η‖_p`
/// before and after.
pub(super) fn sip(config: &SuiteConfig, seed: u64) -> Outcome {
    let inst = generate_instance(config, seed);
    let mut rng = rng_from_seed(seed ^ 0x5150);
    let tol = config.tolerances;
    let mut o = Outcome::new();
    for &p in &config.p_grid {
        let t = match Isometry::synthesize(&inst.jordan, &inst.unitary, p, &tol) {
            Ok(t) => t,
            Err(e) => {
                o.error("synthesize", e);
                return o;
            }
        };
        for _ in 0..PAIRS {
            let scale = 10f64.powf(rng.random_range(-2.0..2.0));
            let xi = Lp::new(gaussian_element(&inst.source, &mut rng).scale_real(scale), p);
            let eta = Lp::new(gaussian_element(&inst.source, &mut rng), p);
            let res = (|| -> nclp_core::Result<(f64, f64, f64)> {
                let (txi, teta) = (t.apply(&xi)?, t.apply(&eta)?);
                let before = semi_inner_product(&xi, &eta)?;
                let after = semi_inner_product(&txi, &teta)?;
                let sip = (before - after).norm() / (xi.norm() * eta.norm());
                let mut duality: f64 = 0.0;
                let mut pairing: f64 = 0.0;
                for v in [&eta, &teta] {
                    let n = v.norm();
                    let zeta = duality_representative(v)?;
                    duality = duality.max((zeta.norm() - n).abs() / n);
                    pairing = pairing.max((haagerup_pair(v, &zeta)? - n * n).norm() / (n * n));
                }
                Ok((sip, duality, pairing))
            })();
            match res {
                Ok((s, d, h)) => {
                    o.bounded("sip_residual", s, tol.eq);
                    o.bounded("duality_norm_residual", d, tol.eq);
                    o.bounded_aux("duality_pairing_residual", h, tol.eq);
                }
                Err(e) => o.error("sip", e),
            }
        }
    }
    o
}

/// `‖φ^{1/p}‖_p = φ(1)^{1/p}` on random states.
pub(super) fn pth_root(config: &SuiteConfig, seed: u64) -> Outcome {
    let mut rng = rng_from_seed(seed);
    let a = random_algebra(&mut rng, config.max_blocks, config.max_dim);
    let mut o = Outcome::new();
    for k in 0..PAIRS {
        let mass = if k == 0 { rng.random_range(0.1..10.0) } else { 1.0 };
        let h = random_state_density(&a, &mut rng).scale_real(mass);
        let phi = match PositiveFunctional::new(h, config.tolerances.eq) {
            Ok(f) => f,
            Err(e) => {
                o.error("state", e);
                continue;
            }
        };
        for &p in &config.p_grid {
            match phi.pth_root(p) {
                Ok(root) => {
                    let want = phi.total_mass().powf(1.0 / p.as_f64());
                    o.bounded("pth_root_residual", (root.norm() - want).abs() / want, PTH_ROOT_TOL);
                }
                Err(e) => o.error("pth_root", e),
            }
        }
    }
    o
}
