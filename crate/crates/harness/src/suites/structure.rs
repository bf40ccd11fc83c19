use nclp_core::{decompose, Isometry};

use crate::config::SuiteConfig;
use crate::instance::generate_instance;
use crate::report::Outcome;

/// `decompose(synthesize(J, w, p))` against `(w, J)`, then the resynthesized
/// dense map against the input.
pub(super) fn roundtrip(config: &SuiteConfig, seed: u64) -> Outcome {
    let inst = generate_instance(config, seed);
    let tol = config.tolerances;
    let mut o = Outcome::new();
    let t = match Isometry::synthesize(&inst.jordan, &inst.unitary, inst.p, &tol) {
        Ok(t) => t.to_raw(),
        Err(e) => {
            o.error("synthesize", e);
            return o;
        }
    };
    match decompose(&t, &tol) {
        Ok(d) => {
            o.bounded("w_residual", d.unitary.distance(&inst.unitary), tol.eq);
            match d.jordan.distance(&inst.jordan) {
                Some(r) => o.bounded("jordan_residual", r, tol.eq),
                None => o.require("recovered sigma and flags match", false),
            }
            o.bounded_aux("resynthesis_residual", d.residual, tol.cert);
        }
        Err(e) => o.error(&format!("decompose at p = {}", inst.p), e),
    }
    o
}
