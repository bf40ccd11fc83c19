//! Finite-dimensional noncommutative `L^p` spaces.
//!
//! The von Neumann algebra is a weighted direct sum `⊕ M_{n_i}` with trace
//! `τ(x) = Σ λ_i tr(x_i)`; `L^p` is the same vector space under
//! `‖ξ‖_p = τ(|ξ|^p)^{1/p}`. On top of that sit Clarkson orthogonality, the
//! semi-inner product, corners, Jordan *-isomorphisms, and the synthesis and
//! decomposition of surjective isometries `T = w · D^{1/p} · J`.
//!
//! Everything is generic over [`Real`] (`f32`, `f64`); the unsuffixed aliases
//! below fix `f64`.
//!
//! ```
//! use nclp_core::{decompose, random_jordan, Algebra, Exponent, Isometry, Tolerances};
//! use nclp_core::random::{haar_unitary, rng_from_seed};
//!
//! let a = Algebra::from_pairs(&[(2, 1.0), (1, 0.5)]).unwrap();
//! let j = random_jordan(&a, &a, 7).unwrap();
//! let w = haar_unitary(&a, &mut rng_from_seed(8));
//! let tol = Tolerances::default();
//! let t = Isometry::synthesize(&j, &w, Exponent::Finite(3.0), &tol).unwrap();
//! let d = decompose(&t.to_raw(), &tol).unwrap();
//! assert!(d.unitary.distance(&w) < 1e-8);
//! ```

pub mod algebra;
pub mod corner;
pub mod diagnostics;
pub mod error;
pub mod isometry;
pub mod jordan;
pub mod json;
pub mod linear_map;
mod linalg;
pub mod lp;
pub mod random;
pub mod scalar;

pub use algebra::{AlgebraElement, AlgebraRef, BlockSpec, CentralProjection, MultiMatrixAlgebra, Projection};
pub use corner::{orthocomplement, Corner};
pub use error::{Error, Result};
pub use isometry::{decompose, verify_isometry_sampled, Decomposition, LpIsometry};
pub use jordan::{classify_linear_map, random_jordan, JordanBlock, JordanMap};
pub use json::Json;
pub use linear_map::LinearMap;
pub use lp::{clarkson_defect, semi_inner_product, Exponent, LpVector, PositiveFunctional};
pub use scalar::{Real, Tolerances};

pub type Algebra = MultiMatrixAlgebra<f64>;
pub type Element = AlgebraElement<f64>;
pub type Lp = LpVector<f64>;
pub type Jordan = JordanMap<f64>;
pub type Isometry = LpIsometry<f64>;
pub type Algebra32 = MultiMatrixAlgebra<f32>;
pub type Isometry32 = LpIsometry<f32>;
