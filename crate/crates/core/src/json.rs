//! JSON encodings. Numbers are written as `f64`; `∞` as the string `"inf"`.
//!
//! Element blocks are row-major nested arrays of `{"re", "im"}`. Raw isometry
//! matrices are `d_target × d_source` in the matrix-unit basis, block-major and
//! row-major within blocks.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraRef, BlockSpec, MultiMatrixAlgebra};
use crate::error::{Error, Result};
use crate::isometry::{Decomposition, LpIsometry};
use crate::jordan::{JordanBlock, JordanMap};
use crate::linear_map::LinearMap;
use crate::lp::{Exponent, LpVector};
use crate::scalar::{Mat, Real, C};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

type MatrixJson = Vec<Vec<ComplexJson>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BlockJson {
    dim: usize,
    weight: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AlgebraJson {
    blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentJson {
    Number(f64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ElementJson {
    algebra: AlgebraJson,
    blocks: Vec<MatrixJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct LpVectorJson {
    algebra: AlgebraJson,
    blocks: Vec<MatrixJson>,
    p: ExponentJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct JordanBlockJson {
    unitary: MatrixJson,
    anti: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct JordanJson {
    source: AlgebraJson,
    target: AlgebraJson,
    sigma: Vec<usize>,
    blocks: Vec<JordanBlockJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct IsometryJson {
    p: ExponentJson,
    source: AlgebraJson,
    target: AlgebraJson,
    matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DecompositionJson {
    unitary: ElementJson,
    jordan: JordanJson,
    residual: f64,
}

fn enc_matrix<T: Real>(m: &Mat<T>) -> MatrixJson {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| ComplexJson {
                    re: m[(r, c)].re.as_f64(),
                    im: m[(r, c)].im.as_f64(),
                })
                .collect()
        })
        .collect()
}

fn dec_matrix<T: Real>(m: &MatrixJson, rows: usize, cols: usize) -> Result<Mat<T>> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Format(format!("expected a {rows}x{cols} matrix")));
    }
    Ok(Mat::from_fn(rows, cols, |r, c| {
        C::new(T::lit(m[r][c].re), T::lit(m[r][c].im))
    }))
}

fn enc_algebra<T: Real>(a: &MultiMatrixAlgebra<T>) -> AlgebraJson {
    AlgebraJson {
        blocks: a
            .blocks()
            .iter()
            .map(|b| BlockJson {
                dim: b.dim,
                weight: b.weight.as_f64(),
            })
            .collect(),
    }
}

fn dec_algebra<T: Real>(a: &AlgebraJson) -> Result<AlgebraRef<T>> {
    MultiMatrixAlgebra::new(
        a.blocks
            .iter()
            .map(|b| BlockSpec {
                dim: b.dim,
                weight: T::lit(b.weight),
            })
            .collect(),
    )
}

fn enc_exponent<T: Real>(p: Exponent<T>) -> ExponentJson {
    match p {
        Exponent::Infinity => ExponentJson::Text("inf".into()),
        Exponent::Finite(v) => ExponentJson::Number(v.as_f64()),
    }
}

fn dec_exponent<T: Real>(p: &ExponentJson) -> Result<Exponent<T>> {
    match p {
        ExponentJson::Number(v) => Exponent::from_f64(*v),
        ExponentJson::Text(s) => s.parse(),
    }
}

fn enc_element<T: Real>(x: &AlgebraElement<T>) -> ElementJson {
    ElementJson {
        algebra: enc_algebra(x.algebra()),
        blocks: x.blocks().iter().map(enc_matrix).collect(),
    }
}

fn dec_blocks<T: Real>(alg: &AlgebraRef<T>, blocks: &[MatrixJson]) -> Result<AlgebraElement<T>> {
    if blocks.len() != alg.num_blocks() {
        return Err(Error::Format(format!(
            "expected {} blocks, got {}",
            alg.num_blocks(),
            blocks.len()
        )));
    }
    let mats = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| dec_matrix(b, alg.block_dim(i), alg.block_dim(i)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_blocks(alg, mats)
}

fn enc_jordan<T: Real>(j: &JordanMap<T>) -> JordanJson {
    JordanJson {
        source: enc_algebra(j.source()),
        target: enc_algebra(j.target()),
        sigma: j.sigma().to_vec(),
        blocks: j
            .blocks()
            .iter()
            .map(|b| JordanBlockJson {
                unitary: enc_matrix(&b.unitary),
                anti: b.anti,
            })
            .collect(),
    }
}

fn dec_jordan<T: Real>(j: &JordanJson) -> Result<JordanMap<T>> {
    let source = dec_algebra(&j.source)?;
    let target = dec_algebra(&j.target)?;
    if j.sigma.len() != source.num_blocks() || j.blocks.len() != source.num_blocks() {
        return Err(Error::Format("sigma and blocks must have one entry per source block".into()));
    }
    let mut blocks = Vec::with_capacity(j.blocks.len());
    for (i, b) in j.blocks.iter().enumerate() {
        let n = source.block_dim(i);
        blocks.push(JordanBlock {
            unitary: dec_matrix(&b.unitary, n, n)?,
            anti: b.anti,
        });
    }
    // Input is f64 text; unitarity is checked at the f64 round-trip scale.
    JordanMap::new(&source, &target, j.sigma.clone(), blocks, T::default_eq_tol())
}

/// Types with a JSON encoding.
pub trait Json: Sized {
    fn to_value(&self) -> serde_json::Value;
    fn from_value(value: serde_json::Value) -> Result<Self>;

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("JSON values always serialize")
    }

    fn from_json(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }
}

fn to_value<S: Serialize>(s: &S) -> serde_json::Value {
    serde_json::to_value(s).expect("plain data always serializes")
}

impl<T: Real> Json for AlgebraRef<T> {
    fn to_value(&self) -> serde_json::Value {
        to_value(&enc_algebra(self))
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        dec_algebra(&serde_json::from_value(value)?)
    }
}

impl<T: Real> Json for AlgebraElement<T> {
    fn to_value(&self) -> serde_json::Value {
        to_value(&enc_element(self))
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let e: ElementJson = serde_json::from_value(value)?;
        dec_blocks(&dec_algebra(&e.algebra)?, &e.blocks)
    }
}

impl<T: Real> Json for LpVector<T> {
    fn to_value(&self) -> serde_json::Value {
        let e = enc_element(self.element());
        to_value(&LpVectorJson {
            algebra: e.algebra,
            blocks: e.blocks,
            p: enc_exponent(self.p()),
        })
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let v: LpVectorJson = serde_json::from_value(value)?;
        let x = dec_blocks(&dec_algebra(&v.algebra)?, &v.blocks)?;
        Ok(LpVector::new(x, dec_exponent(&v.p)?))
    }
}

impl<T: Real> Json for JordanMap<T> {
    fn to_value(&self) -> serde_json::Value {
        to_value(&enc_jordan(self))
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        dec_jordan(&serde_json::from_value(value)?)
    }
}

/// Always written in raw form; structured isometries are densified.
impl<T: Real> Json for LpIsometry<T> {
    fn to_value(&self) -> serde_json::Value {
        let m = self.to_linear_map();
        to_value(&IsometryJson {
            p: enc_exponent(self.p()),
            source: enc_algebra(m.source()),
            target: enc_algebra(m.target()),
            matrix: enc_matrix(m.matrix()),
        })
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let v: IsometryJson = serde_json::from_value(value)?;
        let source = dec_algebra(&v.source)?;
        let target = dec_algebra(&v.target)?;
        let m = dec_matrix(&v.matrix, target.dimension(), source.dimension())?;
        Ok(LpIsometry::raw(LinearMap::new(&source, &target, m)?, dec_exponent(&v.p)?))
    }
}

impl<T: Real> Json for Decomposition<T> {
    fn to_value(&self) -> serde_json::Value {
        to_value(&DecompositionJson {
            unitary: enc_element(&self.unitary),
            jordan: enc_jordan(&self.jordan),
            residual: self.residual.as_f64(),
        })
    }

    fn from_value(value: serde_json::Value) -> Result<Self> {
        let d: DecompositionJson = serde_json::from_value(value)?;
        Ok(Decomposition {
            unitary: dec_blocks(&dec_algebra(&d.unitary.algebra)?, &d.unitary.blocks)?,
            jordan: dec_jordan(&d.jordan)?,
            residual: T::lit(d.residual),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::random_jordan;
    use crate::random::{gaussian_element, haar_unitary, rng_from_seed};
    use crate::scalar::Tolerances;

    #[test]
    fn algebra_descriptor_format() {
        let a: AlgebraRef<f64> = Json::from_json(r#"{"blocks":[{"dim":2,"weight":1.0},{"dim":1,"weight":0.5}]}"#).unwrap();
        assert_eq!(a.dims(), vec![2, 1]);
        assert_eq!(a.weight(1), 0.5);
    }

    #[test]
    fn lp_vector_round_trip_and_infinity() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(2, 1.0), (1, 0.5)]).unwrap();
        let x = gaussian_element(&a, &mut rng_from_seed(1));
        for p in [Exponent::Finite(3.0), Exponent::Infinity] {
            let v = LpVector::new(x.clone(), p);
            let text = v.to_json();
            let back = LpVector::<f64>::from_json(&text).unwrap();
            assert_eq!(back.p(), p);
            assert!(back.element().distance(&x) == 0.0);
        }
        assert!(LpVector::new(x, Exponent::Infinity).to_json().contains("\"inf\""));
    }

    #[test]
    fn isometry_and_decomposition_round_trip() {
        let a = MultiMatrixAlgebra::<f64>::from_pairs(&[(2, 1.0), (1, 2.0)]).unwrap();
        let j = random_jordan(&a, &a, 4).unwrap();
        let w = haar_unitary(&a, &mut rng_from_seed(5));
        let tol = Tolerances::default();
        let t = LpIsometry::synthesize(&j, &w, Exponent::Finite(1.5), &tol).unwrap();
        let back = LpIsometry::<f64>::from_json(&t.to_json()).unwrap();
        assert!(back.to_linear_map().distance(&t.to_linear_map()).unwrap() == 0.0);
        let d = crate::isometry::decompose(&back, &tol).unwrap();
        let d2 = Decomposition::<f64>::from_json(&d.to_json()).unwrap();
        assert!(d2.unitary.distance(&d.unitary) == 0.0);
        assert!(d2.jordan.distance(&d.jordan).unwrap() == 0.0);
        assert!(matches!(
            JordanMap::<f64>::from_json(r#"{"sigma":[0]}"#),
            Err(Error::Format(_))
        ));
    }
}
