//! JSON file formats: operator tuples, hyperholomorphic coefficient files,
//! matrix-valued multivectors and run reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{Blade, CMatrix, Multivector};
use crate::error::{Error, Result};
use crate::matrix::{from_nested, hermitian_residual, to_nested};
use crate::polyspace::{HyperPolynomial, MultiIndex, OperatorTuple, HERMITIAN_TOL};

/// Row-major matrix with entries as `[re, im]`.
pub type NestedMatrix = Vec<Vec<[f64; 2]>>;

pub const REPORT_SCHEMA: &str = "rcc-report/1";

/// An operator tuple on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub m: usize,
    pub d: usize,
    pub matrices: Vec<NestedMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl OperatorFile {
    pub fn from_tuple(tuple: &OperatorTuple) -> Self {
        OperatorFile {
            m: tuple.m(),
            d: tuple.d(),
            matrices: tuple.matrices().iter().map(to_nested).collect(),
            labels: None,
        }
    }

    /// Parses the matrices without checking Hermiticity.
    pub fn matrices(&self) -> Result<Vec<CMatrix>> {
        if self.matrices.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: self.matrices.len() });
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.m {
                return Err(Error::DimensionMismatch { expected: self.m, found: labels.len() });
            }
        }
        self.matrices
            .iter()
            .map(|rows| {
                let a = from_nested(rows).ok_or(Error::DimensionMismatch { expected: self.d, found: rows.len() })?;
                if a.nrows() != self.d {
                    return Err(Error::DimensionMismatch { expected: self.d, found: a.nrows() });
                }
                Ok(a)
            })
            .collect()
    }

    /// Absolute Hermiticity residual `||A - A*||_F` of every matrix.
    pub fn hermitian_residuals(&self) -> Result<Vec<f64>> {
        Ok(self.matrices()?.iter().map(hermitian_residual).collect())
    }

    pub fn to_tuple(&self) -> Result<OperatorTuple> {
        self.to_tuple_with_tolerance(HERMITIAN_TOL)
    }

    pub fn to_tuple_with_tolerance(&self, tol: f64) -> Result<OperatorTuple> {
        OperatorTuple::with_tolerance(self.matrices()?, tol)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BladeValue {
    /// 1-based generator indices; empty for `e0`.
    pub blade: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperTerm {
    pub alpha: Vec<u32>,
    pub coeffs: Vec<BladeValue>,
}

/// `f = sum_alpha V_alpha c_alpha` on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperPolyFile {
    pub n: usize,
    pub terms: Vec<HyperTerm>,
}

impl HyperPolyFile {
    pub fn from_poly(p: &HyperPolynomial) -> Self {
        let terms = p
            .terms()
            .map(|(alpha, c)| HyperTerm {
                alpha: alpha.exps().to_vec(),
                coeffs: c.terms().map(|(b, v)| BladeValue { blade: b.indices(), value: *v }).collect(),
            })
            .collect();
        HyperPolyFile { n: p.n(), terms }
    }

    pub fn to_poly(&self) -> Result<HyperPolynomial> {
        let mut p = HyperPolynomial::zero(self.n);
        for term in &self.terms {
            let mut c = Multivector::zero(self.n);
            for bv in &term.coeffs {
                let blade = Blade::from_indices(&bv.blade)?;
                if !blade.is_valid_for(self.n) {
                    return Err(Error::InvalidDimension { index: bv.blade.iter().copied().max().unwrap_or(0), n: self.n });
                }
                c.accumulate(blade, bv.value);
            }
            p.add_term(MultiIndex::new(term.alpha.clone()), c)?;
        }
        Ok(p)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BladeMatrix {
    pub blade: Vec<usize>,
    pub matrix: NestedMatrix,
}

/// A matrix-coefficient multivector, collapsed to a plain matrix when only
/// the `e0` part is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixMultivectorJson {
    Matrix { n: usize, matrix: NestedMatrix },
    Multivector { n: usize, terms: Vec<BladeMatrix> },
}

impl MatrixMultivectorJson {
    pub fn from_multivector(x: &Multivector<CMatrix>) -> Self {
        let terms: Vec<BladeMatrix> =
            x.terms().map(|(b, m)| BladeMatrix { blade: b.indices(), matrix: to_nested(m) }).collect();
        match terms.as_slice() {
            [only] if only.blade.is_empty() => {
                MatrixMultivectorJson::Matrix { n: x.n(), matrix: only.matrix.clone() }
            }
            _ => MatrixMultivectorJson::Multivector { n: x.n(), terms },
        }
    }

    pub fn to_multivector(&self) -> Result<Multivector<CMatrix>> {
        let (n, terms) = match self {
            MatrixMultivectorJson::Matrix { n, matrix } => {
                (*n, vec![BladeMatrix { blade: Vec::new(), matrix: matrix.clone() }])
            }
            MatrixMultivectorJson::Multivector { n, terms } => (*n, terms.clone()),
        };
        let mut out = BTreeMap::new();
        for t in terms {
            let m = from_nested(&t.matrix).ok_or(Error::DimensionMismatch { expected: t.matrix.len(), found: 0 })?;
            out.insert(Blade::from_indices(&t.blade)?, m);
        }
        Multivector::from_terms(n, out)
    }
}

/// `serde(with = ...)` adapter for `Multivector<CMatrix>` fields.
pub mod matrix_multivector {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Multivector<CMatrix>, s: S) -> Result<S::Ok, S::Error> {
        MatrixMultivectorJson::from_multivector(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Multivector<CMatrix>, D::Error> {
        MatrixMultivectorJson::deserialize(d)?.to_multivector().map_err(serde::de::Error::custom)
    }
}

/// `serde(with = ...)` adapter for plain matrices.
pub mod nested_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(a: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        to_nested(a).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
        let rows = NestedMatrix::deserialize(d)?;
        from_nested(&rows).ok_or_else(|| serde::de::Error::custom("matrix must be square"))
    }
}

/// Envelope written by every CLI command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: Vec<String>,
    pub config: serde_json::Value,
    pub result: serde_json::Value,
    pub diagnostics: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
    pub version: String,
}

impl RunReport {
    pub fn new(command: Vec<String>, config: serde_json::Value) -> Self {
        RunReport {
            schema: REPORT_SCHEMA.to_string(),
            command,
            config,
            result: serde_json::Value::Null,
            diagnostics: serde_json::Value::Null,
            wall_time_s: None,
            version: crate::VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::identity;
    use num_complex::Complex64;

    #[test]
    fn operator_file_round_trip() {
        let t1 = CMatrix::from_row_slice(2, 2, &[1.0.into(), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), (-1.0).into()]);
        let tuple = OperatorTuple::new(vec![t1, identity(2)]).unwrap();
        let file = OperatorFile::from_tuple(&tuple);
        let text = serde_json::to_string(&file).unwrap();
        let back: OperatorFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_tuple().unwrap().matrices(), tuple.matrices());
        assert!(text.contains("[0.0,-1.0]"));
    }

    #[test]
    fn operator_file_rejects_bad_input() {
        let file: OperatorFile =
            serde_json::from_str(r#"{"m":1,"d":2,"matrices":[[[[0,0],[1,0]],[[0,0],[0,0]]]]}"#).unwrap();
        assert!(matches!(file.to_tuple(), Err(Error::NotHermitian { index: 0, .. })));
        assert!(file.hermitian_residuals().unwrap()[0] > 0.9);
        let file: OperatorFile = serde_json::from_str(r#"{"m":2,"d":1,"matrices":[[[[1,0]]]]}"#).unwrap();
        assert!(matches!(file.to_tuple(), Err(Error::DimensionMismatch { .. })));
        let file: OperatorFile = serde_json::from_str(r#"{"m":1,"d":2,"matrices":[[[[1,0]]]]}"#).unwrap();
        assert!(matches!(file.to_tuple(), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn hyper_poly_file() {
        let f: HyperPolyFile =
            serde_json::from_str(r#"{"n":2,"terms":[{"alpha":[1,0],"coeffs":[{"blade":[1,2],"value":0.5}]}]}"#).unwrap();
        let p = f.to_poly().unwrap();
        let (alpha, c) = p.terms().next().unwrap();
        assert_eq!(alpha.exps(), &[1, 0]);
        assert_eq!(c.coeff(Blade::from_bits(0b11)), 0.5);
        assert_eq!(HyperPolyFile::from_poly(&p), f);
        let bad: HyperPolyFile = serde_json::from_str(r#"{"n":1,"terms":[{"alpha":[0],"coeffs":[{"blade":[2],"value":1}]}]}"#).unwrap();
        assert!(bad.to_poly().is_err());
    }

    #[test]
    fn matrix_multivector_collapses() {
        let scalar = Multivector::<f64>::one(2).tensor_matrix(&identity(2));
        let json = MatrixMultivectorJson::from_multivector(&scalar);
        assert!(matches!(json, MatrixMultivectorJson::Matrix { .. }));
        assert_eq!(json.to_multivector().unwrap(), scalar);
        let e1 = Multivector::<f64>::generator(2, 1).unwrap().tensor_matrix(&identity(2));
        let mixed = &scalar + &e1;
        let json = MatrixMultivectorJson::from_multivector(&mixed);
        assert!(matches!(json, MatrixMultivectorJson::Multivector { .. }));
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixMultivectorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_multivector().unwrap(), mixed);
    }
}
