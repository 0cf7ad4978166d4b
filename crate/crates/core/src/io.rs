//! JSON-facing document types and string codecs.
//!
//! Polynomials travel as ascending arrays of rational strings ("num/den",
//! denominator omitted when 1); the zero polynomial is the empty array.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational};
use crate::sobolev::SobolevSpec;

pub fn poly_to_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

pub fn poly_from_strings(coeffs: &[String]) -> Result<Poly> {
    Ok(Poly::from_coeffs(
        coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?,
    ))
}

pub fn matrix_to_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> Result<RationalMatrix> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(parsed)
}

/// The input document: {"alpha": int, "m": int, "M": [[rational strings]],
/// "S": [rational strings] (optional, ascending), "N": int (optional)}.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecDoc {
    pub alpha: i64,
    pub m: usize,
    #[serde(rename = "M")]
    pub mass: Vec<Vec<String>>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<SobolevSpec> {
        let mass = matrix_from_strings(&self.mass)?;
        SobolevSpec::new(self.alpha, self.m, mass)
    }

    /// S defaults to the constant 1; an explicitly zero S is rejected.
    pub fn s_poly(&self) -> Result<Poly> {
        match &self.s {
            None => Ok(Poly::one()),
            Some(coeffs) => {
                let p = poly_from_strings(coeffs)?;
                if p.is_zero() {
                    return Err(Error::DimensionMismatch {
                        context: "S must be a nonzero polynomial".into(),
                    });
                }
                Ok(p)
            }
        }
    }

    pub fn from_spec(spec: &SobolevSpec, s: Option<&Poly>, n: Option<u64>) -> Self {
        SpecDoc {
            alpha: spec.alpha(),
            m: spec.m(),
            mass: matrix_to_strings(spec.mass()),
            s: s.map(poly_to_strings),
            n,
        }
    }
}

/// Output of the construct command.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConstructDoc {
    pub alpha: i64,
    pub m: usize,
    #[serde(rename = "R")]
    pub r: Vec<Vec<String>>,
    pub omega: Vec<String>,
    #[serde(rename = "rootFree")]
    pub root_free: bool,
    pub witness: Option<u64>,
    pub q: Vec<Vec<String>>,
    pub betas: Vec<Vec<String>>,
}

/// Output of the operator command.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OperatorDoc {
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "PS")]
    pub ps: Vec<String>,
    #[serde(rename = "Mh")]
    pub mh: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<String>>,
    pub order: usize,
    pub eigenvalues: Vec<String>,
}

/// Output of the awr command; exactly {"nj", "mj", "awr"}.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AwrDoc {
    pub nj: Vec<i64>,
    pub mj: Vec<i64>,
    pub awr: i64,
}
