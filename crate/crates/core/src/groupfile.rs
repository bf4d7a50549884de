//! JSON group definitions.
//!
//! ```json
//! {"generators": ["p", "q"],
//!  "coxeter_matrix": [[1, 4], [4, 1]],
//!  "cartan": [[2, -2], [-1, 2]],
//!  "delta": [{"num": 1, "den": 2}, 1]}
//! ```
//!
//! Coxeter labels use 0 for ∞. Scalars are integers or objects
//! `{num, den, surd_num, surd_den}` meaning num/den + (surd_num/surd_den)√d.
//! Without "cartan" the default Cartan matrix is used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cartan::{self, CoxeterMatrix};
use crate::coxeter::CoxeterGroup;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{is_square_free, QuadraticNumber};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Parts {
        num: i64,
        #[serde(default = "one")]
        den: i64,
        #[serde(default)]
        surd_num: i64,
        #[serde(default = "one")]
        surd_den: i64,
    },
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub generators: Vec<String>,
    pub coxeter_matrix: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<ScalarSpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<ScalarSpec>>,
}

impl ScalarSpec {
    fn to_scalar(&self, d: u64) -> Result<QuadraticNumber> {
        match *self {
            ScalarSpec::Int(n) => Ok(QuadraticNumber::from_ints(n, 1, 0, 1, 1)),
            ScalarSpec::Parts {
                num,
                den,
                surd_num,
                surd_den,
            } => {
                if den == 0 || surd_den == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                let b = BigRational::new(BigInt::from(surd_num), BigInt::from(surd_den));
                if !b.is_zero() && d == 1 {
                    return Err(Error::Parse("surd part given without \"d\"".into()));
                }
                Ok(QuadraticNumber::new(
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                    b,
                    d,
                ))
            }
        }
    }
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<CoxeterGroup<QuadraticNumber>> {
        let n = self.generators.len();
        let d = self.d.unwrap_or(1);
        if !is_square_free(d) {
            return Err(Error::Parse(format!("d = {d} is not square-free")));
        }
        if self.coxeter_matrix.len() != n || self.coxeter_matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCoxeterMatrix(
                "shape does not match generators".into(),
            ));
        }
        let rows: Vec<&[u32]> = self.coxeter_matrix.iter().map(Vec::as_slice).collect();
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let m = CoxeterMatrix::from_codes(&names, &rows)?;
        let data = match &self.cartan {
            None => cartan::standard_crystallographic_cartan(&m)?,
            Some(a) => {
                if a.len() != n || a.iter().any(|r| r.len() != n) {
                    return Err(Error::Parse(
                        "cartan shape does not match generators".into(),
                    ));
                }
                let rows = a
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_scalar(d)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let a = Matrix::from_rows(rows);
                match &self.delta {
                    None => cartan::validate_cartan(a, m)?,
                    Some(delta) => {
                        let delta = delta
                            .iter()
                            .map(|x| x.to_scalar(d))
                            .collect::<Result<Vec<_>>>()?;
                        cartan::validate_cartan_with_delta(a, m, delta)?
                    }
                }
            }
        };
        Ok(CoxeterGroup::new(data))
    }
}

/// Parses and builds a group from JSON text.
pub fn group_from_json(text: &str) -> Result<CoxeterGroup<QuadraticNumber>> {
    GroupSpec::from_json(text)?.build()
}
