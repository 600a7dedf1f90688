//! JSON interchange for forms:
//! `{dim, degree, terms: [{idx: [..], poly: [{exps: [..], num, den}]}]}`.
//!
//! Numerators and denominators are emitted as decimal strings so arbitrary
//! precision survives the round trip; plain JSON integers are accepted on
//! input.

use super::{FormError, MultiIndex, PolyForm, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Int(i64),
    Str(String),
}

impl IntRepr {
    fn to_bigint(&self) -> Result<BigInt, FormError> {
        match self {
            IntRepr::Int(v) => Ok(BigInt::from(*v)),
            IntRepr::Str(s) => BigInt::from_str(s)
                .map_err(|e| FormError::InvalidForm(format!("bad integer {s:?}: {e}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    exps: Vec<u16>,
    num: IntRepr,
    den: IntRepr,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    idx: Vec<u8>,
    poly: Vec<MonomialRepr>,
}

/// Serializable representation of a [`PolyForm`].
#[derive(Serialize, Deserialize)]
pub struct PolyFormRepr {
    dim: usize,
    degree: usize,
    terms: Vec<TermRepr>,
}

impl From<&PolyForm> for PolyFormRepr {
    fn from(form: &PolyForm) -> Self {
        let terms = form
            .terms()
            .map(|(idx, poly)| TermRepr {
                idx: idx.indices().to_vec(),
                poly: poly
                    .terms()
                    .map(|(e, c)| MonomialRepr {
                        exps: e.clone(),
                        num: IntRepr::Str(c.numer().to_string()),
                        den: IntRepr::Str(c.denom().to_string()),
                    })
                    .collect(),
            })
            .collect();
        PolyFormRepr {
            dim: form.dim(),
            degree: form.degree(),
            terms,
        }
    }
}

impl TryFrom<PolyFormRepr> for PolyForm {
    type Error = FormError;

    fn try_from(repr: PolyFormRepr) -> Result<Self, FormError> {
        let mut terms = Vec::new();
        for t in repr.terms {
            let idx = MultiIndex::new(t.idx, repr.dim)?;
            let mut poly = Polynomial::zero(repr.dim);
            for m in t.poly {
                if m.exps.len() != repr.dim {
                    return Err(FormError::InvalidForm(format!(
                        "exponent vector length {} differs from dim {}",
                        m.exps.len(),
                        repr.dim
                    )));
                }
                let den = m.den.to_bigint()?;
                if den.is_zero() {
                    return Err(FormError::InvalidForm("zero denominator".into()));
                }
                let c = BigRational::new(m.num.to_bigint()?, den);
                poly = poly.add(&Polynomial::monomial(repr.dim, m.exps, c));
            }
            terms.push((idx, poly));
        }
        PolyForm::from_terms(repr.dim, repr.degree, terms)
    }
}

impl PolyForm {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PolyFormRepr::from(self)).expect("form serializes")
    }

    pub fn from_json(s: &str) -> Result<PolyForm, FormError> {
        let repr: PolyFormRepr = serde_json::from_str(s)
            .map_err(|e| FormError::InvalidForm(format!("JSON parse error: {e}")))?;
        PolyForm::try_from(repr)
    }
}
