use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fields::{AdditivePolynomial, ElementRepr, FieldDescriptor, FiniteField};

use super::curve::CurveSpec;
use super::surface::SurfaceSpec;
use super::VarietyError;

/// `{"2": 1, "1": 1}` is `X² + X`: keys are degrees, each a power of `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdditiveRepr(pub BTreeMap<String, ElementRepr>);

impl AdditiveRepr {
    pub fn to_additive(&self, field: &FiniteField) -> Result<AdditivePolynomial, VarietyError> {
        let p = field.p() as u64;
        let mut terms = Vec::new();
        for (k, c) in &self.0 {
            let deg: u64 = k.trim().parse().map_err(|_| VarietyError::InvalidSpec(format!("bad exponent {k:?}")))?;
            let mut i = 0u32;
            let mut d = deg;
            while d > 1 && d % p == 0 {
                d /= p;
                i += 1;
            }
            if d != 1 {
                return Err(VarietyError::InvalidSpec(format!("exponent {deg} is not a power of {p}")));
            }
            terms.push((i, c.to_element(field)?));
        }
        Ok(AdditivePolynomial::new(field, terms))
    }

    pub fn from_additive(a: &AdditivePolynomial) -> Self {
        let f = a.field();
        let p = f.p() as u64;
        AdditiveRepr(a.terms().map(|(i, c)| (p.pow(i).to_string(), ElementRepr::from_element(f, c))).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDescriptor {
    pub field: FieldDescriptor,
    pub f: AdditiveRepr,
    pub g1: AdditiveRepr,
    pub g2: AdditiveRepr,
    #[serde(default = "zero")]
    pub a: ElementRepr,
}

fn zero() -> ElementRepr {
    ElementRepr::Int(0)
}

impl CurveDescriptor {
    pub fn to_spec(&self) -> Result<CurveSpec, VarietyError> {
        let k = self.field.to_field()?;
        CurveSpec::new(self.f.to_additive(&k)?, self.g1.to_additive(&k)?, self.g2.to_additive(&k)?, self.a.to_element(&k)?)
    }

    pub fn from_spec(s: &CurveSpec) -> Self {
        CurveDescriptor {
            field: FieldDescriptor::from_field(s.field()),
            f: AdditiveRepr::from_additive(s.f()),
            g1: AdditiveRepr::from_additive(s.g1()),
            g2: AdditiveRepr::from_additive(s.g2()),
            a: ElementRepr::from_element(s.field(), s.a()),
        }
    }
}

/// `f` lists `f_0, …, f_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDescriptor {
    pub field: FieldDescriptor,
    pub f: Vec<ElementRepr>,
    #[serde(default)]
    pub r: AdditiveRepr,
}

impl SurfaceDescriptor {
    pub fn to_spec(&self) -> Result<SurfaceSpec, VarietyError> {
        let k = self.field.to_field()?;
        let coeffs = self.f.iter().map(|c| c.to_element(&k)).collect::<Result<Vec<_>, _>>()?;
        SurfaceSpec::new(&k, &coeffs, &self.r.to_additive(&k)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VarietyDescriptor {
    Curve(CurveDescriptor),
    Surface(SurfaceDescriptor),
}
