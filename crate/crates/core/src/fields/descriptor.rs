use serde::{Deserialize, Serialize};

use super::field::{FieldElement, FieldError, FiniteField};
use super::witt::WittVector2;

/// `{"p": 2, "m": 2, "modulus": [1, 1, 1]}`; the modulus defaults to the least irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescriptor {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldDescriptor {
    pub fn to_field(&self) -> Result<FiniteField, FieldError> {
        FiniteField::new(self.p, self.m, self.modulus.as_deref())
    }

    pub fn from_field(f: &FiniteField) -> Self {
        FieldDescriptor { p: f.p(), m: f.m(), modulus: Some(f.modulus().to_vec()) }
    }
}

/// An element as a low-first coefficient array, or an integer in the prime subfield.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Int(i64),
    Coeffs(Vec<i64>),
}

impl ElementRepr {
    pub fn to_element(&self, f: &FiniteField) -> Result<FieldElement, FieldError> {
        match self {
            ElementRepr::Int(k) => Ok(f.from_int(*k)),
            ElementRepr::Coeffs(c) => f.from_signed_coeffs(c),
        }
    }

    pub fn from_element(f: &FiniteField, x: FieldElement) -> Self {
        ElementRepr::Coeffs(f.coeffs(x).into_iter().map(|c| c as i64).collect())
    }
}

/// A pair of element arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittRepr(pub ElementRepr, pub ElementRepr);

impl WittRepr {
    pub fn to_vector(&self, f: &FiniteField) -> Result<WittVector2, FieldError> {
        Ok(WittVector2::new(self.0.to_element(f)?, self.1.to_element(f)?))
    }

    pub fn from_vector(f: &FiniteField, w: WittVector2) -> Self {
        WittRepr(ElementRepr::from_element(f, w.x0), ElementRepr::from_element(f, w.x1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let d: FieldDescriptor = serde_json::from_str(r#"{"p":2,"m":2}"#).unwrap();
        let f = d.to_field().unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let e: ElementRepr = serde_json::from_str("[0,1]").unwrap();
        let w = e.to_element(&f).unwrap();
        assert_eq!(ElementRepr::from_element(&f, w), e);
        let one: ElementRepr = serde_json::from_str("3").unwrap();
        assert_eq!(one.to_element(&f).unwrap(), f.one());
        assert!(serde_json::from_str::<FieldDescriptor>(r#"{"p":2,"q":4}"#).is_err());
    }
}
