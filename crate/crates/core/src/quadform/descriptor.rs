use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactalg::CyclotomicNumber;

use super::form::QuadraticForm;
use super::group::FiniteAbelianGroup;
use super::QuadError;

/// A value given either as an exact cyclotomic number or as `{"zeta": [N, k]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueRepr {
    Zeta { zeta: [i64; 2] },
    Exact(CyclotomicNumber),
}

impl ValueRepr {
    fn to_value(&self) -> Result<CyclotomicNumber, QuadError> {
        match self {
            ValueRepr::Zeta { zeta: [n, k] } => {
                if *n < 1 || *n as u64 > crate::limits::order_cap() {
                    return Err(QuadError::BadDescriptor(format!("bad root-of-unity order {n}")));
                }
                Ok(CyclotomicNumber::zeta(*n as u32, *k))
            }
            ValueRepr::Exact(z) => Ok(z.clone()),
        }
    }
}

/// `{"invariant_factors": [...], "values": {"x1,x2": value, …}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDescriptor {
    pub invariant_factors: Vec<u64>,
    pub values: BTreeMap<String, ValueRepr>,
}

impl FormDescriptor {
    pub fn to_form(&self) -> Result<QuadraticForm, QuadError> {
        let group = FiniteAbelianGroup::new(&self.invariant_factors)?;
        let mut slots: Vec<Option<CyclotomicNumber>> = vec![None; group.order() as usize];
        for (key, v) in &self.values {
            let idx = group.parse_key(key)?;
            if slots[idx].is_some() {
                return Err(QuadError::BadDescriptor(format!("duplicate key {key:?}")));
            }
            slots[idx] = Some(v.to_value()?);
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| QuadError::BadDescriptor(format!("missing value at {:?}", group.key(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        QuadraticForm::from_values(&group, &values)
    }

    /// Values are written as `{"zeta": [N, k]}`.
    pub fn from_form(q: &QuadraticForm) -> Self {
        let g = q.group();
        let values = g
            .elements()
            .map(|x| (g.key(x), ValueRepr::Zeta { zeta: [q.order() as i64, q.exponent_at(x) as i64] }))
            .collect();
        FormDescriptor { invariant_factors: g.factors().to_vec(), values }
    }
}
