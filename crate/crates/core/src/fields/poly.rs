use std::collections::BTreeMap;

use super::additive::AdditivePolynomial;
use super::field::{FieldElement, FiniteField};
use super::tower::Tower;

/// A sparse univariate polynomial over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoly {
    field: FiniteField,
    coeffs: BTreeMap<u64, FieldElement>,
}

impl FieldPoly {
    pub fn new(field: &FiniteField, terms: impl IntoIterator<Item = (u64, FieldElement)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, a) in terms {
            let slot = coeffs.entry(e).or_insert(FieldElement::ZERO);
            *slot = field.add(*slot, a);
        }
        coeffs.retain(|_, a| !a.is_zero());
        FieldPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, [])
    }

    pub fn monomial(field: &FiniteField, e: u64, a: FieldElement) -> Self {
        Self::new(field, [(e, a)])
    }

    pub fn from_additive(f: &AdditivePolynomial) -> Self {
        let p = f.field().p() as u64;
        Self::new(f.field(), f.terms().map(|(i, a)| (p.pow(i), a)))
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, FieldElement)> + '_ {
        self.coeffs.iter().map(|(&e, &a)| (e, a))
    }

    pub fn coeff(&self, e: u64) -> FieldElement {
        self.coeffs.get(&e).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for (&e, &a) in &self.coeffs {
            acc = f.add(acc, f.mul(a, f.pow(x, e as i64)));
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.field, self.terms().chain(other.terms()))
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(&self.field, self.terms().map(|(e, a)| (e, self.field.mul(c, a))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut terms = Vec::new();
        for (e, a) in self.terms() {
            for (g, b) in other.terms() {
                terms.push((e + g, f.mul(a, b)));
            }
        }
        Self::new(f, terms)
    }

    pub fn embed(&self, tower: &Tower) -> Self {
        Self::new(tower.top(), self.terms().map(|(e, a)| (e, tower.lift(a))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_evaluates_pointwise() {
        let f = FiniteField::new(3, 2, None).unwrap();
        let a = FieldPoly::new(&f, [(0, f.one()), (4, f.primitive_element())]);
        let b = FieldPoly::new(&f, [(1, f.from_int(2)), (3, f.one())]);
        let c = a.mul(&b);
        for x in f.elements() {
            assert_eq!(c.eval(x), f.mul(a.eval(x), b.eval(x)));
        }
        assert_eq!(c.degree(), Some(7));
    }
}
