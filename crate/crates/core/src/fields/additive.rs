use std::collections::BTreeMap;

use crate::limits;

use super::field::{FieldElement, FieldError, FiniteField};
use super::tower::Tower;

/// `Σ a_i X^{p^i}` over a finite field, `i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePolynomial {
    field: FiniteField,
    coeffs: BTreeMap<u32, FieldElement>,
}

impl AdditivePolynomial {
    pub fn new(field: &FiniteField, terms: impl IntoIterator<Item = (u32, FieldElement)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, a) in terms {
            let slot = coeffs.entry(i).or_insert(FieldElement::ZERO);
            *slot = field.add(*slot, a);
        }
        coeffs.retain(|_, a| !a.is_zero());
        AdditivePolynomial { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, [])
    }

    /// The identity `X`.
    pub fn identity(field: &FiniteField) -> Self {
        Self::new(field, [(0, FieldElement::ONE)])
    }

    /// `X^{p^i}`.
    pub fn frobenius_power(field: &FiniteField, i: u32) -> Self {
        Self::new(field, [(i, FieldElement::ONE)])
    }

    /// The Lang isogeny `X^{q} − X` with `q = p^e`.
    pub fn lang(field: &FiniteField, e: u32) -> Self {
        Self::new(field, [(e, FieldElement::ONE), (0, field.from_int(-1))])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, FieldElement)> + '_ {
        self.coeffs.iter().map(|(&i, &a)| (i, a))
    }

    pub fn coeff(&self, i: u32) -> FieldElement {
        self.coeffs.get(&i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest Frobenius exponent with a nonzero coefficient.
    pub fn top_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest Frobenius exponent with a nonzero coefficient.
    pub fn bottom_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Nonzero coefficient of `X`.
    pub fn is_separable(&self) -> bool {
        self.coeffs.contains_key(&0)
    }

    /// Ordinary degree `p^{top}`.
    pub fn degree(&self) -> Option<u128> {
        self.top_exponent().map(|t| limits::pow_sat(self.field.p() as u64, t))
    }

    #[inline]
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for (&i, &a) in &self.coeffs {
            acc = f.add(acc, f.mul(a, f.frobenius(x, i as i64)));
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.field, self.terms().chain(other.terms()))
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(&self.field, self.terms().map(|(i, a)| (i, self.field.mul(c, a))))
    }

    /// `self ∘ other`: `Σ a_i b_j^{p^i} X^{p^{i+j}}`.
    pub fn compose(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                terms.push((i + j, f.mul(a, f.frobenius(b, i as i64))));
            }
        }
        Self::new(f, terms)
    }

    /// The same polynomial with coefficients pushed into `tower.top()`.
    pub fn embed(&self, tower: &Tower) -> Self {
        Self::new(tower.top(), self.terms().map(|(i, a)| (i, tower.lift(a))))
    }

    /// Roots in `F_{q^n}`, by enumeration, in canonical order.
    pub fn additive_kernel(&self, n: u32) -> Result<Vec<FieldElement>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        limits::check_points(limits::pow_sat(self.field.q() as u64, n))?;
        let tower = Tower::new(&self.field, n)?;
        let g = self.embed(&tower);
        Ok(tower.top().elements().filter(|&x| g.eval(x).is_zero()).collect())
    }

    /// Root count over a splitting field, `p^{top − bottom}`.
    pub fn split_kernel_size(&self) -> Result<u128, FieldError> {
        match (self.top_exponent(), self.bottom_exponent()) {
            (Some(t), Some(v)) => Ok(limits::pow_sat(self.field.p() as u64, t - v)),
            _ => Err(FieldError::ZeroPolynomial),
        }
    }

    pub fn to_laurent(&self) -> LaurentAdditive {
        LaurentAdditive::new(&self.field, self.terms().map(|(i, a)| (i as i32, a)))
    }
}

/// `Σ a_i X^{p^i}` with `i ∈ Z`, meaningful on points of a perfect field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentAdditive {
    field: FiniteField,
    coeffs: BTreeMap<i32, FieldElement>,
}

impl LaurentAdditive {
    pub fn new(field: &FiniteField, terms: impl IntoIterator<Item = (i32, FieldElement)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, a) in terms {
            let slot = coeffs.entry(i).or_insert(FieldElement::ZERO);
            *slot = field.add(*slot, a);
        }
        coeffs.retain(|_, a| !a.is_zero());
        LaurentAdditive { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, [])
    }

    pub fn monomial(field: &FiniteField, i: i32, a: FieldElement) -> Self {
        Self::new(field, [(i, a)])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, FieldElement)> + '_ {
        self.coeffs.iter().map(|(&i, &a)| (i, a))
    }

    pub fn coeff(&self, i: i32) -> FieldElement {
        self.coeffs.get(&i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn top_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn bottom_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// `top − bottom`; the kernel over an algebraic closure has `p^{span}` points.
    pub fn span(&self) -> Option<u32> {
        Some((self.top_exponent()? - self.bottom_exponent()?) as u32)
    }

    #[inline]
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for (&i, &a) in &self.coeffs {
            acc = f.add(acc, f.mul(a, f.frobenius(x, i as i64)));
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.field, self.terms().chain(other.terms()))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.terms().map(|(i, a)| (i, self.field.neg(a))))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                terms.push((i + j, f.mul(a, f.frobenius(b, i as i64))));
            }
        }
        Self::new(f, terms)
    }

    /// The trace adjoint: `Tr(f(x) y) = Tr(x f*(y))`, `(a X^{p^i})* = a^{p^{-i}} X^{p^{-i}}`.
    pub fn adjoint(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.terms().map(|(i, a)| (-i, f.frobenius(a, -(i as i64)))))
    }

    /// `F^s ∘ self`, raising every output to the `p^s`.
    pub fn frobenius_shift(&self, s: i32) -> Self {
        let f = &self.field;
        Self::new(f, self.terms().map(|(i, a)| (i + s, f.frobenius(a, s as i64))))
    }

    /// The representative `F^s ∘ self` with least exponent zero, and `s`.
    ///
    /// Same kernel on points; `Tr(f(x) y)` is unchanged when `y` is also
    /// raised to `p^s`.
    pub fn cleared(&self) -> (i32, AdditivePolynomial) {
        let s = match self.bottom_exponent() {
            Some(b) => -b,
            None => 0,
        };
        let g = self.frobenius_shift(s);
        let poly = AdditivePolynomial::new(&self.field, g.terms().map(|(i, a)| (i as u32, a)));
        (s, poly)
    }

    pub fn embed(&self, tower: &Tower) -> Self {
        Self::new(tower.top(), self.terms().map(|(i, a)| (i, tower.lift(a))))
    }

    /// Roots in `F_{q^n}`, by enumeration.
    pub fn kernel_in(&self, tower: &Tower) -> Result<Vec<FieldElement>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        limits::check_points(tower.top().q() as u128)?;
        let g = self.embed(tower);
        Ok(tower.top().elements().filter(|&x| g.eval(x).is_zero()).collect())
    }
}
