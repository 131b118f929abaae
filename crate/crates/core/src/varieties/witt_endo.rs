use crate::fields::{AdditivePolynomial, FieldElement, FiniteField, Tower, WittRing, WittVector2};
use crate::limits;

use super::VarietyError;

/// `h(x, y) = (f(x), g1(x) + g2(y))` on `W_2`, with `f = Σ f_i X^{p^i}`,
/// `g2 = Σ f_i^p X^{p^i}` and `g1 = γ(f_0 X, f_1 X^p, …) + R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W2Endomorphism {
    field: FiniteField,
    f_coeffs: Vec<FieldElement>,
    f: AdditivePolynomial,
    g2: AdditivePolynomial,
    r: AdditivePolynomial,
}

pub fn w2_endomorphism(field: &FiniteField, f_coeffs: &[FieldElement], r: &AdditivePolynomial) -> W2Endomorphism {
    let f = AdditivePolynomial::new(field, f_coeffs.iter().enumerate().map(|(i, &a)| (i as u32, a)));
    let g2 = AdditivePolynomial::new(field, f_coeffs.iter().enumerate().map(|(i, &a)| (i as u32, field.frobenius(a, 1))));
    W2Endomorphism { field: field.clone(), f_coeffs: f_coeffs.to_vec(), f, g2, r: r.clone() }
}

impl W2Endomorphism {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn f_coeffs(&self) -> &[FieldElement] {
        &self.f_coeffs
    }

    pub fn f(&self) -> &AdditivePolynomial {
        &self.f
    }

    pub fn g2(&self) -> &AdditivePolynomial {
        &self.g2
    }

    pub fn r(&self) -> &AdditivePolynomial {
        &self.r
    }

    /// The same map with `g2` replaced, for negative controls.
    pub fn with_g2(&self, g2: AdditivePolynomial) -> Self {
        W2Endomorphism { g2, ..self.clone() }
    }

    /// Scalars extended to `tower.top()`.
    pub fn embed(&self, tower: &Tower) -> Self {
        W2Endomorphism {
            field: tower.top().clone(),
            f_coeffs: self.f_coeffs.iter().map(|&a| tower.lift(a)).collect(),
            f: self.f.embed(tower),
            g2: self.g2.embed(tower),
            r: self.r.embed(tower),
        }
    }

    /// `γ(X_0, …, X_n) = Σ_k γ(X_0 + … + X_{k−1}, X_k)` at `X_i = f_i x^{p^i}`, plus `R(x)`.
    pub fn g1(&self, ring: &WittRing, x: FieldElement) -> FieldElement {
        let k = ring.field();
        let mut partial = FieldElement::ZERO;
        let mut carry = FieldElement::ZERO;
        for (i, &a) in self.f_coeffs.iter().enumerate() {
            let xi = k.mul(a, k.frobenius(x, i as i64));
            carry = k.add(carry, ring.gamma(partial, xi));
            partial = k.add(partial, xi);
        }
        k.add(carry, self.r.eval(x))
    }

    /// `ring` must be over this map's field.
    pub fn apply(&self, ring: &WittRing, u: WittVector2) -> WittVector2 {
        let k = ring.field();
        WittVector2::new(self.f.eval(u.x0), k.add(self.g1(ring, u.x0), self.g2.eval(u.x1)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityReport {
    pub holds: bool,
    pub witness: Option<(WittVector2, WittVector2)>,
    pub pairs_checked: u64,
}

/// `h(u + v) = h(u) + h(v)` for every pair in `W_2(F_{q^n})`.
pub fn verify_additive(h: &W2Endomorphism, n: u32) -> Result<AdditivityReport, VarietyError> {
    let tower = Tower::new(&h.field, n)?;
    let top = tower.top();
    let size = top.q() as u64 * top.q() as u64;
    limits::check_points(size as u128 * size as u128)?;
    let hh = h.embed(&tower);
    let ring = WittRing::new(top);
    let images: Vec<WittVector2> = ring.elements().map(|u| hh.apply(&ring, u)).collect();
    let elems: Vec<WittVector2> = ring.elements().collect();
    let q = top.q() as usize;
    let index = |u: WittVector2| u.x0.index() as usize * q + u.x1.index() as usize;
    let mut checked = 0u64;
    for (i, &u) in elems.iter().enumerate() {
        for (j, &v) in elems.iter().enumerate() {
            checked += 1;
            let lhs = images[index(ring.add(u, v))];
            if lhs != ring.add(images[i], images[j]) {
                return Ok(AdditivityReport { holds: false, witness: Some((u, v)), pairs_checked: checked });
            }
        }
    }
    Ok(AdditivityReport { holds: true, witness: None, pairs_checked: checked })
}
