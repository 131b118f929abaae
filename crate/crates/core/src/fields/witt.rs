use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::field::{FieldElement, FieldError, FiniteField};
use crate::limits;

/// `γ(X, Z) = (X^p + Z^p − (X+Z)^p)/p mod p` as terms `coeff · X^i Z^{p-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryPolynomial {
    pub p: u32,
    /// `(coeff, i)` with `0 < i < p`.
    pub terms: Vec<(u32, u32)>,
}

impl CarryPolynomial {
    pub fn eval(&self, field: &FiniteField, x: FieldElement, z: FieldElement) -> FieldElement {
        if x.is_zero() || z.is_zero() {
            return FieldElement::ZERO;
        }
        let mut acc = FieldElement::ZERO;
        for &(c, i) in &self.terms {
            let t = field.mul(field.pow(x, i as i64), field.pow(z, (self.p - i) as i64));
            acc = field.add(acc, field.mul(field.from_int(c as i64), t));
        }
        acc
    }
}

/// The carry polynomial for `p`, computed from integer binomials and cached.
pub fn gamma_carry(p: u32) -> Arc<CarryPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CarryPolynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(&p) {
        return g.clone();
    }
    let mut terms = Vec::new();
    let mut binom = BigUint::from(1u32);
    for i in 1..p {
        binom = binom * BigUint::from(p - i + 1) / BigUint::from(i);
        let quotient = (&binom / BigUint::from(p)) % BigUint::from(p);
        let q = quotient.to_u32().unwrap();
        let c = (p - q) % p;
        if c != 0 {
            terms.push((c, i));
        }
    }
    let g = Arc::new(CarryPolynomial { p, terms });
    cache.lock().unwrap().insert(p, g.clone());
    g
}

/// A length-two Witt vector `(x0, x1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WittVector2 {
    pub x0: FieldElement,
    pub x1: FieldElement,
}

impl WittVector2 {
    pub fn new(x0: FieldElement, x1: FieldElement) -> Self {
        WittVector2 { x0, x1 }
    }
}

/// `W_2(F_q)` with the polynomial ring laws.
#[derive(Clone, Debug)]
pub struct WittRing {
    field: FiniteField,
    gamma: Arc<CarryPolynomial>,
}

impl WittRing {
    pub fn new(field: &FiniteField) -> Self {
        WittRing { field: field.clone(), gamma: gamma_carry(field.p()) }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn gamma(&self, x: FieldElement, z: FieldElement) -> FieldElement {
        self.gamma.eval(&self.field, x, z)
    }

    /// Fails unless both rings are over the same field.
    pub fn same_ring(&self, other: &WittRing) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn zero(&self) -> WittVector2 {
        WittVector2::default()
    }

    pub fn one(&self) -> WittVector2 {
        WittVector2::new(FieldElement::ONE, FieldElement::ZERO)
    }

    /// All `q²` vectors, `x0` major.
    pub fn elements(&self) -> impl Iterator<Item = WittVector2> + '_ {
        self.field
            .elements()
            .flat_map(move |a| self.field.elements().map(move |b| WittVector2::new(a, b)))
    }

    pub fn add(&self, u: WittVector2, v: WittVector2) -> WittVector2 {
        let f = &self.field;
        WittVector2::new(f.add(u.x0, v.x0), f.add(f.add(u.x1, v.x1), self.gamma(u.x0, v.x0)))
    }

    pub fn neg(&self, u: WittVector2) -> WittVector2 {
        let f = &self.field;
        let nx = f.neg(u.x0);
        WittVector2::new(nx, f.sub(f.neg(u.x1), self.gamma(u.x0, nx)))
    }

    pub fn sub(&self, u: WittVector2, v: WittVector2) -> WittVector2 {
        self.add(u, self.neg(v))
    }

    pub fn mul(&self, u: WittVector2, v: WittVector2) -> WittVector2 {
        let f = &self.field;
        let a = f.mul(f.frobenius(u.x0, 1), v.x1);
        let b = f.mul(f.frobenius(v.x0, 1), u.x1);
        WittVector2::new(f.mul(u.x0, v.x0), f.add(a, b))
    }

    /// `F(x, y) = (x^p, y^p)`.
    pub fn frobenius(&self, u: WittVector2) -> WittVector2 {
        WittVector2::new(self.field.frobenius(u.x0, 1), self.field.frobenius(u.x1, 1))
    }

    /// `V(a) = (0, a)`.
    pub fn verschiebung(&self, a: FieldElement) -> WittVector2 {
        WittVector2::new(FieldElement::ZERO, a)
    }

    /// `R(x, y) = x`.
    pub fn restriction(&self, u: WittVector2) -> FieldElement {
        u.x0
    }

    /// The Teichmüller-style vector `(a, 0)`.
    pub fn teichmuller(&self, a: FieldElement) -> WittVector2 {
        WittVector2::new(a, FieldElement::ZERO)
    }

    /// Multiplication by the integer `p`, i.e. `V F`.
    pub fn mul_p(&self, u: WittVector2) -> WittVector2 {
        WittVector2::new(FieldElement::ZERO, self.field.frobenius(u.x0, 1))
    }

    /// The image of an integer `k` under `Z → W_2(F_p)`.
    pub fn from_int(&self, k: i64) -> WittVector2 {
        let p = self.field.p() as i64;
        let n = k.rem_euclid(p * p);
        let a = n % p;
        // n = [a] + p[b] with [a] ≡ a^p mod p².
        let ap = (0..p).fold(1i64, |acc, _| acc * a % (p * p));
        let b = (n - ap).rem_euclid(p * p) / p;
        WittVector2::new(self.field.from_int(a), self.field.from_int(b))
    }

    /// `(a, b) ↦ a^p + p·b mod p²` for vectors over the prime subfield.
    pub fn to_zp2(&self, u: WittVector2) -> Option<u32> {
        let p = self.field.p() as u64;
        if !self.field.is_prime_subfield(u.x0) || !self.field.is_prime_subfield(u.x1) {
            return None;
        }
        let a = u.x0.index() as u64;
        let ap = (0..p).fold(1u64, |acc, _| acc * a % (p * p));
        Some(((ap + p * u.x1.index() as u64) % (p * p)) as u32)
    }

    /// `Σ_{i<M} F^i(u)` for `M = [F_q : F_p]`, read in `Z/p²`.
    pub fn witt_trace(&self, u: WittVector2) -> u32 {
        let mut acc = self.zero();
        let mut cur = u;
        for _ in 0..self.field.m() {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        self.to_zp2(acc).expect("the Witt trace lands in W_2(F_p)")
    }
}

impl WittRing {
    /// Exhaustive commutative-ring axioms; the first violated law with its witness.
    pub fn check_axioms(&self) -> Result<(), String> {
        limits::check_points(limits::pow_sat(self.field.q() as u64, 6)).map_err(|e| e.to_string())?;
        let all: Vec<WittVector2> = self.elements().collect();
        let (zero, one) = (self.zero(), self.one());
        for &u in &all {
            if self.add(u, zero) != u || self.mul(u, one) != u {
                return Err(format!("identity fails at {u:?}"));
            }
            if self.add(u, self.neg(u)) != zero {
                return Err(format!("negation fails at {u:?}"));
            }
            for &v in &all {
                if self.add(u, v) != self.add(v, u) || self.mul(u, v) != self.mul(v, u) {
                    return Err(format!("commutativity fails at {u:?}, {v:?}"));
                }
                for &w in &all {
                    if self.add(self.add(u, v), w) != self.add(u, self.add(v, w)) {
                        return Err(format!("additive associativity fails at {u:?}, {v:?}, {w:?}"));
                    }
                    if self.mul(self.mul(u, v), w) != self.mul(u, self.mul(v, w)) {
                        return Err(format!("multiplicative associativity fails at {u:?}, {v:?}, {w:?}"));
                    }
                    if self.mul(u, self.add(v, w)) != self.add(self.mul(u, v), self.mul(u, w)) {
                        return Err(format!("distributivity fails at {u:?}, {v:?}, {w:?}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// For a prime field: `to_zp2` is a bijective ring map onto `Z/p²`.
    pub fn is_zp2(&self) -> bool {
        let p2 = self.field.p() * self.field.p();
        if self.field.m() != 1 {
            return false;
        }
        let all: Vec<WittVector2> = self.elements().collect();
        let img: Vec<u32> = all.iter().map(|&u| self.to_zp2(u).expect("prime field")).collect();
        let mut seen = vec![false; p2 as usize];
        for &k in &img {
            seen[k as usize] = true;
        }
        if !seen.iter().all(|&b| b) || self.to_zp2(self.one()) != Some(1) {
            return false;
        }
        all.iter().zip(&img).all(|(&u, &a)| {
            all.iter().zip(&img).all(|(&v, &b)| {
                self.to_zp2(self.add(u, v)) == Some((a + b) % p2) && self.to_zp2(self.mul(u, v)) == Some(a * b % p2)
            })
        })
    }
}
