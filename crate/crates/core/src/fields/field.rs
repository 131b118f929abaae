use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::limits::{self, CapExceeded};

use super::{is_prime, prime_factors};

/// An element of some [`FiniteField`], by canonical index.
///
/// The owning field is not stored; every operation goes through the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn from_index(i: u32) -> Self {
        FieldElement(i)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible")]
    NonIrreducibleModulus(Vec<u32>),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("degree {e} does not divide {m}: not a subfield")]
    NotASubfield { m: u32, e: u32 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient vector {0:?} does not describe an element")]
    BadElement(Vec<i64>),
    #[error(transparent)]
    ScaleCapExceeded(#[from] CapExceeded),
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so products need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `Tr(ω^i)` as an integer in `0..p`.
    basis_trace: Vec<u32>,
    primitive: u32,
}

/// The field `F_{p^m} = F_p[X]/(modulus)`.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

fn default_cache() -> &'static Mutex<HashMap<(u32, u32), FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FiniteField {
    /// Builds `F_{p^m}`.
    ///
    /// With no modulus given, the least irreducible monic polynomial is used,
    /// ordering candidates by the integer `Σ c_i p^i` of their lower
    /// coefficients. Fields are memoised per `(p, m)` in that case.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FiniteField, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(FieldError::BadModulus("degree must be at least 1".into()));
        }
        let size = limits::pow_sat(p as u64, m);
        limits::check_points(size)?;
        if size > u32::MAX as u128 / 2 {
            return Err(CapExceeded { requested: size, cap: u32::MAX as u64 / 2 }.into());
        }
        match modulus {
            Some(coeffs) => {
                let reduced: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
                if reduced.len() != m as usize + 1 || reduced[m as usize] != 1 {
                    return Err(FieldError::BadModulus(format!(
                        "expected a monic polynomial of degree {m}, got {coeffs:?}"
                    )));
                }
                if !is_irreducible(&reduced, p) {
                    return Err(FieldError::NonIrreducibleModulus(reduced));
                }
                Ok(Self::build(p, m, reduced))
            }
            None => {
                if let Some(f) = default_cache().lock().unwrap().get(&(p, m)) {
                    return Ok(f.clone());
                }
                let field = Self::build(p, m, least_irreducible(p, m));
                default_cache().lock().unwrap().insert((p, m), field.clone());
                Ok(field)
            }
        }
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<FiniteField, FieldError> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> FiniteField {
        let q = p.pow(m);
        let digits = |mut x: u32| {
            let mut v = vec![0u32; m as usize];
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let pack = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let mulmod = |a: &[u32], b: &[u32]| -> Vec<u32> { poly_mulmod(a, b, &modulus, p) };

        let group = (q - 1) as u64;
        let factors = prime_factors(group);
        let pow_slow = |g: &[u32], mut e: u64| {
            let mut base = g.to_vec();
            let mut acc = digits(1);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base);
                }
                base = mulmod(&base, &base);
                e >>= 1;
            }
            acc
        };
        let one = digits(1);
        let mut primitive = 1;
        if q > 2 {
            for cand in 2..q {
                let g = digits(cand);
                if factors.iter().all(|&r| pow_slow(&g, group / r) != one) {
                    primitive = cand;
                    break;
                }
            }
        }
        let gdig = digits(primitive);
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = one.clone();
        for i in 0..n {
            let idx = pack(&cur);
            exp[i] = idx;
            log[idx as usize] = i as u32;
            cur = mulmod(&cur, &gdig);
        }
        for i in 0..n {
            exp[n + i] = exp[i];
        }
        let mut field = FiniteField(Arc::new(Inner {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            basis_trace: vec![0; m as usize],
            primitive,
        }));
        // Tr(ω^i) through the tables just built.
        let bt: Vec<u32> = (0..m)
            .map(|i| {
                let x = FieldElement(p.pow(i));
                let mut acc = FieldElement::ZERO;
                for k in 0..m {
                    acc = field.add(acc, field.frobenius(x, k as i64));
                }
                debug_assert!(acc.0 < p);
                acc.0
            })
            .collect();
        Arc::get_mut(&mut field.0).expect("fresh arc").basis_trace = bt;
        field
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Number of elements.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.0.primitive)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(FieldElement)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.0.q
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.0.p as i64) as u32)
    }

    /// Builds an element from its coefficients `c_0, c_1, ...` (low first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.m as usize {
            return Err(FieldError::BadElement(coeffs.iter().map(|&c| c as i64).collect()));
        }
        let p = self.0.p;
        Ok(FieldElement(coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p)))
    }

    /// Like [`from_coeffs`](Self::from_coeffs) but for signed input.
    pub fn from_signed_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.m as usize {
            return Err(FieldError::BadElement(coeffs.to_vec()));
        }
        let p = self.0.p as i64;
        let v: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
        self.from_coeffs(&v)
    }

    /// Coefficients of `x`, low first, always of length `m`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let p = self.0.p;
        let mut v = x.0;
        (0..self.0.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            let s = x % p + y % p;
            out += if s >= p { s - p } else { s } * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            let d = x % p;
            if d != 0 {
                out += (p - d) * place;
            }
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        FieldElement(self.0.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Ok(FieldElement(self.0.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e` (negative powers need `a ≠ 0`).
    pub fn pow(&self, a: FieldElement, e: i64) -> FieldElement {
        if a.0 == 0 {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let n = (self.0.q - 1) as i128;
        let l = self.0.log[a.0 as usize] as i128;
        let k = (l * (e as i128)).rem_euclid(n);
        FieldElement(self.0.exp[k as usize])
    }

    /// `a^{p^k}`; `k` may be negative (the field is perfect).
    #[inline]
    pub fn frobenius(&self, a: FieldElement, k: i64) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        let m = self.0.m as i64;
        let k = k.rem_euclid(m) as u32;
        if k == 0 {
            return a;
        }
        let n = (self.0.q - 1) as u64;
        let e = (self.0.p as u64).pow(k) % n;
        let l = self.0.log[a.0 as usize] as u64;
        FieldElement(self.0.exp[((l * e) % n) as usize])
    }

    /// The unique `p`-th root.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.frobenius(a, -1)
    }

    /// `Tr_{F_{p^m}/F_p}`, as an integer in `0..p`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u32 {
        let p = self.0.p;
        let mut x = a.0;
        let mut acc = 0u32;
        let mut i = 0;
        while x > 0 {
            acc += (x % p) * self.0.basis_trace[i];
            x /= p;
            i += 1;
        }
        acc % p
    }

    /// [`trace`](Self::trace) as a field element.
    pub fn absolute_trace(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.trace(a))
    }

    /// `Σ_{i < m/e} a^{p^{e i}}`, the trace onto the subfield of degree `e`.
    pub fn trace_to_subfield(&self, a: FieldElement, e: u32) -> Result<FieldElement, FieldError> {
        if e == 0 || self.0.m % e != 0 {
            return Err(FieldError::NotASubfield { m: self.0.m, e });
        }
        let mut acc = FieldElement::ZERO;
        for i in 0..self.0.m / e {
            acc = self.add(acc, self.frobenius(a, (e * i) as i64));
        }
        Ok(acc)
    }

    /// Whether `a` lies in the subfield of degree `e` over `F_p`.
    pub fn in_subfield(&self, a: FieldElement, e: u32) -> bool {
        self.frobenius(a, e as i64) == a
    }

    pub fn is_prime_subfield(&self, a: FieldElement) -> bool {
        a.0 < self.0.p
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero(), "order of zero");
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        n / num_integer::gcd(n, l)
    }
}

/// `a·b mod modulus` over `F_p`, digit vectors of length `m`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + (x as u64) * (y as u64)) % p as u64;
        }
    }
    for k in (m..2 * m).rev() {
        let c = prod[k] % p as u64;
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for j in 0..m {
            let sub = c * modulus[j] as u64 % p as u64;
            prod[k - m + j] = (prod[k - m + j] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|c| c as u32).collect()
}

fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Remainder of `a` by the monic `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - (c * bj) % p) % p;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Brute-force irreducibility by trial division with every monic
/// polynomial of degree at most `deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    if m <= 1 {
        return m == 1;
    }
    if poly[0] == 0 {
        return false;
    }
    for k in 1..=m / 2 {
        let count = p.pow(k as u32);
        for t in 0..count {
            let mut d = Vec::with_capacity(k + 1);
            let mut x = t;
            for _ in 0..k {
                d.push(x % p);
                x /= p;
            }
            d.push(1);
            let r = poly_rem(poly, &d, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The least monic irreducible of degree `m`, by the integer encoding of its
/// lower coefficients.
pub(crate) fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for t in 0..count {
        let mut v = Vec::with_capacity(m as usize + 1);
        let mut x = t;
        for _ in 0..m {
            v.push((x % p as u64) as u32);
            x /= p as u64;
        }
        v.push(1);
        if is_irreducible(&v, p) {
            return v;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_with_modulus_x() {
        let f2 = FiniteField::new(2, 1, None).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.q(), 2);
    }

    #[test]
    fn f4_relation() {
        let f4 = FiniteField::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let w = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.mul(w, w), f4.add(w, f4.one()));
        assert_eq!(f4.trace(w), 1);
        assert_eq!(f4.trace(f4.one()), 0);
        assert_eq!(f4.trace(f4.zero()), 0);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(
            FiniteField::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::NonIrreducibleModulus(vec![1, 0, 1]))
        );
        assert_eq!(FiniteField::new(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FiniteField::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(FiniteField::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_small() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 1), (2, 6), (7, 2)] {
            let f = FiniteField::new(p, m, None).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            for &a in els.iter().step_by(3) {
                for &b in els.iter().step_by(2) {
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn slow_and_table_products_agree() {
        let f = FiniteField::new(3, 3, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let slow = poly_mulmod(&f.coeffs(a), &f.coeffs(b), f.modulus(), 3);
                assert_eq!(f.from_coeffs(&slow).unwrap(), f.mul(a, b));
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        let f = FiniteField::new(2, 5, None).unwrap();
        assert_eq!(f.order(f.primitive_element()), 31);
        let f = FiniteField::new(5, 2, None).unwrap();
        assert_eq!(f.order(f.primitive_element()), 24);
        assert_eq!(f.order(f.one()), 1);
        assert_eq!(f.order(f.from_int(-1)), 2);
    }

    #[test]
    fn trace_is_frobenius_orbit_sum() {
        let f = FiniteField::new(3, 3, None).unwrap();
        for a in f.elements() {
            let mut acc = f.zero();
            for k in 0..3 {
                acc = f.add(acc, f.frobenius(a, k));
            }
            assert_eq!(acc, f.absolute_trace(a));
            assert_eq!(f.trace(f.frobenius(a, 1)), f.trace(a));
        }
    }

    #[test]
    fn frobenius_inverse() {
        let f = FiniteField::new(2, 4, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(f.pth_root(a), 1), a);
            assert_eq!(f.frobenius(a, -3), f.frobenius(a, 1));
        }
    }

    #[test]
    fn subfield_traces() {
        let f16 = FiniteField::new(2, 4, None).unwrap();
        for a in f16.elements() {
            let t = f16.trace_to_subfield(a, 2).unwrap();
            assert!(f16.in_subfield(t, 2));
            assert_eq!(f16.absolute_trace(a), f16.add(t, f16.frobenius(t, 1)));
        }
        assert_eq!(f16.trace_to_subfield(f16.one(), 3), Err(FieldError::NotASubfield { m: 4, e: 3 }));
    }
}
