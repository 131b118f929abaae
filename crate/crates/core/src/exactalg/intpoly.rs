use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::{cyclotomic_polynomial, euler_phi};
use super::ExactError;

/// A polynomial in `Z[T]`, low degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `P(−T)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &Self) -> Result<(Self, Self), ExactError> {
        if !d.is_monic() {
            return Err(ExactError::NotMonic);
        }
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = std::mem::take(&mut r[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs[..dd].iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// `self / d` when the division is exact in `Z[T]`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = std::mem::take(&mut r[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lead);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.coeffs[..dd].iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading();
            let shifted = Self::monomial(c, dr - dd).mul(d);
            r = r.scale(&lead).sub(&shifted);
        }
        r
    }

    /// The gcd over `Q`, as a primitive polynomial with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// `P / gcd(P, P')`, the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let q = self.exact_div(&g).expect("a primitive divisor over Q divides over Z");
        if q.leading().is_negative() { q.neg() } else { q }
    }

    fn powmod_monomial(m: &Self, e: u64) -> Result<Self, ExactError> {
        let mut acc = Self::one();
        let mut base = Self::monomial(BigInt::one(), 1).div_rem_monic(m)?.1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem_monic(m)?.1;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).div_rem_monic(m)?.1;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}{mono}"));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Newton's identities: from `s_1..s_B` to `Π (1 − α_i T)` written as
/// `P(T) = Σ_k (−1)^k e_k T^{B−k}`.
pub fn power_sums_to_char_poly(s: &[BigInt]) -> Result<IntPolynomial, ExactError> {
    let b = s.len();
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=b {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(ExactError::NonIntegralElementarySymmetric { k });
        }
        e.push(q);
    }
    let mut coeffs = vec![BigInt::zero(); b + 1];
    for (k, ek) in e.iter().enumerate() {
        coeffs[b - k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    Ok(IntPolynomial::new(coeffs))
}

/// The power sums `s_1..s_n` of the roots of a monic `P`.
pub fn char_poly_power_sums(p: &IntPolynomial, n: usize) -> Vec<BigInt> {
    let d = p.degree().unwrap_or(0);
    // e_k = (−1)^k · coefficient of T^{d−k}.
    let e: Vec<BigInt> =
        (0..=d).map(|k| if k % 2 == 0 { p.coeff(d - k) } else { -p.coeff(d - k) }).collect();
    let mut s: Vec<BigInt> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..k.min(d + 1) {
            let term = &e[i] * &s[k - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if k <= d {
            let term = &e[k] * BigInt::from(k);
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        s.push(acc);
    }
    s
}

/// Evidence that every root of `P` satisfies `α^{2m} = q^{i·m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilCertificate {
    pub m: u64,
    /// Orders of `α²/q^i`, one per distinct root.
    pub root_orders: Vec<u64>,
    pub squarefree: IntPolynomial,
    /// `T^{2m} ≡ q^{im}` modulo the squarefree part, when `m` is small enough to check.
    pub verified_by_division: Option<bool>,
}

/// `2·lcm(1, …, 24)`.
pub const DEFAULT_WEIL_BOUND: u64 = 10_708_457_760;

/// Decides whether the roots of `P` are `q^{i/2}` times roots of unity, with
/// the certifying exponent if it is at most `m_max`.
pub fn weil_certificate(p: &IntPolynomial, q: &BigInt, i: u32, m_max: u64) -> Option<WeilCertificate> {
    if p.is_zero() {
        return None;
    }
    let p0 = p.squarefree_part();
    let d = p0.degree().unwrap_or(0);
    if d == 0 {
        return Some(WeilCertificate { m: 1, root_orders: vec![], squarefree: p0, verified_by_division: Some(true) });
    }
    // G(T²) = (−1)^D P₀(T) P₀(−T) has the roots α².
    let prod = p0.mul(&p0.reflect());
    let prod = if d % 2 == 1 { prod.neg() } else { prod };
    let g: Vec<BigInt> = (0..=d).map(|k| prod.coeff(2 * k)).collect();
    // H(T) = G(q^i T) / q^{iD} has the roots α²/q^i.
    let qi = q.pow(i);
    let mut h = Vec::with_capacity(d + 1);
    for (k, gk) in g.iter().enumerate() {
        let den = qi.pow((d - k) as u32);
        let (c, r) = gk.div_rem(&den);
        if !r.is_zero() {
            return None;
        }
        h.push(c);
    }
    let mut rest = IntPolynomial::new(h);
    if !rest.is_monic() {
        return None;
    }
    let mut root_orders = Vec::new();
    let bound = 2 * (d as u64) * (d as u64);
    for n in 1..=bound.max(2) {
        if euler_phi(n as u32) as usize > d {
            continue;
        }
        let phi = IntPolynomial::new(cyclotomic_polynomial(n as u32).iter().map(|&c| BigInt::from(c)).collect());
        loop {
            if rest.degree().unwrap_or(0) < phi.degree().unwrap() {
                break;
            }
            let (quo, r) = rest.div_rem_monic(&phi).ok()?;
            if !r.is_zero() {
                break;
            }
            rest = quo;
            root_orders.extend(std::iter::repeat(n).take(euler_phi(n as u32) as usize));
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    if rest.degree() != Some(0) {
        return None;
    }
    let m = root_orders.iter().fold(1u64, |acc, &n| acc.lcm(&n));
    if m > m_max {
        return None;
    }
    let verified_by_division = if m <= 10_000 {
        let lhs = IntPolynomial::powmod_monomial(&p0, 2 * m).ok()?;
        let rhs = IntPolynomial::new(vec![q.pow(i * m as u32)]).div_rem_monic(&p0).ok()?.1;
        Some(lhs == rhs)
    } else {
        None
    };
    Some(WeilCertificate { m, root_orders, squarefree: p0, verified_by_division })
}

/// Coefficients as `i64`, if they all fit.
pub fn to_i64_coeffs(p: &IntPolynomial) -> Option<Vec<i64>> {
    p.coeffs().iter().map(|c| c.to_i64()).collect()
}
