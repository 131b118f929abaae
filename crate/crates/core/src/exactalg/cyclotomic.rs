use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::limits;

use super::ExactError;

/// `Φ_n`, low degree first, memoised for the life of the process.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static TABLE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = table.lock().unwrap().get(&n) {
        return v.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let primes = crate::fields::prime_factors(n as u64);
    // Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x) for p ∤ m, then Φ_n(x) = Φ_rad(x^{n/rad}).
    let mut phi: Vec<i64> = vec![-1, 1];
    let mut rad = 1u64;
    for &p in &primes {
        let p = p as usize;
        let mut stretched = vec![0i64; (phi.len() - 1) * p + 1];
        for (i, &c) in phi.iter().enumerate() {
            stretched[i * p] = c;
        }
        phi = exact_div_i64(&stretched, &phi);
        rad *= p as u64;
    }
    let k = (n as u64 / rad) as usize;
    if k > 1 {
        let mut stretched = vec![0i64; (phi.len() - 1) * k + 1];
        for (i, &c) in phi.iter().enumerate() {
            stretched[i * k] = c;
        }
        phi = stretched;
    }
    let arc = Arc::new(phi);
    table.lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let lb = b[db];
    let mut r: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        debug_assert_eq!(c % lb as i128, 0);
        let c = c / lb as i128;
        q[k] = c as i64;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj as i128;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut out = n as u64;
    for p in crate::fields::prime_factors(n as u64) {
        out = out / p * (p - 1);
    }
    out as u32
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// An exact element of `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)−1}`.
///
/// The value is `num / den` with `den > 0` and the content of `num` coprime
/// to `den`, so structural equality at a fixed order is numerical equality.
#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

fn reduce_big(v: &mut Vec<BigInt>, phi: &[i64]) {
    let d = phi.len() - 1;
    let nz: Vec<(usize, i64)> = phi[..d].iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect();
    for k in (d..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[k]);
        for &(j, pj) in &nz {
            v[k - d + j] -= &c * pj;
        }
    }
    v.truncate(d);
    v.resize(d, BigInt::zero());
}

fn reduce_small(v: &mut Vec<i128>, phi: &[i64]) -> bool {
    let d = phi.len() - 1;
    let nz: Vec<(usize, i128)> =
        phi[..d].iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c as i128)).collect();
    for k in (d..v.len()).rev() {
        let c = v[k];
        if c == 0 {
            continue;
        }
        v[k] = 0;
        for &(j, pj) in &nz {
            match c.checked_mul(pj).and_then(|t| v[k - d + j].checked_sub(t)) {
                Some(x) => v[k - d + j] = x,
                None => return false,
            }
        }
    }
    v.truncate(d);
    v.resize(d, 0);
    true
}

const SMALL: i64 = 1 << 62;

fn as_small(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64().filter(|y| y.abs() < SMALL)).collect()
}

fn mul_polys(a: &[BigInt], b: &[BigInt], phi: &[i64]) -> Vec<BigInt> {
    if let (Some(a64), Some(b64)) = (as_small(a), as_small(b)) {
        let an: Vec<(usize, i128)> = a64.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c as i128)).collect();
        let bn: Vec<(usize, i128)> = b64.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c as i128)).collect();
        let mut raw = vec![0i128; (a.len() + b.len()).saturating_sub(1).max(1)];
        let mut ok = true;
        'outer: for &(i, x) in &an {
            for &(j, y) in &bn {
                match x.checked_mul(y).and_then(|t| raw[i + j].checked_add(t)) {
                    Some(s) => raw[i + j] = s,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok && reduce_small(&mut raw, phi) {
            return raw.into_iter().map(BigInt::from).collect();
        }
    }
    let mut raw = vec![BigInt::zero(); (a.len() + b.len()).saturating_sub(1).max(1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                raw[i + j] += x * y;
            }
        }
    }
    reduce_big(&mut raw, phi);
    raw
}

impl CyclotomicNumber {
    fn check_order(n: u64) -> Result<u32, ExactError> {
        let cap = limits::order_cap();
        if n == 0 || n > cap {
            return Err(ExactError::IncompatibleOrders { order: n, cap });
        }
        Ok(n as u32)
    }

    fn normalized(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        }
        CyclotomicNumber { order, num, den }
    }

    /// Reduces a raw polynomial in `ζ_N` (any length) modulo `Φ_N`.
    pub fn from_raw(order: u32, raw: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_polynomial(order);
        let mut raw = raw;
        if raw.len() < phi.len() - 1 {
            raw.resize(phi.len() - 1, BigInt::zero());
        }
        reduce_big(&mut raw, &phi);
        Self::normalized(order, raw, den)
    }

    pub fn zero(order: u32) -> Self {
        let d = euler_phi(order) as usize;
        CyclotomicNumber { order, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn from_int(order: u32, k: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = k.into();
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_rational(order: u32, r: &BigRational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = r.numer().clone();
        Self::normalized(order, z.num, r.denom().clone())
    }

    /// `ζ_N^k`.
    pub fn zeta(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigInt::zero(); k + 1];
        raw[k] = BigInt::one();
        Self::from_raw(order, raw, BigInt::one())
    }

    /// `Σ_k counts[k] ζ_N^k` for a count vector of length `N`.
    pub fn from_exponent_counts(order: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), order as usize);
        let phi = cyclotomic_polynomial(order);
        let mut raw: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        if raw.len() < phi.len() - 1 {
            raw.resize(phi.len() - 1, 0);
        }
        if reduce_small(&mut raw, &phi) {
            return Self::normalized(order, raw.into_iter().map(BigInt::from).collect(), BigInt::one());
        }
        Self::from_raw(order, counts.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis, as rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The image under `Q(ζ_N) → Q(ζ_{N'})`, `ζ_N ↦ ζ_{N'}^{N'/N}`.
    pub fn embed(&self, target: u32) -> Result<Self, ExactError> {
        if target % self.order != 0 {
            return Err(ExactError::NotADivisor { order: self.order, target });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        Self::check_order(target as u64)?;
        let k = (target / self.order) as usize;
        let mut raw = vec![BigInt::zero(); (self.num.len() - 1) * k + 1];
        for (i, c) in self.num.iter().enumerate() {
            raw[i * k] = c.clone();
        }
        Ok(Self::from_raw(target, raw, self.den.clone()))
    }

    fn common(&self, other: &Self) -> Result<(Self, Self), ExactError> {
        if self.order == other.order {
            return Ok((self.clone(), other.clone()));
        }
        let l = Self::check_order(lcm_u64(self.order as u64, other.order as u64))?;
        Ok((self.embed(l)?, other.embed(l)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        let (a, b) = self.common(other)?;
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        Ok(Self::normalized(a.order, num, &a.den * &b.den))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let (a, b) = self.common(other)?;
        let phi = cyclotomic_polynomial(a.order);
        let num = mul_polys(&a.num, &b.num, &phi);
        Ok(Self::normalized(a.order, num, &a.den * &b.den))
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.order, num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The automorphism `ζ ↦ ζ^a` for `a` prime to `N`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.order as i64;
        let mut raw = vec![BigInt::zero(); self.order as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                raw[(i as i64 * a).rem_euclid(n) as usize] += c;
            }
        }
        Self::from_raw(self.order, raw, self.den.clone())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `z · conj(z)`.
    pub fn abs_square(&self) -> Self {
        self * &self.conj()
    }

    /// The rational value, when every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Multiplicative inverse by the extended Euclidean algorithm over `Q`.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, &r.recip()));
        }
        let phi = cyclotomic_polynomial(self.order);
        let to_q = |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(|c| BigRational::from_integer(c.clone())).collect() };
        let mut r0 = to_q(&phi.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let mut r1 = to_q(&self.num);
        qtrim(&mut r1);
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = qdivrem(&r0, &r1);
            let s2 = qsub(&s0, &qmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // s0 · self ≡ r0 (a nonzero constant) mod Φ_N.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let t: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        let lcm_den = t.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let raw: Vec<BigInt> = t.iter().map(|x| (x * BigRational::from_integer(lcm_den.clone())).to_integer()).collect();
        let scaled = Self::from_raw(self.order, raw, lcm_den);
        // Undo the denominator of self.
        Ok(scaled.scale_int(&self.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&other.inv()?)
    }

    /// `(L, e)` with `self = ζ_L^e`, `L = lcm(2, N)`, when `self` is a root of unity.
    ///
    /// Exact: the roots of unity in `Q(ζ_N)` are `±ζ_N^k`, and each candidate
    /// is compared coefficient-wise.
    pub fn root_of_unity_exponent(&self) -> Option<(u32, u32)> {
        if !self.den.is_one() {
            return None;
        }
        let target = as_small(&self.num)?;
        let n = self.order as usize;
        let big_l = lcm_u64(2, n as u64) as u32;
        let phi = cyclotomic_polynomial(self.order);
        let d = phi.len() - 1;
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for k in 0..n {
            if cur == target {
                let e = (k as u64 * (big_l as u64 / n as u64)) % big_l as u64;
                return Some((big_l, e as u32));
            }
            if cur.iter().zip(&target).all(|(a, b)| *a == -*b) {
                let e = (k as u64 * (big_l as u64 / n as u64) + big_l as u64 / 2) % big_l as u64;
                return Some((big_l, e as u32));
            }
            // cur ← ζ · cur.
            let top = cur[d - 1];
            for j in (1..d).rev() {
                cur[j] = cur[j - 1] - top * phi[j];
            }
            cur[0] = -top * phi[0];
        }
        None
    }

    /// Multiplicative order, if `self` is a root of unity.
    pub fn is_root_of_unity(&self) -> Option<u64> {
        let (l, e) = self.root_of_unity_exponent()?;
        Some(l as u64 / (l as u64).gcd(&(e as u64)))
    }

    /// Reference decision by powering to each divisor of `lcm(2, N)`.
    pub fn root_of_unity_order_by_powering(&self) -> Option<u64> {
        let l = lcm_u64(2, self.order as u64);
        let mut divisors: Vec<u64> = (1..=l).filter(|d| l % d == 0).collect();
        divisors.sort();
        divisors.into_iter().find(|&d| self.pow(d).is_one())
    }
}

fn qtrim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    qtrim(&mut out);
    out
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(&mut out);
    out
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    qtrim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    qtrim(&mut q);
    r.truncate(db.max(1));
    qtrim(&mut r);
    (q, r)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let l = lcm_u64(self.order as u64, other.order as u64) as u32;
        let (Ok(a), Ok(b)) = (self.embed_unchecked(l), other.embed_unchecked(l)) else { return false };
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CyclotomicNumber {}

impl CyclotomicNumber {
    fn embed_unchecked(&self, target: u32) -> Result<Self, ExactError> {
        if target % self.order != 0 {
            return Err(ExactError::NotADivisor { order: self.order, target });
        }
        let k = (target / self.order) as usize;
        let mut raw = vec![BigInt::zero(); (self.num.len() - 1) * k + 1];
        for (i, c) in self.num.iter().enumerate() {
            raw[i * k] = c.clone();
        }
        Ok(Self::from_raw(target, raw, self.den.clone()))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            parts.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -BigInt::one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            });
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ").replace("+ -", "- ") };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("cyclotomic order cap exceeded")
            }
        }
        impl std::ops::$tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$checked(&rhs).expect("cyclotomic order cap exceeded")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber::neg(self)
    }
}

impl std::ops::Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105)[7], -2);
        for n in 1..200 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn basic_identities() {
        assert_eq!(&z(8, 1) * &z(8, 1), z(4, 1));
        let one_i = &CyclotomicNumber::one(4) + &z(4, 1);
        assert_eq!(one_i.abs_square(), CyclotomicNumber::from_int(4, 2));
        assert_eq!(&z(3, 1) + &z(3, 2), CyclotomicNumber::from_int(3, -1));
        assert_eq!(z(7, 3).abs_square(), CyclotomicNumber::one(7));
        assert_eq!(z(3, 1).as_rational(), None);
        assert_eq!(z(12, 5).conj().conj(), z(12, 5));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(8, 1).is_root_of_unity(), Some(8));
        let one_i = &CyclotomicNumber::one(4) + &z(4, 1);
        let ratio = (&one_i * &one_i).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(ratio.is_root_of_unity(), Some(4));
        assert_eq!(CyclotomicNumber::from_int(5, 2).is_root_of_unity(), None);
        assert_eq!(CyclotomicNumber::from_int(5, -1).is_root_of_unity(), Some(2));
        // −ζ_3 has order 6 inside Q(ζ_3).
        assert_eq!(z(3, 1).neg().is_root_of_unity(), Some(6));
        for n in [1u32, 2, 3, 4, 5, 9, 12, 15, 16, 30] {
            for k in 0..n as i64 {
                for sign in [1, -1] {
                    let w = z(n, k).scale_int(&BigInt::from(sign));
                    assert_eq!(w.is_root_of_unity(), w.root_of_unity_order_by_powering());
                }
            }
        }
        let not = &z(5, 1) + &z(5, 2);
        assert_eq!(not.is_root_of_unity(), None);
        assert_eq!(not.root_of_unity_order_by_powering(), None);
    }

    #[test]
    fn inverse_and_division() {
        let a = &CyclotomicNumber::from_int(9, 2) + &z(9, 4);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let c = (&CyclotomicNumber::one(15) + &z(15, 7)).scale(&BigRational::new(3.into(), 7.into()));
        assert!((&c * &c.inv().unwrap()).is_one());
        assert_eq!(CyclotomicNumber::zero(5).inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn embedding_is_a_ring_map_and_transitive() {
        let a = &z(6, 1) + &CyclotomicNumber::from_int(6, 3);
        let b = &z(6, 5) + &z(6, 2);
        let ab = &a * &b;
        let e = |x: &CyclotomicNumber, n| x.embed(n).unwrap();
        assert_eq!(e(&ab, 12), &e(&a, 12) * &e(&b, 12));
        assert_eq!(e(&e(&a, 12), 36), e(&a, 36));
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
    }

    #[test]
    fn order_cap() {
        let a = z(1 << 15, 1);
        let b = z(3, 1);
        assert!(matches!(a.checked_mul(&b), Err(ExactError::IncompatibleOrders { .. })));
    }

    #[test]
    fn exponent_counts() {
        let counts = vec![1, 0, 2];
        let v = CyclotomicNumber::from_exponent_counts(3, &counts);
        assert_eq!(v.abs_square(), CyclotomicNumber::from_int(3, 3));
    }
}
