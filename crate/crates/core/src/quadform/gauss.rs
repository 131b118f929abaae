use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::exactalg::CyclotomicNumber;
use crate::fields::prime_factors;

use super::form::{Character, QuadraticForm};
use super::QuadError;

/// `τ_Q = Σ_x Q(x)`.
pub fn gauss_sum(q: &QuadraticForm) -> CyclotomicNumber {
    let mut counts = vec![0i64; q.order() as usize];
    for &t in q.exponents() {
        counts[t as usize] += 1;
    }
    CyclotomicNumber::from_exponent_counts(q.order(), &counts)
}

/// `|τ|² = |M|` and the order of `τ²/|M|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSumCertificate {
    pub tau: CyclotomicNumber,
    pub abs_square: BigInt,
    pub root_order: u64,
}

pub fn verify_gauss_sum_theorem(q: &QuadraticForm) -> Result<GaussSumCertificate, QuadError> {
    if !q.is_nondegenerate() {
        return Err(QuadError::Degenerate);
    }
    let tau = gauss_sum(q);
    let m = BigInt::from(q.group().order());
    let abs = tau.abs_square();
    let abs_square = abs.as_integer().filter(|a| *a == m).ok_or_else(|| {
        QuadError::TheoremViolated(format!("|tau|^2 = {abs}, expected {m}"))
    })?;
    let ratio = (&tau * &tau).scale(&BigRational::new(BigInt::one(), m));
    let root_order = ratio
        .is_root_of_unity()
        .ok_or_else(|| QuadError::TheoremViolated(format!("tau^2/|M| = {ratio} is not a root of unity")))?;
    Ok(GaussSumCertificate { tau, abs_square, root_order })
}

/// `τ_{Qχ} = Q(a)^{-1} τ_Q` with `χ = B(a, ·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCheck {
    pub a: usize,
    pub twisted_sum: CyclotomicNumber,
    pub predicted: CyclotomicNumber,
    pub holds: bool,
}

pub fn twist_gauss_identity(q: &QuadraticForm, chi: &Character) -> Result<TwistCheck, QuadError> {
    let g = q.group();
    let a = g.elements().find(|&a| pairing_matches(q, a, chi)).ok_or(QuadError::CharacterNotInImage)?;
    let twisted_sum = gauss_sum(&q.twist(chi));
    let predicted = &q.value(a).conj() * &gauss_sum(q);
    let holds = twisted_sum == predicted;
    Ok(TwistCheck { a, twisted_sum, predicted, holds })
}

fn pairing_matches(q: &QuadraticForm, a: usize, chi: &Character) -> bool {
    let g = q.group();
    g.generators().iter().all(|&e| q.pairing_exponent(a, e) == chi.exponent_at(g, e, q.order()))
}

struct Descent<'a> {
    q: &'a QuadraticForm,
    in_s: Vec<bool>,
    in_t: Vec<bool>,
    shift: usize,
    multiplier: CyclotomicNumber,
}

impl Descent<'_> {
    fn qc(&self, s: usize) -> u32 {
        let n = self.q.order();
        (self.q.exponent_at(s) + n - self.q.pairing_exponent(self.shift, s)) % n
    }

    fn quotient_order(&self, x: usize) -> u64 {
        let g = self.q.group();
        let mut k = 1u64;
        let mut cur = x;
        while !self.in_t[cur] {
            cur = g.add(cur, x);
            k += 1;
        }
        k
    }

    /// Runs until `S = T`, returning the accumulated multiplier.
    fn run(mut self) -> Result<CyclotomicNumber, QuadError> {
        let g = self.q.group().clone();
        let n = self.q.order();
        loop {
            let pick = g
                .elements()
                .filter(|&x| self.in_s[x] && !self.in_t[x])
                .find(|&x| {
                    let k = self.quotient_order(x);
                    prime_factors(k).len() == 1 && prime_factors(k)[0] == k
                });
            let Some(x) = pick else { break };
            let p = self.quotient_order(x);
            let perp: Vec<bool> =
                g.elements().map(|s| self.in_s[s] && self.q.pairing_exponent(s, x) == 0).collect();
            if self.q.pairing_exponent(x, x) != 0 {
                let mut counts = vec![0i64; n as usize];
                let mut cur = 0usize;
                for _ in 0..p {
                    counts[self.qc(cur) as usize] += 1;
                    cur = g.add(cur, x);
                }
                self.multiplier = &self.multiplier * &CyclotomicNumber::from_exponent_counts(n, &counts);
                self.in_s = perp;
            } else {
                let target = self.qc(x);
                let a = g
                    .elements()
                    .find(|&a| self.in_s[a] && self.q.pairing_exponent(a, x) == target)
                    .ok_or_else(|| QuadError::TheoremViolated("no untwisting element in the subquotient".into()))?;
                let factor = CyclotomicNumber::zeta(n, self.qc(g.neg(a)) as i64).scale_int(&BigInt::from(p));
                self.multiplier = &self.multiplier * &factor;
                self.shift = g.add(self.shift, a);
                self.in_s = perp;
                let mut t = self.in_t.clone();
                for s in g.elements().filter(|&s| self.in_t[s]) {
                    let mut cur = s;
                    for _ in 0..p {
                        t[cur] = true;
                        cur = g.add(cur, x);
                    }
                }
                self.in_t = t;
            }
        }
        if g.elements().any(|s| self.in_s[s] && !self.in_t[s]) {
            return Err(QuadError::TheoremViolated("subquotient has no element of prime order".into()));
        }
        Ok(self.multiplier)
    }
}

/// `τ_Q` by splitting off prime-order elements and descending through
/// isotropic ones, independently of the direct summation.
pub fn recursive_gauss_eval(q: &QuadraticForm) -> Result<CyclotomicNumber, QuadError> {
    q.check_quadratic()?;
    if !q.is_nondegenerate() {
        return Err(QuadError::Degenerate);
    }
    let m = q.group().order() as usize;
    let mut in_t = vec![false; m];
    in_t[0] = true;
    Descent { q, in_s: vec![true; m], in_t, shift: 0, multiplier: CyclotomicNumber::one(q.order()) }.run()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentOutcome {
    /// `Q` is a non-trivial character on the radical, so `τ_Q = 0`.
    Vanishes,
    /// `τ_Q = |R| · τ_{Q̄}` with `Q̄` the descended form on `M/R`.
    Descends { reduced_sum: CyclotomicNumber, tau: CyclotomicNumber },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalDescent {
    pub radical_order: u64,
    pub outcome: DescentOutcome,
}

pub fn radical_descent(q: &QuadraticForm) -> Result<RadicalDescent, QuadError> {
    q.check_quadratic()?;
    let radical = q.radical();
    let radical_order = radical.len() as u64;
    if radical.iter().any(|&r| q.exponent_at(r) != 0) {
        return Ok(RadicalDescent { radical_order, outcome: DescentOutcome::Vanishes });
    }
    let m = q.group().order() as usize;
    let mut in_t = vec![false; m];
    for &r in &radical {
        in_t[r] = true;
    }
    let reduced_sum =
        Descent { q, in_s: vec![true; m], in_t, shift: 0, multiplier: CyclotomicNumber::one(q.order()) }.run()?;
    let tau = reduced_sum.scale_int(&BigInt::from(radical_order));
    Ok(RadicalDescent { radical_order, outcome: DescentOutcome::Descends { reduced_sum, tau } })
}

/// The canonical `a` with `B(v, v) = B(v, a)` on an elementary 2-group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char2Invariant {
    pub a: usize,
    pub q_a: CyclotomicNumber,
    pub tau_squared: CyclotomicNumber,
    pub holds: bool,
}

pub fn char2_invariant(q: &QuadraticForm) -> Result<Char2Invariant, QuadError> {
    let g = q.group();
    if g.factors().iter().any(|&d| d != 2) {
        return Err(QuadError::NotElementaryTwoGroup);
    }
    if !q.is_nondegenerate() {
        return Err(QuadError::Degenerate);
    }
    let a = g
        .elements()
        .find(|&a| g.elements().all(|v| q.pairing_exponent(v, v) == q.pairing_exponent(v, a)))
        .ok_or_else(|| QuadError::TheoremViolated("v -> B(v,v) is not represented".into()))?;
    let tau = gauss_sum(q);
    let tau_squared = &tau * &tau;
    let q_a = q.value(a);
    let holds = tau_squared == q_a.scale_int(&BigInt::from(g.order()));
    Ok(Char2Invariant { a, q_a, tau_squared, holds })
}
