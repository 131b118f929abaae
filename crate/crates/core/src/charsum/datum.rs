use rayon::prelude::*;

use crate::exactalg::CyclotomicNumber;
use crate::fields::{AdditivePolynomial, FieldElement, FiniteField, Tower, WittRing, WittVector2};
use crate::limits;
use crate::quadform::{FiniteAbelianGroup, QuadraticForm};

use super::CharSumError;

/// One summand of a quadratic datum on `(F_q)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// `a x_j^{p^i + 1}`.
    Diag { j: usize, i: u32, a: FieldElement },
    /// `a x_j^{p^i} x_k`.
    Cross { j: usize, k: usize, i: u32, a: FieldElement },
    /// `(a/2) x_j²`, `p` odd.
    HalfSquare { j: usize, a: FieldElement },
    /// `ψ'(witt_trace(c x_j, 0))`, `p = 2`.
    WittLinear { j: usize, c: FieldElement },
    /// `c x_j`, a multiplicative twist.
    AsLinear { j: usize, c: FieldElement },
    /// `x_j ← f(x_j)` before every other term.
    Precompose { j: usize, f: AdditivePolynomial },
}

/// A symbolic quadratic character datum: `t(x) = ψ(Tr P(x)) · Π ψ'(…)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadDatum {
    field: FiniteField,
    d: usize,
    psi: u32,
    psi_witt: u32,
    terms: Vec<Term>,
}

impl QuadDatum {
    /// `ψ(t) = ζ_p^t` and `ψ'(u) = ζ_{p²}^u`.
    pub fn new(field: &FiniteField, d: usize) -> Result<Self, CharSumError> {
        if d == 0 {
            return Err(CharSumError::BadTerm("dimension must be at least 1".into()));
        }
        Ok(QuadDatum { field: field.clone(), d, psi: 1, psi_witt: 1, terms: Vec::new() })
    }

    /// `ψ(t) = ζ_p^{k t}`, `ψ'(u) = ζ_{p²}^{k' u}` with `k' ≡ k mod p` so that `ψ' ∘ V = ψ`.
    pub fn with_characters(mut self, k: u32, k_witt: u32) -> Result<Self, CharSumError> {
        let p = self.field.p();
        if k % p == 0 || k_witt % p == 0 || k_witt % p != k % p {
            return Err(CharSumError::BadTerm(format!("incompatible characters psi = {k}, psi' = {k_witt}")));
        }
        self.psi = k % p;
        self.psi_witt = k_witt % (p * p);
        Ok(self)
    }

    pub fn with_term(mut self, t: Term) -> Result<Self, CharSumError> {
        self.push(t)?;
        Ok(self)
    }

    pub fn push(&mut self, t: Term) -> Result<(), CharSumError> {
        let p = self.field.p();
        let check = |j: usize| {
            if j < self.d {
                Ok(())
            } else {
                Err(CharSumError::BadTerm(format!("coordinate {j} out of range for d = {}", self.d)))
            }
        };
        match &t {
            Term::Diag { j, .. } | Term::AsLinear { j, .. } => check(*j)?,
            Term::Cross { j, k, .. } => {
                check(*j)?;
                check(*k)?;
            }
            Term::HalfSquare { j, .. } => {
                check(*j)?;
                if p == 2 {
                    return Err(CharSumError::BadTerm("halfsq needs odd p".into()));
                }
            }
            Term::WittLinear { j, .. } => {
                check(*j)?;
                if p != 2 {
                    return Err(CharSumError::BadTerm("wittlin needs p = 2".into()));
                }
            }
            Term::Precompose { j, f } => {
                check(*j)?;
                if f.field() != &self.field {
                    return Err(CharSumError::BadTerm("precompose polynomial over another field".into()));
                }
            }
        }
        let elems: Vec<FieldElement> = match &t {
            Term::Diag { a, .. } | Term::Cross { a, .. } | Term::HalfSquare { a, .. } => vec![*a],
            Term::WittLinear { c, .. } | Term::AsLinear { c, .. } => vec![*c],
            Term::Precompose { .. } => vec![],
        };
        if elems.iter().any(|&e| !self.field.contains(e)) {
            return Err(CharSumError::BadTerm("coefficient outside the base field".into()));
        }
        self.terms.push(t);
        Ok(())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn psi(&self) -> u32 {
        self.psi
    }

    pub fn psi_witt(&self) -> u32 {
        self.psi_witt
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn has_witt_terms(&self) -> bool {
        self.terms.iter().any(|t| matches!(t, Term::WittLinear { .. }))
    }

    /// `p²` with Witt terms, else `p`.
    pub fn value_order(&self) -> u32 {
        let p = self.field.p();
        if self.has_witt_terms() { p * p } else { p }
    }

    /// The same datum over `tower.top()`.
    pub fn base_change(&self, tower: &Tower) -> Self {
        let l = |a: FieldElement| tower.lift(a);
        let terms = self
            .terms
            .iter()
            .map(|t| match t {
                Term::Diag { j, i, a } => Term::Diag { j: *j, i: *i, a: l(*a) },
                Term::Cross { j, k, i, a } => Term::Cross { j: *j, k: *k, i: *i, a: l(*a) },
                Term::HalfSquare { j, a } => Term::HalfSquare { j: *j, a: l(*a) },
                Term::WittLinear { j, c } => Term::WittLinear { j: *j, c: l(*c) },
                Term::AsLinear { j, c } => Term::AsLinear { j: *j, c: l(*c) },
                Term::Precompose { j, f } => Term::Precompose { j: *j, f: f.embed(tower) },
            })
            .collect();
        QuadDatum { field: tower.top().clone(), d: self.d, psi: self.psi, psi_witt: self.psi_witt, terms }
    }

    /// Evaluation tables for `U(F_{q^n})`.
    pub fn at_level(&self, n: u32) -> Result<LevelEvaluator, CharSumError> {
        let tower = Tower::new(&self.field, n)?;
        Ok(LevelEvaluator::new(self, tower))
    }

    /// `|U(F_{q^n})| = q^{nd}`, checked against the scale cap.
    pub fn point_count(&self, n: u32) -> Result<u64, CharSumError> {
        let total = limits::pow_sat(self.field.q() as u64, n * self.d as u32);
        limits::check_points(total)?;
        Ok(total as u64)
    }
}

/// A datum lifted to `F_Q = F_{q^n}`, ready for pointwise evaluation.
pub struct LevelEvaluator {
    datum: QuadDatum,
    tower: Tower,
    witt: Option<WittRing>,
    half: FieldElement,
    order: u32,
}

impl LevelEvaluator {
    fn new(datum: &QuadDatum, tower: Tower) -> Self {
        let lifted = datum.base_change(&tower);
        let top = tower.top().clone();
        let witt = datum.has_witt_terms().then(|| WittRing::new(&top));
        let half = if top.p() == 2 { FieldElement::ZERO } else { top.inv(top.from_int(2)).expect("p odd") };
        let order = datum.value_order();
        LevelEvaluator { datum: lifted, tower, witt, half, order }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn field(&self) -> &FiniteField {
        self.tower.top()
    }

    pub fn datum(&self) -> &QuadDatum {
        &self.datum
    }

    /// The value order `N`: `t(x) = ζ_N^{exponent(x)}`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn q(&self) -> u64 {
        self.tower.top().q() as u64
    }

    pub fn point_count(&self) -> Result<u64, CharSumError> {
        let total = limits::pow_sat(self.q(), self.datum.d as u32);
        limits::check_points(total)?;
        Ok(total as u64)
    }

    /// Coordinates of a point index, first coordinate most significant.
    pub fn decode(&self, mut idx: u64) -> Vec<FieldElement> {
        let q = self.q();
        let mut out = vec![FieldElement::ZERO; self.datum.d];
        for slot in out.iter_mut().rev() {
            *slot = FieldElement::from_index((idx % q) as u32);
            idx /= q;
        }
        out
    }

    pub fn encode(&self, x: &[FieldElement]) -> u64 {
        let q = self.q();
        x.iter().fold(0u64, |acc, e| acc * q + e.index() as u64)
    }

    /// Applies the precompositions in list order.
    pub fn transform(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        let mut x = x.to_vec();
        for t in &self.datum.terms {
            if let Term::Precompose { j, f } = t {
                x[*j] = f.eval(x[*j]);
            }
        }
        x
    }

    /// `P(x) ∈ F_Q` and the sum of the Witt traces in `Z/p²`, after precomposition.
    fn parts(&self, x: &[FieldElement]) -> (FieldElement, u32) {
        let f = self.tower.top();
        let x = self.transform(x);
        let mut poly = FieldElement::ZERO;
        let mut witt = 0u32;
        for t in &self.datum.terms {
            match t {
                Term::Diag { j, i, a } => {
                    poly = f.add(poly, f.mul(*a, f.mul(f.frobenius(x[*j], *i as i64), x[*j])));
                }
                Term::Cross { j, k, i, a } => {
                    poly = f.add(poly, f.mul(*a, f.mul(f.frobenius(x[*j], *i as i64), x[*k])));
                }
                Term::HalfSquare { j, a } => {
                    poly = f.add(poly, f.mul(f.mul(*a, self.half), f.mul(x[*j], x[*j])));
                }
                Term::AsLinear { j, c } => poly = f.add(poly, f.mul(*c, x[*j])),
                Term::WittLinear { j, c } => {
                    let w = self.witt.as_ref().expect("Witt ring present");
                    let p2 = f.p() * f.p();
                    witt = (witt + w.witt_trace(WittVector2::new(f.mul(*c, x[*j]), FieldElement::ZERO))) % p2;
                }
                Term::Precompose { .. } => {}
            }
        }
        (poly, witt)
    }

    /// `t(x) = ζ_N^{e}`, returning `e`.
    pub fn exponent(&self, x: &[FieldElement]) -> u32 {
        let (poly, witt) = self.parts(x);
        self.combine(poly, witt)
    }

    /// `t(x) ψ(Tr(Σ c_j x_j))` with the twist applied to the raw point.
    pub fn twisted_exponent(&self, x: &[FieldElement], c: &[FieldElement]) -> u32 {
        let f = self.tower.top();
        let (mut poly, witt) = self.parts(x);
        for (xj, cj) in x.iter().zip(c) {
            poly = f.add(poly, f.mul(*xj, *cj));
        }
        self.combine(poly, witt)
    }

    fn combine(&self, poly: FieldElement, witt: u32) -> u32 {
        let f = self.tower.top();
        let p = f.p();
        let tr = f.trace(poly);
        let scale = self.order / p;
        (self.datum.psi * tr * scale + self.datum.psi_witt * witt) % self.order
    }

    pub fn exponent_at_index(&self, idx: u64) -> u32 {
        self.exponent(&self.decode(idx))
    }

    pub fn value(&self, x: &[FieldElement]) -> CyclotomicNumber {
        CyclotomicNumber::zeta(self.order, self.exponent(x) as i64)
    }

    /// How many points take each exponent, by parallel enumeration.
    pub fn exponent_counts(&self) -> Result<Vec<i64>, CharSumError> {
        let total = self.point_count()?;
        let n = self.order as usize;
        let counts = (0..total as usize)
            .into_par_iter()
            .with_min_len(1024)
            .fold(
                || vec![0i64; n],
                |mut acc, idx| {
                    acc[self.exponent_at_index(idx as u64) as usize] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0i64; n],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        Ok(counts)
    }

    pub fn char_sum(&self) -> Result<CyclotomicNumber, CharSumError> {
        Ok(CyclotomicNumber::from_exponent_counts(self.order, &self.exponent_counts()?))
    }
}

/// `t_{D, q^n}(x)`.
pub fn trace_value(datum: &QuadDatum, n: u32, point: &[FieldElement]) -> Result<CyclotomicNumber, CharSumError> {
    let ev = datum.at_level(n)?;
    if point.len() != datum.d() || point.iter().any(|&x| !ev.field().contains(x)) {
        return Err(CharSumError::BadTerm("point is not in U(F_{q^n})".into()));
    }
    Ok(ev.value(point))
}

/// `S_n = Σ_{x ∈ U(F_{q^n})} t(x)`.
pub fn char_sum(datum: &QuadDatum, n: u32) -> Result<CyclotomicNumber, CharSumError> {
    datum.point_count(n)?;
    datum.at_level(n)?.char_sum()
}

/// The trace function at level `n` as a form on `(Z/p)^{M n d}`, whose
/// index order matches the point enumeration.
pub fn derive_pairing(datum: &QuadDatum, n: u32) -> Result<QuadraticForm, CharSumError> {
    datum.point_count(n)?;
    let ev = datum.at_level(n)?;
    let total = ev.point_count()?;
    let p = datum.field().p() as u64;
    let digits = ev.field().m() as usize * datum.d();
    let group = FiniteAbelianGroup::new(&vec![p; digits])?;
    let order = (p * p) as u32;
    let scale = order / ev.order();
    let table: Vec<u32> = (0..total).into_par_iter().map(|idx| ev.exponent_at_index(idx) * scale).collect();
    Ok(QuadraticForm::from_exponents(&group, order, table)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, m: u32) -> FiniteField {
        FiniteField::new(p, m, None).unwrap()
    }

    #[test]
    fn empty_datum_counts_points() {
        let d = QuadDatum::new(&f(3, 1), 2).unwrap();
        assert_eq!(char_sum(&d, 2).unwrap(), CyclotomicNumber::from_int(3, 81));
    }

    #[test]
    fn x_cubed_over_f4() {
        let f4 = f(2, 2);
        let d = QuadDatum::new(&f4, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a: f4.one() }).unwrap();
        let s: Vec<_> = (1..=3).map(|n| char_sum(&d, n).unwrap().as_integer().unwrap()).collect();
        assert_eq!(s, vec![4.into(), (-8).into(), 16.into()]);
        let f2 = f(2, 1);
        let d = QuadDatum::new(&f2, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a: f2.one() }).unwrap();
        assert_eq!(char_sum(&d, 1).unwrap(), CyclotomicNumber::zero(2));
        assert_eq!(char_sum(&d, 2).unwrap().as_integer(), Some(4.into()));
    }

    #[test]
    fn witt_linear_is_exeasy() {
        let f2 = f(2, 1);
        let d = QuadDatum::new(&f2, 1).unwrap().with_term(Term::WittLinear { j: 0, c: f2.one() }).unwrap();
        let q = derive_pairing(&d, 1).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.exponents(), &[0, 1]);
        assert!(q.is_quadratic() && q.is_nondegenerate());
    }

    #[test]
    fn hwex_gl_sums() {
        // ⟨x^q − x, y⟩ on F_q², q = 2: S_m = q · q^m.
        let f2 = f(2, 1);
        let d = QuadDatum::new(&f2, 2)
            .unwrap()
            .with_term(Term::Cross { j: 0, k: 1, i: 1, a: f2.one() })
            .unwrap()
            .with_term(Term::Cross { j: 0, k: 1, i: 0, a: f2.from_int(-1) })
            .unwrap();
        for m in 1..=3u32 {
            assert_eq!(char_sum(&d, m).unwrap().as_integer(), Some((2i64 * 2i64.pow(m)).into()));
        }
    }

    #[test]
    fn trace_values_have_small_order() {
        let f3 = f(3, 1);
        let d = QuadDatum::new(&f3, 1)
            .unwrap()
            .with_term(Term::HalfSquare { j: 0, a: f3.one() })
            .unwrap()
            .with_term(Term::AsLinear { j: 0, c: f3.one() })
            .unwrap();
        for x in 0..9u32 {
            let v = trace_value(&d, 2, &[FieldElement::from_index(x)]).unwrap();
            assert!(v.pow(3).is_one());
        }
        let q = derive_pairing(&d, 2).unwrap();
        assert!(q.is_quadratic());
    }

    #[test]
    fn precompose_frobenius_is_a_bijection() {
        let f2 = f(2, 1);
        let base = QuadDatum::new(&f2, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a: f2.one() }).unwrap();
        let pulled = base
            .clone()
            .with_term(Term::Precompose { j: 0, f: AdditivePolynomial::frobenius_power(&f2, 1) })
            .unwrap();
        for n in 1..=3 {
            assert_eq!(char_sum(&base, n).unwrap(), char_sum(&pulled, n).unwrap());
        }
    }

    #[test]
    fn bad_terms() {
        let f2 = f(2, 1);
        let d = QuadDatum::new(&f2, 1).unwrap();
        assert!(d.clone().with_term(Term::HalfSquare { j: 0, a: f2.one() }).is_err());
        assert!(d.clone().with_term(Term::Diag { j: 1, i: 0, a: f2.one() }).is_err());
        let f3 = f(3, 1);
        assert!(QuadDatum::new(&f3, 1).unwrap().with_term(Term::WittLinear { j: 0, c: f3.one() }).is_err());
        assert!(QuadDatum::new(&f3, 1).unwrap().with_characters(1, 2).is_err());
    }
}
