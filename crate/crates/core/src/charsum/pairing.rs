use std::collections::BTreeMap;

use crate::fields::{FieldElement, FiniteField, LaurentAdditive, Tower};

use super::datum::{QuadDatum, Term};
use super::CharSumError;

/// `b(x, y) = ψ(Tr Σ_{j,k} f_{jk}(x_j) y_k)`, blocks keyed by `(j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingDatum {
    field: FiniteField,
    d: usize,
    psi: u32,
    blocks: BTreeMap<(usize, usize), LaurentAdditive>,
}

impl PairingDatum {
    pub fn new(field: &FiniteField, d: usize) -> Self {
        PairingDatum { field: field.clone(), d, psi: 1, blocks: BTreeMap::new() }
    }

    /// A one-dimensional pairing `ψ(Tr f(x) y)`.
    pub fn one_dimensional(f: LaurentAdditive) -> Self {
        let mut out = PairingDatum::new(f.field(), 1);
        out.add_block(0, 0, &f);
        out
    }

    pub fn with_psi(mut self, k: u32) -> Self {
        self.psi = k;
        self
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

    pub fn block(&self, j: usize, k: usize) -> LaurentAdditive {
        self.blocks.get(&(j, k)).cloned().unwrap_or_else(|| LaurentAdditive::zero(&self.field))
    }

    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), &LaurentAdditive)> {
        self.blocks.iter().map(|(&k, v)| (k, v))
    }

    pub fn add_block(&mut self, j: usize, k: usize, f: &LaurentAdditive) {
        let sum = self.block(j, k).add(f);
        if sum.is_zero() {
            self.blocks.remove(&(j, k));
        } else {
            self.blocks.insert((j, k), sum);
        }
    }

    /// `f_{kj} = f_{jk}^*` for all blocks.
    pub fn symmetry_defect(&self) -> Option<(usize, usize)> {
        for j in 0..self.d {
            for k in j..self.d {
                if self.block(k, j) != self.block(j, k).adjoint() {
                    return Some((j, k));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    /// Row `k` of `l_Q`: `x ↦ Σ_j f_{jk}(x_j)`.
    pub fn row(&self, k: usize) -> Vec<LaurentAdditive> {
        (0..self.d).map(|j| self.block(j, k)).collect()
    }

    /// `l_Q(x)` for `x ∈ tower.top()^d`.
    pub fn apply(&self, tower: &Tower, x: &[FieldElement]) -> Vec<FieldElement> {
        let field = tower.top();
        let mut out = vec![FieldElement::ZERO; self.d];
        for (&(j, k), f) in &self.blocks {
            out[k] = field.add(out[k], f.embed(tower).eval(x[j]));
        }
        out
    }

    /// The exponent of `b(x, y)` in `ζ_p`, for points over `tower.top()`.
    pub fn pairing_exponent(&self, tower: &Tower, x: &[FieldElement], y: &[FieldElement]) -> u32 {
        let field = tower.top();
        let lx = self.apply(tower, x);
        let s = lx.iter().zip(y).fold(FieldElement::ZERO, |acc, (a, b)| field.add(acc, field.mul(*a, *b)));
        (self.psi * field.trace(s)) % field.p()
    }

    /// Each row raised by a Frobenius shift so that no exponent is negative.
    pub fn cleared_rows(&self) -> Vec<Vec<LaurentAdditive>> {
        (0..self.d)
            .map(|k| {
                let row = self.row(k);
                let low = row.iter().filter_map(|f| f.bottom_exponent()).min().unwrap_or(0);
                row.iter().map(|f| f.frobenius_shift(-low.min(0))).collect()
            })
            .collect()
    }
}

/// The coefficient of `B_Q` in trace-normal form, expanded term by term.
pub fn symbolic_pairing(datum: &QuadDatum) -> Result<PairingDatum, CharSumError> {
    let f = datum.field();
    let d = datum.d();
    let mut raw = PairingDatum::new(f, d).with_psi(datum.psi());
    let mono = |i: i32, a: FieldElement| LaurentAdditive::monomial(f, i, a);
    for t in datum.terms() {
        match t {
            Term::Diag { j, i, a } => {
                let i = *i as i32;
                raw.add_block(*j, *j, &mono(i, *a).add(&mono(-i, f.frobenius(*a, -(i as i64)))));
            }
            Term::Cross { j, k, i, a } => {
                let i = *i as i32;
                raw.add_block(*j, *k, &mono(i, *a));
                raw.add_block(*k, *j, &mono(-i, f.frobenius(*a, -(i as i64))));
            }
            Term::HalfSquare { j, a } => raw.add_block(*j, *j, &mono(0, *a)),
            Term::WittLinear { j, c } => raw.add_block(*j, *j, &mono(0, f.mul(*c, *c))),
            Term::AsLinear { .. } | Term::Precompose { .. } => {}
        }
    }
    let mut phi: Vec<LaurentAdditive> = vec![mono(0, f.one()); d];
    for t in datum.terms() {
        if let Term::Precompose { j, f: g } = t {
            phi[*j] = g.to_laurent().compose(&phi[*j]);
        }
    }
    let mut out = PairingDatum::new(f, d).with_psi(datum.psi());
    for ((j, k), blk) in raw.blocks() {
        out.add_block(j, k, &phi[k].adjoint().compose(blk).compose(&phi[j]));
    }
    if let Some((j, k)) = out.symmetry_defect() {
        return Err(CharSumError::NotSymmetric { j, k });
    }
    Ok(out)
}

/// The canonical one-dimensional datum with pairing coefficient `f`.
pub fn canonical_quadratic(pairing: &PairingDatum) -> Result<QuadDatum, CharSumError> {
    if pairing.d() != 1 {
        return Err(CharSumError::NotOneDimensional);
    }
    if pairing.symmetry_defect().is_some() {
        return Err(CharSumError::NotSymmetric { j: 0, k: 0 });
    }
    let field = pairing.field();
    let f = pairing.block(0, 0);
    let p = field.p();
    let mut datum = QuadDatum::new(field, 1)?;
    if p != 2 {
        datum = datum.with_characters(pairing.psi(), pairing.psi())?;
    } else if pairing.psi() % 2 == 0 {
        return Err(CharSumError::BadTerm("psi must be primitive".into()));
    }
    let a0 = f.coeff(0);
    if !a0.is_zero() {
        if p == 2 {
            datum.push(Term::WittLinear { j: 0, c: field.pth_root(a0) })?;
        } else {
            datum.push(Term::HalfSquare { j: 0, a: a0 })?;
        }
    }
    for (i, a) in f.terms() {
        if i > 0 {
            datum.push(Term::Diag { j: 0, i: i as u32, a })?;
        }
    }
    if symbolic_pairing(&datum)? != *pairing {
        return Err(CharSumError::NotSymmetric { j: 0, k: 0 });
    }
    Ok(datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::AdditivePolynomial;

    fn ff(p: u32, m: u32) -> FiniteField {
        FiniteField::new(p, m, None).unwrap()
    }

    /// `b(x, y)` straight from the trace function.
    fn pointwise_matches(datum: &QuadDatum, n: u32) {
        let pd = symbolic_pairing(datum).unwrap();
        let ev = datum.at_level(n).unwrap();
        let top = ev.field().clone();
        let order = ev.order();
        let total = ev.point_count().unwrap();
        for a in 0..total {
            for b in 0..total {
                let x = ev.decode(a);
                let y = ev.decode(b);
                let s: Vec<_> = x.iter().zip(&y).map(|(u, v)| top.add(*u, *v)).collect();
                let e = (ev.exponent(&s) + 2 * order - ev.exponent(&x) - ev.exponent(&y)) % order;
                let want = pd.pairing_exponent(ev.tower(), &x, &y) * (order / top.p());
                assert_eq!(e, want % order, "x = {x:?}, y = {y:?}");
            }
        }
    }

    #[test]
    fn diag_expansion() {
        let f3 = ff(3, 1);
        let a = f3.from_int(2);
        let d = QuadDatum::new(&f3, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a }).unwrap();
        let pd = symbolic_pairing(&d).unwrap();
        assert_eq!(pd.block(0, 0), LaurentAdditive::new(&f3, [(1, a), (-1, a)]));
        pointwise_matches(&d, 2);
    }

    #[test]
    fn witt_coefficient_is_squared() {
        let f4 = ff(2, 2);
        let w = f4.primitive_element();
        let d = QuadDatum::new(&f4, 1).unwrap().with_term(Term::WittLinear { j: 0, c: w }).unwrap();
        let pd = symbolic_pairing(&d).unwrap();
        assert_eq!(pd.block(0, 0), LaurentAdditive::monomial(&f4, 0, f4.mul(w, w)));
        pointwise_matches(&d, 1);
    }

    #[test]
    fn cross_and_precompose_match_pointwise() {
        let f2 = ff(2, 1);
        let d = QuadDatum::new(&f2, 2)
            .unwrap()
            .with_term(Term::Cross { j: 0, k: 1, i: 1, a: f2.one() })
            .unwrap()
            .with_term(Term::Diag { j: 1, i: 1, a: f2.one() })
            .unwrap()
            .with_term(Term::Precompose { j: 0, f: AdditivePolynomial::lang(&f2, 1).add(&AdditivePolynomial::identity(&f2)) })
            .unwrap()
            .with_term(Term::Precompose { j: 1, f: AdditivePolynomial::frobenius_power(&f2, 1) })
            .unwrap();
        pointwise_matches(&d, 2);
    }

    #[test]
    fn canonical_sections() {
        let f3 = ff(3, 1);
        let pd = PairingDatum::one_dimensional(LaurentAdditive::monomial(&f3, 0, f3.one()));
        let d = canonical_quadratic(&pd).unwrap();
        assert_eq!(d.terms(), &[Term::HalfSquare { j: 0, a: f3.one() }]);

        let f2 = ff(2, 1);
        let pd = PairingDatum::one_dimensional(LaurentAdditive::monomial(&f2, 0, f2.one()));
        let d = canonical_quadratic(&pd).unwrap();
        assert_eq!(d.terms(), &[Term::WittLinear { j: 0, c: f2.one() }]);

        let f4 = ff(2, 2);
        let a = f4.primitive_element();
        let pd = PairingDatum::one_dimensional(LaurentAdditive::new(&f4, [(1, a), (-1, f4.frobenius(a, -1))]));
        let d = canonical_quadratic(&pd).unwrap();
        assert_eq!(d.terms(), &[Term::Diag { j: 0, i: 1, a }]);

        let bad = PairingDatum::one_dimensional(LaurentAdditive::monomial(&f4, 1, a));
        assert!(matches!(canonical_quadratic(&bad), Err(CharSumError::NotSymmetric { .. })));
    }

    #[test]
    fn hwex_cross_trace_regression() {
        // Tr_{F_{q²}/F_p}(x y^q) = Tr(x^q y) for q = 2 and q = 4.
        for m in [1u32, 2] {
            let fq = ff(2, m);
            let t = Tower::new(&fq, 2).unwrap();
            let top = t.top();
            let q = fq.q() as i64;
            for x in top.elements() {
                for y in top.elements() {
                    let lhs = top.trace(top.mul(x, top.pow(y, q)));
                    let rhs = top.trace(top.mul(top.pow(x, q), y));
                    assert_eq!(lhs, rhs);
                    assert_eq!(t.relative_trace(top.mul(x, top.pow(y, q))), t.relative_trace(top.mul(top.pow(x, q), y)));
                }
            }
        }
    }
}
