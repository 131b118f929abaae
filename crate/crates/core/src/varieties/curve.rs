use num_bigint::BigInt;
use rayon::prelude::*;

use crate::charsum::{char_sum, gos_rank, GosRank, QuadDatum, Term};
use crate::exactalg::{
    char_poly_power_sums, power_sums_to_char_poly, CyclotomicNumber, IntPolynomial, WeilCertificate,
    DEFAULT_WEIL_BOUND,
};
use crate::fields::{AdditivePolynomial, FieldElement, FieldPoly, FiniteField, Tower};
use crate::limits;

use super::{check_axis, VarietyError, CURVE_AXIS_CAP};

/// The affine curve `f(y) = g1(x) g2(x) + a x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    field: FiniteField,
    f: AdditivePolynomial,
    g1: AdditivePolynomial,
    g2: AdditivePolynomial,
    a: FieldElement,
}

impl CurveSpec {
    pub fn new(
        f: AdditivePolynomial,
        g1: AdditivePolynomial,
        g2: AdditivePolynomial,
        a: FieldElement,
    ) -> Result<Self, VarietyError> {
        let field = f.field().clone();
        if g1.field() != &field || g2.field() != &field || !field.contains(a) {
            return Err(VarietyError::InvalidSpec("all data must live over one field".into()));
        }
        if f.coeff(0).is_zero() {
            return Err(VarietyError::InvalidSpec("the linear coefficient of f must be nonzero".into()));
        }
        if g1.is_zero() || g2.is_zero() {
            return Err(VarietyError::InvalidSpec("g1 and g2 must be nonzero".into()));
        }
        Ok(CurveSpec { field, f, g1, g2, a })
    }

    /// The van der Geer–van der Vlugt curve `f(y) = x g(x)`.
    pub fn vdgv(f: AdditivePolynomial, g: AdditivePolynomial) -> Result<Self, VarietyError> {
        let x = AdditivePolynomial::identity(f.field());
        let zero = f.field().zero();
        CurveSpec::new(f, x, g, zero)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn f(&self) -> &AdditivePolynomial {
        &self.f
    }

    pub fn g1(&self) -> &AdditivePolynomial {
        &self.g1
    }

    pub fn g2(&self) -> &AdditivePolynomial {
        &self.g2
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    /// `h(x) = g1(x) g2(x) + a x`.
    pub fn rhs(&self) -> FieldPoly {
        let prod = FieldPoly::from_additive(&self.g1).mul(&FieldPoly::from_additive(&self.g2));
        prod.add(&FieldPoly::monomial(&self.field, 1, self.a))
    }
}

/// `#C(F_{q^n})`: a fibre table of `f` over `F_{q^n}`, then one lookup per `x`.
pub fn count_points(spec: &CurveSpec, n: u32) -> Result<u64, VarietyError> {
    let tower = Tower::new(&spec.field, n)?;
    let top = tower.top();
    check_axis(top.q() as u64, CURVE_AXIS_CAP)?;
    let f = spec.f.embed(&tower);
    let h = spec.rhs().embed(&tower);
    let mut fibre = vec![0u32; top.q() as usize];
    for y in top.elements() {
        fibre[f.eval(y).index() as usize] += 1;
    }
    let count = (0..top.q())
        .into_par_iter()
        .map(|i| fibre[h.eval(FieldElement::from_index(i)).index() as usize] as u64)
        .sum();
    Ok(count)
}

/// `N_n = Σ_{c ∈ ker f*(F_{q^n})} Σ_x ψ(Tr(c h(x)))`.
#[derive(Clone, Debug)]
pub struct CharacterCount {
    pub total: BigInt,
    /// `(c, S_n(c))`, with `c = 0` first.
    pub summands: Vec<(FieldElement, CyclotomicNumber)>,
}

pub fn count_points_by_characters(spec: &CurveSpec, n: u32) -> Result<CharacterCount, VarietyError> {
    let tower = Tower::new(&spec.field, n)?;
    let top = tower.top().clone();
    check_axis(top.q() as u64, CURVE_AXIS_CAP)?;
    let kernel = spec.f.to_laurent().adjoint().kernel_in(&tower)?;
    let g1 = spec.g1.embed(&tower);
    let g2 = spec.g2.embed(&tower);
    let a = tower.lift(spec.a);
    let p = top.p();
    let mut total = CyclotomicNumber::zero(p);
    let mut summands = Vec::with_capacity(kernel.len());
    for &c in &kernel {
        let datum = scalarized_datum(&top, &g1, &g2, a, c)?;
        let s = char_sum(&datum, 1)?;
        total = total.checked_add(&s)?;
        summands.push((c, s));
    }
    let total = total.as_integer().expect("a point count is an integer");
    Ok(CharacterCount { total, summands })
}

/// `c (g1 g2 + a x)` as a quadratic datum over `top`, each `x^{p^i + p^j}` brought to trace-normal form.
fn scalarized_datum(
    top: &FiniteField,
    g1: &AdditivePolynomial,
    g2: &AdditivePolynomial,
    a: FieldElement,
    c: FieldElement,
) -> Result<QuadDatum, VarietyError> {
    let mut datum = QuadDatum::new(top, 1)?;
    let p = top.p();
    for (i, alpha) in g1.terms() {
        for (j, beta) in g2.terms() {
            let (lo, hi) = (i.min(j), i.max(j));
            let coeff = top.frobenius(top.mul(c, top.mul(alpha, beta)), -(lo as i64));
            let term = if hi > lo {
                Term::Diag { j: 0, i: hi - lo, a: coeff }
            } else if p == 2 {
                Term::AsLinear { j: 0, c: top.pth_root(coeff) }
            } else {
                Term::HalfSquare { j: 0, a: top.add(coeff, coeff) }
            };
            datum.push(term)?;
        }
    }
    datum.push(Term::AsLinear { j: 0, c: top.mul(c, a) })?;
    Ok(datum)
}

/// Predicted `dim H¹_c` and the per-character ranks.
#[derive(Clone, Debug)]
pub struct BettiPrediction {
    pub b: u64,
    /// Least `m` with `ker f*` rational over `F_{q^m}`.
    pub splitting_degree: u32,
    /// `(c, rank)` for the nonzero `c ∈ ker f*`, as elements of `F_{q^m}`.
    pub ranks: Vec<(FieldElement, u64)>,
}

pub fn betti_prediction(spec: &CurveSpec) -> Result<BettiPrediction, VarietyError> {
    let p = spec.field.p() as u64;
    let top_exp = spec.f.top_exponent().expect("f is nonzero");
    let want = limits::pow_sat(p, top_exp);
    let adjoint = spec.f.to_laurent().adjoint();
    let mut m = 1u32;
    let (tower, kernel) = loop {
        let tower = Tower::new(&spec.field, m)?;
        limits::check_points(tower.top().q() as u128)?;
        let kernel = adjoint.kernel_in(&tower)?;
        if kernel.len() as u128 == want {
            break (tower, kernel);
        }
        m += 1;
    };
    let h = spec.rhs().embed(&tower);
    let mut ranks = Vec::new();
    for c in kernel.into_iter().filter(|c| !c.is_zero()) {
        match gos_rank(&h.scale(c))? {
            GosRank::Trivial => return Err(VarietyError::NotConnected { c: c.index().to_string() }),
            r => ranks.push((c, r.rank())),
        }
    }
    let b = ranks.iter().map(|r| r.1).sum();
    Ok(BettiPrediction { b, splitting_degree: m, ranks })
}

/// Counts, power sums and the Frobenius polynomial on `H¹_c`.
#[derive(Clone, Debug)]
pub struct ZetaData {
    pub q: u64,
    /// The cohomological degree the certificate is for.
    pub degree: u32,
    pub counts: Vec<u64>,
    /// `s_n = q^n − N_n`.
    pub power_sums: Vec<BigInt>,
    pub l_poly: IntPolynomial,
    pub certificate: Option<WeilCertificate>,
}

pub fn zeta_pipeline(spec: &CurveSpec, b: u64) -> Result<ZetaData, VarietyError> {
    let q = spec.field.q() as u64;
    let counts = (1..=b as u32).map(|n| count_points(spec, n)).collect::<Result<Vec<_>, _>>()?;
    let power_sums: Vec<BigInt> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| BigInt::from(q).pow(i as u32 + 1) - BigInt::from(c))
        .collect();
    let l_poly = power_sums_to_char_poly(&power_sums)?;
    let certificate = crate::exactalg::weil_certificate(&l_poly, &BigInt::from(q), 1, DEFAULT_WEIL_BOUND);
    Ok(ZetaData { q, degree: 1, counts, power_sums, l_poly, certificate })
}

/// `s_{B+1}, s_{B+2}` from fresh counts against the roots of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiClosure {
    pub observed: Vec<BigInt>,
    pub predicted: Vec<BigInt>,
    pub holds: bool,
}

pub fn betti_closure(spec: &CurveSpec, zeta: &ZetaData, extra: u32) -> Result<BettiClosure, VarietyError> {
    let b = zeta.counts.len();
    let q = BigInt::from(zeta.q);
    let mut observed = Vec::with_capacity(extra as usize);
    for n in b as u32 + 1..=b as u32 + extra {
        observed.push(q.pow(n) - BigInt::from(count_points(spec, n)?));
    }
    let predicted = char_poly_power_sums(&zeta.l_poly, b + extra as usize).split_off(b);
    let holds = observed == predicted;
    Ok(BettiClosure { observed, predicted, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ff(p: u32, m: u32) -> FiniteField {
        FiniteField::new(p, m, None).unwrap()
    }

    /// `y^p − y = x · g(x)`.
    fn as_curve(field: &FiniteField, g: AdditivePolynomial) -> CurveSpec {
        CurveSpec::vdgv(AdditivePolynomial::lang(field, 1), g).unwrap()
    }

    fn brute(spec: &CurveSpec, n: u32) -> u64 {
        let t = Tower::new(spec.field(), n).unwrap();
        let top = t.top();
        let f = spec.f().embed(&t);
        let h = spec.rhs().embed(&t);
        let mut c = 0;
        for x in top.elements() {
            for y in top.elements() {
                if f.eval(y) == h.eval(x) {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn vdgv_over_f2() {
        let f2 = ff(2, 1);
        let spec = as_curve(&f2, AdditivePolynomial::frobenius_power(&f2, 1));
        assert_eq!(count_points(&spec, 1).unwrap(), 2);
        assert_eq!(count_points(&spec, 2).unwrap(), 8);
        let b = betti_prediction(&spec).unwrap();
        assert_eq!(b.b, 2);
        let z = zeta_pipeline(&spec, b.b).unwrap();
        assert_eq!(z.power_sums, vec![BigInt::from(0), BigInt::from(-4)]);
        assert_eq!(z.l_poly, IntPolynomial::from_i64(&[2, 0, 1]));
        assert_eq!(z.certificate.as_ref().unwrap().m, 2);
        assert!(betti_closure(&spec, &z, 2).unwrap().holds);
    }

    #[test]
    fn square_over_f3() {
        let f3 = ff(3, 1);
        let spec = as_curve(&f3, AdditivePolynomial::identity(&f3));
        let b = betti_prediction(&spec).unwrap();
        assert_eq!(b.b, 2);
        let z = zeta_pipeline(&spec, 2).unwrap();
        assert_eq!(z.counts, vec![brute(&spec, 1), brute(&spec, 2)]);
        assert!(z.certificate.is_some());
        assert!(betti_closure(&spec, &z, 2).unwrap().holds);
    }

    #[test]
    fn square_over_fp_has_b_p_minus_one() {
        for p in [3u32, 5, 7] {
            let fp = ff(p, 1);
            let spec = as_curve(&fp, AdditivePolynomial::identity(&fp));
            assert_eq!(betti_prediction(&spec).unwrap().b, p as u64 - 1);
        }
    }

    #[test]
    fn characters_reassemble_the_count() {
        let f4 = ff(2, 2);
        let w = f4.primitive_element();
        let f = AdditivePolynomial::new(&f4, [(0, w), (1, f4.one())]);
        let g1 = AdditivePolynomial::new(&f4, [(0, f4.one()), (1, w)]);
        let g2 = AdditivePolynomial::frobenius_power(&f4, 1);
        let spec = CurveSpec::new(f, g1, g2, w).unwrap();
        for n in 1..=2 {
            let direct = count_points(&spec, n).unwrap();
            assert_eq!(direct, brute(&spec, n));
            let chars = count_points_by_characters(&spec, n).unwrap();
            assert_eq!(chars.total, BigInt::from(direct));
        }
        let b = betti_prediction(&spec).unwrap();
        let z = zeta_pipeline(&spec, b.b).unwrap();
        assert!(z.certificate.is_some(), "P = {}", z.l_poly);
        assert!(betti_closure(&spec, &z, 2).unwrap().holds);
    }

    #[test]
    fn invalid_specs() {
        let f2 = ff(2, 1);
        let x = AdditivePolynomial::identity(&f2);
        let zero = AdditivePolynomial::zero(&f2);
        assert!(CurveSpec::new(AdditivePolynomial::lang(&f2, 1), zero.clone(), x.clone(), f2.zero()).is_err());
        assert!(CurveSpec::new(AdditivePolynomial::frobenius_power(&f2, 1), x.clone(), x, f2.zero()).is_err());
    }

    #[test]
    fn b_zero_gives_trivial_polynomial() {
        // y² + y = x·x reduces to a linear character: no H¹.
        let f2 = ff(2, 1);
        let spec = as_curve(&f2, AdditivePolynomial::identity(&f2));
        assert_eq!(betti_prediction(&spec).unwrap().b, 0);
        let z = zeta_pipeline(&spec, 0).unwrap();
        assert_eq!(z.l_poly, IntPolynomial::one());
        assert_eq!(z.certificate.unwrap().root_orders, Vec::<u64>::new());
        assert_eq!(count_points(&spec, 3).unwrap(), 8);
    }
}
