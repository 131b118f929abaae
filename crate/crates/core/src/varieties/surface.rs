use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::exactalg::CyclotomicNumber;
use crate::fields::{AdditivePolynomial, FieldElement, FiniteField, Tower, WittRing, WittVector2};
use crate::limits;

use super::witt_endo::{w2_endomorphism, W2Endomorphism};
use super::{check_axis, VarietyError, SURFACE_AXIS_CAP};

pub const FREE_VARIABLE_NOTE: &str =
    "w does not occur in either equation; each (x, y, z) solution contributes q^n points";

/// The surface attached to `f = Σ f_i X^{p^i}` and an additive `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    endo: W2Endomorphism,
}

impl SurfaceSpec {
    pub fn new(field: &FiniteField, f_coeffs: &[FieldElement], r: &AdditivePolynomial) -> Result<Self, VarietyError> {
        if f_coeffs.iter().all(|a| a.is_zero()) {
            return Err(VarietyError::InvalidSpec("all f_i vanish: h has a positive-dimensional kernel".into()));
        }
        if f_coeffs.iter().any(|&a| !field.contains(a)) || r.field() != field {
            return Err(VarietyError::InvalidSpec("coefficients outside the base field".into()));
        }
        Ok(SurfaceSpec { endo: w2_endomorphism(field, f_coeffs, r) })
    }

    pub fn field(&self) -> &FiniteField {
        self.endo.field()
    }

    pub fn endomorphism(&self) -> &W2Endomorphism {
        &self.endo
    }
}

/// The two defining equations in `k[x, y, z, w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceEquations {
    pub p: u32,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    pub f: String,
    pub g1: String,
    pub g2: String,
    /// Declared variables that occur in no equation.
    pub absent: Vec<String>,
}

pub fn build_surface(spec: &SurfaceSpec) -> SurfaceEquations {
    let field = spec.field();
    let p = field.p();
    let e = &spec.endo;
    let equations = if p == 2 {
        vec!["x^2 - x - z f(z)".to_string(), "y^2 - y - x^2 + x^3 - x^2 g1(x) - x^2 g2(y) - f(x)^2 y".to_string()]
    } else {
        vec![
            format!("x^{p} - x - z f(z)"),
            format!("y^{p} - y + γ(x^{p}, -x) - x^{p} g1(x) - x^{p} g2(y) - f(x)^{p} y"),
        ]
    };
    let f_terms: Vec<String> = e.f_coeffs().iter().enumerate().map(|(i, _)| format!("f_{i} X^{{p^{i}}}")).collect();
    SurfaceEquations {
        p,
        variables: ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect(),
        equations,
        f: render(e.f()),
        g1: format!("γ({}) + {}", f_terms.join(", "), render(e.r())),
        g2: render(e.g2()),
        absent: vec!["w".to_string()],
    }
}

fn render(a: &AdditivePolynomial) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let f = a.field();
    a.terms()
        .map(|(i, c)| {
            let c = f.coeffs(c).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
            format!("[{c}] X^{}", (f.p() as u64).pow(i))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl SurfaceSpec {
    fn eq1(&self, k: &FiniteField, f: &AdditivePolynomial, x: FieldElement, z: FieldElement) -> FieldElement {
        let p = k.p() as i64;
        k.sub(k.sub(k.pow(x, p), x), k.mul(z, f.eval(z)))
    }

    fn eq2(&self, ring: &WittRing, e: &W2Endomorphism, x: FieldElement, y: FieldElement) -> FieldElement {
        let k = ring.field();
        let p = k.p() as i64;
        let xp = k.pow(x, p);
        let mut acc = k.sub(k.pow(y, p), y);
        if p == 2 {
            acc = k.sub(acc, xp);
            acc = k.add(acc, k.pow(x, 3));
        } else {
            acc = k.add(acc, ring.gamma(xp, k.neg(x)));
        }
        acc = k.sub(acc, k.mul(xp, e.g1(ring, x)));
        acc = k.sub(acc, k.mul(xp, e.g2().eval(y)));
        k.sub(acc, k.mul(k.pow(e.f().eval(x), p), y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCount {
    pub n: u32,
    /// Solutions `(x, y, z)` of the two displayed equations.
    pub xyz_points: u64,
    /// `q^n`, the contribution of the free variable `w`.
    pub free_factor: u64,
    pub total: u128,
    pub convention: &'static str,
}

/// Counts the scheme exactly as displayed: `(x, z)` from the first equation, then `y` from the second.
pub fn surface_counts(spec: &SurfaceSpec, n: u32) -> Result<SurfaceCount, VarietyError> {
    let tower = Tower::new(spec.field(), n)?;
    let top = tower.top();
    let qn = top.q() as u64;
    check_axis(qn, SURFACE_AXIS_CAP)?;
    limits::check_points(qn as u128 * qn as u128)?;
    let e = spec.endo.embed(&tower);
    let ring = WittRing::new(top);
    let mut zf = vec![0u64; qn as usize];
    for z in top.elements() {
        zf[top.mul(z, e.f().eval(z)).index() as usize] += 1;
    }
    let zero_z = FieldElement::ZERO;
    let xyz_points = (0..qn as u32)
        .into_par_iter()
        .map(|i| {
            let x = FieldElement::from_index(i);
            // eq1(x, z) = 0 ⇔ z f(z) = x^p − x.
            let target = spec.eq1(top, e.f(), x, zero_z);
            let cz = zf[target.index() as usize];
            if cz == 0 {
                return 0;
            }
            let cy = top.elements().filter(|&y| spec.eq2(&ring, &e, x, y).is_zero()).count() as u64;
            cz * cy
        })
        .sum::<u64>();
    Ok(SurfaceCount { n, xyz_points, free_factor: qn, total: xyz_points as u128 * qn as u128, convention: FREE_VARIABLE_NOTE })
}

/// One summand `τ_c = Σ_{u ∈ W_2(F)} ζ_{p²}^{c·Tr(u·h(u))}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandCertificate {
    pub c: u32,
    pub tau: CyclotomicNumber,
    pub radical_size: u64,
    /// `|τ_c|² ∈ {0, |R_c|·|W_2(F)|}`.
    pub abs_square_ok: bool,
    /// Order of `τ_c² / (|R_c|·|W_2(F)|)` when `τ_c ≠ 0`.
    pub root_order: Option<u64>,
}

impl SummandCertificate {
    pub fn ok(&self) -> bool {
        self.abs_square_ok && (self.tau.is_zero() || self.root_order.is_some())
    }
}

/// `#{(u, v) ∈ W_2(F)² : F(v) − v = u·h(u)}`, split over the characters of `W_2(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberProductCount {
    pub n: u32,
    pub total: u64,
    pub group_order: u64,
    pub summands: Vec<SummandCertificate>,
    /// `u ↦ Tr(u·h(u))` has biadditive polar part on generators.
    pub quadratic: bool,
    pub sum_matches: bool,
    /// `|N − |W_2(F)|| ≤ Σ_{c ≠ 0} p^{⌈log_p(|R_c|·|W_2(F)|)/2⌉}`.
    pub envelope_ok: bool,
}

impl FiberProductCount {
    pub fn holds(&self) -> bool {
        self.quadratic && self.sum_matches && self.envelope_ok && self.summands.iter().all(|s| s.ok())
    }
}

pub fn fiber_product_counts(spec: &SurfaceSpec, n: u32) -> Result<FiberProductCount, VarietyError> {
    let tower = Tower::new(spec.field(), n)?;
    let top = tower.top();
    let qn = top.q() as u64;
    check_axis(qn, SURFACE_AXIS_CAP)?;
    let size = qn * qn;
    limits::check_points(size as u128)?;
    let e = spec.endo.embed(&tower);
    let ring = WittRing::new(top);
    let p = top.p();
    let p2 = p * p;
    let idx = |u: WittVector2| u.x0.index() as usize * qn as usize + u.x1.index() as usize;
    let decode = |i: usize| {
        WittVector2::new(FieldElement::from_index((i / qn as usize) as u32), FieldElement::from_index((i % qn as usize) as u32))
    };
    let mut lang = vec![0u64; size as usize];
    for v in ring.elements() {
        lang[idx(ring.sub(ring.frobenius(v), v))] += 1;
    }
    let images: Vec<WittVector2> = (0..size as usize).into_par_iter().map(|i| {
        let u = decode(i);
        ring.mul(u, e.apply(&ring, u))
    }).collect();
    let total: u64 = images.iter().map(|&t| lang[idx(t)]).sum();
    let traces: Vec<u32> = images.par_iter().map(|&t| ring.witt_trace(t)).collect();
    let mut hist = vec![0i64; p2 as usize];
    for &t in &traces {
        hist[t as usize] += 1;
    }

    let gens: Vec<usize> =
        (0..top.m()).map(|t| idx(WittVector2::new(FieldElement::from_index(p.pow(t)), FieldElement::ZERO))).collect();
    let polar = |u: usize, g: usize| -> u32 {
        let s = idx(ring.add(decode(u), decode(g)));
        (traces[s] + 2 * p2 - traces[u] - traces[g]) % p2
    };
    let quadratic = (0..size as usize).into_par_iter().all(|u| {
        gens.iter().all(|&gs| {
            let ug = idx(ring.add(decode(u), decode(gs)));
            gens.iter().all(|&gt| polar(ug, gt) == (polar(u, gt) + polar(gs, gt)) % p2)
        })
    });
    let polar_table: Vec<Vec<u32>> = (0..size as usize).into_par_iter().map(|u| gens.iter().map(|&g| polar(u, g)).collect()).collect();

    let order = BigInt::from(size);
    let mut summands = Vec::with_capacity(p2 as usize);
    let mut sum = CyclotomicNumber::zero(p2);
    let mut envelope = BigInt::from(0);
    for c in 0..p2 {
        let mut counts = vec![0i64; p2 as usize];
        for (t, &k) in hist.iter().enumerate() {
            counts[(c as usize * t) % p2 as usize] += k;
        }
        let tau = CyclotomicNumber::from_exponent_counts(p2, &counts);
        let radical_size = polar_table.iter().filter(|row| row.iter().all(|&b| (b * c) % p2 == 0)).count() as u64;
        let scale = BigInt::from(radical_size) * &order;
        let abs = tau.abs_square();
        let abs_square_ok = abs.is_zero() || abs == CyclotomicNumber::from_int(p2, scale.clone());
        let root_order = if tau.is_zero() {
            None
        } else {
            tau.pow(2).scale(&BigRational::new(BigInt::from(1), scale.clone())).is_root_of_unity()
        };
        if c != 0 && !tau.is_zero() {
            envelope += BigInt::from(p).pow(log_p(&scale, p).div_ceil(2));
        }
        sum = sum.checked_add(&tau)?;
        summands.push(SummandCertificate { c, tau, radical_size, abs_square_ok, root_order });
    }
    let sum_matches = sum == CyclotomicNumber::from_int(p2, total) && total as i64 == p2 as i64 * hist[0];
    let envelope_ok = (BigInt::from(total) - &order).magnitude() <= envelope.magnitude();
    Ok(FiberProductCount { n, total, group_order: size, summands, quadratic, sum_matches, envelope_ok })
}

/// `k` with `x = p^k`.
fn log_p(x: &BigInt, p: u32) -> u32 {
    let mut x = x.clone();
    let mut k = 0;
    while x > BigInt::from(1) {
        x /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ff(p: u32, m: u32) -> FiniteField {
        FiniteField::new(p, m, None).unwrap()
    }

    fn brute_displayed(spec: &SurfaceSpec, n: u32) -> u64 {
        let t = Tower::new(spec.field(), n).unwrap();
        let top = t.top();
        let e = spec.endo.embed(&t);
        let ring = WittRing::new(top);
        let mut c = 0;
        for x in top.elements() {
            for y in top.elements() {
                for z in top.elements() {
                    if spec.eq1(top, e.f(), x, z).is_zero() && spec.eq2(&ring, &e, x, y).is_zero() {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn displayed_counts_match_brute_force() {
        let f2 = ff(2, 1);
        let s2 = SurfaceSpec::new(&f2, &[f2.one()], &AdditivePolynomial::zero(&f2)).unwrap();
        for n in 1..=3 {
            let c = surface_counts(&s2, n).unwrap();
            assert_eq!(c.xyz_points, brute_displayed(&s2, n));
            assert_eq!(c.total, c.xyz_points as u128 * (1u128 << n));
        }
        let f3 = ff(3, 1);
        let s3 = SurfaceSpec::new(&f3, &[f3.one(), f3.one()], &AdditivePolynomial::identity(&f3)).unwrap();
        for n in 1..=2 {
            assert_eq!(surface_counts(&s3, n).unwrap().xyz_points, brute_displayed(&s3, n));
        }
    }

    #[test]
    fn regression_values() {
        let f2 = ff(2, 1);
        let s2 = SurfaceSpec::new(&f2, &[f2.one()], &AdditivePolynomial::zero(&f2)).unwrap();
        let c = surface_counts(&s2, 1).unwrap();
        assert_eq!((c.xyz_points, c.total), (4, 8));
        let f3 = ff(3, 1);
        let s3 = SurfaceSpec::new(&f3, &[f3.one(), f3.one()], &AdditivePolynomial::identity(&f3)).unwrap();
        assert_eq!(surface_counts(&s3, 1).unwrap().total, 15);
        assert_eq!(fiber_product_counts(&s2, 1).unwrap().total, 8);
        assert_eq!(fiber_product_counts(&s3, 1).unwrap().total, 27);
    }

    #[test]
    fn fiber_product_summands_certify() {
        let f2 = ff(2, 1);
        let s2 = SurfaceSpec::new(&f2, &[f2.one()], &AdditivePolynomial::zero(&f2)).unwrap();
        let f3 = ff(3, 1);
        let s3 = SurfaceSpec::new(&f3, &[f3.one(), f3.one()], &AdditivePolynomial::identity(&f3)).unwrap();
        for (s, n_max) in [(&s2, 3), (&s3, 2)] {
            for n in 1..=n_max {
                let fp = fiber_product_counts(s, n).unwrap();
                assert!(fp.holds(), "{fp:?}");
                assert_eq!(fp.summands[0].tau, CyclotomicNumber::from_int(fp.summands[0].tau.order(), fp.group_order));
            }
        }
    }

    #[test]
    fn zero_f_is_rejected() {
        let f2 = ff(2, 1);
        assert!(SurfaceSpec::new(&f2, &[f2.zero(), f2.zero()], &AdditivePolynomial::zero(&f2)).is_err());
    }

    #[test]
    fn equations_follow_parity() {
        let f3 = ff(3, 1);
        let s3 = SurfaceSpec::new(&f3, &[f3.one()], &AdditivePolynomial::zero(&f3)).unwrap();
        let eqs = build_surface(&s3);
        assert!(eqs.equations[1].contains("γ(x^3, -x)"));
        assert_eq!(eqs.absent, vec!["w"]);
        let f2 = ff(2, 1);
        let s2 = SurfaceSpec::new(&f2, &[f2.one()], &AdditivePolynomial::zero(&f2)).unwrap();
        assert!(build_surface(&s2).equations[1].starts_with("y^2 - y - x^2 + x^3"));
    }
}
