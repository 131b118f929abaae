use crate::charsum::{geometric_kernel, QuadDatum, Term};
use crate::fields::{FieldElement, FieldPoly, FiniteField, Tower};
use crate::limits;
use crate::quadform::FiniteAbelianGroup;

use super::group::{build_group, HeisenbergGroup};
use super::pairing::AlternatingPairing;
use super::HeisError;

/// Largest number of curve points swept by the deck-map check.
pub const MAX_DECK_POINTS: usize = 1 << 12;

/// The Heisenberg group of deck transformations of `z^p − z = h(u)` over `K = ker l_Q`.
#[derive(Clone, Debug)]
pub struct DatumHeisenberg {
    /// `h` with `t(x) = ψ_1(Tr h(x))`.
    pub h: FieldPoly,
    pub tower: Tower,
    /// Kernel points, indexed like the elementary group `(Z/p)^{2r}` of the pairing.
    pub kernel: Vec<FieldElement>,
    /// `g_k` as coefficients of `u^{p^j}`, for each kernel point.
    pub g: Vec<Vec<FieldElement>>,
    pub pairing: AlternatingPairing,
    pub group: HeisenbergGroup,
    pub deck: DeckCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckCheck {
    /// Degree over `F_q` of the field whose curve points were swept.
    pub field_degree: u32,
    pub points: usize,
    pub maps: usize,
    pub permutes: bool,
    pub commutators_match: bool,
}

impl DeckCheck {
    pub fn holds(&self) -> bool {
        self.permutes && self.commutators_match
    }
}

/// `h` with `t(x) = ψ(Tr h(x))`, scaled so that `ψ` becomes `ζ_p`.
pub fn datum_polynomial(datum: &QuadDatum) -> Result<FieldPoly, HeisError> {
    if datum.d() != 1 {
        return Err(HeisError::Unsupported("only one-dimensional data".into()));
    }
    let f = datum.field();
    let p = f.p() as u64;
    let k = f.from_int(datum.psi() as i64);
    let mut terms = Vec::new();
    for t in datum.terms() {
        match t {
            Term::Diag { i, a, .. } | Term::Cross { i, a, .. } => terms.push((p.pow(*i) + 1, f.mul(k, *a))),
            Term::HalfSquare { a, .. } => terms.push((2, f.mul(k, f.div(*a, f.from_int(2))?))),
            Term::AsLinear { c, .. } => terms.push((1, f.mul(k, *c))),
            Term::WittLinear { .. } => return Err(HeisError::Unsupported("Witt-valued data".into())),
            Term::Precompose { .. } => return Err(HeisError::Unsupported("precomposed data".into())),
        }
    }
    Ok(FieldPoly::new(f, terms))
}

/// `B(u, k) = h(u + k) − h(u) − h(k)` as `Σ β_i u^{p^i}`, with `h` lifted to `tower.top()`.
fn cross_coefficients(datum: &QuadDatum, tower: &Tower, k: FieldElement) -> Vec<FieldElement> {
    let f = tower.top();
    let psi = f.from_int(datum.psi() as i64);
    let mut beta: Vec<FieldElement> = Vec::new();
    let mut add = |i: usize, v: FieldElement| {
        if beta.len() <= i {
            beta.resize(i + 1, FieldElement::ZERO);
        }
        beta[i] = f.add(beta[i], f.mul(psi, v));
    };
    for t in datum.terms() {
        match t {
            Term::Diag { i, a, .. } | Term::Cross { i, a, .. } => {
                let a = tower.lift(*a);
                add(*i as usize, f.mul(a, k));
                add(0, f.mul(a, f.frobenius(k, *i as i64)));
            }
            Term::HalfSquare { a, .. } => add(0, f.mul(tower.lift(*a), k)),
            _ => {}
        }
    }
    beta
}

/// The unique additive `g` with `g^p − g = Σ β_i u^{p^i}`.
fn solve_artin_schreier(f: &FiniteField, beta: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let top = beta.iter().rposition(|b| !b.is_zero());
    let Some(top) = top else { return Some(Vec::new()) };
    if top == 0 {
        return None;
    }
    // Coefficient of u^{p^j}: γ_{j−1}^p − γ_j = β_j.
    let mut gamma = vec![FieldElement::ZERO; top];
    for j in (1..=top).rev() {
        let next = if j < top { gamma[j] } else { FieldElement::ZERO };
        gamma[j - 1] = f.pth_root(f.add(beta[j], next));
    }
    (f.neg(gamma[0]) == beta[0]).then_some(gamma)
}

fn eval_additive(f: &FiniteField, g: &[FieldElement], u: FieldElement) -> FieldElement {
    g.iter().enumerate().fold(FieldElement::ZERO, |acc, (j, c)| f.add(acc, f.mul(*c, f.frobenius(u, j as i64))))
}

pub fn heisenberg_from_datum(datum: &QuadDatum) -> Result<DatumHeisenberg, HeisError> {
    let h = datum_polynomial(datum)?;
    let ker = geometric_kernel(datum)?;
    let tower = ker.tower.clone();
    let big = tower.top().clone();
    let p = big.p() as u64;
    let basis: Vec<FieldElement> = ker.basis.iter().map(|v| v[0]).collect();
    let kgroup = FiniteAbelianGroup::elementary(p, basis.len())?;
    let kernel: Vec<FieldElement> = kgroup
        .elements()
        .map(|idx| {
            kgroup.element(idx).iter().zip(&basis).fold(FieldElement::ZERO, |acc, (&c, &b)| {
                big.add(acc, big.mul(big.from_int(c as i64), b))
            })
        })
        .collect();
    let g: Vec<Vec<FieldElement>> = kernel
        .iter()
        .map(|&k| {
            solve_artin_schreier(&big, &cross_coefficients(datum, &tower, k))
                .ok_or_else(|| HeisError::NoAdditiveSolution { k: format!("{}", k.index()) })
        })
        .collect::<Result<_, _>>()?;
    let n = kernel.len();
    let mut table = vec![0i64; n * n];
    for x in 0..n {
        for y in 0..n {
            let v = big.sub(eval_additive(&big, &g[x], kernel[y]), eval_additive(&big, &g[y], kernel[x]));
            if !big.is_prime_subfield(v) {
                return Err(HeisError::AxiomViolated(format!("e({x}, {y}) is not in F_p")));
            }
            table[x * n + y] = v.index() as i64;
        }
    }
    let pairing = AlternatingPairing::from_fn(&kgroup, p, |x, y| table[x * n + y])?;
    let group = build_group(&pairing)?;
    let deck = deck_check(&h, &tower, &kernel, &g, &pairing)?;
    Ok(DatumHeisenberg { h, tower, kernel, g, pairing, group, deck })
}

/// Deck maps `(u, z) ↦ (u + k, z + g_k(u) + c_k)` on `C(F) = {z^p − z = h(u)}`, with `c_k^p − c_k = h(k)`.
fn deck_check(
    h: &FieldPoly,
    tower: &Tower,
    kernel: &[FieldElement],
    g: &[Vec<FieldElement>],
    pairing: &AlternatingPairing,
) -> Result<DeckCheck, HeisError> {
    let base = tower.base();
    let mid = tower.top();
    let p = mid.p();
    let hk: Vec<FieldElement> = kernel.iter().map(|&k| h.embed(tower).eval(k)).collect();
    let t = if hk.iter().all(|&v| mid.trace(v) == 0) { 1 } else { p };
    limits::check_points(limits::pow_sat(mid.q() as u64, t))?;
    let up = Tower::new(mid, t)?;
    let f = up.top().clone();
    let full = Tower::between(base, &f)?;
    let hf = h.embed(&full);
    // One Artin–Schreier preimage per value.
    let mut preimage = vec![u32::MAX; f.q() as usize];
    for z in f.elements() {
        let w = f.sub(f.frobenius(z, 1), z);
        if preimage[w.index() as usize] == u32::MAX {
            preimage[w.index() as usize] = z.index();
        }
    }
    let solve = |w: FieldElement| {
        let z = preimage[w.index() as usize];
        (z != u32::MAX).then(|| FieldElement::from_index(z))
    };
    let kf: Vec<FieldElement> = kernel.iter().map(|&k| up.lift(k)).collect();
    let gf: Vec<Vec<FieldElement>> = g.iter().map(|gk| gk.iter().map(|&c| up.lift(c)).collect()).collect();
    let ck: Vec<FieldElement> =
        hk.iter().map(|&v| solve(up.lift(v)).expect("trace zero has a preimage")).collect();

    let mut points = Vec::new();
    let q = f.q() as usize;
    let stride = (q / MAX_DECK_POINTS).max(1);
    for ui in (0..q).step_by(stride) {
        let u = FieldElement::from_index(ui as u32);
        if let Some(z0) = solve(hf.eval(u)) {
            for j in 0..p {
                points.push((u, f.add(z0, f.from_int(j as i64))));
            }
        }
    }
    let on_curve = |(u, z): (FieldElement, FieldElement)| f.sub(f.frobenius(z, 1), z) == hf.eval(u);
    let sigma = |i: usize, (u, z): (FieldElement, FieldElement)| {
        (f.add(u, kf[i]), f.add(z, f.add(eval_additive(&f, &gf[i], u), ck[i])))
    };
    let permutes = (0..kf.len()).all(|i| points.iter().all(|&pt| on_curve(sigma(i, pt))));
    let mut commutators_match = true;
    'outer: for i in 0..kf.len() {
        for j in 0..kf.len() {
            let e = f.from_int(pairing.value(i, j) as i64);
            for &pt in &points {
                let (u1, z1) = sigma(i, sigma(j, pt));
                let (u2, z2) = sigma(j, sigma(i, pt));
                if u1 != u2 || f.sub(z1, z2) != e {
                    commutators_match = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(DeckCheck {
        field_degree: full.degree(),
        points: points.len(),
        maps: kf.len(),
        permutes,
        commutators_match,
    })
}
