use num_integer::Integer;
use rayon::prelude::*;

use crate::exactalg::CyclotomicNumber;
use crate::limits;

use super::group::{HElement, HeisenbergGroup};
use super::HeisError;

/// A monomial matrix: column `i` is `ζ_N^{scalar[i]} e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub scalar: Vec<u64>,
}

impl MonomialMatrix {
    pub fn identity(n: usize) -> Self {
        MonomialMatrix { perm: (0..n).collect(), scalar: vec![0; n] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self, order: u64) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut scalar = vec![0; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            scalar[i] = (other.scalar[i] + self.scalar[j]) % order;
        }
        MonomialMatrix { perm, scalar }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j) && self.scalar.iter().all(|&s| s == 0)
    }

    /// The trace, as exponent counts of the fixed columns.
    pub fn trace(&self, order: u64) -> CyclotomicNumber {
        let mut counts = vec![0i64; order as usize];
        for (i, &j) in self.perm.iter().enumerate() {
            if i == j {
                counts[self.scalar[i] as usize] += 1;
            }
        }
        CyclotomicNumber::from_exponent_counts(order as u32, &counts)
    }
}

/// `Ind_{A × S}^H ψ̃` with `ψ̃(a, s) = ψ(a)` for an isotropic `S` on which the cocycle vanishes.
#[derive(Clone, Debug)]
pub struct SvNRepresentation {
    group: HeisenbergGroup,
    psi: u64,
    reps: Vec<usize>,
    subgroup: Vec<usize>,
    /// `x ↦ (coset index, s)` with `x = reps[coset] + s`.
    coset_of: Vec<(usize, usize)>,
}

impl SvNRepresentation {
    pub fn group(&self) -> &HeisenbergGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// `ψ(1) = ζ_N^{psi}`.
    pub fn psi(&self) -> u64 {
        self.psi
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// `ρ(h) e_t = ψ(b) e_{t'}` where `h (0, t) = (0, t')(b, s)`.
    pub fn matrix(&self, h: HElement) -> MonomialMatrix {
        let g = &self.group;
        let n = g.a_order();
        let k = g.k();
        let mut perm = Vec::with_capacity(self.dim());
        let mut scalar = Vec::with_capacity(self.dim());
        for &t in &self.reps {
            let (a, x) = g.mul(h, (0, t));
            let (ci, s) = self.coset_of[x];
            let t2 = self.reps[ci];
            debug_assert_eq!(k.add(t2, s), x);
            let b = (a + n - g.cocycle(t2, s)) % n;
            perm.push(ci);
            scalar.push(b * self.psi % n);
        }
        MonomialMatrix { perm, scalar }
    }

    pub fn character(&self, h: HElement) -> CyclotomicNumber {
        self.matrix(h).trace(self.group.a_order())
    }

    /// `ρ(g)ρ(h) = ρ(gh)` for all pairs.
    pub fn is_homomorphism(&self) -> Result<bool, HeisError> {
        let g = &self.group;
        let n = g.order();
        limits::check_points((n as u128) * (n as u128))?;
        let mats: Vec<MonomialMatrix> = g.elements().map(|h| self.matrix(h)).collect();
        Ok((0..n).into_par_iter().all(|i| {
            (0..n).all(|j| {
                let prod = g.index(g.mul(g.element(i), g.element(j)));
                mats[i as usize].mul(&mats[j as usize], g.a_order()) == mats[prod as usize]
            })
        }))
    }

    /// `ρ(a, 0) = ψ(a) I`.
    pub fn central_character_ok(&self) -> bool {
        let g = &self.group;
        let n = g.a_order();
        (0..n).all(|a| {
            let m = self.matrix((a, 0));
            m.perm.iter().enumerate().all(|(i, &j)| i == j) && m.scalar.iter().all(|&s| s == a * self.psi % n)
        })
    }

    /// `Σ_h |χ(h)|²`, exactly.
    pub fn character_norm(&self) -> CyclotomicNumber {
        let g = &self.group;
        g.elements()
            .map(|h| self.character(h).abs_square())
            .fold(CyclotomicNumber::zero(g.a_order() as u32), |acc, z| acc.checked_add(&z).expect("same order"))
    }

    pub fn is_irreducible(&self) -> bool {
        self.character_norm() == CyclotomicNumber::from_int(1, self.group.order() as i64)
    }
}

/// The representation induced from `A ⊕ L'`.
pub fn stone_von_neumann(h: &HeisenbergGroup, psi: u64) -> Result<SvNRepresentation, HeisError> {
    induce_from(h, psi, h.darboux().l_prime.clone())
}

/// The representation induced from `A ⊕ L`, for comparison with [`stone_von_neumann`].
pub fn stone_von_neumann_from_l(h: &HeisenbergGroup, psi: u64) -> Result<SvNRepresentation, HeisError> {
    induce_from(h, psi, h.darboux().l.clone())
}

fn induce_from(h: &HeisenbergGroup, psi: u64, subgroup: Vec<usize>) -> Result<SvNRepresentation, HeisError> {
    let n = h.a_order();
    if psi.gcd(&n) != 1 {
        return Err(HeisError::NonInjectiveCharacter { psi, order: n });
    }
    if subgroup.iter().any(|&s| subgroup.iter().any(|&t| h.cocycle(s, t) != 0)) {
        return Err(HeisError::AxiomViolated("cocycle does not vanish on the inducing subgroup".into()));
    }
    let k = h.k();
    let total = k.order() as usize;
    let mut coset_of = vec![(usize::MAX, 0); total];
    let mut reps = Vec::new();
    for x in 0..total {
        if coset_of[x].0 != usize::MAX {
            continue;
        }
        let ci = reps.len();
        reps.push(x);
        for &s in &subgroup {
            coset_of[k.add(x, s)] = (ci, s);
        }
    }
    Ok(SvNRepresentation { group: h.clone(), psi: psi % n, reps, subgroup, coset_of })
}

/// `ρ(h) = I ⟹ h = 1`.
pub fn check_faithful(rep: &SvNRepresentation) -> bool {
    let g = rep.group();
    g.elements().filter(|&h| rep.matrix(h).is_identity()).all(|h| h == g.identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{build_group, AlternatingPairing};
    use crate::quadform::FiniteAbelianGroup;

    #[test]
    fn order_eight() {
        let h = build_group(&AlternatingPairing::standard(2).unwrap()).unwrap();
        let rep = stone_von_neumann(&h, 1).unwrap();
        assert_eq!(rep.dim(), 2);
        assert!(rep.is_homomorphism().unwrap());
        assert!(rep.central_character_ok());
        assert!(rep.is_irreducible());
        assert!(check_faithful(&rep));
        for g in h.elements() {
            let chi = rep.character(g);
            if g.1 == 0 {
                assert_eq!(chi, CyclotomicNumber::from_int(2, if g.0 == 0 { 2 } else { -2 }));
            } else {
                assert!(chi.is_zero());
            }
        }
    }

    #[test]
    fn order_27_and_alternative_model() {
        let h = build_group(&AlternatingPairing::standard(3).unwrap()).unwrap();
        for psi in [1, 2] {
            let rep = stone_von_neumann(&h, psi).unwrap();
            assert_eq!(rep.dim(), 3);
            assert_eq!(rep.character_norm(), CyclotomicNumber::from_int(1, 27));
            assert!(check_faithful(&rep));
            let alt = stone_von_neumann_from_l(&h, psi).unwrap();
            assert!(h.elements().all(|g| rep.character(g) == alt.character(g)));
        }
        assert!(matches!(stone_von_neumann(&h, 3), Err(HeisError::NonInjectiveCharacter { .. })));
    }

    #[test]
    fn abelian_case_is_psi() {
        let e = AlternatingPairing::from_fn(&FiniteAbelianGroup::trivial(), 4, |_, _| 0).unwrap();
        let h = build_group(&e).unwrap();
        let rep = stone_von_neumann(&h, 1).unwrap();
        assert_eq!(rep.dim(), 1);
        assert_eq!(rep.character((1, 0)), CyclotomicNumber::zeta(4, 1));
        assert!(check_faithful(&rep));
    }
}
