use crate::limits;
use crate::quadform::FiniteAbelianGroup;

use super::pairing::{darboux, AlternatingPairing, Darboux};
use super::HeisError;

/// `1 → A → H → K → 1` with `(a, x)(b, y) = (a + b + c(x, y), x + y)`.
#[derive(Clone, Debug)]
pub struct HeisenbergGroup {
    pairing: AlternatingPairing,
    darboux: Darboux,
    a_order: u64,
    k_order: usize,
    /// `c(x, y) = e(x_{L'}, y_L)`.
    cocycle: Vec<u32>,
}

/// An element `(a, x)`.
pub type HElement = (u64, usize);

impl HeisenbergGroup {
    pub fn pairing(&self) -> &AlternatingPairing {
        &self.pairing
    }

    pub fn darboux(&self) -> &Darboux {
        &self.darboux
    }

    pub fn k(&self) -> &FiniteAbelianGroup {
        self.pairing.group()
    }

    pub fn a_order(&self) -> u64 {
        self.a_order
    }

    pub fn order(&self) -> u64 {
        self.a_order * self.k_order as u64
    }

    pub fn cocycle(&self, x: usize, y: usize) -> u64 {
        self.cocycle[x * self.k_order + y] as u64
    }

    pub fn identity(&self) -> HElement {
        (0, 0)
    }

    /// Elements ordered by `x` first, then `a`.
    pub fn element(&self, idx: u64) -> HElement {
        (idx % self.a_order, (idx / self.a_order) as usize)
    }

    pub fn index(&self, h: HElement) -> u64 {
        h.1 as u64 * self.a_order + h.0
    }

    pub fn elements(&self) -> impl Iterator<Item = HElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn mul(&self, g: HElement, h: HElement) -> HElement {
        ((g.0 + h.0 + self.cocycle(g.1, h.1)) % self.a_order, self.k().add(g.1, h.1))
    }

    pub fn inv(&self, g: HElement) -> HElement {
        let nx = self.k().neg(g.1);
        // (a, x)(b, −x) = (a + b + c(x, −x), 0).
        let b = (2 * self.a_order - g.0 - self.cocycle(g.1, nx)) % self.a_order;
        (b, nx)
    }

    pub fn commutator(&self, g: HElement, h: HElement) -> HElement {
        self.mul(self.mul(g, h), self.inv(self.mul(h, g)))
    }

    pub fn pow(&self, g: HElement, n: u64) -> HElement {
        (0..n).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: HElement) -> u64 {
        let mut acc = g;
        let mut n = 1;
        while acc != self.identity() {
            acc = self.mul(acc, g);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        self.elements().map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    /// `(1, 0)` and the `(0, g_i)` for the generators of `K`.
    pub fn generators(&self) -> Vec<HElement> {
        let mut gens = vec![(1 % self.a_order, 0)];
        gens.extend(self.k().generators().into_iter().map(|g| (0, g)));
        gens
    }

    pub fn center(&self) -> Vec<HElement> {
        let gens = self.generators();
        self.elements().filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() as u64 == self.order()
    }

    /// Group axioms, `Z(H) = A`, `[(0,x),(0,y)] = (e(x,y), 0)` and `|H| = |A||K|`.
    pub fn verify(&self) -> Result<HeisenbergCertificate, HeisError> {
        let n = self.order();
        limits::check_points((n as u128) * (n as u128))?;
        let gens = self.generators();
        // Associativity on (g, h, generator) propagates to all triples.
        for g in self.elements() {
            if self.mul(g, self.identity()) != g || self.mul(self.identity(), g) != g {
                return Err(HeisError::AxiomViolated(format!("identity fails at {g:?}")));
            }
            if self.mul(g, self.inv(g)) != self.identity() {
                return Err(HeisError::AxiomViolated(format!("inverse fails at {g:?}")));
            }
            for h in self.elements() {
                let gh = self.mul(g, h);
                for &k in &gens {
                    if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                        return Err(HeisError::AxiomViolated(format!("associativity fails at {g:?}, {h:?}")));
                    }
                }
            }
        }
        let center = self.center();
        let center_is_a = center.len() as u64 == self.a_order && center.iter().all(|z| z.1 == 0);
        if !center_is_a {
            return Err(HeisError::AxiomViolated(format!("|Z(H)| = {}, |A| = {}", center.len(), self.a_order)));
        }
        for x in 0..self.k_order {
            for y in 0..self.k_order {
                let c = self.commutator((0, x), (0, y));
                if c != (self.pairing.value(x, y), 0) {
                    return Err(HeisError::AxiomViolated(format!("commutator at ({x}, {y}) is {c:?}")));
                }
            }
        }
        Ok(HeisenbergCertificate {
            order: n,
            center_order: center.len() as u64,
            quotient_order: n / center.len() as u64,
            darboux_profile: self.darboux.profile(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergCertificate {
    pub order: u64,
    pub center_order: u64,
    pub quotient_order: u64,
    pub darboux_profile: Vec<u64>,
}

/// The Heisenberg group of `e`, verified exhaustively.
pub fn build_group(e: &AlternatingPairing) -> Result<HeisenbergGroup, HeisError> {
    let d = darboux(e)?;
    let k = e.group();
    let n = k.order() as usize;
    let mut cocycle = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            cocycle.push(e.value(d.split(x).1, d.split(y).0) as u32);
        }
    }
    let h = HeisenbergGroup { pairing: e.clone(), darboux: d, a_order: e.order(), k_order: n, cocycle };
    h.verify()?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_eight_is_dihedral() {
        let h = build_group(&AlternatingPairing::standard(2).unwrap()).unwrap();
        assert_eq!(h.order(), 8);
        let orders: Vec<u64> = h.elements().map(|g| h.element_order(g)).collect();
        // D_4: one identity, five involutions, two elements of order 4.
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 5);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
    }

    #[test]
    fn order_27_has_exponent_3() {
        let h = build_group(&AlternatingPairing::standard(3).unwrap()).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        assert_eq!(h.center().len(), 3);
    }

    #[test]
    fn trivial_k_gives_a() {
        let k = FiniteAbelianGroup::trivial();
        let e = AlternatingPairing::from_fn(&k, 5, |_, _| 0).unwrap();
        let h = build_group(&e).unwrap();
        assert_eq!(h.order(), 5);
        assert!(h.is_abelian());
    }
}
