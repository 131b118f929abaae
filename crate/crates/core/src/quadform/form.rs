use num_integer::Integer;

use crate::exactalg::CyclotomicNumber;
use crate::limits;

use super::group::FiniteAbelianGroup;
use super::QuadError;

/// A function `M → μ_N` stored as its exponent table, `Q(x) = ζ_N^{t[x]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    group: FiniteAbelianGroup,
    order: u32,
    table: Vec<u32>,
}

/// `B(x, y) = ζ_N^{b[x·|M| + y]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearPairing {
    group: FiniteAbelianGroup,
    order: u32,
    table: Vec<u32>,
}

/// A character of `M`, `χ(e_i) = ζ_{d_i}^{c_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub exps: Vec<u64>,
}

fn check_order(n: u64) -> Result<u32, QuadError> {
    let cap = limits::order_cap();
    if n == 0 || n > cap {
        return Err(QuadError::Cap(limits::CapExceeded { requested: n as u128, cap }));
    }
    Ok(n as u32)
}

impl Character {
    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Character { exps: vec![0; group.rank()] }
    }

    /// `ζ_N` exponent of `χ(x)`; requires every `d_i | N`.
    pub fn exponent_at(&self, group: &FiniteAbelianGroup, x: usize, n: u32) -> u32 {
        let coords = group.element(x);
        let mut acc = 0u64;
        for ((&c, &e), &d) in coords.iter().zip(&self.exps).zip(group.factors()) {
            acc = (acc + c * (e % d) % d * (n as u64 / d)) % n as u64;
        }
        acc as u32
    }
}

impl QuadraticForm {
    /// The table is read modulo `order`.
    pub fn from_exponents(group: &FiniteAbelianGroup, order: u32, table: Vec<u32>) -> Result<Self, QuadError> {
        check_order(order as u64)?;
        if table.len() as u64 != group.order() {
            return Err(QuadError::BadDescriptor(format!("{} values for a group of order {}", table.len(), group.order())));
        }
        Ok(QuadraticForm { group: group.clone(), order, table: table.into_iter().map(|t| t % order).collect() })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, order: u32, f: impl Fn(&[u64]) -> i64) -> Result<Self, QuadError> {
        let table = group.elements().map(|x| f(&group.element(x)).rem_euclid(order as i64) as u32).collect();
        Self::from_exponents(group, order, table)
    }

    /// From exact values, all of which must be roots of unity. The working
    /// order is the lcm of `exponent(M)²` and the value orders.
    pub fn from_values(group: &FiniteAbelianGroup, values: &[CyclotomicNumber]) -> Result<Self, QuadError> {
        if values.len() as u64 != group.order() {
            return Err(QuadError::BadDescriptor(format!("{} values for a group of order {}", values.len(), group.order())));
        }
        let mut reduced = Vec::with_capacity(values.len());
        let e = group.exponent();
        let mut n = e * e;
        for (x, v) in values.iter().enumerate() {
            let (l, k) = v.root_of_unity_exponent().ok_or_else(|| QuadError::NotRootOfUnity { key: group.key(x) })?;
            let (l, k) = (l as u64, k as u64);
            let ord = l / l.gcd(&k);
            reduced.push((ord, k / (l / ord)));
            n = n.lcm(&ord);
        }
        let n = check_order(n)?;
        let table = reduced.iter().map(|&(ord, k)| (k * (n as u64 / ord)) as u32).collect();
        Self::from_exponents(group, n, table)
    }

    /// `Q ≡ 1`.
    pub fn trivial(group: &FiniteAbelianGroup) -> Result<Self, QuadError> {
        let e = group.exponent();
        Self::from_exponents(group, check_order(e * e)?, vec![0; group.order() as usize])
    }

    /// A character viewed as a form with trivial pairing.
    pub fn from_character(group: &FiniteAbelianGroup, chi: &Character) -> Result<Self, QuadError> {
        let e = group.exponent();
        let n = check_order(e * e)?;
        let table = group.elements().map(|x| chi.exponent_at(group, x, n)).collect();
        Self::from_exponents(group, n, table)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// The working order `N`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn exponent_at(&self, x: usize) -> u32 {
        self.table[x]
    }

    pub fn value(&self, x: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta(self.order, self.table[x] as i64)
    }

    /// The same form over a larger working order.
    pub fn with_order(&self, n: u32) -> Result<Self, QuadError> {
        if n % self.order != 0 {
            return Err(QuadError::BadDescriptor(format!("order {} does not divide {n}", self.order)));
        }
        let k = n / self.order;
        Self::from_exponents(&self.group, n, self.table.iter().map(|&t| t * k).collect())
    }

    /// `ζ_N` exponent of `B(x, y) = Q(x+y) Q(x)^{-1} Q(y)^{-1}`.
    #[inline]
    pub fn pairing_exponent(&self, x: usize, y: usize) -> u32 {
        let n = self.order as u64;
        let s = self.table[self.group.add(x, y)] as u64;
        ((s + 2 * n - self.table[x] as u64 - self.table[y] as u64) % n) as u32
    }

    pub fn derive_pairing(&self) -> Result<BilinearPairing, QuadError> {
        let m = self.group.order() as usize;
        limits::check_points((m as u128) * (m as u128))?;
        let mut table = vec![0u32; m * m];
        for x in 0..m {
            for y in 0..m {
                table[x * m + y] = self.pairing_exponent(x, y);
            }
        }
        Ok(BilinearPairing { group: self.group.clone(), order: self.order, table })
    }

    /// A triple `(x, x', y)` with `B(x+x', y) ≠ B(x, y) B(x', y)`, if any.
    ///
    /// Bilinearity against the generators `x'` is equivalent to full
    /// bilinearity, and symmetry holds by construction.
    pub fn quadratic_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order as u64;
        if self.table[0] != 0 {
            return Some((0, 0, 0));
        }
        for (i, &g) in self.group.generators().iter().enumerate() {
            for x in self.group.elements() {
                let xg = self.group.add_generator(x, i);
                for y in self.group.elements() {
                    let lhs = self.pairing_exponent(xg, y) as u64;
                    let rhs = (self.pairing_exponent(x, y) as u64 + self.pairing_exponent(g, y) as u64) % n;
                    if lhs != rhs {
                        return Some((x, g, y));
                    }
                }
            }
        }
        None
    }

    pub fn is_quadratic(&self) -> bool {
        self.quadratic_witness().is_none()
    }

    pub fn check_quadratic(&self) -> Result<(), QuadError> {
        match self.quadratic_witness() {
            None => Ok(()),
            Some((x, y, z)) => Err(QuadError::NotQuadratic {
                x: self.group.key(x),
                y: self.group.key(y),
                z: self.group.key(z),
            }),
        }
    }

    /// `{x : B(x, ·) ≡ 1}`, tested against the generators.
    pub fn radical(&self) -> Vec<usize> {
        let gens = self.group.generators();
        self.group.elements().filter(|&x| gens.iter().all(|&g| self.pairing_exponent(x, g) == 0)).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// Every value has order dividing `exponent(M)²`.
    pub fn value_orders_bounded(&self) -> bool {
        let e = self.group.exponent();
        let bound = e * e;
        let n = self.order as u64;
        self.table.iter().all(|&t| {
            let ord = n / n.gcd(&(t as u64));
            bound % ord == 0
        })
    }

    /// `x ↦ Q(x) χ(x)`.
    pub fn twist(&self, chi: &Character) -> Self {
        let n = self.order;
        let table = self
            .group
            .elements()
            .map(|x| ((self.table[x] as u64 + chi.exponent_at(&self.group, x, n) as u64) % n as u64) as u32)
            .collect();
        QuadraticForm { group: self.group.clone(), order: n, table }
    }

    /// `B(a, ·)` as a character; meaningful when `Q` is quadratic.
    pub fn pairing_character(&self, a: usize) -> Character {
        let n = self.order as u64;
        let exps = self
            .group
            .generators()
            .iter()
            .zip(self.group.factors())
            .map(|(&g, &d)| {
                let b = self.pairing_exponent(a, g) as u64;
                (b / (n / d)) % d
            })
            .collect();
        Character { exps }
    }

    /// `(x, y) ↦ Q(x) Q'(y)` on `M ⊕ M'`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, QuadError> {
        let group = self.group.direct_sum(&other.group)?;
        let n = check_order((self.order as u64).lcm(&(other.order as u64)))?;
        let (ka, kb) = (n / self.order, n / other.order);
        let table = group
            .elements()
            .map(|idx| {
                let (x, y) = self.group.split_index(&other.group, idx);
                ((self.table[x] * ka + other.table[y] * kb) % n) as u32
            })
            .collect();
        Self::from_exponents(&group, n, table)
    }
}

impl BilinearPairing {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent_at(&self, x: usize, y: usize) -> u32 {
        self.table[x * self.group.order() as usize + y]
    }

    pub fn value(&self, x: usize, y: usize) -> CyclotomicNumber {
        CyclotomicNumber::zeta(self.order, self.exponent_at(x, y) as i64)
    }

    pub fn is_bilinear(&self) -> bool {
        let n = self.order;
        let g = &self.group;
        g.elements().all(|x| {
            g.elements().all(|x2| {
                let s = g.add(x, x2);
                g.elements().all(|y| self.exponent_at(s, y) == (self.exponent_at(x, y) + self.exponent_at(x2, y)) % n)
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let g = &self.group;
        g.elements().all(|x| g.elements().all(|y| self.exponent_at(x, y) == self.exponent_at(y, x)))
    }

    pub fn radical(&self) -> Vec<usize> {
        let g = &self.group;
        g.elements().filter(|&x| g.elements().all(|y| self.exponent_at(x, y) == 0)).collect()
    }
}
