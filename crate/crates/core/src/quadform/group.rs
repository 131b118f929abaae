use num_integer::Integer;

use crate::limits;

use super::QuadError;

/// `Z/d_1 × … × Z/d_k` with elements indexed in mixed radix, first
/// coordinate most significant, so index order is lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
}

impl FiniteAbelianGroup {
    /// Cyclic factors of any positive order. Divisibility is not required.
    pub fn new(factors: &[u64]) -> Result<Self, QuadError> {
        if factors.contains(&0) {
            return Err(QuadError::BadDescriptor("cyclic factors must be positive".into()));
        }
        let order = factors.iter().try_fold(1u128, |acc, &d| Some(acc * d as u128)).unwrap();
        limits::check_points(order)?;
        let mut strides = vec![1u64; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(FiniteAbelianGroup { factors: factors.to_vec(), strides, order: order as u64 })
    }

    pub fn trivial() -> Self {
        Self::new(&[]).unwrap()
    }

    /// `(Z/p)^r`.
    pub fn elementary(p: u64, r: usize) -> Result<Self, QuadError> {
        Self::new(&vec![p; r])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &d| acc.lcm(&d))
    }

    pub fn index(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.factors).zip(&self.strides).map(|((&c, &d), &s)| (c % d) * s).sum::<u64>() as usize
    }

    pub fn index_signed(&self, x: &[i64]) -> usize {
        x.iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&c, &d), &s)| c.rem_euclid(d as i64) as u64 * s)
            .sum::<u64>() as usize
    }

    pub fn element(&self, idx: usize) -> Vec<u64> {
        let idx = idx as u64;
        self.factors.iter().zip(&self.strides).map(|(&d, &s)| (idx / s) % d).collect()
    }

    #[inline]
    fn coord(&self, idx: usize, i: usize) -> u64 {
        (idx as u64 / self.strides[i]) % self.factors[i]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0u64;
        for i in 0..self.factors.len() {
            out += ((self.coord(a, i) + self.coord(b, i)) % self.factors[i]) * self.strides[i];
        }
        out as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0u64;
        for i in 0..self.factors.len() {
            let d = self.factors[i];
            out += ((d - self.coord(a, i)) % d) * self.strides[i];
        }
        out as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, k: i64, a: usize) -> usize {
        let mut out = 0u64;
        for i in 0..self.factors.len() {
            let d = self.factors[i] as i128;
            let c = (k as i128 * self.coord(a, i) as i128).rem_euclid(d) as u64;
            out += c * self.strides[i];
        }
        out as usize
    }

    /// `a + e_i` in O(1) amortised via the strides.
    pub fn add_generator(&self, a: usize, i: usize) -> usize {
        let c = self.coord(a, i);
        if c + 1 == self.factors[i] {
            a - (c * self.strides[i]) as usize
        } else {
            a + self.strides[i] as usize
        }
    }

    /// The standard generators `e_i`.
    pub fn generators(&self) -> Vec<usize> {
        self.strides.iter().map(|&s| s as usize).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        (0..self.factors.len())
            .map(|i| {
                let d = self.factors[i];
                d / d.gcd(&self.coord(a, i))
            })
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, QuadError> {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        Self::new(&f)
    }

    /// Splits an index of `self ⊕ other` into its two components.
    pub fn split_index(&self, other: &Self, idx: usize) -> (usize, usize) {
        (idx / other.order as usize, idx % other.order as usize)
    }

    /// `"x1,x2,…"`.
    pub fn key(&self, idx: usize) -> String {
        self.element(idx).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses `"1,0"`, `"(1,0)"` or `"[1,0]"`.
    pub fn parse_key(&self, key: &str) -> Result<usize, QuadError> {
        let body = key.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts: Vec<&str> = if body.trim().is_empty() { vec![] } else { body.split(',').collect() };
        if parts.len() != self.rank() {
            return Err(QuadError::BadDescriptor(format!("key {key:?} has {} coordinates, expected {}", parts.len(), self.rank())));
        }
        let mut coords = Vec::with_capacity(parts.len());
        for (s, &d) in parts.iter().zip(&self.factors) {
            let v: i64 = s.trim().parse().map_err(|_| QuadError::BadDescriptor(format!("bad coordinate in key {key:?}")))?;
            if v < 0 || v as u64 >= d {
                return Err(QuadError::BadDescriptor(format!("coordinate {v} out of range in key {key:?}")));
            }
            coords.push(v as u64);
        }
        Ok(self.index(&coords))
    }
}
