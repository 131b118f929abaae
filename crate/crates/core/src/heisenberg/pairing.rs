use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::limits;
use crate::quadform::FiniteAbelianGroup;

use super::HeisError;

/// `e: K × K → Z/N`, stored as a full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPairing {
    k: FiniteAbelianGroup,
    order: u64,
    table: Vec<u32>,
}

impl AlternatingPairing {
    /// Tabulates `e` and checks it is biadditive, alternating and perfect.
    pub fn from_fn(k: &FiniteAbelianGroup, order: u64, e: impl Fn(usize, usize) -> i64) -> Result<Self, HeisError> {
        if order == 0 || order > u32::MAX as u64 {
            return Err(HeisError::BadPairing(format!("bad value order {order}")));
        }
        let n = k.order() as usize;
        limits::check_points((n as u128) * (n as u128))?;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(e(x, y).rem_euclid(order as i64) as u32);
            }
        }
        let out = AlternatingPairing { k: k.clone(), order, table };
        out.validate()?;
        Ok(out)
    }

    /// `e(x, y) = Σ_{ij} x_i M_{ij} y_j mod N` in the group's coordinates.
    pub fn from_gram(k: &FiniteAbelianGroup, order: u64, gram: &[Vec<i64>]) -> Result<Self, HeisError> {
        let r = k.rank();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(HeisError::BadPairing(format!("gram matrix must be {r}x{r}")));
        }
        Self::from_fn(k, order, |x, y| {
            let (ex, ey) = (k.element(x), k.element(y));
            let mut s: i128 = 0;
            for i in 0..r {
                for j in 0..r {
                    s += ex[i] as i128 * gram[i][j] as i128 * ey[j] as i128;
                }
            }
            s.rem_euclid(order as i128) as i64
        })
    }

    /// `(Z/n)^2` with `e((x1, x2), (y1, y2)) = x1 y2 − x2 y1`.
    pub fn standard(n: u64) -> Result<Self, HeisError> {
        let k = FiniteAbelianGroup::new(&[n, n])?;
        Self::from_gram(&k, n, &[vec![0, 1], vec![-1, 0]])
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.k
    }

    /// `|A|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn value(&self, x: usize, y: usize) -> u64 {
        self.table[x * self.k.order() as usize + y] as u64
    }

    fn validate(&self) -> Result<(), HeisError> {
        let n = self.k.order() as usize;
        let m = self.order;
        for x in 0..n {
            if self.value(x, x) != 0 {
                return Err(HeisError::NotAlternating { x: self.k.key(x) });
            }
        }
        for g in self.k.generators() {
            for x in 0..n {
                let xg = self.k.add(x, g);
                for y in 0..n {
                    if self.value(xg, y) != (self.value(x, y) + self.value(g, y)) % m {
                        return Err(HeisError::NotBilinear { x: self.k.key(x), y: self.k.key(y) });
                    }
                }
            }
        }
        if let Some(w) = self.radical().into_iter().find(|&x| x != 0) {
            return Err(HeisError::NotPerfect { witness: self.k.key(w) });
        }
        Ok(())
    }

    pub fn radical(&self) -> Vec<usize> {
        let n = self.k.order() as usize;
        (0..n).filter(|&x| (0..n).all(|y| self.value(x, y) == 0)).collect()
    }

    fn value_order(&self, v: u64) -> u64 {
        self.order / self.order.gcd(&v)
    }
}

/// `K = L ⊕ L'` with `e(l_i, l'_j) = δ_{ij} N/o_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Darboux {
    /// `(l_i, l'_i, o_i)`.
    pub pairs: Vec<(usize, usize, u64)>,
    /// Elements of `L` and `L'`, in the order of their coordinate vectors.
    pub l: Vec<usize>,
    pub l_prime: Vec<usize>,
    /// `x ↦ (x_L, x_{L'})`.
    split: Vec<(usize, usize)>,
}

impl Darboux {
    pub fn split(&self, x: usize) -> (usize, usize) {
        self.split[x]
    }

    /// Orders `o_i` of the symplectic pairs.
    pub fn profile(&self) -> Vec<u64> {
        self.pairs.iter().map(|p| p.2).collect()
    }
}

/// Symplectic reduction: split off `⟨x, y⟩` with `e(x, y)` of maximal order, recurse
/// on the orthogonal complement. Ties go to the least `x`, then the least `y`;
/// `y` goes to `L` and `x` to `L'`.
pub fn darboux(e: &AlternatingPairing) -> Result<Darboux, HeisError> {
    let k = &e.k;
    let n = e.order;
    let mut w: Vec<usize> = k.elements().collect();
    let mut pairs = Vec::new();
    while w.len() > 1 {
        let mut best: Option<(u64, usize, usize)> = None;
        for &x in &w {
            for &y in &w {
                let o = e.value_order(e.value(x, y));
                if best.is_none_or(|(bo, _, _)| o > bo) {
                    best = Some((o, x, y));
                }
            }
        }
        let (o, x, y) = best.expect("nonempty");
        if o == 1 {
            return Err(HeisError::NotPerfect { witness: k.key(w[1]) });
        }
        // The least x spans L'; y is rescaled so that e(y, x) = N/o.
        let v = e.value(y, x);
        let unit = (v / (n / o)) as i64;
        let inv = mod_inverse(unit, o as i64).expect("unit modulo o");
        let y = k.mul(inv, y);
        debug_assert_eq!(e.value(y, x), n / o);
        pairs.push((y, x, o));
        w.retain(|&z| e.value(z, x) == 0 && e.value(z, y) == 0);
    }
    let span = |gens: &[(usize, u64)]| {
        let mut out = vec![0usize];
        for &(g, o) in gens {
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for c in 0..o {
                let gc = k.mul(c as i64, g);
                next.extend(out.iter().map(|&z| k.add(z, gc)));
            }
            out = next;
        }
        out
    };
    let l = span(&pairs.iter().map(|&(x, _, o)| (x, o)).collect::<Vec<_>>());
    let l_prime = span(&pairs.iter().map(|&(_, y, o)| (y, o)).collect::<Vec<_>>());
    let total = k.order() as usize;
    let mut split = vec![(usize::MAX, usize::MAX); total];
    for &a in &l {
        for &b in &l_prime {
            let s = k.add(a, b);
            if split[s].0 != usize::MAX {
                return Err(HeisError::AxiomViolated("L + L' is not direct".into()));
            }
            split[s] = (a, b);
        }
    }
    if split.iter().any(|s| s.0 == usize::MAX) {
        return Err(HeisError::AxiomViolated("L + L' does not exhaust K".into()));
    }
    Ok(Darboux { pairs, l, l_prime, split })
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let g = a.extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

/// `{"invariant_factors": [...], "order": N, "gram": [[...]]}` or `{"standard": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairingDescriptor {
    Standard { standard: u64 },
    Gram { invariant_factors: Vec<u64>, order: u64, gram: Vec<Vec<i64>> },
}

impl PairingDescriptor {
    pub fn to_pairing(&self) -> Result<AlternatingPairing, HeisError> {
        match self {
            PairingDescriptor::Standard { standard } => AlternatingPairing::standard(*standard),
            PairingDescriptor::Gram { invariant_factors, order, gram } => {
                let k = FiniteAbelianGroup::new(invariant_factors)?;
                AlternatingPairing::from_gram(&k, *order, gram)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_is_already_darboux() {
        let e = AlternatingPairing::standard(2).unwrap();
        let d = darboux(&e).unwrap();
        let k = e.group();
        assert_eq!(d.pairs, vec![(k.index(&[1, 0]), k.index(&[0, 1]), 2)]);
        assert_eq!(d.l.len() * d.l_prime.len(), 4);
    }

    #[test]
    fn order_four_pair() {
        let e = AlternatingPairing::standard(4).unwrap();
        let d = darboux(&e).unwrap();
        assert_eq!(d.profile(), vec![4]);
        let (l, lp, _) = d.pairs[0];
        assert_eq!(e.value(l, lp), 1);
        assert_eq!((l, lp), (e.group().index(&[1, 0]), e.group().index(&[0, 1])));
    }

    #[test]
    fn mixed_profile() {
        // (Z/2)^2 ⊕ (Z/4)^2 with the orthogonal sum of standard pairings, valued in Z/4.
        let k = FiniteAbelianGroup::new(&[2, 2, 4, 4]).unwrap();
        let g = vec![vec![0, 2, 0, 0], vec![-2, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]];
        let e = AlternatingPairing::from_gram(&k, 4, &g).unwrap();
        let d = darboux(&e).unwrap();
        assert_eq!(d.profile(), vec![4, 2]);
        for x in k.elements() {
            let (a, b) = d.split(x);
            assert_eq!(k.add(a, b), x);
        }
    }

    #[test]
    fn rejects_degenerate_and_symmetric() {
        let z2 = FiniteAbelianGroup::new(&[2]).unwrap();
        assert!(matches!(AlternatingPairing::from_gram(&z2, 2, &[vec![0]]), Err(HeisError::NotPerfect { .. })));
        let k = FiniteAbelianGroup::new(&[3, 3]).unwrap();
        assert!(matches!(
            AlternatingPairing::from_gram(&k, 3, &[vec![1, 0], vec![0, 1]]),
            Err(HeisError::NotAlternating { .. })
        ));
    }

    #[test]
    fn descriptor() {
        let d: PairingDescriptor = serde_json::from_str(r#"{"standard": 3}"#).unwrap();
        assert_eq!(d.to_pairing().unwrap().group().order(), 9);
        let g: PairingDescriptor =
            serde_json::from_str(r#"{"invariant_factors":[2,2],"order":2,"gram":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.to_pairing().unwrap(), AlternatingPairing::standard(2).unwrap());
    }
}
