use std::sync::OnceLock;

use super::field::{FieldElement, FieldError, FiniteField};

/// An extension `F_{q^n} / F_q` with a fixed embedding of the base.
///
/// The top field carries the default modulus of degree `m·n`, so towers over
/// the same base and degree always agree. The base modulus is sent to its
/// least-index root in the top field.
#[derive(Clone)]
pub struct Tower {
    base: FiniteField,
    top: FiniteField,
    degree: u32,
    embed: Vec<u32>,
    preimage: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tower({:?} / {:?})", self.top, self.base)
    }
}

impl Tower {
    /// `F_{q^n}` over `base = F_q`.
    pub fn new(base: &FiniteField, n: u32) -> Result<Tower, FieldError> {
        if n == 0 {
            return Err(FieldError::NotASubfield { m: base.m(), e: 0 });
        }
        if n == 1 {
            return Ok(Tower {
                base: base.clone(),
                top: base.clone(),
                degree: 1,
                embed: (0..base.q()).collect(),
                preimage: OnceLock::new(),
            });
        }
        let top = FiniteField::new(base.p(), base.m() * n, None)?;
        Self::between(base, &top)
    }

    /// The embedding of `base` into an existing field `top` of compatible degree.
    pub fn between(base: &FiniteField, top: &FiniteField) -> Result<Tower, FieldError> {
        if base.p() != top.p() {
            return Err(FieldError::FieldMismatch);
        }
        if top.m() % base.m() != 0 {
            return Err(FieldError::NotASubfield { m: top.m(), e: base.m() });
        }
        let degree = top.m() / base.m();
        let p = base.p();
        let beta = if base.m() == 1 {
            // ω is the root of the linear modulus X + c, i.e. -c.
            top.from_int(-(base.modulus()[0] as i64))
        } else {
            let modulus = base.modulus();
            top.elements()
                .skip(1)
                .find(|&b| {
                    let mut acc = FieldElement::ZERO;
                    for &c in modulus.iter().rev() {
                        acc = top.add(top.mul(acc, b), top.from_int(c as i64));
                    }
                    acc.is_zero()
                })
                .ok_or(FieldError::FieldMismatch)?
        };
        let mut powers = Vec::with_capacity(base.m() as usize);
        let mut cur = FieldElement::ONE;
        for _ in 0..base.m() {
            powers.push(cur);
            cur = top.mul(cur, beta);
        }
        let embed = (0..base.q())
            .map(|x| {
                let mut acc = FieldElement::ZERO;
                let mut v = x;
                for &pw in &powers {
                    let c = v % p;
                    v /= p;
                    if c != 0 {
                        acc = top.add(acc, top.mul(top.from_int(c as i64), pw));
                    }
                }
                acc.0
            })
            .collect();
        Ok(Tower { base: base.clone(), top: top.clone(), degree, embed, preimage: OnceLock::new() })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn top(&self) -> &FiniteField {
        &self.top
    }

    /// `[F_{q^n} : F_q]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn lift(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.embed[x.0 as usize])
    }

    /// The base element mapping to `y`, if `y` lies in the image.
    pub fn restrict(&self, y: FieldElement) -> Option<FieldElement> {
        let pre = self.preimage.get_or_init(|| {
            let mut v = vec![u32::MAX; self.top.q() as usize];
            for (x, &y) in self.embed.iter().enumerate() {
                v[y as usize] = x as u32;
            }
            v
        });
        match pre[y.0 as usize] {
            u32::MAX => None,
            x => Some(FieldElement(x)),
        }
    }

    /// `Tr_{F_{q^n}/F_q}(y) = Σ_{i<n} y^{q^i}`, as a base element.
    pub fn relative_trace(&self, y: FieldElement) -> FieldElement {
        let t = self.top.trace_to_subfield(y, self.base.m()).expect("base degree divides");
        self.restrict(t).expect("trace lands in the base")
    }

    /// `N_{F_{q^n}/F_q}(y) = Π_{i<n} y^{q^i}`, as a base element.
    pub fn relative_norm(&self, y: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ONE;
        for i in 0..self.degree {
            acc = self.top.mul(acc, self.top.frobenius(y, (self.base.m() * i) as i64));
        }
        self.restrict(acc).expect("norm lands in the base")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_map() {
        let f4 = FiniteField::new(2, 2, None).unwrap();
        let t = Tower::new(&f4, 3).unwrap();
        let top = t.top();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(t.lift(f4.add(a, b)), top.add(t.lift(a), t.lift(b)));
                assert_eq!(t.lift(f4.mul(a, b)), top.mul(t.lift(a), t.lift(b)));
            }
            assert_eq!(t.restrict(t.lift(a)), Some(a));
        }
    }

    #[test]
    fn identity_tower() {
        let f4 = FiniteField::new(2, 2, None).unwrap();
        let t = Tower::new(&f4, 1).unwrap();
        for x in f4.elements() {
            assert_eq!(t.relative_trace(x), x);
        }
    }

    #[test]
    fn traces_compose_down_the_tower() {
        let f2 = FiniteField::prime(2).unwrap();
        let f4 = FiniteField::new(2, 2, None).unwrap();
        let f16 = FiniteField::new(2, 4, None).unwrap();
        let t42 = Tower::between(&f2, &f4).unwrap();
        let t164 = Tower::between(&f4, &f16).unwrap();
        for y in f16.elements() {
            let down = t42.relative_trace(t164.relative_trace(y));
            assert_eq!(down.index(), f16.trace(y));
        }
    }

    #[test]
    fn relative_trace_of_twisted_products() {
        let f2 = FiniteField::prime(2).unwrap();
        let f4 = FiniteField::new(2, 2, None).unwrap();
        let t = Tower::between(&f2, &f4).unwrap();
        for x in f4.elements() {
            for y in f4.elements() {
                let xy2 = f4.mul(x, f4.pow(y, 2));
                let x2y = f4.mul(f4.pow(x, 2), y);
                assert_eq!(t.relative_trace(xy2), t.relative_trace(x2y));
                assert_eq!(t.relative_trace(f4.add(xy2, x2y)), f2.zero());
            }
        }
    }

    #[test]
    fn odd_prime_tower() {
        let f3 = FiniteField::new(3, 1, Some(&[1, 1])).unwrap();
        let t = Tower::new(&f3, 2).unwrap();
        for a in f3.elements() {
            assert_eq!(t.relative_norm(t.lift(a)), f3.mul(a, a));
        }
    }
}
