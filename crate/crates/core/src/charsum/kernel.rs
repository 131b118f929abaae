use crate::fields::{FieldElement, FiniteField, LaurentAdditive, Tower};
use crate::limits;

use super::datum::QuadDatum;
use super::pairing::{symbolic_pairing, PairingDatum};
use super::CharSumError;

/// Largest `F_p`-dimension of `F_{q^m}^d` the kernel search will row-reduce.
pub const MAX_KERNEL_DIMENSION: usize = 512;

/// `ker l_Q` over its splitting field.
#[derive(Clone, Debug)]
pub struct GeometricKernel {
    /// `|ker| = p^{2r}`.
    pub r: u32,
    /// `log_p |ker|` from the triangularised Ore matrix.
    pub log_size: u32,
    /// Least `m` with `ker l_Q ⊂ F_{q^m}^d`.
    pub splitting_degree: u32,
    pub tower: Tower,
    /// An `F_p`-basis of the kernel, as points of `F_{q^m}^d`.
    pub basis: Vec<Vec<FieldElement>>,
}

impl GeometricKernel {
    pub fn size(&self) -> u128 {
        limits::pow_sat(self.tower.top().p() as u64, self.log_size)
    }
}

pub fn geometric_kernel(datum: &QuadDatum) -> Result<GeometricKernel, CharSumError> {
    geometric_kernel_of(&symbolic_pairing(datum)?)
}

/// Triangularise the rows of `l_Q` by left Ore elimination, read off the kernel
/// size, then find the least extension holding the whole kernel.
pub fn geometric_kernel_of(pairing: &PairingDatum) -> Result<GeometricKernel, CharSumError> {
    let d = pairing.d();
    let field = pairing.field();
    let mut rows = pairing.cleared_rows();
    let mut log_size = 0u32;
    let mut used = vec![false; d];
    for col in 0..d {
        loop {
            let live: Vec<usize> = (0..d).filter(|&r| !used[r] && !rows[r][col].is_zero()).collect();
            let Some(&pivot) = live.iter().min_by_key(|&&r| rows[r][col].top_exponent()) else {
                return Err(CharSumError::DegeneratePairing { column: col });
            };
            if live.len() == 1 {
                used[pivot] = true;
                log_size += rows[pivot][col].span().unwrap_or(0);
                break;
            }
            for &r in &live {
                if r == pivot {
                    continue;
                }
                reduce_row(field, &mut rows, r, pivot, col);
            }
        }
    }
    if log_size % 2 != 0 {
        return Err(CharSumError::OddKernel { log_size });
    }
    let (tower, basis) = split_kernel(pairing, log_size)?;
    Ok(GeometricKernel { r: log_size / 2, log_size, splitting_degree: tower.degree(), tower, basis })
}

/// `R_r ← R_r − h ∘ R_c` until the entry of `R_r` in `col` has lower degree than the pivot's.
fn reduce_row(field: &FiniteField, rows: &mut [Vec<LaurentAdditive>], r: usize, c: usize, col: usize) {
    let top_c = rows[c][col].top_exponent().expect("pivot entry nonzero");
    let lead_c = rows[c][col].coeff(top_c);
    while let Some(top_r) = rows[r][col].top_exponent() {
        if top_r < top_c {
            break;
        }
        let diff = top_r - top_c;
        let lead_r = rows[r][col].coeff(top_r);
        let g = field.div(lead_r, field.frobenius(lead_c, diff as i64)).expect("nonzero lead");
        let h = LaurentAdditive::monomial(field, diff, g);
        let pivot_row = rows[c].clone();
        for (entry, p) in rows[r].iter_mut().zip(&pivot_row) {
            *entry = entry.sub(&h.compose(p));
        }
    }
}

fn split_kernel(pairing: &PairingDatum, log_size: u32) -> Result<(Tower, Vec<Vec<FieldElement>>), CharSumError> {
    let base = pairing.field();
    let d = pairing.d();
    let mut m = 1u32;
    loop {
        let dim = base.m() as usize * m as usize * d;
        let points = limits::pow_sat(base.q() as u64, m);
        if dim > MAX_KERNEL_DIMENSION || limits::check_points(points).is_err() {
            return Err(CharSumError::SplittingFieldTooLarge { degree: m, log_size });
        }
        let tower = Tower::new(base, m)?;
        let basis = rational_kernel(pairing, &tower);
        if basis.len() as u32 == log_size {
            return Ok((tower, basis));
        }
        m += 1;
    }
}

/// `F_p`-basis of `ker l_Q(F)` by Gaussian elimination mod `p`.
pub fn rational_kernel(pairing: &PairingDatum, tower: &Tower) -> Vec<Vec<FieldElement>> {
    let field = tower.top();
    let p = field.p();
    let mm = field.m() as usize;
    let d = pairing.d();
    let n = mm * d;
    let unit = |t: usize| FieldElement::from_index(p.pow(t as u32));
    // Column t·j lists the coordinates of l_Q(e_{j,t}).
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(n);
    for j in 0..d {
        for t in 0..mm {
            let mut x = vec![FieldElement::ZERO; d];
            x[j] = unit(t);
            let y = pairing.apply(tower, &x);
            cols.push(y.iter().flat_map(|e| field.coeffs(*e)).collect());
        }
    }
    let nullspace = nullspace_mod_p(&cols, n, p);
    nullspace
        .into_iter()
        .map(|v| {
            (0..d)
                .map(|j| field.from_coeffs(&v[j * mm..(j + 1) * mm]).expect("coefficients below p"))
                .collect()
        })
        .collect()
}

/// Null space of the matrix whose columns are `cols` (each of length `rows`).
fn nullspace_mod_p(cols: &[Vec<u32>], rows: usize, p: u32) -> Vec<Vec<u32>> {
    let n = cols.len();
    let mut a: Vec<Vec<u32>> = (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let inv = |x: u32| -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (x as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..rows).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, pr);
        let s = inv(a[row][col]);
        for v in a[row].iter_mut() {
            *v = *v * s % p;
        }
        for r in 0..rows {
            if r != row && a[r][col] != 0 {
                let k = a[r][col];
                for c in 0..n {
                    a[r][c] = (a[r][c] + (p - k) * a[row][c]) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; n];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsum::Term;

    fn ff(p: u32, m: u32) -> FiniteField {
        FiniteField::new(p, m, None).unwrap()
    }

    #[test]
    fn gacase_kernels() {
        for (p, n, split) in [(2u32, 1u32, 2u32), (2, 2, 4), (3, 1, 4), (3, 2, 8)] {
            let f = ff(p, 1);
            let d = QuadDatum::new(&f, 1).unwrap().with_term(Term::Diag { j: 0, i: n, a: f.one() }).unwrap();
            let k = geometric_kernel(&d).unwrap();
            assert_eq!(k.r, n, "p = {p}, n = {n}");
            assert_eq!(k.splitting_degree, split, "p = {p}, n = {n}");
            assert_eq!(k.basis.len() as u32, 2 * n);
        }
    }

    #[test]
    fn half_square_is_trivial() {
        let f5 = ff(5, 1);
        let d = QuadDatum::new(&f5, 1).unwrap().with_term(Term::HalfSquare { j: 0, a: f5.from_int(3) }).unwrap();
        let k = geometric_kernel(&d).unwrap();
        assert_eq!((k.r, k.splitting_degree), (0, 1));
        assert!(k.basis.is_empty());
    }

    #[test]
    fn hwex_gl_kernel() {
        let f4 = ff(2, 2);
        let d = QuadDatum::new(&f4, 2)
            .unwrap()
            .with_term(Term::Cross { j: 0, k: 1, i: 2, a: f4.one() })
            .unwrap()
            .with_term(Term::Cross { j: 0, k: 1, i: 0, a: f4.from_int(-1) })
            .unwrap();
        let k = geometric_kernel(&d).unwrap();
        // |ker| = q² = 16, all rational.
        assert_eq!((k.r, k.log_size, k.splitting_degree), (2, 4, 1));
    }

    #[test]
    fn empty_datum_is_degenerate() {
        let d = QuadDatum::new(&ff(3, 1), 1).unwrap();
        assert!(matches!(geometric_kernel(&d), Err(CharSumError::DegeneratePairing { column: 0 })));
    }

    #[test]
    fn kernel_matches_radical() {
        // The radical of the level-n form is ker l_Q(F_{q^n}).
        let f2 = ff(2, 1);
        let d = QuadDatum::new(&f2, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a: f2.one() }).unwrap();
        let pd = symbolic_pairing(&d).unwrap();
        for n in 1..=4 {
            let q = crate::charsum::derive_pairing(&d, n).unwrap();
            let t = Tower::new(&f2, n).unwrap();
            assert_eq!(q.radical().len(), 1 << rational_kernel(&pd, &t).len());
        }
    }
}
