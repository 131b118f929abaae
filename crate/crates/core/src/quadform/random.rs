use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::form::QuadraticForm;
use super::group::FiniteAbelianGroup;
use super::QuadError;

const MAX_TRIES: usize = 1000;

/// A deterministic pseudorandom non-degenerate form on `M`.
///
/// Gram data `b_ij` of order dividing `gcd(d_i, d_j)` fixes the pairing, the
/// diagonal terms are completed so that `Q(d_i e_i) = 1`, and the linear
/// terms twist by a random character.
pub fn random_nondegenerate(group: &FiniteAbelianGroup, seed: u64) -> Result<QuadraticForm, QuadError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = group.exponent();
    let n = e * e;
    if group.order() == 1 {
        return QuadraticForm::trivial(group);
    }
    let d = group.factors().to_vec();
    let k = d.len();
    for _ in 0..MAX_TRIES {
        let mut b = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in i..k {
                let g = d[i].gcd(&d[j]);
                let u = rng.gen_range(0..g);
                b[i][j] = u * (n / g);
                b[j][i] = b[i][j];
            }
        }
        let mut c = vec![0u64; k];
        for i in 0..k {
            let t = rng.gen_range(0..d[i]);
            let base = t * (n / d[i]);
            c[i] = if d[i] % 2 == 0 {
                let beta = b[i][i] / (n / d[i]);
                (base + n - (beta * (n / (2 * d[i]))) % n) % n
            } else {
                base
            };
        }
        let q = QuadraticForm::from_fn(group, n as u32, |x| {
            let mut acc: u128 = 0;
            let n = n as u128;
            for i in 0..k {
                let xi = x[i] as u128;
                acc += xi * c[i] as u128 + b[i][i] as u128 * (xi * (xi.max(1) - 1) / 2);
                for j in i + 1..k {
                    acc += b[i][j] as u128 * xi * x[j] as u128;
                }
                acc %= n;
            }
            acc as i64
        })?;
        if q.is_nondegenerate() {
            debug_assert!(q.is_quadratic());
            return Ok(q);
        }
    }
    Err(QuadError::ConstructionFailed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_forms_are_plus_minus_i() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        for seed in 0..20 {
            let q = random_nondegenerate(&g, seed).unwrap();
            assert_eq!(q.order(), 4);
            assert!(q.exponent_at(1) == 1 || q.exponent_at(1) == 3);
        }
    }

    #[test]
    fn deterministic_and_valid() {
        let g = FiniteAbelianGroup::new(&[2, 4, 3]).unwrap();
        let a = random_nondegenerate(&g, 7).unwrap();
        assert_eq!(a, random_nondegenerate(&g, 7).unwrap());
        assert!(a.is_quadratic() && a.is_nondegenerate() && a.value_orders_bounded());
        assert_eq!(a.exponent_at(0), 0);
    }

    #[test]
    fn trivial_group() {
        let q = random_nondegenerate(&FiniteAbelianGroup::trivial(), 1).unwrap();
        assert!(q.value(0).is_one());
    }
}
