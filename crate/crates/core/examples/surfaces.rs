//! Witt-vector endomorphisms and the surfaces built from them.
//!
//! `cargo run --example surfaces`

use gausslab::fields::{AdditivePolynomial, FiniteField};
use gausslab::varieties::{build_surface, fiber_product_counts, surface_counts, verify_additive, w2_endomorphism, SurfaceSpec};

fn main() {
    let f4 = FiniteField::new(2, 2, None).unwrap();
    let x = AdditivePolynomial::identity(&f4);
    let h = w2_endomorphism(&f4, &[f4.one(), f4.primitive_element()], &x);
    let rep = verify_additive(&h, 1).unwrap();
    println!("endomorphism of W_2(F_4): additive on {} pairs: {}", rep.pairs_checked, rep.holds);
    let bad = h.with_g2(h.g2().add(&x));
    println!("with g2 + X instead: additive {}", verify_additive(&bad, 1).unwrap().holds);

    let f3 = FiniteField::new(3, 1, None).unwrap();
    let spec = SurfaceSpec::new(&f3, &[f3.one(), f3.one()], &AdditivePolynomial::identity(&f3)).unwrap();
    let eqs = build_surface(&spec);
    println!("surface over F_3 in {:?}:", eqs.variables);
    for e in &eqs.equations {
        println!("  {e}");
    }
    for n in 1..=2 {
        let s = surface_counts(&spec, n).unwrap();
        let fp = fiber_product_counts(&spec, n).unwrap();
        println!("n = {n}: displayed scheme {} points ({}), fiber product {} points", s.total, s.convention, fp.total);
        for c in &fp.summands {
            println!("  c = {}: tau = {}, |R| = {}, certified {}", c.c, c.tau, c.radical_size, c.ok());
        }
    }
}
