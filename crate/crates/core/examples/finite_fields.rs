//! Finite fields, towers, additive polynomials and length-two Witt vectors.
//!
//! `cargo run --example finite_fields`

use gausslab::fields::{AdditivePolynomial, FiniteField, Tower, WittRing};

fn main() {
    let f4 = FiniteField::new(2, 2, None).unwrap();
    let w = f4.primitive_element();
    println!("F_4 = F_2[X]/({:?}), generator {:?} of order {}", f4.modulus(), f4.coeffs(w), f4.order(w));

    let t = Tower::new(&f4, 3).unwrap();
    let top = t.top();
    let y = top.primitive_element();
    println!(
        "F_64 over F_4: Tr(y) = {:?}, N(y) = {:?}",
        f4.coeffs(t.relative_trace(y)),
        f4.coeffs(t.relative_norm(y))
    );

    // The Lang map X^4 - X has kernel F_4 inside every extension.
    let lang = AdditivePolynomial::lang(&ff(2, 1), 2);
    println!("ker(X^4 - X) in F_2^(6): {} elements", lang.additive_kernel(6).unwrap().len());

    for (p, m) in [(2u32, 1u32), (3, 1), (2, 2)] {
        let ring = WittRing::new(&ff(p, m));
        ring.check_axioms().unwrap();
        print!("W_2(F_{}): ring axioms hold", p.pow(m));
        if m == 1 {
            print!(", isomorphic to Z/{}: {}", p * p, ring.is_zp2());
        }
        println!();
    }
    let w3 = WittRing::new(&ff(3, 1));
    let one = w3.one();
    let three = w3.add(w3.add(one, one), one);
    println!("in W_2(F_3): 1 + 1 + 1 = V(1), which is {:?} in Z/9", w3.to_zp2(three));
    assert_eq!(three, w3.verschiebung(ff(3, 1).one()));
}

fn ff(p: u32, m: u32) -> FiniteField {
    FiniteField::new(p, m, None).unwrap()
}
