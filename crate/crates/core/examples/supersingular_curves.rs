//! Point counts, L-polynomials and Weil certificates for Artin-Schreier curves.
//!
//! `cargo run --example supersingular_curves`

use gausslab::fields::{AdditivePolynomial, FiniteField};
use gausslab::varieties::{betti_closure, betti_prediction, count_points, count_points_by_characters, zeta_pipeline, CurveSpec};

fn main() {
    let f2 = FiniteField::new(2, 1, None).unwrap();
    let f3 = FiniteField::new(3, 1, None).unwrap();
    let f4 = FiniteField::new(2, 2, None).unwrap();
    let w = f4.primitive_element();
    let curves = [
        ("y^2 + y = x^3 over F_2", CurveSpec::vdgv(AdditivePolynomial::new(&f2, [(0, f2.one()), (1, f2.one())]), AdditivePolynomial::new(&f2, [(1, f2.one())])).unwrap()),
        ("y^3 - y = x^2 over F_3", CurveSpec::vdgv(AdditivePolynomial::new(&f3, [(0, f3.from_int(-1)), (1, f3.one())]), AdditivePolynomial::identity(&f3)).unwrap()),
        (
            "y^2 + w y = x^3 + x^2 over F_4",
            CurveSpec::new(
                AdditivePolynomial::new(&f4, [(0, w), (1, f4.one())]),
                AdditivePolynomial::identity(&f4),
                AdditivePolynomial::new(&f4, [(0, f4.one()), (1, f4.one())]),
                f4.zero(),
            )
            .unwrap(),
        ),
    ];
    for (name, spec) in &curves {
        let b = betti_prediction(spec).unwrap();
        let z = zeta_pipeline(spec, b.b).unwrap();
        let by_chars = count_points_by_characters(spec, 1).unwrap();
        assert_eq!(by_chars.total, count_points(spec, 1).unwrap().into());
        let closure = betti_closure(spec, &z, 2).unwrap();
        println!("{name}");
        println!("  B = {} (kernel splits over degree {})", b.b, b.splitting_degree);
        println!("  counts {:?}, power sums {:?}", z.counts, z.power_sums.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        println!("  P(T) = {}", z.l_poly);
        match &z.certificate {
            Some(c) => println!("  supersingular: eigenvalues are roots of unity times sqrt(q), m = {}", c.m),
            None => println!("  no Weil certificate"),
        }
        println!("  two further counts agree with P: {}", closure.holds);
    }
}
