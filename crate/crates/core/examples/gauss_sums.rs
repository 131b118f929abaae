//! Gauss sums of quadratic forms on finite abelian groups.
//!
//! `cargo run --example gauss_sums`

use gausslab::quadform::{
    char2_invariant, gauss_sum, radical_descent, random_nondegenerate, recursive_gauss_eval,
    verify_gauss_sum_theorem, DescentOutcome, FiniteAbelianGroup, QuadraticForm,
};

fn main() {
    // Q(x) = i^{x^2} on Z/2.
    let z2 = FiniteAbelianGroup::new(&[2]).unwrap();
    let q = QuadraticForm::from_exponents(&z2, 4, vec![0, 1]).unwrap();
    let cert = verify_gauss_sum_theorem(&q).unwrap();
    println!("Z/2, Q(x) = i^(x^2): tau = {}, |tau|^2 = {}, tau^2/|M| has order {}", cert.tau, cert.abs_square, cert.root_order);

    // Q(x) = zeta_3^{x^2} on Z/3 and the hyperbolic plane on (Z/2)^2.
    let z3 = FiniteAbelianGroup::new(&[3]).unwrap();
    let q3 = QuadraticForm::from_fn(&z3, 9, |x| 3 * (x[0] * x[0]) as i64).unwrap();
    println!("Z/3: tau = {}", gauss_sum(&q3));
    let v = FiniteAbelianGroup::new(&[2, 2]).unwrap();
    let h = QuadraticForm::from_fn(&v, 4, |x| 2 * (x[0] * x[1]) as i64).unwrap();
    let inv = char2_invariant(&h).unwrap();
    println!("hyperbolic plane: tau^2 = {} = Q(a)|M| with Q(a) = {}", inv.tau_squared, inv.q_a);

    // A few seeded random forms, checked against the recursive evaluator.
    for (factors, seed) in [(vec![4u64, 8], 1u64), (vec![9, 3], 2), (vec![25], 3), (vec![2, 2, 2, 2], 4)] {
        let g = FiniteAbelianGroup::new(&factors).unwrap();
        let q = random_nondegenerate(&g, seed).unwrap();
        let tau = gauss_sum(&q);
        assert_eq!(recursive_gauss_eval(&q).unwrap(), tau);
        let c = verify_gauss_sum_theorem(&q).unwrap();
        println!("{factors:?}: |tau|^2 = {}, root order {}", c.abs_square, c.root_order);
    }

    // A degenerate form: x -> i^{x0^2} on Z/2 x Z/2 has the radical {0} x Z/2.
    let d = QuadraticForm::from_fn(&v, 4, |x| (x[0] * x[0]) as i64).unwrap();
    match radical_descent(&d).unwrap().outcome {
        DescentOutcome::Vanishes => println!("degenerate form: tau vanishes"),
        DescentOutcome::Descends { reduced_sum, tau } => println!("degenerate form: tau = {tau} = |R| * ({reduced_sum})"),
    }
}
