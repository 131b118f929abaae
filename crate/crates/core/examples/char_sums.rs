//! Quadratic character sums, their kernels and the Hasse-Davenport chain.
//!
//! `cargo run --example char_sums`

use gausslab::charsum::{char_sum, clb_cocycle_identity_check, geometric_kernel, hasse_davenport_check, QuadDatum, Term};
use gausslab::fields::FiniteField;

fn main() {
    let f2 = FiniteField::new(2, 1, None).unwrap();
    let f4 = FiniteField::new(2, 2, None).unwrap();
    let f3 = FiniteField::new(3, 1, None).unwrap();

    let data = [
        ("psi(Tr x^3) over F_4", QuadDatum::new(&f4, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a: f4.one() }).unwrap()),
        ("psi(Tr x^10) over F_3", QuadDatum::new(&f3, 1).unwrap().with_term(Term::Diag { j: 0, i: 2, a: f3.one() }).unwrap()),
        (
            "psi(Tr(x^2 y - x y)) over F_2",
            QuadDatum::new(&f2, 2)
                .unwrap()
                .with_term(Term::Cross { j: 0, k: 1, i: 1, a: f2.one() })
                .unwrap()
                .with_term(Term::Cross { j: 0, k: 1, i: 0, a: f2.from_int(-1) })
                .unwrap(),
        ),
        ("W_2 character of (x, 0) over F_2", QuadDatum::new(&f2, 1).unwrap().with_term(Term::WittLinear { j: 0, c: f2.one() }).unwrap()),
    ];
    for (name, d) in &data {
        let sums: Vec<String> = (1..=3).map(|n| char_sum(d, n).unwrap().to_string()).collect();
        let k = geometric_kernel(d).unwrap();
        let hd = hasse_davenport_check(d, 3).unwrap();
        println!("{name}");
        println!("  S_1..S_3 = {}", sums.join(", "));
        println!("  kernel: p^{} points, r = {}, split over degree {}", k.log_size, k.r, k.splitting_degree);
        println!("  tau = {}, |tau|^2 = {}, chain holds: {}", hd.tau, hd.tau_abs_square, hd.holds());
    }

    let f4_all = f4.elements().all(|a| (1..=2).all(|i| (1..=2).all(|n| clb_cocycle_identity_check(i, a, &f4, n).unwrap())));
    println!("cocycle identity over F_4 for i, n <= 2: {f4_all}");
}
