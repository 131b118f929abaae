//! Heisenberg groups from alternating pairings and from quadratic data.
//!
//! `cargo run --example heisenberg`

use gausslab::charsum::{QuadDatum, Term};
use gausslab::fields::FiniteField;
use gausslab::heisenberg::{build_group, check_faithful, heisenberg_from_datum, stone_von_neumann, AlternatingPairing};

fn main() {
    for n in [2u64, 3, 4] {
        let h = build_group(&AlternatingPairing::standard(n).unwrap()).unwrap();
        let c = h.verify().unwrap();
        let rep = stone_von_neumann(&h, 1).unwrap();
        println!(
            "standard pairing on (Z/{n})^2: |H| = {}, |Z| = {}, Darboux {:?}; SvN dim {}, sum |chi|^2 = {}, faithful {}",
            c.order,
            c.center_order,
            c.darboux_profile,
            rep.dim(),
            rep.character_norm(),
            check_faithful(&rep)
        );
    }

    let f3 = FiniteField::new(3, 1, None).unwrap();
    let d = QuadDatum::new(&f3, 1).unwrap().with_term(Term::Diag { j: 0, i: 1, a: f3.one() }).unwrap();
    let dh = heisenberg_from_datum(&d).unwrap();
    println!(
        "psi(Tr x^4) over F_3: |K| = {}, |H| = {}, deck maps on {} points over F_{}: commutators match {}",
        dh.group.k().order(),
        dh.group.order(),
        dh.deck.points,
        3u64.pow(dh.deck.field_degree),
        dh.deck.commutators_match
    );
}
