//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! Criterion 5 asks for the non-degenerate chain on data that are isogeneous,
//! where it is false; it is reported as FAIL and counted as a known failure.
//! Any other failure makes the binary exit nonzero.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gausslab::charsum::{char_sum, clb_cocycle_identity_check, geometric_kernel, QuadDatum, Term};
use gausslab::cli::{dispatch, dispatch_with_workers, fixture, CommandName, JobDescriptor, JobOptions};
use gausslab::exactalg::CyclotomicNumber;
use gausslab::fields::{AdditivePolynomial, FieldElement, FiniteField, WittRing};
use gausslab::heisenberg::{
    build_group, check_faithful, heisenberg_from_datum, stone_von_neumann, AlternatingPairing,
};
use gausslab::quadform::{
    char2_invariant, gauss_sum, random_nondegenerate, recursive_gauss_eval, verify_gauss_sum_theorem,
    FiniteAbelianGroup, QuadraticForm,
};
use gausslab::varieties::{
    betti_closure, betti_prediction, verify_additive, w2_endomorphism, zeta_pipeline, CurveSpec, VarietyError,
};

const FORMS_MIN: usize = 200;
const FORM_ORDER_MAX: u64 = 512;
const CHAR2_FORMS_MIN: usize = 100;
const LIMIT_GAUSS: Duration = Duration::from_secs(60);
const LIMIT_HD: Duration = Duration::from_secs(120);
const LIMIT_CURVE: Duration = Duration::from_secs(120);
const KNOWN_FAILURES: &[u32] = &[5];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn ff(p: u32, m: u32) -> FiniteField {
    FiniteField::new(p, m, None).unwrap()
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Random invariant factors: one prime from {2, 3, 5}, or occasionally two.
fn random_group(rng: &mut ChaCha8Rng) -> FiniteAbelianGroup {
    const PRIMES: [u64; 3] = [2, 3, 5];
    loop {
        let mut factors = Vec::new();
        let mut order = 1u64;
        let primes: Vec<u64> = if rng.gen_bool(0.2) {
            let a = rng.gen_range(0..3);
            vec![PRIMES[a], PRIMES[(a + 1 + rng.gen_range(0..2)) % 3]]
        } else {
            vec![PRIMES[rng.gen_range(0..3)]]
        };
        for &p in &primes {
            for _ in 0..rng.gen_range(1..=4) {
                let d = p.pow(rng.gen_range(1..=3));
                if order * d <= FORM_ORDER_MAX {
                    order *= d;
                    factors.push(d);
                }
            }
        }
        // Values live in the e²-th roots of unity; keep that under the order cap.
        if let Some(g) = (!factors.is_empty()).then(|| FiniteAbelianGroup::new(&factors).unwrap()) {
            if g.exponent() * g.exponent() <= 1 << 16 {
                return g;
            }
        }
    }
}

fn form_battery() -> Vec<QuadraticForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(20261014);
    (0..FORMS_MIN)
        .map(|_| {
            let g = random_group(&mut rng);
            random_nondegenerate(&g, rng.gen()).unwrap()
        })
        .collect()
}

fn c1(forms: &[QuadraticForm]) -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut primes = std::collections::BTreeSet::new();
    for q in forms {
        assert!(q.group().order() <= FORM_ORDER_MAX);
        for &d in q.group().factors() {
            for p in [2, 3, 5] {
                if d % p == 0 {
                    primes.insert(p);
                }
            }
        }
        if let Err(e) = verify_gauss_sum_theorem(q) {
            failures.push(format!("{:?}: {e}", q.group().factors()));
        }
    }
    let t = start.elapsed();
    verdict(
        failures.is_empty() && forms.len() >= FORMS_MIN && primes.len() == 3 && t < LIMIT_GAUSS,
        format!("{} forms, |M| <= {FORM_ORDER_MAX}, primes {primes:?}, {} failures {:?}, {} (limit {})",
            forms.len(), failures.len(), failures.first(), secs(t), secs(LIMIT_GAUSS)),
    )
}

fn c2(forms: &[QuadraticForm]) -> Verdict {
    let mut mismatches = 0;
    let mut total = 0;
    for q in forms {
        total += 1;
        match recursive_gauss_eval(q) {
            Ok(z) if z == gauss_sum(q) => {}
            _ => mismatches += 1,
        }
    }
    for name in ["exeasy_z2", "z3", "hyperbolic"] {
        let d: gausslab::quadform::FormDescriptor = serde_json::from_str(fixture(name).unwrap().input).unwrap();
        let q = d.to_form().unwrap();
        total += 1;
        if recursive_gauss_eval(&q).ok() != Some(gauss_sum(&q)) {
            mismatches += 1;
        }
    }
    verdict(mismatches == 0, format!("{total} forms, {mismatches} mismatches"))
}

fn c3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 1..=6usize {
        let g = FiniteAbelianGroup::elementary(2, k).unwrap();
        let count = if k == 6 { CHAR2_FORMS_MIN - 5 * 17 } else { 17 };
        for _ in 0..count {
            let seed: u64 = rng.gen();
            let q = random_nondegenerate(&g, seed).unwrap();
            match char2_invariant(&q) {
                Ok(c) if c.holds => {}
                other => bad.push(format!("k={k} seed={seed}: {other:?}")),
            }
            checked += 1;
        }
    }
    verdict(bad.is_empty() && checked >= CHAR2_FORMS_MIN, format!("{checked} forms on (Z/2)^k, k <= 6, {} failures {:?}", bad.len(), bad.first()))
}

fn c4() -> Verdict {
    let one_plus_i = &CyclotomicNumber::one(4) + &CyclotomicNumber::zeta(4, 1);
    let rep = dispatch(&JobDescriptor::from_fixture(&fixture("exeasy_z2").unwrap(), 0)).unwrap();
    let tau: CyclotomicNumber = serde_json::from_value(rep.result["tau"].clone()).unwrap();
    verdict(tau == one_plus_i, format!("tau = {tau}"))
}

fn diag(f: &FiniteField, i: u32) -> QuadDatum {
    QuadDatum::new(f, 1).unwrap().with_term(Term::Diag { j: 0, i, a: f.one() }).unwrap()
}

fn hwex(f: &FiniteField) -> QuadDatum {
    QuadDatum::new(f, 2)
        .unwrap()
        .with_term(Term::Cross { j: 0, k: 1, i: f.m(), a: f.one() })
        .unwrap()
        .with_term(Term::Cross { j: 0, k: 1, i: 0, a: f.from_int(-1) })
        .unwrap()
}

fn witt_linear(f: &FiniteField) -> QuadDatum {
    QuadDatum::new(f, 1).unwrap().with_term(Term::WittLinear { j: 0, c: f.one() }).unwrap()
}

fn hd_catalog() -> Vec<(String, QuadDatum)> {
    let mut v = Vec::new();
    for (p, m) in [(2u32, 1u32), (3, 1), (2, 2)] {
        v.push((format!("x^(p+1) over F_{}", p.pow(m)), diag(&ff(p, m), 1)));
    }
    for m in [1, 2] {
        v.push((format!("HWex over F_{}", 2u32.pow(m)), hwex(&ff(2, m))));
    }
    for m in [1, 2] {
        v.push((format!("W2 character over F_{}", 2u32.pow(m)), witt_linear(&ff(2, m))));
    }
    v
}

fn c5() -> Verdict {
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, d) in hd_catalog() {
        let sign = if d.d() % 2 == 0 { 1 } else { -1 };
        let s: Vec<CyclotomicNumber> = (1..=3).map(|n| char_sum(&d, n).unwrap()).collect();
        let s1 = s[0].scale_int(&BigInt::from(sign));
        let chain = (1..=3).all(|n| s[n - 1].scale_int(&BigInt::from(sign)) == s1.pow(n as u64));
        let qd = BigInt::from(d.field().q()).pow(d.d() as u32);
        let norm = s[0].abs_square().as_integer() == Some(qd.clone());
        if !(chain && norm) {
            failed.push(format!("{name} (S_1 = {}, |S_1|^2 = {}, q^d = {qd})", s[0], s[0].abs_square()));
        }
    }
    let t = start.elapsed();
    verdict(
        failed.is_empty() && t < LIMIT_HD,
        if failed.is_empty() {
            format!("{}", secs(t))
        } else {
            format!("non-degenerate chain is false on isogeneous data (r > 0): {}; {}", failed.join("; "), secs(t))
        },
    )
}

fn c6() -> Verdict {
    let mut cat: Vec<(String, QuadDatum, Option<u32>)> = Vec::new();
    for p in [2, 3] {
        for n in [1, 2] {
            cat.push((format!("Gacase p={p} n={n}"), diag(&ff(p, 1), n), Some(n)));
        }
    }
    cat.push(("x^3 over F_4".into(), diag(&ff(2, 2), 1), None));
    for m in [1, 2] {
        cat.push((format!("HWex over F_{}", 2u32.pow(m)), hwex(&ff(2, m)), None));
    }
    let mut bad = Vec::new();
    let mut rs = Vec::new();
    for (name, d, want_r) in &cat {
        let k = geometric_kernel(d).unwrap();
        let p = d.field().p();
        if k.log_size != 2 * k.r || want_r.is_some_and(|r| r != k.r) {
            bad.push(format!("{name}: log_p |ker| = {}, r = {}", k.log_size, k.r));
        }
        // The chain is tested over the base and over the kernel's splitting field,
        // with as many levels as the point cap allows.
        let split = d.base_change(&k.tower);
        let mut consistent = 0;
        for e in [d, &split] {
            let q = e.field().q() as u64;
            let levels = (1..=3).take_while(|&n| q.pow(n * e.d() as u32) <= 1 << 20).count() as u32;
            let rep = gausslab::charsum::hasse_davenport_with_r(e, k.r, levels).unwrap();
            if rep.holds() {
                consistent += 1;
                let want = BigInt::from(p).pow(2 * k.r) * BigInt::from(q).pow(e.d() as u32);
                let s1 = char_sum(e, 1).unwrap();
                if s1.abs_square().as_integer() != Some(want.clone()) {
                    bad.push(format!("{name} over F_{q}: |S_1|^2 = {}, want {want}", s1.abs_square()));
                }
            }
        }
        if consistent == 0 {
            bad.push(format!("{name}: chain inconsistent even over the splitting field F_{}", split.field().q()));
        }
        rs.push(format!("{name}: r={} (chain consistent at {consistent}/2)", k.r));
    }
    verdict(bad.is_empty(), if bad.is_empty() { rs.join(", ") } else { bad.join("; ") })
}

fn c7() -> Verdict {
    let f4 = ff(2, 2);
    let mut cases = 0;
    let mut bad = Vec::new();
    for i in 1..=2 {
        for a in f4.elements() {
            for n in 1..=2 {
                cases += 1;
                if clb_cocycle_identity_check(i, a, &f4, n).ok() != Some(true) {
                    bad.push(format!("i={i} a={:?} n={n}", f4.coeffs(a)));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{cases} cases, failures {bad:?}"))
}

fn c8() -> Verdict {
    let mut bad = Vec::new();
    for (n, order, dim) in [(2u64, 8u64, 2usize), (3, 27, 3)] {
        let h = build_group(&AlternatingPairing::standard(n).unwrap()).unwrap();
        match h.verify() {
            Ok(c) if c.order == order && c.center_order == n => {}
            other => bad.push(format!("order {order}: {other:?}")),
        }
        let rep = stone_von_neumann(&h, 1).unwrap();
        let norm_ok = rep.character_norm().as_integer() == Some(BigInt::from(order));
        if rep.dim() != dim || rep.is_homomorphism() != Ok(true) || !rep.central_character_ok() || !norm_ok || !check_faithful(&rep) {
            bad.push(format!("order {order}: SvN dim {} norm {}", rep.dim(), rep.character_norm()));
        }
    }
    for p in [2, 3] {
        let f = ff(p, 1);
        let dh = heisenberg_from_datum(&diag(&f, 1)).unwrap();
        let p = p as u64;
        if dh.group.k().order() != p * p || dh.group.order() != p * p * p || !dh.deck.permutes || !dh.deck.commutators_match {
            bad.push(format!("datum p={p}: |K| = {}, |H| = {}, deck {:?}", dh.group.k().order(), dh.group.order(), dh.deck));
        }
    }
    verdict(bad.is_empty(), if bad.is_empty() { "orders 8, 27; SvN dims 2, 3; datum covers p = 2, 3".into() } else { bad.join("; ") })
}

fn random_additive(rng: &mut ChaCha8Rng, f: &FiniteField, top: u32, need_linear: bool) -> AdditivePolynomial {
    let els: Vec<FieldElement> = f.elements().collect();
    loop {
        let terms: Vec<(u32, FieldElement)> = (0..=top).map(|i| (i, els[rng.gen_range(0..els.len())])).collect();
        let a = AdditivePolynomial::new(f, terms);
        if !a.is_zero() && (!need_linear || !a.coeff(0).is_zero()) {
            return a;
        }
    }
}

fn random_specs(count: usize) -> Vec<CurveSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut out = Vec::new();
    while out.len() < count {
        let (p, m) = [(2, 1), (3, 1), (2, 2)][rng.gen_range(0..3)];
        let f = ff(p, m);
        let spec = CurveSpec::new(
            random_additive(&mut rng, &f, 1, true),
            random_additive(&mut rng, &f, 1, false),
            random_additive(&mut rng, &f, 1, false),
            f.elements().nth(rng.gen_range(0..f.q() as usize)).unwrap(),
        )
        .unwrap();
        match betti_prediction(&spec) {
            Ok(b) if (1..=8).contains(&b.b) => out.push(spec),
            Ok(_) | Err(VarietyError::NotConnected { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    out
}

fn describe(s: &CurveSpec) -> String {
    format!("F_{}: f={:?} g1={:?} g2={:?}", s.field().q(), s.f().terms().collect::<Vec<_>>(), s.g1().terms().collect::<Vec<_>>(), s.g2().terms().collect::<Vec<_>>())
}

fn curve_catalog() -> Vec<(String, CurveSpec)> {
    let f2 = ff(2, 1);
    let f3 = ff(3, 1);
    let vdgv = CurveSpec::vdgv(
        AdditivePolynomial::new(&f2, [(0, f2.one()), (1, f2.one())]),
        AdditivePolynomial::new(&f2, [(1, f2.one())]),
    )
    .unwrap();
    // y^3 - y = x^2: f = X^3 - X, x·g(x) = x^2.
    let f3c = CurveSpec::vdgv(
        AdditivePolynomial::new(&f3, [(0, f3.from_int(-1)), (1, f3.one())]),
        AdditivePolynomial::identity(&f3),
    )
    .unwrap();
    let mut v = vec![("y^2+y=x^3 over F_2".to_string(), vdgv), ("y^3-y=x^2 over F_3".to_string(), f3c)];
    for s in random_specs(2) {
        v.push((describe(&s), s));
    }
    v
}

fn c9(curves: &[(String, CurveSpec)]) -> Verdict {
    let mut bad = Vec::new();
    let mut times = Vec::new();
    let (_, vdgv) = &curves[0];
    let z = zeta_pipeline(vdgv, betti_prediction(vdgv).unwrap().b).unwrap();
    let exact = z.counts == [2, 8]
        && z.power_sums == [BigInt::from(0), BigInt::from(-4)]
        && z.l_poly.to_string() == "T^2 + 2"
        && z.certificate.as_ref().map(|c| c.m) == Some(2);
    if !exact {
        bad.push(format!("vdgv: {:?} {:?} {} {:?}", z.counts, z.power_sums, z.l_poly, z.certificate));
    }
    for (name, s) in &curves[1..] {
        let start = Instant::now();
        let b = betti_prediction(s).unwrap().b;
        let z = zeta_pipeline(s, b).unwrap();
        let t = start.elapsed();
        times.push(secs(t));
        if b > 8 || z.certificate.is_none() || t >= LIMIT_CURVE {
            bad.push(format!("{name}: B = {b}, P = {}, certificate {:?}", z.l_poly, z.certificate));
        }
    }
    verdict(bad.is_empty(), if bad.is_empty() {
        format!("VdGV exact; {} further curves certified ({}; limit {} each)", curves.len() - 1, times.join(", "), secs(LIMIT_CURVE))
    } else {
        bad.join("; ")
    })
}

fn c10(curves: &[(String, CurveSpec)]) -> Verdict {
    let mut bad = Vec::new();
    for (name, s) in curves {
        let b = betti_prediction(s).unwrap().b;
        let z = zeta_pipeline(s, b).unwrap();
        let cl = betti_closure(s, &z, 2).unwrap();
        if !cl.holds {
            bad.push(format!("{name}: observed {:?} predicted {:?}", cl.observed, cl.predicted));
        }
    }
    verdict(bad.is_empty(), format!("{} curves, s_(B+1), s_(B+2) {}", curves.len(), if bad.is_empty() { "match".into() } else { bad.join("; ") }))
}

fn c11() -> Verdict {
    let mut bad = Vec::new();
    for (p, m) in [(2u32, 1u32), (3, 1), (2, 2)] {
        if let Err(e) = WittRing::new(&ff(p, m)).check_axioms() {
            bad.push(format!("W2(F_{}): {e}", p.pow(m)));
        }
    }
    for p in [2, 3] {
        if !WittRing::new(&ff(p, 1)).is_zp2() {
            bad.push(format!("W2(F_{p}) is not Z/{}", p * p));
        }
    }
    let f4 = ff(2, 2);
    let x = AdditivePolynomial::identity(&f4);
    let mut pairs = 0;
    for f0 in f4.elements() {
        for f1 in f4.elements() {
            if f0.is_zero() && f1.is_zero() {
                continue;
            }
            let h = w2_endomorphism(&f4, &[f0, f1], &x);
            let rep = verify_additive(&h, 1).unwrap();
            pairs += rep.pairs_checked;
            if !rep.holds {
                bad.push(format!("endW2 f=({:?},{:?}) not additive", f4.coeffs(f0), f4.coeffs(f1)));
            }
        }
    }
    let h = w2_endomorphism(&f4, &[f4.one(), f4.primitive_element()], &x);
    let mutated = h.with_g2(h.g2().add(&x));
    let control = verify_additive(&mutated, 1).unwrap();
    if control.holds {
        bad.push("mutated g2 passed".into());
    }
    verdict(bad.is_empty(), if bad.is_empty() { format!("axioms q = 2, 3, 4; Z/4, Z/9; {pairs} pairs; mutated g2 rejected") } else { bad.join("; ") })
}

fn c12() -> Verdict {
    let mut bad = Vec::new();
    for name in ["hwex_unitary_f4", "hwex_gl1_f2"] {
        let rep = dispatch(&JobDescriptor::from_fixture(&fixture(name).unwrap(), 0)).unwrap();
        if !rep.passed() {
            bad.push(format!("{name}: {:?}", rep.checks));
        }
    }
    verdict(bad.is_empty(), if bad.is_empty() { "unitary U_1 over F_4 and GL_1(F_2)".into() } else { bad.join("; ") })
}

fn c13() -> Verdict {
    let job = JobDescriptor { command: CommandName::Suite, input: None, toml: false, options: JobOptions::default() };
    let runs: Vec<String> = [1, 1, 2, 4].iter().map(|&w| dispatch_with_workers(&job, w).unwrap().payload()).collect();
    let stable = runs.windows(2).all(|w| w[0] == w[1]);
    let passed = dispatch(&job).unwrap().passed();
    verdict(stable && passed, format!("suite payloads byte-identical over workers 1, 1, 2, 4: {stable}; all suite checks pass: {passed}"))
}

fn main() {
    let forms = form_battery();
    let curves = curve_catalog();
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, "Gauss-sum theorem on random forms", Box::new(|| c1(&forms))),
        (2, "recursive evaluation equals the direct sum", Box::new(|| c2(&forms))),
        (3, "tau^2 = Q(a)|M| on (Z/2)^k", Box::new(c3)),
        (4, "exeasy tau = 1 + i", Box::new(c4)),
        (5, "non-degenerate Hasse-Davenport chain on the catalog", Box::new(c5)),
        (6, "isogeneous kernels and |S_1|^2 = p^(2r) q^d", Box::new(c6)),
        (7, "clB cocycle identity", Box::new(c7)),
        (8, "Heisenberg groups and Stone-von Neumann", Box::new(c8)),
        (9, "supersingular curves and Weil certificates", Box::new(|| c9(&curves))),
        (10, "Betti closure", Box::new(|| c10(&curves))),
        (11, "Witt layer and endW2", Box::new(c11)),
        (12, "HWex invariance", Box::new(c12)),
        (13, "suite determinism", Box::new(c13)),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in &criteria {
        let start = Instant::now();
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        let note = if !v.pass && KNOWN_FAILURES.contains(id) { " [known]" } else { "" };
        println!("{tag} {id:>2} {name}{note}: {} ({})", v.detail, secs(start.elapsed()));
        if !v.pass && !KNOWN_FAILURES.contains(id) {
            unexpected.push(*id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
