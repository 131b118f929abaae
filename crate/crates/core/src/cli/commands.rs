use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::charsum::{
    canonical_quadratic, char_sum, clb_cocycle_identity_check, derive_pairing, geometric_kernel,
    hasse_davenport_check, invariance_check, CharSumError, DatumDescriptor, HdOutcome, PairingDatum, Term,
};
use crate::exactalg::{CyclotomicNumber, ExactError};
use crate::fields::{
    AdditivePolynomial, ElementRepr, FieldDescriptor, LaurentAdditive, Tower, WittRepr, WittRing,
};
use crate::heisenberg::{
    build_group, check_faithful, heisenberg_from_datum, stone_von_neumann, HeisError, HeisenbergGroup,
    PairingDescriptor,
};
use crate::limits;
use crate::quadform::{
    char2_invariant, gauss_sum, radical_descent, recursive_gauss_eval, verify_gauss_sum_theorem, DescentOutcome,
    FormDescriptor, QuadraticForm,
};
use crate::varieties::{
    betti_closure, betti_prediction, build_surface, count_points, count_points_by_characters, fiber_product_counts,
    surface_counts, verify_additive, w2_endomorphism, zeta_pipeline, AdditiveRepr, CurveSpec, SurfaceSpec,
    VarietyDescriptor, VarietyError,
};

use super::report::Check;
use super::{CliError, Input, JobOptions};

pub(crate) type Outcome = Result<(Value, Vec<Check>), CliError>;

fn parse<T: DeserializeOwned>(input: &Input) -> Result<T, CliError> {
    let res = if input.toml {
        toml::from_str(input.text).map_err(|e| e.to_string())
    } else {
        serde_json::from_str(input.text).map_err(|e| e.to_string())
    };
    res.map_err(|m| CliError::Invalid(format!("parse error: {m}")))
}

fn err(e: impl std::fmt::Display) -> CliError {
    CliError::classify(e.to_string())
}

fn int(b: impl Into<BigInt>) -> Value {
    Value::String(b.into().to_string())
}

fn cyc(z: &CyclotomicNumber) -> Value {
    serde_json::to_value(z).expect("cyclotomic numbers serialize")
}

pub(crate) fn field(input: &Input, o: &JobOptions) -> Outcome {
    let d: FieldDescriptor = parse(input)?;
    let f = d.to_field().map_err(err)?;
    limits::check_points(f.q() as u128).map_err(err)?;
    let g = f.primitive_element();
    let mut checks = vec![
        Check::new("primitive element has order q - 1", f.order(g) == f.q() as u64 - 1),
        Check::new("absolute trace is onto F_p", f.elements().any(|x| f.trace(x) == 1)),
        Check::new("Frobenius has order m on the generator", (1..=f.m()).find(|&k| f.frobenius(g, k as i64) == g) == Some(f.m())),
    ];
    let mut result = json!({
        "p": f.p(), "m": f.m(), "q": f.q(), "modulus": f.modulus(),
        "primitive_element": f.coeffs(g),
    });
    let ext = o.ext.unwrap_or(1);
    if ext > 1 {
        let t = Tower::new(&f, ext).map_err(err)?;
        let top = t.top();
        limits::check_points(top.q() as u128).map_err(err)?;
        // Tr_{F/F_p} . Tr_{E/F} = Tr_{E/F_p}, and the norm is multiplicative.
        let gt = top.primitive_element();
        let bad = top.elements().find(|&y| {
            f.trace(t.relative_trace(y)) != top.trace(y)
                || t.relative_norm(top.mul(y, gt)) != f.mul(t.relative_norm(y), t.relative_norm(gt))
        });
        checks.push(Check::with_witness(
            "relative trace and norm are transitive and multiplicative",
            bad.is_none(),
            bad.map(|y| format!("{:?}", top.coeffs(y))),
        ));
        result["tower"] = json!({"degree": ext, "q": top.q(), "modulus": top.modulus()});
    }
    Ok((result, checks))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WittInput {
    field: FieldDescriptor,
    #[serde(default)]
    vectors: Vec<WittRepr>,
}

pub(crate) fn witt(input: &Input, _o: &JobOptions) -> Outcome {
    let w: WittInput = parse(input)?;
    let f = w.field.to_field().map_err(err)?;
    let ring = WittRing::new(&f);
    let vs = w.vectors.iter().map(|v| v.to_vector(&f)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let rows: Vec<Value> = vs
        .iter()
        .map(|&u| {
            json!({
                "vector": WittRepr::from_vector(&f, u),
                "frobenius": WittRepr::from_vector(&f, ring.frobenius(u)),
                "witt_trace": ring.witt_trace(u),
            })
        })
        .collect();
    let sum = vs.iter().fold(ring.zero(), |a, &b| ring.add(a, b));
    let product = vs.iter().fold(ring.one(), |a, &b| ring.mul(a, b));
    let axioms = ring.check_axioms();
    let mut checks = vec![Check::with_witness("W_2 ring axioms", axioms.is_ok(), axioms.err())];
    if f.m() == 1 {
        checks.push(Check::new("W_2(F_p) is Z/p^2", ring.is_zp2()));
    }
    let result = json!({
        "q": f.q(),
        "order": int(f.q() as u64 * f.q() as u64),
        "vectors": rows,
        "sum": WittRepr::from_vector(&f, sum),
        "product": WittRepr::from_vector(&f, product),
    });
    Ok((result, checks))
}

fn form_checks(q: &QuadraticForm, tau: &CyclotomicNumber) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    if q.is_nondegenerate() {
        let rec = recursive_gauss_eval(q).map_err(err)?;
        checks.push(Check::new("recursive evaluation matches", rec == *tau));
    } else {
        let rd = radical_descent(q).map_err(err)?;
        let ok = match rd.outcome {
            DescentOutcome::Vanishes => tau.is_zero(),
            DescentOutcome::Descends { tau: t, .. } => t == *tau,
        };
        checks.push(Check::new("radical descent matches", ok));
    }
    Ok(checks)
}

pub(crate) fn gauss_sum_cmd(input: &Input, _o: &JobOptions) -> Outcome {
    let d: FormDescriptor = parse(input)?;
    let q = d.to_form().map_err(err)?;
    let tau = gauss_sum(&q);
    let m = q.group().order();
    let nondeg = q.is_nondegenerate();
    let mut checks = form_checks(&q, &tau)?;
    if nondeg {
        checks.push(Check::new("abs_square = |M|", tau.abs_square() == CyclotomicNumber::from_int(tau.order(), m)));
    }
    let result = json!({
        "tau": cyc(&tau),
        "abs_square": cyc(&tau.abs_square()),
        "group_order": int(m),
        "nondegenerate": nondeg,
        "radical_order": int(q.radical().len() as u64),
    });
    Ok((result, checks))
}

pub(crate) fn gauss_verify(input: &Input, _o: &JobOptions) -> Outcome {
    let d: FormDescriptor = parse(input)?;
    let q = d.to_form().map_err(err)?;
    let tau = gauss_sum(&q);
    let mut checks = form_checks(&q, &tau)?;
    let mut result = json!({"tau": cyc(&tau), "group_order": int(q.group().order())});
    if q.is_nondegenerate() {
        match verify_gauss_sum_theorem(&q) {
            Ok(c) => {
                checks.push(Check::new("|tau|^2 = |M| and tau^2/|M| is a root of unity", true));
                result["root_order"] = json!(c.root_order);
            }
            Err(e) => checks.push(Check::with_witness("|tau|^2 = |M| and tau^2/|M| is a root of unity", false, Some(e.to_string()))),
        }
        if q.group().factors().iter().all(|&f| f == 2) {
            let c = char2_invariant(&q).map_err(err)?;
            checks.push(Check::new("tau^2 = Q(a)|M|", c.holds));
            result["char2_a"] = json!(q.group().key(c.a));
        }
    } else {
        let r = q.radical().len() as u64;
        let abs = tau.abs_square();
        let ok = abs.is_zero() || abs == CyclotomicNumber::from_int(tau.order(), r * q.group().order());
        checks.push(Check::new("|tau|^2 in {0, |R||M|}", ok));
        result["radical_order"] = int(r);
    }
    Ok((result, checks))
}

fn datum(input: &Input) -> Result<crate::charsum::QuadDatum, CliError> {
    let d: DatumDescriptor = parse(input)?;
    d.to_datum().map_err(err)
}

pub(crate) fn char_sum_cmd(input: &Input, o: &JobOptions) -> Outcome {
    let datum = datum(input)?;
    let q = datum.field().q() as u64;
    let mut sums = Vec::new();
    let mut checks = Vec::new();
    for n in 1..=o.ext.unwrap_or(2) {
        let s = char_sum(&datum, n).map_err(err)?;
        let form = derive_pairing(&datum, n).map_err(err)?;
        let r = form.radical().len() as u128;
        let want = r * limits::pow_sat(q, n * datum.d() as u32);
        let abs = s.abs_square();
        let ok = abs.is_zero() || abs == CyclotomicNumber::from_int(s.order(), BigInt::from(want));
        checks.push(Check::new(format!("n = {n}: |S_n|^2 in {{0, |rad| q^(nd)}}"), ok));
        sums.push(json!({"n": n, "sum": cyc(&s), "radical_order": int(r as u64)}));
    }
    Ok((json!({"sums": sums}), checks))
}

pub(crate) fn hasse_davenport(input: &Input, o: &JobOptions) -> Outcome {
    let datum = datum(input)?;
    let rep = hasse_davenport_check(&datum, o.ext.unwrap_or(3)).map_err(err)?;
    let witness = match &rep.outcome {
        HdOutcome::Holds => None,
        HdOutcome::IdentityFails { n, reason } => Some(format!("n = {n:?}: {reason}")),
    };
    let checks = vec![
        Check::with_witness("S_n chain", rep.holds(), witness),
        Check::new("|S_1|^2 = p^(2r) q^d", rep.abs_square_ok),
    ];
    let result = json!({
        "r": rep.r,
        "tau": cyc(&rep.tau),
        "sums": rep.sums.iter().map(cyc).collect::<Vec<_>>(),
        "tau_abs_square": rep.tau_abs_square.to_string(),
        "root_order": rep.root_order,
    });
    Ok((result, checks))
}

pub(crate) fn kernel(input: &Input, _o: &JobOptions) -> Outcome {
    let datum = datum(input)?;
    let k = match geometric_kernel(&datum) {
        Ok(k) => k,
        Err(e @ (CharSumError::DegeneratePairing { .. } | CharSumError::OddKernel { .. })) => {
            return Ok((json!({}), vec![Check::with_witness("pairing is isogeneous", false, Some(e.to_string()))]));
        }
        Err(e) => return Err(err(e)),
    };
    let top = k.tower.top();
    let basis: Vec<Vec<Vec<u32>>> = k.basis.iter().map(|v| v.iter().map(|&x| top.coeffs(x)).collect()).collect();
    let mut checks = vec![
        Check::new("pairing is isogeneous", true),
        Check::new("rational basis has p-rank log_size", k.basis.len() as u32 == k.log_size),
    ];
    let pts = limits::pow_sat(top.q() as u64, datum.d() as u32);
    if limits::check_points(pts).is_ok() {
        let form = derive_pairing(&datum, k.splitting_degree).map_err(err)?;
        checks.push(Check::new("radical at the splitting level has size p^log_size", form.radical().len() as u128 == k.size()));
    }
    let result = json!({
        "r": k.r,
        "log_size": k.log_size,
        "kernel_size": int(k.size() as u64),
        "splitting_degree": k.splitting_degree,
        "basis": basis,
    });
    Ok((result, checks))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClbInput {
    field: FieldDescriptor,
    /// `[i, a_i]` for `Σ a_i X^{p^i}`, `i ∈ Z`.
    f: Vec<(i32, ElementRepr)>,
    #[serde(default)]
    psi: Option<u32>,
}

pub(crate) fn clb_normalize(input: &Input, o: &JobOptions) -> Outcome {
    let c: ClbInput = parse(input)?;
    let field = c.field.to_field().map_err(err)?;
    let terms = c.f.iter().map(|(i, a)| Ok((*i, a.to_element(&field)?))).collect::<Result<Vec<_>, crate::fields::FieldError>>().map_err(err)?;
    let pd = PairingDatum::one_dimensional(LaurentAdditive::new(&field, terms)).with_psi(c.psi.unwrap_or(1));
    let d = match canonical_quadratic(&pd) {
        Ok(d) => d,
        Err(e @ CharSumError::NotSymmetric { .. }) => {
            return Ok((json!({}), vec![Check::with_witness("pairing is symmetric", false, Some(e.to_string()))]));
        }
        Err(e) => return Err(err(e)),
    };
    let mut checks = vec![Check::new("pairing is symmetric", true)];
    let n = o.ext.unwrap_or(2);
    for t in d.terms() {
        if let Term::Diag { i, a, .. } = t {
            let ok = clb_cocycle_identity_check(*i, *a, &field, n).map_err(err)?;
            checks.push(Check::new(format!("cocycle identity for i = {i}"), ok));
        }
    }
    Ok((json!({"datum": DatumDescriptor::from_datum(&d)}), checks))
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum HeisInput {
    Pairing(PairingDescriptor),
    FromDatum(DatumDescriptor),
}

fn heis_err(e: HeisError) -> Result<Vec<Check>, CliError> {
    match e {
        HeisError::AxiomViolated(w) => Ok(vec![Check::with_witness("Heisenberg group axioms", false, Some(w))]),
        e => Err(err(e)),
    }
}

fn group_report(h: &HeisenbergGroup, result: &mut Value, checks: &mut Vec<Check>) -> Result<(), CliError> {
    let cert = match h.verify() {
        Ok(c) => c,
        Err(e) => {
            checks.extend(heis_err(e)?);
            return Ok(());
        }
    };
    checks.push(Check::new("Z(H) = A and commutators give e", true));
    let rep = stone_von_neumann(h, 1).map_err(err)?;
    let order = BigInt::from(h.order());
    checks.push(Check::new("representation is a homomorphism", rep.is_homomorphism().map_err(err)?));
    checks.push(Check::new("centre acts by psi", rep.central_character_ok()));
    checks.push(Check::new(
        "character norm equals |H|",
        rep.character_norm() == CyclotomicNumber::from_int(rep.character_norm().order(), order),
    ));
    checks.push(Check::new("dimension squared equals |K|", (rep.dim() * rep.dim()) as u64 == cert.quotient_order));
    checks.push(Check::new("faithful", check_faithful(&rep)));
    let k = h.k();
    let character: Vec<Value> = h
        .elements()
        .filter_map(|g| {
            let v = rep.character(g);
            (!v.is_zero()).then(|| json!({"a": g.0, "x": k.key(g.1), "value": cyc(&v)}))
        })
        .collect();
    result["group_order"] = int(cert.order);
    result["center_order"] = int(cert.center_order);
    result["quotient_order"] = int(cert.quotient_order);
    result["darboux_profile"] = json!(cert.darboux_profile);
    result["dimension"] = json!(rep.dim());
    result["character"] = json!(character);
    Ok(())
}

pub(crate) fn heisenberg(input: &Input, _o: &JobOptions) -> Outcome {
    let h: HeisInput = parse(input)?;
    let mut result = json!({});
    let mut checks = Vec::new();
    match h {
        HeisInput::Pairing(p) => {
            let e = p.to_pairing().map_err(err)?;
            match build_group(&e) {
                Ok(h) => group_report(&h, &mut result, &mut checks)?,
                Err(e) => checks.extend(heis_err(e)?),
            }
        }
        HeisInput::FromDatum(d) => {
            let datum = d.to_datum().map_err(err)?;
            let dh = heisenberg_from_datum(&datum).map_err(err)?;
            checks.push(Check::new("deck maps permute C(F)", dh.deck.permutes));
            checks.push(Check::new("deck commutators match e", dh.deck.commutators_match));
            result["kernel_size"] = json!(dh.kernel.len());
            result["deck_points"] = json!(dh.deck.points);
            result["deck_field_degree"] = json!(dh.deck.field_degree);
            group_report(&dh.group, &mut result, &mut checks)?;
        }
    }
    Ok((result, checks))
}

fn variety(input: &Input) -> Result<VarietyDescriptor, CliError> {
    parse(input)
}

fn curve(input: &Input) -> Result<CurveSpec, CliError> {
    match variety(input)? {
        VarietyDescriptor::Curve(c) => c.to_spec().map_err(err),
        VarietyDescriptor::Surface(_) => Err(CliError::Invalid("this command expects a curve".into())),
    }
}

pub(crate) fn count_points_cmd(input: &Input, o: &JobOptions) -> Outcome {
    let ext = o.ext.unwrap_or(2);
    let mut checks = Vec::new();
    let result = match variety(input)? {
        VarietyDescriptor::Curve(c) => {
            let spec = c.to_spec().map_err(err)?;
            let mut counts = Vec::new();
            for n in 1..=ext {
                let direct = count_points(&spec, n).map_err(err)?;
                let chars = count_points_by_characters(&spec, n).map_err(err)?;
                checks.push(Check::with_witness(
                    format!("n = {n}: character assembly equals enumeration"),
                    chars.total == BigInt::from(direct),
                    Some(format!("{} != {direct}", chars.total)),
                ));
                counts.push(int(direct));
            }
            json!({"kind": "curve", "counts": counts})
        }
        VarietyDescriptor::Surface(s) => {
            let spec = s.to_spec().map_err(err)?;
            surface_result(&spec, ext, &mut checks)?
        }
    };
    Ok((result, checks))
}

fn surface_result(spec: &SurfaceSpec, ext: u32, checks: &mut Vec<Check>) -> Result<Value, CliError> {
    let eqs = build_surface(spec);
    let mut displayed = Vec::new();
    let mut fibre = Vec::new();
    let mut convention = "";
    for n in 1..=ext {
        let c = surface_counts(spec, n).map_err(err)?;
        convention = c.convention;
        displayed.push(json!({"n": n, "xyz_points": int(c.xyz_points), "free_factor": int(c.free_factor), "total": c.total.to_string()}));
        let fp = fiber_product_counts(spec, n).map_err(err)?;
        checks.push(Check::new(format!("n = {n}: fibre-product summands certified"), fp.holds()));
        let summands: Vec<Value> = fp
            .summands
            .iter()
            .map(|s| json!({"c": s.c, "tau": cyc(&s.tau), "radical_order": int(s.radical_size), "root_order": s.root_order}))
            .collect();
        fibre.push(json!({"n": n, "total": int(fp.total), "summands": summands}));
    }
    Ok(json!({
        "kind": "surface",
        "equations": eqs.equations,
        "variables": eqs.variables,
        "absent_variables": eqs.absent,
        "g1": eqs.g1,
        "g2": eqs.g2,
        "convention": convention,
        "displayed_counts": displayed,
        "fiber_product": fibre,
    }))
}

fn zeta_result(spec: &CurveSpec, checks: &mut Vec<Check>) -> Result<Option<(Value, crate::varieties::ZetaData)>, CliError> {
    let b = betti_prediction(spec).map_err(err)?;
    let z = match zeta_pipeline(spec, b.b) {
        Ok(z) => z,
        Err(VarietyError::Exact(e @ ExactError::NonIntegralElementarySymmetric { .. })) => {
            checks.push(Check::with_witness("Newton identities close integrally", false, Some(e.to_string())));
            return Ok(None);
        }
        Err(e) => return Err(err(e)),
    };
    checks.push(Check::new("Newton identities close integrally", true));
    checks.push(Check::new("Weil certificate", z.certificate.is_some()));
    let cert = z.certificate.as_ref().map(|c| json!({"m": c.m, "root_orders": c.root_orders}));
    let v = json!({
        "betti": b.b,
        "q": z.q,
        "counts": z.counts.iter().map(|&c| int(c)).collect::<Vec<_>>(),
        "power_sums": z.power_sums.iter().map(|s| int(s.clone())).collect::<Vec<_>>(),
        "l_poly": z.l_poly,
        "certificate": cert,
    });
    Ok(Some((v, z)))
}

pub(crate) fn zeta(input: &Input, _o: &JobOptions) -> Outcome {
    let spec = curve(input)?;
    let mut checks = Vec::new();
    let v = zeta_result(&spec, &mut checks)?.map(|x| x.0).unwrap_or_else(|| json!({}));
    Ok((v, checks))
}

pub(crate) fn supersingular(input: &Input, o: &JobOptions) -> Outcome {
    let mut checks = Vec::new();
    match variety(input)? {
        VarietyDescriptor::Curve(c) => {
            let spec = c.to_spec().map_err(err)?;
            let Some((mut v, z)) = zeta_result(&spec, &mut checks)? else { return Ok((json!({}), checks)) };
            let cl = betti_closure(&spec, &z, 2).map_err(err)?;
            checks.push(Check::with_witness(
                "s_(B+1), s_(B+2) follow P",
                cl.holds,
                Some(format!("observed {:?}, predicted {:?}", cl.observed, cl.predicted)),
            ));
            v["closure"] = json!(cl.observed.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            Ok((v, checks))
        }
        VarietyDescriptor::Surface(s) => {
            let spec = s.to_spec().map_err(err)?;
            let v = surface_result(&spec, o.ext.unwrap_or(2), &mut checks)?;
            Ok((v, checks))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EndInput {
    field: FieldDescriptor,
    f: Vec<ElementRepr>,
    #[serde(default)]
    r: AdditiveRepr,
}

pub(crate) fn endw2_verify(input: &Input, o: &JobOptions) -> Outcome {
    let e: EndInput = parse(input)?;
    let field = e.field.to_field().map_err(err)?;
    let coeffs = e.f.iter().map(|c| c.to_element(&field)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let r = e.r.to_additive(&field).map_err(err)?;
    let h = w2_endomorphism(&field, &coeffs, &r);
    let n = o.ext.unwrap_or(1);
    let rep = verify_additive(&h, n).map_err(err)?;
    let bad = h.with_g2(h.g2().add(&AdditivePolynomial::identity(&field)));
    let control = verify_additive(&bad, n).map_err(err)?;
    let checks = vec![
        Check::with_witness("h is additive on W_2", rep.holds, rep.witness.map(|w| format!("{w:?}"))),
        Check::new("mutated g2 is not additive", !control.holds),
    ];
    let result = json!({
        "f": AdditiveRepr::from_additive(h.f()),
        "g2": AdditiveRepr::from_additive(h.g2()),
        "pairs_checked": int(rep.pairs_checked),
    });
    Ok((result, checks))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvInput {
    datum: DatumDescriptor,
    generators: Vec<Vec<Vec<ElementRepr>>>,
}

pub(crate) fn invariance(input: &Input, o: &JobOptions) -> Outcome {
    let inv: InvInput = parse(input)?;
    let datum = inv.datum.to_datum().map_err(err)?;
    let f = datum.field();
    let gens = inv
        .generators
        .iter()
        .map(|g| g.iter().map(|row| row.iter().map(|e| e.to_element(f)).collect::<Result<Vec<_>, _>>()).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()
        .map_err(err)?;
    let rep = invariance_check(&datum, &gens, o.ext.unwrap_or(1)).map_err(err)?;
    let witness = rep.witness.as_ref().map(|(g, x)| format!("generator {g} at {:?}", x.iter().map(|e| e.index()).collect::<Vec<_>>()));
    let checks = vec![Check::with_witness("t(g x) = t(x)", rep.holds, witness)];
    Ok((json!({"points_checked": int(rep.points_checked), "generators": gens.len()}), checks))
}
