use serde::{Deserialize, Serialize};

use crate::fields::{AdditivePolynomial, ElementRepr, FieldDescriptor, FiniteField};

use super::datum::{QuadDatum, Term};
use super::CharSumError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TermRepr {
    Diag { j: usize, i: u32, a: ElementRepr },
    Cross { j: usize, k: usize, i: u32, a: ElementRepr },
    Halfsq { j: usize, a: ElementRepr },
    Wittlin { j: usize, c: ElementRepr },
    Aslin { j: usize, c: ElementRepr },
    /// `f` lists `[i, a_i]` for `Σ a_i X^{p^i}`.
    Precompose { j: usize, f: Vec<(u32, ElementRepr)> },
}

/// `{"field": {...}, "d": 1, "psi": 1, "psi_witt": 1, "terms": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDescriptor {
    pub field: FieldDescriptor,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_witt: Option<u32>,
    #[serde(default)]
    pub terms: Vec<TermRepr>,
}

impl DatumDescriptor {
    pub fn to_datum(&self) -> Result<QuadDatum, CharSumError> {
        let f = self.field.to_field()?;
        let mut datum = QuadDatum::new(&f, self.d)?;
        if self.psi.is_some() || self.psi_witt.is_some() {
            let k = self.psi.unwrap_or(1);
            let kw = self.psi_witt.unwrap_or(k);
            datum = datum.with_characters(k, kw)?;
        }
        for t in &self.terms {
            datum.push(term_from_repr(&f, t)?)?;
        }
        Ok(datum)
    }

    pub fn from_datum(datum: &QuadDatum) -> Self {
        let f = datum.field();
        let e = |x| ElementRepr::from_element(f, x);
        let terms = datum
            .terms()
            .iter()
            .map(|t| match t {
                Term::Diag { j, i, a } => TermRepr::Diag { j: *j, i: *i, a: e(*a) },
                Term::Cross { j, k, i, a } => TermRepr::Cross { j: *j, k: *k, i: *i, a: e(*a) },
                Term::HalfSquare { j, a } => TermRepr::Halfsq { j: *j, a: e(*a) },
                Term::WittLinear { j, c } => TermRepr::Wittlin { j: *j, c: e(*c) },
                Term::AsLinear { j, c } => TermRepr::Aslin { j: *j, c: e(*c) },
                Term::Precompose { j, f: g } => TermRepr::Precompose { j: *j, f: g.terms().map(|(i, a)| (i, e(a))).collect() },
            })
            .collect();
        let witt = datum.has_witt_terms();
        DatumDescriptor {
            field: FieldDescriptor::from_field(f),
            d: datum.d(),
            psi: (datum.psi() != 1).then_some(datum.psi()),
            psi_witt: (witt && datum.psi_witt() != 1).then_some(datum.psi_witt()),
            terms,
        }
    }
}

fn term_from_repr(f: &FiniteField, t: &TermRepr) -> Result<Term, CharSumError> {
    let e = |x: &ElementRepr| x.to_element(f).map_err(CharSumError::from);
    Ok(match t {
        TermRepr::Diag { j, i, a } => Term::Diag { j: *j, i: *i, a: e(a)? },
        TermRepr::Cross { j, k, i, a } => Term::Cross { j: *j, k: *k, i: *i, a: e(a)? },
        TermRepr::Halfsq { j, a } => Term::HalfSquare { j: *j, a: e(a)? },
        TermRepr::Wittlin { j, c } => Term::WittLinear { j: *j, c: e(c)? },
        TermRepr::Aslin { j, c } => Term::AsLinear { j: *j, c: e(c)? },
        TermRepr::Precompose { j, f: g } => {
            let terms = g.iter().map(|(i, a)| Ok((*i, e(a)?))).collect::<Result<Vec<_>, CharSumError>>()?;
            Term::Precompose { j: *j, f: AdditivePolynomial::new(f, terms) }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let j = r#"{"field":{"p":2,"m":2},"d":2,"terms":[
            {"kind":"cross","j":0,"k":1,"i":1,"a":1},
            {"kind":"diag","j":1,"i":1,"a":[0,1]},
            {"kind":"precompose","j":0,"f":[[0,1],[1,[1,1]]]}]}"#;
        let desc: DatumDescriptor = serde_json::from_str(j).unwrap();
        let d = desc.to_datum().unwrap();
        assert_eq!(d.terms().len(), 3);
        let back = DatumDescriptor::from_datum(&d).to_datum().unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn rejects_bad_input() {
        let unknown = r#"{"field":{"p":2},"d":1,"terms":[{"kind":"cube","j":0}]}"#;
        assert!(serde_json::from_str::<DatumDescriptor>(unknown).is_err());
        let halfsq = r#"{"field":{"p":2},"d":1,"terms":[{"kind":"halfsq","j":0,"a":1}]}"#;
        let desc: DatumDescriptor = serde_json::from_str(halfsq).unwrap();
        assert!(matches!(desc.to_datum(), Err(CharSumError::BadTerm(_))));
    }
}
