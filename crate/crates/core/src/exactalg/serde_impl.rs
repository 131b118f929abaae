use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CyclotomicNumber, IntPolynomial};

/// An integer read from JSON as either a number or a decimal string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BigIntRepr {
    Int(i64),
    Str(String),
}

impl BigIntRepr {
    pub fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            BigIntRepr::Int(v) => Ok(BigInt::from(*v)),
            BigIntRepr::Str(s) => parse_bigint(s),
        }
    }
}

pub fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|_| format!("not an integer: {s:?}"))
}

#[derive(Serialize)]
struct CycOut {
    order: u32,
    coeffs: Vec<[String; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CycIn {
    order: u32,
    coeffs: Vec<[BigIntRepr; 2]>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycOut {
            order: self.order(),
            coeffs: self.coeffs().iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use num_rational::BigRational;
        use num_traits::Zero;
        use serde::de::Error;
        let raw = CycIn::deserialize(d)?;
        if raw.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let mut acc = CyclotomicNumber::zero(raw.order);
        for (i, [n, den]) in raw.coeffs.iter().enumerate() {
            let n = n.to_bigint().map_err(D::Error::custom)?;
            let den = den.to_bigint().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            let term = CyclotomicNumber::zeta(raw.order, i as i64).scale(&BigRational::new(n, den));
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<BigIntRepr>::deserialize(d)?;
        let v = raw.iter().map(|r| r.to_bigint()).collect::<Result<Vec<_>, _>>().map_err(serde::de::Error::custom)?;
        Ok(IntPolynomial::new(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let z = &CyclotomicNumber::zeta(5, 2) + &CyclotomicNumber::from_int(5, 7);
        let j = serde_json::to_string(&z).unwrap();
        let back: CyclotomicNumber = serde_json::from_str(&j).unwrap();
        assert_eq!(back, z);
        let w: CyclotomicNumber = serde_json::from_str(r#"{"order":4,"coeffs":[[1,2],["-3","1"]]}"#).unwrap();
        assert_eq!(w.numerators().len(), 2);
        let p = IntPolynomial::from_i64(&[2, 0, 1]);
        let back: IntPolynomial = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let q: IntPolynomial = serde_json::from_str(r#"[2, "0", 1]"#).unwrap();
        assert_eq!(q, p);
    }
}
