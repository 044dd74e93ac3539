//! Text form `{"deg":3,"terms":[{"idx":[1,2,3],"num":"1","den":"1"}, ...]}`.

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exalg::MultiVector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub idx: Vec<usize>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiVectorRecord {
    pub deg: usize,
    pub terms: Vec<TermRecord>,
}

impl MultiVectorRecord {
    pub fn from_multivector(mv: &MultiVector<BigRational>) -> Self {
        MultiVectorRecord {
            deg: mv.degree(),
            terms: mv
                .terms()
                .map(|(b, c)| TermRecord { idx: b.indices(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    pub fn to_multivector(&self, n: usize) -> Result<MultiVector<BigRational>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let num: BigInt = t.num.parse().map_err(|_| Error::Parse(format!("numerator {:?}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| Error::Parse(format!("denominator {:?}", t.den)))?;
            if den == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            terms.push((t.idx.clone(), BigRational::new(num, den)));
        }
        MultiVector::from_terms(n, self.deg, terms)
    }
}

impl Serialize for MultiVector<BigRational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MultiVectorRecord::from_multivector(self).serialize(serializer)
    }
}

/// Deserializes into `∧V` with `dim V = 6`; use [`MultiVectorRecord`] for other dimensions.
impl<'de> Deserialize<'de> for MultiVector<BigRational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = MultiVectorRecord::deserialize(deserializer)?;
        rec.to_multivector(6).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn text_form() {
        let mv =
            MultiVector::from_terms(6, 3, [(vec![1, 2, 3], rational(1, 1)), (vec![4, 5, 6], rational(-2, 4))]).unwrap();
        let s = serde_json::to_string(&mv).unwrap();
        assert_eq!(
            s,
            r#"{"deg":3,"terms":[{"idx":[1,2,3],"num":"1","den":"1"},{"idx":[4,5,6],"num":"-1","den":"2"}]}"#
        );
        let back: MultiVector<BigRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, mv);
    }

    #[test]
    fn malformed_rejected() {
        let bad = r#"{"deg":3,"terms":[{"idx":[3,2,1],"num":"1","den":"1"}]}"#;
        assert!(serde_json::from_str::<MultiVector<BigRational>>(bad).is_err());
        let zero_den = r#"{"deg":1,"terms":[{"idx":[1],"num":"1","den":"0"}]}"#;
        assert!(serde_json::from_str::<MultiVector<BigRational>>(zero_den).is_err());
    }
}
