//! JSON form of a series:
//! `{"truncation":{"weight":6,"aux":{"u":4}},"terms":[{"monomial":{"p2":1,"u":1},"coeff":"1/2"}]}`.
//! Terms and monomial entries are emitted in canonical order.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Aux, Monomial, Series, Truncation, Var};

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (v, e) in self.iter() {
            map.serialize_entry(&v.to_string(), &e)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: HashMap<String, i32> = HashMap::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (k, e) in raw {
            pairs.push((k.parse::<Var>().map_err(D::Error::custom)?, e));
        }
        Monomial::from_pairs(pairs).map_err(D::Error::custom)
    }
}

impl Serialize for Truncation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct AuxMap<'a>(&'a Truncation);
        impl Serialize for AuxMap<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(None)?;
                for (a, b) in self.0.aux_bounds() {
                    map.serialize_entry(&a.to_string(), &b)?;
                }
                map.end()
            }
        }
        let mut st = s.serialize_struct("Truncation", 2)?;
        st.serialize_field("weight", &self.weight_is_bounded().then_some(self.weight()))?;
        st.serialize_field("aux", &AuxMap(self))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Truncation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            weight: Option<i64>,
            #[serde(default)]
            aux: HashMap<String, i64>,
        }
        let raw = Raw::deserialize(d)?;
        let mut t = raw.weight.map_or_else(Truncation::unbounded, Truncation::new);
        for (k, b) in raw.aux {
            t = t.with_aux(k.parse::<Aux>().map_err(D::Error::custom)?, b);
        }
        Ok(t)
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Term<'a>(&'a Monomial, &'a BigRational);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut st = s.serialize_struct("Term", 2)?;
                st.serialize_field("monomial", self.0)?;
                st.serialize_field("coeff", &self.1.to_string())?;
                st.end()
            }
        }
        struct Terms<'a>(&'a Series);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (m, c) in self.0.iter() {
                    seq.serialize_element(&Term(m, c))?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("Series", 2)?;
        st.serialize_field("truncation", &self.trunc)?;
        st.serialize_field("terms", &Terms(self))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct RawTerm {
            monomial: Monomial,
            coeff: String,
        }
        #[derive(Deserialize)]
        struct Raw {
            truncation: Truncation,
            terms: Vec<RawTerm>,
        }
        let raw = Raw::deserialize(d)?;
        let mut out = Series::zero(raw.truncation);
        for t in raw.terms {
            let c: BigRational = t.coeff.parse().map_err(|_| D::Error::custom(format!("bad rational {:?}", t.coeff)))?;
            if !out.trunc.admits(&t.monomial) {
                return Err(D::Error::custom(format!("term {} outside truncation", t.monomial)));
            }
            out.add_term(t.monomial, c);
        }
        Ok(out)
    }
}
