//! Content weights `y_c` of the Orlov–Shcherbin family.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{binomial, factorial, Partition};
use crate::series::{int, Aux, Monomial, Series, Truncation, Var};

/// Content weights, either through a series `φ(c) = d_0 + d_1 c + d_2 c² + ⋯`
/// (so `y_c = φ(c)`) or as an explicit table `c ↦ y_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauParams {
    Phi(Vec<Series>),
    Explicit(BTreeMap<i64, Series>),
}

impl TauParams {
    /// `y_c`. An explicit table must cover `c`.
    pub fn weight(&self, c: i64, trunc: &Truncation) -> Result<Series> {
        match self {
            TauParams::Phi(d) => {
                let x = int(c);
                let mut out = Series::zero(trunc.clone());
                let mut power = BigRational::one();
                for dk in d {
                    if !power.is_zero() {
                        out += &dk.truncated(trunc).scale(&power);
                    }
                    power *= &x;
                }
                Ok(out)
            }
            TauParams::Explicit(map) => map
                .get(&c)
                .map(|s| s.truncated(trunc))
                .ok_or_else(|| Error::InvalidArgument(format!("no weight given for content {c}"))),
        }
    }

    /// Table of `y_c` for `lo <= c <= hi`.
    pub fn table(&self, lo: i64, hi: i64, trunc: &Truncation) -> Result<ContentWeights> {
        let mut values = BTreeMap::new();
        for c in lo..=hi {
            values.insert(c, self.weight(c, trunc)?);
        }
        Ok(ContentWeights { values, trunc: trunc.clone() })
    }

    /// The φ-series coefficients, when available.
    pub fn phi(&self) -> Option<&[Series]> {
        match self {
            TauParams::Phi(d) => Some(d),
            TauParams::Explicit(_) => None,
        }
    }

    /// `φ(ℏc)`: each `d_k` multiplied by `ℏ^k`.
    pub fn hbar_scaled(&self, trunc: &Truncation) -> Result<TauParams> {
        let d = self.phi().ok_or_else(|| Error::InvalidArgument("genus expansion needs weights in φ form".into()))?;
        Ok(TauParams::Phi(
            d.iter()
                .enumerate()
                .map(|(k, dk)| dk.with_truncation(trunc.clone()).mul_monomial(&Monomial::var_pow(Var::hbar(), k as i32)))
                .collect(),
        ))
    }
}

/// Precomputed content weights over a finite content range.
#[derive(Clone, Debug)]
pub struct ContentWeights {
    values: BTreeMap<i64, Series>,
    trunc: Truncation,
}

impl ContentWeights {
    pub fn get(&self, c: i64) -> Result<&Series> {
        self.values.get(&c).ok_or_else(|| Error::InvalidArgument(format!("content {c} outside the weight table")))
    }

    /// `Π_{w∈μ} y_{c(w)+shift}`.
    pub fn product(&self, mu: &Partition, shift: i64) -> Result<Series> {
        let mut out = Series::one(self.trunc.clone());
        for (c, k) in mu.contents().histogram() {
            out = &out * &self.get(c + shift)?.pow(k);
        }
        Ok(out)
    }
}

/// Named specializations of the content weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `y_c = e^{uc}`
    Hurwitz,
    /// `y_c = Π_{i=1}^m (1 + u_i c)`
    Generalized(u32),
    /// `y_c = (1 + uc)^m`
    Bms(u32),
    /// `y_c = 1/(1 − uc)`
    Monotonic,
    /// `y_c = u + c`
    NFunction,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hurwitz => f.write_str("hurwitz"),
            Family::Generalized(m) => write!(f, "generalized({m})"),
            Family::Bms(m) => write!(f, "bms({m})"),
            Family::Monotonic => f.write_str("monotonic"),
            Family::NFunction => f.write_str("n-function"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `hurwitz`, `monotonic`, `n-function`, `generalized(2)`, `bms(3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let arg = |name: &str| -> Option<Result<u32>> {
            let rest = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(rest.trim().parse::<u32>().map_err(|_| Error::InvalidArgument(format!("bad family parameter in {s:?}"))))
        };
        match s {
            "hurwitz" => return Ok(Family::Hurwitz),
            "monotonic" => return Ok(Family::Monotonic),
            "n-function" => return Ok(Family::NFunction),
            _ => {}
        }
        if let Some(m) = arg("generalized") {
            return Ok(Family::Generalized(m?));
        }
        if let Some(m) = arg("bms") {
            return Ok(Family::Bms(m?));
        }
        Err(Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// Content weights for a named family. Aux parameters listed in `values` are
/// set to those numbers; all others stay formal and, where the weight is an
/// infinite series in them, must be bounded in `trunc`.
pub fn named_params(kind: Family, values: &BTreeMap<Aux, BigRational>, trunc: &Truncation) -> Result<TauParams> {
    let formal = |a: Aux| -> Series {
        match values.get(&a) {
            Some(x) => Series::constant(x.clone(), trunc.clone()),
            None => Series::var(Var::Aux(a), trunc.clone()),
        }
    };
    let d = match kind {
        Family::Hurwitz => match values.get(&Aux::U) {
            Some(x) if x.is_zero() => vec![Series::one(trunc.clone())],
            Some(_) => return Err(Error::InvalidArgument("hurwitz weights e^{uc} are irrational for numeric u ≠ 0".into())),
            None => {
                let bound = trunc.aux_bound(Aux::U).ok_or_else(|| Error::UnboundedAux("u".into()))?;
                (0..=bound.max(0))
                    .map(|k| {
                        let m = Monomial::var_pow(Var::u(), k as i32);
                        Series::term(m, BigRational::new(1.into(), factorial(k as u32)), trunc.clone())
                    })
                    .collect()
            }
        },
        Family::Generalized(m) => {
            if m == 0 || m > 9 {
                return Err(Error::InvalidArgument("generalized family needs 1 <= m <= 9".into()));
            }
            // d_k = e_k(u_1, ..., u_m)
            let mut e = vec![Series::one(trunc.clone())];
            for i in 1..=m {
                let ui = formal(Aux::Ui(i as u8));
                let mut next = e.clone();
                next.push(Series::zero(trunc.clone()));
                for k in 1..next.len() {
                    next[k] += &(&e[k - 1] * &ui);
                }
                e = next;
            }
            e
        }
        Family::Bms(m) => {
            let u = formal(Aux::U);
            (0..=m as i64).map(|k| u.pow(k as u32).scale(&BigRational::from_integer(binomial(m as i64, k)))).collect()
        }
        Family::Monotonic => {
            if values.contains_key(&Aux::U) {
                return Err(Error::InvalidArgument("monotonic weights 1/(1-uc) need a formal u".into()));
            }
            let bound = trunc.aux_bound(Aux::U).ok_or_else(|| Error::UnboundedAux("u".into()))?;
            (0..=bound.max(0)).map(|k| Series::var(Var::u(), trunc.clone()).pow(k as u32)).collect()
        }
        Family::NFunction => vec![formal(Aux::U), Series::one(trunc.clone())],
    };
    Ok(TauParams::Phi(d))
}

/// `y_c ≡ 1`.
pub fn trivial_params(trunc: &Truncation) -> TauParams {
    TauParams::Phi(vec![Series::one(trunc.clone())])
}
