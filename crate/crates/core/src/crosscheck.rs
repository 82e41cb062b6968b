//! Side-by-side comparison of brute-force factorization counts with
//! coefficients of the corresponding tau-functions.
//!
//! Normalizations: `h∘_{m;μ} = m!·[p_μ uᵐ]τ` for Hurwitz and
//! `d∘_{m;μ,ν} = m!·[p_μ q_ν uᵐ vⁿ]D∘` for double Hurwitz; monotonic and BMS
//! counts are the plain coefficients of `uᵐ p_μ` and `uᵏ p_μ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{factorial, partitions, Partition};
use crate::series::{Aux, Monomial, Series, Truncation, Var};
use crate::symmetric_group::{bms_oracle, double_hurwitz_oracle, hurwitz_oracle, monotonic_oracle, Budget};
use crate::tau::{double_hurwitz_tau, named_params, orlov_shcherbin_tau, Family};

/// Families with both an oracle and a tau-function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountFamily {
    Hurwitz,
    Monotonic,
    /// `m` arbitrary factors, binned by total degeneracy.
    Bms(u32),
    Double,
}

impl FromStr for CountFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hurwitz" => Ok(CountFamily::Hurwitz),
            "monotonic" => Ok(CountFamily::Monotonic),
            "double" => Ok(CountFamily::Double),
            other => match other.parse::<Family>() {
                Ok(Family::Bms(m)) => Ok(CountFamily::Bms(m)),
                _ => Err(Error::InvalidArgument(format!("no oracle for family {other:?}; use hurwitz, monotonic, bms(m) or double"))),
            },
        }
    }
}

impl fmt::Display for CountFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountFamily::Hurwitz => f.write_str("hurwitz"),
            CountFamily::Monotonic => f.write_str("monotonic"),
            CountFamily::Bms(m) => write!(f, "bms({m})"),
            CountFamily::Double => f.write_str("double"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub key: String,
    #[serde(serialize_with = "ser_rational")]
    pub oracle: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub formula: BigRational,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub rows: Vec<ComparisonRow>,
    pub identical: bool,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} n={} m={} connected={}", self.family, self.n, self.m, self.connected)?;
        for r in &self.rows {
            let mark = if r.oracle == r.formula { "" } else { "  MISMATCH" };
            writeln!(f, "{}\t{}\t{}{mark}", r.key, r.oracle, r.formula)?;
        }
        write!(f, "{}", if self.identical { "identical" } else { "DIFFERENT" })
    }
}

fn compare(family: CountFamily, n: usize, m: usize, connected: bool, oracle: BTreeMap<String, BigRational>, formula: BTreeMap<String, BigRational>) -> Comparison {
    let mut keys: Vec<&String> = oracle.keys().chain(formula.keys()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<ComparisonRow> = keys
        .into_iter()
        .map(|k| ComparisonRow {
            key: k.clone(),
            oracle: oracle.get(k).cloned().unwrap_or_else(BigRational::zero),
            formula: formula.get(k).cloned().unwrap_or_else(BigRational::zero),
        })
        .collect();
    let identical = rows.iter().all(|r| r.oracle == r.formula);
    Comparison { family: family.to_string(), n, m, connected, rows, identical }
}

fn nonzero<K: ToString>(entries: impl IntoIterator<Item = (K, BigRational)>) -> BTreeMap<String, BigRational> {
    entries.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.to_string(), c)).collect()
}

fn maybe_log(tau: Series, connected: bool) -> Result<Series> {
    if connected {
        tau.log()
    } else {
        Ok(tau)
    }
}

/// Compares the oracle counts in `S_n` (with `m` factors) against the tau
/// coefficients, entry by entry.
pub fn oracle_vs_formula(family: CountFamily, n: usize, m: usize, connected: bool, budget: Budget) -> Result<Comparison> {
    let mfact = BigRational::from_integer(factorial(m as u32));
    let (oracle, formula) = match family {
        CountFamily::Hurwitz | CountFamily::Monotonic => {
            let (kind, counts, scale) = if family == CountFamily::Hurwitz {
                (Family::Hurwitz, hurwitz_oracle(n, m, connected, budget)?, mfact)
            } else {
                (Family::Monotonic, monotonic_oracle(n, m, connected, budget)?, BigRational::from_integer(1.into()))
            };
            let trunc = Truncation::new(n as i64).with_aux(Aux::U, m as i64);
            let y = named_params(kind, &BTreeMap::new(), &trunc)?;
            let s = maybe_log(orlov_shcherbin_tau(&y, &trunc)?, connected)?;
            let um = Monomial::var_pow(Var::u(), m as i32);
            let mut formula = Vec::new();
            for mu in partitions(n as u32) {
                formula.push((mu.clone(), s.coefficient(&Monomial::p_mu(&mu).mul(&um))? * &scale));
            }
            (nonzero(counts), nonzero(formula))
        }
        CountFamily::Bms(factors) => {
            if factors as usize != m {
                return Err(Error::InvalidArgument(format!("bms({factors}) needs m = {factors} factors")));
            }
            let counts = bms_oracle(n, m, connected, budget)?;
            let kmax = (m * n.saturating_sub(1)) as i64;
            let trunc = Truncation::new(n as i64).with_aux(Aux::U, kmax);
            let y = named_params(Family::Bms(factors), &BTreeMap::new(), &trunc)?;
            let s = maybe_log(orlov_shcherbin_tau(&y, &trunc)?, connected)?;
            let mut formula = Vec::new();
            for mu in partitions(n as u32) {
                for k in 0..=kmax {
                    let mono = Monomial::p_mu(&mu).mul(&Monomial::var_pow(Var::u(), k as i32));
                    formula.push((bms_key(k as u32, &mu), s.coefficient(&mono)?));
                }
            }
            (nonzero(counts.into_iter().map(|((k, mu), c)| (bms_key(k, &mu), c))), nonzero(formula))
        }
        CountFamily::Double => {
            let counts = double_hurwitz_oracle(n, m, connected, budget)?;
            let trunc = Truncation::new(2 * n as i64).with_aux(Aux::U, m as i64).with_aux(Aux::V, n as i64);
            let s = maybe_log(double_hurwitz_tau(&trunc)?, connected)?;
            let tail = Monomial::var_pow(Var::u(), m as i32).mul(&Monomial::var_pow(Var::Aux(Aux::V), n as i32));
            let mut formula = Vec::new();
            let parts: Vec<Partition> = partitions(n as u32).collect();
            for mu in &parts {
                for nu in &parts {
                    let mono = Monomial::p_mu(mu).mul(&Monomial::q_mu(nu)).mul(&tail);
                    formula.push((pair_key(mu, nu), s.coefficient(&mono)? * &mfact));
                }
            }
            (nonzero(counts.into_iter().map(|((mu, nu), c)| (pair_key(&mu, &nu), c))), nonzero(formula))
        }
    };
    Ok(compare(family, n, m, connected, oracle, formula))
}

fn bms_key(k: u32, mu: &Partition) -> String {
    format!("k={k} {mu}")
}

fn pair_key(mu: &Partition, nu: &Partition) -> String {
    format!("{mu} {nu}")
}
