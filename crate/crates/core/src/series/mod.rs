//! Sparse truncated multivariate power series over exact rationals.
//!
//! Time variables `p_i`, `q_i` carry weight `i` and share one joint weight
//! bound. Aux parameters are bounded independently by plain degree.

mod json;
mod monomial;
mod transcendental;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use monomial::{Aux, Monomial, Var};

/// Marker for "no bound" on the time-variable weight.
pub const UNBOUNDED: i64 = i64::MAX / 4;

/// Work size (term pairs) above which multiplication fans out over threads.
const PARALLEL_PAIRS: usize = 1 << 14;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Truncation bounds. The weight bound applies to `Σ i·deg p_i + Σ i·deg q_i`;
/// aux parameters absent from `aux` are unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    weight: i64,
    aux: BTreeMap<Aux, i64>,
}

impl Truncation {
    pub fn new(weight: i64) -> Self {
        Truncation { weight, aux: BTreeMap::new() }
    }

    pub fn unbounded() -> Self {
        Truncation::new(UNBOUNDED)
    }

    pub fn with_aux(mut self, a: Aux, bound: i64) -> Self {
        self.aux.insert(a, bound);
        self
    }

    pub fn without_aux(mut self, a: Aux) -> Self {
        self.aux.remove(&a);
        self
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn weight_is_bounded(&self) -> bool {
        self.weight < UNBOUNDED
    }

    pub fn aux_bound(&self, a: Aux) -> Option<i64> {
        self.aux.get(&a).copied()
    }

    pub fn aux_bounds(&self) -> impl Iterator<Item = (Aux, i64)> + '_ {
        self.aux.iter().map(|(a, b)| (*a, *b))
    }

    /// Componentwise minimum; an aux bound present on either side survives.
    pub fn min(&self, other: &Truncation) -> Truncation {
        let mut aux = self.aux.clone();
        for (a, b) in &other.aux {
            aux.entry(*a).and_modify(|x| *x = (*x).min(*b)).or_insert(*b);
        }
        Truncation { weight: self.weight.min(other.weight), aux }
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        if m.weight() > self.weight {
            return false;
        }
        self.admits_aux(m)
    }

    fn admits_aux(&self, m: &Monomial) -> bool {
        if self.aux.is_empty() {
            return true;
        }
        m.iter().all(|(v, e)| match v {
            Var::Aux(a) => self.aux.get(&a).is_none_or(|b| (e as i64) <= *b),
            _ => true,
        })
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight_is_bounded() {
            write!(f, "weight<={}", self.weight)?;
        } else {
            write!(f, "weight unbounded")?;
        }
        for (a, b) in &self.aux {
            write!(f, ", {a}<={b}")?;
        }
        Ok(())
    }
}

/// A truncated power series. Terms outside the truncation are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<Monomial, BigRational>,
    trunc: Truncation,
}

impl Series {
    pub fn zero(trunc: Truncation) -> Self {
        Series { terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: Truncation) -> Self {
        Series::constant(BigRational::one(), trunc)
    }

    pub fn constant(c: BigRational, trunc: Truncation) -> Self {
        Series::term(Monomial::one(), c, trunc)
    }

    pub fn var(v: Var, trunc: Truncation) -> Self {
        Series::term(Monomial::var(v), BigRational::one(), trunc)
    }

    pub fn term(m: Monomial, c: BigRational, trunc: Truncation) -> Self {
        let mut s = Series::zero(trunc);
        s.add_term(m, c);
        s
    }

    /// Builds a series, summing repeated monomials and silently dropping terms
    /// outside `trunc`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>, trunc: Truncation) -> Self {
        let mut s = Series::zero(trunc);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    /// Adds `c·m`, ignoring it when `m` lies outside the truncation.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() || !self.trunc.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `m`; an error when `m` lies outside the truncation.
    pub fn coefficient(&self, m: &Monomial) -> Result<BigRational> {
        if !self.trunc.admits(m) {
            return Err(Error::OutsideTruncation { monomial: m.to_string(), truncation: self.trunc.to_string() });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Coefficient of a monomial given in text form, e.g. `"p2*u"`.
    pub fn coeff(&self, m: &str) -> Result<BigRational> {
        self.coefficient(&m.parse()?)
    }

    /// Same terms under a (typically tighter) truncation.
    pub fn truncated(&self, trunc: &Truncation) -> Series {
        let trunc = self.trunc.min(trunc);
        let terms = self.terms.iter().filter(|(m, _)| trunc.admits(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
        Series { terms, trunc }
    }

    /// Replaces the truncation outright, dropping terms it excludes. Unlike
    /// [`Series::truncated`] this can loosen bounds, so the caller vouches that
    /// the stored terms are complete for the new bounds.
    pub fn with_truncation(&self, trunc: Truncation) -> Series {
        let terms = self.terms.iter().filter(|(m, _)| trunc.admits(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
        Series { terms, trunc }
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        if c.is_zero() {
            return Series::zero(self.trunc.clone());
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Series { terms, trunc: self.trunc.clone() }
    }

    /// Multiplies every term by the monomial `m`, dropping overflow.
    pub fn mul_monomial(&self, m: &Monomial) -> Series {
        let mut out = Series::zero(self.trunc.clone());
        for (k, c) in &self.terms {
            let km = k.mul(m);
            if out.trunc.admits(&km) {
                out.terms.insert(km, c.clone());
            }
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Monomial, &BigRational) -> BigRational) -> Series {
        Series::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))), self.trunc.clone())
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Series {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
        Series { terms, trunc: self.trunc.clone() }
    }

    /// Homogeneous component of weight `w`.
    pub fn weight_part(&self, w: i64) -> Series {
        self.filter(|m| m.weight() == w)
    }

    /// Terms with `deg_a = k`, with `a` removed; the `a` bound is dropped.
    pub fn aux_part(&self, a: Aux, k: i32) -> Series {
        let v = Var::Aux(a);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(v) == k)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        Series { terms, trunc: self.trunc.clone().without_aux(a) }
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::weight).max()
    }

    /// True when every monomial has weighted degree exactly `w`.
    pub fn is_quasi_homogeneous(&self, w: i64) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    /// Variables occurring with nonzero exponent.
    pub fn variables(&self) -> std::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect()
    }

    pub fn mul_ref(&self, other: &Series) -> Series {
        let trunc = self.trunc.min(&other.trunc);
        if self.is_zero() || other.is_zero() {
            return Series::zero(trunc);
        }
        let (a, b) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        // BTreeMap order is weight-first, so the inner loop can stop early.
        let b_terms: Vec<(&Monomial, &BigRational, i64)> = b.terms.iter().map(|(m, c)| (m, c, m.weight())).collect();
        let a_terms: Vec<(&Monomial, &BigRational, i64)> =
            a.terms.iter().map(|(m, c)| (m, c, m.weight())).filter(|t| t.2 <= trunc.weight).collect();

        let accumulate = |chunk: &[(&Monomial, &BigRational, i64)]| {
            let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
            for &(ma, ca, wa) in chunk {
                for &(mb, cb, wb) in &b_terms {
                    if wa + wb > trunc.weight {
                        break;
                    }
                    let m = ma.mul(mb);
                    if !trunc.admits_aux(&m) {
                        continue;
                    }
                    let prod = ca * cb;
                    match acc.get_mut(&m) {
                        Some(x) => *x += prod,
                        None => {
                            acc.insert(m, prod);
                        }
                    }
                }
            }
            acc
        };

        let acc = if a_terms.len() * b_terms.len() >= PARALLEL_PAIRS && a_terms.len() > 1 {
            let chunk = a_terms.len().div_ceil(rayon::current_num_threads() * 4).max(1);
            a_terms.par_chunks(chunk).map(accumulate).reduce(HashMap::new, |mut x, y| {
                if x.len() < y.len() {
                    return merge_into(y, x);
                }
                for (m, c) in y {
                    match x.get_mut(&m) {
                        Some(v) => *v += c,
                        None => {
                            x.insert(m, c);
                        }
                    }
                }
                x
            })
        } else {
            accumulate(&a_terms)
        };
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Series { terms, trunc }
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut result = Series::one(self.trunc.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Iterated partial derivative `∂^order/∂v^order`. The weight bound drops
    /// by `order·weight(v)`; an aux bound drops by `order`.
    pub fn d(&self, v: Var, order: u32) -> Series {
        let mut trunc = self.trunc.clone();
        match v {
            Var::Aux(a) => {
                if let Some(b) = trunc.aux_bound(a) {
                    trunc = trunc.with_aux(a, b - order as i64);
                }
            }
            _ => {
                if trunc.weight_is_bounded() {
                    trunc.weight -= v.weight() * order as i64;
                }
            }
        }
        let mut out = Series::zero(trunc);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut factor = BigInt::one();
            for j in 0..order as i32 {
                factor *= BigInt::from(e - j);
            }
            if factor.is_zero() {
                continue;
            }
            let nm = m.with_exponent(v, e - order as i32);
            out.add_term(nm, c * BigRational::from_integer(factor));
        }
        out
    }

    /// Iterated derivative along a multiset of `p` indices, e.g. `[1,1,3]` for
    /// `∂³/∂p₁²∂p₃`.
    pub fn d_p_multi(&self, indices: &[u32]) -> Series {
        let mut out = self.clone();
        for &i in indices {
            out = out.d(Var::P(i as u16), 1);
        }
        out
    }

    /// Applies `v ↦ hbar^{e(v)}·v` to every variable. The result's `hbar` bound is
    /// `hbar_bound`, and any exponent with magnitude above it is an error.
    pub fn substitute_scaled(&self, exponent: impl Fn(Var) -> i64, hbar_bound: i64) -> Result<Series> {
        let hbar = Var::hbar();
        let trunc = self.trunc.clone().with_aux(Aux::Hbar, hbar_bound);
        let mut out = Series::zero(trunc);
        for (m, c) in &self.terms {
            let shift: i64 = m.iter().map(|(v, e)| exponent(v) * e as i64).sum();
            let total = m.exponent(hbar) as i64 + shift;
            if total.abs() > hbar_bound {
                return Err(Error::HbarOverflow { exponent: total, bound: hbar_bound });
            }
            let nm = m.with_exponent(hbar, total as i32);
            out.terms.insert(nm, c.clone());
        }
        Ok(out)
    }

    /// Replaces each variable in `map` by the given series (positive exponents
    /// only), computing the result under `out`.
    pub fn substitute(&self, map: &BTreeMap<Var, Series>, out: &Truncation) -> Result<Series> {
        let mut powers: HashMap<(Var, i32), Series> = HashMap::new();
        let mut acc = Series::zero(out.clone());
        // Group terms by their substituted part so each product is formed once.
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, BigRational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (sub, keep): (Vec<_>, Vec<_>) = m.iter().partition(|(v, _)| map.contains_key(v));
            if sub.iter().any(|(_, e)| *e < 0) {
                return Err(Error::NegativeExponent(m.to_string()));
            }
            let sub = Monomial::from_pairs(sub)?;
            let keep = Monomial::from_pairs(keep)?;
            groups.entry(sub).or_default().push((keep, c.clone()));
        }
        for (sub, rest) in groups {
            let mut factor = Series::one(out.clone());
            for (v, e) in sub.iter() {
                let p = match powers.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = map[&v].truncated(out).pow(e as u32);
                        powers.insert((v, e), p.clone());
                        p
                    }
                };
                factor = &factor * &p;
            }
            let rest = Series::from_terms(rest, out.clone());
            acc += &(&factor * &rest);
        }
        Ok(acc)
    }

    /// Renames variables. Collisions merge exponents.
    pub fn rename(&self, f: impl Fn(Var) -> Var, trunc: Truncation) -> Result<Series> {
        let mut out = Series::zero(trunc);
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&f)?, c.clone());
        }
        Ok(out)
    }

    /// Sets aux parameter `a` to the rational value `x` and drops its bound.
    pub fn evaluate_aux(&self, a: Aux, x: &BigRational) -> Series {
        let v = Var::Aux(a);
        let mut out = Series::zero(self.trunc.clone().without_aux(a));
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let f = if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            out.add_term(m.without(v), c * f);
        }
        out
    }

    /// Sets a time variable to a rational value. The weight bound is kept, so
    /// the result is only complete if the caller's consumer accounts for the
    /// loss of weight (e.g. by looking at a fixed weight in other variables).
    pub fn evaluate_var(&self, v: Var, x: &BigRational) -> Series {
        let mut out = Series::zero(self.trunc.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let f = num_traits::pow(x.clone(), e.max(0) as usize);
            out.add_term(m.without(v), c * f);
        }
        out
    }
}

fn merge_into(mut big: HashMap<Monomial, BigRational>, small: HashMap<Monomial, BigRational>) -> HashMap<Monomial, BigRational> {
    for (m, c) in small {
        match big.get_mut(&m) {
            Some(v) => *v += c,
            None => {
                big.insert(m, c);
            }
        }
    }
    big
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}]({self})", self.trunc)
    }
}

impl AddAssign<&Series> for Series {
    fn add_assign(&mut self, rhs: &Series) {
        self.trunc = self.trunc.min(&rhs.trunc);
        if self.trunc != rhs.trunc || self.terms.keys().any(|m| !self.trunc.admits(m)) {
            let t = self.trunc.clone();
            self.terms.retain(|m, _| t.admits(m));
        }
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Series> for Series {
    fn sub_assign(&mut self, rhs: &Series) {
        *self += &(-rhs);
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_ref(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Series { terms, trunc: self.trunc.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $f(self, rhs: Series) -> Series {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $f(self, rhs: &Series) -> Series {
                (&self).$f(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $f(self, rhs: Series) -> Series {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &[(&str, i64, i64)], w: i64) -> Series {
        Series::from_terms(text.iter().map(|(m, n, d)| (m.parse().unwrap(), rat(*n, *d))), Truncation::new(w))
    }

    #[test]
    fn ring_basics() {
        let p1 = s(&[("p1", 1, 1)], 4);
        assert_eq!(&p1 * &p1, s(&[("p1^2", 1, 1)], 4));
        let a = s(&[("1", 1, 1), ("p1", 1, 1)], 4);
        let b = s(&[("1", 1, 1), ("p1", -1, 1)], 4);
        assert_eq!(&a * &b, s(&[("1", 1, 1), ("p1^2", -1, 1)], 4));
        let p1 = s(&[("p1", 1, 1)], 1);
        assert!((&p1 * &p1).is_zero());
    }

    #[test]
    fn truncation_is_minimum() {
        let a = Series::var(Var::u(), Truncation::new(5).with_aux(Aux::U, 3));
        let b = Series::var(Var::p(1), Truncation::new(3));
        let c = &a * &b;
        assert_eq!(c.truncation(), &Truncation::new(3).with_aux(Aux::U, 3));
        assert!(c.coeff("p1^4").is_err());
        assert!(c.coeff("u^4").is_err());
        assert_eq!(c.coeff("p1*u").unwrap(), int(1));
    }

    #[test]
    fn derivatives() {
        let a = s(&[("p1^2", 1, 1)], 6);
        assert_eq!(a.d(Var::p(1), 2), s(&[("1", 2, 1)], 4));
        let b = s(&[("p2^2", 1, 1)], 6);
        assert_eq!(b.d(Var::p(2), 2), s(&[("1", 2, 1)], 2));
    }

    #[test]
    fn scaled_substitution() {
        let a = s(&[("p1^2", 1, 1), ("1", 3, 1)], 4);
        let out = a.substitute_scaled(|v| if v == Var::p(1) { -2 } else { 0 }, 4).unwrap();
        assert_eq!(out.coeff("p1^2*hbar^-4").unwrap(), int(1));
        assert_eq!(out.constant_term(), int(3));
        assert!(a.substitute_scaled(|v| if v == Var::p(1) { -2 } else { 0 }, 3).is_err());
    }

    #[test]
    fn substitution_composes() {
        // (1 + p1)^2 with p1 -> p2 + u
        let t = Truncation::new(6).with_aux(Aux::U, 3);
        let a = Series::from_terms([("1".parse().unwrap(), int(1)), ("p1".parse().unwrap(), int(1))], t.clone()).pow(2);
        let mut map = BTreeMap::new();
        map.insert(Var::p(1), Series::var(Var::p(2), t.clone()) + Series::var(Var::u(), t.clone()));
        let out = a.substitute(&map, &t).unwrap();
        assert_eq!(out.coeff("p2*u").unwrap(), int(2));
        assert_eq!(out.coeff("p2").unwrap(), int(2));
        assert_eq!(out.coeff("u^2").unwrap(), int(1));
        assert_eq!(out.coeff("p2^2").unwrap(), int(1));
    }

    #[test]
    fn display_is_canonical() {
        let a = s(&[("p2", 1, 2), ("1", 1, 1), ("p1", -1, 1)], 4);
        assert_eq!(a.to_string(), "1 - p1 + 1/2*p2");
    }
}
