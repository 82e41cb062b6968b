//! Integer partitions, Young-diagram contents and hook lengths.
//!
//! A [`Partition`] is always stored with weakly decreasing positive parts.
//! The same type indexes Young diagrams, cycle types of permutations and the
//! power-sum monomials `p_mu = p_{mu_1} p_{mu_2} ...`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Like [`Partition::new`] but rejects non-positive parts instead of dropping them.
    pub fn try_from_parts(parts: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(parts.len());
        for &p in parts {
            if p <= 0 {
                return Err(Error::NonPositivePart(p));
            }
            let p = u32::try_from(p).map_err(|_| Error::InvalidArgument(format!("part {p} too large")))?;
            out.push(p);
        }
        Ok(Partition::new(out))
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        Partition::new(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition::new(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of each distinct part value.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Number of parts equal to one.
    pub fn ones(&self) -> u32 {
        self.parts.iter().filter(|&&p| p == 1).count() as u32
    }

    /// The partition with all parts equal to one removed.
    pub fn without_ones(&self) -> Partition {
        Partition { parts: self.parts.iter().copied().filter(|&p| p > 1).collect() }
    }

    /// Appends `k` parts equal to one.
    pub fn with_ones(&self, k: u32) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat(1).take(k as usize));
        Partition { parts }
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn contents(&self) -> ContentList {
        let mut values = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as i64 {
                values.push(j - i as i64);
            }
        }
        ContentList { values }
    }

    /// Sum of contents; the eigenvalue of the class sum of transpositions.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let (l, i) = (l as i64, i as i64 + 1);
                l * (l - 2 * i + 1) / 2
            })
            .sum()
    }

    /// Hook lengths, row-major.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - 1 - j as u32;
                let leg = conj.part(j) - 1 - i as u32;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// `dim_mu / |mu|!` via the hook-length formula.
    pub fn dim_ratio(&self) -> BigRational {
        let prod: BigInt = self.hooks().into_iter().map(BigInt::from).product();
        BigRational::new(BigInt::one(), prod)
    }

    /// Dimension of the irreducible representation of `S_|mu|`.
    pub fn dim(&self) -> BigInt {
        let r = self.dim_ratio() * BigRational::from_integer(factorial(self.size()));
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    /// `|Aut mu|`, the product of factorials of the part multiplicities.
    pub fn aut_order(&self) -> BigInt {
        self.multiplicities().values().map(|&m| factorial(m)).product()
    }

    /// `|mu| - l(mu)`.
    pub fn degeneracy(&self) -> u32 {
        self.size() - self.length() as u32
    }

    /// `z_mu = prod_i i^{m_i} m_i!`, the centralizer order of a permutation of this type.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|(&part, &m)| num_traits::pow(BigInt::from(part), m as usize) * factorial(m))
            .product()
    }

    /// Size of the conjugacy class `C_mu` in `S_|mu|`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size()) / self.z()
    }

    /// Union of parts (as multisets).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Multiplicative notation, e.g. `2^2 3^1`.
    pub fn to_multiplicative(&self) -> String {
        self.multiplicities()
            .iter()
            .map(|(p, m)| format!("{p}^{m}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[5,3,3,2]` or multiplicative `2^2 3^1` (a bare `k` means `k^1`).
    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse { text: text.to_string(), reason: reason.to_string() };
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| err("missing closing ']'"))?;
            if inner.trim().is_empty() {
                return Ok(Partition::empty());
            }
            let parts = inner
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| err("expected an integer part")))
                .collect::<Result<Vec<_>>>()?;
            return Partition::try_from_parts(&parts);
        }
        if t.is_empty() {
            return Err(err("empty input"));
        }
        let mut parts = Vec::new();
        for token in t.split_whitespace() {
            let (value, mult) = match token.split_once('^') {
                Some((v, m)) => (v, m),
                None => (token, "1"),
            };
            let value: i64 = value.parse().map_err(|_| err("expected an integer part"))?;
            let mult: i64 = mult.parse().map_err(|_| err("expected an integer multiplicity"))?;
            if mult < 0 {
                return Err(err("negative multiplicity"));
            }
            parts.extend(std::iter::repeat(value).take(mult as usize));
            if value <= 0 {
                return Err(Error::NonPositivePart(value));
            }
        }
        Partition::try_from_parts(&parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Contents `j - i` of the cells of a Young diagram, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentList {
    values: Vec<i64>,
}

impl ContentList {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn sorted(&self) -> Vec<i64> {
        let mut v = self.values.clone();
        v.sort_unstable();
        v
    }

    /// Multiset of contents as value -> multiplicity.
    pub fn histogram(&self) -> BTreeMap<i64, u32> {
        let mut h = BTreeMap::new();
        for &c in &self.values {
            *h.entry(c).or_insert(0) += 1;
        }
        h
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n), (n-1,1), ...`.
pub fn partitions(n: u32) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

/// All partitions of sizes `0..=n`, by size then reverse-lexicographic.
pub fn partitions_up_to(n: u32) -> impl Iterator<Item = Partition> {
    (0..=n).flat_map(partitions)
}

pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition { parts: current })
    }
}

fn successor(p: &[u32]) -> Option<Vec<u32>> {
    // Rightmost part > 1 gets decremented; the freed mass is redistributed greedily.
    let pos = p.iter().rposition(|&x| x > 1)?;
    let mut out = p[..pos].to_vec();
    let v = p[pos] - 1;
    let mut rest: u32 = p[pos..].iter().sum::<u32>();
    while rest > 0 {
        let take = v.min(rest);
        out.push(take);
        rest -= take;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_forms() {
        assert_eq!("[5,3,3,2]".parse::<Partition>().unwrap(), p(&[5, 3, 3, 2]));
        let m: Partition = "2^2 3^1".parse().unwrap();
        assert_eq!(m, p(&[3, 2, 2]));
        assert_eq!(m.size(), 7);
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("[ 1, 2 ]".parse::<Partition>().unwrap(), p(&[2, 1]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("[1,0]".parse::<Partition>(), Err(Error::NonPositivePart(0))));
        assert!(matches!("[3,-1]".parse::<Partition>(), Err(Error::NonPositivePart(-1))));
        assert!(matches!("0^2".parse::<Partition>(), Err(Error::NonPositivePart(0))));
        assert!(matches!("[1,2".parse::<Partition>(), Err(Error::Parse { .. })));
        assert!(matches!("a^2".parse::<Partition>(), Err(Error::Parse { .. })));
        assert!(matches!("".parse::<Partition>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn contents_of_example_diagram() {
        let c = p(&[5, 3, 3, 2]).contents();
        assert_eq!(c.sorted(), vec![-3, -2, -2, -1, -1, 0, 0, 0, 1, 1, 2, 3, 4]);
        assert!(Partition::empty().contents().is_empty());
        assert_eq!(p(&[1]).contents().values(), &[0]);
    }

    #[test]
    fn dim_ratio_values() {
        assert_eq!(Partition::empty().dim_ratio(), q(1, 1));
        assert_eq!(p(&[4]).dim_ratio(), q(1, 24));
        assert_eq!(p(&[2, 1]).dim_ratio(), q(1, 3));
        assert_eq!(p(&[3, 2]).dim(), BigInt::from(5));
    }

    #[test]
    fn aut_and_degeneracy() {
        assert_eq!(p(&[3, 2]).aut_order(), BigInt::from(1));
        assert_eq!(p(&[2, 2, 2]).aut_order(), BigInt::from(6));
        assert_eq!(p(&[1, 1, 2, 2]).parts(), &[2, 2, 1, 1]);
        assert_eq!(p(&[1, 1, 2, 2]).aut_order(), BigInt::from(4));
        assert_eq!(p(&[1, 1, 1]).degeneracy(), 0);
        assert_eq!(p(&[2, 1, 1, 1]).degeneracy(), 1);
        assert_eq!(p(&[5, 3, 3, 2]).degeneracy(), 9);
    }

    #[test]
    fn reverse_lex_order() {
        let all: Vec<String> = partitions(4).map(|p| p.to_string()).collect();
        assert_eq!(all, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        assert_eq!(partitions(0).collect::<Vec<_>>(), vec![Partition::empty()]);
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn content_sum_matches_closed_form() {
        for lam in partitions_up_to(9) {
            assert_eq!(lam.contents().sum(), lam.content_sum(), "{lam}");
        }
    }

    #[test]
    fn dims_are_integers_and_burnside() {
        for n in 0..=10u32 {
            for lam in partitions(n) {
                let r = lam.dim_ratio() * BigRational::from_integer(factorial(n));
                assert!(r.is_integer() && r > BigRational::zero(), "{lam}");
            }
        }
        for n in 0..=8u32 {
            let total: BigInt = partitions(n).map(|l| l.dim().pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn conjugate_negates_contents() {
        for lam in partitions_up_to(8) {
            let mut neg: Vec<i64> = lam.contents().values().iter().map(|c| -c).collect();
            neg.sort_unstable();
            assert_eq!(lam.conjugate().contents().sorted(), neg);
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=8u32 {
            let total: BigInt = partitions(n).map(|m| m.class_size()).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn display_round_trip() {
        for lam in partitions_up_to(6) {
            assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam);
            if !lam.is_empty() {
                assert_eq!(lam.to_multiplicative().parse::<Partition>().unwrap(), lam);
            }
        }
    }
}
