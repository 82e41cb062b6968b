use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Auxiliary (non-time) parameters. Only [`Aux::Hbar`] may carry negative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Aux {
    U,
    /// `u_1, ..., u_m` of the generalized Hurwitz family.
    Ui(u8),
    Hbar,
    V,
    W,
    Z,
    S,
    Y,
}

impl Aux {
    pub fn name(&self) -> String {
        match self {
            Aux::U => "u".into(),
            Aux::Ui(i) => format!("u{i}"),
            Aux::Hbar => "hbar".into(),
            Aux::V => "v".into(),
            Aux::W => "w".into(),
            Aux::Z => "z".into(),
            Aux::S => "s".into(),
            Aux::Y => "y".into(),
        }
    }

    pub fn allows_negative(&self) -> bool {
        matches!(self, Aux::Hbar)
    }
}

impl fmt::Display for Aux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Aux {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "u" => Aux::U,
            "hbar" | "ℏ" => Aux::Hbar,
            "v" => Aux::V,
            "w" => Aux::W,
            "z" => Aux::Z,
            "s" => Aux::S,
            "y" => Aux::Y,
            _ => match s.strip_prefix('u').and_then(|i| i.parse::<u8>().ok()) {
                Some(i) if i >= 1 => Aux::Ui(i),
                _ => return Err(Error::InvalidArgument(format!("unknown aux variable {s:?}"))),
            },
        })
    }
}

/// A series variable: time variables `p_i`, `q_i` (weight `i`) or an aux parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    P(u16),
    Q(u16),
    Aux(Aux),
}

impl Var {
    /// Grading weight: `i` for `p_i`/`q_i`, zero for aux parameters.
    pub fn weight(&self) -> i64 {
        match self {
            Var::P(i) | Var::Q(i) => *i as i64,
            Var::Aux(_) => 0,
        }
    }

    pub const fn p(i: u16) -> Var {
        Var::P(i)
    }

    pub const fn q(i: u16) -> Var {
        Var::Q(i)
    }

    pub const fn u() -> Var {
        Var::Aux(Aux::U)
    }

    pub const fn hbar() -> Var {
        Var::Aux(Aux::Hbar)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::P(i) => write!(f, "p{i}"),
            Var::Q(i) => write!(f, "q{i}"),
            Var::Aux(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let index = |rest: &str| -> Option<u16> { rest.parse::<u16>().ok().filter(|&i| i >= 1) };
        if let Some(i) = s.strip_prefix('p').and_then(index) {
            return Ok(Var::P(i));
        }
        if let Some(i) = s.strip_prefix('q').and_then(index) {
            return Ok(Var::Q(i));
        }
        s.parse().map(Var::Aux)
    }
}

/// Product of variable powers, stored sorted by variable with no zero exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[(Var, i32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut exps = SmallVec::new();
        if e != 0 {
            exps.push((v, e));
        }
        Monomial { exps }
    }

    /// Collects `(var, exponent)` pairs, merging repeats and rejecting negative
    /// exponents on anything but `hbar`.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Result<Self> {
        let mut exps: SmallVec<[(Var, i32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            match exps.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 += e,
                None => exps.push((v, e)),
            }
        }
        exps.retain(|(_, e)| *e != 0);
        exps.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        for &(v, e) in &exps {
            if e < 0 && v != Var::hbar() {
                return Err(Error::NegativeExponent(v.to_string()));
            }
        }
        Ok(Monomial { exps })
    }

    /// `p_{mu_1} p_{mu_2} ...`
    pub fn p_mu(mu: &crate::Partition) -> Self {
        Self::power_product(mu, Var::P)
    }

    /// `q_{mu_1} q_{mu_2} ...`
    pub fn q_mu(mu: &crate::Partition) -> Self {
        Self::power_product(mu, Var::Q)
    }

    fn power_product(mu: &crate::Partition, family: fn(u16) -> Var) -> Self {
        let pairs = mu.multiplicities().into_iter().map(|(i, m)| (family(i as u16), m as i32));
        Monomial::from_pairs(pairs).expect("positive exponents")
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.exps.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    /// Weighted degree in the `p` and `q` variables.
    pub fn weight(&self) -> i64 {
        self.exps.iter().map(|(v, e)| v.weight() * *e as i64).sum()
    }

    /// Weighted degree counting only `p` variables.
    pub fn p_weight(&self) -> i64 {
        self.exps
            .iter()
            .filter(|(v, _)| matches!(v, Var::P(_)))
            .map(|(v, e)| v.weight() * *e as i64)
            .sum()
    }

    /// Weighted degree counting only `q` variables.
    pub fn q_weight(&self) -> i64 {
        self.weight() - self.p_weight()
    }

    /// Sum of aux exponents.
    pub fn aux_degree(&self) -> i64 {
        self.exps
            .iter()
            .filter(|(v, _)| matches!(v, Var::Aux(_)))
            .map(|(_, e)| *e as i64)
            .sum()
    }

    pub fn has_negative(&self) -> bool {
        self.exps.iter().any(|(_, e)| *e < 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut exps = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        exps.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial { exps }
    }

    /// Exponent of `v` replaced by `e` (removed when `e == 0`).
    pub fn with_exponent(&self, v: Var, e: i32) -> Monomial {
        let mut exps: SmallVec<[(Var, i32); 4]> = self.exps.iter().copied().filter(|(w, _)| *w != v).collect();
        if e != 0 {
            let pos = exps.iter().position(|(w, _)| *w > v).unwrap_or(exps.len());
            exps.insert(pos, (v, e));
        }
        Monomial { exps }
    }

    pub fn without(&self, v: Var) -> Monomial {
        self.with_exponent(v, 0)
    }

    pub(crate) fn map_vars(&self, f: impl Fn(Var) -> Var) -> Result<Monomial> {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    /// Graded by weight, then aux degree, then lexicographic on the exponent list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.aux_degree().cmp(&other.aux_degree()))
            .then_with(|| self.exps.as_slice().cmp(other.exps.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `p1^2*p2*u`; `1` is the empty monomial.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Monomial::one());
        }
        let mut pairs = Vec::new();
        for factor in s.split('*') {
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim().parse::<i32>().map_err(|_| Error::InvalidArgument(format!("bad exponent in {factor:?}")))?;
                    (n.trim(), e)
                }
                None => (factor.trim(), 1),
            };
            pairs.push((name.parse::<Var>()?, e));
        }
        Monomial::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let m: Monomial = "u*p2*p1^2".parse().unwrap();
        assert_eq!(m.to_string(), "p1^2*p2*u");
        assert_eq!(m.weight(), 4);
        assert_eq!(m.aux_degree(), 1);
        assert!("p1^-1".parse::<Monomial>().is_err());
        assert!("hbar^-2".parse::<Monomial>().is_ok());
        assert_eq!("1".parse::<Monomial>().unwrap(), Monomial::one());
    }

    #[test]
    fn multiplication_merges() {
        let a: Monomial = "p1*u".parse().unwrap();
        let b: Monomial = "p1*p3*hbar^-2".parse().unwrap();
        assert_eq!(a.mul(&b).to_string(), "p1^2*p3*u*hbar^-2");
        let c: Monomial = "hbar^2".parse().unwrap();
        assert_eq!(b.mul(&c).to_string(), "p1*p3");
    }

    #[test]
    fn ordering_is_graded() {
        let mut v: Vec<Monomial> = ["p3", "p1", "1", "p1^2", "p2", "u"].iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|m| m.to_string()).collect();
        assert_eq!(s, ["1", "u", "p1", "p1^2", "p2", "p3"]);
    }
}
