//! exp, log and reciprocal by graded recursion.
//!
//! Each routine splits its argument into homogeneous pieces for a grading in
//! which the non-constant part has strictly positive degree, then solves the
//! usual Euler-operator recursion degree by degree. When the weight-zero part
//! is already constant, the p/q weight is used; otherwise the grading also
//! counts aux degrees, which must then be bounded.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{int, Monomial, Series, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
enum Grading {
    Weight,
    Total,
}

impl Grading {
    fn degree(self, m: &Monomial) -> i64 {
        match self {
            Grading::Weight => m.weight(),
            Grading::Total => m.weight() + m.aux_degree(),
        }
    }
}

impl Series {
    /// Picks a grading for a series without constant term and returns it with
    /// the largest degree any result term can have.
    fn grading(&self) -> Result<(Grading, i64)> {
        let max_weight = self.terms.keys().map(Monomial::weight).max().unwrap_or(0);
        let weight_cap = if max_weight > 0 {
            if !self.trunc.weight_is_bounded() {
                return Err(Error::InsufficientTruncation("weight bound required for exp/log".into()));
            }
            self.trunc.weight
        } else {
            0
        };
        if self.terms.keys().all(|m| m.weight() > 0) {
            return Ok((Grading::Weight, weight_cap));
        }
        let mut cap = weight_cap;
        for v in self.variables() {
            if let Var::Aux(a) = v {
                if self.terms.keys().any(|m| m.exponent(v) < 0) {
                    return Err(Error::NegativeExponent(v.to_string()));
                }
                match self.trunc.aux_bound(a) {
                    Some(b) => cap += b,
                    None => return Err(Error::UnboundedAux(a.to_string())),
                }
            }
        }
        Ok((Grading::Total, cap))
    }

    fn pieces(&self, g: Grading, cap: i64) -> Vec<Series> {
        let mut out = vec![Series::zero(self.trunc.clone()); cap as usize + 1];
        for (m, c) in &self.terms {
            let d = g.degree(m);
            debug_assert!(d >= 1 && d <= cap);
            out[d as usize].terms.insert(m.clone(), c.clone());
        }
        out
    }

    fn without_constant(&self) -> Series {
        let mut rest = self.clone();
        rest.terms.remove(&Monomial::one());
        rest
    }

    /// `exp(a)` for `a` with zero constant term.
    pub fn exp(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(Error::ConstantTerm { op: "exp", expected: "0".into(), found: c0.to_string() });
        }
        let one = Series::one(self.trunc.clone());
        if self.is_zero() {
            return Ok(one);
        }
        let (g, cap) = self.grading()?;
        let x = self.pieces(g, cap);
        let mut a: Vec<Series> = vec![one];
        for n in 1..=cap as usize {
            let mut acc = Series::zero(self.trunc.clone());
            for j in 1..=n {
                if x[j].is_zero() || a[n - j].is_zero() {
                    continue;
                }
                acc += &(&x[j] * &a[n - j]).scale(&int(j as i64));
            }
            a.push(acc.scale(&BigRational::new(1.into(), (n as i64).into())));
        }
        Ok(sum(a, &self.trunc))
    }

    /// `log(a)` for `a` with constant term 1.
    pub fn log(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::ConstantTerm { op: "log", expected: "1".into(), found: c0.to_string() });
        }
        let rest = self.without_constant();
        if rest.is_zero() {
            return Ok(Series::zero(self.trunc.clone()));
        }
        let (g, cap) = rest.grading()?;
        let a = rest.pieces(g, cap);
        // lp[n] is the degree-n piece of E(log a), E the Euler operator of the grading.
        let mut lp: Vec<Series> = vec![Series::zero(self.trunc.clone())];
        for n in 1..=cap as usize {
            let mut acc = a[n].scale(&int(n as i64));
            for j in 1..n {
                if a[j].is_zero() || lp[n - j].is_zero() {
                    continue;
                }
                acc -= &(&a[j] * &lp[n - j]);
            }
            lp.push(acc);
        }
        let pieces = lp.into_iter().enumerate().skip(1).map(|(n, s)| s.scale(&BigRational::new(1.into(), (n as i64).into())));
        Ok(sum(pieces, &self.trunc))
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn recip(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let rest = self.without_constant();
        if rest.is_zero() {
            return Ok(Series::constant(inv0, self.trunc.clone()));
        }
        let (g, cap) = rest.grading()?;
        let a = rest.pieces(g, cap);
        let minus_inv0 = -inv0.clone();
        let mut b: Vec<Series> = vec![Series::constant(inv0, self.trunc.clone())];
        for n in 1..=cap as usize {
            let mut acc = Series::zero(self.trunc.clone());
            for j in 1..=n {
                if a[j].is_zero() || b[n - j].is_zero() {
                    continue;
                }
                acc += &(&a[j] * &b[n - j]);
            }
            b.push(acc.scale(&minus_inv0));
        }
        Ok(sum(b, &self.trunc))
    }

    /// `self / other` via the reciprocal of `other`.
    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self * &other.recip()?)
    }
}

fn sum(parts: impl IntoIterator<Item = Series>, trunc: &super::Truncation) -> Series {
    let mut out = Series::zero(trunc.clone());
    for p in parts {
        for (m, c) in p.terms {
            out.terms.insert(m, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{rat, Aux, Truncation};
    use super::*;

    fn p(i: u16, t: &Truncation) -> Series {
        Series::var(Var::p(i), t.clone())
    }

    #[test]
    fn exp_of_p1() {
        let t = Truncation::new(5);
        let e = p(1, &t).exp().unwrap();
        for k in 0..=5i64 {
            let m = Monomial::var_pow(Var::p(1), k as i32);
            let fact: i64 = (1..=k).product();
            assert_eq!(e.coefficient(&m).unwrap(), rat(1, fact));
        }
        assert_eq!(e.len(), 6);
    }

    #[test]
    fn log_exp_round_trip() {
        let t = Truncation::new(6).with_aux(Aux::U, 3);
        let x = &p(1, &t) + &p(2, &t);
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
        let y = &(&p(1, &t) * &Series::var(Var::u(), t.clone())) + &Series::var(Var::u(), t.clone());
        assert_eq!(y.exp().unwrap().log().unwrap(), y);
    }

    #[test]
    fn constant_term_errors() {
        let t = Truncation::new(3);
        assert!(Series::one(t.clone()).exp().is_err());
        assert!(p(1, &t).log().is_err());
        assert!(p(1, &t).recip().is_err());
        assert!(Series::one(t.clone()).log().unwrap().is_zero());
        assert_eq!(Series::zero(t.clone()).exp().unwrap(), Series::one(t));
    }

    #[test]
    fn unbounded_aux_is_rejected() {
        let t = Truncation::new(3);
        assert!(Series::var(Var::u(), t).exp().is_err());
    }

    #[test]
    fn reciprocal() {
        let t = Truncation::new(6).with_aux(Aux::U, 4);
        let a = &Series::constant(int(2), t.clone()) + &(&p(1, &t) + &Series::var(Var::u(), t.clone()));
        let r = a.recip().unwrap();
        assert_eq!(&a * &r, Series::one(t));
    }
}
