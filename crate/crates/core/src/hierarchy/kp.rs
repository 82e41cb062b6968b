//! Differential equations in derivative shorthand.
//!
//! An equation is written `F[2^2] = F[1^1 3^1] - 1/2 F[1^2]^2 - 1/12 F[1^4]`,
//! where `F[λ]` is the derivative of `F` along `p_λ` (multiplicative notation)
//! and `hbar^k` may appear as a factor. A second unknown is written `G[λ]`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::report::ResidualReport;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::series::{Monomial, Series, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub hbar: i32,
    /// `(unknown, derivative, power)` with unknown 0 for `F` and 1 for `G`.
    pub factors: Vec<(usize, Partition, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub id: String,
    /// `LHS − RHS`, as a sum of terms.
    pub terms: Vec<Term>,
}

impl Equation {
    pub fn parse(id: &str, text: &str) -> Result<Equation> {
        let bad = |why: &str| Error::InvalidArgument(format!("equation {id}: {why}"));
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| bad("missing '='"))?;
        let mut terms = parse_side(lhs).map_err(|e| bad(&e))?;
        for mut t in parse_side(rhs).map_err(|e| bad(&e))? {
            t.coeff = -t.coeff;
            terms.push(t);
        }
        Ok(Equation { id: id.to_string(), terms })
    }

    /// Largest total derivative weight.
    pub fn weight(&self) -> i64 {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|(_, d, _)| d.size() as i64))
            .max()
            .unwrap_or(0)
    }

    /// `LHS − RHS` evaluated on the unknowns.
    pub fn residual(&self, unknowns: &[&Series]) -> Result<ResidualReport> {
        let mut cache: HashMap<(usize, Partition), Series> = HashMap::new();
        let mut total: Option<Series> = None;
        for t in &self.terms {
            let mut prod: Option<Series> = None;
            for (u, lam, k) in &t.factors {
                let f = unknowns.get(*u).ok_or_else(|| Error::InvalidArgument(format!("equation {} needs {} unknowns", self.id, u + 1)))?;
                let d = cache.entry((*u, lam.clone())).or_insert_with(|| f.d_p_multi(lam.parts())).pow(*k);
                prod = Some(match prod {
                    None => d,
                    Some(p) => &p * &d,
                });
            }
            let mut s = prod.unwrap_or_else(|| Series::one(unknowns[0].truncation().clone())).scale(&t.coeff);
            if t.hbar != 0 {
                s = s.mul_monomial(&Monomial::var_pow(Var::hbar(), t.hbar));
            }
            total = Some(match total {
                None => s,
                Some(acc) => &acc + &s,
            });
        }
        let residual = total.unwrap_or_else(|| Series::zero(unknowns[0].truncation().clone()));
        let w = residual.truncation().weight();
        Ok(ResidualReport::new(self.id.clone(), residual, w))
    }
}

fn parse_side(text: &str) -> std::result::Result<Vec<Term>, String> {
    let mut terms = Vec::new();
    let mut sign = BigRational::one();
    let mut current: Option<Term> = None;
    let mut rest = text.trim();
    let new_term = |sign: &BigRational| Term { coeff: sign.clone(), hbar: 0, factors: Vec::new() };
    while !rest.is_empty() {
        let c = rest.chars().next().unwrap();
        if c == '+' || c == '-' {
            if let Some(t) = current.take() {
                terms.push(t);
            }
            sign = if c == '-' { -BigRational::one() } else { BigRational::one() };
            rest = rest[1..].trim_start();
            continue;
        }
        let term = current.get_or_insert_with(|| new_term(&sign));
        if let Some(after) = rest.strip_prefix("hbar^") {
            let end = after.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(after.len());
            term.hbar += after[..end].parse::<i32>().map_err(|_| "bad hbar power")?;
            rest = after[end..].trim_start();
        } else if rest.starts_with("F[") || rest.starts_with("G[") {
            let unknown = if c == 'F' { 0 } else { 1 };
            let close = rest.find(']').ok_or("unclosed '['")?;
            let lam: Partition = rest[2..close].parse().map_err(|e: Error| e.to_string())?;
            rest = &rest[close + 1..];
            let mut power = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let end = after.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(after.len());
                power = after[..end].parse::<u32>().map_err(|_| "bad power")?;
                rest = &after[end..];
            }
            term.factors.push((unknown, lam, power));
            rest = rest.trim_start();
        } else if c.is_ascii_digit() {
            let end = rest.find(|ch: char| !(ch.is_ascii_digit() || ch == '/')).unwrap_or(rest.len());
            let q: BigRational = rest[..end].parse().map_err(|_| format!("bad number {:?}", &rest[..end]))?;
            term.coeff *= q;
            rest = rest[end..].trim_start();
        } else {
            return Err(format!("unexpected {:?}", rest));
        }
    }
    if let Some(t) = current {
        terms.push(t);
    }
    if terms.is_empty() {
        return Err("empty side".into());
    }
    Ok(terms.into_iter().filter(|t| !t.coeff.is_zero()).collect())
}

/// The KP equations of weights 4, 5 and 6 as `(id, shorthand)`.
pub const KP_EQUATIONS: [(&str, &str); 4] = [
    ("kp.4", "F[2^2] = F[1^1 3^1] - 1/2 F[1^2]^2 - 1/12 F[1^4]"),
    ("kp.5a", "F[2^1 3^1] = -F[1^2] F[1^1 2^1] + F[1^1 4^1] - 1/6 F[1^3 2^1]"),
    (
        "kp.6a",
        "F[2^1 4^1] = F[1^1 5^1] - 1/2 F[1^1 2^1]^2 - F[1^2] F[1^1 3^1] + 1/8 F[1^3]^2 + 1/12 F[1^2] F[1^4] - 1/4 F[1^3 3^1] + 1/120 F[1^6]",
    ),
    (
        "kp.6b",
        "F[3^2] = 1/3 F[1^2]^3 - F[1^1 2^1]^2 - F[1^2] F[1^1 3^1] + F[1^1 5^1] + 1/4 F[1^3]^2 + 1/3 F[1^2] F[1^4] - 1/3 F[1^3 3^1] + 1/45 F[1^6]",
    ),
];

pub const DEFORMED_KP: (&str, &str) = ("kp.deformed", "F[2^2] = F[1^1 3^1] - 1/2 F[1^2]^2 - 1/12 hbar^2 F[1^4]");
pub const DISPERSIONLESS_KP: (&str, &str) = ("kp.dispersionless", "F[2^2] = F[1^1 3^1] - 1/2 F[1^2]^2");
/// `F = H₀`, `G = H₁`.
pub const H1_LINEAR: (&str, &str) = ("kp.h1", "G[2^2] = G[1^1 3^1] - F[1^2] G[1^2] - 1/12 F[1^4]");

pub fn kp_equations() -> Vec<Equation> {
    KP_EQUATIONS.iter().map(|(id, text)| Equation::parse(id, text).expect("built-in equation parses")).collect()
}

/// The KP equations of weight at most `upto_weight`, evaluated on `F`.
///
/// Each residual is exact through weight `N − w` for an equation of weight `w`;
/// `N ≥ upto_weight + 2` is required so every residual covers weights 0..2.
pub fn kp_residuals(f: &Series, upto_weight: i64) -> Result<Vec<ResidualReport>> {
    let n = f.truncation().weight();
    if !(4..=6).contains(&upto_weight) {
        return Err(Error::InvalidArgument(format!("KP equations exist for weights 4..=6, asked for {upto_weight}")));
    }
    if n < upto_weight + 2 {
        return Err(Error::InsufficientTruncation(format!("weight {n} is below {} for equations up to weight {upto_weight}", upto_weight + 2)));
    }
    kp_equations().into_iter().filter(|e| e.weight() <= upto_weight).map(|e| e.residual(&[f])).collect()
}

/// Id lookup over every built-in single-unknown or two-unknown equation.
pub fn equation_by_id(id: &str) -> Option<Equation> {
    KP_EQUATIONS
        .iter()
        .chain([&DEFORMED_KP, &DISPERSIONLESS_KP, &H1_LINEAR])
        .find(|(i, _)| *i == id)
        .map(|(i, t)| Equation::parse(i, t).expect("built-in equation parses"))
}

fn require(f: &Series, margin: i64, what: &str) -> Result<()> {
    if f.truncation().weight() < margin {
        return Err(Error::InsufficientTruncation(format!("{what} needs weight at least {margin}")));
    }
    Ok(())
}

/// The first KP equation with the `ℏ²/12` dispersion term.
pub fn deformed_kp1_residual(fh: &Series) -> Result<ResidualReport> {
    require(fh, 4, DEFORMED_KP.0)?;
    equation_by_id(DEFORMED_KP.0).expect("built in").residual(&[fh])
}

pub fn dispersionless_residual(f0: &Series) -> Result<ResidualReport> {
    require(f0, 4, DISPERSIONLESS_KP.0)?;
    equation_by_id(DISPERSIONLESS_KP.0).expect("built in").residual(&[f0])
}

/// The linear equation for the genus-one part given the genus-zero part.
pub fn h1_linear_residual(f0: &Series, f1: &Series) -> Result<ResidualReport> {
    require(f0, 4, H1_LINEAR.0)?;
    require(f1, 4, H1_LINEAR.0)?;
    equation_by_id(H1_LINEAR.0).expect("built in").residual(&[f0, f1])
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::series::{int, Aux, Truncation};
    use crate::tau::{named_params, orlov_shcherbin_log, Family};

    #[test]
    fn parses_shorthand() {
        let eqs = kp_equations();
        assert_eq!(eqs.iter().map(Equation::weight).collect::<Vec<_>>(), vec![4, 5, 6, 6]);
        assert_eq!(eqs[0].terms.len(), 4);
        assert_eq!(eqs[3].terms.len(), 9);
        assert!(Equation::parse("x", "F[2^2]").is_err());
        assert!(Equation::parse("x", "F[2^2] = F[0]").is_err());
    }

    #[test]
    fn p1_passes_and_p1_squared_fails() {
        let t = Truncation::new(8);
        let p1 = Series::var(Var::p(1), t.clone());
        assert!(kp_residuals(&p1, 6).unwrap().iter().all(|r| r.pass));
        let r = &kp_residuals(&p1.pow(2), 4).unwrap()[0];
        assert_eq!(r.residual, Series::constant(int(2), Truncation::new(4)));
    }

    #[test]
    fn hurwitz_solves_kp() {
        let t = Truncation::new(8).with_aux(Aux::U, 3);
        let y = named_params(Family::Hurwitz, &BTreeMap::new(), &t).unwrap();
        let h = orlov_shcherbin_log(&y, &t).unwrap();
        for r in kp_residuals(&h, 6).unwrap() {
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn insufficient_truncation() {
        let t = Truncation::new(6);
        assert!(kp_residuals(&Series::zero(t), 6).is_err());
    }
}
