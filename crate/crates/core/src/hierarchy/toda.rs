//! `∂² log τ_n / ∂p₁∂q₁ = τ_{n−1} τ_{n+1} / τ_n²`.

use num_traits::Zero;

use super::report::ResidualReport;
use crate::error::{Error, Result};
use crate::series::{Series, Var};
use crate::tau::TodaFamily;

/// Residual of the Toda equation for three consecutive members.
pub fn toda_residual_of(prev: &Series, cur: &Series, next: &Series) -> Result<ResidualReport> {
    let c0 = cur.constant_term();
    if c0.is_zero() {
        return Err(Error::NotInvertible);
    }
    let log = cur.scale(&c0.recip()).log()?;
    let lhs = log.d(Var::P(1), 1).d(Var::Q(1), 1);
    let inv = cur.recip()?;
    let rhs = &(prev * next) * &(&inv * &inv);
    let residual = &lhs - &rhs;
    let w = residual.truncation().weight();
    Ok(ResidualReport::new("toda.p1q1", residual, w))
}

pub fn toda_residual(family: &TodaFamily, n: i64) -> Result<ResidualReport> {
    toda_residual_of(&family.member(n - 1)?, &family.member(n)?, &family.member(n + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, Monomial, Truncation};
    use crate::tau::trivial_params;

    #[test]
    fn trivial_family() {
        let t = Truncation::new(8);
        let fam = TodaFamily::new(trivial_params(&t), t);
        assert!(toda_residual(&fam, 0).unwrap().pass);
    }

    #[test]
    fn perturbation_fails() {
        let t = Truncation::new(8);
        let fam = TodaFamily::new(trivial_params(&t), t.clone());
        let mut cur = fam.member(0).unwrap();
        cur.add_term(Monomial::var(Var::P(1)).mul(&Monomial::var_pow(Var::Q(1), 2)), int(1));
        let r = toda_residual_of(&fam.member(-1).unwrap(), &cur, &fam.member(1).unwrap()).unwrap();
        assert!(!r.pass);
    }
}
