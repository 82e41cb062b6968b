//! The bilinear residue identity
//! `Res_{z=0} exp{2Σ q_i z^{−i}/i} τ(p − q + [z]) τ(p + q − [z]) dz/z² = 0`,
//! where `p ± [z]` shifts `p_i` by `±z^i`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::report::ResidualReport;
use crate::error::{Error, Result};
use crate::series::{Aux, Monomial, Series, Var};

/// Coefficients of the given `q`-monomials in the residue, as series in `p`.
///
/// With `τ` known through weight `N` and a `q`-monomial of weight `Q`, the
/// coefficient is exact through `p`-weight `N − Q − 1`.
pub fn hirota_residual(tau: &Series, q_monomials: &[Monomial]) -> Result<Vec<ResidualReport>> {
    let n = tau.truncation().weight();
    let mut q_max = 0;
    for m in q_monomials {
        if m.iter().any(|(v, _)| !matches!(v, Var::Q(_))) || m.is_one() {
            return Err(Error::InvalidArgument(format!("{m} is not a monomial in q")));
        }
        q_max = q_max.max(m.weight());
    }
    if n < q_max + 1 {
        return Err(Error::InsufficientTruncation(format!("weight {n} cannot resolve q-weight {q_max}")));
    }
    let z_bound = q_max + 1;
    let trunc = tau.truncation().clone().with_aux(Aux::Z, z_bound).with_aux(Aux::S, q_max);
    let shift = |sign: i64| -> BTreeMap<Var, Series> {
        (1..=n as u16)
            .map(|i| {
                let mut s = Series::var(Var::P(i), trunc.clone());
                if (i as i64) <= q_max {
                    s.add_term(Monomial::var(Var::Q(i)), BigRational::from_integer((-sign).into()));
                }
                if (i as i64) <= z_bound {
                    s.add_term(Monomial::var_pow(Var::Aux(Aux::Z), i as i32), BigRational::from_integer(sign.into()));
                }
                (Var::P(i), s)
            })
            .collect()
    };
    let a = &tau.substitute(&shift(1), &trunc)? * &tau.substitute(&shift(-1), &trunc)?;
    // exp{2 Σ q_i s^i / i}, s = 1/z
    let mut x = Series::zero(trunc.clone());
    for i in 1..=q_max {
        let m = Monomial::var(Var::Q(i as u16)).mul(&Monomial::var_pow(Var::Aux(Aux::S), i as i32));
        x.add_term(m, BigRational::new(2.into(), i.into()));
    }
    let e = x.exp()?;
    let mut residue = Series::zero(trunc.clone());
    for k in 0..=q_max as i32 {
        residue += &(&e.aux_part(Aux::S, k) * &a.aux_part(Aux::Z, k + 1));
    }
    Ok(q_monomials
        .iter()
        .map(|qm| {
            let exact = n - qm.weight() - 1;
            let coeff = q_coefficient(&residue, qm, exact).with_truncation(tau.truncation().clone().with_weight(exact));
            ResidualReport::new(format!("hirota.{}", qm.to_string().replace('*', "")), coeff, exact)
        })
        .collect())
}

/// The coefficient of the `q`-monomial `qm`, keeping `p`-weight at most `w`.
fn q_coefficient(s: &Series, qm: &Monomial, w: i64) -> Series {
    let mut out = Series::zero(s.truncation().clone().with_weight(w));
    for (m, c) in s.iter() {
        let q_part: Vec<(Var, i32)> = m.iter().filter(|(v, _)| matches!(v, Var::Q(_))).collect();
        let rest: Vec<(Var, i32)> = m.iter().filter(|(v, _)| !matches!(v, Var::Q(_))).collect();
        if Monomial::from_pairs(q_part).ok().as_ref() == Some(qm) {
            let r = Monomial::from_pairs(rest).expect("subset of a valid monomial");
            if r.weight() <= w {
                out.add_term(r, c.clone());
            }
        }
    }
    out
}

/// `hirota.q3` for a tau-function.
pub fn hirota_q3(tau: &Series) -> Result<ResidualReport> {
    let mut r = hirota_residual(tau, &[Monomial::var(Var::Q(3))])?;
    Ok(r.remove(0))
}
