//! `Σ_μ y_μ (dim_μ/|μ|!) s_μ(p)`.

use rayon::prelude::*;

use super::params::TauParams;
use crate::error::Result;
use crate::partition::{partitions_up_to, Partition};
use crate::schur::schur;
use crate::series::{Series, Truncation};

/// Partitions of size at most the weight bound.
pub(crate) fn partitions_within(trunc: &Truncation) -> Vec<Partition> {
    let n = trunc.weight().clamp(0, 64) as u32;
    partitions_up_to(n).collect()
}

/// Sums a list of series under `trunc`.
pub(crate) fn sum_all(parts: Vec<Series>, trunc: &Truncation) -> Series {
    parts.into_par_iter().reduce(|| Series::zero(trunc.clone()), |a, b| &a + &b)
}

/// The Orlov–Shcherbin tau-function, summed over all `|μ| ≤ N`.
pub fn orlov_shcherbin_tau(y: &TauParams, trunc: &Truncation) -> Result<Series> {
    let n = trunc.weight().max(0);
    let weights = y.table(-n, n, trunc)?;
    let terms: Result<Vec<Series>> = partitions_within(trunc)
        .into_par_iter()
        .map(|mu| {
            let ymu = weights.product(&mu, 0)?;
            Ok((&ymu * &schur(&mu, trunc)).scale(&mu.dim_ratio()))
        })
        .collect();
    Ok(sum_all(terms?, trunc))
}

/// `log` of [`orlov_shcherbin_tau`], the connected generating function.
pub fn orlov_shcherbin_log(y: &TauParams, trunc: &Truncation) -> Result<Series> {
    orlov_shcherbin_tau(y, trunc)?.log()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::series::{rat, Aux, Var};
    use crate::tau::params::{named_params, trivial_params, Family};

    #[test]
    fn trivial_weights_give_exp_p1() {
        let t = Truncation::new(6);
        let tau = orlov_shcherbin_tau(&trivial_params(&t), &t).unwrap();
        assert_eq!(tau, Series::var(Var::p(1), t).exp().unwrap());
    }

    #[test]
    fn hurwitz_leading_terms() {
        let t = Truncation::new(4).with_aux(Aux::U, 4);
        let y = named_params(Family::Hurwitz, &BTreeMap::new(), &t).unwrap();
        let tau = orlov_shcherbin_tau(&y, &t).unwrap();
        assert_eq!(tau.coeff("p2*u").unwrap(), rat(1, 2));
        assert_eq!(tau.coeff("p1^2*u^2").unwrap(), rat(1, 4));
        let h = tau.log().unwrap();
        assert_eq!(h.coeff("p4*u^3").unwrap(), rat(2, 3));
    }
}
