//! Two-time tau-functions `τ_n(p;q) = r₀(n) Σ_μ r_μ(n) s_μ(p) s_μ(q)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::orlov_shcherbin::sum_all;
use super::params::{named_params, ContentWeights, Family, TauParams};
use crate::error::{Error, Result};
use crate::partition::partitions_up_to;
use crate::schur::{schur, schur_q};
use crate::series::{Aux, Monomial, Series, Truncation, Var};

/// Largest `|n|` accepted for the charge.
pub const MAX_CHARGE: i64 = 3;

/// `r₀(n)`: `Π_{j=1}^{n−1} y_j^{n−j}` for `n ≥ 0`, `Π_{j=n+1}^{0} y_j^{j−n}` for `n < 0`.
pub fn r0(n: i64, weights: &ContentWeights, trunc: &Truncation) -> Result<Series> {
    let mut out = Series::one(trunc.clone());
    let factors: Vec<(i64, i64)> = if n >= 0 { (1..n).map(|j| (j, n - j)).collect() } else { (n + 1..=0).map(|j| (j, j - n)).collect() };
    for (j, e) in factors {
        out = &out * &weights.get(j)?.pow(e as u32);
    }
    Ok(out)
}

/// `τ_n` under a joint p/q weight bound, so partitions up to half the bound
/// contribute. With `marker = Some(a)`, each summand also carries `a^{|μ|}`.
pub fn toda_tau(n: i64, y: &TauParams, trunc: &Truncation, marker: Option<Aux>) -> Result<Series> {
    if n.abs() > MAX_CHARGE {
        return Err(Error::InvalidArgument(format!("charge {n} outside ±{MAX_CHARGE}")));
    }
    let half = (trunc.weight() / 2).max(0);
    let reach = half + n.abs() + 1;
    let weights = y.table(-reach, reach, trunc)?;
    let parts: Vec<_> = partitions_up_to(half as u32).collect();
    let terms: Result<Vec<Series>> = parts
        .into_par_iter()
        .map(|mu| {
            let mut r = weights.product(&mu, n)?;
            if let Some(a) = marker {
                r = r.mul_monomial(&Monomial::var_pow(Var::Aux(a), mu.size() as i32));
            }
            Ok(&(&r * &schur(&mu, trunc)) * &schur_q(&mu, trunc))
        })
        .collect();
    let sum = sum_all(terms?, trunc);
    Ok(&r0(n, &weights, trunc)? * &sum)
}

/// The functions `τ_n` for a fixed weight system.
#[derive(Clone, Debug)]
pub struct TodaFamily {
    params: TauParams,
    trunc: Truncation,
    marker: Option<Aux>,
}

impl TodaFamily {
    pub fn new(params: TauParams, trunc: Truncation) -> Self {
        TodaFamily { params, trunc, marker: None }
    }

    pub fn with_marker(mut self, a: Aux) -> Self {
        self.marker = Some(a);
        self
    }

    pub fn params(&self) -> &TauParams {
        &self.params
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn member(&self, n: i64) -> Result<Series> {
        toda_tau(n, &self.params, &self.trunc, self.marker)
    }
}

/// `D∘ = Σ_μ v^{|μ|} e^{u f₂(μ)} s_μ(p) s_μ(q)`, with `f₂(μ)` the content sum.
pub fn double_hurwitz_tau(trunc: &Truncation) -> Result<Series> {
    let y = named_params(Family::Hurwitz, &BTreeMap::new(), trunc)?;
    toda_tau(0, &y, trunc, Some(Aux::V))
}

/// `N(u;p;q) = log Σ_μ Π_{w∈μ}(u + c(w)) s_μ(p) s_μ(q)`.
pub fn n_function(trunc: &Truncation) -> Result<Series> {
    let y = named_params(Family::NFunction, &BTreeMap::new(), trunc)?;
    // The constant term of the sum is 1 and u enters polynomially, so log is graded by weight.
    toda_tau(0, &y, trunc, None)?.log()
}
