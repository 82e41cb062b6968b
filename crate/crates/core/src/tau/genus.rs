//! Genus expansion: `ℏ² log Σ_μ (Π φ(ℏc(w))) (dim_μ/|μ|!) s_μ(p₁/ℏ², p₂/ℏ³, …)`.

use num_traits::One;

use super::orlov_shcherbin::orlov_shcherbin_tau;
use super::params::TauParams;
use crate::error::{Error, Result};
use crate::series::{Aux, Series, Truncation, Var};

/// The genus expansion under `trunc`, whose `ℏ` bound `E` selects genera
/// `g ≤ E/2`. Every `ℏ` exponent is checked to be even and nonnegative.
pub fn genus_expansion(y: &TauParams, trunc: &Truncation) -> Result<Series> {
    let e = trunc.aux_bound(Aux::Hbar).ok_or_else(|| Error::UnboundedAux("hbar".into()))?;
    let d = y.phi().ok_or_else(|| Error::InvalidArgument("genus expansion needs weights in φ form".into()))?;
    if d.first().is_none_or(|d0| !(d0.len() == 1 && d0.constant_term().is_one())) {
        return Err(Error::InvalidArgument("genus expansion needs φ(0) = 1".into()));
    }
    let n = trunc.weight();
    // A term ℏ^a p_μ of the log ends at exponent a − |μ| − ℓ(μ) + 2 ≥ a − 2N + 2,
    // so a ≤ E + 2N − 2 covers every kept exponent.
    let inner_bound = e + 2 * n - 2;
    let inner = trunc.clone().with_aux(Aux::Hbar, inner_bound.max(0));
    let scaled = y.hbar_scaled(&inner)?;
    let log = orlov_shcherbin_tau(&scaled, &inner)?.log()?;
    let shifted = log.substitute_scaled(
        |v| match v {
            Var::P(i) => -(i as i64) - 1,
            _ => 0,
        },
        inner_bound + 2 * n + 2,
    )?;
    let hbar = Var::hbar();
    let mut out = Series::zero(trunc.clone());
    for (m, c) in shifted.iter() {
        let f = m.exponent(hbar) as i64 + 2;
        if f < 0 || f % 2 != 0 {
            return Err(Error::Validation(format!("hbar^{f} in the genus expansion at {}", m.without(hbar))));
        }
        if f <= e {
            out.add_term(m.with_exponent(hbar, f as i32), c.clone());
        }
    }
    Ok(out)
}

/// The coefficient of `ℏ^{2g}`.
pub fn genus_part(expansion: &Series, g: u32) -> Series {
    expansion.aux_part(Aux::Hbar, 2 * g as i32)
}
