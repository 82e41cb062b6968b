//! The map generating function `R = N(u = w; p; q₂ = z, q_{i≠2} = 0)` with
//! `N = log Σ_μ Π_{w∈μ}(u + c(w)) s_μ(p) s_μ(q)`.
//!
//! By the character expansion, `N` is the connected part of
//! `Σ_n (1/n!) Σ_{φασ=id} u^{#cycles(φ)} p_{type σ} q_{type α}`, so the
//! coefficient of `p_κ w^m z^n` in `R` is the weighted number of connected maps
//! with `n` edges, vertex degrees `κ` and `m` faces.

use rayon::prelude::*;

use crate::error::Result;
use crate::partition::partitions;
use crate::schur::schur;
use crate::series::{Aux, Monomial, Series, Truncation, Var};
use crate::tau::TauParams;

/// `R` through `max_edges` edges (`z`-degree) and vertex weight `2·max_edges`.
pub fn map_series(max_edges: u32) -> Result<Series> {
    let trunc = Truncation::new(2 * max_edges as i64).with_aux(Aux::Z, max_edges as i64);
    let y = TauParams::Phi(vec![Series::var(Var::Aux(Aux::W), trunc.clone()), Series::one(trunc.clone())]);
    let weights = y.table(-(2 * max_edges as i64), 2 * max_edges as i64, &trunc)?;
    let mus: Vec<_> = (0..=max_edges).flat_map(|k| partitions(2 * k)).collect();
    let terms: Result<Vec<Series>> = mus
        .into_par_iter()
        .map(|mu| {
            let k = mu.size() / 2;
            let s = schur(&mu, &trunc);
            // s_μ(q) at q₂ = z, other q_i = 0
            let c = s.coefficient(&Monomial::var_pow(Var::P(2), k as i32))?;
            let zk = Monomial::var_pow(Var::Aux(Aux::Z), k as i32);
            Ok((&weights.product(&mu, 0)? * &s).scale(&c).mul_monomial(&zk))
        })
        .collect();
    let mut total = Series::zero(trunc.clone());
    for t in terms? {
        total += &t;
    }
    total.log()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_rational::BigRational;
    use num_traits::Zero;

    use super::*;
    use crate::maps::oracle::map_census;
    use crate::symmetric_group::Budget;

    #[test]
    fn coefficients_count_connected_maps() {
        let r = map_series(3).unwrap();
        for edges in 1..=3usize {
            // R only sees the number of faces
            let mut by_faces: BTreeMap<Monomial, BigRational> = BTreeMap::new();
            for ((v, f), c) in map_census(edges, None, None, true, Budget::default()).unwrap() {
                let m = Monomial::p_mu(&v)
                    .mul(&Monomial::var_pow(Var::Aux(Aux::W), f.length() as i32))
                    .mul(&Monomial::var_pow(Var::Aux(Aux::Z), edges as i32));
                *by_faces.entry(m).or_insert_with(BigRational::zero) += c;
            }
            let in_r = r.iter().filter(|(m, _)| m.exponent(Var::Aux(Aux::Z)) == edges as i32).count();
            assert_eq!(in_r, by_faces.len());
            for (m, c) in by_faces {
                assert_eq!(r.coefficient(&m).unwrap(), c, "{m:?}");
            }
        }
    }
}
