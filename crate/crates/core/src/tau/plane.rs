//! Semi-infinite planes spanned by Laurent series `β_k(z) = z^{−k} + ⋯` and the
//! tau-function read off their Plücker coordinates.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::orlov_shcherbin::{partitions_within, sum_all};
use super::params::TauParams;
use crate::det::determinant;
use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::schur::schur;
use crate::series::{Series, Truncation};

/// Rows `β_1, …, β_K`, each known up to `z^{z_max}`. Rows past `K` are `z^{−k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPlane {
    rows: Vec<BTreeMap<i64, Series>>,
    z_max: i64,
}

impl LaurentPlane {
    /// `rows[k−1]` maps exponents of `z` to coefficients of `β_k`; exponents
    /// must lie in `[−k, z_max]`.
    pub fn new(rows: Vec<BTreeMap<i64, Series>>, z_max: i64) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            let k = i as i64 + 1;
            if let Some((&lo, _)) = row.iter().find(|(_, c)| !c.is_zero()) {
                if lo < -k {
                    return Err(Error::InvalidArgument(format!("row {k} has a term z^{lo} below z^-{k}")));
                }
            }
            if row.keys().any(|&e| e > z_max) {
                return Err(Error::InvalidArgument(format!("row {k} has terms above z^{z_max}")));
            }
        }
        Ok(LaurentPlane { rows, z_max })
    }

    /// `β_k = z^{−k}`.
    pub fn standard(k_rows: usize, z_max: i64, trunc: &Truncation) -> Self {
        let rows = (1..=k_rows as i64).map(|k| BTreeMap::from([(-k, Series::one(trunc.clone()))])).collect();
        LaurentPlane { rows, z_max }
    }

    /// `β_k = e^z z^{−k}`.
    pub fn exponential(k_rows: usize, z_max: i64, trunc: &Truncation) -> Self {
        let rows = (1..=k_rows as i64)
            .map(|k| {
                (0..=z_max + k)
                    .map(|i| {
                        let c = BigRational::new(1.into(), factorial(i as u32));
                        (i - k, Series::constant(c, trunc.clone()))
                    })
                    .collect()
            })
            .collect();
        LaurentPlane { rows, z_max }
    }

    pub fn rows(&self) -> &[BTreeMap<i64, Series>] {
        &self.rows
    }

    pub fn z_max(&self) -> i64 {
        self.z_max
    }

    /// Applies the diagonal operator `z^j ↦ u_j z^j` with `u_0 = 1`,
    /// `u_j = y_1⋯y_j` and `u_{−j} = 1/(y_0 y_{−1} ⋯ y_{−j+1})`.
    pub fn diagonal(&self, y: &TauParams, trunc: &Truncation) -> Result<LaurentPlane> {
        let lo = -(self.rows.len() as i64);
        let mut u: BTreeMap<i64, Series> = BTreeMap::new();
        u.insert(0, Series::one(trunc.clone()));
        for j in 1..=self.z_max {
            let next = &u[&(j - 1)] * &y.weight(j, trunc)?;
            u.insert(j, next);
        }
        let mut denom = Series::one(trunc.clone());
        for j in (lo..0).rev() {
            denom = &denom * &y.weight(j + 1, trunc)?;
            u.insert(j, denom.recip()?);
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|(e, c)| (*e, c * &u[e])).collect()).collect();
        Ok(LaurentPlane { rows, z_max: self.z_max })
    }

    /// Rows scaled so that each leading coefficient is 1.
    fn normalized(&self) -> Result<Vec<BTreeMap<i64, Series>>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let k = i as i64 + 1;
                let lead = row.get(&-k).filter(|c| !c.constant_term().is_zero()).ok_or_else(|| {
                    Error::Validation(format!("row {k} has no invertible z^-{k} coefficient; the vacuum coefficient vanishes"))
                })?;
                let inv = lead.recip()?;
                Ok(row.iter().map(|(e, c)| (*e, c * &inv)).collect())
            })
            .collect()
    }
}

/// `Σ_μ det(M_μ) s_μ(p)` over `|μ| ≤ N`, where `M_μ` is the `ℓ(μ)×ℓ(μ)` matrix of
/// coefficients of `z^{μ_j − j}` in `β_i` after normalizing the rows. Rows past
/// `ℓ(μ)` do not contribute: the remaining block is unitriangular.
pub fn plane_to_tau(plane: &LaurentPlane, trunc: &Truncation) -> Result<Series> {
    let n = trunc.weight().max(0);
    if (plane.rows.len() as i64) < n || plane.z_max < n - 1 {
        return Err(Error::InsufficientTruncation(format!(
            "weight {n} needs {n} rows known to z^{}, plane has {} rows to z^{}",
            n - 1,
            plane.rows.len(),
            plane.z_max
        )));
    }
    let rows = plane.normalized()?;
    let terms: Result<Vec<Series>> = partitions_within(trunc)
        .into_par_iter()
        .map(|mu| {
            let minor = minor(&rows, &mu, trunc);
            Ok(&minor * &schur(&mu, trunc))
        })
        .collect();
    Ok(sum_all(terms?, trunc))
}

fn minor(rows: &[BTreeMap<i64, Series>], mu: &Partition, trunc: &Truncation) -> Series {
    let l = mu.length();
    let matrix: Vec<Vec<Option<Series>>> = (0..l)
        .map(|i| (0..l).map(|j| rows[i].get(&(mu.part(j) as i64 - j as i64 - 1)).cloned()).collect())
        .collect();
    determinant(&matrix, trunc)
}
