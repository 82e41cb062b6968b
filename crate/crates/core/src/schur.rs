//! Schur polynomials in the power sums `p_i`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::det::determinant;
use crate::partition::{partitions, Partition};
use crate::series::{Monomial, Series, Truncation, Var};

/// `s_k`: the coefficient of `z^k` in `exp(Σ p_i z^i / i)`, i.e. `Σ_{λ⊢k} p_λ / z_λ`.
pub fn schur_row(k: i64, trunc: &Truncation) -> Series {
    let mut out = Series::zero(trunc.clone());
    if k < 0 || k > trunc.weight() {
        return out;
    }
    for lam in partitions(k as u32) {
        out.add_term(Monomial::p_mu(&lam), BigRational::one() / BigRational::from_integer(lam.z()));
    }
    out
}

/// Jacobi–Trudi determinant `det ‖s_{κ_j − j + i}‖` of size `n ≥ ℓ(κ)`.
///
/// The determinant is expanded row by row over subsets of used columns, so no
/// division is needed in the (non-domain) truncated series ring.
pub fn jacobi_trudi(kappa: &Partition, n: usize, trunc: &Truncation) -> Series {
    assert!(n >= kappa.length(), "matrix smaller than the partition length");
    if kappa.size() as i64 > trunc.weight() {
        return Series::zero(trunc.clone());
    }
    let poly = Truncation::new(kappa.size() as i64);
    let rows: Vec<Series> = (0..=kappa.size() as i64).map(|k| schur_row(k, &poly)).collect();
    let matrix: Vec<Vec<Option<Series>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // 1-based: s_{κ_j − j + i}
                    let k = kappa.part(j) as i64 - (j as i64 + 1) + (i as i64 + 1);
                    usize::try_from(k).ok().and_then(|k| rows.get(k).cloned())
                })
                .collect()
        })
        .collect();
    determinant(&matrix, &poly).with_truncation(trunc.clone())
}

/// Memo table of Schur polynomials. Entries are exact polynomials, so a
/// single table serves every truncation.
#[derive(Default)]
pub struct SchurCache {
    table: RwLock<HashMap<Partition, Series>>,
}

impl SchurCache {
    pub fn new() -> Self {
        SchurCache::default()
    }

    pub fn get(&self, kappa: &Partition, trunc: &Truncation) -> Series {
        if kappa.size() as i64 > trunc.weight() {
            return Series::zero(trunc.clone());
        }
        if let Some(s) = self.table.read().expect("schur cache poisoned").get(kappa) {
            return s.with_truncation(trunc.clone());
        }
        let s = jacobi_trudi(kappa, kappa.length(), &Truncation::new(kappa.size() as i64));
        let out = s.with_truncation(trunc.clone());
        self.table.write().expect("schur cache poisoned").entry(kappa.clone()).or_insert(s);
        out
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("schur cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global() -> &'static SchurCache {
    static CACHE: OnceLock<SchurCache> = OnceLock::new();
    CACHE.get_or_init(SchurCache::new)
}

/// `s_κ(p)` under `trunc`, served from a process-wide cache.
pub fn schur(kappa: &Partition, trunc: &Truncation) -> Series {
    global().get(kappa, trunc)
}

/// `s_κ(q)`: the same polynomial in the second time set.
pub fn schur_q(kappa: &Partition, trunc: &Truncation) -> Series {
    let s = schur(kappa, &Truncation::new(kappa.size() as i64));
    s.rename(p_to_q, trunc.clone()).expect("renaming keeps exponents positive")
}

pub(crate) fn p_to_q(v: Var) -> Var {
    match v {
        Var::P(i) => Var::Q(i),
        other => other,
    }
}

/// `s_κ(v, v, v, ...)`, i.e. `s_κ` at `p_i = v` for all `i`:
/// `dim_κ/|κ|! · Π_{w∈κ} (v + c(w))`.
pub fn principal_specialization(kappa: &Partition, v: &BigRational) -> BigRational {
    let mut out = kappa.dim_ratio();
    for c in kappa.contents().values() {
        out *= v + BigRational::from_integer((*c).into());
    }
    out
}

/// `Σ_μ s_μ(p) s_μ(q)` under a joint p/q weight bound.
pub fn cauchy_sum(trunc: &Truncation) -> Series {
    let mut out = Series::zero(trunc.clone());
    let half = trunc.weight() / 2;
    for n in 0..=half.max(0) as u32 {
        for mu in partitions(n) {
            out += &(&schur(&mu, trunc) * &schur_q(&mu, trunc));
        }
    }
    out
}

/// Evaluates a polynomial in the `p` variables at `p_1 = x`, `p_{i≥2} = 0`.
pub fn at_p1(s: &Series, x: &BigRational) -> BigRational {
    let mut out = BigRational::zero();
    for (m, c) in s.iter() {
        if m.iter().all(|(v, _)| v == Var::P(1)) {
            out += c * num_traits::pow(x.clone(), m.exponent(Var::P(1)) as usize);
        }
    }
    out
}
