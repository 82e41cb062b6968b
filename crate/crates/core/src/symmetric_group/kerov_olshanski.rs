//! The Kerov–Olshanski algebra: class sums `C_μ` over partitions of any size,
//! realized in each `S_n` by `φ_n(C_μ) = C(n−|μ|+ε(μ), ε(μ))·C_{μ ∪ 1^{n−|μ|}}`,
//! where `ε(μ)` is the number of parts equal to 1.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::class_algebra::{class_multiply, ClassElement};
use crate::error::Result;
use crate::partition::{binomial, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KoElement {
    coeffs: BTreeMap<Partition, BigRational>,
}

impl KoElement {
    pub fn zero() -> Self {
        KoElement::default()
    }

    pub fn basis(mu: &Partition) -> Self {
        let mut e = KoElement::zero();
        e.add_term(mu.clone(), BigRational::one());
        e
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (Partition, BigRational)>) -> Self {
        let mut e = KoElement::zero();
        for (mu, c) in coeffs {
            e.add_term(mu, c);
        }
        e
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigRational> {
        &self.coeffs
    }

    pub fn add_term(&mut self, mu: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(mu.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&mu);
        }
    }

    pub fn max_size(&self) -> u32 {
        self.coeffs.keys().map(Partition::size).max().unwrap_or(0)
    }

    /// Image in the class algebra of `S_n`.
    pub fn phi(&self, n: usize) -> ClassElement {
        let mut out = ClassElement::zero(n);
        for (mu, c) in &self.coeffs {
            let size = mu.size() as usize;
            if size > n {
                continue;
            }
            let eps = mu.ones() as i64;
            let free = (n - size) as i64;
            let mult = BigRational::from_integer(binomial(free + eps, eps));
            out.add_term(mu.with_ones(free as u32), c * mult);
        }
        out
    }
}

impl std::fmt::Display for KoElement {
    /// `C[1]`-style terms joined by ` + `, e.g. `2*C[1,1] + C[1]`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(mu, c)| if c.is_one() { format!("C{mu}") } else { format!("{c}*C{mu}") })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Product in the Kerov–Olshanski algebra.
///
/// With `N = max|a| + max|b|`, the products `φ_n(a)·φ_n(b)` for `n ≤ N` are
/// computed in `S_n`. For a fixed non-one part `ρ̄` with `|ρ̄| = r`, the
/// coefficient of `C_{ρ̄ ∪ 1^j}` in the `n = r + j` product is
/// `G(j) = Σ_e c_{ρ̄ ∪ 1^e}·C(j, e)`, which is inverted by the binomial transform.
pub fn ko_multiply(a: &KoElement, b: &KoElement) -> Result<KoElement> {
    let top = (a.max_size() + b.max_size()) as usize;
    // g[n][ρ̄ ∪ 1^{n−|ρ̄|}]
    let mut g: Vec<ClassElement> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        g.push(class_multiply(&a.phi(n), &b.phi(n))?);
    }
    let mut cores: Vec<Partition> = Vec::new();
    for el in &g {
        for mu in el.coeffs().keys() {
            let core = mu.without_ones();
            if !cores.contains(&core) {
                cores.push(core);
            }
        }
    }
    let mut out = KoElement::zero();
    for core in cores {
        let r = core.size() as usize;
        let big_g: Vec<BigRational> = (0..=top - r).map(|j| g[r + j].coefficient(&core.with_ones(j as u32))).collect();
        for e in 0..big_g.len() {
            let mut c = BigRational::zero();
            for (j, gj) in big_g.iter().enumerate().take(e + 1) {
                let term = BigRational::from_integer(binomial(e as i64, j as i64)) * gj;
                if (e - j) % 2 == 0 {
                    c += term;
                } else {
                    c -= term;
                }
            }
            out.add_term(core.with_ones(e as u32), c);
        }
    }
    Ok(out)
}
