//! Leading-order asymptotics for triangulations and simple Hurwitz numbers,
//! evaluated in binary64 through logarithms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::maps::painleve::bg_table;
use crate::maps::triangulation::triangulation_table;
use crate::partition::{factorial, partitions};

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    assert!(x.is_positive(), "ln of a non-positive rational");
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// Signed `ln Γ(x)`: returns `(ln |Γ(x)|, sign)`. `x` must not be a pole.
fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma(x), 1.0);
    }
    // reflection: Γ(x) Γ(1−x) = π / sin(πx)
    let s = (std::f64::consts::PI * x).sin();
    (std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x), s.signum())
}

/// `ln` of the leading term
/// `3b_g/Γ(5g/2−1/2) · (3/8)^{(g−1)/2} · n^{5(g−1)/2} · (12√3)^n`, with its sign.
pub fn ln_triangulation_asymptotic(n: u64, g: u32, b: &[BigRational]) -> (f64, f64) {
    let gf = g as f64;
    let bg = &b[g as usize];
    let (lg, sg) = ln_gamma_signed(2.5 * gf - 0.5);
    let ln = (3.0f64).ln() + ln_rational(&bg.abs()) - lg + 0.5 * (gf - 1.0) * (3.0f64 / 8.0).ln()
        + 2.5 * (gf - 1.0) * (n as f64).ln()
        + n as f64 * (12.0 * 3f64.sqrt()).ln();
    (ln, sg * if bg.is_negative() { -1.0 } else { 1.0 })
}

/// The leading term itself; overflows to infinity for very large `n`.
pub fn triangulation_asymptotic(n: u64, g: u32) -> f64 {
    let b = bg_table(g);
    let (ln, sign) = ln_triangulation_asymptotic(n, g, &b);
    sign * ln.exp()
}

/// `ln` of `eⁿ n^{5(g−1)/2−1} b_g / (Γ(5g/2−1/2) · 2^{3g/2−1/2})`, with its sign.
pub fn ln_hurwitz_asymptotic(n: u64, g: u32, b: &[BigRational]) -> (f64, f64) {
    let gf = g as f64;
    let bg = &b[g as usize];
    let (lg, sg) = ln_gamma_signed(2.5 * gf - 0.5);
    let ln = n as f64 + (2.5 * (gf - 1.0) - 1.0) * (n as f64).ln() + ln_rational(&bg.abs())
        - lg
        - (1.5 * gf - 0.5) * std::f64::consts::LN_2;
    (ln, sg * if bg.is_negative() { -1.0 } else { 1.0 })
}

/// Exact vs. asymptotic values along a range of `n`.
#[derive(Clone, Debug, Serialize)]
pub struct TrendReport {
    pub name: String,
    pub g: u32,
    /// `(n, exact/asymptotic)`.
    pub ratios: Vec<(u64, f64)>,
    /// Comparison point, normally `n_max/2`.
    pub n_half: u64,
    pub n_max: u64,
    pub deviation_half: f64,
    pub deviation_max: f64,
    /// `|ratio − 1|` strictly smaller at `n_max` than at `n_half`.
    pub pass: bool,
}

impl TrendReport {
    fn new(name: &str, g: u32, n_half: u64, n_max: u64, ratios: Vec<(u64, f64)>) -> Result<Self> {
        let dev = |n: u64| -> Result<f64> {
            ratios
                .iter()
                .find(|(m, _)| *m == n)
                .map(|(_, r)| (r - 1.0).abs())
                .ok_or_else(|| Error::InvalidArgument(format!("no exact value at n = {n}")))
        };
        let (deviation_half, deviation_max) = (dev(n_half)?, dev(n_max)?);
        Ok(TrendReport {
            name: name.to_string(),
            g,
            ratios,
            n_half,
            n_max,
            deviation_half,
            deviation_max,
            pass: deviation_max < deviation_half,
        })
    }
}

impl std::fmt::Display for TrendReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} g={} |ratio-1| at n={}: {:.6e}, at n={}: {:.6e} {}",
            self.name,
            self.g,
            self.n_half,
            self.deviation_half,
            self.n_max,
            self.deviation_max,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// `T(n,g)` against its leading term for `n_max/2 ≤ n ≤ n_max`.
pub fn triangulation_trend(n_max: u64, g: u32) -> Result<TrendReport> {
    triangulation_trend_between(n_max / 2, n_max, g)
}

/// As [`triangulation_trend`], comparing `n_lo` with `n_max`.
pub fn triangulation_trend_between(n_lo: u64, n_max: u64, g: u32) -> Result<TrendReport> {
    if n_lo == 0 || n_lo >= n_max {
        return Err(Error::InvalidArgument("trend needs 0 < n_lo < n_max".into()));
    }
    let tab = triangulation_table(n_max as i64, g as i64);
    let b = bg_table(g);
    let ratios = (n_lo..=n_max)
        .filter_map(|n| {
            let t = tab.big_t(n as i64, g as i64)?;
            if !t.is_positive() {
                return None;
            }
            let (ln_a, sign) = ln_triangulation_asymptotic(n, g, &b);
            Some((n, sign * (ln_rational(&t) - ln_a).exp()))
        })
        .collect();
    TrendReport::new("triangulations", g, n_lo, n_max, ratios)
}

/// Largest `n` for the Hurwitz character sum.
pub const MAX_HURWITZ_N: u64 = 20;

/// `h_{m;1ⁿ}/m!` with `m = 2n+2g−2`, for `1 ≤ n ≤ n_max`: the coefficient of
/// `p₁ⁿ uᵐ` in `log Σ_n p₁ⁿ Σ_{λ⊢n} e^{u f₂(λ)} (dim λ/n!)²`.
pub fn hurwitz_single_ones(n_max: u64, g: u32) -> Result<Vec<(u64, BigRational)>> {
    if n_max > MAX_HURWITZ_N {
        return Err(Error::InvalidArgument(format!("n_max ≤ {MAX_HURWITZ_N} for the Hurwitz check")));
    }
    let n_max = n_max as usize;
    let m_max = (2 * n_max + 2 * g as usize).saturating_sub(2);
    let zero_poly = || vec![BigRational::zero(); m_max + 1];
    // a[n][k]: coefficient of p₁ⁿ u^k
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut sums = vec![BigInt::zero(); m_max + 1];
        let nf = factorial(n as u32);
        let den = &nf * &nf;
        for lam in partitions(n as u32) {
            let dim = lam.dim();
            let f2 = BigInt::from(lam.content_sum());
            let mut pw = &dim * &dim;
            for s in sums.iter_mut() {
                *s += &pw;
                pw *= &f2;
            }
        }
        let row = sums
            .into_iter()
            .enumerate()
            .map(|(k, s)| BigRational::new(s, &den * factorial(k as u32)))
            .collect();
        a.push(row);
    }
    let mul = |x: &[BigRational], y: &[BigRational]| -> Vec<BigRational> {
        let mut out = zero_poly();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(m_max + 1 - i) {
                out[i + j] += xi * yj;
            }
        }
        out
    };
    // n L_n = n A_n − Σ_{j<n} j L_j A_{n−j}
    let mut l: Vec<Vec<BigRational>> = vec![zero_poly()];
    for n in 1..=n_max {
        let mut acc: Vec<BigRational> = a[n].iter().map(|c| c * BigRational::from_integer(n.into())).collect();
        for j in 1..n {
            let prod = mul(&l[j], &a[n - j]);
            for (s, p) in acc.iter_mut().zip(prod) {
                *s -= p * BigRational::from_integer(j.into());
            }
        }
        l.push(acc.into_iter().map(|c| c / BigRational::from_integer(n.into())).collect());
    }
    Ok((1..=n_max)
        .filter_map(|n| {
            let m = (2 * n + 2 * g as usize).checked_sub(2)?;
            Some((n as u64, l[n][m].clone()))
        })
        .collect())
}

/// `h_{2n+2g−2;1ⁿ}/(2n+2g−2)!` against its leading term for `n_max/2 ≤ n ≤ n_max`.
pub fn hurwitz_asymptotic_check(n_max: u64, g: u32) -> Result<TrendReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("trend needs n_max >= 2".into()));
    }
    let b = bg_table(g);
    let exact = hurwitz_single_ones(n_max, g)?;
    let ratios = exact
        .into_iter()
        .filter(|(n, h)| *n >= n_max / 2 && h.is_positive())
        .map(|(n, h)| {
            let (ln_a, sign) = ln_hurwitz_asymptotic(n, g, &b);
            (n, sign * (ln_rational(&h) - ln_a).exp())
        })
        .collect();
    TrendReport::new("hurwitz", g, n_max / 2, n_max, ratios)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::genus0::{genus0_closed, Genus0Kind};
    use crate::partition::Partition;

    #[test]
    fn ln_of_large_rationals() {
        let x = BigRational::from_integer(num_traits::pow(BigInt::from(10), 400));
        assert!((ln_rational(&x) - 400.0 * 10f64.ln()).abs() < 1e-9);
        assert!((ln_rational(&BigRational::new(1.into(), 8.into())) + 8f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn genus_zero_hurwitz_matches_closed_formula() {
        for (n, h) in hurwitz_single_ones(6, 0).unwrap() {
            let mu = Partition::column(n as u32);
            let want = genus0_closed(Genus0Kind::Hurwitz, &mu).unwrap() / BigRational::from_integer(factorial(2 * n as u32 - 2));
            assert_eq!(h, want, "n = {n}");
        }
    }

    #[test]
    fn genus_one_small() {
        // h_{2;1} = 0 in genus one would need m = 2: a single transposition in S_1 is impossible.
        let h = hurwitz_single_ones(3, 1).unwrap();
        assert_eq!(h[0].1, BigRational::zero());
        assert!(h[1].1.is_positive());
    }

    #[test]
    fn asymptotic_signs() {
        assert!(triangulation_asymptotic(10, 0) > 0.0);
        for g in 1..=3 {
            assert!(triangulation_asymptotic(10, g) > 0.0);
        }
    }

    #[test]
    fn trends_improve() {
        for g in 0..=1 {
            let t = triangulation_trend(60, g).unwrap();
            assert!(t.pass, "{t}");
            let h = hurwitz_asymptotic_check(12, g).unwrap();
            assert!(h.pass, "{h}");
        }
    }
}
