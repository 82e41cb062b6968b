//! Closed formulas for genus-zero coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partition::{binomial, factorial, Partition};
use crate::series::int;

/// Rising factorial `x^{(r)} = x(x+1)⋯(x+r−1)`, extended to `r < 0` by
/// `x^{(r)} = 1/(x+r)^{(−r)}`.
pub fn rising(x: i64, r: i64) -> Result<BigRational> {
    if r >= 0 {
        return Ok(BigRational::from_integer((0..r).map(|i| BigInt::from(x + i)).product()));
    }
    let den: BigInt = (0..-r).map(|i| BigInt::from(x + r + i)).product();
    if den == BigInt::from(0) {
        return Err(Error::Pole { content: x + r });
    }
    Ok(BigRational::new(BigInt::one(), den))
}

/// Which genus-zero formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus0Kind {
    /// `h_{m;μ} = |μ|^{ℓ−3} m!/|Aut μ| Π μ_i^{μ_i}/μ_i!` with `m = |μ|+ℓ−2`.
    Hurwitz,
    /// `b_{m,k;μ} = m (m|μ|−k+1)^{(ℓ−3)}/|Aut μ| Π C(mμ_i−1, μ_i)` with `k = |μ|+ℓ−2`.
    Bms(u32),
    /// `(2|μ|+1)^{(ℓ−3)}/|Aut μ| Π C(2μ_i, μ_i)` for `|μ|+ℓ−2` transpositions.
    Monotonic,
}

/// Number of transpositions (or total degeneracy) in genus zero: `|μ| + ℓ(μ) − 2`.
pub fn genus0_order(mu: &Partition) -> i64 {
    mu.size() as i64 + mu.length() as i64 - 2
}

pub fn genus0_closed(kind: Genus0Kind, mu: &Partition) -> Result<BigRational> {
    if mu.is_empty() {
        return Err(Error::InvalidArgument("genus-zero formulas need a nonempty partition".into()));
    }
    let size = mu.size() as i64;
    let len = mu.length() as i64;
    let aut = BigRational::from_integer(mu.aut_order());
    let k = genus0_order(mu);
    Ok(match kind {
        Genus0Kind::Hurwitz => {
            let power = if len >= 3 {
                BigRational::from_integer(num_traits::pow(BigInt::from(size), (len - 3) as usize))
            } else {
                BigRational::new(1.into(), num_traits::pow(BigInt::from(size), (3 - len) as usize))
            };
            let mut prod = BigRational::one();
            for &p in mu.parts() {
                prod *= BigRational::new(num_traits::pow(BigInt::from(p), p as usize), factorial(p));
            }
            power * BigRational::from_integer(factorial(k as u32)) / aut * prod
        }
        Genus0Kind::Bms(m) => {
            let m = m as i64;
            let mut prod = BigRational::one();
            for &p in mu.parts() {
                prod *= BigRational::from_integer(binomial(m * p as i64 - 1, p as i64));
            }
            int(m) * rising(m * size - k + 1, len - 3)? / aut * prod
        }
        Genus0Kind::Monotonic => {
            let mut prod = BigRational::one();
            for &p in mu.parts() {
                prod *= BigRational::from_integer(binomial(2 * p as i64, p as i64));
            }
            rising(2 * size + 1, len - 3)? / aut * prod
        }
    })
}
