//! Symmetric functions of the Jucys–Murphy elements act on the idempotent
//! `F_λ` by the same function evaluated on the contents of `λ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::series::{Series, Truncation};

/// A symmetric function evaluated on content multisets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JmSymmetric {
    /// `e_k`
    Elementary(u32),
    /// `h_m`
    Complete(u32),
    /// `p_r`
    Power(u32),
}

/// `f(c(λ))` for one of the basic symmetric functions.
pub fn jm_eval(f: JmSymmetric, lam: &Partition) -> BigRational {
    let contents: Vec<BigInt> = lam.contents().values().iter().map(|&c| BigInt::from(c)).collect();
    let value = match f {
        JmSymmetric::Elementary(k) => {
            // e[j] after processing a prefix of the contents.
            let mut e = vec![BigInt::zero(); k as usize + 1];
            e[0] = BigInt::one();
            for c in &contents {
                for j in (1..=k as usize).rev() {
                    let add = &e[j - 1] * c;
                    e[j] += add;
                }
            }
            e[k as usize].clone()
        }
        JmSymmetric::Complete(m) => {
            let mut h = vec![BigInt::zero(); m as usize + 1];
            h[0] = BigInt::one();
            for c in &contents {
                for j in 1..=m as usize {
                    let add = &h[j - 1] * c;
                    h[j] += add;
                }
            }
            h[m as usize].clone()
        }
        JmSymmetric::Power(r) => contents.iter().map(|c| num_traits::pow(c.clone(), r as usize)).sum(),
    };
    BigRational::from_integer(value)
}

/// `Π_{w∈λ} y(c(w))` for a series-valued content weight.
pub fn jm_product(lam: &Partition, y: impl Fn(i64) -> Result<Series>, trunc: &Truncation) -> Result<Series> {
    let mut out = Series::one(trunc.clone());
    for &c in lam.contents().values() {
        out = &out * &y(c)?;
    }
    Ok(out)
}

/// `Π_{w∈λ} N(c)/D(c)` for polynomials `N`, `D` in the content with rational
/// coefficients (lowest degree first). A vanishing denominator is a pole.
pub fn jm_rational_product(lam: &Partition, num: &[BigRational], den: &[BigRational]) -> Result<BigRational> {
    let eval = |poly: &[BigRational], c: i64| -> BigRational {
        let x = BigRational::from_integer(c.into());
        poly.iter().rev().fold(BigRational::zero(), |acc, a| acc * &x + a)
    };
    let mut out = BigRational::one();
    for &c in lam.contents().values() {
        let d = eval(den, c);
        if d.is_zero() {
            return Err(Error::Pole { content: c });
        }
        out *= eval(num, c) / d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn elementary_and_complete() {
        assert_eq!(jm_eval(JmSymmetric::Elementary(1), &p("[2,1]")), int(0));
        assert_eq!(jm_eval(JmSymmetric::Elementary(1), &p("[3]")), int(3));
        // contents 0,1,2: e2 = 0+0+2, h2 = 0+1+4+0+0+2
        assert_eq!(jm_eval(JmSymmetric::Elementary(2), &p("[3]")), int(2));
        assert_eq!(jm_eval(JmSymmetric::Complete(2), &p("[3]")), int(7));
        assert_eq!(jm_eval(JmSymmetric::Power(2), &p("[3]")), int(5));
    }

    #[test]
    fn rational_product_pole() {
        // 1/(1 - c/2) has a pole at content 2.
        let num = [int(1)];
        let den = [int(1), rat(-1, 2)];
        assert_eq!(jm_rational_product(&p("[2]"), &num, &den).unwrap(), int(2));
        assert!(matches!(jm_rational_product(&p("[3]"), &num, &den), Err(Error::Pole { content: 2 })));
    }
}
