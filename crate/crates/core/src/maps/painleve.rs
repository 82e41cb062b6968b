//! The constants `b_g`: `b₀ = −1`,
//! `b_{g+1} = (25g² − 1)/24 · b_g + ½ Σ_{m=1}^{g} b_{g+1−m} b_m`,
//! and the formal check that `U(y) = Σ_g b_g y^{1/2 − 5g/2}` solves `U″/3 + U² = y`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::hierarchy::ResidualReport;
use crate::series::{int, rat, Aux, Monomial, Series, Truncation, Var};

/// `b_0, …, b_{g_max}`.
pub fn bg_table(g_max: u32) -> Vec<BigRational> {
    let mut b = vec![int(-1)];
    for g in 0..g_max as i64 {
        let mut next = rat(25 * g * g - 1, 24) * &b[g as usize];
        let mut quad = BigRational::zero();
        for m in 1..=g as usize {
            quad += &b[g as usize + 1 - m] * &b[m];
        }
        next += quad * rat(1, 2);
        b.push(next);
    }
    b
}

/// Residual of `U″/3 + U² − y` for the truncated `U` built from `b`.
///
/// The exponent `1 − 5G/2` is recorded as `s^G`; level `G` involves
/// `b_0, …, b_G` only, so every level up to `b.len() − 1` is exact.
pub fn painleve_residual(b: &[BigRational]) -> ResidualReport {
    let top = b.len() as i64 - 1;
    let trunc = Truncation::unbounded().with_aux(Aux::S, top.max(0));
    let mut res = Series::zero(trunc);
    for level in 0..=top {
        let mut c = BigRational::zero();
        if level == 0 {
            c -= int(1);
        } else {
            // d²/dy² of y^a with a = 1/2 − 5(G−1)/2
            let a = rat(1, 2) - rat(5 * (level - 1), 2);
            c += &a * (&a - int(1)) * &b[level as usize - 1] * rat(1, 3);
        }
        for g1 in 0..=level {
            c += &b[g1 as usize] * &b[(level - g1) as usize];
        }
        res.add_term(Monomial::var_pow(Var::Aux(Aux::S), level as i32), c);
    }
    ResidualReport::new("painleve.1", res, top)
}

/// `painleve_residual(bg_table(g_max))`.
pub fn painleve_check(g_max: u32) -> ResidualReport {
    painleve_residual(&bg_table(g_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_constants() {
        let b = bg_table(4);
        assert_eq!(b[1], rat(1, 24));
        assert_eq!(b[2], rat(49, 1152));
        assert_eq!(b[3], rat(1225, 6912));
        assert_eq!(b[4], rat(4412401, 2654208));
    }

    #[test]
    fn painleve_holds_and_detects_corruption() {
        assert!(painleve_check(8).pass);
        let mut b = bg_table(4);
        b[2] += int(1);
        let r = painleve_residual(&b);
        assert!(!r.pass);
        assert!(r.residual.coeff("s^2").unwrap() != int(0));
    }
}
