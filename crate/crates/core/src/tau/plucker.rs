//! The single Plücker relation of the Grassmannian `G(2,4)`.

use num_rational::BigRational;

/// `y₁₂y₃₄ − y₁₃y₂₄ + y₁₄y₂₃` for the minors `y_ij = a_i b_j − a_j b_i`.
pub fn plucker_g24_residual(a: &[BigRational; 4], b: &[BigRational; 4]) -> BigRational {
    let y = |i: usize, j: usize| &a[i] * &b[j] - &a[j] * &b[i];
    y(0, 1) * y(2, 3) - y(0, 2) * y(1, 3) + y(0, 3) * y(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn v(x: [i64; 4]) -> [BigRational; 4] {
        x.map(int)
    }

    #[test]
    fn vanishes_on_decomposable_vectors() {
        assert_eq!(plucker_g24_residual(&v([1, 0, 0, 0]), &v([0, 1, 0, 0])), int(0));
        assert_eq!(plucker_g24_residual(&v([1, 2, 3, 4]), &v([1, 2, 3, 4])), int(0));
        assert_eq!(plucker_g24_residual(&v([1, 2, 3, 4]), &v([5, 6, 7, 8])), int(0));
    }
}
