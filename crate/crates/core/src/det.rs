//! Division-free determinants over the truncated series ring.

use std::collections::HashMap;

use crate::series::{Series, Truncation};

/// `det M` for a square matrix whose `None` entries are zero. Rows are expanded
/// one at a time over the set of columns already used, costing `O(n·2^n)`
/// series products and no divisions.
pub(crate) fn determinant(matrix: &[Vec<Option<Series>>], trunc: &Truncation) -> Series {
    let n = matrix.len();
    assert!(n < 32, "determinant too large");
    let mut level: HashMap<u32, Series> = HashMap::new();
    level.insert(0, Series::one(trunc.clone()));
    for row in matrix {
        assert_eq!(row.len(), n, "matrix is not square");
        let mut next: HashMap<u32, Series> = HashMap::new();
        for (mask, d) in &level {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let Some(e) = entry else { continue };
                if e.is_zero() {
                    continue;
                }
                let mut prod = d * e;
                if (mask >> c).count_ones() % 2 == 1 {
                    prod = -prod;
                }
                let slot = next.entry(mask | (1 << c)).or_insert_with(|| Series::zero(trunc.clone()));
                *slot += &prod;
            }
        }
        level = next;
    }
    let full = (1u32 << n) - 1;
    level.remove(&full).unwrap_or_else(|| Series::zero(trunc.clone()))
}
