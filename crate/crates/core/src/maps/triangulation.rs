//! The triangulation recurrence
//! `t(n,g) = 4(3n+2)/(n+1) · (n(3n−2) t(n−2,g−1) + Σ_{i+j=n−2, h+k=g} t(i,h) t(j,k))`
//! on `S = {n ≥ −1, 0 ≤ g ≤ (n+1)/2}`, with `T(n,g) = t(n,g)/(3n+2)` the number
//! of rooted triangulations of genus `g` with `2n` triangles.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::series::{int, rat};

/// `t(−1,0)`.
pub fn seed_minus_one() -> BigRational {
    rat(1, 2)
}

/// `t(0,0)`. Not given by the recurrence; fixed by `T(1,0) = 4`, the number of
/// rooted maps with two triangular faces counted by the map oracle (loops and
/// multiple edges allowed).
pub fn seed_zero() -> BigRational {
    int(2)
}

fn in_domain(n: i64, g: i64) -> bool {
    n >= -1 && g >= 0 && 2 * g <= n + 1
}

/// `t` and `T` for `−1 ≤ n ≤ n_max` and `g ≤ g_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationTable {
    n_max: i64,
    g_max: i64,
    t: BTreeMap<(i64, i64), BigRational>,
}

impl TriangulationTable {
    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn g_max(&self) -> i64 {
        self.g_max
    }

    /// `t(n,g)`, zero outside `S` (and `None` beyond the computed range).
    pub fn t(&self, n: i64, g: i64) -> Option<BigRational> {
        if n > self.n_max || g > self.g_max {
            return None;
        }
        Some(self.t.get(&(n, g)).cloned().unwrap_or_else(BigRational::zero))
    }

    /// `T(n,g) = t(n,g)/(3n+2)`.
    pub fn big_t(&self, n: i64, g: i64) -> Option<BigRational> {
        self.t(n, g).map(|t| t / int(3 * n + 2))
    }

    /// `(n, g, t, T)` over `S`, ordered by `n` then `g`.
    pub fn rows(&self) -> Vec<(i64, i64, BigRational, BigRational)> {
        self.t.iter().map(|(&(n, g), t)| (n, g, t.clone(), t / int(3 * n + 2))).collect()
    }
}

/// Fills the table by the recurrence from the two seeds.
pub fn triangulation_table(n_max: i64, g_max: i64) -> TriangulationTable {
    triangulation_table_seeded(n_max, g_max, seed_zero())
}

/// As [`triangulation_table`] with an arbitrary `t(0,0)`.
pub fn triangulation_table_seeded(n_max: i64, g_max: i64, t00: BigRational) -> TriangulationTable {
    let mut t: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
    t.insert((-1, 0), seed_minus_one());
    if n_max >= 0 {
        t.insert((0, 0), t00);
    }
    let get = |t: &BTreeMap<(i64, i64), BigRational>, n: i64, g: i64| t.get(&(n, g)).cloned();
    for n in 1..=n_max {
        let gs: Vec<i64> = (0..=g_max).filter(|&g| in_domain(n, g)).collect();
        let row: Vec<(i64, BigRational)> = gs
            .par_iter()
            .map(|&g| {
                let mut acc = BigRational::zero();
                if let Some(x) = get(&t, n - 2, g - 1) {
                    acc += x * int(n * (3 * n - 2));
                }
                for i in -1..=n - 1 {
                    let j = n - 2 - i;
                    for h in 0..=g {
                        if let (Some(a), Some(b)) = (get(&t, i, h), get(&t, j, g - h)) {
                            acc += a * b;
                        }
                    }
                }
                (g, acc * rat(4 * (3 * n + 2), n + 1))
            })
            .collect();
        for (g, v) in row {
            if !v.is_zero() {
                t.insert((n, g), v);
            }
        }
    }
    t.retain(|&(n, g), _| g <= g_max && n <= n_max);
    TriangulationTable { n_max, g_max, t }
}
