//! Maps as permutation triples `(α, σ, φ)` on `2n` half-edges with `φασ = id`:
//! `α` pairs half-edges into edges, cycles of `σ` are vertices and cycles of
//! `φ` are faces. Composition is `(f∘g)(x) = f(g(x))`, so `φ = (α∘σ)^{−1}`.
//!
//! Counts are weighted by `1/(2n)!` over all triples; since every fixed-point
//! free involution is conjugate to `(1 2)(3 4)⋯`, the sweep fixes `α` and
//! multiplies by the number `(2n−1)!!` of such involutions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::symmetric_group::{all_permutations, class_permutations, key_cycles, key_to_partition, type_key, Budget, UnionFind};

/// Largest number of half-edges for an unconstrained sweep over `σ`.
pub const MAX_FREE_HALF_EDGES: usize = 10;
/// Largest number of half-edges when `σ` or `φ` is confined to a class.
pub const MAX_CLASS_HALF_EDGES: usize = 14;

/// Which maps to count. A given genus implies connectedness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapQuery {
    pub edges: usize,
    pub vertex_type: Option<Partition>,
    pub face_type: Option<Partition>,
    pub faces: Option<u32>,
    pub genus: Option<u32>,
    pub connected: bool,
}

impl MapQuery {
    pub fn new(edges: usize) -> Self {
        MapQuery { edges, ..Default::default() }
    }

    pub fn vertices(mut self, mu: Partition) -> Self {
        self.vertex_type = Some(mu);
        self
    }

    pub fn face_degrees(mut self, mu: Partition) -> Self {
        self.face_type = Some(mu);
        self
    }

    pub fn faces(mut self, f: u32) -> Self {
        self.faces = Some(f);
        self
    }

    pub fn genus(mut self, g: u32) -> Self {
        self.genus = Some(g);
        self.connected = true;
        self
    }

    pub fn connected(mut self, c: bool) -> Self {
        self.connected = c;
        self
    }
}

/// Weighted counts keyed by (vertex type, face type).
pub type MapCensus = BTreeMap<(Partition, Partition), BigRational>;

fn double_factorial_odd(n: usize) -> BigInt {
    (1..=n).map(|k| BigInt::from(2 * k - 1)).product()
}

fn check_type(mu: &Partition, n2: usize, what: &str) -> Result<()> {
    if mu.size() as usize != n2 {
        return Err(Error::InvalidArgument(format!("{what} {mu} is not a partition of {n2} half-edges")));
    }
    Ok(())
}

/// All maps with `edges` edges, optionally with a fixed vertex or face type.
pub fn map_census(edges: usize, vertex_type: Option<&Partition>, face_type: Option<&Partition>, connected: bool, budget: Budget) -> Result<MapCensus> {
    let n2 = 2 * edges;
    let candidates: Vec<Vec<u8>> = match (vertex_type, face_type) {
        (Some(mu), _) | (None, Some(mu)) => {
            check_type(mu, n2, "type")?;
            if n2 > MAX_CLASS_HALF_EDGES {
                return Err(Error::InvalidArgument(format!("at most {MAX_CLASS_HALF_EDGES} half-edges, asked for {n2}")));
            }
            budget.check(mu.class_size().to_u128().unwrap_or(u128::MAX))?;
            class_permutations(mu)
        }
        (None, None) => {
            if n2 > MAX_FREE_HALF_EDGES {
                return Err(Error::InvalidArgument(format!("an unconstrained sweep allows at most {MAX_FREE_HALF_EDGES} half-edges")));
            }
            budget.check((1..=n2 as u128).product())?;
            all_permutations(n2)
        }
    };
    if let (Some(v), Some(f)) = (vertex_type, face_type) {
        check_type(v, n2, "vertex type")?;
        check_type(f, n2, "face type")?;
    }
    let faces_given = vertex_type.is_none() && face_type.is_some();
    let alpha: Vec<u8> = (0..n2 as u8).map(|x| x ^ 1).collect();
    let counts: HashMap<(u64, u64), u64> = candidates
        .par_iter()
        .fold(HashMap::new, |mut acc, g| {
            let mut sigma = vec![0u8; n2];
            let mut phi = vec![0u8; n2];
            if faces_given {
                // σ = α∘φ^{−1}
                phi.copy_from_slice(g);
                for x in 0..n2 {
                    sigma[g[x] as usize] = alpha[x];
                }
            } else {
                sigma.copy_from_slice(g);
                // φ^{−1} = α∘σ
                for x in 0..n2 {
                    phi[alpha[sigma[x] as usize] as usize] = x as u8;
                }
            }
            if connected && n2 > 0 {
                let mut uf = UnionFind::new(n2);
                uf.union_cycles(&alpha);
                uf.union_cycles(&sigma);
                if uf.components() != 1 {
                    return acc;
                }
            }
            if connected && n2 == 0 {
                return acc;
            }
            *acc.entry((type_key(&sigma), type_key(&phi))).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let weight = BigRational::new(double_factorial_odd(edges), factorial(n2 as u32));
    let mut out = MapCensus::new();
    for ((vk, fk), c) in counts {
        let (v, f) = (key_to_partition(vk), key_to_partition(fk));
        if vertex_type.is_some_and(|t| *t != v) || face_type.is_some_and(|t| *t != f) {
            continue;
        }
        debug_assert!(key_cycles(vk) as usize == v.length());
        out.insert((v, f), &weight * BigRational::from_integer(c.into()));
    }
    Ok(out)
}

/// Genus of a connected map from `V − E + F = 2 − 2g`.
pub fn genus_of(vertices: usize, edges: usize, faces: usize) -> Option<u32> {
    let chi = vertices as i64 - edges as i64 + faces as i64;
    (chi <= 2 && (2 - chi) % 2 == 0).then_some(((2 - chi) / 2) as u32)
}

/// Weighted (or, with `rooted`, `2n` times weighted) number of maps matching `q`.
pub fn map_oracle(q: &MapQuery, rooted: bool, budget: Budget) -> Result<BigRational> {
    let connected = q.connected || q.genus.is_some();
    let census = map_census(q.edges, q.vertex_type.as_ref(), q.face_type.as_ref(), connected, budget)?;
    let mut total = BigRational::zero();
    for ((v, f), c) in census {
        if q.faces.is_some_and(|k| k as usize != f.length()) {
            continue;
        }
        if let Some(g) = q.genus {
            if genus_of(v.length(), q.edges, f.length()) != Some(g) {
                continue;
            }
        }
        total += c;
    }
    if rooted {
        total *= BigRational::from_integer((2 * q.edges).into());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn one_edge() {
        let b = Budget::default();
        assert_eq!(map_oracle(&MapQuery::new(1).vertices(p("[1,1]")), true, b).unwrap(), int(1));
        assert_eq!(map_oracle(&MapQuery::new(1).vertices(p("[2]")), true, b).unwrap(), int(1));
        assert_eq!(map_oracle(&MapQuery::new(1).vertices(p("[2]")), false, b).unwrap(), rat(1, 2));
    }

    #[test]
    fn duality_for_cubic_maps() {
        let b = Budget::default();
        for edges in [3usize, 6] {
            let cubic = Partition::new(vec![3; 2 * edges / 3]);
            for connected in [false, true] {
                let by_vertices = map_census(edges, Some(&cubic), None, connected, b).unwrap();
                let by_faces = map_census(edges, None, Some(&cubic), connected, b).unwrap();
                let swapped: MapCensus = by_faces.into_iter().map(|((v, f), c)| ((f, v), c)).collect();
                assert_eq!(by_vertices, swapped);
            }
        }
    }

    #[test]
    fn free_sweep_agrees_with_classes() {
        let b = Budget::default();
        let all = map_census(2, None, None, false, b).unwrap();
        for mu in crate::partition::partitions(4) {
            let cls = map_census(2, Some(&mu), None, false, b).unwrap();
            let sub: MapCensus = all.iter().filter(|((v, _), _)| *v == mu).map(|(k, c)| (k.clone(), c.clone())).collect();
            assert_eq!(cls, sub);
        }
    }
}
