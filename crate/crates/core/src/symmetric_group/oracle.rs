//! Brute-force factorization counts in `S_n`.
//!
//! Every count is `|{tuples}| / n!` keyed by the cycle type of the product.
//! A tuple `(g_1, ..., g_m)` has product `g_1∘g_2∘⋯∘g_m`; cycle types of the
//! product do not depend on this choice. Connected counts keep only tuples
//! generating a transitive subgroup, and are empty for `n = 0`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::permutation::{all_permutations, key_to_partition, type_key, UnionFind, MAX_N};
use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::series::Series;

/// Upper bound on the number of enumerated tuples. Exceeding it is an error,
/// never a partial sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Default for Budget {
    fn default() -> Self {
        Budget(500_000_000)
    }
}

impl Budget {
    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.0 {
            return Err(Error::BudgetExceeded { needed, budget: self.0 });
        }
        Ok(())
    }
}

pub type CountMap = BTreeMap<Partition, BigRational>;

#[derive(Clone)]
struct Gen {
    images: [u8; MAX_N + 1],
    degeneracy: u32,
}

impl Gen {
    fn from_slice(p: &[u8]) -> Gen {
        let mut images = [0u8; MAX_N + 1];
        images[..p.len()].copy_from_slice(p);
        let cycles = super::permutation::key_cycles(type_key(p));
        Gen { images, degeneracy: p.len() as u32 - cycles }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds the enumeration limit {MAX_N}")));
    }
    Ok(())
}

fn transpositions(n: usize) -> Vec<Gen> {
    let mut out = Vec::new();
    for b in 0..n {
        for a in 0..b {
            let mut p: Vec<u8> = (0..n as u8).collect();
            p.swap(a, b);
            out.push(Gen::from_slice(&p));
        }
    }
    out
}

fn perms_by_degeneracy(n: usize) -> Vec<Vec<Gen>> {
    let mut out = vec![Vec::new(); n.max(1)];
    for p in all_permutations(n) {
        let g = Gen::from_slice(&p);
        out[g.degeneracy as usize].push(g);
    }
    out
}

fn merge<K: std::hash::Hash + Eq>(mut a: HashMap<K, u64>, b: HashMap<K, u64>) -> HashMap<K, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Product sweep over `levels[0] × levels[1] × ⋯`. `leaf` receives the chosen
/// indices, the product images and the total degeneracy.
fn sweep<K, F>(n: usize, levels: &[&[Gen]], connected: bool, leaf: F) -> HashMap<K, u64>
where
    K: std::hash::Hash + Eq + Send,
    F: Fn(&[usize], &[u8], u32) -> K + Sync,
{
    if connected && n == 0 {
        return HashMap::new();
    }
    let mut ident = [0u8; MAX_N + 1];
    for (i, x) in ident.iter_mut().enumerate().take(n) {
        *x = i as u8;
    }
    if levels.is_empty() {
        let mut out = HashMap::new();
        if !connected || n <= 1 {
            out.insert(leaf(&[], &ident[..n], 0), 1);
        }
        return out;
    }

    struct Walk<'a, F> {
        n: usize,
        levels: &'a [&'a [Gen]],
        connected: bool,
        leaf: &'a F,
    }

    impl<F> Walk<'_, F> {
        fn go<K: std::hash::Hash + Eq>(&self, depth: usize, prod: &[u8; MAX_N + 1], deg: u32, chosen: &mut Vec<usize>, acc: &mut HashMap<K, u64>)
        where
            F: Fn(&[usize], &[u8], u32) -> K,
        {
            if depth == self.levels.len() {
                if self.connected {
                    let mut uf = UnionFind::new(self.n);
                    for (l, &i) in chosen.iter().enumerate() {
                        uf.union_cycles(&self.levels[l][i].images[..self.n]);
                    }
                    if uf.components() != 1 {
                        return;
                    }
                }
                *acc.entry((self.leaf)(chosen, &prod[..self.n], deg)).or_insert(0) += 1;
                return;
            }
            for (i, g) in self.levels[depth].iter().enumerate() {
                let mut next = [0u8; MAX_N + 1];
                for x in 0..self.n {
                    next[x] = prod[g.images[x] as usize];
                }
                chosen.push(i);
                self.go(depth + 1, &next, deg + g.degeneracy, chosen, acc);
                chosen.pop();
            }
        }
    }

    let walk = Walk { n, levels, connected, leaf: &leaf };
    (0..levels[0].len())
        .into_par_iter()
        .map(|i| {
            let mut acc = HashMap::new();
            let g = &levels[0][i];
            let mut chosen = vec![i];
            walk.go(1, &g.images, g.degeneracy, &mut chosen, &mut acc);
            acc
        })
        .reduce(HashMap::new, merge)
}

fn normalize<K: Ord>(counts: impl IntoIterator<Item = (K, u64)>, n: usize) -> BTreeMap<K, BigRational> {
    let nf = factorial(n as u32);
    counts
        .into_iter()
        .filter(|(_, c)| *c > 0)
        .map(|(k, c)| (k, BigRational::new(BigInt::from(c), nf.clone())))
        .collect()
}

fn by_type(counts: HashMap<u64, u64>, n: usize) -> CountMap {
    normalize(counts.into_iter().map(|(k, c)| (key_to_partition(k), c)), n)
}

fn binom2(n: usize) -> u128 {
    (n * n.saturating_sub(1) / 2) as u128
}

/// `h∘_{m;μ}` (or the connected `h_{m;μ}`): `m`-tuples of transpositions.
pub fn hurwitz_oracle(n: usize, m: usize, connected: bool, budget: Budget) -> Result<CountMap> {
    check_n(n)?;
    budget.check(binom2(n).saturating_pow(m as u32))?;
    let t = transpositions(n);
    let levels: Vec<&[Gen]> = vec![&t; m];
    Ok(by_type(sweep(n, &levels, connected, |_, p, _| type_key(p)), n))
}

/// Tuples `(τ_1, ..., τ_m)` with prescribed degeneracies `k(τ_i) = ks[i]`.
pub fn generalized_oracle(n: usize, ks: &[u32], connected: bool, budget: Budget) -> Result<CountMap> {
    check_n(n)?;
    if n > 10 {
        return Err(Error::InvalidArgument("generalized oracle enumerates S_n; n must be at most 10".into()));
    }
    let groups = perms_by_degeneracy(n);
    let empty: Vec<Gen> = Vec::new();
    let levels: Vec<&[Gen]> = ks.iter().map(|&k| groups.get(k as usize).unwrap_or(&empty).as_slice()).collect();
    let needed = levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128));
    budget.check(needed)?;
    Ok(by_type(sweep(n, &levels, connected, |_, p, _| type_key(p)), n))
}

/// Bousquet-Mélou–Schaeffer counts: arbitrary `m`-tuples binned by total
/// degeneracy `k` and product type.
pub fn bms_oracle(n: usize, m: usize, connected: bool, budget: Budget) -> Result<BTreeMap<(u32, Partition), BigRational>> {
    check_n(n)?;
    if n > 10 {
        return Err(Error::InvalidArgument("BMS oracle enumerates S_n; n must be at most 10".into()));
    }
    let nf = (1..=n as u128).product::<u128>();
    budget.check(nf.saturating_pow(m as u32))?;
    let all: Vec<Gen> = all_permutations(n).iter().map(|p| Gen::from_slice(p)).collect();
    let levels: Vec<&[Gen]> = vec![&all; m];
    let counts = sweep(n, &levels, connected, |_, p, deg| (deg, type_key(p)));
    Ok(normalize(counts.into_iter().map(|((k, t), c)| ((k, key_to_partition(t)), c)), n))
}

/// Number of weakly monotone transposition sequences of length `m` in `S_n`.
fn monotone_sequence_count(n: usize, m: usize) -> u128 {
    // ways[j][b]: sequences of length j whose last larger index is b.
    let mut ways = vec![0u128; n];
    for (b, w) in ways.iter_mut().enumerate() {
        *w = b as u128;
    }
    if m == 0 {
        return 1;
    }
    for _ in 1..m {
        let mut next = vec![0u128; n];
        let mut prefix = 0u128;
        for b in 0..n {
            prefix = prefix.saturating_add(ways[b]);
            next[b] = prefix.saturating_mul(b as u128);
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, b| a.saturating_add(*b))
}

/// `⃗h∘_{m;μ}`: transposition tuples `(a_i b_i)`, `a_i < b_i`, with
/// `b_1 ≤ b_2 ≤ ⋯ ≤ b_m`.
pub fn monotonic_oracle(n: usize, m: usize, connected: bool, budget: Budget) -> Result<CountMap> {
    check_n(n)?;
    budget.check(monotone_sequence_count(n, m))?;
    if connected && n == 0 {
        return Ok(CountMap::new());
    }
    let counts = monotone_sweep(n, m, false, connected);
    Ok(by_type(counts, n))
}

/// Counts of monotone sequences keyed by packed product type. With `strict`
/// the larger indices must strictly increase.
fn monotone_sweep(n: usize, m: usize, strict: bool, connected: bool) -> HashMap<u64, u64> {
    fn go(n: usize, left: usize, min_b: usize, strict: bool, connected: bool, prod: &mut [u8], chosen: &mut Vec<(usize, usize)>, acc: &mut HashMap<u64, u64>) {
        if left == 0 {
            if connected {
                let mut uf = UnionFind::new(n);
                for &(a, b) in chosen.iter() {
                    uf.union(a, b);
                }
                if uf.components() != 1 {
                    return;
                }
            }
            *acc.entry(type_key(prod)).or_insert(0) += 1;
            return;
        }
        for b in min_b..n {
            for a in 0..b {
                prod.swap(a, b);
                chosen.push((a, b));
                go(n, left - 1, if strict { b + 1 } else { b }, strict, connected, prod, chosen, acc);
                chosen.pop();
                prod.swap(a, b);
            }
        }
    }
    let prod: Vec<u8> = (0..n as u8).collect();
    let mut acc = HashMap::new();
    if m == 0 {
        if !connected || n <= 1 {
            acc.insert(type_key(&prod), 1);
        }
        return acc;
    }
    // Split the first choice across threads.
    let firsts: Vec<(usize, usize)> = (1..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    firsts
        .into_par_iter()
        .map(|(a, b)| {
            let mut prod = prod.clone();
            prod.swap(a, b);
            let mut chosen = vec![(a, b)];
            let mut acc = HashMap::new();
            go(n, m - 1, if strict { b + 1 } else { b }, strict, connected, &mut prod, &mut chosen, &mut acc);
            acc
        })
        .reduce(HashMap::new, merge)
        .into_iter()
        .for_each(|(k, v)| *acc.entry(k).or_insert(0) += v);
    acc
}

/// Number of strictly monotone factorizations of each permutation of `S_n`
/// into `k` transpositions. Keys are zero-based image vectors.
pub fn strictly_monotone_factorizations(n: usize, k: usize) -> HashMap<Vec<u8>, u64> {
    fn go(n: usize, left: usize, min_b: usize, prod: &mut Vec<u8>, acc: &mut HashMap<Vec<u8>, u64>) {
        if left == 0 {
            *acc.entry(prod.clone()).or_insert(0) += 1;
            return;
        }
        for b in min_b..n {
            for a in 0..b {
                prod.swap(a, b);
                go(n, left - 1, b + 1, prod, acc);
                prod.swap(a, b);
            }
        }
    }
    let mut acc = HashMap::new();
    go(n, k, 0, &mut (0..n as u8).collect(), &mut acc);
    acc
}

/// Weighted nonstrictly monotone decompositions: a decomposition with `k_s`
/// transpositions of larger index `s` has weight `d_{k_1} d_{k_2} ⋯ d_{k_n}`.
/// Lengths `k_s` run up to `weights.len() − 1`. The result maps each product
/// type to the weighted count divided by `n!`.
pub fn monotonic_weighted_oracle(n: usize, connected: bool, weights: &[Series], budget: Budget) -> Result<BTreeMap<Partition, Series>> {
    check_n(n)?;
    if weights.is_empty() {
        return Err(Error::InvalidArgument("at least d_0 is required".into()));
    }
    let kmax = weights.len() - 1;
    let needed = (0..n).fold(1u128, |acc, s| acc.saturating_mul((0..=kmax as u32).map(|k| (s as u128).saturating_pow(k)).sum()));
    budget.check(needed)?;
    let trunc = weights.iter().fold(weights[0].truncation().clone(), |t, w| t.min(w.truncation()));
    if connected && n == 0 {
        return Ok(BTreeMap::new());
    }

    // Counts keyed by (product type, sorted multiset of k_s).
    type Key = (u64, Vec<u8>);
    fn go(n: usize, s: usize, kmax: usize, connected: bool, prod: &mut Vec<u8>, ks: &mut Vec<u8>, chosen: &mut Vec<(usize, usize)>, acc: &mut HashMap<Key, u64>) {
        if s == n {
            if connected {
                let mut uf = UnionFind::new(n);
                for &(a, b) in chosen.iter() {
                    uf.union(a, b);
                }
                if uf.components() != 1 {
                    return;
                }
            }
            let mut sorted = ks.clone();
            sorted.sort_unstable();
            *acc.entry((type_key(prod), sorted)).or_insert(0) += 1;
            return;
        }
        // All sequences of k transpositions (a s), a < s, for k = 0..=kmax.
        fn block(n: usize, s: usize, k: usize, kmax: usize, connected: bool, prod: &mut Vec<u8>, ks: &mut Vec<u8>, chosen: &mut Vec<(usize, usize)>, acc: &mut HashMap<Key, u64>) {
            ks.push(k as u8);
            go(n, s + 1, kmax, connected, prod, ks, chosen, acc);
            ks.pop();
            if k == kmax {
                return;
            }
            for a in 0..s {
                prod.swap(a, s);
                chosen.push((a, s));
                block(n, s, k + 1, kmax, connected, prod, ks, chosen, acc);
                chosen.pop();
                prod.swap(a, s);
            }
        }
        block(n, s, 0, kmax, connected, prod, ks, chosen, acc);
    }
    let mut acc = HashMap::new();
    go(n, 0, kmax, connected, &mut (0..n as u8).collect(), &mut Vec::new(), &mut Vec::new(), &mut acc);

    let nf = BigRational::from_integer(factorial(n as u32));
    let mut products: HashMap<Vec<u8>, Series> = HashMap::new();
    let mut out: BTreeMap<Partition, Series> = BTreeMap::new();
    for ((key, ks), count) in acc {
        let w = products
            .entry(ks.clone())
            .or_insert_with(|| ks.iter().fold(Series::one(trunc.clone()), |acc, &k| &acc * &weights[k as usize]))
            .clone();
        let term = w.scale(&(BigRational::from_integer(count.into()) / &nf));
        let slot = out.entry(key_to_partition(key)).or_insert_with(|| Series::zero(trunc.clone()));
        *slot += &term;
    }
    out.retain(|_, s| !s.is_zero());
    Ok(out)
}

/// Double Hurwitz counts `d∘_{m;μ,ν}`: tuples `(α, β, τ_1, ..., τ_m)` with
/// `α∘β∘τ_1∘⋯∘τ_m = id`, `α ∈ C_μ`, `β ∈ C_ν`, `τ_i` transpositions.
pub fn double_hurwitz_oracle(n: usize, m: usize, connected: bool, budget: Budget) -> Result<BTreeMap<(Partition, Partition), BigRational>> {
    check_n(n)?;
    if n > 10 {
        return Err(Error::InvalidArgument("double Hurwitz oracle enumerates S_n; n must be at most 10".into()));
    }
    let nf = (1..=n as u128).product::<u128>();
    budget.check(nf.saturating_mul(binom2(n).saturating_pow(m as u32)))?;
    let alphas: Vec<Gen> = all_permutations(n).iter().map(|p| Gen::from_slice(p)).collect();
    let t = transpositions(n);
    let mut levels: Vec<&[Gen]> = vec![&alphas];
    levels.extend(std::iter::repeat_n(t.as_slice(), m));
    // β = (α∘T)^{-1}, so the type of β is the type of the full product α∘T.
    let counts = sweep(n, &levels, connected, |chosen, p, _| (type_key(&alphas[chosen[0]].images[..n]), type_key(p)));
    Ok(normalize(counts.into_iter().map(|((a, b), c)| ((key_to_partition(a), key_to_partition(b)), c)), n))
}

/// Entry lookup with an implicit zero.
pub fn count_at(map: &CountMap, mu: &Partition) -> BigRational {
    map.get(mu).cloned().unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hurwitz_small() {
        let b = Budget::default();
        let h = hurwitz_oracle(2, 1, false, b).unwrap();
        assert_eq!(h, CountMap::from([(p("[2]"), rat(1, 2))]));
        let h = hurwitz_oracle(2, 2, false, b).unwrap();
        assert_eq!(h, CountMap::from([(p("[1,1]"), rat(1, 2))]));
        let h = hurwitz_oracle(3, 2, true, b).unwrap();
        assert_eq!(count_at(&h, &p("[3]")), rat(1, 1));
    }

    #[test]
    fn generalized_small() {
        let b = Budget::default();
        assert_eq!(generalized_oracle(3, &[0], false, b).unwrap(), CountMap::from([(p("[1,1,1]"), rat(1, 6))]));
        assert_eq!(generalized_oracle(3, &[2], false, b).unwrap(), CountMap::from([(p("[3]"), rat(1, 3))]));
        assert_eq!(generalized_oracle(3, &[1, 1], true, b).unwrap(), hurwitz_oracle(3, 2, true, b).unwrap());
    }

    #[test]
    fn bms_single_factor() {
        let b = Budget::default();
        let m = bms_oracle(4, 1, false, b).unwrap();
        for (k, mu) in m.keys() {
            assert_eq!(*k, mu.degeneracy());
        }
        assert_eq!(m[&(1, p("[2,1,1]"))], rat(6, 24));
    }

    #[test]
    fn monotone_counts() {
        let b = Budget::default();
        assert_eq!(monotonic_oracle(2, 1, false, b).unwrap(), CountMap::from([(p("[2]"), rat(1, 2))]));
        for n in 0..6 {
            for m in 0..4 {
                let total: u64 = monotone_sweep(n, m, false, false).values().sum();
                assert_eq!(total as u128, monotone_sequence_count(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn double_small() {
        let b = Budget::default();
        let d = double_hurwitz_oracle(2, 1, false, b).unwrap();
        assert_eq!(d[&(p("[2]"), p("[1,1]"))], rat(1, 2));
        let d0 = double_hurwitz_oracle(3, 0, false, b).unwrap();
        for ((mu, nu), v) in &d0 {
            assert_eq!(mu, nu);
            assert_eq!(*v, BigRational::new(mu.class_size(), factorial(3)));
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(hurwitz_oracle(5, 6, false, Budget(10)), Err(Error::BudgetExceeded { .. })));
    }
}
