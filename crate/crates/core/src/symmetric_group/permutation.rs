use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest `n` handled by the enumeration kernels (cycle-type keys pack
/// multiplicities into 4-bit fields).
pub const MAX_N: usize = 15;

/// A bijection of `{1..n}`. Composition follows `(f∘g)(x) = f(g(x))`
/// throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// Zero-based images.
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// From one-based images: `images[x-1] = g(x)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > 255 {
            return Err(Error::InvalidArgument("permutation too large".into()));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// Product of disjoint cycles given with one-based entries.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x == 0 || x > n || used[x] {
                    return Err(Error::InvalidArgument(format!("bad cycle entry {x}")));
                }
                used[x] = true;
                images[x - 1] = cyc[(i + 1) % cyc.len()];
            }
        }
        Permutation::from_images(&images)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument("transposition needs two distinct points".into()));
        }
        Permutation::from_cycles(n, &[&[a, b]])
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `g(x)` for one-based `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// `self ∘ g`, i.e. `x ↦ self(g(x))`.
    pub fn compose(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.n(), g.n(), "composing permutations of different degree");
        Permutation { images: g.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Cycles with one-based entries, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u32).collect())
    }

    /// `n − (number of cycles)`: the minimal number of transpositions.
    pub fn degeneracy(&self) -> u32 {
        (self.n() - self.cycles().len()) as u32
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Whether the group generated by `gens` acts transitively on `{1..n}`, via
/// union-find over the generators' cycles.
pub fn is_transitive(gens: &[Permutation], n: usize) -> bool {
    let mut uf = UnionFind::new(n);
    for g in gens {
        assert_eq!(g.n(), n, "generator degree mismatch");
        for (i, &x) in g.images.iter().enumerate() {
            uf.union(i, x as usize);
        }
    }
    uf.components() <= 1
}

pub(crate) struct UnionFind {
    parent: [u8; 32],
    n: usize,
    comps: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n <= 32);
        let mut parent = [0u8; 32];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        UnionFind { parent, n, comps: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb as u8;
            self.comps -= 1;
        }
    }

    pub(crate) fn union_cycles(&mut self, images: &[u8]) {
        for (i, &x) in images.iter().enumerate().take(self.n) {
            self.union(i, x as usize);
        }
    }

    pub(crate) fn components(&self) -> usize {
        self.comps
    }
}

/// Packed cycle type: 4 bits per cycle length holding its multiplicity.
pub(crate) fn type_key(images: &[u8]) -> u64 {
    let mut seen: u32 = 0;
    let mut key = 0u64;
    for start in 0..images.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while seen & (1 << x) == 0 {
            seen |= 1 << x;
            x = images[x] as usize;
            len += 1;
        }
        key += 1u64 << (4 * (len - 1));
    }
    key
}

pub(crate) fn key_to_partition(key: u64) -> Partition {
    let mut parts = Vec::new();
    for len in 1..=16u32 {
        let m = (key >> (4 * (len - 1))) & 0xf;
        parts.extend(std::iter::repeat_n(len, m as usize));
    }
    Partition::new(parts)
}

/// Number of cycles encoded in a packed key.
pub(crate) fn key_cycles(key: u64) -> u32 {
    (0..16).map(|i| ((key >> (4 * i)) & 0xf) as u32).sum()
}

/// Every permutation of cycle type `mu` (zero-based images). Each is produced
/// once: the smallest unused point opens the next cycle, whose length is
/// chosen among the remaining distinct part values.
pub(crate) fn class_permutations(mu: &Partition) -> Vec<Vec<u8>> {
    fn go(images: &mut Vec<u8>, used: &mut Vec<bool>, mult: &mut std::collections::BTreeMap<u32, u32>, out: &mut Vec<Vec<u8>>) {
        let Some(start) = used.iter().position(|u| !u) else {
            out.push(images.clone());
            return;
        };
        let lengths: Vec<u32> = mult.iter().filter(|(_, m)| **m > 0).map(|(l, _)| *l).collect();
        for len in lengths {
            *mult.get_mut(&len).expect("present") -= 1;
            used[start] = true;
            let mut cycle = vec![start];
            extend(images, used, mult, out, &mut cycle, len as usize);
            used[start] = false;
            *mult.get_mut(&len).expect("present") += 1;
        }
    }
    fn extend(
        images: &mut Vec<u8>,
        used: &mut Vec<bool>,
        mult: &mut std::collections::BTreeMap<u32, u32>,
        out: &mut Vec<Vec<u8>>,
        cycle: &mut Vec<usize>,
        len: usize,
    ) {
        if cycle.len() == len {
            for w in 0..len {
                images[cycle[w]] = cycle[(w + 1) % len] as u8;
            }
            go(images, used, mult, out);
            return;
        }
        for x in 0..used.len() {
            if used[x] {
                continue;
            }
            used[x] = true;
            cycle.push(x);
            extend(images, used, mult, out, cycle, len);
            cycle.pop();
            used[x] = false;
        }
    }
    let n = mu.size() as usize;
    let mut images: Vec<u8> = (0..n as u8).collect();
    let mut used = vec![false; n];
    let mut mult = mu.multiplicities();
    let mut out = Vec::new();
    go(&mut images, &mut used, &mut mult, &mut out);
    out
}

/// All permutations of `0..n` (zero-based images) in lexicographic order.
pub(crate) fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}
