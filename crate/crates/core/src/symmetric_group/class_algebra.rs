//! The center of the group algebra of `S_n` in the class-sum basis `C_μ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::permutation::{all_permutations, key_to_partition, type_key};
use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};

/// Largest `n` for which class sums are enumerated.
pub const MAX_CLASS_N: usize = 9;

/// `Σ_μ coeffs[μ]·C_μ` in the center of `ℚS_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassElement {
    n: usize,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl ClassElement {
    pub fn zero(n: usize) -> Self {
        ClassElement { n, coeffs: BTreeMap::new() }
    }

    /// The class sum `C_μ` in `S_{|μ|}`.
    pub fn class(mu: &Partition) -> Self {
        let mut e = ClassElement::zero(mu.size() as usize);
        e.coeffs.insert(mu.clone(), BigRational::one());
        e
    }

    pub fn identity(n: usize) -> Self {
        ClassElement::class(&Partition::column(n as u32))
    }

    pub fn from_coeffs(n: usize, coeffs: impl IntoIterator<Item = (Partition, BigRational)>) -> Result<Self> {
        let mut e = ClassElement::zero(n);
        for (mu, c) in coeffs {
            if mu.size() as usize != n {
                return Err(Error::SizeMismatch(mu.size() as usize, n));
            }
            e.add_term(mu, c);
        }
        Ok(e)
    }

    /// `Σ_{k(μ) = k} C_μ`: the sum of all permutations of degeneracy `k`.
    pub fn degeneracy_sum(n: usize, k: u32) -> Self {
        let mut e = ClassElement::zero(n);
        for mu in partitions(n as u32).filter(|mu| mu.degeneracy() == k) {
            e.add_term(mu, BigRational::one());
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigRational> {
        &self.coeffs
    }

    pub fn coefficient(&self, mu: &Partition) -> BigRational {
        self.coeffs.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients in the basis `C_μ/|C_μ|`.
    pub fn normalized_coeffs(&self) -> BTreeMap<Partition, BigRational> {
        self.coeffs.iter().map(|(mu, c)| (mu.clone(), c * BigRational::from_integer(mu.class_size()))).collect()
    }

    pub fn add_term(&mut self, mu: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(mu.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&mu);
        }
    }

    pub fn add(&self, other: &ClassElement) -> Result<ClassElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (mu, c) in &other.coeffs {
            out.add_term(mu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> ClassElement {
        let mut out = ClassElement::zero(self.n);
        for (mu, x) in &self.coeffs {
            out.add_term(mu.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Result<ClassElement> {
        let mut out = ClassElement::identity(self.n);
        for _ in 0..k {
            out = class_multiply(&out, self)?;
        }
        Ok(out)
    }
}

type ClassTable = HashMap<u64, Vec<Vec<u8>>>;

fn classes(n: usize) -> &'static ClassTable {
    static TABLES: OnceLock<Mutex<HashMap<usize, &'static ClassTable>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().expect("class table poisoned");
    guard.entry(n).or_insert_with(|| {
        let mut t: ClassTable = HashMap::new();
        for p in all_permutations(n) {
            t.entry(type_key(&p)).or_default().push(p);
        }
        Box::leak(Box::new(t))
    })
}

fn key_of(mu: &Partition) -> u64 {
    mu.parts().iter().map(|&l| 1u64 << (4 * (l - 1))).sum()
}

/// Structure constants: `C_μ·C_ν = Σ_ρ c^ρ C_ρ`.
pub fn structure_constants(mu: &Partition, nu: &Partition) -> Result<BTreeMap<Partition, BigRational>> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size() as usize, nu.size() as usize));
    }
    let n = mu.size() as usize;
    if n > MAX_CLASS_N {
        return Err(Error::InvalidArgument(format!("class sums are enumerated only for n <= {MAX_CLASS_N}")));
    }
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), BTreeMap<Partition, BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = if mu <= nu { (mu.clone(), nu.clone()) } else { (nu.clone(), mu.clone()) };
    if let Some(v) = cache.lock().expect("structure cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    // Enumerate the smaller class in full against one element of the other.
    let (full, rep) = if mu.class_size() <= nu.class_size() { (mu, nu) } else { (nu, mu) };
    let table = classes(n);
    let h = &table[&key_of(rep)][0];
    let mut hist: HashMap<u64, u64> = HashMap::new();
    let mut prod = vec![0u8; n];
    for g in &table[&key_of(full)] {
        for x in 0..n {
            prod[x] = g[h[x] as usize];
        }
        *hist.entry(type_key(&prod)).or_insert(0) += 1;
    }
    let rep_size = BigRational::from_integer(rep.class_size());
    let out: BTreeMap<Partition, BigRational> = hist
        .into_iter()
        .map(|(k, c)| {
            let rho = key_to_partition(k);
            let v = BigRational::from_integer(c.into()) * &rep_size / BigRational::from_integer(rho.class_size());
            (rho, v)
        })
        .collect();
    cache.lock().expect("structure cache poisoned").insert(key, out.clone());
    Ok(out)
}

/// Product in the class algebra.
pub fn class_multiply(a: &ClassElement, b: &ClassElement) -> Result<ClassElement> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    let mut out = ClassElement::zero(a.n);
    for (mu, x) in &a.coeffs {
        for (nu, y) in &b.coeffs {
            let xy = x * y;
            for (rho, c) in structure_constants(mu, nu)? {
                out.add_term(rho, c * &xy);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transposition_square_in_s3() {
        let c2 = ClassElement::class(&p("[2,1]"));
        let sq = class_multiply(&c2, &c2).unwrap();
        let want = ClassElement::from_coeffs(3, [(p("[1,1,1]"), int(3)), (p("[3]"), int(3))]).unwrap();
        assert_eq!(sq, want);
    }

    #[test]
    fn identity_is_neutral() {
        for mu in partitions(4) {
            let a = ClassElement::class(&mu);
            assert_eq!(class_multiply(&ClassElement::identity(4), &a).unwrap(), a);
        }
    }

    #[test]
    fn size_mismatch() {
        assert!(class_multiply(&ClassElement::identity(3), &ClassElement::identity(4)).is_err());
    }
}
