//! Permutations of `{1..n}`, brute-force factorization oracles, the class
//! algebra of `S_n`, Jucys–Murphy eigenvalues and Kerov–Olshanski products.

mod class_algebra;
mod jucys_murphy;
mod kerov_olshanski;
mod oracle;
mod permutation;

pub use class_algebra::{class_multiply, structure_constants, ClassElement, MAX_CLASS_N};
pub use jucys_murphy::{jm_eval, jm_product, jm_rational_product, JmSymmetric};
pub use kerov_olshanski::{ko_multiply, KoElement};
pub use oracle::{
    bms_oracle, count_at, double_hurwitz_oracle, generalized_oracle, hurwitz_oracle, monotonic_oracle, monotonic_weighted_oracle,
    strictly_monotone_factorizations, Budget, CountMap,
};
pub use permutation::{is_transitive, Permutation, MAX_N};

pub(crate) use permutation::{all_permutations, class_permutations, key_cycles, key_to_partition, type_key, UnionFind};
