//! Cross-module identities checked against brute-force oracles.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use tauforge::maps::{bg_table, map_census, map_series, triangulation_table, MAX_FREE_HALF_EDGES};
use tauforge::partition::{factorial, partitions};
use tauforge::schur::schur;
use tauforge::symmetric_group::{
    class_multiply, generalized_oracle, hurwitz_oracle, jm_eval, monotonic_oracle, monotonic_weighted_oracle, strictly_monotone_factorizations, Budget,
    ClassElement, JmSymmetric, Permutation,
};
use tauforge::tau::{named_params, orlov_shcherbin_tau, plane_to_tau, toda_tau, Family, LaurentPlane};
use tauforge::{int, Aux, Monomial, Partition, Series, Truncation, Var};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn weights(kind: Family, t: &Truncation) -> tauforge::tau::TauParams {
    named_params(kind, &BTreeMap::new(), t).unwrap()
}

#[test]
fn contents_sum_is_the_transposition_eigenvalue() {
    for n in 0..=6 {
        for lam in partitions(n) {
            assert_eq!(int(lam.content_sum()), jm_eval(JmSymmetric::Elementary(1), &lam), "{lam}");
        }
    }
}

#[test]
fn transposition_powers_match_characters() {
    // (C_2)^m in the class algebra against Σ_λ f₂(λ)^m dim_λ s_λ(p)
    for n in 2..=5u32 {
        let c2 = ClassElement::class(&Partition::new(vec![2]).with_ones(n - 2));
        let t = Truncation::new(n as i64);
        for m in 0..=4u32 {
            let power = c2.pow(m).unwrap();
            let mut lhs = Series::zero(t.clone());
            for (mu, c) in power.normalized_coeffs() {
                lhs.add_term(Monomial::p_mu(&mu), c);
            }
            let mut rhs = Series::zero(t.clone());
            for lam in partitions(n) {
                let f2 = int(lam.content_sum());
                let w = num_traits::pow(f2, m as usize) * BigRational::from_integer(lam.dim());
                rhs += &schur(&lam, &t).scale(&w);
            }
            assert_eq!(lhs, rhs.weight_part(n as i64), "n={n} m={m}");
        }
    }
}

#[test]
fn disconnected_hurwitz_is_exp_of_connected() {
    let n_max = 5;
    let m_max = 6;
    let t = Truncation::new(n_max).with_aux(Aux::U, m_max);
    let mut connected = Series::zero(t.clone());
    let mut disconnected = Series::one(t.clone());
    for n in 1..=n_max as usize {
        for m in 0..=m_max as usize {
            let scale = BigRational::new(1.into(), factorial(m as u32));
            let um = Monomial::var_pow(Var::u(), m as i32);
            for (mu, c) in hurwitz_oracle(n, m, true, Budget::default()).unwrap() {
                connected.add_term(Monomial::p_mu(&mu).mul(&um), c * &scale);
            }
            for (mu, c) in hurwitz_oracle(n, m, false, Budget::default()).unwrap() {
                disconnected.add_term(Monomial::p_mu(&mu).mul(&um), c * &scale);
            }
        }
    }
    assert_eq!(connected.exp().unwrap(), disconnected);
}

#[test]
fn strictly_monotone_factorizations_are_unique() {
    for n in 1..=5usize {
        for k in 0..n {
            let counts = strictly_monotone_factorizations(n, k);
            for images in tauforge_all_permutations(n) {
                let g = Permutation::from_images(&images.iter().map(|&x| x + 1).collect::<Vec<_>>()).unwrap();
                let want = u64::from(g.degeneracy() as usize == k);
                let key: Vec<u8> = images.iter().map(|&x| x as u8).collect();
                assert_eq!(counts.get(&key).copied().unwrap_or(0), want, "n={n} k={k} {g}");
            }
        }
    }
}

fn tauforge_all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[test]
fn monotonic_counts_are_complete_symmetric_eigenvalues() {
    for n in 1..=5u32 {
        let t = Truncation::new(n as i64);
        for m in 0..=4u32 {
            let mut from_jm = Series::zero(t.clone());
            for lam in partitions(n) {
                let w = jm_eval(JmSymmetric::Complete(m), &lam) * lam.dim_ratio();
                from_jm += &schur(&lam, &t).scale(&w);
            }
            for mu in partitions(n) {
                let oracle = monotonic_oracle(n as usize, m as usize, false, Budget::default()).unwrap().get(&mu).cloned().unwrap_or_else(BigRational::zero);
                assert_eq!(from_jm.coefficient(&Monomial::p_mu(&mu)).unwrap(), oracle, "n={n} m={m} {mu}");
            }
        }
    }
}

#[test]
fn weighted_monotonic_decompositions_match_tau() {
    // φ(c) = 1 + 2c + c²/2: d_k weights on monotone runs
    let t = Truncation::new(4).with_aux(Aux::U, 0);
    let d = vec![Series::one(t.clone()), Series::constant(int(2), t.clone()), Series::constant(BigRational::new(1.into(), 2.into()), t.clone())];
    let y = tauforge::tau::TauParams::Phi(d.clone());
    for connected in [false, true] {
        let tau = orlov_shcherbin_tau(&y, &t).unwrap();
        let s = if connected { tau.log().unwrap() } else { tau };
        for n in 1..=4usize {
            let oracle = monotonic_weighted_oracle(n, connected, &d, Budget::default()).unwrap();
            for mu in partitions(n as u32) {
                let got = oracle.get(&mu).map(|x| x.constant_term()).unwrap_or_else(BigRational::zero);
                assert_eq!(s.coefficient(&Monomial::p_mu(&mu)).unwrap(), got, "connected={connected} {mu}");
            }
        }
    }
}

#[test]
fn generalized_counts_match_log_tau() {
    let t = Truncation::new(4).with_aux(Aux::Ui(1), 3).with_aux(Aux::Ui(2), 3);
    let f = orlov_shcherbin_tau(&weights(Family::Generalized(2), &t), &t).unwrap().log().unwrap();
    for n in 1..=4usize {
        for k1 in 0..=3u32 {
            for k2 in 0..=3u32 {
                let counts = generalized_oracle(n, &[k1, k2], true, Budget::default()).unwrap();
                let tail = Monomial::var_pow(Var::Aux(Aux::Ui(1)), k1 as i32).mul(&Monomial::var_pow(Var::Aux(Aux::Ui(2)), k2 as i32));
                for mu in partitions(n as u32) {
                    let want = counts.get(&mu).cloned().unwrap_or_else(BigRational::zero);
                    assert_eq!(f.coefficient(&Monomial::p_mu(&mu).mul(&tail)).unwrap(), want, "{mu} {k1} {k2}");
                }
            }
        }
    }
}

#[test]
fn hurwitz_log_matches_connected_oracle_through_six() {
    let t = Truncation::new(6).with_aux(Aux::U, 4);
    let f = orlov_shcherbin_tau(&weights(Family::Hurwitz, &t), &t).unwrap().log().unwrap();
    for n in 1..=6usize {
        for m in 0..=4usize {
            let counts = hurwitz_oracle(n, m, true, Budget::default()).unwrap();
            let um = Monomial::var_pow(Var::u(), m as i32);
            let mfact = BigRational::from_integer(factorial(m as u32));
            for mu in partitions(n as u32) {
                let want = counts.get(&mu).cloned().unwrap_or_else(BigRational::zero);
                assert_eq!(f.coefficient(&Monomial::p_mu(&mu).mul(&um)).unwrap() * &mfact, want, "{mu} m={m}");
            }
        }
    }
}

#[test]
fn plane_construction_reproduces_every_family() {
    for kind in [Family::Hurwitz, Family::Generalized(2), Family::Bms(2), Family::Monotonic] {
        let t = match kind {
            Family::Generalized(_) => Truncation::new(5).with_aux(Aux::Ui(1), 3).with_aux(Aux::Ui(2), 3),
            _ => Truncation::new(5).with_aux(Aux::U, 3),
        };
        let y = weights(kind, &t);
        let plane = LaurentPlane::exponential(5, 5, &t).diagonal(&y, &t).unwrap();
        assert_eq!(plane_to_tau(&plane, &t).unwrap(), orlov_shcherbin_tau(&y, &t).unwrap(), "{kind}");
    }
}

#[test]
fn toda_tau_reduces_to_one_set() {
    let n = 4;
    for kind in [Family::Hurwitz, Family::Bms(2), Family::Monotonic] {
        let t2 = Truncation::new(2 * n).with_aux(Aux::U, 3);
        let t1 = Truncation::new(n).with_aux(Aux::U, 3);
        let tau2 = toda_tau(0, &weights(kind, &t2), &t2, None).unwrap();
        let reduced = tau2.filter(|m| (2..=2 * n as u16).all(|i| m.exponent(Var::Q(i)) == 0)).evaluate_var(Var::Q(1), &BigRational::one());
        // terms p_λ q₁^{|λ|} with |λ| ≤ n survive
        let reduced = reduced.filter(|m| m.weight() <= n).with_truncation(t1.clone());
        assert_eq!(reduced, orlov_shcherbin_tau(&weights(kind, &t1), &t1).unwrap(), "{kind}");
    }
}

#[test]
fn map_series_is_log_of_all_maps() {
    // disconnected census = exp of connected census, through three edges
    let edges = 3usize;
    assert!(2 * edges <= MAX_FREE_HALF_EDGES);
    let t = Truncation::new(2 * edges as i64).with_aux(Aux::Z, edges as i64).with_aux(Aux::W, 2 * edges as i64);
    let mut all = Series::one(t.clone());
    let mut conn = Series::zero(t.clone());
    for e in 1..=edges {
        for (target, connected) in [(&mut all, false), (&mut conn, true)] {
            for ((v, f), c) in map_census(e, None, None, connected, Budget::default()).unwrap() {
                let m = Monomial::p_mu(&v).mul(&Monomial::var_pow(Var::Aux(Aux::W), f.length() as i32)).mul(&Monomial::var_pow(Var::Aux(Aux::Z), e as i32));
                target.add_term(m, c);
            }
        }
    }
    assert_eq!(conn.exp().unwrap(), all);
    let r = map_series(edges as u32).unwrap();
    assert_eq!(r.with_truncation(t.clone()), conn);
}

#[test]
fn triangulation_table_positivity() {
    let tab = triangulation_table(40, 3);
    for n in 1..=40 {
        assert!(tab.big_t(n, 0).unwrap().is_positive(), "T({n},0)");
    }
    for (n, g, _, t) in tab.rows() {
        if n >= 1 {
            assert!(t.is_integer() && !t.is_negative(), "T({n},{g}) = {t}");
        }
    }
    for (g, b) in bg_table(8).iter().enumerate().skip(1) {
        assert!(b.is_positive(), "b_{g} = {b}");
    }
}

#[test]
fn class_products_are_commutative() {
    let a = ClassElement::class(&p("[2,1,1,1]"));
    let b = ClassElement::class(&p("[3,2]"));
    assert_eq!(class_multiply(&a, &b).unwrap(), class_multiply(&b, &a).unwrap());
}
