use std::collections::BTreeSet;

use mcmkit::arquiver::{curve_quiver, diagrams_up_to, hammock};
use mcmkit::cluster::{cluster_tilting_summands, mutate, Permutation};
use mcmkit::endoalg::stable_endo_algebra;
use mcmkit::homalg::{ext1_dim, stable_hom_dim};
use mcmkit::matfac::{knoerrer_lift, mf_subset};
use mcmkit::series::xy;
use mcmkit::{FactorList, HomalgConfig, TruncatedSeries};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// `n` distinct branches `x - c*y^k`, all smooth.
fn branches() -> impl Strategy<Value = Vec<TruncatedSeries>> {
    (2usize..=4, 1u32..=3).prop_flat_map(|(n, k)| {
        subsequence((-3i64..=3).collect::<Vec<_>>(), n).prop_map(move |cs| {
            cs.iter().map(|c| xy(&format!("x - ({c})*y^{k}"))).collect()
        })
    })
}

fn nonempty_subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    subsequence((0..n).collect::<Vec<_>>(), 1..=n)
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn product(fs: &[TruncatedSeries]) -> TruncatedSeries {
    fs.iter().fold(TruncatedSeries::one(2), |a, g| a.mul(g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subset_factorizations_are_valid((fs, s) in branches().prop_flat_map(|fs| { let n = fs.len(); (Just(fs), nonempty_subset(n)) })) {
        let m = mf_subset(&fs, &s);
        prop_assert!(m.validate().is_ok());
        prop_assert!(m.shift().validate().is_ok());
        let back = m.shift().shift();
        prop_assert_eq!(&back.a, &m.a);
        prop_assert_eq!(&back.b, &m.b);
        prop_assert_eq!(m.det_product(), product(&fs));
        let r = m.reduce().mf;
        prop_assert_eq!(&r.reduce().mf.a, &r.a);
    }

    #[test]
    fn direct_sums_are_valid((fs, s, t) in branches().prop_flat_map(|fs| { let n = fs.len(); (Just(fs), nonempty_subset(n), nonempty_subset(n)) })) {
        let m = mf_subset(&fs, &s).direct_sum(&mf_subset(&fs, &t)).unwrap();
        prop_assert!(m.validate().is_ok());
        prop_assert_eq!(m.rank(), 2);
        prop_assert_eq!(m.det_product(), product(&fs).pow(2));
    }

    #[test]
    fn knoerrer_lifts_are_valid((fs, w, i) in branches().prop_flat_map(|fs| { let n = fs.len(); (Just(fs), permutation(n), 1..=n) })) {
        let k = knoerrer_lift(&fs, w.images(), i);
        prop_assert!(k.validate().is_ok());
        prop_assert_eq!(k.rank(), 2);
    }

    #[test]
    fn adjacent_transpositions_are_involutions((n, w, i) in (2usize..=5).prop_flat_map(|n| (Just(n), permutation(n), 1..n))) {
        let v = w.times_s(i).unwrap();
        prop_assert_ne!(&v, &w);
        prop_assert_eq!(v.times_s(i).unwrap(), w.clone());
        prop_assert_eq!(v.sign(), -w.sign());
        prop_assert_eq!(v.images().len(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn ext_is_symmetric_and_dual_to_stable_hom(
        (fs, s, t) in (2usize..=3).prop_flat_map(|n| {
            (subsequence((-2i64..=2).collect::<Vec<_>>(), n), nonempty_subset(n), nonempty_subset(n))
        }).prop_map(|(cs, s, t)| (cs.iter().map(|c| xy(&format!("x - ({c})*y"))).collect::<Vec<_>>(), s, t))
    ) {
        let cfg = HomalgConfig::default();
        let m = mf_subset(&fs, &s);
        let n = mf_subset(&fs, &t);
        let mn = ext1_dim(&m, &n, &cfg).unwrap().dimension;
        prop_assert_eq!(mn, ext1_dim(&n, &m, &cfg).unwrap().dimension);
        prop_assert_eq!(stable_hom_dim(&m, &n, &cfg).unwrap().dimension, ext1_dim(&n, &m.shift(), &cfg).unwrap().dimension);
        prop_assert_eq!(ext1_dim(&m, &m, &cfg).unwrap().dimension, 0);
    }

    #[test]
    fn mutation_moves_along_an_edge_and_verifies((w, i) in permutation(3).prop_flat_map(|w| (Just(w), 1usize..3))) {
        let fl = FactorList::parse(&["x", "x - y", "x + y"]).unwrap();
        let (v, mut data) = mutate(&fl, &w, i).unwrap();
        prop_assert_eq!(v, w.times_s(i).unwrap());
        prop_assert!(data.verify().unwrap().passed());
    }

    #[test]
    fn cartan_matrices_are_symmetric(w in permutation(3)) {
        let fl = FactorList::parse(&["y", "x - y", "x + y"]).unwrap();
        let parts = cluster_tilting_summands(&fl, &w).unwrap();
        let alg = stable_endo_algebra(&parts, &HomalgConfig::default()).unwrap();
        let c = alg.cartan();
        prop_assert!(c.symmetric);
        prop_assert!(alg.radical_is_nilpotent());
    }

    #[test]
    fn mesh_ext_is_symmetric(name in prop::sample::select(vec!["A1", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8"])) {
        let q = curve_quiver(name).unwrap();
        let t = q.ext_table();
        for i in 0..q.len() {
            prop_assert!(q.hom_dim(i, i) >= 1);
            for j in 0..q.len() {
                prop_assert_eq!(t[i][j], t[j][i]);
            }
        }
    }

    #[test]
    fn hammocks_start_at_one(d in prop::sample::select(diagrams_up_to(6)), v in 0usize..6) {
        let v = v % d.rank;
        let x = (d.parity(v), v);
        let h = hammock(&d, x, 2 * d.coxeter()).unwrap();
        prop_assert_eq!(h.get(x), 1);
        prop_assert!(h.last_column() >= x.0);
    }
}

#[test]
fn cluster_tilting_objects_are_pairwise_distinct() {
    for n in 2..=4 {
        let fs: Vec<String> = (0..n).map(|c| format!("x - {c}*y")).collect();
        let refs: Vec<&str> = fs.iter().map(String::as_str).collect();
        let fl = FactorList::parse(&refs).unwrap();
        let sets: BTreeSet<_> = Permutation::all(n).iter().map(|w| w.summand_sets()).collect();
        assert_eq!(sets.len(), (1..=n).product::<usize>());
        assert!(cluster_tilting_summands(&fl, &Permutation::identity(n)).is_ok());
    }
}
