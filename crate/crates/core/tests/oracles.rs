//! Independent oracles: products against enumerations, frozen count
//! tables, and Bailey-pair edge cases.

use bressoud_over::classes::{count_series, enumerate_family, is_b, Family};
use bressoud_over::qseries::{
    bailey_pair_check, bl1_transform, bpg_pair, bpg_pair_chain, chain_pair, chain_pair_direct, corollary_lc_sides,
    gen_a_series, pochhammer, verify_identity, BaileyPair, QSeries,
};
use bressoud_over::{Overpartition, Params};

fn params(s: &str) -> Params {
    s.parse().unwrap()
}

fn counts_as_series(family: Family, p: &Params, t: i64) -> QSeries {
    QSeries::from_counts(&count_series(family, p, t).unwrap())
}

#[test]
fn frozen_small_tables() {
    let p = params("eta=1,alphas=,k=3,r=2");
    assert_eq!(count_series(Family::Bbar(0), &p, 10).unwrap(), [1, 2, 3, 5, 8, 12, 18, 26, 36, 51, 70]);
    // Rogers–Ramanujan: parts ≡ ±1 (mod 5).
    let rr = params("eta=1,alphas=,k=2,r=2");
    assert_eq!(count_series(Family::A(1), &rr, 12).unwrap(), [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9]);
    assert_eq!(count_series(Family::DEta, &params("eta=1,alphas=,k=1,r=1"), 9).unwrap(), [1, 1, 1, 2, 2, 3, 4, 5, 6, 8]);
}

#[test]
fn a_products_match_a_enumeration() {
    for (s, j, t) in [("eta=1,alphas=,k=3,r=2", 0, 40), ("eta=1,alphas=,k=3,r=2", 1, 40), ("eta=2,alphas=1,k=4,r=2", 0, 30)] {
        let p = params(s);
        let prod = gen_a_series(&p, j, false, t).unwrap();
        let rep = verify_identity("A", &prod, &counts_as_series(Family::A(j), &p, t));
        assert!(rep.passed(), "{p} j={j}: {:?}", rep.counterexample);
    }
    assert_eq!(gen_a_series(&params("eta=1,alphas=,k=3,r=2"), 0, false, 0).unwrap(), QSeries::one(Some(0)));
}

#[test]
fn ordinary_classes_match_congruence_classes() {
    // B₁(−;1,2,2) against partitions into parts ≢ 0, ±2 (mod 5).
    let p = params("eta=1,alphas=,k=2,r=2");
    assert_eq!(count_series(Family::B(1), &p, 30).unwrap(), count_series(Family::A(1), &p, 30).unwrap());
    for s in ["eta=1,alphas=,k=3,r=2", "eta=1,alphas=,k=3,r=3", "eta=1,alphas=,k=3,r=1"] {
        let p = params(s);
        assert_eq!(count_series(Family::B(1), &p, 25).unwrap(), count_series(Family::A(1), &p, 25).unwrap(), "{p}");
    }
    assert!(is_b(&Overpartition::empty(), &p, 0));
}

#[test]
fn overpartition_classes_match_congruence_classes() {
    for (s, j, w) in [
        ("eta=1,alphas=,k=3,r=2", 1, 25),
        ("eta=1,alphas=,k=3,r=1", 1, 25),
        ("eta=1,alphas=,k=4,r=2", 1, 20),
        ("eta=2,alphas=1,k=4,r=2", 0, 30),
    ] {
        let p = params(s);
        let a = count_series(Family::Abar(j), &p, w).unwrap();
        let b = count_series(Family::Bbar(j), &p, w).unwrap();
        assert_eq!(a, b, "{p} j={j}");
    }
}

#[test]
fn abar_product_matches_both_enumerations() {
    for s in ["eta=1,alphas=,k=3,r=2", "eta=2,alphas=1,k=4,r=2", "eta=10,alphas=3:7,k=4,r=3"] {
        let p = params(s);
        let t = if p.eta == 10 { 80 } else { 30 };
        let prod = gen_a_series(&p, 0, true, t).unwrap();
        assert!(verify_identity("x", &prod, &counts_as_series(Family::Abar(0), &p, t)).passed(), "{p}");
        assert!(verify_identity("x", &prod, &counts_as_series(Family::Bbar(0), &p, t)).passed(), "{p}");
    }
}

#[test]
fn enumerated_members_are_sorted_and_unique() {
    let p = params("eta=2,alphas=1,k=3,r=2");
    for n in 0..=12 {
        let v = enumerate_family(Family::Bbar(0), &p, n).unwrap();
        let mut sorted = v.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), v.len());
        assert!(v.iter().all(|pi| pi.weight() == n));
    }
    assert_eq!(enumerate_family(Family::Bbar(0), &p, 0).unwrap(), vec![Overpartition::empty()]);
}

#[test]
fn distinct_eta_product() {
    let d = pochhammer(-1, 3, 3, None, 30).unwrap();
    let counts = counts_as_series(Family::DEta, &params("eta=3,alphas=,k=1,r=1"), 30);
    assert_eq!(d.first_mismatch(&counts), None);
}

#[test]
fn halved_pair_small_cases() {
    let pair = bpg_pair(2, 1, 6, 60).unwrap();
    assert!(bailey_pair_check(&pair, 6, 60).passed());
    assert_eq!(pair.alpha[0], QSeries::one(None));
    assert_eq!(pair.beta[0].first_mismatch(&QSeries::one(None)), None);
    for (k, r) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)] {
        let direct = bpg_pair(k, r, 5, 40).unwrap();
        let chained = bpg_pair_chain(k, r, 5, 40).unwrap();
        for n in 0..=5 {
            assert_eq!(direct.alpha[n], chained.alpha[n]);
            assert_eq!(direct.beta[n].first_mismatch(&chained.beta[n]), None, "k={k} r={r} n={n}");
        }
        assert!(bailey_pair_check(&direct, 5, 40).passed(), "k={k} r={r}");
    }
    assert!(bpg_pair(3, 3, 4, 20).is_err());
}

#[test]
fn chain_matches_closed_form() {
    let a = chain_pair(3, 1, 5, 40).unwrap();
    let b = chain_pair_direct(3, 1, 5, 40).unwrap();
    for n in 0..=5 {
        assert_eq!(a.alpha[n], b.alpha[n]);
        assert_eq!(a.beta[n].first_mismatch(&b.beta[n]), None);
    }
}

#[test]
fn lemma_keeps_the_trivial_pair() {
    let zero = QSeries::zero(None);
    let pair = BaileyPair {
        alpha: vec![QSeries::one(None), zero.clone(), zero.clone()],
        beta: vec![QSeries::one(Some(20)), QSeries::zero(Some(20)), QSeries::zero(Some(20))],
    };
    // The unit pair relation only holds for n = 0 here.
    assert!(bailey_pair_check(&pair, 0, 20).passed());
    let out = bl1_transform(&pair, 20).unwrap();
    assert_eq!(out.alpha[0], QSeries::one(None));
    assert_eq!(out.beta[0].first_mismatch(&QSeries::one(None)), None);
}

#[test]
fn corollary_with_one_residue() {
    let (l, r) = corollary_lc_sides(&params("eta=2,alphas=1,k=4,r=3"), 100).unwrap();
    let rep = verify_identity("corollary", &l, &r);
    assert!(rep.passed(), "{:?}", rep.counterexample);
    assert!(l.is_integral());
}

#[test]
fn verify_identity_is_symmetric() {
    let f = pochhammer(1, 1, 1, None, 20).unwrap();
    let g = f.perturbed(7, num_rational::BigRational::from_integer(2.into()));
    let a = verify_identity("x", &f, &g);
    let b = verify_identity("x", &g, &f);
    assert!(!a.passed() && !b.passed());
    assert!(a.counterexample.unwrap().starts_with("q^7"));
    assert!(b.counterexample.unwrap().starts_with("q^7"));
    assert!(verify_identity("x", &f, &f).passed());
}
